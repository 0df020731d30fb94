"""Cell complexes carrying the toric-code stabilizers.

A :class:`Surface` is described purely by incidence: which links meet at each
site (the star operators) and which links bound each face (the plaquette
operators).  The square torus has a fixed link numbering::

    h(i, j) = 2 * (i * k + j)       horizontal link (i, j) -> (i, j + 1)
    v(i, j) = 2 * (i * k + j) + 1   vertical link   (i, j) -> (i + 1, j)

with all site coordinates taken mod ``k``.  Sites and faces are numbered
``i * k + j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from os import PathLike
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from . import gf2
from .errors import ArgumentError, UnsupportedOperationError, ValidationError
from .gf2 import BitMatrix, BitVector

TORUS = "square-torus"
GENERIC = "generic"


def h_link(k: int, i: int, j: int) -> int:
    return 2 * ((i % k) * k + (j % k))


def v_link(k: int, i: int, j: int) -> int:
    return 2 * ((i % k) * k + (j % k)) + 1


@dataclass(frozen=True, eq=False)
class Surface:
    n_sites: int
    n_links: int
    n_faces: int
    stars: tuple[tuple[int, ...], ...]
    plaquettes: tuple[tuple[int, ...], ...]
    kind: str = GENERIC
    k: int | None = None

    @cached_property
    def star_matrix(self) -> BitMatrix:
        return BitMatrix.from_supports(self.stars, self.n_links)

    @cached_property
    def plaquette_matrix(self) -> BitMatrix:
        return BitMatrix.from_supports(self.plaquettes, self.n_links)

    @property
    def star_incidence(self) -> list[BitVector]:
        return self.star_matrix.rows

    @property
    def plaquette_incidence(self) -> list[BitVector]:
        return self.plaquette_matrix.rows

    @property
    def euler_characteristic(self) -> int:
        return self.n_sites - self.n_links + self.n_faces

    @property
    def genus(self) -> int:
        return 1 - self.euler_characteristic // 2

    @cached_property
    def link_stars(self) -> np.ndarray:
        """``(n_links, 2)`` array of the two sites touching each link."""
        return _two_owners(self.stars, self.n_links, "star")

    @cached_property
    def link_faces(self) -> np.ndarray:
        """``(n_links, 2)`` array of the two faces bordering each link."""
        return _two_owners(self.plaquettes, self.n_links, "plaquette")

    def to_document(self) -> dict[str, Any]:
        return {
            "n_links": self.n_links,
            "stars": [list(s) for s in self.stars],
            "plaquettes": [list(p) for p in self.plaquettes],
        }

    def __repr__(self) -> str:
        if self.kind == TORUS:
            return f"Surface(torus k={self.k})"
        return f"Surface(n0={self.n_sites}, n1={self.n_links}, n2={self.n_faces})"


def _two_owners(cells, n_links: int, what: str) -> np.ndarray:
    owners = np.full((n_links, 2), -1, dtype=np.int64)
    count = np.zeros(n_links, dtype=np.int64)
    for idx, cell in enumerate(cells):
        for link in cell:
            if count[link] < 2:
                owners[link, count[link]] = idx
            count[link] += 1
    bad = np.flatnonzero(count != 2)
    if bad.size:
        raise ValidationError(f"link {bad[0]} lies in {count[bad[0]]} {what}s, expected 2")
    return owners


def build_torus(k: int) -> Surface:
    """The ``k`` x ``k`` periodic square lattice with spins on links."""
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise ArgumentError(f"torus size must be an integer >= 2, got {k!r}")
    k = int(k)
    stars = []
    plaquettes = []
    for i in range(k):
        for j in range(k):
            stars.append((h_link(k, i, j), h_link(k, i, j - 1), v_link(k, i, j), v_link(k, i - 1, j)))
            plaquettes.append((h_link(k, i, j), h_link(k, i + 1, j), v_link(k, i, j), v_link(k, i, j + 1)))
    return Surface(k * k, 2 * k * k, k * k, tuple(stars), tuple(plaquettes), TORUS, k)


def _parse_cells(doc: Mapping[str, Any], key: str, n_links: int) -> tuple[tuple[int, ...], ...]:
    raw = doc.get(key)
    if not isinstance(raw, list) or not raw:
        raise ValidationError(f"document: '{key}' must be a non-empty array of link arrays")
    cells = []
    for idx, cell in enumerate(raw):
        if not isinstance(cell, list) or not cell:
            raise ValidationError(f"document: {key}[{idx}] must be a non-empty array")
        for link in cell:
            if isinstance(link, bool) or not isinstance(link, int):
                raise ValidationError(f"document: {key}[{idx}] contains non-integer {link!r}")
            if not 0 <= link < n_links:
                raise ValidationError(f"document: {key}[{idx}] link {link} out of range 0..{n_links - 1}")
        if len(set(cell)) != len(cell):
            raise ValidationError(f"document: {key}[{idx}] lists a link more than once")
        cells.append(tuple(cell))
    return tuple(cells)


def load_surface(document: Mapping[str, Any] | str, validate: bool = True) -> Surface:
    """Build a surface from its document form (dict or JSON text).

    With ``validate`` (the default) every structural invariant is checked and
    the first violation raises :class:`ValidationError`.  Basic well-formedness
    (types, link ranges) is always enforced.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"document: not valid JSON ({exc})") from exc
    if not isinstance(document, Mapping):
        raise ValidationError("document: top level must be an object")
    n_links = document.get("n_links")
    if isinstance(n_links, bool) or not isinstance(n_links, int) or n_links < 1:
        raise ValidationError("document: 'n_links' must be a positive integer")
    stars = _parse_cells(document, "stars", n_links)
    plaquettes = _parse_cells(document, "plaquettes", n_links)
    s = Surface(len(stars), n_links, len(plaquettes), stars, plaquettes, GENERIC)
    if validate:
        validate_surface(s)
    return s


def read_surface(path: str | PathLike, validate: bool = True) -> Surface:
    return load_surface(Path(path).read_text(), validate)


def dump_surface(s: Surface) -> str:
    return json.dumps(s.to_document())


def _degree_check(cells, n_links: int, what: str) -> str | None:
    count = np.zeros(n_links, dtype=np.int64)
    for cell in cells:
        for link in cell:
            count[link] += 1
    bad = np.flatnonzero(count != 2)
    if bad.size:
        return f"link {bad[0]} lies in {count[bad[0]]} {what}s, expected 2"
    return None


def _xor_check(m: BitMatrix, what: str) -> str | None:
    total = np.bitwise_xor.reduce(m.words, axis=0) if m.n_rows else np.zeros(0)
    if np.any(total):
        return f"product of all {what} operators is not the identity"
    return None


def _parity_check(s: Surface) -> str | None:
    link_faces: list[list[int]] = [[] for _ in range(s.n_links)]
    for p, cell in enumerate(s.plaquettes):
        for link in cell:
            link_faces[link].append(p)
    for si, star in enumerate(s.stars):
        overlap: dict[int, int] = {}
        for link in star:
            for p in link_faces[link]:
                overlap[p] = overlap.get(p, 0) + 1
        for p, n in sorted(overlap.items()):
            if n % 2:
                return f"star {si} and plaquette {p} share {n} links (odd, so they anticommute)"
    return None


def _euler_check(s: Surface) -> str | None:
    chi = s.euler_characteristic
    if chi % 2 or chi > 2:
        return f"Euler characteristic {chi} is not an even number <= 2"
    return None


def _rank_check(m: BitMatrix, n: int, what: str) -> str | None:
    r = gf2.rank(m)
    if r != n - 1:
        return f"{what} matrix has rank {r}, expected {n - 1} (complex must be connected)"
    return None


def surface_checks(s: Surface) -> list[tuple[str, str | None]]:
    """Run every structural check; each entry is ``(name, failure or None)``.

    Later checks assume earlier ones passed, so evaluation stops at the first
    failure.
    """
    checks = [
        ("link_star_degree", lambda: _degree_check(s.stars, s.n_links, "star")),
        ("link_plaquette_degree", lambda: _degree_check(s.plaquettes, s.n_links, "plaquette")),
        ("star_product_identity", lambda: _xor_check(s.star_matrix, "star")),
        ("plaquette_product_identity", lambda: _xor_check(s.plaquette_matrix, "plaquette")),
        ("star_plaquette_commute", lambda: _parity_check(s)),
        ("euler_characteristic", lambda: _euler_check(s)),
        ("star_rank", lambda: _rank_check(s.star_matrix, s.n_sites, "star")),
        ("plaquette_rank", lambda: _rank_check(s.plaquette_matrix, s.n_faces, "plaquette")),
    ]
    results = []
    for name, check in checks:
        failure = check()
        results.append((name, failure))
        if failure is not None:
            break
    return results


def validate_surface(s: Surface) -> None:
    for name, failure in surface_checks(s):
        if failure is not None:
            raise ValidationError(f"{name}: {failure}")


def genus_and_degeneracy(s: Surface) -> tuple[int, int]:
    g = s.genus
    return g, 1 << (2 * g)


def degeneracy_from_ranks(s: Surface) -> int:
    """Ground-space dimension counted from independent stabilizer constraints."""
    return 1 << (s.n_links - gf2.rank(s.star_matrix) - gf2.rank(s.plaquette_matrix))


@dataclass(frozen=True)
class LadderPair:
    w1: BitVector
    w2: BitVector


def ladder_operators(s: Surface) -> LadderPair:
    """X-strings along the two non-contractible dual cycles of the torus.

    ``w1`` flips the vertical links of site row 0, ``w2`` the horizontal
    links of site column 0.
    """
    if s.kind != TORUS or s.k is None:
        raise UnsupportedOperationError("ladder operators are only available on the square torus")
    k = s.k
    w1 = BitVector.from_indices(s.n_links, (v_link(k, 0, j) for j in range(k)))
    w2 = BitVector.from_indices(s.n_links, (h_link(k, i, 0) for i in range(k)))
    return LadderPair(w1, w2)
