"""Bipartitions of the link set and their geometric statistics.

A region is just a link mask (``A``); its complement is ``B``.  The
constructors below produce the shapes that have a closed-form entropy, but
any mask is a valid region.

Each constructor records a canonical text form (``label``) in the region
grammar understood by :func:`toric_entropy.cli.parse_region_spec`::

    rect:i0,j0,a,b | chain:row,i | chain:col,j | orient:v | orient:h
    links:n1,n2,... | not(<spec>)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ArgumentError
from .gf2 import BitVector
from .surface import TORUS, Surface, h_link, v_link


@dataclass(frozen=True, eq=False)
class Region:
    mask: BitVector
    surface: Surface
    faces: frozenset[int] | None = None
    label: str | None = None

    def __post_init__(self):
        if self.mask.length != self.surface.n_links:
            raise ArgumentError(
                f"region mask has {self.mask.length} bits, surface has {self.surface.n_links} links"
            )

    @property
    def size(self) -> int:
        return self.mask.popcount()

    @property
    def links(self) -> list[int]:
        return self.mask.indices()

    @property
    def is_nontrivial(self) -> bool:
        return 0 < self.size < self.surface.n_links

    def complement(self) -> Region:
        if self.label is not None and self.label.startswith("not(") and self.label.endswith(")"):
            label = self.label[4:-1]
        else:
            label = f"not({canonical_label(self)})"
        return Region(~self.mask, self.surface, None, label)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Region):
            return NotImplemented
        return self.surface is other.surface and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.surface), self.mask))


def canonical_label(r: Region) -> str:
    if r.label is not None:
        return r.label
    return "links:" + ",".join(map(str, r.links))


@dataclass(frozen=True)
class RegionStats:
    size_A: int
    boundary_sites: int
    bulk_sites_A: int
    bulk_sites_B: int
    boundary_links: int | None = None


def _require_torus(s: Surface) -> int:
    if s.kind != TORUS or s.k is None:
        raise ArgumentError("this region constructor needs a square-torus surface")
    return s.k


def links_region(s: Surface, links: Iterable[int]) -> Region:
    links = sorted(set(links))
    for link in links:
        if not 0 <= link < s.n_links:
            raise ArgumentError(f"link {link} out of range 0..{s.n_links - 1}")
    label = "links:" + ",".join(map(str, links))
    return Region(BitVector.from_indices(s.n_links, links), s, None, label)


def mask_region(s: Surface, mask: BitVector) -> Region:
    return Region(mask, s)


def rect_region(s: Surface, i0: int, j0: int, a: int, b: int) -> Region:
    """Links on or inside the boundary of an ``a`` x ``b`` block of faces.

    The block starts at face ``(i0, j0)`` and may wrap in position but not in
    extent, so its dual boundary is always a contractible rectangle.
    """
    k = _require_torus(s)
    if not (1 <= a < k and 1 <= b < k):
        raise ArgumentError(f"rectangle {a}x{b} on k={k} needs 1 <= a,b <= {k - 1} (non-wrapping)")
    i0 %= k
    j0 %= k
    faces = frozenset(((i0 + r) % k) * k + (j0 + c) % k for r in range(a) for c in range(b))
    links = {link for f in faces for link in s.plaquettes[f]}
    mask = BitVector.from_indices(s.n_links, links)
    return Region(mask, s, faces, f"rect:{i0},{j0},{a},{b}")


def chain_region(s: Surface, orientation: str, index: int) -> Region:
    """The ``k`` links of one row (horizontal) or column (vertical) chain."""
    k = _require_torus(s)
    if orientation not in ("row", "col"):
        raise ArgumentError(f"chain orientation must be 'row' or 'col', got {orientation!r}")
    if not 0 <= index < k:
        raise ArgumentError(f"chain index {index} out of range 0..{k - 1}")
    if orientation == "row":
        links = [h_link(k, index, j) for j in range(k)]
    else:
        links = [v_link(k, i, index) for i in range(k)]
    return Region(BitVector.from_indices(s.n_links, links), s, None, f"chain:{orientation},{index}")


def orientation_region(s: Surface, which: str) -> Region:
    """All vertical (``"v"``) or all horizontal (``"h"``) links."""
    k = _require_torus(s)
    if which not in ("v", "h"):
        raise ArgumentError(f"orientation must be 'v' or 'h', got {which!r}")
    offset = 1 if which == "v" else 0
    links = range(offset, 2 * k * k, 2)
    return Region(BitVector.from_indices(s.n_links, links), s, None, f"orient:{which}")


def region_stats(s: Surface, r: Region) -> RegionStats:
    if r.mask.length != s.n_links:
        raise ArgumentError("region does not belong to this surface")
    words = s.star_matrix.words
    mask = r.mask.words
    touches_a = np.any(words & mask, axis=1)
    touches_b = np.any(words & ~mask, axis=1)
    bulk_a = int(np.count_nonzero(touches_a & ~touches_b))
    bulk_b = int(np.count_nonzero(touches_b & ~touches_a))
    boundary_links = None
    if r.faces is not None:
        inside = np.isin(s.link_faces, np.fromiter(r.faces, dtype=np.int64))
        boundary_links = int(np.count_nonzero(inside.sum(axis=1) == 1))
    return RegionStats(
        size_A=r.size,
        boundary_sites=s.n_sites - bulk_a - bulk_b,
        bulk_sites_A=bulk_a,
        bulk_sites_B=bulk_b,
        boundary_links=boundary_links,
    )
