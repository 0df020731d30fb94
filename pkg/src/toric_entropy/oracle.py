"""Brute-force ground states and reduced density matrix spectra.

This module never uses ranks of restricted star matrices.  It enumerates
the star group explicitly, writes the ground states down as sparse
amplitude maps over computational basis strings, and diagonalizes reduced
density matrices.  It is the independent check for :mod:`toric_entropy.engine`.

Basis strings are Python ints: bit ``l`` set means link ``l`` is flipped
relative to the all-zero reference state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import ArgumentError, ResourceLimitError, StructuralError
from .gf2 import DEFAULT_ENUMERATION_LIMIT, BitVector, iter_rowspace_ints
from .regions import Region, region_stats
from .surface import Surface, ladder_operators

DEFAULT_GRAM_LIMIT = 4096
NORM_TOL = 1e-9
ZERO_EIGENVALUE = 1e-12
FLAT_TOL = 1e-9

SECTORS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class StateSupport:
    n_links: int
    amplitudes: Mapping[int, complex] = field(repr=False)

    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def vectors(self) -> dict[BitVector, complex]:
        return {BitVector.from_int(self.n_links, e): a for e, a in self.amplitudes.items()}

    def __len__(self) -> int:
        return len(self.amplitudes)


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[float, ...]
    entropy_bits: float
    purity: float
    flat: bool
    method: str = "gram"

    @property
    def nonzero(self) -> tuple[float, ...]:
        return tuple(x for x in self.eigenvalues if x > ZERO_EIGENVALUE)


def _sector_offsets(s: Surface) -> dict[tuple[int, int], int]:
    ladders = ladder_operators(s)
    w1 = ladders.w1.to_int()
    w2 = ladders.w2.to_int()
    # |ij> = w1^j w2^i |00>
    return {(0, 0): 0, (0, 1): w1, (1, 0): w2, (1, 1): w1 ^ w2}


def build_ground_state(
    s: Surface,
    a00: complex = 1.0,
    a01: complex = 0.0,
    a10: complex = 0.0,
    a11: complex = 0.0,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> StateSupport:
    """The ground state ``sum_ij a_ij |xi_ij>`` as an explicit amplitude map.

    Each sector ``|xi_ij>`` is the uniform superposition of the star-group
    orbit of ``|ij>``.  Only the ``00`` sector is available on surfaces
    without ladder operators.
    """
    coeffs = dict(zip(SECTORS, (complex(a00), complex(a01), complex(a10), complex(a11))))
    total = sum(abs(c) ** 2 for c in coeffs.values())
    if abs(total - 1.0) > NORM_TOL:
        raise ArgumentError(f"sector amplitudes have squared norm {total:.12g}, expected 1")
    group = list(iter_rowspace_ints(s.star_matrix, limit))
    scale = 1.0 / math.sqrt(len(group))
    active = {ij: c for ij, c in coeffs.items() if c != 0}
    offsets = _sector_offsets(s) if set(active) != {(0, 0)} else {(0, 0): 0}
    amplitudes: dict[int, complex] = {}
    for ij, c in active.items():
        off = offsets[ij]
        amp = c * scale
        for g in group:
            amplitudes[g ^ off] = amp
    if len(amplitudes) != len(group) * len(active):
        raise StructuralError("ground-state sectors overlap; ladder operators are contractible")
    return StateSupport(s.n_links, amplitudes)


def sector_state(s: Surface, i: int, j: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> StateSupport:
    coeffs = [0.0] * 4
    coeffs[SECTORS.index((i, j))] = 1.0
    return build_ground_state(s, *coeffs, limit=limit)


def verify_ground_state(s: Surface, psi: StateSupport, tol: float = 1e-12) -> bool:
    """True iff every star and plaquette operator fixes ``psi``."""
    if psi.n_links != s.n_links or not psi.amplitudes:
        return False
    amps = psi.amplitudes
    stars = [int.from_bytes(row.tobytes(), "little") for row in s.star_matrix.words]
    plaquettes = [int.from_bytes(row.tobytes(), "little") for row in s.plaquette_matrix.words]
    for e, a in amps.items():
        # B_p |e> = (-1)^{|e & p|} |e>
        for p in plaquettes:
            if (e & p).bit_count() & 1:
                return False
        # A_s permutes basis strings; invariance needs equal amplitudes on each orbit
        for star in stars:
            partner = amps.get(e ^ star)
            if partner is None or abs(partner - a) > tol:
                return False
    return True


def hermitian_eigenvalues(h: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by the cyclic Jacobi rotation method.

    Sweeps over all ``(p, q)`` pairs until the off-diagonal Frobenius norm is
    at most ``tol``.  Returns the eigenvalues in ascending order.
    """
    a = np.array(h, dtype=np.complex128)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ArgumentError("matrix must be square")
    if n and np.max(np.abs(a - a.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(a))):
        raise ArgumentError("matrix is not Hermitian")
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                sn = t * c
                # J = diag-phase times real rotation; A <- J^H A J zeroes a[p, q]
                jpp, jqp = c, -sn * phase.conjugate()
                jpq, jqq = sn, c * phase.conjugate()
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * jpp + col_q * jqp
                a[:, q] = col_p * jpq + col_q * jqq
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = row_p * jpp + row_q * np.conj(jqp)
                a[q, :] = row_p * jpq + row_q * np.conj(jqq)
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        raise StructuralError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.sort(np.diag(a).real)


def _entropy(eigenvalues: Sequence[float]) -> float:
    return float(-sum(x * math.log2(x) for x in eigenvalues if x > 0))


def _report(eigenvalues: list[float], method: str) -> SpectrumReport:
    eig = sorted((max(0.0, x) for x in eigenvalues), reverse=True)
    nonzero = [x for x in eig if x > ZERO_EIGENVALUE]
    flat = bool(nonzero) and (max(nonzero) - min(nonzero)) <= FLAT_TOL
    return SpectrumReport(
        eigenvalues=tuple(eig),
        entropy_bits=_entropy(eig),
        purity=float(sum(x * x for x in eig)),
        flat=flat,
        method=method,
    )


def _split_classes(psi: StateSupport, mask_a: int) -> dict[int, dict[int, complex]]:
    """Group the support by one side of the cut.

    ``rho_A`` and ``rho_B`` share their nonzero spectrum, so the side with
    fewer distinct restrictions is used as the outer (traced) index to keep
    the Gram matrix small.
    """
    full = (1 << psi.n_links) - 1
    mask_b = full ^ mask_a
    keys = psi.amplitudes.keys()
    n_b = len({e & mask_b for e in keys})
    n_a = len({e & mask_a for e in keys})
    outer, inner = (mask_b, mask_a) if n_b <= n_a else (mask_a, mask_b)
    classes: dict[int, dict[int, complex]] = {}
    for e, amp in psi.amplitudes.items():
        classes.setdefault(e & outer, {})[e & inner] = amp
    return classes


def _block_spectrum(classes: dict[int, dict[int, complex]], tol: float = 1e-12) -> list[float] | None:
    """Exact spectrum when class vectors are pairwise parallel or orthogonal.

    Classes whose supports coincide must be scalar multiples of each other;
    distinct supports must be disjoint.  Each group of parallel vectors then
    contributes one eigenvalue equal to its total weight.
    """
    groups: dict[frozenset[int], list[dict[int, complex]]] = {}
    for phi in classes.values():
        groups.setdefault(frozenset(phi), []).append(phi)
    if len(set().union(*groups)) != sum(len(g) for g in groups):
        return None
    eig = []
    for support, members in groups.items():
        ref = members[0]
        x0 = next(iter(support))
        for phi in members[1:]:
            ratio = phi[x0] / ref[x0]
            if any(abs(phi[x] - ratio * ref[x]) > tol for x in support):
                return None
        eig.append(sum(abs(a) ** 2 for phi in members for a in phi.values()))
    eig.extend([0.0] * (len(classes) - len(groups)))
    return eig


def _gram_spectrum(classes: dict[int, dict[int, complex]], limit: int) -> list[float]:
    n = len(classes)
    if n > limit:
        raise ResourceLimitError(f"Gram matrix would have dimension {n}, above the limit {limit}")
    by_inner: dict[int, list[tuple[int, complex]]] = {}
    for b, phi in enumerate(classes.values()):
        for x, amp in phi.items():
            by_inner.setdefault(x, []).append((b, amp))
    gram = np.zeros((n, n), dtype=np.complex128)
    for entries in by_inner.values():
        idx = np.array([b for b, _ in entries])
        amps = np.array([a for _, a in entries])
        gram[np.ix_(idx, idx)] += np.outer(amps.conj(), amps)
    return hermitian_eigenvalues(gram).tolist()


def reduced_spectrum(psi: StateSupport, r: Region, max_gram_dim: int = DEFAULT_GRAM_LIMIT) -> SpectrumReport:
    """Spectrum of the reduced density matrix of region ``A`` in ``psi``."""
    if not psi.amplitudes:
        raise ArgumentError("state has empty support")
    if r.mask.length != psi.n_links:
        raise ArgumentError("region and state have different link counts")
    classes = _split_classes(psi, r.mask.to_int())
    eig = _block_spectrum(classes)
    if eig is not None:
        return _report(eig, "block")
    return _report(_gram_spectrum(classes, max_gram_dim), "jacobi")


_SIGMA_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=np.complex128)


def two_spin_density_matrix(psi: StateSupport, link1: int, link2: int) -> np.ndarray:
    """4x4 reduced state of two links, basis index ``2 * s1 + s2``."""
    if link1 == link2:
        raise ArgumentError("the two links must differ")
    for link in (link1, link2):
        if not 0 <= link < psi.n_links:
            raise ArgumentError(f"link {link} out of range 0..{psi.n_links - 1}")
    pair = (1 << link1) | (1 << link2)
    rest: dict[int, np.ndarray] = {}
    for e, amp in psi.amplitudes.items():
        idx = 2 * ((e >> link1) & 1) + ((e >> link2) & 1)
        rest.setdefault(e & ~pair, np.zeros(4, dtype=np.complex128))[idx] = amp
    rho = np.zeros((4, 4), dtype=np.complex128)
    for phi in rest.values():
        rho += np.outer(phi, phi.conj())
    return rho


def wootters_concurrence(rho: np.ndarray) -> float:
    """Concurrence of a two-qubit density matrix."""
    rho = np.asarray(rho, dtype=np.complex128)
    r = rho @ _SIGMA_YY @ rho.conj() @ _SIGMA_YY
    lam = np.sort(np.sqrt(np.clip(np.linalg.eigvals(r).real, 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def two_spin_concurrence(psi: StateSupport, link1: int, link2: int, tol: float = 1e-12) -> float:
    """Concurrence between two links; the reduced state must be diagonal."""
    rho = two_spin_density_matrix(psi, link1, link2)
    off = np.max(np.abs(rho - np.diag(np.diag(rho))))
    if off > tol:
        raise StructuralError(
            f"two-spin state of links {link1},{link2} has off-diagonal weight {off:.3g}"
        )
    return wootters_concurrence(rho)


def _padded(eig: tuple[float, ...], n: int) -> np.ndarray:
    return np.array(list(eig) + [0.0] * (n - len(eig)))


def isospectral_check(
    s: Surface,
    r: Region,
    tol: float = 1e-9,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    max_gram_dim: int = DEFAULT_GRAM_LIMIT,
) -> bool:
    """True iff the four sector states give the same spectrum on ``A``."""
    spectra = [
        reduced_spectrum(sector_state(s, i, j, limit), r, max_gram_dim).eigenvalues
        for i, j in SECTORS
    ]
    n = max(len(e) for e in spectra)
    ref = _padded(spectra[0], n)
    return all(np.max(np.abs(_padded(e, n) - ref)) <= tol for e in spectra[1:])


def generic_disk_check(
    s: Surface,
    r: Region,
    amplitudes: Sequence[complex],
    tol: float = 1e-6,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    max_gram_dim: int = DEFAULT_GRAM_LIMIT,
) -> bool:
    """True iff a generic ground state has entropy ``boundary_links - 1`` on a rectangle."""
    stats = region_stats(s, r)
    if stats.boundary_links is None:
        raise ArgumentError("generic_disk_check needs a rectangle region")
    psi = build_ground_state(s, *amplitudes, limit=limit)
    spectrum = reduced_spectrum(psi, r, max_gram_dim)
    return abs(spectrum.entropy_bits - (stats.boundary_links - 1)) <= tol
