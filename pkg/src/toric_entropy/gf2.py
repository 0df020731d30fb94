"""Word-packed linear algebra over GF(2).

Bits are stored little-endian in 64-bit words: column ``c`` lives in word
``c // 64`` at bit position ``c % 64``.  Bits past the logical length are
always zero, so equality and hashing can work on the raw words.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ArgumentError, ResourceLimitError

WORD_BITS = 64
WORD_DTYPE = np.dtype("<u8")
DEFAULT_ENUMERATION_LIMIT = 24


def n_words(n_bits: int) -> int:
    return (n_bits + WORD_BITS - 1) // WORD_BITS


def _tail_mask(n_bits: int) -> np.uint64:
    rem = n_bits % WORD_BITS
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


def _frozen(words: np.ndarray) -> np.ndarray:
    words.flags.writeable = False
    return words


class BitVector:
    """Immutable fixed-length bit string over GF(2)."""

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray | None = None):
        if length < 0:
            raise ArgumentError(f"negative length {length}")
        nw = n_words(length)
        if words is None:
            words = np.zeros(nw, dtype=WORD_DTYPE)
        else:
            words = np.array(words, dtype=WORD_DTYPE, copy=True).reshape(-1)
            if words.size != nw:
                raise ArgumentError(f"expected {nw} words for {length} bits, got {words.size}")
            if nw:
                words[-1] &= _tail_mask(length)
        self.length = length
        self.words = _frozen(words)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> BitVector:
        words = np.zeros(n_words(length), dtype=WORD_DTYPE)
        for i in indices:
            if not 0 <= i < length:
                raise ArgumentError(f"bit index {i} out of range for length {length}")
            words[i // WORD_BITS] ^= np.uint64(1 << (i % WORD_BITS))
        return cls(length, words)

    @classmethod
    def from_int(cls, length: int, value: int) -> BitVector:
        if value < 0 or value >> length:
            raise ArgumentError(f"integer {value} does not fit in {length} bits")
        nw = n_words(length)
        raw = value.to_bytes(nw * 8, "little")
        return cls(length, np.frombuffer(raw, dtype=WORD_DTYPE))

    @classmethod
    def from_bits(cls, bits: Sequence[int | bool]) -> BitVector:
        return cls.from_indices(len(bits), (i for i, b in enumerate(bits) if b))

    def to_int(self) -> int:
        return int.from_bytes(self.words.tobytes(), "little")

    def indices(self) -> list[int]:
        bits = np.unpackbits(self.words.view(np.uint8), bitorder="little")
        return np.flatnonzero(bits[: self.length]).tolist()

    def popcount(self) -> int:
        return int(np.unpackbits(self.words.view(np.uint8)).sum())

    def is_zero(self) -> bool:
        return not self.words.any()

    def _check(self, other: BitVector) -> None:
        if self.length != other.length:
            raise ArgumentError(f"length mismatch: {self.length} vs {other.length}")

    def __xor__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.words ^ other.words)

    def __and__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.words & other.words)

    def __or__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.words | other.words)

    def __invert__(self) -> BitVector:
        # constructor re-masks the tail word
        return BitVector(self.length, ~self.words)

    def __getitem__(self, i: int) -> bool:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return bool((int(self.words[i // WORD_BITS]) >> (i % WORD_BITS)) & 1)

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector({self.length}, {self.indices()})"


class BitMatrix:
    """Immutable binary matrix with rows packed into 64-bit words.

    ``words`` has shape ``(n_rows, n_words(n_cols))``.
    """

    __slots__ = ("n_cols", "words")

    def __init__(self, words: np.ndarray, n_cols: int):
        words = np.asarray(words, dtype=WORD_DTYPE)
        if words.ndim != 2 or words.shape[1] != n_words(n_cols):
            raise ArgumentError(f"word array of shape {words.shape} does not match {n_cols} columns")
        self.n_cols = n_cols
        self.words = _frozen(words)

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], n_cols: int | None = None) -> BitMatrix:
        if n_cols is None:
            if not rows:
                raise ArgumentError("n_cols is required for an empty row list")
            n_cols = rows[0].length
        for r in rows:
            if r.length != n_cols:
                raise ArgumentError(f"row of length {r.length} in matrix with {n_cols} columns")
        words = np.zeros((len(rows), n_words(n_cols)), dtype=WORD_DTYPE)
        for i, r in enumerate(rows):
            words[i] = r.words
        return cls(words, n_cols)

    @classmethod
    def from_supports(cls, supports: Sequence[Iterable[int]], n_cols: int) -> BitMatrix:
        """Build a matrix whose row ``i`` has ones exactly at ``supports[i]``."""
        row_idx: list[int] = []
        col_idx: list[int] = []
        for i, support in enumerate(supports):
            for c in support:
                row_idx.append(i)
                col_idx.append(c)
        cols = np.asarray(col_idx, dtype=np.int64)
        if cols.size and (cols.min() < 0 or cols.max() >= n_cols):
            raise ArgumentError(f"column index out of range for {n_cols} columns")
        words = np.zeros((len(supports), n_words(n_cols)), dtype=WORD_DTYPE)
        bits = np.left_shift(np.uint64(1), (cols % WORD_BITS).astype(WORD_DTYPE))
        # XOR so that a repeated index cancels, as it would for a product of Paulis
        np.bitwise_xor.at(words, (np.asarray(row_idx, dtype=np.int64), cols // WORD_BITS), bits)
        return cls(words, n_cols)

    @classmethod
    def from_dense(cls, array) -> BitMatrix:
        dense = np.asarray(array).astype(bool)
        if dense.ndim != 2:
            raise ArgumentError("dense input must be two-dimensional")
        n_rows, n_cols = dense.shape
        return cls(_pack(dense, n_cols), n_cols)

    def to_dense(self) -> np.ndarray:
        return _unpack(self.words, self.n_cols)

    @property
    def n_rows(self) -> int:
        return self.words.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def row(self, i: int) -> BitVector:
        return BitVector(self.n_cols, self.words[i])

    @property
    def rows(self) -> list[BitVector]:
        return [self.row(i) for i in range(self.n_rows)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.n_cols == other.n_cols and np.array_equal(self.words, other.words)

    def __repr__(self) -> str:
        return f"BitMatrix({self.n_rows}x{self.n_cols})"


def _pack(dense: np.ndarray, n_cols: int) -> np.ndarray:
    n_rows = dense.shape[0]
    nw = n_words(n_cols)
    if n_rows == 0 or nw == 0:
        return np.zeros((n_rows, nw), dtype=WORD_DTYPE)
    padded = np.zeros((n_rows, nw * WORD_BITS), dtype=bool)
    padded[:, :n_cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(WORD_DTYPE).reshape(n_rows, nw)


def _unpack(words: np.ndarray, n_cols: int) -> np.ndarray:
    if words.size == 0:
        return np.zeros((words.shape[0], n_cols), dtype=bool)
    as_bytes = np.ascontiguousarray(words).view(np.uint8).reshape(words.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n_cols].astype(bool)


def _echelon(words: np.ndarray, n_cols: int) -> int:
    """Reduce ``words`` in place to row-echelon form and return the rank.

    Pivot columns are taken in ascending order; after the call the first
    ``rank`` rows are independent and every later row is zero.
    """
    n_rows = words.shape[0]
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        w = c // WORD_BITS
        bit = np.uint64(1 << (c % WORD_BITS))
        hits = np.flatnonzero(words[r:, w] & bit)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        if hits.size > 1:
            others = r + hits[1:]
            words[others, w:] ^= words[r, w:]
        r += 1
    return r


def rank(m: BitMatrix) -> int:
    """Dimension of the row space of ``m`` over GF(2)."""
    if m.n_rows == 0 or m.n_cols == 0:
        return 0
    return _echelon(np.array(m.words), m.n_cols)


def row_basis(m: BitMatrix) -> BitMatrix:
    """An echelon-form basis of the row space of ``m``."""
    work = np.array(m.words)
    r = _echelon(work, m.n_cols) if m.n_rows and m.n_cols else 0
    return BitMatrix(work[:r].copy(), m.n_cols)


def in_rowspace(m: BitMatrix, v: BitVector) -> bool:
    if v.length != m.n_cols:
        raise ArgumentError(f"vector of length {v.length} against {m.n_cols} columns")
    stacked = np.vstack([m.words, v.words[None, :]])
    return rank(BitMatrix(stacked, m.n_cols)) == rank(m)


def _set_bits(words: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row and column indices of every set bit, touching only nonzero words."""
    ri, wi = np.nonzero(words)
    vals = np.ascontiguousarray(words[ri, wi])
    bits = np.unpackbits(vals.view(np.uint8).reshape(-1, 8), axis=1, bitorder="little")
    hit, pos = np.nonzero(bits)
    return ri[hit], wi[hit] * WORD_BITS + pos


def column_submatrix(m: BitMatrix, mask: BitVector) -> BitMatrix:
    """Keep the columns selected by ``mask``, in ascending column order."""
    if mask.length != m.n_cols:
        raise ArgumentError(f"mask length {mask.length} does not match {m.n_cols} columns")
    keep = _unpack(mask.words[None, :], m.n_cols)[0]
    dest = np.cumsum(keep) - 1
    n_out = int(keep.sum())
    out = np.zeros((m.n_rows, n_words(n_out)), dtype=WORD_DTYPE)
    if n_out == 0 or m.n_rows == 0:
        return BitMatrix(out, n_out)
    rows, cols = _set_bits(m.words)
    sel = keep[cols]
    rows, new_cols = rows[sel], dest[cols[sel]]
    bits = np.left_shift(np.uint64(1), (new_cols % WORD_BITS).astype(WORD_DTYPE))
    # each (row, column) pair occurs once, so adding bits is the same as OR-ing them
    np.add.at(out, (rows, new_cols // WORD_BITS), bits)
    return BitMatrix(out, n_out)


def _basis_ints(m: BitMatrix, limit: int) -> list[int]:
    basis = row_basis(m)
    if basis.n_rows > limit:
        raise ResourceLimitError(
            f"row space has dimension {basis.n_rows}, above the enumeration limit {limit}"
        )
    return [int.from_bytes(basis.words[i].tobytes(), "little") for i in range(basis.n_rows)]


def iter_rowspace_ints(m: BitMatrix, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[int]:
    """Yield every row-space element as a Python int, in Gray-code order.

    Consecutive elements differ by a single basis vector, so each step costs
    one XOR.  The first element is zero.
    """
    basis = _basis_ints(m, limit)
    v = 0
    yield v
    for i in range(1, 1 << len(basis)):
        # index of the lowest set bit of i selects the basis vector to flip
        v ^= basis[(i & -i).bit_length() - 1]
        yield v


def enumerate_rowspace(m: BitMatrix, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Iterator[BitVector]:
    """Yield all ``2**rank(m)`` elements of the row space of ``m``.

    Raises :class:`ResourceLimitError` before yielding anything if the rank
    exceeds ``limit``.
    """
    gen = iter_rowspace_ints(m, limit)
    first = next(gen)  # forces the limit check eagerly
    return _wrap(m.n_cols, first, gen)


def _wrap(n_cols: int, first: int, rest: Iterator[int]) -> Iterator[BitVector]:
    yield BitVector.from_int(n_cols, first)
    for v in rest:
        yield BitVector.from_int(n_cols, v)
