"""Sorted-set and bitmap intersection kernels.

The ``*_into`` functions are numba kernels over caller-provided buffers and are
what the listing engines call. The undecorated wrappers allocate their own
output and are meant for tests, benchmarks and interactive use.

Bitmaps pack ``word_bits`` (L) payload bits into each ``uint64``; bit ``j`` of
a row lives in word ``j // L`` at bit ``j % L`` (low-order bit first).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numba as nb
import numpy as np

DEFAULT_BLOCK = 4
BLOCK_WIDTHS = (4, 8, 16)
DEFAULT_WORD_BITS = 64
MAX_TABLE_BITS = 24

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)

jit = nb.njit(cache=True, nogil=True)


@jit
def merge_into(a, b, out):
    """Two-pointer merge; writes ``a & b`` to ``out`` and returns its length."""
    na, nb_ = a.shape[0], b.shape[0]
    i = 0
    j = 0
    n = 0
    while i < na and j < nb_:
        x = a[i]
        y = b[j]
        if x < y:
            i += 1
        elif x > y:
            j += 1
        else:
            out[n] = x
            n += 1
            i += 1
            j += 1
    return n


@jit
def block_merge_into(a, b, out, width):
    """Merge in blocks of ``width`` ids.

    Each pair of blocks is compared all-against-all by testing ``a``'s block
    against ``width`` cyclic rotations of ``b``'s block; the pointer whose
    block ends lower then advances (both on a tie). Remainders shorter than a
    block fall through to the scalar merge.
    """
    na, nb_ = a.shape[0], b.shape[0]
    i = 0
    j = 0
    n = 0
    while i + width <= na and j + width <= nb_:
        hits = 0
        for r in range(width):
            for s in range(width):
                hits |= np.int64(a[i + s] == b[j + (s + r) % width]) << s
        for s in range(width):
            if (hits >> s) & 1:
                out[n] = a[i + s]
                n += 1
        ta = a[i + width - 1]
        tb = b[j + width - 1]
        if ta <= tb:
            i += width
        if tb <= ta:
            j += width
    while i < na and j < nb_:
        x = a[i]
        y = b[j]
        if x < y:
            i += 1
        elif x > y:
            j += 1
        else:
            out[n] = x
            n += 1
            i += 1
            j += 1
    return n


@jit
def gallop_into(a, b, out):
    """Exponential probe then binary search in ``b`` for every element of ``a``."""
    na, nb_ = a.shape[0], b.shape[0]
    lo = 0
    n = 0
    for i in range(na):
        if lo >= nb_:
            break
        x = a[i]
        step = 1
        while lo + step < nb_ and b[lo + step] < x:
            step *= 2
        left = lo + step // 2 if step > 1 else lo
        right = min(lo + step, nb_ - 1) + 1
        while left < right:
            mid = (left + right) // 2
            if b[mid] < x:
                left = mid + 1
            else:
                right = mid
        if left < nb_ and b[left] == x:
            out[n] = x
            n += 1
            lo = left + 1
        else:
            lo = left
    return n


@jit
def merge_positions_into(a, b, out):
    """Like :func:`merge_into` but records the index in ``b`` of every match."""
    na, nb_ = a.shape[0], b.shape[0]
    i = 0
    j = 0
    n = 0
    while i < na and j < nb_:
        x = a[i]
        y = b[j]
        if x < y:
            i += 1
        elif x > y:
            j += 1
        else:
            out[n] = j
            n += 1
            i += 1
            j += 1
    return n


@jit
def popcount64(x):
    x = x - ((x >> _ONE) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@jit
def ctz64(x):
    """Trailing zero count of a nonzero word."""
    return popcount64((x & (~x + _ONE)) - _ONE)


@jit
def popcount_row(row, nwords):
    c = 0
    for i in range(nwords):
        c += popcount64(row[i])
    return c


@jit
def next_bit(row, nwords, word_bits, start, first_bit):
    """Position of the first set bit at or after ``start``, or -1.

    ``first_bit`` is a precomputed lowest-set-bit table indexed by word value;
    pass an empty array to use bit-scan arithmetic instead.
    """
    w = start // word_bits
    b = start - w * word_bits
    while w < nwords:
        x = row[w] >> np.uint64(b)
        if x != _ZERO:
            if first_bit.shape[0]:
                return w * word_bits + b + first_bit[x]
            return w * word_bits + b + ctz64(x)
        w += 1
        b = 0
    return -1


@jit
def bit_join_into(row, cand, out, nwords):
    """Word-wise AND; no cross-iteration dependency so the loop vectorizes."""
    for i in range(nwords):
        out[i] = row[i] & cand[i]


@jit
def fill_ones(row, nbits, word_bits):
    full = nbits // word_bits
    mask = (_ONE << np.uint64(word_bits)) - _ONE if word_bits < 64 else ~_ZERO
    for i in range(full):
        row[i] = mask
    rem = nbits - full * word_bits
    if rem:
        row[full] = (_ONE << np.uint64(rem)) - _ONE


@jit
def set_bit(row, pos, word_bits):
    w = pos // word_bits
    row[w] |= _ONE << np.uint64(pos - w * word_bits)


@jit
def clear_bit(row, pos, word_bits):
    w = pos // word_bits
    row[w] &= ~(_ONE << np.uint64(pos - w * word_bits))


@jit
def decode_into(row, nwords, word_bits, universe, out, first_bit):
    n = 0
    p = next_bit(row, nwords, word_bits, 0, first_bit)
    while p >= 0:
        out[n] = universe[p]
        n += 1
        p = next_bit(row, nwords, word_bits, p + 1, first_bit)
    return n


@jit
def _encode_rows(universe, out_offsets, out_targets, word_bits, rows):
    d = universe.shape[0]
    fill_ones(rows[0], d, word_bits)
    pos = np.empty(d, dtype=np.int64)
    for i in range(d):
        lo, hi = out_offsets[i], out_offsets[i + 1]
        targets = out_targets[lo:hi]
        found = merge_positions_into(targets, universe, pos)
        for t in range(found):
            set_bit(rows[i + 1], pos[t], word_bits)


# -- Python-facing wrappers ------------------------------------------------------

def _as_ids(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.int32)


def _check_sorted(x: np.ndarray, name: str) -> None:
    if x.size > 1 and not np.all(x[1:] > x[:-1]):
        raise ValueError(f"{name} must be strictly ascending")


def merge_intersect(a, b, out=None) -> np.ndarray:
    a, b = _as_ids(a), _as_ids(b)
    if out is None:
        out = np.empty(min(len(a), len(b)), dtype=np.int32)
    return out[:merge_into(a, b, out)]


def block_merge_intersect(a, b, out=None, block: int = DEFAULT_BLOCK) -> np.ndarray:
    if block not in BLOCK_WIDTHS:
        raise ValueError(f"block width must be one of {BLOCK_WIDTHS}")
    a, b = _as_ids(a), _as_ids(b)
    if out is None:
        out = np.empty(min(len(a), len(b)), dtype=np.int32)
    return out[:block_merge_into(a, b, out, block)]


def galloping_intersect(a, b) -> np.ndarray:
    a, b = _as_ids(a), _as_ids(b)
    if len(a) > len(b):
        a, b = b, a
    out = np.empty(len(a), dtype=np.int32)
    return out[:gallop_into(a, b, out)]


@dataclass(frozen=True, eq=False)
class BitmapAdjacency:
    """Bitmap rows of a root's induced DAG.

    ``rows[0]`` is the root's own row (all ``len(universe)`` bits set);
    ``rows[i + 1]`` holds the out-neighbors of ``universe[i]``.
    """

    word_bits: int
    words_per_row: int
    rows: np.ndarray
    universe: np.ndarray

    def row(self, vertex: int) -> np.ndarray:
        i = int(np.searchsorted(self.universe, vertex))
        if i >= len(self.universe) or self.universe[i] != vertex:
            raise KeyError(vertex)
        return self.rows[i + 1]

    @property
    def root_row(self) -> np.ndarray:
        return self.rows[0]


def words_for(nbits: int, word_bits: int) -> int:
    return -(-nbits // word_bits)


def _check_word_bits(word_bits: int) -> None:
    if not 1 <= word_bits <= 64:
        raise ValueError("word_bits must lie in 1..64")


def bit_encode(universe, out_lists: Sequence, word_bits: int = DEFAULT_WORD_BITS) -> BitmapAdjacency:
    """Encode an induced DAG given as ``out_lists[i]`` = out-neighbors of ``universe[i]``."""
    _check_word_bits(word_bits)
    universe = _as_ids(universe)
    _check_sorted(universe, "universe")
    if len(out_lists) != len(universe):
        raise ValueError("need one out-list per universe member")
    sizes = np.array([len(x) for x in out_lists], dtype=np.int64)
    offsets = np.zeros(len(universe) + 1, dtype=np.int64)
    np.cumsum(sizes, out=offsets[1:])
    targets = np.concatenate([np.sort(_as_ids(x)) for x in out_lists]) if len(out_lists) else np.zeros(0, np.int32)
    w = words_for(len(universe), word_bits)
    rows = np.zeros((len(universe) + 1, w), dtype=np.uint64)
    _encode_rows(universe, offsets, _as_ids(targets), word_bits, rows)
    return BitmapAdjacency(word_bits, w, rows, universe)


class MaskTable:
    """Precomputed decode table indexed by L-bit word value.

    ``first_bit[w]`` is the lowest set position of ``w`` (-1 for zero); the
    full position list of a word is recovered by repeatedly clearing that bit.
    Tables are shared per word size (2^24 entries at the largest).
    """

    _cache: dict[int, "MaskTable"] = {}

    def __new__(cls, word_bits: int):
        if not 1 <= word_bits <= MAX_TABLE_BITS:
            raise ValueError(f"mask tables are limited to word_bits <= {MAX_TABLE_BITS}")
        if word_bits not in cls._cache:
            self = super().__new__(cls)
            self.word_bits = word_bits
            values = np.arange(1 << word_bits, dtype=np.int64)
            first = np.full(len(values), -1, dtype=np.int8)
            low = values[1:] & -values[1:]
            first[1:] = np.log2(low).astype(np.int8)
            first.flags.writeable = False
            self.first_bit = first
            cls._cache[word_bits] = self
        return cls._cache[word_bits]

    def positions_of(self, word: int) -> list[int]:
        out = []
        while word:
            out.append(int(self.first_bit[word]))
            word &= word - 1
        return out


_NO_TABLE = np.zeros(0, dtype=np.int8)


def bit_decode(row, universe, word_bits: int = DEFAULT_WORD_BITS, table: MaskTable | None = None) -> np.ndarray:
    """Vertex ids whose bits are set, ascending by universe position."""
    _check_word_bits(word_bits)
    row = np.ascontiguousarray(row, dtype=np.uint64)
    universe = _as_ids(universe)
    if len(row) != words_for(len(universe), word_bits):
        raise ValueError("row length does not match the universe")
    if table is not None:
        if table.word_bits != word_bits:
            raise ValueError("mask table built for a different word size")
        out = []
        for w, word in enumerate(row.tolist()):
            out.extend(universe[w * word_bits + p] for p in table.positions_of(word))
        return np.array(out, dtype=np.int32)
    out = np.empty(len(universe), dtype=np.int32)
    return out[:decode_into(row, len(row), word_bits, universe, out, _NO_TABLE)]


def bit_join(row, cand, out=None) -> np.ndarray:
    row = np.ascontiguousarray(row, dtype=np.uint64)
    cand = np.ascontiguousarray(cand, dtype=np.uint64)
    if row.shape != cand.shape:
        raise ValueError(f"bit_join length mismatch: {row.shape} vs {cand.shape}")
    if out is None:
        out = np.empty_like(row)
    bit_join_into(row, cand, out, len(row))
    return out
