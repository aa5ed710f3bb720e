"""Cosine similarity on binary profiles and the MPCS aggregate.

Similarities are ranked by the exact ratio ``I**2 / (|a| * |b|)`` of integer
popcounts, and the reported value is derived from that ratio in lowest terms,
so equal similarities always produce bit-identical floats.  This makes the
witness pair and every aggregate independent of block size and thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .engine import Profile, ProfileMatrix
from .errors import EmptyMatrix, TableMismatch

#: Target number of pair cells held in memory per block.
BLOCK_CELLS = 1 << 22


def cosine_from_counts(inter: int, na: int, nb: int) -> float:
    """Cosine of two binary vectors from their popcounts.

    Returns 0.0 when either vector is empty.
    """
    if inter == 0 or na == 0 or nb == 0:
        return 0.0
    num, den = inter * inter, na * nb
    g = math.gcd(num, den)
    return math.sqrt(num // g) / math.sqrt(den // g)


def _same_table(p, q):
    if p.table is not q.table and p.table != q.table:
        raise TableMismatch("profiles belong to different symbol tables")


def cosine(p: Profile, q: Profile) -> float:
    _same_table(p, q)
    return cosine_from_counts((p.mask & q.mask).bit_count(), p.popcount, q.popcount)


def mpcs_mp(a: Profile, b: Profile) -> float:
    """Similarity of two maximum-profile vectors."""
    return cosine(a, b)


def comparison_count(count_a: int, count_b: int) -> int:
    """Pair comparisons a brute-force MPCS needs without any reduction."""
    return int(count_a) * int(count_b)


@dataclass(frozen=True)
class MpcsResult:
    value: float
    aggregation: str
    phi_ab: float
    phi_ba: float
    comparisons: int
    witness: Optional[tuple] = None
    witness_index: Optional[tuple] = None
    empty_profiles: bool = False

    @property
    def rounded(self) -> float:
        return round(self.value, 3)


def _keys(inter, pa, pb):
    """Float ranking keys I^2 / (pa * pb); 0 where a popcount is zero."""
    num = inter.astype(np.float64) ** 2
    den = np.multiply.outer(pa.astype(np.float64), pb.astype(np.float64))
    return np.divide(num, den, out=np.zeros_like(num), where=den > 0)


def _intersections(a_bits, b_bits):
    anded = a_bits[:, None, :] & b_bits[None, :, :]
    counts = np.bitwise_count(anded)
    if counts.shape[2] == 1:
        return counts[:, :, 0]
    return counts.sum(axis=2, dtype=np.uint16)


class _Prepared:
    """Rows reordered by popcount so equal-size rows form contiguous groups."""

    def __init__(self, M: ProfileMatrix):
        pop = M.popcounts
        self.order = np.argsort(pop, kind="stable")
        self.bits = M.bits[self.order]
        self.pop = pop[self.order]
        self.starts = np.flatnonzero(np.r_[True, self.pop[1:] != self.pop[:-1]])
        self.group_pop = self.pop[self.starts]


def _block(A, B, lo, hi, with_columns):
    inter = _intersections(A.bits[lo:hi], B.bits)
    pa = A.pop[lo:hi]
    gmax = np.maximum.reduceat(inter, B.starts, axis=1)
    keys = _keys(gmax, pa, B.group_pop)
    arg = keys.argmax(axis=1)
    rows = np.arange(hi - lo)
    row = (keys[rows, arg], gmax[rows, arg].astype(np.int64), B.group_pop[arg])
    if not with_columns:
        return row, None
    local = np.flatnonzero(np.r_[True, pa[1:] != pa[:-1]])
    cmax = np.maximum.reduceat(inter, local, axis=0)
    ckeys = _keys(cmax, pa[local], B.pop)
    carg = ckeys.argmax(axis=0)
    cols = np.arange(len(B.pop))
    col = (ckeys[carg, cols], cmax[carg, cols].astype(np.int64), pa[local][carg])
    return row, col


def _pair_search(A, B, with_columns, block_rows, threads):
    n = len(A.pop)
    step = block_rows or max(1, BLOCK_CELLS // max(1, len(B.pop)))
    bounds = [(lo, min(n, lo + step)) for lo in range(0, n, step)]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda b: _block(A, B, *b, with_columns), bounds))
    else:
        parts = [_block(A, B, *b, with_columns) for b in bounds]
    row = tuple(np.concatenate([p[0][i] for p in parts]) for i in range(3))
    col = None
    if with_columns:
        key, inter, pa = (np.array(x) for x in parts[0][1])
        for p in parts[1:]:
            k2, i2, a2 = p[1]
            better = k2 > key
            key = np.where(better, k2, key)
            inter = np.where(better, i2, inter)
            pa = np.where(better, a2, pa)
        col = (key, inter, pa)
    return row, col


def _values(inter, na, nb) -> list:
    return [cosine_from_counts(int(i), int(a), int(b)) for i, a, b in zip(inter, na, nb)]


def _check(A: ProfileMatrix, B: ProfileMatrix):
    if A.table != B.table:
        raise TableMismatch("matrices must share one symbol table")
    if len(A) == 0 or len(B) == 0:
        raise EmptyMatrix("MPCS needs at least one row in each matrix")


def max_cosine(p: Profile, M: ProfileMatrix):
    """Best cosine of ``p`` against the rows of ``M`` and the first row attaining it."""
    if len(M) == 0:
        raise EmptyMatrix("empty matrix")
    if p.table != M.table:
        raise TableMismatch("profile and matrix use different tables")
    from .engine import _to_words

    q = _to_words([p.mask], M.table.words)
    inter = _intersections(q, M.bits)[0]
    keys = _keys(inter[None, :], np.array([p.popcount]), M.popcounts)[0]
    j = int(keys.argmax())
    return cosine_from_counts(int(inter[j]), p.popcount, int(M.popcounts[j])), j


def mpcs(
    A: ProfileMatrix,
    B: ProfileMatrix,
    agg: str = "max",
    *,
    block_rows: Optional[int] = None,
    threads: int = 1,
) -> MpcsResult:
    """MPCS between two profile matrices.

    ``agg="max"`` runs a single |A|x|B| pass, since the best pair is the same in
    both directions.  ``agg="mean"`` needs the best match of every row of A and
    of every row of B.  Rows are compared in blocks of ``block_rows`` (chosen
    automatically by default), so the full pair matrix is never held at once.
    """
    _check(A, B)
    if agg not in ("max", "mean"):
        raise ValueError(f"unknown aggregation {agg!r}")
    pA, pB = _Prepared(A), _Prepared(B)
    empty = bool((pA.pop == 0).any() or (pB.pop == 0).any())
    row, col = _pair_search(pA, pB, agg == "mean", block_rows, threads)
    if agg == "mean":
        row_vals = _values(row[1], pA.pop, row[2])
        col_vals = _values(col[1], col[2], pB.pop)
        phi_ab = math.fsum(row_vals) / len(row_vals)
        phi_ba = math.fsum(col_vals) / len(col_vals)
        return MpcsResult(
            value=max(phi_ab, phi_ba),
            aggregation="mean",
            phi_ab=phi_ab,
            phi_ba=phi_ba,
            comparisons=2 * len(A) * len(B),
            empty_profiles=empty,
        )

    best = row[0].max()
    i = int(pA.order[row[0] == best].min())
    j = max_cosine(A.profile(i), B)[1]
    value = cosine(A.profile(i), B.profile(j))
    return MpcsResult(
        value=value,
        aggregation="max",
        phi_ab=value,
        phi_ba=value,
        comparisons=len(A) * len(B),
        witness=(
            frozenset(A.profile(i).names),
            frozenset(B.profile(j).names),
        ),
        witness_index=(i, j),
        empty_profiles=empty,
    )
