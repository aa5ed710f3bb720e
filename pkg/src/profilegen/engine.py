"""Symbol tables, bit-packed profiles and whole-disorder enumeration.

Profiles are rows of ``uint64`` words; column ``i`` of the symbol table is bit
``i % 64`` of word ``i // 64``.  Matrices are kept in canonical order: fewer
symptoms first, ties broken lexicographically by column index (so a row that
has the lowest differing column set comes first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

import numpy as np

from .errors import CapExceeded, DedupCapExceeded, OverlappingCriteria, TableMismatch
from .generators import (
    EVAL_CAP,
    DisorderSpec,
    count_generator,
    eval_masks,
    generator_domain,
    necessary_symptoms,
)

#: Default limit on materialized rows.
ROW_CAP = 2 ** 26


@dataclass(frozen=True)
class SymbolTable:
    names: tuple
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate symptom in symbol table")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "index", {n: i for i, n in enumerate(names)})

    def __len__(self):
        return len(self.names)

    @property
    def words(self) -> int:
        return max(1, -(-len(self.names) // 64))

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for n in names:
            try:
                m |= 1 << self.index[n]
            except KeyError:
                raise TableMismatch(f"symptom {n!r} is not in the symbol table") from None
        return m

    def names_of(self, mask: int) -> tuple:
        return tuple(n for i, n in enumerate(self.names) if mask >> i & 1)

    def covers(self, names: Iterable[str]) -> bool:
        return all(n in self.index for n in names)


def intern(disorders: Iterable[DisorderSpec]) -> SymbolTable:
    """One table over the union of all domains, first-seen order."""
    seen = {}
    for d in disorders:
        seen.update(dict.fromkeys(d.ordered_symptoms()))
    return SymbolTable(tuple(seen))


@dataclass(frozen=True)
class Profile:
    table: SymbolTable
    mask: int
    popcount: int = field(init=False)

    def __post_init__(self):
        if self.mask >> len(self.table):
            raise TableMismatch("profile has bits beyond its table width")
        object.__setattr__(self, "popcount", self.mask.bit_count())

    @classmethod
    def from_names(cls, table, names):
        return cls(table, table.mask(names))

    @property
    def names(self) -> tuple:
        return self.table.names_of(self.mask)

    def bits(self) -> list:
        return [self.mask >> i & 1 for i in range(len(self.table))]


def _to_words(masks, words) -> np.ndarray:
    out = np.zeros((len(masks), words), dtype=np.uint64)
    lo = (1 << 64) - 1
    for i, m in enumerate(masks):
        for w in range(words):
            out[i, w] = (m >> (64 * w)) & lo
    return out


def _from_words(row) -> int:
    m = 0
    for w, v in enumerate(row):
        m |= int(v) << (64 * w)
    return m


_REV8 = np.array([int(f"{b:08b}"[::-1], 2) for b in range(256)], dtype=np.uint8)


def _reverse_bits(words: np.ndarray) -> np.ndarray:
    as_bytes = np.ascontiguousarray(words).view(np.uint8).reshape(*words.shape, 8)
    flipped = _REV8[as_bytes][..., ::-1]
    return np.ascontiguousarray(flipped).view(np.uint64).reshape(words.shape)


def canonical_sort(bits: np.ndarray) -> np.ndarray:
    """Permutation putting rows in canonical (graded-lexicographic) order."""
    if len(bits) == 0:
        return np.arange(0)
    pop = np.bitwise_count(bits).sum(axis=1, dtype=np.int64)
    rev = _reverse_bits(bits)
    # lexsort's last key is primary; column 0 is the top bit of rev[:, 0],
    # and a set low column must sort first, hence the complement
    keys = [~rev[:, w] for w in reversed(range(bits.shape[1]))]
    return np.lexsort(keys + [pop])


@dataclass(frozen=True, eq=False)
class ProfileMatrix:
    """Duplicate-free profiles of one disorder over a shared symbol table."""

    table: SymbolTable
    bits: np.ndarray
    name: str = ""
    reduced: bool = False

    def __len__(self):
        return self.bits.shape[0]

    @property
    def popcounts(self) -> np.ndarray:
        return np.bitwise_count(self.bits).sum(axis=1, dtype=np.int64)

    def mask(self, i: int) -> int:
        return _from_words(self.bits[i])

    def profile(self, i: int) -> Profile:
        return Profile(self.table, self.mask(i))

    def __iter__(self) -> Iterator[Profile]:
        return (self.profile(i) for i in range(len(self)))

    def to_sets(self) -> list:
        return [frozenset(self.table.names_of(self.mask(i))) for i in range(len(self))]

    def dense(self) -> np.ndarray:
        """0/1 matrix of shape (rows, columns)."""
        n = len(self.table)
        as_bytes = np.ascontiguousarray(self.bits).view(np.uint8)
        cells = np.unpackbits(as_bytes, axis=1, bitorder="little")
        return cells[:, :n]

    @classmethod
    def from_masks(cls, table, masks, name="", reduced=False):
        bits = _to_words(list(masks), table.words)
        return cls(table, bits[canonical_sort(bits)], name, reduced)


def criterion_masks(g, table: SymbolTable, cap: int = EVAL_CAP) -> list:
    """Combinations of one criterion as table masks, canonically ordered."""
    bit = {n: 1 << table.index[n] for n in generator_domain(g) if n in table.index}
    missing = generator_domain(g) - bit.keys()
    if missing:
        raise TableMismatch(f"symbol table lacks {sorted(missing)}")
    masks = eval_masks(g, bit, cap)

    def key(m):
        return (m.bit_count(), [i for i in range(m.bit_length()) if m >> i & 1])

    return sorted(masks, key=key)


def count_profiles(d: DisorderSpec) -> int:
    """Exact number of distinct profiles; needs disjoint criterion domains."""
    if not d.disjoint_criteria:
        raise OverlappingCriteria(
            f"{d.name}: criteria share symptoms, so the count is not a product; "
            "enumerate with dedup instead"
        )
    return math.prod(count_generator(g) for g in d.criteria)


def enumerate_profiles(
    d: DisorderSpec, table: SymbolTable, row_cap: int = ROW_CAP
) -> Iterator[Profile]:
    """Stream profiles odometer-style: the last criterion varies fastest."""
    parts = [criterion_masks(g, table) for g in d.criteria]
    if d.disjoint_criteria:
        for pick in product(*parts):
            m = 0
            for p in pick:
                m |= p
            yield Profile(table, m)
        return
    seen = set()
    for pick in product(*parts):
        m = 0
        for p in pick:
            m |= p
        if m in seen:
            continue
        if len(seen) >= row_cap:
            raise DedupCapExceeded(f"{d.name}: more than {row_cap} distinct rows")
        seen.add(m)
        yield Profile(table, m)


def enumerate_chunk(d: DisorderSpec, table: SymbolTable, start: int, stop: int):
    """Profiles ``start..stop`` of the odometer stream (disjoint criteria only).

    Chunks partition the index space, so concatenating consecutive chunks
    reproduces :func:`enumerate_profiles` exactly.
    """
    if not d.disjoint_criteria:
        raise OverlappingCriteria(f"{d.name}: chunked streaming needs disjoint criteria")
    parts = [criterion_masks(g, table) for g in d.criteria]
    radices = [len(p) for p in parts]
    for idx in range(start, min(stop, math.prod(radices))):
        m, rest = 0, idx
        for part, rad in zip(reversed(parts), reversed(radices)):
            rest, digit = divmod(rest, rad)
            m |= part[digit]
        yield Profile(table, m)


def build_matrix(
    d: DisorderSpec,
    table: SymbolTable,
    row_cap: int = ROW_CAP,
    reduced: bool = False,
) -> ProfileMatrix:
    """Materialize every profile of ``d`` as a canonical :class:`ProfileMatrix`."""
    if not table.covers(d.domain):
        raise TableMismatch(f"symbol table does not cover {d.name}")
    parts = [criterion_masks(g, table) for g in d.criteria]
    raw = math.prod(len(p) for p in parts)
    if raw > row_cap:
        err = CapExceeded if d.disjoint_criteria else DedupCapExceeded
        raise err(f"{d.name}: {raw} rows exceed the row cap of {row_cap}")
    words = table.words
    acc = np.zeros((1, words), dtype=np.uint64)
    for part in parts:
        w = _to_words(part, words)
        acc = (acc[:, None, :] | w[None, :, :]).reshape(-1, words)
    if not d.disjoint_criteria:
        acc = np.unique(acc, axis=0)
    return ProfileMatrix(table, acc[canonical_sort(acc)], d.name, reduced)


def max_profile(d: DisorderSpec, table: SymbolTable) -> Profile:
    """Bit-or of all profiles, i.e. the union of the criterion domains."""
    return Profile.from_names(table, d.domain)


def necessary_profile(d: DisorderSpec, table: SymbolTable) -> Profile:
    """Symptoms present in every profile (criteria must be disjoint)."""
    if not d.disjoint_criteria:
        raise OverlappingCriteria(f"{d.name}: per-criterion folding needs disjoint criteria")
    names = frozenset().union(*(necessary_symptoms(g) for g in d.criteria))
    return Profile.from_names(table, names)


def satisfies(names: Iterable[str], d: DisorderSpec) -> bool:
    """Criterion-satisfaction check for a candidate profile."""
    from .generators import eval_generator

    p = frozenset(names)
    if not p <= d.domain:
        return False
    return all(p & dom in eval_generator(g) for g, dom in zip(d.criteria, d.domains))


def _write_rows(sink, table: SymbolTable, bits: np.ndarray) -> int:
    sink.write(",".join(table.names) + "\n")
    n = len(table)
    if n == 0:
        return 0
    cells = np.unpackbits(
        np.ascontiguousarray(bits).view(np.uint8), axis=1, bitorder="little"
    )[:, :n]
    text = np.full((len(bits), 2 * n), ord(","), dtype=np.uint8)
    text[:, 0::2] = cells + ord("0")
    text[:, -1] = ord("\n")
    sink.write(text.tobytes().decode("ascii"))
    return len(bits)


def export_matrix(d: DisorderSpec, table: SymbolTable, sink, row_cap: int = ROW_CAP) -> int:
    """Write the AP matrix of ``d`` as CSV; returns the number of data rows."""
    matrix = build_matrix(d, table, row_cap)
    return _write_rows(sink, table, matrix.bits)


def export_max_profile(d: DisorderSpec, table: SymbolTable, sink) -> int:
    mp = max_profile(d, table)
    return _write_rows(sink, table, _to_words([mp.mask], table.words))
