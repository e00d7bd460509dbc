"""Lift, union and shuffle matroids built on top of a base oracle.

For a matroid S over [d] and a copy count n, three derived oracles are
realized here:

* the lift: d x n 0/1 matrices with at most one 1 per row whose column-sum
  vector is independent in S;
* the n-fold union of any matroid T over E: subsets of E decomposable into n
  T-independent parts, decided by the matroid-partition augmenting-path
  algorithm, which also produces the decomposition;
* the shuffle matroid: matrices equivalent to some column-wise selection of n
  independent sets of S, realized as the n-union of the lift.

Matrices over [d] x [n] are flattened row-major: element (i, j) <-> i*n + j
(0-based).  Every module in the package shares this convention.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .errors import InputError
from .matroids import Matroid, Subset01, full_rank


class Matrix01:
    """d x n matrix with 0/1 entries; column j is a Subset01 over [d]."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Sequence[int]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise InputError("matrix needs at least one row and one column")
        n = len(rows[0])
        for r in rows:
            if len(r) != n:
                raise InputError("matrix rows have unequal lengths")
            for x in r:
                if x not in (0, 1):
                    raise InputError(f"matrix entries must be 0 or 1, got {x!r}")
        self.rows = rows

    @classmethod
    def zero(cls, d: int, n: int) -> "Matrix01":
        return cls([[0] * n for _ in range(d)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "Matrix01":
        return cls(list(zip(*columns)))

    @classmethod
    def from_flat(cls, d: int, n: int, elems: Iterable[int]) -> "Matrix01":
        rows = [[0] * n for _ in range(d)]
        for f in elems:
            if not 0 <= f < d * n:
                raise InputError(f"flat index {f} out of range for {d}x{n}")
            i, j = divmod(f, n)
            rows[i][j] = 1
        return cls(rows)

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> Subset01:
        return Subset01(r[j] for r in self.rows)

    def columns(self) -> list[Subset01]:
        return [self.column(j) for j in range(self.n)]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    def total(self) -> int:
        return sum(self.row_sums())

    def flat_indices(self) -> frozenset:
        n = self.n
        return frozenset(i * n + j for i, r in enumerate(self.rows) for j, x in enumerate(r) if x)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix01) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Matrix01({[list(r) for r in self.rows]})"


def flat_index(i: int, j: int, n: int) -> int:
    """Row-major flattening of matrix position (i, j), all 0-based."""
    return i * n + j


def unflat_index(f: int, n: int) -> tuple[int, int]:
    return divmod(f, n)


class Decomposition:
    """Parts x_1..x_n of a matrix, pairwise support-disjoint, summing to it."""

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[Matrix01]):
        self.parts = tuple(parts)

    def total(self) -> Matrix01:
        d, n = self.parts[0].d, self.parts[0].n
        rows = [[0] * n for _ in range(d)]
        for p in self.parts:
            for i, r in enumerate(p.rows):
                for j, x in enumerate(r):
                    rows[i][j] += x
        return Matrix01(rows)  # raises if supports overlap

    def __repr__(self) -> str:
        return f"Decomposition({len(self.parts)} parts)"


class LiftMatroid(Matroid):
    """Matrices with at most one 1 per row and column-sum independent in base.

    Ground set is [d] x [n] flattened; base-oracle answers are memoized per
    row set, so repeated queries cost one dict lookup.
    """

    kind = "oracle_composite"

    def __init__(self, base: Matroid, n: int):
        n = int(n)
        if n < 1:
            raise InputError(f"copy count must be >= 1, got {n}")
        super().__init__(base.d * n)
        self.base = base
        self.n = n
        self._base_cache: dict[frozenset, bool] = {}

    def _indep(self, elems: frozenset) -> bool:
        n = self.n
        used_rows = set()
        for f in elems:
            i = f // n
            if i in used_rows:
                return False  # a row sum of 2 is not a 0/1 vector
            used_rows.add(i)
        key = frozenset(used_rows)
        hit = self._base_cache.get(key)
        if hit is None:
            hit = self.base._indep(key)
            self._base_cache[key] = hit
        return hit

    def is_independent_matrix(self, x: Matrix01) -> bool:
        if x.d != self.base.d or x.n != self.n:
            raise InputError(f"matrix is {x.d}x{x.n}, lift expects {self.base.d}x{self.n}")
        return self._indep(x.flat_indices())


class UnionMatroid(Matroid):
    """n-fold union of a matroid: sets decomposable into n independent parts.

    Membership is decided by the matroid-partition algorithm: to add an
    element, breadth-first search the exchange digraph (arc u -> v whenever
    moving u into v's class after evicting v keeps that class independent) for
    a shortest path from the new element to any class that can absorb one.
    Decompositions of independent sets are memoized so that the greedy's
    one-element-at-a-time query pattern costs a single augmentation per call.

    Instances hold mutable caches: use one instance per solver run and do not
    share it across threads.
    """

    kind = "oracle_composite"

    def __init__(self, part: Matroid, n: int):
        n = int(n)
        if n < 1:
            raise InputError(f"copy count must be >= 1, got {n}")
        super().__init__(part.d)
        self.part = part
        self.n = n
        self._indep_cache: dict[frozenset, tuple] = {frozenset(): tuple(frozenset() for _ in range(n))}
        self._dep_cache: set = set()

    def _indep(self, elems: frozenset) -> bool:
        return self.decompose(elems) is not None

    def decompose(self, elems: Iterable[int]) -> tuple | None:
        """Parts as a tuple of n frozensets, or None if not decomposable."""
        s = frozenset(elems)
        hit = self._indep_cache.get(s)
        if hit is not None:
            return hit
        if s in self._dep_cache:
            return None

        start: tuple | None = None
        missing = None
        order = sorted(s, reverse=True)
        for e in order:
            t = s - {e}
            if t in self._dep_cache:  # supersets of dependent sets are dependent
                self._dep_cache.add(s)
                return None
            cached = self._indep_cache.get(t)
            if cached is not None:
                start, missing = cached, e
                break
        if start is None:
            missing = order[0]
            start = self.decompose(s - {missing})
            if start is None:
                self._dep_cache.add(s)
                return None

        parts = [set(p) for p in start]
        if self._try_augment(parts, missing):
            snap = tuple(frozenset(p) for p in parts)
            self._check_partition(s, snap)
            self._indep_cache[s] = snap
            return snap
        self._dep_cache.add(s)
        return None

    def _try_augment(self, parts: list, e: int) -> bool:
        color = {x: k for k, p in enumerate(parts) for x in p}
        parent: dict[int, int | None] = {e: None}
        queue = deque([e])
        while queue:
            u = queue.popleft()
            cu = color.get(u)
            for k in range(self.n):
                if k == cu:
                    continue
                if self.part._indep(frozenset(parts[k] | {u})):
                    self._apply_path(parts, parent, color, u, k)
                    return True
            for v in sorted(color):
                if v in parent:
                    continue
                k = color[v]
                if k == cu:
                    continue
                if self.part._indep(frozenset((parts[k] - {v}) | {u})):
                    parent[v] = u
                    queue.append(v)
        return False

    @staticmethod
    def _apply_path(parts: list, parent: dict, color: dict, u: int | None, k: int) -> None:
        # u moves into class k; its parent takes the class u vacated, and so on.
        while u is not None:
            cu = color.get(u)
            parts[k].add(u)
            if cu is not None:
                parts[cu].remove(u)
            u, k = parent[u], cu

    def _check_partition(self, s: frozenset, parts: tuple) -> None:
        union: set = set()
        total = 0
        for p in parts:
            total += len(p)
            union |= p
            assert self.part._indep(p), "augmentation broke a class"
        assert total == len(union) == len(s) and union == set(s), "parts do not partition the set"


class ShuffleMatroid(Matroid):
    """The matroid of matrices row-equivalent to a column selection from S.

    Equal, as a set system over [d] x [n], to the n-union of the lift of S;
    that identity is what the oracle computes.  Like UnionMatroid, an
    instance carries mutable caches: keep it on a single thread.
    """

    kind = "oracle_composite"

    def __init__(self, base: Matroid, n: int):
        n = int(n)
        if n < 1:
            raise InputError(f"copy count must be >= 1, got {n}")
        super().__init__(base.d * n)
        self.base = base
        self.n = n
        self.lift = LiftMatroid(base, n)
        self.union = UnionMatroid(self.lift, n)

    def _indep(self, elems: frozenset) -> bool:
        return self.union._indep(elems)

    def is_independent_matrix(self, x: Matrix01) -> bool:
        self._check_matrix(x)
        return self._indep(x.flat_indices())

    def decompose_matrix(self, x: Matrix01) -> Decomposition | None:
        self._check_matrix(x)
        parts = self.union.decompose(x.flat_indices())
        if parts is None:
            return None
        d, n = self.base.d, self.n
        return Decomposition([Matrix01.from_flat(d, n, p) for p in parts])

    def _check_matrix(self, x: Matrix01) -> None:
        if x.d != self.base.d or x.n != self.n:
            raise InputError(f"matrix is {x.d}x{x.n}, expected {self.base.d}x{self.n}")


def lift_is_independent(base: Matroid, n: int, x: Matrix01) -> bool:
    """True iff x has at most one 1 per row and its column sum lies in base."""
    return LiftMatroid(base, n).is_independent_matrix(x)


def union_is_independent(part: Matroid, n: int, s: Subset01) -> tuple[bool, tuple[Subset01, ...] | None]:
    """Membership in the n-union of part, with the decomposition on success."""
    if s.d != part.d:
        raise InputError(f"subset length {s.d} != ground size {part.d}")
    parts = UnionMatroid(part, n).decompose(s.indices())
    if parts is None:
        return False, None
    return True, tuple(Subset01.from_indices(part.d, p) for p in parts)


def shuffle_is_independent(base: Matroid, n: int, x: Matrix01) -> tuple[bool, Decomposition | None]:
    """Membership oracle for the shuffle matroid, with a lift decomposition."""
    dec = ShuffleMatroid(base, n).decompose_matrix(x)
    return (dec is not None), dec


def union_rank_check(base: Matroid, n: int) -> tuple[int, int]:
    """(rank of the lift's ground set, rank of the shuffle's ground set).

    Tests assert these equal (rank(S), n * rank(S)).
    """
    lift_rank = full_rank(LiftMatroid(base, n))
    shuffle_rank = full_rank(ShuffleMatroid(base, n))
    return lift_rank, shuffle_rank
