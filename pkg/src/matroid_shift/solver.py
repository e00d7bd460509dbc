"""Shift calculus and the shifted / lexicographic solvers.

A d x n profit matrix c is row-sorted ("shifted") to cbar; the shifted
optimum max{cbar . xbar : every column of x independent} is found by running
the greedy algorithm over the shuffle matroid and then recovering a
column-feasible witness from the union decomposition.  Lexicographically
minimal bases fall out of the same machinery with an implicit profit matrix
that is constant within each column and strictly decreasing from column to
column: the induced greedy order is simply "column 1 first, then column 2,
...", so no large explicit weights are ever materialized.

Vulnerability vectors are compared from the LAST coordinate down: f beats g
when the highest index where they differ has the smaller f entry.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .constructions import Decomposition, Matrix01, ShuffleMatroid
from .errors import InfeasibleError, InputError, OverflowGuardError
from .matroids import Matroid, full_rank, greedy_in_order

PROFIT_GUARD = 2**61


class ProfitMatrix:
    """d x n signed integer profit matrix with an exact-arithmetic guard."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Sequence[int]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise InputError("profit matrix needs at least one row and one column")
        n = len(rows[0])
        total = 0
        for r in rows:
            if len(r) != n:
                raise InputError("profit rows have unequal lengths")
            for x in r:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise InputError(f"profit entries must be integers, got {x!r}")
                total += abs(x)
        if total > PROFIT_GUARD:
            raise OverflowGuardError(f"summed |profits| {total} exceeds guard {PROFIT_GUARD}")
        self.rows = rows

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def shifted(self) -> "ProfitMatrix":
        return ProfitMatrix(tuple(sorted(r, reverse=True)) for r in self.rows)

    def row_nonincreasing(self) -> bool:
        return all(all(r[j] >= r[j + 1] for j in range(len(r) - 1)) for r in self.rows)

    def dot(self, x: Matrix01) -> int:
        if x.d != self.d or x.n != self.n:
            raise InputError(f"matrix is {x.d}x{x.n}, profits are {self.d}x{self.n}")
        return sum(c * v for cr, xr in zip(self.rows, x.rows) for c, v in zip(cr, xr))

    def __repr__(self) -> str:
        return f"ProfitMatrix({[list(r) for r in self.rows]})"


class ShiftedSolution:
    """A feasible matrix y, its objective value cbar.ybar, and its vulnerability vector.

    value is None for the lexicographic solver (its profit matrix is implicit)
    and vuln is None when y has entries outside {0, 1} (explicit-list solver
    over general integer vectors).
    """

    __slots__ = ("y", "value", "vuln")

    def __init__(self, y, value: int | None, vuln: tuple[int, ...] | None):
        self.y = y
        self.value = value
        self.vuln = vuln

    def __repr__(self) -> str:
        return f"ShiftedSolution(value={self.value}, vuln={self.vuln})"


def shift(x: Matrix01) -> Matrix01:
    """The unique matrix equivalent to x with every row nonincreasing."""
    return Matrix01(tuple(sorted(r, reverse=True)) for r in x.rows)


def equivalent(x: Matrix01, y: Matrix01) -> bool:
    """Row-permutation equivalence; for 0/1 matrices this is equal row sums."""
    if x.d != y.d or x.n != y.n:
        raise InputError(f"matrices {x.d}x{x.n} and {y.d}x{y.n} differ in shape")
    return x.row_sums() == y.row_sums()


def vulnerability_vector(x: Matrix01) -> tuple[int, ...]:
    """Entry k counts the rows of x with row sum >= k, k = 1..n."""
    sums = x.row_sums()
    return tuple(sum(1 for s in sums if s >= k) for k in range(1, x.n + 1))


def lex_less(f: Sequence[int], g: Sequence[int]) -> bool:
    """True iff f is strictly better: at the highest differing index, f is smaller.

    The last coordinate is compared first; this is the reverse of naive
    left-to-right lexicographic order.
    """
    if len(f) != len(g):
        raise InputError(f"vulnerability vectors of lengths {len(f)} and {len(g)}")
    for k in range(len(f) - 1, -1, -1):
        if f[k] != g[k]:
            return f[k] < g[k]
    return False


def _flat_weights(cbar: ProfitMatrix) -> list[int]:
    return [c for row in cbar.rows for c in row]


def _greedy_shuffle(sm: ShuffleMatroid, cbar: ProfitMatrix, bases: bool) -> Matrix01:
    d, n = cbar.d, cbar.n
    w = _flat_weights(cbar)
    # Ties among equal weights break by (column, row) ascending.
    order = sorted(range(d * n), key=lambda f: (-w[f], f % n, f // n))
    chosen = greedy_in_order(sm, order, w, force_basis=bases)
    return Matrix01.from_flat(d, n, chosen)


def _columns_from_parts(dec: Decomposition) -> Matrix01:
    # Part k has at most one 1 per row; its column sum becomes column k of y.
    d = dec.parts[0].d
    rows = [[0] * len(dec.parts) for _ in range(d)]
    for k, p in enumerate(dec.parts):
        for i, s in enumerate(p.row_sums()):
            rows[i][k] = s
    return Matrix01(rows)


def _solution_from(cbar: ProfitMatrix, y: Matrix01) -> ShiftedSolution:
    # value is recomputed from y alone as a self-check against solver bugs.
    return ShiftedSolution(y, cbar.dot(shift(y)), vulnerability_vector(y))


def solve_shuffling(S: Matroid, n: int, cbar: ProfitMatrix, bases: bool = False) -> Matrix01:
    """Maximize cbar over the shuffle matroid of S; cbar rows must be nonincreasing.

    With bases=True the selection order is unchanged (adding the constant
    2|c|+1 to every entry preserves the order) but every independence-keeping
    element is taken, which forces a basis of maximum profit among bases.
    """
    _check_dims(S, n, cbar)
    if not cbar.row_nonincreasing():
        raise InputError("profit rows must be nonincreasing; shift the matrix first")
    return _greedy_shuffle(ShuffleMatroid(S, n), cbar, bases)


def solve_fiber(S: Matroid, n: int, x: Matrix01) -> Matrix01:
    """Find y with every column independent in S and y ~ x, or fail.

    Decomposes x into lift-independent parts; the column sums of the parts,
    one per copy, are the columns of y.
    """
    if x.d != S.d or x.n != n:
        raise InputError(f"matrix is {x.d}x{x.n}, expected {S.d}x{n}")
    dec = ShuffleMatroid(S, n).decompose_matrix(x)
    if dec is None:
        raise InfeasibleError("matrix is not in the shuffle set")
    return _finish_fiber(S, x, dec)


def _finish_fiber(S: Matroid, x: Matrix01, dec: Decomposition) -> Matrix01:
    y = _columns_from_parts(dec)
    assert equivalent(x, y), "fiber output not equivalent to input"
    assert all(S.is_independent(y.column(k)) for k in range(y.n)), "fiber column not independent"
    return y


def solve_shifted(S: Matroid, n: int, c: ProfitMatrix, bases: bool = False) -> ShiftedSolution:
    """Shifted optimization over independent-set (or basis) columns of S.

    Shifts c, greedily maximizes over the shuffle matroid, then recovers a
    column-feasible witness from the same oracle instance (the greedy already
    built the decomposition incrementally, so the recovery is free).
    """
    _check_dims(S, n, c)
    cbar = c.shifted()
    sm = ShuffleMatroid(S, n)
    x = _greedy_shuffle(sm, cbar, bases)
    dec = sm.decompose_matrix(x)
    assert dec is not None, "greedy produced a dependent selection"
    y = _finish_fiber(S, x, dec)
    sol = _solution_from(cbar, y)
    assert sol.value == cbar.dot(x), "objective mismatch between selection and witness"
    if bases:
        r = full_rank(S)
        assert all(y.column(k).size() == r for k in range(n)), "basis column of wrong size"
    return sol


def lexmin_order(d: int, n: int) -> list[int]:
    """Greedy order induced by profits constant per column, decreasing in j."""
    return [i * n + j for j in range(n) for i in range(d)]


def lexmin_shuffle_basis(S: Matroid, n: int) -> Matrix01:
    """The basis of the shuffle matroid picked by the column-order greedy."""
    sm = ShuffleMatroid(S, n)
    chosen = greedy_in_order(sm, lexmin_order(S.d, n), [1] * (S.d * n), force_basis=True)
    return Matrix01.from_flat(S.d, n, chosen)


def solve_lexmin(S: Matroid, n: int) -> ShiftedSolution:
    """n basis columns whose vulnerability vector is lexicographically minimal.

    Vulnerability entry k counts the elements used by at least k of the n
    columns; the last entry is minimized first, then the one before it, and
    so on.  No big-integer profits are built: the reduction's weights only
    matter through the greedy order, which is column-major.
    """
    if int(n) < 1:
        raise InputError(f"copy count must be >= 1, got {n}")
    n = int(n)
    sm = ShuffleMatroid(S, n)
    chosen = greedy_in_order(sm, lexmin_order(S.d, n), [1] * (S.d * n), force_basis=True)
    x = Matrix01.from_flat(S.d, n, chosen)
    dec = sm.decompose_matrix(x)
    assert dec is not None, "greedy produced a dependent selection"
    y = _finish_fiber(S, x, dec)
    r = full_rank(S)
    assert all(y.column(k).size() == r for k in range(n)), "basis column of wrong size"
    return ShiftedSolution(y, None, vulnerability_vector(y))


def solve_shifted_small(vectors: Sequence[Sequence[int]], n: int, c: ProfitMatrix) -> ShiftedSolution:
    """Shifted optimization over an explicit list of integer vectors.

    The objective value depends only on how many columns equal each listed
    vector, so all count tuples (n_1, .., n_m) summing to n are enumerated,
    each evaluated directly as cbar . ybar with y built in block order.
    Feasible for small m: the number of tuples is at most (n+1)^(m-1).
    """
    members = tuple(tuple(int(v) for v in z) for z in vectors)
    if not members:
        raise InputError("the explicit vector list is empty")
    d = c.d
    if any(len(z) != d for z in members):
        raise InputError("vector length differs from profit row count")
    if int(n) < 1:
        raise InputError(f"copy count must be >= 1, got {n}")
    n = int(n)
    if c.n != n:
        raise InputError(f"profit matrix has {c.n} columns, expected {n}")
    biggest = max((abs(v) for z in members for v in z), default=0)
    total_abs = sum(abs(x) for r in c.rows for x in r)
    if total_abs * max(1, biggest) > PROFIT_GUARD:
        raise OverflowGuardError("profits times vector magnitudes exceed the exact guard")

    cbar = c.shifted()
    best_value = None
    best_counts = None
    for counts in _count_tuples(len(members), n):
        value = 0
        for i in range(d):
            vals = sorted(
                (z[i] for z, cnt in zip(members, counts) for _ in range(cnt)),
                reverse=True,
            )
            value += sum(cj * vj for cj, vj in zip(cbar.rows[i], vals))
        if best_value is None or value > best_value:
            best_value, best_counts = value, counts

    y_rows = tuple(
        tuple(z[i] for z, cnt in zip(members, best_counts) for _ in range(cnt))
        for i in range(d)
    )
    if all(v in (0, 1) for r in y_rows for v in r):
        y = Matrix01(y_rows)
        return ShiftedSolution(y, best_value, vulnerability_vector(y))
    return ShiftedSolution(y_rows, best_value, None)


def _count_tuples(m: int, n: int):
    if m == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _count_tuples(m - 1, n - first):
            yield (first,) + rest


def _check_dims(S: Matroid, n: int, c: ProfitMatrix) -> None:
    if int(n) < 1:
        raise InputError(f"copy count must be >= 1, got {n}")
    if c.d != S.d:
        raise InputError(f"profit matrix has {c.d} rows, ground size is {S.d}")
    if c.n != int(n):
        raise InputError(f"profit matrix has {c.n} columns, expected {n}")
