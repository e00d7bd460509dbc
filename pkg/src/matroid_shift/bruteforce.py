"""Exhaustive ground-truth oracles for tests, acceptance and CLI verification.

Everything here answers by definition: list the members of a set system by
filtering the power set through the independence oracle, then scan all
multisets of n members.  Size guards are hard errors, never silent
truncation; the MATROID_SHIFT_GUARD environment variable overrides the caps.
"""

from __future__ import annotations

import os
from math import comb
from typing import Sequence

from .constructions import Matrix01
from .errors import GuardError, InputError
from .matroids import Matroid, Subset01
from .solver import ProfitMatrix

POWERSET_GUARD = 2**20
MULTISET_GUARD = 10**7
GUARD_ENV = "MATROID_SHIFT_GUARD"


def _cap(default: int) -> int:
    raw = os.environ.get(GUARD_ENV)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"{GUARD_ENV} must be an integer, got {raw!r}") from exc


class ExplicitSetSystem:
    """A set system listed in full: distinct 0/1 member vectors over [d]."""

    __slots__ = ("d", "members")

    def __init__(self, d: int, members: Sequence[Sequence[int]]):
        self.d = int(d)
        members = tuple(tuple(m) for m in members)
        for m in members:
            if len(m) != self.d or any(b not in (0, 1) for b in m):
                raise InputError("members must be 0/1 vectors of length d")
        if len(set(members)) != len(members):
            raise InputError("members must be distinct")
        self.members = members

    def __len__(self) -> int:
        return len(self.members)


def enumerate_members(m: Matroid, bases_only: bool = False) -> ExplicitSetSystem:
    """All independent sets of m (or only the bases), by power-set filtering."""
    cap = _cap(POWERSET_GUARD)
    if 2**m.d > cap:
        raise GuardError(f"2^{m.d} subsets exceed the enumeration guard {cap}")
    members = []
    for mask in range(1 << m.d):
        elems = frozenset(i for i in range(m.d) if mask >> i & 1)
        if m._indep(elems):
            members.append(tuple((mask >> i) & 1 for i in range(m.d)))
    if bases_only:
        top = max(sum(mem) for mem in members)
        members = [mem for mem in members if sum(mem) == top]
    return ExplicitSetSystem(m.d, members)


def _check_multiset_guard(count: int, n: int) -> None:
    cap = _cap(MULTISET_GUARD)
    if comb(count + n - 1, n) > cap:
        raise GuardError(
            f"{comb(count + n - 1, n)} multisets of {n} from {count} members "
            f"exceed the enumeration guard {cap}"
        )


def _witness(sys: ExplicitSetSystem, picks: tuple[int, ...]) -> Matrix01:
    # Witness columns in canonical block order so test diffs stay stable.
    return Matrix01(
        tuple(tuple(sys.members[k][i] for k in picks) for i in range(sys.d))
    )


def brute_shifted(sys: ExplicitSetSystem, n: int, c: ProfitMatrix) -> tuple[int, Matrix01]:
    """Exact shifted optimum over all multisets of n members.

    Row i of the shifted witness is 1 exactly in its first count_i columns,
    so the objective is the sum of prefix sums of the shifted profit rows at
    the member-multiplicity counts.
    """
    if c.d != sys.d or c.n != int(n) or int(n) < 1:
        raise InputError(f"profits {c.d}x{c.n} do not match d={sys.d}, n={n}")
    n = int(n)
    _check_multiset_guard(len(sys), n)
    cbar = c.shifted()
    prefix = [[0] * (n + 1) for _ in range(sys.d)]
    for i in range(sys.d):
        for j in range(n):
            prefix[i][j + 1] = prefix[i][j] + cbar.rows[i][j]

    members = sys.members
    d = sys.d
    counts = [0] * d
    best: list = [None, None]
    picks: list[int] = []

    def recurse(start: int, remaining: int) -> None:
        if remaining == 0:
            value = sum(prefix[i][counts[i]] for i in range(d))
            if best[0] is None or value > best[0]:
                best[0], best[1] = value, tuple(picks)
            return
        for k in range(start, len(members)):
            zk = members[k]
            for i in range(d):
                counts[i] += zk[i]
            picks.append(k)
            recurse(k, remaining - 1)
            picks.pop()
            for i in range(d):
                counts[i] -= zk[i]

    recurse(0, n)
    return best[0], _witness(sys, best[1])


def brute_lexmin(sys: ExplicitSetSystem, n: int) -> tuple[tuple[int, ...], Matrix01]:
    """Exact lexicographically minimal vulnerability vector over member multisets."""
    if int(n) < 1:
        raise InputError(f"copy count must be >= 1, got {n}")
    n = int(n)
    _check_multiset_guard(len(sys), n)
    members = sys.members
    d = sys.d
    counts = [0] * d
    best: list = [None, None]
    picks: list[int] = []

    def recurse(start: int, remaining: int) -> None:
        if remaining == 0:
            hist = [0] * (n + 1)
            for cnt in counts:
                hist[cnt] += 1
            vuln = [0] * n
            running = 0
            for k in range(n, 0, -1):
                running += hist[k]
                vuln[k - 1] = running
            # Minimizing the reversed tuple in ordinary lex order minimizes
            # the last vulnerability entry first.
            key = tuple(reversed(vuln))
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, tuple(picks)
            return
        for k in range(start, len(members)):
            zk = members[k]
            for i in range(d):
                counts[i] += zk[i]
            picks.append(k)
            recurse(k, remaining - 1)
            picks.pop()
            for i in range(d):
                counts[i] -= zk[i]

    recurse(0, n)
    return tuple(reversed(best[0])), _witness(sys, best[1])


def brute_shuffle_membership(sys: ExplicitSetSystem, n: int, x: Matrix01) -> bool:
    """Membership in the shuffle set by definition: some multiset of n members
    has element multiplicities equal to the row sums of x."""
    if x.d != sys.d or x.n != int(n) or int(n) < 1:
        raise InputError(f"matrix {x.d}x{x.n} does not match d={sys.d}, n={n}")
    n = int(n)
    _check_multiset_guard(len(sys), n)
    target = x.row_sums()
    members = sys.members
    d = sys.d
    counts = [0] * d

    def recurse(start: int, remaining: int) -> bool:
        if remaining == 0:
            return all(counts[i] == target[i] for i in range(d))
        for k in range(start, len(members)):
            zk = members[k]
            ok = True
            for i in range(d):
                counts[i] += zk[i]
                if counts[i] > target[i]:
                    ok = False
            if ok and recurse(k, remaining - 1):
                return True
            for i in range(d):
                counts[i] -= zk[i]
        return False

    return recurse(0, n)


def common_members(m1: Matroid, m2: Matroid) -> ExplicitSetSystem:
    """Explicit listing of the sets independent in both matroids."""
    if m1.d != m2.d:
        raise InputError(f"ground sizes differ: {m1.d} vs {m2.d}")
    sys1 = enumerate_members(m1)
    keep = [mem for mem in sys1.members
            if m2._indep(frozenset(i for i, b in enumerate(mem) if b))]
    return ExplicitSetSystem(m1.d, keep)


def evaluate_shifted(c: ProfitMatrix, columns: Sequence[Subset01]) -> int:
    """Literal objective evaluation: build the matrix, shift it, take cbar . ybar.

    Used by tests as a second, unoptimized route to the same number that
    brute_shifted computes through prefix sums.
    """
    from .solver import shift  # local import to keep module load light

    y = Matrix01.from_columns([col.bits for col in columns])
    return c.shifted().dot(shift(y))
