"""Shifted optimization over intersections of strongly base orderable matroids.

For two matroids from the uniform/partition/transversal families (all
gammoids, hence strongly base orderable), the shuffle matroids of the two
factors intersect exactly in the shuffle set of the intersection, so the
shifted OPTIMAL VALUE is a weighted matroid intersection over the two shuffle
oracles.  Recovering a feasible witness is open in general; it is provided
here for matchings in bipartite graphs, where an n-edge-coloring of the
row-sum multigraph splits the optimal matrix into n matchings.
"""

from __future__ import annotations

from typing import Sequence

from .constructions import Matrix01, ShuffleMatroid
from .errors import DisallowedKindError, InfeasibleError, InputError
from .matroids import Matroid, PartitionMatroid, Subset01, check_weight_guard
from .solver import ProfitMatrix, ShiftedSolution, _flat_weights, _solution_from, equivalent

SBO_KINDS = ("uniform", "partition", "transversal")


class BipartiteGraph:
    """Bipartite graph with 1-based sides; edge k (0-based) is ground element k."""

    __slots__ = ("left", "right", "edges")

    def __init__(self, left: int, right: int, edges: Sequence[tuple[int, int]]):
        self.left = int(left)
        self.right = int(right)
        if self.left < 1 or self.right < 1:
            raise InputError("both sides need at least one vertex")
        for l, r in edges:
            if not (1 <= l <= self.left and 1 <= r <= self.right):
                raise InputError(f"edge ({l},{r}) outside {self.left}x{self.right} bipartition")
        self.edges = tuple((int(l), int(r)) for l, r in edges)
        if not self.edges:
            raise InputError("graph needs at least one edge")

    @property
    def d(self) -> int:
        return len(self.edges)

    @classmethod
    def from_json(cls, obj: dict) -> "BipartiteGraph":
        try:
            return cls(int(obj["left"]), int(obj["right"]),
                       [(int(l), int(r)) for l, r in obj["edges"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad bipartite graph description: {exc}") from exc


def degree_matroids(g: BipartiteGraph) -> tuple[PartitionMatroid, PartitionMatroid]:
    """The two partition matroids whose common independent sets are matchings."""
    left_blocks = [l - 1 for l, _ in g.edges]
    right_blocks = [r - 1 for _, r in g.edges]
    m1 = PartitionMatroid(left_blocks, [1] * g.left)
    m2 = PartitionMatroid(right_blocks, [1] * g.right)
    return m1, m2


class IntersectionInstance:
    """Two strongly-base-orderable matroids on one ground set, plus profits."""

    __slots__ = ("m1", "m2", "n", "c")

    def __init__(self, m1: Matroid, m2: Matroid, n: int, c: ProfitMatrix):
        for m in (m1, m2):
            if m.kind not in SBO_KINDS:
                raise DisallowedKindError(
                    f"matroid kind {m.kind!r} is not accepted: the value computation "
                    f"requires strongly base orderable matroids (one of {', '.join(SBO_KINDS)})"
                )
        if m1.d != m2.d:
            raise InputError(f"ground sizes differ: {m1.d} vs {m2.d}")
        if c.d != m1.d:
            raise InputError(f"profit matrix has {c.d} rows, ground size is {m1.d}")
        if int(n) < 1:
            raise InputError(f"copy count must be >= 1, got {n}")
        if c.n != int(n):
            raise InputError(f"profit matrix has {c.n} columns, expected {n}")
        self.m1, self.m2, self.n, self.c = m1, m2, int(n), c


def weighted_matroid_intersection_max(m1: Matroid, m2: Matroid, w: Sequence[int]) -> Subset01:
    """Maximum-weight common independent set of two matroids on one ground set.

    Per cardinality stage, augments along a cheapest source-to-sink path of
    the exchange digraph (cost = weight given up minus weight gained), ties
    broken by fewest arcs then lexicographically smallest path, which keeps
    the current set extreme and the search free of negative cycles.  The best
    weight over all stages, including the empty set at 0, is returned.
    """
    if m1.d != m2.d:
        raise InputError(f"ground sizes differ: {m1.d} vs {m2.d}")
    if len(w) != m1.d:
        raise InputError(f"weight vector length {len(w)} != ground size {m1.d}")
    check_weight_guard(w)

    cur: frozenset = frozenset()
    best_weight, best_set = 0, cur
    while True:
        path = _augmenting_path(m1, m2, cur, w)
        if path is None:
            break
        cur = cur.symmetric_difference(path)
        assert m1._indep(cur) and m2._indep(cur), "augmentation left the intersection"
        weight = sum(w[e] for e in cur)
        if weight > best_weight:
            best_weight, best_set = weight, cur
    return Subset01.from_indices(m1.d, best_set)


def _augmenting_path(m1: Matroid, m2: Matroid, cur: frozenset, w: Sequence[int]) -> frozenset | None:
    d = m1.d
    outside = [e for e in range(d) if e not in cur]
    inside = sorted(cur)
    sources = [y for y in outside if m1._indep(cur | {y})]
    if not sources:
        return None
    sinks = {y for y in outside if m2._indep(cur | {y})}

    # Arcs: x->y when the swap keeps m1-independence, y->x when it keeps m2's.
    arcs: list[tuple[int, int]] = []
    for x in inside:
        base = cur - {x}
        for y in outside:
            swapped = base | {y}
            if m1._indep(swapped):
                arcs.append((x, y))
            if m2._indep(swapped):
                arcs.append((y, x))
    arcs.sort()

    def cost(v: int) -> int:
        return w[v] if v in cur else -w[v]

    # Label-correcting search on (cost, hops, path); path tuples make the
    # order total, so the outcome is deterministic.  Recorded paths are kept
    # simple, so labels live in a finite set and the loop terminates.
    dist: dict[int, tuple] = {}
    for y in sorted(sources):
        dist[y] = (cost(y), 1, (y,))
    changed = True
    while changed:
        changed = False
        for u, v in arcs:
            du = dist.get(u)
            if du is None or v in du[2]:
                continue
            cand = (du[0] + cost(v), du[1] + 1, du[2] + (v,))
            if v not in dist or cand < dist[v]:
                dist[v] = cand
                changed = True

    best = None
    for y in sorted(sinks):
        if y in dist and (best is None or dist[y] < best):
            best = dist[y]
    if best is None:
        return None
    return frozenset(best[2])


def _shifted_intersection_witness(inst: IntersectionInstance) -> tuple[int, Matrix01]:
    cbar = inst.c.shifted()
    sh1 = ShuffleMatroid(inst.m1, inst.n)
    sh2 = ShuffleMatroid(inst.m2, inst.n)
    w = _flat_weights(cbar)
    sel = weighted_matroid_intersection_max(sh1, sh2, w)
    x = Matrix01.from_flat(inst.c.d, inst.n, sel.indices())
    return cbar.dot(x), x


def shifted_value_intersection(inst: IntersectionInstance) -> int:
    """Optimal shifted value over columns common to both matroids.

    Only the value: a column-feasible witness is not recovered in general
    (see solve_shifted_bipartite_matching for the matching case).
    """
    value, _ = _shifted_intersection_witness(inst)
    return value


def fiber_bipartite_matching(g: BipartiteGraph, n: int, x: Matrix01) -> Matrix01:
    """Split x into n matching columns by edge-coloring its row-sum multigraph.

    Row e of x contributes row_sum(e) parallel copies of edge e; a bipartite
    multigraph with maximum degree at most n always n-edge-colors, and the
    color classes become the columns of y, so y ~ x.  Larger degree means x
    is not equivalent to any n-tuple of matchings.
    """
    if x.d != g.d:
        raise InputError(f"matrix has {x.d} rows, graph has {g.d} edges")
    if x.n != int(n):
        raise InputError(f"matrix has {x.n} columns, expected {n}")
    n = int(n)

    multiplicity = x.row_sums()
    degree: dict[int, int] = {}
    copies: list[int] = []  # edge ids, one entry per parallel copy
    for e, m_e in enumerate(multiplicity):
        l, r = g.edges[e]
        for node in (l, g.left + r):
            degree[node] = degree.get(node, 0) + m_e
        copies.extend([e] * m_e)
    if any(v > n for v in degree.values()):
        raise InfeasibleError(f"a vertex has multidegree above {n}: not in the shuffle set")

    # colored[node][color] -> copy position; classic two-color path swapping.
    colored: dict[int, dict[int, int]] = {}
    color_of: dict[int, int] = {}
    endpoints = [(g.edges[e][0], g.left + g.edges[e][1]) for e in copies]

    def free_colors(node: int) -> list[int]:
        used = colored.setdefault(node, {})
        return [k for k in range(n) if k not in used]

    def assign(pos: int, k: int) -> None:
        color_of[pos] = k
        for node in endpoints[pos]:
            colored.setdefault(node, {})[k] = pos

    for pos in range(len(copies)):
        u, v = endpoints[pos]
        fu, fv = free_colors(u), free_colors(v)
        common = sorted(set(fu) & set(fv))
        if common:
            assign(pos, common[0])
            continue
        a, b = fu[0], fv[0]
        # Swap colors a/b along the alternating path starting at v; bipartite
        # parity keeps the path away from u, freeing a at both endpoints.
        path = []
        node, col = v, a
        while col in colored.get(node, {}):
            q = colored[node][col]
            path.append(q)
            n1, n2 = endpoints[q]
            node = n2 if node == n1 else n1
            col = b if col == a else a
        for q in path:
            old = color_of[q]
            new = b if old == a else a
            color_of[q] = new
            for nd in endpoints[q]:
                del colored[nd][old]
                colored[nd][new] = q
        assert a in free_colors(u) and a in free_colors(v), "path swap failed to free a color"
        assign(pos, a)

    rows = [[0] * n for _ in range(g.d)]
    for pos, e in enumerate(copies):
        k = color_of[pos]
        assert rows[e][k] == 0, "parallel copies share a color"
        rows[e][k] = 1
    y = Matrix01(rows)
    assert equivalent(x, y), "coloring changed the row sums"
    return y


def solve_shifted_bipartite_matching(g: BipartiteGraph, n: int, c: ProfitMatrix) -> ShiftedSolution:
    """Complete shifted solver over matchings of a bipartite graph.

    Value from the two degree partition matroids, witness recovered by the
    edge-coloring fiber; every returned column is a matching.
    """
    inst = IntersectionInstance(*degree_matroids(g), n, c)
    value, x = _shifted_intersection_witness(inst)
    y = fiber_bipartite_matching(g, n, x)
    sol = _solution_from(inst.c.shifted(), y)
    assert sol.value == value, "fiber changed the objective value"
    assert all(inst.m1.is_independent(col) and inst.m2.is_independent(col) for col in y.columns()), \
        "a recovered column is not a matching"
    return sol
