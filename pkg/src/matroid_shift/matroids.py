"""Matroids given by independence oracles.

Every matroid here is a declarative, immutable description of a ground set
[d] together with an independence test.  Five concrete families are provided
(graphic, uniform, partition, linear over GF(2), transversal) plus a generic
wrapper for externally supplied oracles.  On top of the oracle interface sit
the classic primitives: rank of a subset and the max-weight greedy algorithm.

Elements are 0-based internally; JSON files use 1-based indices throughout.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .errors import InputError, OverflowGuardError

# Summed absolute weights must stay below this for exact 64-bit semantics.
WEIGHT_GUARD = 2**61


class Subset01:
    """0/1 indicator vector over a ground set of size d."""

    __slots__ = ("bits",)

    def __init__(self, bits: Iterable[int]):
        bits = tuple(bits)
        for b in bits:
            if b not in (0, 1):
                raise InputError(f"subset entries must be 0 or 1, got {b!r}")
        self.bits = bits

    @classmethod
    def from_indices(cls, d: int, indices: Iterable[int]) -> "Subset01":
        bits = [0] * d
        for i in indices:
            if not 0 <= i < d:
                raise InputError(f"element index {i} out of range for d={d}")
            bits[i] = 1
        return cls(bits)

    @classmethod
    def full(cls, d: int) -> "Subset01":
        return cls([1] * d)

    @property
    def d(self) -> int:
        return len(self.bits)

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bits) if b)

    def size(self) -> int:
        return sum(self.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subset01) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"Subset01({list(self.bits)})"


class Matroid:
    """Base class: an independence oracle over ground set {0, .., d-1}."""

    kind = "abstract"

    def __init__(self, d: int):
        d = int(d)
        if d < 1:
            raise InputError(f"ground size must be >= 1, got {d}")
        self.d = d

    def is_independent(self, s: Subset01) -> bool:
        if s.d != self.d:
            raise InputError(f"subset length {s.d} != ground size {self.d}")
        return self._indep(frozenset(s.indices()))

    def _indep(self, elems: frozenset) -> bool:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}(d={self.d})"


class GraphicMatroid(Matroid):
    """Independent sets are acyclic edge sets of an undirected graph.

    Vertices are 1..vertices; edge k (0-based) is ground element k.  Parallel
    edges and self-loops are allowed; a self-loop is never independent.
    """

    kind = "graphic"

    def __init__(self, vertices: int, edges: Sequence[tuple[int, int]]):
        super().__init__(len(edges))
        self.vertices = int(vertices)
        if self.vertices < 1:
            raise InputError("graph needs at least one vertex")
        for u, v in edges:
            if not (1 <= u <= self.vertices and 1 <= v <= self.vertices):
                raise InputError(f"edge ({u},{v}) has an endpoint outside 1..{self.vertices}")
        self.edges = tuple((int(u), int(v)) for u, v in edges)

    def _indep(self, elems: frozenset) -> bool:
        parent = list(range(self.vertices + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in elems:
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True


class UniformMatroid(Matroid):
    """Every set of at most r elements is independent."""

    kind = "uniform"

    def __init__(self, d: int, r: int):
        super().__init__(d)
        r = int(r)
        if not 0 <= r <= d:
            raise InputError(f"uniform rank must satisfy 0 <= r <= d, got r={r}, d={d}")
        self.r = r

    def _indep(self, elems: frozenset) -> bool:
        return len(elems) <= self.r


class PartitionMatroid(Matroid):
    """Per-block cardinality caps: element i belongs to block blocks[i]."""

    kind = "partition"

    def __init__(self, blocks: Sequence[int], capacities: Sequence[int]):
        super().__init__(len(blocks))
        self.capacities = tuple(int(c) for c in capacities)
        if any(c < 0 for c in self.capacities):
            raise InputError("block capacities must be nonnegative")
        nb = len(self.capacities)
        for b in blocks:
            if not 0 <= b < nb:
                raise InputError(f"block id {b} out of range for {nb} blocks")
        self.blocks = tuple(int(b) for b in blocks)

    def _indep(self, elems: frozenset) -> bool:
        used = [0] * len(self.capacities)
        for e in elems:
            b = self.blocks[e]
            used[b] += 1
            if used[b] > self.capacities[b]:
                return False
        return True


class LinearGf2Matroid(Matroid):
    """Columns of a 0/1 matrix; independence is linear independence over GF(2)."""

    kind = "linear_gf2"

    def __init__(self, columns: Sequence[Sequence[int]]):
        super().__init__(len(columns))
        lengths = {len(c) for c in columns}
        if len(lengths) != 1:
            raise InputError("all GF(2) columns must have the same length")
        self.num_rows = lengths.pop()
        masks = []
        for col in columns:
            mask = 0
            for k, bit in enumerate(col):
                if bit not in (0, 1):
                    raise InputError("GF(2) column entries must be 0 or 1")
                if bit:
                    mask |= 1 << k
            masks.append(mask)
        self.columns = tuple(tuple(int(b) for b in c) for c in columns)
        self._masks = tuple(masks)

    def _indep(self, elems: frozenset) -> bool:
        basis: dict[int, int] = {}  # leading bit -> reduced column
        for e in sorted(elems):
            v = self._masks[e]
            while v:
                lead = v.bit_length() - 1
                row = basis.get(lead)
                if row is None:
                    basis[lead] = v
                    break
                v ^= row
            if not v:
                return False
        return True


class TransversalMatroid(Matroid):
    """Independent sets admit a system of distinct representatives.

    Element i may be represented by any agent in adjacency[i] (0-based agent
    ids).  Independence is tested by augmenting-path bipartite matching,
    recomputed per query.
    """

    kind = "transversal"

    def __init__(self, adjacency: Sequence[Sequence[int]], num_agents: int):
        super().__init__(len(adjacency))
        self.num_agents = int(num_agents)
        if self.num_agents < 0:
            raise InputError("agent count must be nonnegative")
        for row in adjacency:
            for a in row:
                if not 0 <= a < self.num_agents:
                    raise InputError(f"agent id {a} out of range for {self.num_agents} agents")
        self.adjacency = tuple(tuple(sorted(set(int(a) for a in row))) for row in adjacency)

    def _indep(self, elems: frozenset) -> bool:
        match: dict[int, int] = {}  # agent -> element

        def augment(e: int, seen: set) -> bool:
            for a in self.adjacency[e]:
                if a in seen:
                    continue
                seen.add(a)
                if a not in match or augment(match[a], seen):
                    match[a] = e
                    return True
            return False

        for e in sorted(elems):
            if not augment(e, set()):
                return False
        return True


class OracleMatroid(Matroid):
    """Wraps an externally supplied independence oracle (oracle_composite kind).

    The callable receives a frozenset of 0-based element indices.  The caller
    is responsible for the function actually describing a matroid.
    """

    kind = "oracle_composite"

    def __init__(self, d: int, fn: Callable[[frozenset], bool]):
        super().__init__(d)
        self._fn = fn

    def _indep(self, elems: frozenset) -> bool:
        return bool(self._fn(frozenset(elems)))


def is_independent(m: Matroid, s: Subset01) -> bool:
    """Oracle call on an explicit 0/1 subset."""
    return m.is_independent(s)


def rank(m: Matroid, s: Subset01) -> int:
    """Size of a maximum independent subset of s, by greedy insertion."""
    if s.d != m.d:
        raise InputError(f"subset length {s.d} != ground size {m.d}")
    cur: frozenset = frozenset()
    for e in s.indices():
        cand = cur | {e}
        if m._indep(cand):
            cur = cand
    return len(cur)


def full_rank(m: Matroid) -> int:
    return rank(m, Subset01.full(m.d))


def check_weight_guard(values: Iterable[int]) -> None:
    total = 0
    for v in values:
        if not isinstance(v, int):
            raise InputError(f"weights must be integers, got {v!r}")
        total += abs(v)
    if total > WEIGHT_GUARD:
        raise OverflowGuardError(f"summed |weights| {total} exceeds guard {WEIGHT_GUARD}")


def greedy_in_order(m: Matroid, order: Sequence[int], w: Sequence[int], force_basis: bool) -> frozenset:
    """Greedy scan in an explicit element order (callers fix the order).

    Takes an element iff it keeps independence; with force_basis=False,
    nonpositive-weight elements are skipped.
    """
    chosen: frozenset = frozenset()
    for e in order:
        if not force_basis and w[e] <= 0:
            continue
        cand = chosen | {e}
        if m._indep(cand):
            chosen = cand
    return chosen


def greedy_max(m: Matroid, w: Sequence[int], force_basis: bool = False) -> Subset01:
    """Max-weight independent set (or max-weight basis) by the greedy algorithm.

    Elements are scanned in nonincreasing weight, ties by ascending index.
    With force_basis=False only positive-weight elements are taken, so the
    result is a maximum-weight independent set.  With force_basis=True
    nonpositive elements are taken too whenever they keep independence, so the
    result is a basis of maximum total weight among bases.
    """
    if len(w) != m.d:
        raise InputError(f"weight vector length {len(w)} != ground size {m.d}")
    check_weight_guard(w)
    order = sorted(range(m.d), key=lambda e: (-w[e], e))
    chosen = greedy_in_order(m, order, w, force_basis)
    return Subset01.from_indices(m.d, chosen)


# --- JSON descriptions ------------------------------------------------------
#
# Schema: {"kind": "...", "d": int, "params": {...}} with 1-based indices in
# files (edges, blocks, agents); see README for the per-kind params.

def matroid_from_json(obj: dict) -> Matroid:
    if not isinstance(obj, dict):
        raise InputError("matroid description must be a JSON object")
    try:
        kind = obj["kind"]
        d = int(obj["d"])
        params = obj["params"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad matroid description: {exc}") from exc

    if kind == "graphic":
        edges = [(int(u), int(v)) for u, v in params["edges"]]
        if len(edges) != d:
            raise InputError(f"graphic matroid lists {len(edges)} edges but d={d}")
        return GraphicMatroid(int(params["vertices"]), edges)
    if kind == "uniform":
        return UniformMatroid(d, int(params["r"]))
    if kind == "partition":
        blocks = [int(b) - 1 for b in params["blocks"]]
        if len(blocks) != d:
            raise InputError(f"partition matroid lists {len(blocks)} blocks but d={d}")
        return PartitionMatroid(blocks, [int(c) for c in params["capacities"]])
    if kind == "linear_gf2":
        columns = [[int(b) for b in col] for col in params["columns"]]
        if len(columns) != d:
            raise InputError(f"linear_gf2 matroid lists {len(columns)} columns but d={d}")
        return LinearGf2Matroid(columns)
    if kind == "transversal":
        adjacency = [[int(a) - 1 for a in row] for row in params["adjacency"]]
        if len(adjacency) != d:
            raise InputError(f"transversal matroid lists {len(adjacency)} rows but d={d}")
        return TransversalMatroid(adjacency, int(params["agents"]))
    raise InputError(f"unknown matroid kind {kind!r}")


def matroid_to_json(m: Matroid) -> dict:
    if isinstance(m, GraphicMatroid):
        params = {"vertices": m.vertices, "edges": [[u, v] for u, v in m.edges]}
    elif isinstance(m, UniformMatroid):
        params = {"r": m.r}
    elif isinstance(m, PartitionMatroid):
        params = {"blocks": [b + 1 for b in m.blocks], "capacities": list(m.capacities)}
    elif isinstance(m, LinearGf2Matroid):
        params = {"columns": [list(c) for c in m.columns]}
    elif isinstance(m, TransversalMatroid):
        params = {"agents": m.num_agents, "adjacency": [[a + 1 for a in row] for row in m.adjacency]}
    else:
        raise InputError(f"matroid kind {m.kind!r} has no JSON form")
    return {"kind": m.kind, "d": m.d, "params": params}
