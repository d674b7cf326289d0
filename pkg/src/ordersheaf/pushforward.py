"""Graph quotients and the pushforward of an order sheaf.

A merged vertex carries every total order on the union of its voters'
alternatives that restricts to each voter's order. That set is computed by
building a constraint digraph from consecutive pairs of each voter's order:
a directed cycle certifies the stalk is empty, otherwise its topological
orders are exactly the stalk.
"""
from __future__ import annotations

import heapq
import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, MutableMapping, Sequence, Union

from .errors import CapacityError, CyclicConstraintError, UnknownNameError, ValidationError
from .obstruction import ObstructionReport
from .orders import TotalOrder, restrict_order
from .sheaf import DiscreteOrderSheaf, Edge, InteractionGraph, PreferenceProfile

#: Above this many alternatives a stalk is reported by one witness only.
STALK_ENUMERATION_LIMIT = 8


@dataclass(frozen=True)
class QuotientMap:
    """Surjective vertex map from ``source`` onto the derived target graph.

    Target vertices appear in order of first use; contracted edges are
    dropped and parallel edges merged.
    """

    source: InteractionGraph
    vertex_map: Mapping[str, str]
    target: InteractionGraph = field(init=False)

    def __post_init__(self) -> None:
        vmap = {str(k): str(v) for k, v in self.vertex_map.items()}
        missing = set(self.source.vertices) - set(vmap)
        if missing:
            raise ValidationError(f"quotient map is not total: missing {sorted(missing)}")
        extra = set(vmap) - set(self.source.vertices)
        if extra:
            raise ValidationError(f"quotient map names unknown vertices {sorted(extra)}")
        object.__setattr__(self, "vertex_map", vmap)
        targets = tuple(dict.fromkeys(vmap[v] for v in self.source.vertices))
        tindex = {t: i for i, t in enumerate(targets)}
        image = set()
        for u, v in self.source.edges:
            a, b = vmap[u], vmap[v]
            if a != b:
                image.add((a, b) if tindex[a] < tindex[b] else (b, a))
        object.__setattr__(self, "target", InteractionGraph(targets, tuple(image)))

    @classmethod
    def identity(cls, graph: InteractionGraph) -> "QuotientMap":
        return cls(graph, {v: v for v in graph.vertices})

    @classmethod
    def merging(cls, graph: InteractionGraph, groups: Mapping[str, Iterable[str]]) -> "QuotientMap":
        """Contract each group of vertices to the named vertex; others map to themselves."""
        vmap = {v: v for v in graph.vertices}
        for name, members in groups.items():
            for m in members:
                if m not in vmap:
                    raise UnknownNameError(f"cannot merge unknown vertex {m!r}")
                vmap[m] = name
        return cls(graph, vmap)

    def preimage(self, target_vertex: str) -> tuple[str, ...]:
        if not self.target.has_vertex(target_vertex):
            raise UnknownNameError(f"{target_vertex!r} is not a vertex of the quotient graph")
        return tuple(v for v in self.source.vertices if self.vertex_map[v] == target_vertex)


@dataclass(frozen=True)
class ConstraintDag:
    """Precedence constraints; an arc ``(a, b)`` means a must precede b.

    Despite the name the graph may contain cycles; that is what
    :func:`detect_cycle` looks for.
    """

    nodes: frozenset[int]
    arcs: Mapping[tuple[int, int], frozenset[str]]

    def successors(self) -> dict[int, list[int]]:
        succ: dict[int, list[int]] = {n: [] for n in self.nodes}
        for a, b in self.arcs:
            succ[a].append(b)
        for targets in succ.values():
            targets.sort()
        return succ

    def predecessors(self) -> dict[int, list[int]]:
        pred: dict[int, list[int]] = {n: [] for n in self.nodes}
        for a, b in self.arcs:
            pred[b].append(a)
        return pred


def build_constraint_dag(
    orders: Sequence[TotalOrder], voters: Sequence[str] | None = None
) -> ConstraintDag:
    """One arc per consecutive pair of every order, provenance merged."""
    if voters is None:
        voters = [str(i) for i in range(len(orders))]
    if len(voters) != len(orders):
        raise ValueError("need exactly one voter name per order")
    nodes: set[int] = set()
    arcs: dict[tuple[int, int], set[str]] = defaultdict(set)
    for voter, order in zip(voters, orders):
        nodes.update(order.ranking)
        for a, b in zip(order.ranking, order.ranking[1:]):
            arcs[(a, b)].add(voter)
    return ConstraintDag(frozenset(nodes), {arc: frozenset(src) for arc, src in arcs.items()})


def detect_cycle(
    dag: ConstraintDag, counter: MutableMapping[str, int] | None = None
) -> tuple[int, ...] | None:
    """Return a directed cycle as a node sequence, or None if acyclic.

    Depth-first search from nodes in ascending id order, successors in
    ascending order; the first back edge found gives the witness. If
    ``counter`` is given, node visits and arc inspections are tallied in it.
    """
    succ = dag.successors()
    state = dict.fromkeys(dag.nodes, 0)  # 0 new, 1 on stack, 2 done
    visits = inspections = 0
    try:
        for root in sorted(dag.nodes):
            if state[root]:
                continue
            state[root] = 1
            visits += 1
            path = [root]
            stack = [iter(succ[root])]
            while stack:
                for w in stack[-1]:
                    inspections += 1
                    if state[w] == 1:
                        return tuple(path[path.index(w):])
                    if state[w] == 0:
                        state[w] = 1
                        visits += 1
                        path.append(w)
                        stack.append(iter(succ[w]))
                        break
                else:
                    state[path.pop()] = 2
                    stack.pop()
        return None
    finally:
        if counter is not None:
            counter["nodes"] = counter.get("nodes", 0) + visits
            counter["arcs"] = counter.get("arcs", 0) + inspections


def is_cycle_of(dag: ConstraintDag, cycle: Sequence[int]) -> bool:
    """True if ``cycle`` is a closed directed walk of distinct nodes in ``dag``."""
    if not cycle or len(set(cycle)) != len(cycle):
        return False
    return all((a, b) in dag.arcs for a, b in zip(cycle, (*cycle[1:], cycle[0])))


def topological_order(dag: ConstraintDag) -> TotalOrder:
    """Lexicographically smallest topological order (Kahn with a min-heap)."""
    indeg = dict.fromkeys(dag.nodes, 0)
    for _, b in dag.arcs:
        indeg[b] += 1
    succ = dag.successors()
    ready = [n for n, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    out = []
    while ready:
        n = heapq.heappop(ready)
        out.append(n)
        for w in succ[n]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(out) != len(dag.nodes):
        raise CyclicConstraintError("constraint graph has a cycle; no topological order exists")
    return TotalOrder(tuple(out))


def _check_enumerable(dag: ConstraintDag, limit: int) -> list[int]:
    if len(dag.nodes) > limit:
        raise CapacityError(f"{len(dag.nodes)} alternatives exceeds the enumeration limit {limit}")
    if detect_cycle(dag) is not None:
        raise CyclicConstraintError("linear extensions of a cyclic constraint graph do not exist")
    return sorted(dag.nodes)


def count_linear_extensions(dag: ConstraintDag, limit: int = STALK_ENUMERATION_LIMIT) -> int:
    """Exact number of topological orders, memoized over placed-node subsets."""
    nodes = _check_enumerable(dag, limit)
    bit = {n: 1 << i for i, n in enumerate(nodes)}
    need = [sum(bit[p] for p in dag.predecessors()[n]) for n in nodes]
    full = (1 << len(nodes)) - 1
    memo = {full: 1}

    def count(placed: int) -> int:
        if placed in memo:
            return memo[placed]
        total = 0
        for i in range(len(nodes)):
            b = 1 << i
            if not placed & b and need[i] & placed == need[i]:
                total += count(placed | b)
        memo[placed] = total
        return total

    return count(0)


def enumerate_linear_extensions(
    dag: ConstraintDag, limit: int = STALK_ENUMERATION_LIMIT
) -> list[TotalOrder]:
    """All topological orders in lexicographic order of their rankings."""
    nodes = _check_enumerable(dag, limit)
    pred = {n: set(p) for n, p in dag.predecessors().items()}
    out: list[TotalOrder] = []
    prefix: list[int] = []
    placed: set[int] = set()

    def extend() -> None:
        if len(prefix) == len(nodes):
            out.append(TotalOrder(tuple(prefix)))
            return
        for n in nodes:
            if n not in placed and pred[n] <= placed:
                placed.add(n)
                prefix.append(n)
                extend()
                prefix.pop()
                placed.discard(n)

    extend()
    return out


@dataclass(frozen=True)
class EmptyStalk:
    """No order is compatible with every merged voter."""

    alphabet: frozenset[int]
    # None only when produced by the enumeration oracle, which has no certificate
    cycle_witness: tuple[int, ...] | None = None

    is_empty = True


@dataclass(frozen=True)
class NonEmptyStalk:
    alphabet: frozenset[int]
    witness: TotalOrder
    orders: tuple[TotalOrder, ...] | None = None
    extension_count: int | None = None

    is_empty = False


PushforwardStalk = Union[EmptyStalk, NonEmptyStalk]


def stalk_from_orders(
    orders: Sequence[TotalOrder],
    voters: Sequence[str] | None = None,
    enumeration_limit: int = STALK_ENUMERATION_LIMIT,
) -> tuple[PushforwardStalk, ConstraintDag]:
    dag = build_constraint_dag(orders, voters)
    cycle = detect_cycle(dag)
    if cycle is not None:
        return EmptyStalk(dag.nodes, cycle), dag
    witness = topological_order(dag)
    if len(dag.nodes) <= enumeration_limit:
        everything = tuple(enumerate_linear_extensions(dag, enumeration_limit))
        return NonEmptyStalk(dag.nodes, witness, everything, len(everything)), dag
    return NonEmptyStalk(dag.nodes, witness), dag


def compute_stalk(
    quotient: QuotientMap,
    sheaf: DiscreteOrderSheaf,
    profile: PreferenceProfile,
    target_vertex: str,
    enumeration_limit: int = STALK_ENUMERATION_LIMIT,
) -> PushforwardStalk:
    preimage = quotient.preimage(target_vertex)
    stalk, _ = stalk_from_orders([profile[v] for v in preimage], preimage, enumeration_limit)
    return stalk


def naive_stalk_oracle(
    preimage_orders: Sequence[TotalOrder],
    alphabet: Iterable[int],
    cap: int = STALK_ENUMERATION_LIMIT,
) -> PushforwardStalk:
    """Filter every permutation of ``alphabet`` by ``tau|A_v == sigma_v``."""
    alphabet = frozenset(alphabet)
    if len(alphabet) > cap:
        raise CapacityError(f"naive enumeration over {len(alphabet)}! orders exceeds cap {cap}")
    voters = [(sigma.domain, sigma.ranking) for sigma in preimage_orders]
    kept = [
        TotalOrder(perm)
        for perm in itertools.permutations(sorted(alphabet))
        if all(tuple(a for a in perm if a in dom) == ranking for dom, ranking in voters)
    ]
    if not kept:
        return EmptyStalk(alphabet)
    return NonEmptyStalk(alphabet, kept[0], tuple(kept), len(kept))


def naive_compatibility_table(
    preimage_orders: Sequence[TotalOrder], alphabet: Iterable[int]
) -> list[tuple[TotalOrder, tuple[bool, ...]]]:
    """Each permutation of ``alphabet`` with its per-voter accept/reject verdicts."""
    table = []
    for perm in itertools.permutations(sorted(set(alphabet))):
        tau = TotalOrder(perm)
        table.append(
            (tau, tuple(restrict_order(tau, s.domain) == s for s in preimage_orders))
        )
    return table


def _reach_within(dag: ConstraintDag, subset: frozenset[int]) -> set[tuple[int, int]]:
    succ = dag.successors()
    pairs = set()
    for a in subset:
        seen = {a}
        stack = [a]
        while stack:
            for w in succ[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        pairs.update((a, b) for b in seen if b != a and b in subset)
    return pairs


@dataclass(frozen=True)
class QuotientEdgeDiagnostic:
    overlap: frozenset[int]
    compatible: bool
    vacuous: bool
    reason: str
    # size of the definitional edge stalk, all orders on the overlap
    edge_stalk_size: int
    # restrictions shared by both incident stalks, when both were enumerated
    compatible_restrictions: tuple[TotalOrder, ...] | None = None


@dataclass(frozen=True)
class PushforwardReport:
    quotient: QuotientMap
    sheaf: DiscreteOrderSheaf
    stalks: dict[str, PushforwardStalk]
    per_edge: dict[Edge, QuotientEdgeDiagnostic]
    obstructed_edges: tuple[Edge, ...]
    empty_stalk_vertices: frozenset[str]
    h0_exists: bool

    @property
    def index(self) -> int:
        return len(self.obstructed_edges)

    def as_obstruction_report(self) -> ObstructionReport:
        return ObstructionReport(
            self.obstructed_edges, self.h0_exists, {}, self.empty_stalk_vertices
        )


def quotient_sheaf(quotient: QuotientMap, sheaf: DiscreteOrderSheaf) -> DiscreteOrderSheaf:
    """Target graph with each merged vertex seeing the union of its voters' alternatives."""
    if quotient.source != sheaf.graph:
        raise ValidationError("quotient map is defined on a different graph than the sheaf")
    vis = {
        t: frozenset().union(*(sheaf.visibility[v] for v in quotient.preimage(t)))
        for t in quotient.target.vertices
    }
    return DiscreteOrderSheaf(quotient.target, vis, sheaf.alternatives)


def _edge_diagnostic(
    su: PushforwardStalk,
    sv: PushforwardStalk,
    du: ConstraintDag,
    dv: ConstraintDag,
    overlap: frozenset[int],
) -> QuotientEdgeDiagnostic:
    size = math.factorial(len(overlap))
    if su.is_empty or sv.is_empty:
        return QuotientEdgeDiagnostic(overlap, True, True, "empty-stalk", size)
    if len(overlap) < 2:
        return QuotientEdgeDiagnostic(overlap, True, True, "small-overlap", size)
    # Some pair of stalk elements restricts to the same order on the overlap
    # iff the precedences each stalk forces on the overlap are jointly acyclic.
    joint = _reach_within(du, overlap) | _reach_within(dv, overlap)
    compatible = detect_cycle(ConstraintDag(overlap, dict.fromkeys(joint, frozenset()))) is None
    shared = None
    if su.orders is not None and sv.orders is not None:
        ru = {restrict_order(t, overlap) for t in su.orders}
        rv = {restrict_order(t, overlap) for t in sv.orders}
        shared = tuple(sorted(ru & rv, key=lambda o: o.ranking))
    reason = "restrictions-agree" if compatible else "restrictions-conflict"
    return QuotientEdgeDiagnostic(overlap, compatible, False, reason, size, shared)


def pushforward_report(
    quotient: QuotientMap,
    sheaf: DiscreteOrderSheaf,
    profile: PreferenceProfile,
    enumeration_limit: int = STALK_ENUMERATION_LIMIT,
) -> PushforwardReport:
    sheaf.validate_profile(profile)
    target_sheaf = quotient_sheaf(quotient, sheaf)
    stalks: dict[str, PushforwardStalk] = {}
    dags: dict[str, ConstraintDag] = {}
    for t in quotient.target.vertices:
        pre = quotient.preimage(t)
        stalks[t], dags[t] = stalk_from_orders([profile[v] for v in pre], pre, enumeration_limit)

    per_edge = {}
    for u, v in quotient.target.edges:
        overlap = target_sheaf.visibility[u] & target_sheaf.visibility[v]
        per_edge[(u, v)] = _edge_diagnostic(stalks[u], stalks[v], dags[u], dags[v], overlap)
    obstructed = tuple(e for e, d in per_edge.items() if not d.compatible)
    empty = frozenset(t for t, s in stalks.items() if s.is_empty)
    return PushforwardReport(
        quotient, target_sheaf, stalks, per_edge, obstructed, empty,
        h0_exists=not empty and not obstructed,
    )
