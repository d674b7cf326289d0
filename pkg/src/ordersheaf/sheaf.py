"""Interaction graphs, discrete order sheaves and preference profiles.

Vertices are voter names (strings). An edge is stored as a canonical pair
ordered by the vertices' declaration order, so ``("V3", "V1")`` and
``("V1", "V3")`` name the same edge.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import UnknownNameError, ValidationError
from .orders import ENUMERATION_CAP, TotalOrder, all_total_orders, restrict_order

Edge = tuple[str, str]


@dataclass(frozen=True)
class InteractionGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        vertices = tuple(str(v) for v in self.vertices)
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise ValidationError(f"duplicate vertices in {vertices}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "_index", index)

        seen: set[Edge] = set()
        edges = []
        for raw in self.edges:
            u, v = (str(x) for x in raw)
            if u not in index or v not in index:
                raise ValidationError(f"edge {(u, v)} references an unknown vertex")
            if u == v:
                raise ValidationError(f"self-loop at {u}")
            e = self._canonical(u, v, index)
            if e in seen:
                raise ValidationError(f"duplicate edge {e}")
            seen.add(e)
            edges.append(e)
        edges.sort(key=lambda e: (index[e[0]], index[e[1]]))
        object.__setattr__(self, "edges", tuple(edges))

    @staticmethod
    def _canonical(u: str, v: str, index: Mapping[str, int]) -> Edge:
        return (u, v) if index[u] < index[v] else (v, u)

    def edge(self, u: str, v: str) -> Edge:
        """Canonical form of the edge between ``u`` and ``v``; raises if absent."""
        if u not in self._index or v not in self._index:
            raise UnknownNameError(f"no edge {{{u}, {v}}}: unknown vertex")
        e = self._canonical(u, v, self._index)
        if e not in self.edge_set:
            raise UnknownNameError(f"no edge {{{u}, {v}}} in graph")
        return e

    @property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_vertex(self, v: str) -> bool:
        return v in self._index

    def vertex_index(self, v: str) -> int:
        return self._index[v]

    def neighbors(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def n_components(self) -> int:
        adj = self.neighbors()
        seen: set[str] = set()
        count = 0
        for start in self.vertices:
            if start in seen:
                continue
            count += 1
            seen.add(start)
            queue = deque([start])
            while queue:
                for w in adj[queue.popleft()]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
        return count


@dataclass(frozen=True)
class DiscreteOrderSheaf:
    """Graph plus per-voter visibility sets over labelled alternatives.

    Alternative ids are the indices into ``alternatives``.
    """

    graph: InteractionGraph
    visibility: Mapping[str, frozenset[int]]
    alternatives: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.alternatives)
        if len(set(labels)) != len(labels):
            raise ValidationError(f"duplicate alternative labels in {labels}")
        object.__setattr__(self, "alternatives", labels)
        universe = range(len(labels))
        vis = {}
        for v in self.graph.vertices:
            if v not in self.visibility:
                raise ValidationError(f"vertex {v} has no visibility set")
            s = frozenset(int(a) for a in self.visibility[v])
            if not s:
                raise ValidationError(f"vertex {v} has an empty visibility set")
            if not s <= frozenset(universe):
                raise ValidationError(f"visibility of {v} leaves the alternative set")
            vis[v] = s
        extra = set(self.visibility) - set(self.graph.vertices)
        if extra:
            raise ValidationError(f"visibility given for unknown vertices {sorted(extra)}")
        object.__setattr__(self, "visibility", vis)

    @property
    def global_alternatives(self) -> frozenset[int]:
        return frozenset(range(len(self.alternatives)))

    def label(self, a: int) -> str:
        return self.alternatives[a]

    def alternative_id(self, label: str) -> int:
        try:
            return self.alternatives.index(label)
        except ValueError:
            raise UnknownNameError(f"unknown alternative {label!r}") from None

    def order(self, *labels: str) -> TotalOrder:
        """Build a :class:`TotalOrder` from alternative labels."""
        return TotalOrder(tuple(self.alternative_id(x) for x in labels))

    def format_order(self, order: TotalOrder) -> str:
        return order.format(self.alternatives)

    def validate_profile(self, profile: "PreferenceProfile") -> None:
        missing = set(self.graph.vertices) - set(profile.assignment)
        if missing:
            raise ValidationError(f"profile has no order for {sorted(missing)}")
        extra = set(profile.assignment) - set(self.graph.vertices)
        if extra:
            raise ValidationError(f"profile assigns orders to unknown vertices {sorted(extra)}")
        for v in self.graph.vertices:
            if profile.assignment[v].domain != self.visibility[v]:
                raise ValidationError(f"order at {v} does not rank exactly its visible alternatives")


@dataclass(frozen=True)
class PreferenceProfile:
    """One order per voter (a 0-cochain)."""

    assignment: Mapping[str, TotalOrder]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", dict(self.assignment))

    def __getitem__(self, v: str) -> TotalOrder:
        return self.assignment[v]


def edge_overlap(sheaf: DiscreteOrderSheaf, e: Iterable[str]) -> frozenset[int]:
    """Alternatives visible at both endpoints of ``e``."""
    u, v = sheaf.graph.edge(*e)
    return sheaf.visibility[u] & sheaf.visibility[v]


@dataclass(frozen=True)
class AxiomVerdict:
    locality_ok: bool
    gluing_ok: bool

    def __bool__(self) -> bool:
        return self.locality_ok and self.gluing_ok


def check_sheaf_axioms(
    sheaf: DiscreteOrderSheaf, e: Iterable[str], cap: int = ENUMERATION_CAP
) -> AxiomVerdict:
    """Exhaustively check locality and gluing on one edge.

    Locality: restricting any vertex order yields one well-defined element of
    the edge stalk. Gluing: every pair of vertex orders with equal
    restrictions determines an element of the edge stalk. Pairs are grouped
    by restriction so the cost is linear in the vertex stalk sizes.
    """
    u, v = sheaf.graph.edge(*e)
    overlap = sheaf.visibility[u] & sheaf.visibility[v]
    edge_stalk = set(all_total_orders(overlap, cap)) if overlap else set()

    locality_ok = True
    images: dict[str, dict[TotalOrder, int]] = {}
    for w in (u, v):
        counts: dict[TotalOrder, int] = defaultdict(int)
        for sigma in all_total_orders(sheaf.visibility[w], cap):
            if not overlap:
                continue
            first = restrict_order(sigma, overlap)
            if first != restrict_order(sigma, overlap) or first not in edge_stalk:
                locality_ok = False
            counts[first] += 1
        images[w] = counts

    gluing_ok = True
    for common in images[u].keys() & images[v].keys():
        if common.domain != overlap or common not in edge_stalk:
            gluing_ok = False
    return AxiomVerdict(locality_ok, gluing_ok)
