"""Obstruction locus, incompatibility index and global sections."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Literal

from .errors import CapacityError
from .orders import ENUMERATION_CAP, TotalOrder, all_total_orders, restrict_order
from .sheaf import DiscreteOrderSheaf, Edge, InteractionGraph, PreferenceProfile


@dataclass(frozen=True)
class EdgeDiagnostic:
    overlap: frozenset[int]
    restriction_u: TotalOrder | None
    restriction_v: TotalOrder | None
    compatible: bool
    # overlaps with fewer than two alternatives carry no ordering information
    vacuous: bool = False


@dataclass(frozen=True)
class ObstructionReport:
    obstructed_edges: tuple[Edge, ...]
    h0_exists: bool
    per_edge: dict[Edge, EdgeDiagnostic] = field(default_factory=dict)
    empty_stalk_vertices: frozenset[str] = frozenset()

    @property
    def index(self) -> int:
        """The incompatibility index ``|Ω₁|``."""
        return len(self.obstructed_edges)

    @property
    def compatible_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e, d in self.per_edge.items() if d.compatible)


def diagnose_edge(sheaf: DiscreteOrderSheaf, profile: PreferenceProfile, e: Edge) -> EdgeDiagnostic:
    u, v = e
    overlap = sheaf.visibility[u] & sheaf.visibility[v]
    if len(overlap) < 2:
        ru = restrict_order(profile[u], overlap) if overlap else None
        rv = restrict_order(profile[v], overlap) if overlap else None
        return EdgeDiagnostic(overlap, ru, rv, compatible=True, vacuous=True)
    ru = restrict_order(profile[u], overlap)
    rv = restrict_order(profile[v], overlap)
    return EdgeDiagnostic(overlap, ru, rv, compatible=ru == rv)


def omega1(sheaf: DiscreteOrderSheaf, profile: PreferenceProfile) -> ObstructionReport:
    """Edges whose endpoints disagree on their shared alternatives."""
    sheaf.validate_profile(profile)
    per_edge = {e: diagnose_edge(sheaf, profile, e) for e in sheaf.graph.edges}
    obstructed = tuple(e for e, d in per_edge.items() if not d.compatible)
    # vertex stalks of the original sheaf are never empty (visibility is nonempty)
    return ObstructionReport(obstructed, h0_exists=not obstructed, per_edge=per_edge)


def global_section_exists(sheaf: DiscreteOrderSheaf, profile: PreferenceProfile) -> bool:
    report = omega1(sheaf, profile)
    return report.index == 0 and not report.empty_stalk_vertices


def _agree_on(p: TotalOrder, q: TotalOrder, shared: frozenset[int]) -> bool:
    # pairwise check, deliberately independent of restrict_order
    return all(
        (p.position(a) < p.position(b)) == (q.position(a) < q.position(b))
        for a, b in itertools.combinations(sorted(shared), 2)
    )


def find_global_sections_oracle(
    sheaf: DiscreteOrderSheaf,
    profile: PreferenceProfile,
    mode: Literal["existence", "search"] = "existence",
    max_assignments: int = 2_000_000,
) -> list[dict[str, TotalOrder]]:
    """Brute-force global sections over the product of all vertex stalks.

    ``existence`` keeps only assignments equal to ``profile``; ``search``
    returns every assignment compatible on all edges.
    """
    vertices = sheaf.graph.vertices
    stalks = [all_total_orders(sheaf.visibility[v], ENUMERATION_CAP) for v in vertices]
    total = math.prod(len(s) for s in stalks)
    if total > max_assignments:
        raise CapacityError(f"{total} assignments exceeds the oracle cap of {max_assignments}")
    index = {v: i for i, v in enumerate(vertices)}
    checks = [
        (index[u], index[v], sheaf.visibility[u] & sheaf.visibility[v]) for u, v in sheaf.graph.edges
    ]
    target = tuple(profile[v] for v in vertices) if mode == "existence" else None
    found = []
    for combo in itertools.product(*stalks):
        if target is not None and combo != target:
            continue
        if all(_agree_on(combo[i], combo[j], shared) for i, j, shared in checks):
            found.append(dict(zip(vertices, combo)))
    return found


def cycle_rank(graph: InteractionGraph) -> int:
    """``|E| - |V| + #components``: the linearized inconsistency dimension."""
    return len(graph.edges) - len(graph.vertices) + graph.n_components()
