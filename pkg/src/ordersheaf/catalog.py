"""Named example configurations and graph topologies."""
from __future__ import annotations

import itertools

from .errors import UnknownNameError, ValidationError
from .sheaf import DiscreteOrderSheaf, InteractionGraph, PreferenceProfile

EXAMPLES = (
    "condorcet_triangle",
    "transitive_triangle",
    "partial_visibility",
    "complete_k4",
    "deterministic_family",
)
TOPOLOGIES = ("C3", "C4", "C5", "K3", "K4", "P4", "S4")

ABC = ("A", "B", "C")


def _names(n: int) -> tuple[str, ...]:
    return tuple(f"V{i}" for i in range(1, n + 1))


def _cycle(n: int) -> InteractionGraph:
    vs = _names(n)
    return InteractionGraph(vs, tuple((vs[i], vs[(i + 1) % n]) for i in range(n)))


def _complete(n: int) -> InteractionGraph:
    vs = _names(n)
    return InteractionGraph(vs, tuple(itertools.combinations(vs, 2)))


def catalog_topology(name: str) -> InteractionGraph:
    """Graphs used by the random-profile experiments."""
    if name in ("C3", "C4", "C5"):
        return _cycle(int(name[1]))
    if name in ("K3", "K4"):
        return _complete(int(name[1]))
    if name == "P4":
        vs = _names(4)
        return InteractionGraph(vs, tuple(zip(vs, vs[1:])))
    if name == "S4":
        vs = _names(4)
        return InteractionGraph(vs, tuple((vs[0], leaf) for leaf in vs[1:]))
    raise UnknownNameError(f"unknown topology {name!r}; expected one of {', '.join(TOPOLOGIES)}")


def full_visibility_sheaf(graph: InteractionGraph, labels: tuple[str, ...] = ABC) -> DiscreteOrderSheaf:
    everything = frozenset(range(len(labels)))
    return DiscreteOrderSheaf(graph, {v: everything for v in graph.vertices}, labels)


def _profile(sheaf: DiscreteOrderSheaf, orders: dict[str, str]) -> PreferenceProfile:
    return PreferenceProfile({v: sheaf.order(*o.split(">")) for v, o in orders.items()})


def deterministic_family_orders(t: float) -> dict[str, str]:
    """Scripted profile: V2 joins A>B>C at t >= 1/3, V3 at t >= 2/3."""
    if not 0.0 <= t <= 1.0:
        raise ValidationError(f"t must lie in [0, 1], got {t}")
    return {
        "V1": "A>B>C",
        "V2": "A>B>C" if 3 * t >= 1 else "B>C>A",
        "V3": "A>B>C" if 3 * t >= 2 else "C>A>B",
    }


def catalog_example(name: str, t: float = 0.0) -> tuple[DiscreteOrderSheaf, PreferenceProfile]:
    if name == "condorcet_triangle":
        sheaf = full_visibility_sheaf(_complete(3))
        return sheaf, _profile(sheaf, {"V1": "A>B>C", "V2": "B>C>A", "V3": "C>A>B"})
    if name == "transitive_triangle":
        sheaf = full_visibility_sheaf(_complete(3))
        return sheaf, _profile(sheaf, {"V1": "A>B>C", "V2": "A>B>C", "V3": "A>B>C"})
    if name == "partial_visibility":
        labels = ("A", "B", "C", "D")
        graph = _cycle(3)
        vis = {"V1": "ABC", "V2": "BCD", "V3": "ACD"}
        sheaf = DiscreteOrderSheaf(
            graph, {v: frozenset(labels.index(x) for x in s) for v, s in vis.items()}, labels
        )
        return sheaf, _profile(sheaf, {"V1": "A>B>C", "V2": "B>C>D", "V3": "C>D>A"})
    if name == "complete_k4":
        sheaf = full_visibility_sheaf(_complete(4))
        return sheaf, _profile(
            sheaf, {"V1": "A>B>C", "V2": "B>C>A", "V3": "C>A>B", "V4": "A>B>C"}
        )
    if name == "deterministic_family":
        sheaf = full_visibility_sheaf(_complete(3))
        return sheaf, _profile(sheaf, deterministic_family_orders(t))
    raise UnknownNameError(f"unknown example {name!r}; expected one of {', '.join(EXAMPLES)}")
