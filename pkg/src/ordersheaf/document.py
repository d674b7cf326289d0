"""JSON profile documents.

A document looks like::

    {
      "alternatives": ["A", "B", "C"],
      "voters": [
        {"name": "V1", "visibility": ["A", "B", "C"], "order": ["A", "B", "C"]},
        ...
      ],
      "edges": [["V1", "V2"], ...],
      "quotient": {"V1": "V12", "V2": "V12", "V3": "V3"}
    }

``quotient`` is optional. Orders are listed best first.
"""
from __future__ import annotations

import json
from typing import Any

from .errors import ValidationError
from .orders import TotalOrder
from .pushforward import QuotientMap
from .sheaf import DiscreteOrderSheaf, InteractionGraph, PreferenceProfile


class DocumentError(ValidationError):
    """A profile document failed to parse or validate.

    ``code`` is one of: syntax, schema, duplicate-label, duplicate-voter,
    unknown-label, order-not-permutation, visibility-not-subset,
    dangling-edge, bad-edge, bad-quotient.
    """

    def __init__(self, code: str, message: str, path: str = "", line: int | None = None):
        self.code = code
        self.path = path
        self.line = line
        where = f" at line {line}" if line is not None else ""
        where += f" ({path})" if path else ""
        super().__init__(f"{code}{where}: {message}")
        self.message = message

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.code, "path": self.path, "line": self.line, "message": self.message}


def _expect(cond: bool, message: str, path: str, code: str = "schema") -> None:
    if not cond:
        raise DocumentError(code, message, path)


def _string_list(value: Any, path: str) -> list[str]:
    _expect(isinstance(value, list), "expected a list of strings", path)
    for i, item in enumerate(value):
        _expect(isinstance(item, str), "expected a string", f"{path}[{i}]")
    return value


def parse_profile(
    text: str,
) -> tuple[DiscreteOrderSheaf, PreferenceProfile, QuotientMap | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("syntax", exc.msg, line=exc.lineno) from None
    _expect(isinstance(doc, dict), "document must be a JSON object", "$")
    known = {"alternatives", "voters", "edges", "quotient"}
    for key in doc:
        _expect(key in known, f"unexpected field {key!r}", f"$.{key}")

    labels = _string_list(doc.get("alternatives"), "alternatives")
    _expect(bool(labels), "at least one alternative is required", "alternatives")
    ids: dict[str, int] = {}
    for i, label in enumerate(labels):
        _expect(label not in ids, f"duplicate alternative {label!r}", f"alternatives[{i}]", "duplicate-label")
        ids[label] = i

    voters = doc.get("voters")
    _expect(isinstance(voters, list) and bool(voters), "expected a nonempty list of voters", "voters")
    names: list[str] = []
    visibility: dict[str, frozenset[int]] = {}
    orders: dict[str, TotalOrder] = {}
    for i, entry in enumerate(voters):
        path = f"voters[{i}]"
        _expect(isinstance(entry, dict), "expected an object", path)
        for key in entry:
            _expect(key in ("name", "visibility", "order"), f"unexpected field {key!r}", f"{path}.{key}")
        name = entry.get("name")
        _expect(isinstance(name, str) and bool(name), "voter name must be a nonempty string", f"{path}.name")
        _expect(name not in visibility, f"duplicate voter {name!r}", f"{path}.name", "duplicate-voter")

        vis = _string_list(entry.get("visibility"), f"{path}.visibility")
        _expect(bool(vis), "visibility must be nonempty", f"{path}.visibility")
        for j, label in enumerate(vis):
            _expect(label in ids, f"unknown alternative {label!r}", f"{path}.visibility[{j}]", "unknown-label")
        _expect(len(set(vis)) == len(vis), "visibility lists an alternative twice", f"{path}.visibility")

        order = _string_list(entry.get("order"), f"{path}.order")
        for j, label in enumerate(order):
            _expect(label in ids, f"unknown alternative {label!r}", f"{path}.order[{j}]", "unknown-label")
        _expect(
            len(set(order)) == len(order) and set(order) == set(vis),
            "order must rank every visible alternative exactly once",
            f"{path}.order",
            "order-not-permutation",
        )
        names.append(name)
        visibility[name] = frozenset(ids[x] for x in vis)
        orders[name] = TotalOrder(tuple(ids[x] for x in order))

    raw_edges = doc.get("edges", [])
    _expect(isinstance(raw_edges, list), "expected a list of voter pairs", "edges")
    edges = []
    seen = set()
    for i, pair in enumerate(raw_edges):
        path = f"edges[{i}]"
        _expect(
            isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair),
            "an edge is a pair of voter names",
            path,
        )
        for x in pair:
            _expect(x in visibility, f"edge references undeclared voter {x!r}", path, "dangling-edge")
        _expect(pair[0] != pair[1], "self-loops are not allowed", path, "bad-edge")
        key = frozenset(pair)
        _expect(key not in seen, "duplicate edge", path, "bad-edge")
        seen.add(key)
        edges.append((pair[0], pair[1]))

    graph = InteractionGraph(tuple(names), tuple(edges))
    sheaf = DiscreteOrderSheaf(graph, visibility, tuple(labels))
    profile = PreferenceProfile(orders)

    quotient = None
    if doc.get("quotient") is not None:
        qmap = doc["quotient"]
        _expect(isinstance(qmap, dict), "quotient maps voter names to merged names", "quotient", "bad-quotient")
        for k, v in qmap.items():
            _expect(k in visibility, f"quotient names undeclared voter {k!r}", f"quotient.{k}", "bad-quotient")
            _expect(isinstance(v, str) and bool(v), "merged name must be a nonempty string", f"quotient.{k}", "bad-quotient")
        missing = [n for n in names if n not in qmap]
        _expect(not missing, f"quotient is missing voters {missing}", "quotient", "bad-quotient")
        quotient = QuotientMap(graph, qmap)
    return sheaf, profile, quotient


def profile_to_dict(
    sheaf: DiscreteOrderSheaf, profile: PreferenceProfile, quotient: QuotientMap | None = None
) -> dict[str, Any]:
    labels = sheaf.alternatives
    doc: dict[str, Any] = {
        "alternatives": list(labels),
        "voters": [
            {
                "name": v,
                "visibility": [labels[a] for a in sorted(sheaf.visibility[v])],
                "order": [labels[a] for a in profile[v].ranking],
            }
            for v in sheaf.graph.vertices
        ],
        "edges": [list(e) for e in sheaf.graph.edges],
    }
    if quotient is not None:
        doc["quotient"] = dict(quotient.vertex_map)
    return doc


def emit_profile(
    sheaf: DiscreteOrderSheaf, profile: PreferenceProfile, quotient: QuotientMap | None = None
) -> str:
    return json.dumps(profile_to_dict(sheaf, profile, quotient), indent=2) + "\n"
