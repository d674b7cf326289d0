"""JSON and CSV renderings of reports and experiment results."""
from __future__ import annotations

import csv
import io
import math

from typing import Any, Iterable, Sequence

from .bench import BenchResult, CommitteeReport
from .mallows import TrialStats
from .obstruction import ObstructionReport
from .orders import TotalOrder
from .pushforward import PushforwardReport
from .sheaf import DiscreteOrderSheaf


def fmt(x: Any) -> str:
    """CSV cell: floats to 6 significant digits, None as empty."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return f"{x:.6g}"
    return str(x)


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row has {len(row)} fields, header has {len(header)}")
        writer.writerow([fmt(x) for x in row])
    return buf.getvalue()


def _labels(sheaf: DiscreteOrderSheaf, alts: Iterable[int]) -> list[str]:
    return [sheaf.alternatives[a] for a in sorted(alts)]


def _order(sheaf: DiscreteOrderSheaf, order: TotalOrder | None) -> list[str] | None:
    return None if order is None else [sheaf.alternatives[a] for a in order.ranking]


def obstruction_to_dict(sheaf: DiscreteOrderSheaf, report: ObstructionReport) -> dict[str, Any]:
    return {
        "h0_exists": report.h0_exists,
        "incompatibility_index": report.index,
        "obstructed_edges": [list(e) for e in report.obstructed_edges],
        "empty_stalk_vertices": sorted(report.empty_stalk_vertices),
        "edges": [
            {
                "edge": list(e),
                "overlap": _labels(sheaf, d.overlap),
                "restriction_u": _order(sheaf, d.restriction_u),
                "restriction_v": _order(sheaf, d.restriction_v),
                "compatible": d.compatible,
                "vacuous": d.vacuous,
            }
            for e, d in report.per_edge.items()
        ],
    }


EDGE_CSV_HEADER = ("u", "v", "overlap", "restriction_u", "restriction_v", "compatible", "vacuous")


def obstruction_to_csv(sheaf: DiscreteOrderSheaf, report: ObstructionReport) -> str:
    def order(o: TotalOrder | None) -> str:
        return "" if o is None else sheaf.format_order(o)

    rows = [
        (u, v, " ".join(_labels(sheaf, d.overlap)), order(d.restriction_u), order(d.restriction_v),
         d.compatible, d.vacuous)
        for (u, v), d in report.per_edge.items()
    ]
    return write_csv(EDGE_CSV_HEADER, rows)


def pushforward_to_dict(report: PushforwardReport) -> dict[str, Any]:
    sheaf = report.sheaf
    stalks = {}
    for t, s in report.stalks.items():
        entry: dict[str, Any] = {
            "preimage": list(report.quotient.preimage(t)),
            "alphabet": _labels(sheaf, s.alphabet),
        }
        if s.is_empty:
            entry["status"] = "empty"
            entry["cycle_witness"] = None if s.cycle_witness is None else [
                sheaf.alternatives[a] for a in s.cycle_witness
            ]
        else:
            entry["status"] = "nonempty"
            entry["witness"] = _order(sheaf, s.witness)
            entry["extension_count"] = s.extension_count
            entry["orders"] = None if s.orders is None else [_order(sheaf, o) for o in s.orders]
        stalks[t] = entry
    return {
        "h0_exists": report.h0_exists,
        "incompatibility_index": report.index,
        "obstructed_edges": [list(e) for e in report.obstructed_edges],
        "empty_stalk_vertices": sorted(report.empty_stalk_vertices),
        "quotient_vertices": list(report.quotient.target.vertices),
        "stalks": stalks,
        "edges": [
            {
                "edge": list(e),
                "overlap": _labels(sheaf, d.overlap),
                "compatible": d.compatible,
                "vacuous": d.vacuous,
                "reason": d.reason,
                "edge_stalk_size": d.edge_stalk_size,
                "compatible_restrictions": None if d.compatible_restrictions is None else [
                    _order(sheaf, o) for o in d.compatible_restrictions
                ],
            }
            for e, d in report.per_edge.items()
        ],
    }


MAX_HISTOGRAM = 6  # K4 has the most edges among the catalog topologies


def interpolation_csv(results: Sequence[tuple[float, TrialStats]]) -> str:
    header = ("t", "mean_omega1", "std_omega1", "consistency_rate", "h0", "h1", "h2", "h3")
    rows = [
        (t, s.mean_index, s.std_index, s.consistency_rate, *(s.histogram.get(k, 0) for k in range(4)))
        for t, s in results
    ]
    return write_csv(header, rows)


def family_csv(results: Sequence[tuple[float, int]]) -> str:
    return write_csv(("t", "omega1"), results)


def uniform_csv(results: Sequence[tuple[str, int, TrialStats]]) -> str:
    header = (
        "topology", "edges", "n_trials", "seed", "mean_omega1", "std_omega1", "consistency_rate",
        *(f"h{k}" for k in range(MAX_HISTOGRAM + 1)),
    )
    rows = [
        (name, n_edges, s.n_trials, s.seed, s.mean_index, s.std_index, s.consistency_rate,
         *(s.histogram.get(k, 0) for k in range(MAX_HISTOGRAM + 1)))
        for name, n_edges, s in results
    ]
    return write_csv(header, rows)


BENCH_HEADER = (
    "parameter", "dag_ms_median", "naive_ms", "extrapolated_flag", "speedup", "conflict_rate",
    "dag_ms_mean", "trials", "dag_peak_bytes",
)


def bench_csv(results: Sequence[BenchResult]) -> str:
    rows = [
        (r.parameter, r.dag_ms_median, r.naive_ms, r.naive_extrapolated, r.speedup, r.conflict_rate,
         r.dag_ms_mean, r.trials, r.dag_peak_bytes)
        for r in results
    ]
    return write_csv(BENCH_HEADER, rows)


COMMITTEE_HEADER = (
    "seed", "n_voters", "n_alternatives", "edge_prob", "n_edges", "n_obstructed",
    "incompatibility_rate", "omega1_ms", "merged", "stalk_status", "cycle_witness",
    "cycle_verified", "merge_ms",
)


def committee_csv(reports: Sequence[CommitteeReport]) -> str:
    rows = [
        (r.seed, r.n_voters, r.n_alternatives, r.edge_prob, r.n_edges, r.n_obstructed,
         r.incompatibility_rate, r.omega1_ms, " ".join(r.merged),
         "empty" if r.stalk_empty else "nonempty",
         "" if r.cycle_witness is None else "->".join(map(str, r.cycle_witness)),
         r.cycle_verified, r.merge_ms)
        for r in reports
    ]
    return write_csv(COMMITTEE_HEADER, rows)


