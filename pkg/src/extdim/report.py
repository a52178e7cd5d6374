"""Bound reports: every invariant computed for one algebra, rendered as text, JSON or CSV.

JSON field order is fixed: ``algebra``, ``field``, ``dimension``,
``loewy_length``, ``global_dimension``, ``pd_simple``, ``ll_projective``,
``subsets``, ``best``, ``endpoints``, ``annotations``, ``seeds``, ``version``
and, only when timing was requested, ``timing``. Without timing a report is a
pure function of the algebra, the settings and the version.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from extdim import __version__
from extdim.algebra import BoundQuiverAlgebra
from extdim.config import RunSettings
from extdim.homological import PdResult, global_dimension, pd_table
from extdim.logging_config import get_logger, log_duration
from extdim.module import loewy_length, regular_module
from extdim.torsion import (
    SubsetEvaluation,
    best_bound,
    endpoint_identities,
    projective_layer_lengths,
)

logger = get_logger(__name__)


@dataclass
class BoundReport:
    """Invariants and torsion bounds of one algebra."""

    algebra: str
    field: str
    dimension: int
    loewy_length: int
    global_dimension: PdResult
    pd_simple: dict[str, PdResult]
    ll_projective: dict[str, int]
    subsets: list[SubsetEvaluation]
    best_members: tuple[str, ...]
    best_bound: int
    endpoints: dict[str, bool]
    seed: int
    annotations: list[str] = field(default_factory=list)
    timing: float | None = None
    version: str = __version__

    @property
    def cutoff_limited(self) -> list[str]:
        """Vertices whose pd stopped at the cutoff."""
        return [v for v, r in self.pd_simple.items() if r.kind.value == "at_least"]

    def to_dict(self) -> dict:
        data = {
            "algebra": self.algebra,
            "field": self.field,
            "dimension": self.dimension,
            "loewy_length": self.loewy_length,
            "global_dimension": self.global_dimension.to_json(),
            "pd_simple": [{"vertex": v, **r.to_json()} for v, r in self.pd_simple.items()],
            "ll_projective": [{"vertex": v, "ll": n} for v, n in self.ll_projective.items()],
            "subsets": [e.to_json() for e in self.subsets],
            "best": {"members": list(self.best_members), "bound": self.best_bound},
            "endpoints": dict(self.endpoints),
            "annotations": list(self.annotations),
            "seeds": {"decompose": self.seed},
            "version": self.version,
        }
        if self.timing is not None:
            data["timing"] = {"seconds": round(self.timing, 3)}
        return data


def build_report(
    algebra: BoundQuiverAlgebra,
    settings: RunSettings | None = None,
    annotations: list[str] | None = None,
    timing: bool = False,
) -> BoundReport:
    """Compute LL, the pd table, gldim and the subset search for ``algebra``."""
    settings = settings or RunSettings()
    cutoff = settings.cutoff_for(algebra.dimension)
    with log_duration(logger, f"report for {algebra.name}") as clock:
        table = pd_table(algebra, cutoff, settings.seed, settings.decompose_trials)
        gldim = global_dimension(algebra, table=table)
        LL = loewy_length(regular_module(algebra))
        best = best_bound(algebra, settings.subsets.value, table, settings.explicit)
        layers = projective_layer_lengths(best.subset)
        endpoints = endpoint_identities(algebra, table)
    report = BoundReport(
        algebra=algebra.name,
        field=str(algebra.field),
        dimension=algebra.dimension,
        loewy_length=LL,
        global_dimension=gldim,
        pd_simple=table,
        ll_projective=layers,
        subsets=list(best.evaluations),
        best_members=tuple(best.subset.ordered),
        best_bound=best.bound,
        endpoints=endpoints,
        seed=settings.seed,
        annotations=list(annotations or []),
        timing=clock["seconds"] if timing else None,
    )
    if report.cutoff_limited:
        logger.warning(
            "Projective dimension of S(%s) not settled within cutoff %d",
            ",".join(report.cutoff_limited),
            cutoff,
        )
    logger.debug("%s: LL = %d, gldim = %s, best bound %d", algebra.name, LL, gldim, best.bound)
    return report


def render_json(report: BoundReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def render_csv(report: BoundReport) -> str:
    """One row per vertex: pd of the simple and layer length of the projective."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["vertex", "pd_simple", "ll_projective"])
    for v, result in report.pd_simple.items():
        writer.writerow([v, str(result), report.ll_projective.get(v, "")])
    return buffer.getvalue()


def render_text(report: BoundReport) -> str:
    lines = [
        f"Algebra {report.algebra} over {report.field}, dimension {report.dimension}",
        f"  Loewy length:      {report.loewy_length}",
        f"  Global dimension:  {report.global_dimension}",
        "  pd of simples:     " + ", ".join(f"S({v})={r}" for v, r in report.pd_simple.items()),
        "  Subsets:",
    ]
    for e in report.subsets:
        members = "{" + ",".join(e.members) + "}"
        lines.append(f"    {members:<24} pd={e.pd:<3} ll={e.layer_length:<3} bound={e.bound}")
    lines.append(f"  Best bound:        {report.best_bound} from {{{','.join(report.best_members)}}}")
    for note in report.annotations:
        lines.append(f"  Note: {note}")
    if report.timing is not None:
        lines.append(f"  Time:              {report.timing:.3f}s")
    return "\n".join(lines) + "\n"
