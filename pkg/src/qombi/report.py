"""Ordered-solution reports, solver comparison and byte-stable file output."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .classical import SolutionRecord, exhaustive, records_from_histogram
from .exceptions import IncompatibleReportError, ValidationError
from .ising import IsingModel, problem_digest
from .validation import bitstring_to_index, bitstring_to_spins, index_to_bitstring

BENCHMARK_MAX_N = 20
CSV_COLUMNS = ("rank", "bitstring", "energy", "objective", "probability")


def fmt(x: float | None) -> float | None:
    """Round to 12 significant digits for stable serialization."""
    return None if x is None else float(f"{float(x):.12g}")


@dataclass(frozen=True, eq=False)
class Report:
    digest: str
    solver: str
    solver_params: dict
    records: list[SolutionRecord]
    summary: dict
    benchmark: dict | None = None
    problem: dict | None = field(default=None, repr=False)

    @property
    def total(self) -> int:
        return sum(r.count for r in self.records)

    def probabilities(self) -> list[float]:
        total = self.total
        return [r.count / total for r in self.records]

    def to_dict(self) -> dict:
        probs = self.probabilities()
        return {
            "digest": self.digest,
            "solver": self.solver,
            "solver_params": self.solver_params,
            "records": [
                {
                    "bitstring": r.bitstring,
                    "energy": fmt(r.energy),
                    "objective": fmt(r.objective),
                    "count": r.count,
                    "probability": fmt(p),
                }
                for r, p in zip(self.records, probs)
            ],
            "summary": self.summary,
            "benchmark": self.benchmark,
            "problem": self.problem,
            "bit_order": "character i of a bitstring is qubit i; '0' is spin +1",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _objective_fn(objective_map) -> Callable | None:
    if objective_map is None:
        return None
    if callable(objective_map):
        return objective_map
    if isinstance(objective_map, Mapping):
        return lambda s: objective_map.get(_spins_key(s))
    raise ValidationError("objective_map must be a callable or a bitstring mapping")


def _maybe_float(x) -> float | None:
    return None if x is None else float(x)


def _spins_key(s) -> str:
    return "".join("1" if v == -1 else "0" for v in s)


def build_report(
    model: IsingModel,
    histogram: Mapping[str, int],
    objective_map=None,
    *,
    solver: str = "unknown",
    solver_params: dict | None = None,
    metadata: dict | None = None,
) -> Report:
    """Turn a bitstring histogram into an ordered-solution report.

    ``objective_map`` maps a spin config (callable) or a bitstring (mapping)
    to a problem objective such as SNR. For ``n <= 20`` the exhaustive optimum
    is attached as the benchmark row and used for ``ground_probability``.
    """
    if not histogram:
        raise ValidationError("histogram is empty")
    for bits, count in histogram.items():
        bitstring_to_index(bits, model.n)
        if int(count) != count or count < 1:
            raise ValidationError(f"count for {bits!r} must be a positive integer")
    objective = _objective_fn(objective_map)
    records = records_from_histogram(model, dict(histogram))
    if objective is not None:
        records = [SolutionRecord(r.config, r.energy, _maybe_float(objective(r.config)), r.count) for r in records]
    total = sum(r.count for r in records)

    benchmark = None
    ground_probability = None
    if model.n <= BENCHMARK_MAX_N:
        opt = exhaustive(model, limit=1)[0]
        best_e = opt.energy
        tol = 1e-9 * max(1.0, abs(best_e))
        benchmark = {
            "energy": fmt(best_e),
            "bitstring": opt.bitstring,
            "objective": fmt(_maybe_float(objective(opt.config))) if objective else None,
        }
        ground_probability = fmt(sum(r.count for r in records if r.energy <= best_e + tol) / total)

    best = records[0]
    objectives = [r.objective for r in records if r.objective is not None]
    summary = {
        "best_energy": fmt(best.energy),
        "best_bitstring": best.bitstring,
        "best_objective": fmt(max(objectives)) if objectives else None,
        "distinct_solutions": len(records),
        "ground_probability": ground_probability,
        "total_counts": total,
    }
    problem = model.to_dict(metadata)
    return Report(problem_digest(model), solver, dict(solver_params or {}), records, summary, benchmark, problem)


def report_from_dict(data: Mapping) -> Report:
    try:
        n = len(data["records"][0]["bitstring"])
        records = [
            SolutionRecord(
                bitstring_to_spins(r["bitstring"], n), float(r["energy"]),
                None if r.get("objective") is None else float(r["objective"]), int(r["count"]),
            )
            for r in data["records"]
        ]
        return Report(
            data["digest"], data["solver"], dict(data.get("solver_params") or {}), records,
            dict(data["summary"]), data.get("benchmark"), data.get("problem"),
        )
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed report: {exc}") from None


def load_report(path) -> Report:
    try:
        return report_from_dict(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None


def solutions_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rank, (r, p) in enumerate(zip(report.records, report.probabilities()), start=1):
        obj = "" if r.objective is None else f"{r.objective:.12g}"
        writer.writerow([rank, r.bitstring, f"{r.energy:.12g}", obj, f"{p:.12g}"])
    return buf.getvalue()


def write_report_dir(report: Report, out_dir) -> tuple[Path, Path]:
    """Write ``solutions.csv`` and ``summary.json`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path, summary_path = out / "solutions.csv", out / "summary.json"
    csv_path.write_text(solutions_csv(report))
    payload = {
        "digest": report.digest,
        "solver": report.solver,
        "solver_params": report.solver_params,
        "summary": report.summary,
        "benchmark": report.benchmark,
    }
    summary_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return csv_path, summary_path


def compare(reports: Sequence[Report]) -> list[dict]:
    """One row per report: solver, best energy, gap to optimum, ground probability, distinct count.

    The optimum is the exhaustive benchmark when any report carries one,
    otherwise the lowest best energy among the reports.
    """
    if not reports:
        raise ValidationError("nothing to compare")
    digests = {r.digest for r in reports}
    if len(digests) != 1:
        raise IncompatibleReportError("reports were built for different problems")
    bench = [r.benchmark["energy"] for r in reports if r.benchmark]
    optimum = bench[0] if bench else min(r.summary["best_energy"] for r in reports)
    rows = []
    for r in reports:
        best = r.summary["best_energy"]
        rows.append({
            "solver": r.solver,
            "best_energy": best,
            "gap_to_optimum": fmt(best - optimum),
            "ground_probability": r.summary.get("ground_probability"),
            "distinct_solutions": r.summary["distinct_solutions"],
        })
    return rows


def comparison_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    cols = ("solver", "best_energy", "gap_to_optimum", "ground_probability", "distinct_solutions")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow(["" if row[c] is None else (f"{row[c]:.12g}" if isinstance(row[c], float) else row[c]) for c in cols])
    return buf.getvalue()


def uniform_histogram(n: int) -> dict[str, int]:
    """Each configuration once; the pseudo-histogram of an exhaustive scan."""
    return {index_to_bitstring(z, n): 1 for z in range(1 << n)}
