"""``qombi`` command line: generate problems, solve, analyze spectra, report and compare.

Exit codes: 0 success, 2 validation error, 3 capacity error, 4 solver failure.
``QOMBI_SEED`` supplies the seed when ``--seed`` is omitted.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .adiabatic import spectrum
from .estimators import SOLVERS
from .exceptions import CapacityError, QombiError, SolverError, ValidationError
from .ising import IsingModel, load_problem, save_problem
from .problems import (
    gen_ris_instance,
    gen_star_maxcut,
    load_instance,
    maxcut_to_ising,
    ris_snr,
    ris_to_ising,
    save_instance,
)
from .qaoa import gate_list_to_jsonl, to_gate_list
from .report import (
    build_report,
    compare,
    comparison_csv,
    load_report,
    write_report_dir,
)

log = logging.getLogger("qombi")

EXIT_OK, EXIT_VALIDATION, EXIT_CAPACITY, EXIT_SOLVER = 0, 2, 3, 4


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QOMBI_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ValidationError(f"QOMBI_SEED must be an integer, got {env!r}") from None


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_gen(args) -> int:
    out = Path(args.out)
    if args.kind == "maxcut":
        graph = gen_star_maxcut(args.leaves)
        meta = {"kind": "star_maxcut", "leaves": args.leaves, "edges": [list(e) for e in graph.edges]}
        save_problem(maxcut_to_ising(graph), out, meta)
    else:
        seed = _seed(args)
        inst = gen_ris_instance(args.n, args.power, args.noise, seed)
        sidecar = Path(args.instance_out) if args.instance_out else out.with_name(out.stem + ".instance.json")
        save_instance(inst, sidecar)
        meta = {"kind": "ris", "seed": seed, "instance": os.path.relpath(sidecar, out.parent)}
        save_problem(ris_to_ising(inst), out, meta)
    log.info("wrote %s", out)
    return EXIT_OK


def _objective_for(args, meta, problem_path):
    path = args.instance
    if path is None and meta.get("kind") == "ris" and meta.get("instance"):
        path = Path(problem_path).parent / meta["instance"]
    if path is None:
        return None
    inst = load_instance(path)
    return lambda s: ris_snr(inst, s)


def cmd_solve(args) -> int:
    model, meta = load_problem(args.inp)
    seed = _seed(args)
    if args.solver == "exhaustive":
        est = SOLVERS["exhaustive"]()
    elif args.solver == "sa":
        est = SOLVERS["sa"](runs=args.runs, sweeps=args.sweeps, t_hot=args.t_hot, t_cold=args.t_cold, seed=seed)
    elif args.solver == "qaoa":
        est = SOLVERS["qaoa"](depth=args.depth, max_evals=args.evals, shots=args.shots, seed=seed, fresh=args.fresh,
                                restarts=args.restarts, rescale=not args.no_rescale)
    else:
        est = SOLVERS["evolve"](t_f=args.tf, steps=args.steps, shots=args.shots, seed=seed)
    est.fit(model)
    params = {k: v for k, v in est.get_params().items() if k != "schedule"}
    if args.solver == "qaoa":
        params["gammas"] = [float(g) for g in est.params_.gammas]
        params["betas"] = [float(b) for b in est.params_.betas]
        params["expectation"] = est.expectation_
        params["depth_values"] = [r.value for r in est.results_]
        params["scale"] = est.scale_
        if args.gates_out:
            circuit = est.circuit_model(model)[0]
            Path(args.gates_out).write_text(gate_list_to_jsonl(to_gate_list(circuit, est.params_), model.n))
    report = build_report(
        model, est.histogram_, _objective_for(args, meta, args.inp),
        solver=args.solver, solver_params=params, metadata=meta,
    )
    _write(args.out, report.to_json())
    return EXIT_OK


def cmd_spectrum(args) -> int:
    model, _ = load_problem(args.inp)
    gap = spectrum(model, grid_points=args.points, m_levels=args.levels)
    rows = [["s"] + [f"E_{k}" for k in range(gap.levels.shape[1])]]
    rows += [[f"{s:.12g}"] + [f"{e:.12g}" for e in lv] for s, lv in zip(gap.s_grid, gap.levels)]
    out = Path(args.out)
    with out.open("w", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerows(rows)
    summary_path = Path(args.summary) if args.summary else out.with_suffix(".json")
    summary = {k: (float(f"{v:.12g}") if isinstance(v, float) else v) for k, v in gap.summary().items()}
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_report(args) -> int:
    data = json.loads(Path(args.inp).read_text())
    if not isinstance(data, dict):
        raise ValidationError(f"{args.inp}: expected a JSON object")
    if "histogram" in data:
        if "problem" not in data:
            raise ValidationError(f"{args.inp}: a raw histogram needs its 'problem'")
        model = IsingModel.from_dict(data["problem"])
        report = build_report(model, data["histogram"], solver=data.get("solver", "unknown"))
    else:
        report = load_report(args.inp)
    write_report_dir(report, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    rows = compare([load_report(p) for p in args.reports])
    _write(args.out, comparison_csv(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qombi", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a benchmark problem")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    mc = gen_sub.add_parser("maxcut", help="star-graph MaxCut")
    mc.add_argument("--leaves", type=int, default=4)
    mc.add_argument("--out", default="problem.json")
    ris = gen_sub.add_parser("ris", help="1-bit RIS beamforming")
    ris.add_argument("--n", type=int, default=10)
    ris.add_argument("--seed", type=int)
    ris.add_argument("--power", type=float, default=1.0)
    ris.add_argument("--noise", type=float, default=1.0)
    ris.add_argument("--out", default="problem.json")
    ris.add_argument("--instance-out", help="channel sidecar path (default <out>.instance.json)")
    for p in (mc, ris):
        p.set_defaults(func=cmd_gen)

    solve = sub.add_parser("solve", help="solve a problem and write a raw report")
    solve.add_argument("--in", dest="inp", required=True)
    solve.add_argument("--solver", choices=sorted(SOLVERS), default="sa")
    solve.add_argument("--runs", type=int, default=1000)
    solve.add_argument("--seed", type=int)
    solve.add_argument("--out", default="-")
    solve.add_argument("--sweeps", type=int, default=1000)
    solve.add_argument("--t-hot", type=float, default=2.0)
    solve.add_argument("--t-cold", type=float, default=0.05)
    solve.add_argument("--depth", type=int, default=1)
    solve.add_argument("--evals", type=int, default=300)
    solve.add_argument("--shots", type=int, default=1024)
    solve.add_argument("--fresh", action="store_true", help="random restart at every QAOA depth")
    solve.add_argument("--restarts", type=int, default=5, help="random starts at QAOA depth 1")
    solve.add_argument("--no-rescale", action="store_true", help="optimize QAOA angles on the unscaled model")
    solve.add_argument("--tf", type=float, default=10.0)
    solve.add_argument("--steps", type=int)
    solve.add_argument("--instance", help="RIS channel sidecar for SNR objective values")
    solve.add_argument("--gates-out", help="write the final QAOA circuit as JSON lines")
    solve.set_defaults(func=cmd_solve)

    spec = sub.add_parser("spectrum", help="eigenenergy diagram and minimum gap")
    spec.add_argument("--in", dest="inp", required=True)
    spec.add_argument("--points", type=int, default=101)
    spec.add_argument("--levels", type=int, default=4)
    spec.add_argument("--out", default="gap.csv")
    spec.add_argument("--summary", help="JSON summary path (default <out>.json)")
    spec.set_defaults(func=cmd_spectrum)

    rep = sub.add_parser("report", help="write solutions.csv and summary.json")
    rep.add_argument("--in", dest="inp", required=True)
    rep.add_argument("--out", required=True)
    rep.set_defaults(func=cmd_report)

    cmp_ = sub.add_parser("compare", help="compare reports on the same problem")
    cmp_.add_argument("reports", nargs="+")
    cmp_.add_argument("--out", default="-")
    cmp_.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CapacityError as exc:
        log.error("%s", exc)
        return EXIT_CAPACITY
    except SolverError as exc:
        log.error("%s", exc)
        return EXIT_SOLVER
    except (QombiError, ValueError, OSError, json.JSONDecodeError) as exc:
        log.error("%s", exc)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
