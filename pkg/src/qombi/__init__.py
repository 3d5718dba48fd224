"""Simulated quantum annealing and QAOA on Ising/QUBO problems, with classical baselines."""

__version__ = "0.1.0"

from .adiabatic import (
    EvolutionSpec,
    GapReport,
    Schedule,
    build_hamiltonian,
    evolve,
    linear_ramp_params,
    spectrum,
    success_probability,
)
from .classical import SaParams, SolutionRecord, exhaustive, multi_run, sa_solver, simulated_annealing
from .estimators import AnnealingEvolutionSolver, ExhaustiveSolver, QAOASolver, SimulatedAnnealingSolver
from .exceptions import (
    CapacityError,
    DegenerateInputError,
    DimensionError,
    IncompatibleReportError,
    QombiError,
    SolverError,
    ValidationError,
)
from .ising import IsingModel, QuboModel, evaluate_cost, ising_to_qubo, qubo_to_ising, rescale
from .optimize import OptResult, layerwise_optimize, local_search
from .problems import (
    Graph,
    RisInstance,
    gen_ris_instance,
    gen_star_maxcut,
    maxcut_to_ising,
    ris_snr,
    ris_to_ising,
)
from .qaoa import (
    QaoaParams,
    apply_cost_layer,
    apply_mixer_layer,
    expectation,
    init_uniform,
    run_qaoa,
    sample,
    to_gate_list,
)
from .report import Report, build_report, compare

__all__ = [
    "__version__",
    "EvolutionSpec",
    "GapReport",
    "Schedule",
    "build_hamiltonian",
    "evolve",
    "linear_ramp_params",
    "spectrum",
    "success_probability",
    "SaParams",
    "SolutionRecord",
    "exhaustive",
    "multi_run",
    "sa_solver",
    "simulated_annealing",
    "AnnealingEvolutionSolver",
    "ExhaustiveSolver",
    "QAOASolver",
    "SimulatedAnnealingSolver",
    "CapacityError",
    "DegenerateInputError",
    "DimensionError",
    "IncompatibleReportError",
    "QombiError",
    "SolverError",
    "ValidationError",
    "IsingModel",
    "QuboModel",
    "evaluate_cost",
    "ising_to_qubo",
    "qubo_to_ising",
    "rescale",
    "OptResult",
    "layerwise_optimize",
    "local_search",
    "Graph",
    "RisInstance",
    "gen_ris_instance",
    "gen_star_maxcut",
    "maxcut_to_ising",
    "ris_snr",
    "ris_to_ising",
    "QaoaParams",
    "apply_cost_layer",
    "apply_mixer_layer",
    "expectation",
    "init_uniform",
    "run_qaoa",
    "sample",
    "to_gate_list",
    "Report",
    "build_report",
    "compare",
]
