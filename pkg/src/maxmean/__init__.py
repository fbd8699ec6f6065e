"""Max-mean dispersion problem: memetic algorithm, tabu search, exact
oracle, instance tooling, and a benchmark harness."""

from .instance import (
    GeneratorConfig,
    Instance,
    InstanceKind,
    InvalidConfigError,
    ParseError,
    generate,
    read_instance,
    write_instance,
)
from .evaluation import (
    ForbiddenMoveError,
    InfeasibleSolutionError,
    Solution,
    apply_flip,
    delta_flip,
    evaluate_full,
)
from .tabu import TabuParams, TabuState, TenureSchedule, tabu_search, tenure_at
from .crossover import greedy_crossover, uniform_crossover
from .memetic import (
    EventLog,
    MemeticParams,
    Population,
    RunResult,
    UpdateResult,
    init_population,
    multi_start_tabu,
    solve,
    update_population,
)
from .oracle import InstanceTooLargeError, brute_force
from .bench import RunReport, default_cutoff, run_benchmark, run_instance

__all__ = [
    "GeneratorConfig",
    "Instance",
    "InstanceKind",
    "InvalidConfigError",
    "ParseError",
    "generate",
    "read_instance",
    "write_instance",
    "ForbiddenMoveError",
    "InfeasibleSolutionError",
    "Solution",
    "apply_flip",
    "delta_flip",
    "evaluate_full",
    "TabuParams",
    "TabuState",
    "TenureSchedule",
    "tabu_search",
    "tenure_at",
    "greedy_crossover",
    "uniform_crossover",
    "EventLog",
    "MemeticParams",
    "Population",
    "RunResult",
    "UpdateResult",
    "init_population",
    "multi_start_tabu",
    "solve",
    "update_population",
    "InstanceTooLargeError",
    "brute_force",
    "RunReport",
    "default_cutoff",
    "run_benchmark",
    "run_instance",
]

__version__ = "0.1.0"
