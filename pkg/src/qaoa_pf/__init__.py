"""Exact-statevector QAOA for Max-Cut with random and parameters-fixing
initialization."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CapacityError,
    DegenerateInstanceError,
    GenerationError,
    OptimizerError,
    ParameterError,
    QAOAError,
)
from .graphs import (  # noqa: E402
    Graph,
    MaxCutSolution,
    cut_value,
    generate_erdos_renyi,
    generate_regular,
    max_cut_bruteforce,
    read_graph,
    write_graph,
)
from .simulator import (  # noqa: E402
    MaxCutQAOA,
    ParameterVector,
    apply_cost_layer,
    apply_mixer_layer,
    cut_spectrum,
    evolve,
    expectation,
    fp,
    prepare_plus_state,
)
from .optimize import OptimizationResult, OptimizerOptions, Termination, maximize, minimize  # noqa: E402
from .strategies import (  # noqa: E402
    DepthRecord,
    DriftTrack,
    TrialResult,
    drift_tracks,
    parameters_fixing_sweep,
    random_init_sweep,
    random_trial,
)
from .landscape import LandscapeGrid, landscape_grid  # noqa: E402
from .experiment import (  # noqa: E402
    ExperimentConfig,
    ExperimentReport,
    compare_strategies,
    load_config,
    run_experiment,
)
