"""Learning tabu search for QUBO problems on annealer-style topologies.

The solver keeps a current solution and a tabu matrix of displaced
candidates, re-encodes the deformed objective onto the hardware graph under
evolving variable-to-qubit assignments, and queries a pluggable sampler for
low-energy states. Classical samplers (exact enumeration, annealed
Metropolis chains, uniform noise) stand in for annealing hardware; a JSON
HTTP client talks to remote services.
"""

from .core import (
    QalsParams,
    QuboProblem,
    SolveReport,
    TabuMatrix,
    TopologyGraph,
    WeightMatrix,
    as_spins,
    conjugate_tabu,
    decode,
    encode,
    energy,
    identity_permutation,
    is_permutation,
    objective,
    tabu_init,
    tabu_update,
)
from .harness import (
    ExperimentReport,
    ExperimentSpec,
    brute_force_min,
    random_qubo,
    run_experiment,
)
from .samplers import (
    CapacityError,
    ExactSampler,
    MalformedResponseError,
    MetropolisSampler,
    RandomSampler,
    RemoteSampler,
    SamplerError,
    SampleShapeError,
    SaSchedule,
    TransportError,
    estimate_argmin,
    exact_minimizers,
    exact_sample,
    metropolis_sample,
    random_sample,
    remote_sample,
    scale_to_ranges,
)
from .solver import (
    accept_suboptimal,
    modify_permutation,
    perturb_candidate,
    solve,
    update_lambda,
    update_p,
)
from .topology import (
    chimera_graph,
    complete_graph,
    graph_from_edge_list,
    load_edge_list,
    parse_edge_list,
)

__version__ = "0.1.0"
