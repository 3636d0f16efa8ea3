"""Graph coloring games with distance-based payoffs.

Exact price-of-anarchy computation on small instances, best-response
improvement dynamics, and certified worst-case response ratios via an
exact splitting program. All game values are rationals; every certificate
is re-checked with zero tolerance.
"""

from .bounds import BoundReport, mean_value_bound_distance, mean_value_deviation, upper_bounds
from .dynamics import DynamicsTrace, lift_stable, quick_response, run_improvement_dynamics
from .errors import BudgetError, GameError, InvariantError, ValidationError
from .exhaustive import (
    DEFAULT_BUDGET,
    ColorMultiset,
    PoaReport,
    brute_force_poa,
    enumerate_stable,
    local_param_oracle,
)
from .gadgets import (
    Gadget,
    gadget_affine,
    gadget_coordination,
    gadget_cyclic_even,
    gadget_cyclic_odd,
    gadget_decreasing,
)
from .model import (
    Coloring,
    Graph,
    PayoffTable,
    best_response,
    change,
    is_stable,
    player_payoff,
    read_coloring,
    read_graph,
    validate_graph,
    welfare,
    welfare_edgewise,
    write_coloring,
    write_graph,
)
from .payoffs import (
    affine,
    basic,
    coordination,
    cyclic,
    decreasing_affine,
    dis_star,
    distance,
    f_star,
    parse_payoff_spec,
    prototype,
    random_concave,
    scale,
)
from .splitting import (
    Distribution,
    LocalParamResult,
    Splitting,
    between_index,
    closed_form_splitting,
    delta_grid_search,
    dual_bound,
    minimal_splitting,
    transfer_bound,
    verify_splitting,
)

__version__ = "0.1.0"
