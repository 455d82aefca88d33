"""ddsolve: exact solver for polynomial equations over finite discrete
dynamical systems.

Given an equation a1 * x1**w1 + ... + am * xm**wm = b whose constants are
finite dynamical systems (or their abstractions), the package enumerates
every solution of the cardinality abstraction and of the asymptotic
(limit-cycle) abstraction, and intersects the two into candidate
solutions of the original equation.
"""

from .cycles import (
    ONE,
    ZERO,
    CycleSum,
    CycleTerm,
    MultinomialTerm,
    cycle_add,
    cycle_mul,
    cycle_pow,
    format_cycle_sum,
    integer_nth_root,
    multinomial_terms,
    parse_cycle_sum,
    single,
)
from .dds import (
    Dds,
    a_abstraction,
    c_abstraction,
    dds_from_json,
    dds_product,
    dds_sum,
    dds_to_json,
)
from .asymptotic import (
    BasicRegistry,
    build_basic_mdd,
    decode_basic_labels,
    feasible_divisors,
    simplify_a,
    solve_a_equation,
    solve_basic,
)
from .cardinality import (
    build_c_mdd,
    enumerate_card_solutions,
    normalize_card,
    solve_basic_card,
)
from .equations import (
    AEquation,
    AMonomial,
    BasicEquation,
    CardEquation,
    CardMonomial,
)
from .mdd import (
    DEFAULT_NODE_BUDGET,
    Mdd,
    MddBuilder,
    NodeBudgetExceeded,
    count_paths,
    enumerate_paths,
    intersect,
    mdd_to_debug_json,
    reduce_mdd,
    stack_product,
)
from .pipeline import (
    ParseError,
    SolveConfig,
    SolveResult,
    SourceEquation,
    combine_abstractions,
    parse_equation,
    result_payload,
    serialize_equation,
    solve_source,
    to_a_equation,
    to_card_equation,
)
from .roots import power_check, wth_root

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ONE",
    "ZERO",
    "CycleSum",
    "CycleTerm",
    "MultinomialTerm",
    "cycle_add",
    "cycle_mul",
    "cycle_pow",
    "format_cycle_sum",
    "integer_nth_root",
    "multinomial_terms",
    "parse_cycle_sum",
    "single",
    "Dds",
    "a_abstraction",
    "c_abstraction",
    "dds_from_json",
    "dds_product",
    "dds_sum",
    "dds_to_json",
    "AEquation",
    "AMonomial",
    "BasicEquation",
    "CardEquation",
    "CardMonomial",
    "BasicRegistry",
    "build_basic_mdd",
    "decode_basic_labels",
    "feasible_divisors",
    "simplify_a",
    "solve_a_equation",
    "solve_basic",
    "build_c_mdd",
    "enumerate_card_solutions",
    "normalize_card",
    "solve_basic_card",
    "DEFAULT_NODE_BUDGET",
    "Mdd",
    "MddBuilder",
    "NodeBudgetExceeded",
    "count_paths",
    "enumerate_paths",
    "intersect",
    "mdd_to_debug_json",
    "reduce_mdd",
    "stack_product",
    "ParseError",
    "SolveConfig",
    "SolveResult",
    "SourceEquation",
    "combine_abstractions",
    "parse_equation",
    "result_payload",
    "serialize_equation",
    "solve_source",
    "to_a_equation",
    "to_card_equation",
    "power_check",
    "wth_root",
]
