"""Exact computations in the enveloping algebra of the free preLie algebra on
rooted trees: the *-product, coproduct, Solomon idempotents, the explicit PBW
isomorphism, the preLie Magnus element, and a numerical Magnus integrator."""
from .hopf import (
    TensorElement,
    TruncationOrder,
    commutative_product,
    conv_power_apply,
    coproduct,
    counit,
    iterated_coproduct,
    star_exp,
    star_log,
    star_product,
    sym_exp,
)
from .magnus import MagnusResult, bernoulli_series, magnus_fixed_point, magnus_via_log
from .prelie import (
    Element,
    PreLieCarrier,
    extended_action_closed,
    extended_action_recursive,
    lie_bracket,
    parse_element,
    prelie_product,
)
from .solomon import pbw_inverse, pbw_map, psi, psi_closed, sol1, sol_stirling, soln
from .trees import Forest, Tree, canonicalize, enumerate_trees, graft, parse_forest, parse_tree, render_tree

__version__ = "0.1.0"
