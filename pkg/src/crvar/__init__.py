"""Word algebra, finite unary semigroups, variety bases and lattice networks
for completely regular semigroups."""

from .words import (
    CLOSE_INV,
    OPEN,
    InvalidWordError,
    Inv,
    Prod,
    Term,
    Var,
    ZetaEquivalent,
    ZetaUnknown,
    content,
    content_head_tail,
    mirror,
    mirror_term,
    parse_text,
    parse_word,
    prod,
    render,
    term_to_text,
    validate,
    word_from_text,
    word_to_text,
    zero_power,
    zeta_equivalent,
    zeta_neighbors,
)
from .semigroups import (
    UnaryCayleyTable,
    dual,
    evaluate,
    free_band,
    green,
    is_associative,
    is_completely_regular,
    largest_congruence_within,
    quotient,
    rees_quotient,
    right_zero_extension,
    table,
    tau,
)
from .varieties import (
    Identity,
    IdentityBasis,
    apply_word,
    catalog,
    dual_basis,
    member,
    member_via_quotient,
    op_K,
    op_Kl,
    op_Kr,
    op_T,
    op_Tl,
    op_Tr,
)
from .theta import ThetaWord
from .networks import (
    Network,
    check_lattice,
    emit_dot,
    emit_json,
    gen_K_network,
    gen_T_network,
    gen_combined,
    gen_ladder51,
    gen_ladder61,
    instantiate,
    isomorphic,
    normalize,
)

__version__ = "0.1.0"
