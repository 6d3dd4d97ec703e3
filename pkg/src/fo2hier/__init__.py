"""Finite-monoid tools for deciding membership of regular languages in
J1, J, DA, Ap and their quantifier-alternation depth in FO2[<]."""
from .errors import (
    BadIdentity,
    BudgetExceeded,
    EmptyAlphabet,
    IllDefinedProduct,
    InconsistentArrow,
    IndexOutOfRange,
    NonAssociative,
    ParseError,
    UnboundVariable,
    UnknownLetter,
)
from .hierarchy import (
    BlockProductVerdict,
    DepthReport,
    alternation_depth,
    classify,
    decide_block_product,
)
from .kernel import (
    arrows_equivalent,
    base_monoid,
    base_monoids,
    kernel_category,
    local_global_witness,
    pair_closure,
    transduce,
)
from .language import Dfa, RecognizedLanguage, compile_language, recognizes, syntactic_monoid
from .monoid import (
    FiniteMonoid,
    Morphism,
    apply_morphism,
    closure,
    direct_product,
    divides,
    from_table,
    omega,
    structural_da_check,
    structural_j_check,
)
from .simon import SubwordClass, equivalent_k, simon_quotient, subword_class
from .terms import (
    Identity,
    check_identity,
    eval_term,
    hierarchy_identity,
    parse_identity,
    parse_term,
    variety_membership,
)

__version__ = "0.1.0"
