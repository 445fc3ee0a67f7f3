from ordarena.logic.ast import (
    And,
    CountableAnd,
    CountableOr,
    Eq,
    Exists,
    Forall,
    Formula,
    Le,
    Not,
    Or,
    Term,
    free_vars,
    from_sexpr,
    qr,
    term,
    to_sexpr,
    well_sorted,
)
from ordarena.logic.semantics import (
    EvalError,
    FinitePointedSemigroup,
    SortError,
    cyclic_group,
    evaluate,
    pointed_semigroup_families,
    truncated_addition,
)
from ordarena.logic.groth import GrothendieckGroup, grothendieck
from ordarena.logic.translate import (
    TranslationReport,
    random_formula,
    translate_k0_to_v,
    verify_translation,
)
from ordarena.logic.continuous import (
    ContinuousFormula,
    PhiBundle,
    build_phi_n_delta,
    matrix_entry_delta,
    translate_v_atomic,
    ulam_delta_prime,
)

__all__ = [
    "And", "CountableAnd", "CountableOr", "Eq", "Exists", "Forall", "Formula", "Le",
    "Not", "Or", "Term", "free_vars", "from_sexpr", "qr", "term", "to_sexpr",
    "well_sorted", "EvalError", "FinitePointedSemigroup", "SortError", "cyclic_group",
    "evaluate", "pointed_semigroup_families", "truncated_addition", "GrothendieckGroup",
    "grothendieck", "TranslationReport", "random_formula", "translate_k0_to_v",
    "verify_translation", "ContinuousFormula", "PhiBundle", "build_phi_n_delta",
    "matrix_entry_delta", "translate_v_atomic", "ulam_delta_prime",
]
