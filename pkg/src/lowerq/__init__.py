"""Lower-indexed homology operations and join products on classifying-space
homology, with exhaustive relation verification and an exact GF(p) solver
for product structure constants."""

from .algebra import (
    GeneratorFamily,
    GradedElement,
    JoinAlgebraSpec,
    commutativity_sign,
    element_add,
    join_product,
    n_fold_degree,
)
from .actions import (
    ActionTable,
    ModuleSpec,
    apply_sum,
    apply_word,
    builtin_module,
    cartan_expand,
    flip_coefficient,
    s1_action,
    s1_algebra,
    s1_candidate_table,
    s1_module,
)
from .fields import FpScalar, binom_mod_p, fp_add, fp_mul, is_prime, lucas_binom
from .operations import (
    OperationSum,
    OperationWord,
    RelationTable,
    ThetaIndex,
    adem_rewrite,
    is_admissible,
    op_degree,
    rewrite_sum,
    theta_to_q,
)
from .solver import LinearSystem, SolverResult, solve_product_table
from .verify import VerificationReport, verify_adem, verify_cartan, verify_sign_laws

__all__ = [
    "ActionTable",
    "FpScalar",
    "GeneratorFamily",
    "GradedElement",
    "JoinAlgebraSpec",
    "LinearSystem",
    "ModuleSpec",
    "OperationSum",
    "OperationWord",
    "RelationTable",
    "SolverResult",
    "ThetaIndex",
    "VerificationReport",
    "adem_rewrite",
    "apply_sum",
    "apply_word",
    "binom_mod_p",
    "builtin_module",
    "cartan_expand",
    "commutativity_sign",
    "element_add",
    "flip_coefficient",
    "fp_add",
    "fp_mul",
    "is_admissible",
    "is_prime",
    "join_product",
    "lucas_binom",
    "n_fold_degree",
    "op_degree",
    "rewrite_sum",
    "s1_action",
    "s1_algebra",
    "s1_candidate_table",
    "s1_module",
    "solve_product_table",
    "theta_to_q",
    "verify_adem",
    "verify_cartan",
    "verify_sign_laws",
]

__version__ = "0.1.0"
