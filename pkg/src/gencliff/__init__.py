"""Generalized Clifford algebras Cl^(1/m)_d: arithmetic, matrix representation,
basis-free determinants and inverses, and unitary Lie groups/algebras."""

from .algebra import (
    AlgebraContext,
    AlgebraElement,
    PhasedMonomial,
    basis_element,
    commutator,
    element_from_json,
    element_to_json,
    format_element,
    from_coefficients,
    generator,
    grade_automorphism,
    grade_project,
    hermitian_conjugate,
    identity,
    inner_product,
    make_context,
    mod_grade_project,
    monomial_inverse,
    monomial_product,
    multiply,
    norm,
    power,
    random_element,
    scalar,
    scalar_part,
    underline,
    zero,
)
from .errors import (
    ContextMismatchError,
    EvaluationError,
    GencliffError,
    ParameterError,
    ParseError,
    SingularElementError,
)
from .expr import evaluate, evaluate_text, parse, tokenize
from .groups import (
    LieBasis,
    Membership,
    exp_element,
    membership,
    special_unitary_lie_basis,
    su3_tables,
    unitary_lie_basis,
)
from .matrix_rep import (
    GeneratorSet,
    alternative_representation,
    generator_matrices,
    matrix_det,
    matrix_inverse,
    represent,
)
from .spectral import (
    CharPolyResult,
    adjugate,
    determinant,
    faddeev_leverrier,
    inverse,
    ternary_d2_closed_forms,
    trace_op,
)

__version__ = "0.1.0"
