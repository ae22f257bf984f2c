import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gencliff import algebra as alg
from gencliff.algebra import make_context
from gencliff.errors import ParameterError, SingularElementError
from gencliff.matrix_rep import alternative_representation, generator_matrices, matrix_det, random_invertible, represent
from gencliff.spectral import (
    adjugate,
    adjugate_numerator,
    adjugate_numerator_flat,
    char_poly_eval,
    determinant,
    det_from_coefficients,
    faddeev_leverrier,
    inverse,
    singularity_threshold,
    ternary_d2_closed_forms,
    ternary_inverse,
    trace_op,
)

from conftest import ACCEPTANCE_CONFIGS, element_pairs, elements
from oracles import charpoly_coeffs, lapack_det


def rel(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b))


def binomial_scalar_coeffs(N, lam):
    """C_k for U = lam e: (x - lam)^N = x^N - sum C_k x^(N-k)."""
    return [-math.comb(N, k) * (-lam) ** k for k in range(1, N + 1)]


# --------------------------------------------------------------------------
# trace and characteristic polynomial


def test_trace_examples(ctx32, rng):
    assert trace_op(alg.identity(ctx32)) == 3
    assert trace_op(alg.generator(ctx32, 1)) == 0
    U = alg.random_element(ctx32, rng)
    assert trace_op(U) == 3 * alg.coefficient(U, (0, 0))


@pytest.mark.parametrize("m,d", [(2, 1), (3, 2), (2, 3), (4, 2)])
def test_scalar_element_binomial(m, d):
    ctx = make_context(m, d)
    lam = 0.7 - 0.3j
    cp = faddeev_leverrier(lam * alg.identity(ctx))
    assert np.allclose(cp.C, binomial_scalar_coeffs(ctx.N, lam), atol=1e-12)
    assert abs(cp.evaluate(lam)) < 1e-12
    assert abs(determinant(lam * alg.identity(ctx)) - lam**ctx.N) < 1e-12


def test_shift_charpoly(ctx32):
    cp = faddeev_leverrier(alg.generator(ctx32, 1))
    assert np.allclose(cp.C, [0, 0, 1], atol=1e-15)
    assert abs(char_poly_eval(alg.generator(ctx32, 1), 1)) < 1e-15


def test_m2_d1_by_hand():
    ctx = make_context(2, 1)
    a, b = 0.3 + 0.1j, -0.8 + 0.5j
    U = a * alg.identity(ctx) + b * alg.generator(ctx, 1)
    cp = faddeev_leverrier(U)
    assert abs(cp.C[0] - 2 * a) < 1e-15
    assert abs(cp.C[1] - (b * b - a * a)) < 1e-15
    assert abs(determinant(U) - (a + b) * (a - b)) < 1e-15


@given(elements())
def test_charpoly_matches_lapack(U):
    ctx = U.context
    cp = faddeev_leverrier(U)
    ref = charpoly_coeffs(represent(U))
    scale = (1 + alg.norm(U)) ** ctx.N
    assert np.abs(cp.C - ref).max() <= 1e-9 * scale
    assert abs(cp.C[0] - ctx.N * alg.scalar_part(U)) <= 1e-12 * max(1.0, alg.norm(U)) * ctx.N
    assert abs(cp.evaluate(0) + cp.C[-1]) <= 1e-15 * scale


@given(elements())
def test_cayley_hamilton_endpoint(U):
    ctx = U.context
    cp = faddeev_leverrier(U)
    UN = cp.last_iterates[1]
    scale = (1 + alg.norm(U)) ** ctx.N
    assert alg.norm(UN - alg.scalar_part(UN) * alg.identity(ctx)) <= 1e-8 * scale
    if ctx.N >= 2:
        lhs = alg.multiply(U, adjugate(U, cp))
        assert alg.norm(lhs - cp.det * alg.identity(ctx)) <= 1e-8 * scale


def test_sign_convention_reproduces_both_parities():
    """Det = (-1)^(N+1) C_N: +C_3 for N = 3, -C_2 for N = 2."""
    for m, d in [(3, 2), (2, 2), (2, 1), (4, 2), (3, 1)]:
        ctx = make_context(m, d)
        U = alg.random_element(ctx, np.random.default_rng([m, d]))
        cp = faddeev_leverrier(U)
        expected = cp.C[-1] if ctx.N % 2 else -cp.C[-1]
        assert cp.det == expected
        assert rel(cp.det, lapack_det(represent(U))) < 1e-12


def test_large_norm_warns(ctx32):
    with pytest.warns(RuntimeWarning):
        faddeev_leverrier(1e4 * alg.generator(ctx32, 1))


# --------------------------------------------------------------------------
# determinant


def test_basis_monomials_have_unit_determinant(ctx32):
    for J in alg.tables(ctx32).exponents:
        assert abs(determinant(alg.basis_element(ctx32, tuple(J))) - 1) <= 1e-12


@pytest.mark.parametrize("m,d", ACCEPTANCE_CONFIGS)
def test_determinant_oracle(m, d):
    ctx = make_context(m, d)
    gens = generator_matrices(ctx)
    rng = np.random.default_rng([m, d, 5])
    for _ in range(20):
        U = alg.random_element(ctx, rng)
        ref = lapack_det(represent(U, gens))
        assert abs(determinant(U) - ref) <= 1e-8 * (1 + alg.norm(U)) ** ctx.N


@given(element_pairs(st.sampled_from([(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)]).map(lambda md: make_context(*md))))
def test_determinant_multiplicative(pair):
    U, V = pair
    N = U.context.N
    err = abs(determinant(alg.multiply(U, V)) - determinant(U) * determinant(V))
    assert err <= 1e-8 * (1 + alg.norm(U) * alg.norm(V)) ** N


@given(elements())
def test_conjugate_determinant(U):
    det = determinant(U)
    det_h = determinant(alg.hermitian_conjugate(U))
    assert abs(det - np.conj(det_h)) <= 1e-9 * max(1.0, abs(det))


@pytest.mark.parametrize("m,d", [(2, 1), (3, 1), (2, 3), (3, 3), (5, 1)])
def test_grade_automorphism_invariance_odd_d(m, d, rng):
    ctx = make_context(m, d)
    U = alg.random_element(ctx, rng)
    det = determinant(U)
    for j in range(m):
        assert rel(determinant(alg.grade_automorphism(U, j)), det) <= 1e-10


@pytest.mark.parametrize("m,d", [(2, 2), (3, 2), (3, 3)])
def test_determinant_independent_of_representation(m, d, rng):
    ctx = make_context(m, d)
    gens = generator_matrices(ctx)
    U = alg.random_element(ctx, rng)
    det = determinant(U)
    for _ in range(10):
        T = random_invertible(ctx.N, rng)
        for shift in range(m):
            assert rel(matrix_det(alternative_representation(U, T, shift, gens)), det) <= 1e-8


# --------------------------------------------------------------------------
# adjugate and inverse


def test_adjugate_examples(ctx32):
    e = alg.identity(ctx32)
    assert adjugate(e) == e
    e1 = alg.generator(ctx32, 1)
    assert adjugate(e1) == alg.basis_element(ctx32, (2, 0))


def test_adjugate_matches_matrix_adjugate(rng):
    for m, d in [(2, 2), (3, 2), (2, 3), (4, 2)]:
        ctx = make_context(m, d)
        U = alg.random_element(ctx, rng)
        A = represent(U)
        ref = lapack_det(A) * np.linalg.inv(A)
        assert np.allclose(represent(adjugate(U)), ref, atol=1e-10)


def test_inverse_examples():
    for m in (2, 3, 5):
        ctx = make_context(m, 2)
        e1 = alg.generator(ctx, 1)
        assert inverse(e1) == alg.basis_element(ctx, (m - 1, 0))
        assert inverse(2 * alg.identity(ctx)) == 0.5 * alg.identity(ctx)


@pytest.mark.parametrize("m,d", [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2), (5, 2)])
def test_inverse_property(m, d, rng):
    ctx = make_context(m, d)
    done = 0
    while done < 10:
        U = alg.random_element(ctx, rng)
        if abs(determinant(U)) <= 1e-3:
            continue
        assert alg.norm(alg.multiply(U, inverse(U)) - alg.identity(ctx)) <= 1e-8
        assert alg.norm(alg.multiply(inverse(U), U) - alg.identity(ctx)) <= 1e-8
        done += 1


def test_singular_element_raises(ctx32):
    e1 = alg.generator(ctx32, 1)
    projector = (alg.identity(ctx32) + e1 + alg.power(e1, 2)) / 3
    with pytest.raises(SingularElementError) as info:
        inverse(projector)
    assert info.value.threshold == singularity_threshold(projector)


# --------------------------------------------------------------------------
# closed forms for m = 3, d = 2


def test_closed_forms_identity(ctx32):
    cf = ternary_d2_closed_forms(alg.identity(ctx32))
    assert abs(cf.C2 + 3) < 1e-15 and abs(cf.C2q + 3) < 1e-15
    assert abs(cf.det - 1) < 1e-15 and abs(cf.detq - 1) < 1e-15
    cp = faddeev_leverrier(alg.identity(ctx32))
    assert np.allclose(cp.C, [3, -3, 1])


def test_det0_on_generator(ctx32):
    assert det_from_coefficients(alg.generator(ctx32, 1)) == 1


def test_closed_forms_agree(ctx32, rng):
    gens = generator_matrices(ctx32)
    for _ in range(100):
        U = alg.random_element(ctx32, rng)
        cf = ternary_d2_closed_forms(U)
        cp = faddeev_leverrier(U)
        lu = matrix_det(represent(U, gens))
        for value in (cf.det, cf.detq, cf.det0, lu):
            assert rel(value, cp.det) <= 1e-10
        assert rel(cf.C2, cp.C[1]) <= 1e-10 and rel(cf.C2q, cp.C[1]) <= 1e-10
        assert alg.norm(cf.adj - adjugate(U, cp)) <= 1e-10 * max(1.0, alg.norm(U) ** 2)
        assert alg.norm(cf.adjq - cf.adj) <= 1e-10 * max(1.0, alg.norm(U) ** 2)
        # U Adj(U) is a scalar, and so is Adj(U) U
        assert alg.norm(cf.det_element - cf.det * alg.identity(ctx32)) <= 1e-10
        assert alg.norm(alg.multiply(cf.adj, U) - cf.det * alg.identity(ctx32)) <= 1e-10


def test_ternary_inverse_forms(ctx32, rng):
    for _ in range(20):
        U = alg.random_element(ctx32, rng)
        if abs(determinant(U)) <= 1e-3:
            continue
        assert alg.norm(ternary_inverse(U) - ternary_inverse(U, flat=True)) <= 1e-9
        assert alg.norm(ternary_inverse(U) - inverse(U)) <= 1e-9
        assert alg.norm(adjugate_numerator(U) - adjugate_numerator_flat(U)) <= 1e-10 * max(1.0, alg.norm(U) ** 2)


def test_closed_forms_need_ternary_plane():
    with pytest.raises(ParameterError):
        ternary_d2_closed_forms(alg.identity(make_context(3, 3)))


# --------------------------------------------------------------------------
# precision of the recursion


def test_double_double_and_long_double_paths_agree(rng):
    for m, d in [(2, 3), (3, 3), (4, 3), (5, 2)]:
        U = alg.random_element(make_context(m, d), rng)
        fast = faddeev_leverrier(U, "double-double")
        ext = faddeev_leverrier(U, "long-double")
        scale = (1 + alg.norm(U)) ** U.context.N
        assert np.abs(fast.C - ext.C).max() <= 1e-15 * scale


def test_ill_conditioned_determinant_keeps_its_digits():
    """A draw where ||U||^N / |Det| ~ 1e8; long double alone loses 8 digits here."""
    ctx = make_context(5, 3)
    rng = np.random.default_rng([20240719, 13, 5, 3])
    elements_ = [alg.random_element(ctx, rng) for _ in range(100)]
    U = max(elements_, key=lambda V: (1 + alg.norm(V)) ** ctx.N / abs(determinant(V)))
    assert (1 + alg.norm(U)) ** ctx.N / abs(determinant(U)) > 1e7
    det = determinant(U)
    assert rel(det, np.conj(determinant(alg.hermitian_conjugate(U)))) <= 1e-12
    assert rel(det, lapack_det(represent(U))) <= 1e-12


def test_precision_argument(ctx32):
    with pytest.raises(ParameterError):
        faddeev_leverrier(alg.identity(ctx32), "quad")
    with pytest.raises(ParameterError):
        faddeev_leverrier(alg.identity(make_context(2, 10)), "double-double")
    assert faddeev_leverrier(alg.identity(make_context(2, 10))).det == 1


def test_overflowing_double_double_falls_back(ctx32, rng):
    U = alg.random_element(ctx32, rng)
    with pytest.warns(RuntimeWarning):
        big = determinant(1e100 * U)
    assert rel(big / 1e300, determinant(U)) <= 1e-12
