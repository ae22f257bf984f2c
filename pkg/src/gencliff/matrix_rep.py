"""Explicit matrix representation of Cl^(1/m)_d and dense complex linear algebra.

This module is the independent numerical oracle: everything the algebra
module computes intrinsically can be checked against ordinary matrices here.

Generators for even d use h = d/2 tensor factors of size m:

    beta(e_{2a-1}) = A x ... x A x P x I x ... x I     (a-1 copies of A)
    beta(e_{2a})   = A x ... x A x R x I x ... x I

with P the cyclic shift, R = diag(1, w, ..., w^(m-1)) the clock matrix and
A = c P^(m-1) R (c = zeta for even m, else 1).  For odd d the first d-1
generators are taken from the even case and block-diagonally repeated as
diag(B, wB, ..., w^(m-1)B); the last one is diag(Z, wZ, ...) with
Z = A x ... x A.  For d = 2 this gives beta(e_1) = P, beta(e_2) = R.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .algebra import (
    DEFAULT_MAX_N,
    AlgebraContext,
    AlgebraElement,
    grade_automorphism,
    tables,
)
from .errors import ContextMismatchError, ParameterError, SingularElementError

ComplexMatrix = np.ndarray

PIVOT_THRESHOLD = 1e-10


def base_matrices(m: int) -> tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
    """Shift P, the companion Q and clock R = P^(m-1) Q (times zeta for even m)."""
    if m < 2:
        raise ParameterError(f"m must be >= 2, got {m}")
    k = np.arange(m)
    P = np.zeros((m, m), dtype=np.complex128)
    P[k, (k + 1) % m] = 1.0
    Q = np.zeros((m, m), dtype=np.complex128)
    if m % 2:
        # superdiagonal w, w^2, ..., w^(m-1); corner 1
        Q[k[:-1], k[:-1] + 1] = np.exp(2j * np.pi * (k[:-1] + 1) / m)
        Q[m - 1, 0] = 1.0
    else:
        # superdiagonal zeta, zeta^3, ..., zeta^(2m-3); corner zeta^(2m-1)
        Q[k[:-1], k[:-1] + 1] = np.exp(1j * np.pi * (2 * k[:-1] + 1) / m)
        Q[m - 1, 0] = np.exp(1j * np.pi * (2 * m - 1) / m)
    R = np.linalg.matrix_power(P, m - 1) @ Q
    if m % 2 == 0:
        R = np.exp(1j * np.pi / m) * R
    return P, Q, R


def clock_matrix(m: int) -> ComplexMatrix:
    return np.diag(np.exp(2j * np.pi * np.arange(m) / m))


def kron(*factors: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product of any number of factors; the empty product is [[1]]."""
    return reduce(np.kron, factors, np.ones((1, 1), dtype=np.complex128))


def _ladder_matrix(m: int) -> ComplexMatrix:
    P, _, R = base_matrices(m)
    A = np.linalg.matrix_power(P, m - 1) @ R
    if m % 2 == 0:
        A = np.exp(1j * np.pi / m) * A
    return A


def _even_generators(m: int, h: int) -> list[ComplexMatrix]:
    P, _, R = base_matrices(m)
    A = _ladder_matrix(m)
    I = np.eye(m, dtype=np.complex128)
    gens = []
    for a in range(h):
        prefix = [A] * a
        suffix = [I] * (h - a - 1)
        gens.append(kron(*prefix, P, *suffix))
        gens.append(kron(*prefix, R, *suffix))
    return gens


@dataclass(frozen=True)
class GeneratorSet:
    """The matrices beta(e_1), ..., beta(e_d) plus their powers."""

    context: AlgebraContext
    matrices: tuple[ComplexMatrix, ...]
    powers: tuple[tuple[ComplexMatrix, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        powers = []
        for B in self.matrices:
            B.flags.writeable = False
            row = [np.eye(B.shape[0], dtype=np.complex128)]
            for _ in range(1, self.context.m):
                row.append(row[-1] @ B)
            for mat in row:
                mat.flags.writeable = False
            powers.append(tuple(row))
        object.__setattr__(self, "powers", tuple(powers))

    @property
    def N(self) -> int:
        return self.context.N


def generator_matrices(ctx: AlgebraContext, max_N: int = DEFAULT_MAX_N) -> GeneratorSet:
    if ctx.N > max_N:
        raise ParameterError(f"representation size {ctx.N} exceeds cap {max_N}")
    m, d = ctx.m, ctx.d
    if d % 2 == 0:
        mats = _even_generators(m, d // 2)
    else:
        h = (d - 1) // 2
        inner = _even_generators(m, h)
        inner.append(kron(*([_ladder_matrix(m)] * h)))
        phases = np.exp(2j * np.pi * np.arange(m) / m)
        mats = [np.kron(np.diag(phases), B) for B in inner]
    return GeneratorSet(ctx, tuple(np.ascontiguousarray(B) for B in mats))


def monomial_matrix(gens: GeneratorSet, J) -> ComplexMatrix:
    """beta(e_1)^{j_1} ... beta(e_d)^{j_d}."""
    out = gens.powers[0][0]
    for a, j in enumerate(J):
        if j:
            out = out @ gens.powers[a][j]
    return out


def represent(U: AlgebraElement, gens: GeneratorSet | None = None) -> ComplexMatrix:
    ctx = U.context
    if gens is None:
        gens = generator_matrices(ctx)
    elif gens.context != ctx:
        raise ContextMismatchError("generator set built for a different algebra")
    exps = tables(ctx).exponents
    out = np.zeros((ctx.N, ctx.N), dtype=np.complex128)
    for idx in np.flatnonzero(U.coeffs):
        out += U.coeffs[idx] * monomial_matrix(gens, exps[idx])
    return out


# --------------------------------------------------------------------------
# dense primitives


def _check_square(A: ComplexMatrix) -> int:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {A.shape}")
    return A.shape[0]


def mat_mul(A: ComplexMatrix, B: ComplexMatrix) -> ComplexMatrix:
    if A.shape[1] != B.shape[0]:
        raise ParameterError(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def mat_add(A: ComplexMatrix, B: ComplexMatrix) -> ComplexMatrix:
    if A.shape != B.shape:
        raise ParameterError(f"cannot add {A.shape} and {B.shape}")
    return A + B


def hermitian_transpose(A: ComplexMatrix) -> ComplexMatrix:
    return np.conj(A).T


def mat_trace(A: ComplexMatrix) -> complex:
    _check_square(A)
    return complex(np.trace(A))


def frobenius_norm(A: ComplexMatrix) -> float:
    return float(np.linalg.norm(A))


def is_unitary_matrix(A: ComplexMatrix, tol: float = 1e-12) -> bool:
    n = _check_square(A)
    return frobenius_norm(hermitian_transpose(A) @ A - np.eye(n)) <= tol


@dataclass(frozen=True)
class LUResult:
    """PA = LU packed in one matrix (unit lower L below the diagonal)."""

    lu: ComplexMatrix
    perm: np.ndarray
    sign: int

    @property
    def pivots(self) -> np.ndarray:
        return np.diag(self.lu)


def lu_decompose(A: ComplexMatrix) -> LUResult:
    """Doolittle LU with partial (largest-modulus) pivoting.

    Zero columns are skipped rather than raising; the resulting zero pivot
    makes the determinant exactly zero.
    """
    n = _check_square(A)
    lu = np.array(A, dtype=np.complex128, copy=True)
    perm = np.arange(n)
    sign = 1
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        pivot = lu[k, k]
        if pivot == 0:
            continue
        lu[k + 1 :, k] /= pivot
        lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return LUResult(lu, perm, sign)


def matrix_det(A: ComplexMatrix) -> complex:
    res = lu_decompose(A)
    det = complex(res.sign)
    for p in res.pivots:
        det *= p
    return det


def lu_solve(res: LUResult, B: ComplexMatrix) -> ComplexMatrix:
    lu = res.lu
    n = lu.shape[0]
    X = np.array(B, dtype=np.complex128)[res.perm]
    for k in range(n):
        X[k + 1 :] -= np.outer(lu[k + 1 :, k], X[k])
    for k in range(n - 1, -1, -1):
        X[k] /= lu[k, k]
        X[:k] -= np.outer(lu[:k, k], X[k])
    return X


def matrix_inverse(A: ComplexMatrix, threshold: float = PIVOT_THRESHOLD) -> ComplexMatrix:
    res = lu_decompose(A)
    smallest = float(np.min(np.abs(res.pivots)))
    if smallest <= threshold:
        raise SingularElementError(matrix_det(A), threshold)
    return lu_solve(res, np.eye(A.shape[0]))


def pivot_ratio(A: ComplexMatrix) -> float:
    """Smallest over largest pivot modulus of the LU factorization."""
    piv = np.abs(lu_decompose(A).pivots)
    return float(piv.min() / piv.max()) if piv.max() > 0 else 0.0


def rank_by_elimination(A: np.ndarray, threshold: float = 1e-8) -> int:
    """Rank via Gaussian elimination with complete pivoting.

    Pivots are compared against ``threshold`` times the largest entry of
    the input.
    """
    M = np.array(A, dtype=np.result_type(A, np.float64), copy=True)
    if M.size == 0:
        return 0
    scale = np.max(np.abs(M))
    if scale == 0:
        return 0
    rows, cols = M.shape
    rank = 0
    for k in range(min(rows, cols)):
        sub = np.abs(M[k:, k:])
        i, j = np.unravel_index(int(np.argmax(sub)), sub.shape)
        if sub[i, j] <= threshold * scale:
            break
        i += k
        j += k
        M[[k, i]] = M[[i, k]]
        M[:, [k, j]] = M[:, [j, k]]
        M[k + 1 :, k:] -= np.outer(M[k + 1 :, k] / M[k, k], M[k, k:])
        rank += 1
    return rank


def random_invertible(N: int, rng: np.random.Generator | int | None = None, ratio: float = 1e-6) -> ComplexMatrix:
    """Random complex matrix, redrawn until its pivot ratio exceeds ``ratio``."""
    rng = np.random.default_rng(rng)
    while True:
        T = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
        if pivot_ratio(T) >= ratio:
            return T


def alternative_representation(
    U: AlgebraElement,
    T: ComplexMatrix,
    shift: int = 0,
    gens: GeneratorSet | None = None,
) -> ComplexMatrix:
    """T^{-1} beta(hat^shift(U)) T: the representation with e_a -> T^{-1} w^shift beta(e_a) T."""
    if not 0 <= shift < U.context.m:
        raise ParameterError(f"shift {shift} outside [0, {U.context.m - 1}]")
    B = represent(grade_automorphism(U, shift), gens)
    return matrix_inverse(T) @ B @ T


# --------------------------------------------------------------------------
# JSON


def matrix_to_json(A: ComplexMatrix) -> dict:
    rows, cols = A.shape
    return {
        "rows": rows,
        "cols": cols,
        "entries": [[float(z.real), float(z.imag)] for z in np.ravel(A)],
    }


def matrix_from_json(obj: dict) -> ComplexMatrix:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = [complex(float(re), float(im)) for re, im in obj["entries"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed matrix JSON: {exc}") from exc
    if len(entries) != rows * cols:
        raise ParameterError(f"expected {rows * cols} entries, got {len(entries)}")
    return np.array(entries, dtype=np.complex128).reshape(rows, cols)


def dumps_matrix(A: ComplexMatrix) -> str:
    return json.dumps(matrix_to_json(A))
