"""Unitary and special-unitary groups and their Lie algebras inside Cl^(1/m)_d."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .algebra import (
    AlgebraContext,
    AlgebraElement,
    basis_element,
    exponents_of,
    hermitian_conjugate,
    identity,
    make_context,
    monomial_inverse,
    multiply,
    norm,
    scalar_part,
    tables,
)
from .errors import ParameterError
from .matrix_rep import generator_matrices, rank_by_elimination, represent
from .spectral import determinant

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Membership:
    unitary: bool
    special_unitary: bool
    anti_hermitian: bool
    su_algebra: bool


def membership(U: AlgebraElement, tol: float = DEFAULT_TOL) -> Membership:
    unitary = norm(multiply(hermitian_conjugate(U), U) - identity(U.context)) <= tol
    special = unitary and abs(determinant(U) - 1) <= tol
    anti = norm(hermitian_conjugate(U) + U) <= tol
    su = anti and abs(scalar_part(U)) <= tol
    return Membership(unitary, special, anti, su)


@dataclass(frozen=True)
class LieBasis:
    context: AlgebraContext
    elements: tuple[AlgebraElement, ...]
    kind: Literal["u", "su"]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def real_rank(self, threshold: float = 1e-8) -> int:
        """Rank over the reals of the stacked (Re, Im) coefficient vectors."""
        rows = np.array([np.concatenate([X.coeffs.real, X.coeffs.imag]) for X in self.elements])
        return rank_by_elimination(rows, threshold)


def _pairing_order(ctx: AlgebraContext) -> np.ndarray:
    # exponents compared from e_d down to e_1
    exps = tables(ctx).exponents
    return np.lexsort(exps.T)


def unitary_lie_basis(ctx: AlgebraContext) -> LieBasis:
    """Real basis of {X : herm(X) = -X}, m^d elements.

    Each monomial E_J is paired with the monomial E_J' appearing in
    E_J^{-1} = w^p E_J'.  A pair J != J' contributes E_J - w^p E_J' and
    i(E_J + w^p E_J'); a self-paired J contributes i w^(p/2) E_J with the
    principal half phase exp(i pi p / m).  Monomials are visited with the
    exponent of e_d most significant and the first member of each pair
    becomes its representative.
    """
    seen: set[int] = set()
    out: list[AlgebraElement] = []
    for idx in _pairing_order(ctx):
        idx = int(idx)
        if idx in seen:
            continue
        J = exponents_of(ctx, idx)
        p, Jp = monomial_inverse(J, ctx)
        EJ = basis_element(ctx, J)
        if Jp == J:
            out.append(1j * cmath.exp(1j * math.pi * p / ctx.m) * EJ)
            seen.add(idx)
            continue
        partner = ctx.omega_pow(p) * basis_element(ctx, Jp)
        out.append(EJ - partner)
        out.append(1j * (EJ + partner))
        seen.add(idx)
        seen.add(int(tables(ctx).inv_index[idx]))
    return LieBasis(ctx, tuple(out), "u")


def special_unitary_lie_basis(ctx: AlgebraContext) -> LieBasis:
    """The u basis without i*e, its only element with a nonzero scalar part."""
    u = unitary_lie_basis(ctx)
    kept = tuple(X for X in u if abs(scalar_part(X)) == 0)
    return LieBasis(ctx, kept, "su")


def exp_element(X: AlgebraElement, tol: float = 1e-16, max_terms: int = 64) -> AlgebraElement:
    """exp(X) by Taylor series with scaling and squaring."""
    nrm = norm(X)
    s = max(0, math.ceil(math.log2(nrm / 0.5))) if nrm > 0.5 else 0
    Y = X / (2**s)
    result = identity(X.context)
    term = identity(X.context)
    for k in range(1, max_terms + 1):
        term = multiply(term, Y) / k
        result = result + term
        if norm(term) < tol * norm(result):
            break
    for _ in range(s):
        result = multiply(result, result)
    return result


# --------------------------------------------------------------------------
# su(3) inside Cl^(1/3)_2


GELL_MANN: tuple[np.ndarray, ...] = tuple(
    np.array(mat, dtype=np.complex128)
    for mat in (
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
        [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
        np.diag([1, 1, -2]) / math.sqrt(3),
    )
)

_R3 = math.sqrt(3)

# row j: beta(tau_{j+1}) = sum_k row[k] theta_{k+1}, transcribed as published
PUBLISHED_TAU_TO_THETA = np.zeros((8, 8))
PUBLISHED_TAU_TO_THETA[0, [1, 4, 6]] = [1, -1, 1]
PUBLISHED_TAU_TO_THETA[1, [0, 3, 5]] = [1, 1, 1]
PUBLISHED_TAU_TO_THETA[2, [2, 7]] = [-_R3 / 2, 3 / 2]
PUBLISHED_TAU_TO_THETA[3, [2, 7]] = [3 / 2, _R3 / 2]
PUBLISHED_TAU_TO_THETA[4, [0, 1, 4]] = [_R3 / 2, -1 / 2, -1]
PUBLISHED_TAU_TO_THETA[5, [0, 1, 3]] = [-1 / 2, -_R3 / 2, 1]
PUBLISHED_TAU_TO_THETA[6, [1, 3, 4, 5, 6]] = [-1, -_R3 / 2, -1 / 2, _R3 / 2, 1 / 2]
PUBLISHED_TAU_TO_THETA[7, [0, 3, 4, 5, 6]] = [1, -1 / 2, _R3 / 2, -1 / 6, _R3 / 2]
PUBLISHED_TAU_TO_THETA.flags.writeable = False

# row j: theta_{j+1} = sum_k row[k] beta(tau_{k+1}), transcribed as published
PUBLISHED_THETA_TO_TAU = np.zeros((8, 8))
_a, _b, _c = 1 / (4 * _R3), _R3 / 4, 1 / (2 * _R3)
PUBLISHED_THETA_TO_TAU[0, [0, 1, 4, 5, 6, 7]] = [-_a, 1 / 4, _b, -1 / 4, -_a, 1 / 4]
PUBLISHED_THETA_TO_TAU[1, [0, 1, 4, 5, 6, 7]] = [1 / 4, _a, -1 / 4, -_b, -1 / 4, -_a]
PUBLISHED_THETA_TO_TAU[2, [2, 3]] = [-_c, 1 / 2]
PUBLISHED_THETA_TO_TAU[3, [0, 1, 5, 6]] = [_a, 1 / 4, 1 / 2, -_c]
PUBLISHED_THETA_TO_TAU[4, [0, 1, 4, 7]] = [-1 / 4, _a, -1 / 2, _c]
PUBLISHED_THETA_TO_TAU[5, [1, 4, 5, 6, 7]] = [1 / 2, -_b, -1 / 4, _b, -1 / 4]
PUBLISHED_THETA_TO_TAU[6, [0, 4, 5, 6, 7]] = [1 / 2, -1 / 4, _b, 1 / 4, _b]
PUBLISHED_THETA_TO_TAU[7, [2, 3]] = [1 / 2, _c]
PUBLISHED_THETA_TO_TAU.flags.writeable = False


def expand_in(basis: tuple[np.ndarray, ...], target: np.ndarray) -> np.ndarray:
    """Real coefficients of ``target`` in a basis of anti-Hermitian 3x3 matrices."""
    A = np.array([np.concatenate([B.real.ravel(), B.imag.ravel()]) for B in basis]).T
    b = np.concatenate([target.real.ravel(), target.imag.ravel()])
    coeffs, *_ = np.linalg.lstsq(A, b, rcond=None)
    return coeffs


@dataclass(frozen=True)
class Su3Tables:
    """The tau basis of su(3) in Cl^(1/3)_2 and its relation to Gell-Mann.

    ``tau_to_theta``/``theta_to_tau`` are the published tables verbatim;
    ``derived_*`` are recomputed from the matrices.  Compare them with
    :func:`relation_residuals`.
    """

    tau: tuple[AlgebraElement, ...]
    beta_tau: tuple[np.ndarray, ...]
    gell_mann: tuple[np.ndarray, ...]
    theta: tuple[np.ndarray, ...]
    tau_to_theta: np.ndarray
    theta_to_tau: np.ndarray
    derived_tau_to_theta: np.ndarray
    derived_theta_to_tau: np.ndarray


def su3_tables(ctx: AlgebraContext | None = None) -> Su3Tables:
    ctx = ctx or make_context(3, 2)
    if (ctx.m, ctx.d) != (3, 2):
        raise ParameterError(f"su(3) tables need m=3, d=2; got m={ctx.m}, d={ctx.d}")
    gens = generator_matrices(ctx)
    tau = special_unitary_lie_basis(ctx).elements
    beta_tau = tuple(represent(t, gens) for t in tau)
    theta = tuple(1j * L for L in GELL_MANN)
    fwd = np.array([expand_in(theta, B) for B in beta_tau])
    back = np.array([expand_in(beta_tau, T) for T in theta])
    return Su3Tables(
        tau=tau,
        beta_tau=beta_tau,
        gell_mann=GELL_MANN,
        theta=theta,
        tau_to_theta=PUBLISHED_TAU_TO_THETA,
        theta_to_tau=PUBLISHED_THETA_TO_TAU,
        derived_tau_to_theta=fwd,
        derived_theta_to_tau=back,
    )


def relation_residuals(
    coeffs: np.ndarray, source: tuple[np.ndarray, ...], target: tuple[np.ndarray, ...]
) -> np.ndarray:
    """max |target_j - sum_k coeffs[j, k] source_k| for every row j."""
    out = []
    for j, T in enumerate(target):
        combo = sum(coeffs[j, k] * source[k] for k in range(len(source)))
        out.append(float(np.max(np.abs(combo - T))))
    return np.array(out)
