"""Basis-free trace, characteristic polynomial, determinant, adjugate and inverse.

Characteristic polynomial convention:

    phi_U(x) = Det(x e - U) = x^N - C_1 x^(N-1) - ... - C_N

The coefficients come from the Faddeev-LeVerrier recursion run inside the
algebra,

    U_1 = U,   C_k = (N / k) <U_k>_0,   U_{k+1} = U (U_k - C_k e),

so that Det(U) = (-1)^(N+1) C_N and Adj(U) = (-1)^(N+1) (U_{N-1} - C_{N-1} e).
Each C_k is a small difference of large partial products, so rounding in
the iterates is amplified by roughly ||U||^N / |Det(U)|, which reaches 1e8
for unlucky elements at N = 25.  For dim <= 512 the recursion therefore runs
in double-double arithmetic (about 106 bits) on a dense left-multiplication
layout; larger algebras fall back to a single long double pass.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _ddouble as dd
from .algebra import (
    AlgebraContext,
    AlgebraElement,
    coefficient,
    from_coefficients,
    identity,
    multiply,
    multiply_extended,
    norm,
    scalar_part,
    tables,
    underline,
)
from .errors import ParameterError, SingularElementError

OVERFLOW_WARN_NORM = 1e3
# the double-double path keeps several dim x dim float64 arrays per step
DOUBLE_DOUBLE_MAX_DIM = 512


@dataclass(frozen=True)
class CharPolyResult:
    context: AlgebraContext
    C: np.ndarray  # C[k-1] = C_k, k = 1..N
    last_iterates: tuple[AlgebraElement, AlgebraElement]  # (U_{N-1}, U_N)

    @property
    def N(self) -> int:
        return self.context.N

    @property
    def sign(self) -> int:
        return 1 if self.N % 2 else -1

    @property
    def det(self) -> complex:
        return self.sign * complex(self.C[-1])

    def polynomial(self) -> np.ndarray:
        """Monic coefficients of phi_U, highest degree first."""
        return np.concatenate(([1.0 + 0j], -self.C))

    def evaluate(self, lam: complex) -> complex:
        acc = 1.0 + 0j
        for c in self.C:
            acc = acc * lam - c
        return complex(acc)


def trace_op(U: AlgebraElement) -> complex:
    """Trace of the representing matrix, N <U>_0."""
    return U.context.N * scalar_part(U)


PRECISIONS = ("auto", "double-double", "long-double")


def faddeev_leverrier(U: AlgebraElement, precision: str = "auto") -> CharPolyResult:
    """Characteristic data of U from the recursion.

    ``precision`` selects the arithmetic: "double-double" (dim <= 512 only),
    "long-double", or "auto", which uses double-double where available and
    falls back to long double for larger algebras or on overflow.
    """
    if precision not in PRECISIONS:
        raise ParameterError(f"precision must be one of {', '.join(PRECISIONS)}")
    ctx = U.context
    if precision == "double-double" and ctx.dim > DOUBLE_DOUBLE_MAX_DIM:
        raise ParameterError(f"double-double recursion needs dim <= {DOUBLE_DOUBLE_MAX_DIM}")
    if norm(U) > OVERFLOW_WARN_NORM:
        warnings.warn(
            f"||U|| = {norm(U):.3g} > {OVERFLOW_WARN_NORM:g}; iterates grow like ||U||^k, "
            "consider rescaling",
            RuntimeWarning,
            stacklevel=2,
        )
    if precision != "long-double" and ctx.dim <= DOUBLE_DOUBLE_MAX_DIM:
        with np.errstate(over="ignore", invalid="ignore"):
            result = _faddeev_leverrier_double_double(U)
        # splitting overflows near 1e300; long double has the range for it
        if precision == "double-double" or np.isfinite(result.C).all():
            return result
    return _faddeev_leverrier_extended(U)


@lru_cache(maxsize=16)
def _left_multiplication_layout(ctx: AlgebraContext) -> tuple[np.ndarray, np.ndarray]:
    """Index tables of (U V)[t] = sum_K u[src[K, t]] w^q[K, t] v[K].

    Returns ``src`` and ``take = q * dim + K``, an index into the flattened
    table of w^q v[K].  Both have a leading axis padded to a power of two for
    pairwise summation; padded rows index a zero slot at the end of the
    flattened tables.
    """
    m, dim = ctx.m, ctx.dim
    tab = tables(ctx)
    E = tab.exponents
    rows = 1 << (dim - 1).bit_length()
    J = (E[None, :, :] - E[:, None, :]) % m  # J[K, t] with J + K = T
    src = J @ tab.weights
    twist = E @ tab.lower.T  # twist[K, b] = sum_{a<b} K_a
    q = (-(J * twist[:, None, :]).sum(axis=2)) % m
    take = q * dim + np.arange(dim)[:, None]
    src = np.pad(src, ((0, rows - dim), (0, 0)), constant_values=dim)
    take = np.pad(take, ((0, rows - dim), (0, 0)), constant_values=m * dim)
    src.flags.writeable = False
    take.flags.writeable = False
    return src, take


class _DoubleDoubleLeftMultiplier:
    """V -> U V in double-double arithmetic for a fixed element U.

    The coefficients of U are exact doubles; they are gathered into the dense
    left-multiplication layout and split once.  Each product then multiplies
    the exact u[j] by the double-double w^q v[K].
    """

    def __init__(self, U: AlgebraElement):
        ctx = U.context
        self.src, self.take = _left_multiplication_layout(ctx)
        self.roots = dd.roots_of_unity(ctx.m)
        coeffs = np.append(U.coeffs, 0)  # slot dim is the padding zero
        self.ur = coeffs.real.astype(dd.DTYPE)[self.src]
        self.ui = coeffs.imag.astype(dd.DTYPE)[self.src]
        self.ur_split = dd.split(self.ur)
        self.ui_split = dd.split(self.ui)

    def __call__(self, v: dd.Complex2) -> dd.Complex2:
        # table of w^q v[K], flattened as q * dim + K, plus a zero slot
        w = dd.cmul(tuple(r[:, None] for r in self.roots), tuple(a[None, :] for a in v))
        w = tuple(np.append(a.ravel(), 0).take(self.take) for a in w)
        rr = dd.mul_split(self.ur, *self.ur_split, w[0], w[1])
        ii = dd.mul_split(self.ui, *self.ui_split, w[2], w[3])
        ri = dd.mul_split(self.ur, *self.ur_split, w[2], w[3])
        ir = dd.mul_split(self.ui, *self.ui_split, w[0], w[1])
        terms = (*dd.add(rr[0], rr[1], -ii[0], -ii[1]), *dd.add(ri[0], ri[1], ir[0], ir[1]))
        return dd.csum_leading(terms)


def _faddeev_leverrier_double_double(U: AlgebraElement) -> CharPolyResult:
    ctx = U.context
    N = ctx.N
    left = _DoubleDoubleLeftMultiplier(U)
    u = dd.from_complex(U.coeffs)
    C = np.zeros(N, dtype=np.complex128)
    Uk = u
    prev = u
    for k in range(1, N + 1):
        c = dd.cscale(tuple(a[:1] for a in Uk), N, k)
        C[k - 1] = dd.to_complex(c)[0]
        if k == N:
            break
        prev = Uk
        shifted = tuple(a.copy() for a in Uk)
        head = dd.cadd(tuple(a[:1] for a in Uk), tuple(-a for a in c))
        for a, h in zip(shifted, head):
            a[0] = h[0]
        Uk = left(shifted)
    C.flags.writeable = False
    prev_el = from_coefficients(ctx, dd.to_complex(prev))
    last_el = from_coefficients(ctx, dd.to_complex(Uk))
    return CharPolyResult(ctx, C, (prev_el, last_el))


def _faddeev_leverrier_extended(U: AlgebraElement) -> CharPolyResult:
    ctx = U.context
    N = ctx.N
    u = U.coeffs.astype(np.clongdouble)
    C = np.zeros(N, dtype=np.clongdouble)
    Uk = u
    prev = u
    for k in range(1, N + 1):
        C[k - 1] = Uk[0] * N / k
        if k == N:
            break
        prev = Uk
        shifted = Uk.copy()
        shifted[0] -= C[k - 1]
        Uk = multiply_extended(ctx, u, shifted)
    C = C.astype(np.complex128)
    C.flags.writeable = False
    prev_el = from_coefficients(ctx, prev.astype(np.complex128))
    last_el = from_coefficients(ctx, Uk.astype(np.complex128))
    return CharPolyResult(ctx, C, (prev_el, last_el))


def determinant(U: AlgebraElement, charpoly: CharPolyResult | None = None) -> complex:
    return (charpoly or faddeev_leverrier(U)).det


def adjugate(U: AlgebraElement, charpoly: CharPolyResult | None = None) -> AlgebraElement:
    ctx = U.context
    if ctx.N < 2:
        raise ParameterError("adjugate needs N >= 2")
    cp = charpoly or faddeev_leverrier(U)
    U_prev = cp.last_iterates[0]
    return cp.sign * (U_prev - complex(cp.C[-2]) * identity(ctx))


def singularity_threshold(U: AlgebraElement, rel: float = 1e-10) -> float:
    return rel * max(1.0, norm(U)) ** U.context.N


def inverse(U: AlgebraElement, rel_tol: float = 1e-10) -> AlgebraElement:
    """Adj(U) / Det(U); raises SingularElementError when |Det| is below threshold."""
    cp = faddeev_leverrier(U)
    det = cp.det
    threshold = singularity_threshold(U, rel_tol)
    if not abs(det) > threshold:
        raise SingularElementError(det, threshold)
    return adjugate(U, cp) / det


def char_poly_eval(U: AlgebraElement, lam: complex, charpoly: CharPolyResult | None = None) -> complex:
    return (charpoly or faddeev_leverrier(U)).evaluate(complex(lam))


# --------------------------------------------------------------------------
# closed forms for Cl^(1/3)_2


@dataclass(frozen=True)
class TernaryClosedForms:
    """Closed-form characteristic data for m=3, d=2.

    The ``*_q`` fields use the flattened variants in which nested
    underlines have been expanded.  Scalars are returned as complex numbers;
    ``det_element``/``det_q_element`` keep the full product so callers can
    check it is indeed scalar.
    """

    C2: complex
    det: complex
    adj: AlgebraElement
    C2q: complex
    detq: complex
    adjq: AlgebraElement
    det0: complex
    det_element: AlgebraElement
    detq_element: AlgebraElement


def _require_ternary_plane(ctx: AlgebraContext) -> None:
    if (ctx.m, ctx.d) != (3, 2):
        raise ParameterError(f"closed forms exist only for m=3, d=2; got m={ctx.m}, d={ctx.d}")


def adjugate_numerator(U: AlgebraElement) -> AlgebraElement:
    """-U^2 - 3 U U_ + 3 (U^2)_ + 9 (U U_)_, with X_ = underline(X); equals 8 Adj(U)."""
    _require_ternary_plane(U.context)
    U2 = multiply(U, U)
    UuU = multiply(U, underline(U))
    return -U2 - 3 * UuU + 3 * underline(U2) + 9 * underline(UuU)


def adjugate_numerator_flat(U: AlgebraElement) -> AlgebraElement:
    """-U^2 - 6 (U^2)_ + 6 U U_ + 9 (U_)^2; the nested underline removed."""
    _require_ternary_plane(U.context)
    U2 = multiply(U, U)
    uU = underline(U)
    return -U2 - 6 * underline(U2) + 6 * multiply(U, uU) + 9 * multiply(uU, uU)


def det_from_coefficients(U: AlgebraElement) -> complex:
    """Explicit cubic polynomial in the nine coefficients u_jk."""
    _require_ternary_plane(U.context)
    u = {(j, k): coefficient(U, (j, k)) for j in range(3) for k in range(3)}
    w = U.context.omega
    cubes = sum(c**3 for c in u.values())
    plain = (
        u[0, 0] * u[0, 1] * u[0, 2]
        + u[1, 0] * u[1, 1] * u[1, 2]
        + u[0, 0] * u[1, 0] * u[2, 0]
        + u[0, 1] * u[1, 1] * u[2, 1]
        + u[0, 2] * u[1, 2] * u[2, 2]
        + u[2, 0] * u[2, 1] * u[2, 2]
    )
    with_w = u[0, 1] * u[1, 2] * u[2, 0] + u[0, 2] * u[1, 0] * u[2, 1] + u[0, 0] * u[1, 1] * u[2, 2]
    with_w2 = u[0, 2] * u[1, 1] * u[2, 0] + u[0, 0] * u[1, 2] * u[2, 1] + u[0, 1] * u[1, 0] * u[2, 2]
    return complex(cubes - 3 * plain - 3 * w * with_w - 3 * w * w * with_w2)


def ternary_d2_closed_forms(U: AlgebraElement) -> TernaryClosedForms:
    ctx = U.context
    _require_ternary_plane(ctx)
    U2 = multiply(U, U)
    uU = underline(U)
    UuU = multiply(U, uU)
    C2 = -3 / 8 * scalar_part(U2 + underline(U2) + 3 * UuU + 3 * underline(UuU))
    C2q = -3 / 8 * scalar_part(U2 - 2 * underline(U2) + 6 * UuU + 3 * multiply(uU, uU))
    adj = adjugate_numerator(U) / 8
    adjq = adjugate_numerator_flat(U) / 8
    det_el = multiply(U, adj)
    detq_el = multiply(U, adjq)
    return TernaryClosedForms(
        C2=C2,
        det=scalar_part(det_el),
        adj=adj,
        C2q=C2q,
        detq=scalar_part(detq_el),
        adjq=adjq,
        det0=det_from_coefficients(U),
        det_element=det_el,
        detq_element=detq_el,
    )


def ternary_inverse(U: AlgebraElement, flat: bool = False) -> AlgebraElement:
    num = adjugate_numerator_flat(U) if flat else adjugate_numerator(U)
    det = scalar_part(multiply(U, num)) / 8
    threshold = singularity_threshold(U)
    if not abs(det) > threshold:
        raise SingularElementError(det, threshold)
    return num / (8 * det)
