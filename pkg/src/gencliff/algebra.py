"""Element model and intrinsic operations of the generalized Clifford algebra.

The algebra Cl^(1/m)_d has generators e_1..e_d with e_j^m = e and
e_k e_l = w e_l e_k for k < l, w = exp(2 pi i / m).  Elements are stored as
dense complex coefficient vectors over the monomial basis
e_1^{j_1} ... e_d^{j_d}, indexed in mixed radix with j_1 most significant.

Basis-level products are computed with exact integer phases (powers of w
modulo m); complex numbers only appear when coefficients are accumulated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from numbers import Number
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import ContextMismatchError, ParameterError

DEFAULT_MAX_DIM = 4096
DEFAULT_MAX_N = 729
DEFAULT_ATOL = 1e-12

# rows per block in multiply(); bounds the temporary (rows x support) arrays
_MULTIPLY_BLOCK = 1 << 20


@lru_cache(maxsize=None)
def _roots(m: int) -> np.ndarray:
    roots = np.exp(2j * np.pi * np.arange(m) / m)
    roots[0] = 1.0
    roots.flags.writeable = False
    return roots


@dataclass(frozen=True)
class AlgebraContext:
    """Immutable descriptor of Cl^(1/m)_d.

    ``dim`` is the algebra dimension m^d and ``N`` the size of the matrices
    of the minimal faithful representation, m^floor((d+1)/2).
    """

    m: int
    d: int
    dim: int = field(init=False, repr=False)
    N: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dim", self.m**self.d)
        object.__setattr__(self, "N", self.m ** ((self.d + 1) // 2))

    @property
    def omega(self) -> complex:
        return complex(_roots(self.m)[1])

    @property
    def zeta(self) -> complex:
        """Principal primitive 2m-th root of unity, zeta^2 = omega."""
        return cmath.exp(1j * math.pi / self.m)

    @property
    def max_grade(self) -> int:
        return self.d * (self.m - 1)

    @property
    def roots(self) -> np.ndarray:
        """Read-only array of w^0, ..., w^(m-1)."""
        return _roots(self.m)

    def omega_pow(self, k: int) -> complex:
        return complex(_roots(self.m)[k % self.m])


def make_context(
    m: int,
    d: int,
    *,
    max_dim: int = DEFAULT_MAX_DIM,
    max_N: int = DEFAULT_MAX_N,
) -> AlgebraContext:
    """Validate (m, d) against the size caps and build the context."""
    for name, value, low in (("m", m, 2), ("d", d, 1)):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise ParameterError(f"{name} must be an integer, got {value!r}")
        if value < low:
            raise ParameterError(f"{name} must be >= {low}, got {value}")
    m, d = int(m), int(d)
    # compare in log space so absurd inputs do not build huge integers
    if d * math.log(m) > math.log(max_dim) + 1e-9:
        raise ParameterError(f"algebra dimension {m}^{d} exceeds cap {max_dim}")
    ctx = AlgebraContext(m, d)
    if ctx.N > max_N:
        raise ParameterError(f"representation size {ctx.N} exceeds cap {max_N}")
    return ctx


# --------------------------------------------------------------------------
# basis enumeration


class _Tables(NamedTuple):
    exponents: np.ndarray  # (dim, d) exponent tuples in linear-index order
    weights: np.ndarray  # (d,) mixed-radix place values, j_1 most significant
    grades: np.ndarray  # (dim,)
    inv_index: np.ndarray  # index of (-J) mod m
    inv_phase: np.ndarray  # q with E_J^{-1} = w^q E_{-J}
    lower: np.ndarray  # (d, d) strictly lower triangular ones


@lru_cache(maxsize=32)
def _tables(m: int, d: int) -> _Tables:
    dim = m**d
    weights = m ** np.arange(d - 1, -1, -1, dtype=np.int64)
    idx = np.arange(dim, dtype=np.int64)
    exponents = (idx[:, None] // weights[None, :]) % m
    grades = exponents.sum(axis=1)
    inv_index = ((-exponents) % m) @ weights
    # sum_{a<b} j_a j_b = ((sum j)^2 - sum j^2) / 2
    pair_sum = (grades**2 - (exponents**2).sum(axis=1)) // 2
    inv_phase = (-pair_sum) % m
    lower = np.tril(np.ones((d, d), dtype=np.int64), -1)
    tables = _Tables(exponents, weights, grades, inv_index, inv_phase, lower)
    for arr in tables:
        arr.flags.writeable = False
    return tables


def tables(ctx: AlgebraContext) -> _Tables:
    return _tables(ctx.m, ctx.d)


def _check_exponents(ctx: AlgebraContext, J: Sequence[int]) -> tuple[int, ...]:
    J = tuple(int(j) for j in J)
    if len(J) != ctx.d:
        raise ParameterError(f"exponent tuple {J} must have length d={ctx.d}")
    if any(j < 0 or j >= ctx.m for j in J):
        raise ParameterError(f"exponents {J} must lie in [0, {ctx.m - 1}]")
    return J


def index_of(ctx: AlgebraContext, J: Sequence[int]) -> int:
    """Linear index sum_a j_a m^(d-a) of an exponent tuple."""
    idx = 0
    for j in _check_exponents(ctx, J):
        idx = idx * ctx.m + j
    return idx


def exponents_of(ctx: AlgebraContext, index: int) -> tuple[int, ...]:
    if not 0 <= index < ctx.dim:
        raise ParameterError(f"index {index} outside [0, {ctx.dim - 1}]")
    digits = []
    for _ in range(ctx.d):
        index, j = divmod(index, ctx.m)
        digits.append(j)
    return tuple(reversed(digits))


def grade_of(J: Sequence[int]) -> int:
    return sum(J)


# --------------------------------------------------------------------------
# monomials with exact phases


class PhasedMonomial(NamedTuple):
    """w^phase * E_exponents, with the phase kept as an exact integer mod m."""

    phase: int
    exponents: tuple[int, ...]


def monomial_product(J: Sequence[int], K: Sequence[int], ctx: AlgebraContext) -> PhasedMonomial:
    """E_J E_K = w^q E_{(J+K) mod m} with q = -sum_{a<b} j_b k_a (mod m)."""
    J = _check_exponents(ctx, J)
    K = _check_exponents(ctx, K)
    q = 0
    for a in range(ctx.d):
        for b in range(a + 1, ctx.d):
            q -= J[b] * K[a]
    return PhasedMonomial(q % ctx.m, tuple((j + k) % ctx.m for j, k in zip(J, K)))


def monomial_inverse(J: Sequence[int], ctx: AlgebraContext) -> PhasedMonomial:
    """E_J^{-1} = w^q E_{(-J) mod m} with q = -sum_{a<b} j_a j_b (mod m)."""
    J = _check_exponents(ctx, J)
    q = 0
    for a in range(ctx.d):
        for b in range(a + 1, ctx.d):
            q -= J[a] * J[b]
    return PhasedMonomial(q % ctx.m, tuple((-j) % ctx.m for j in J))


# --------------------------------------------------------------------------
# elements


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An element sum_J u_J E_J; ``coeffs`` is a read-only complex128 array.

    ``==`` compares coefficientwise with absolute tolerance
    :data:`DEFAULT_ATOL`; use :meth:`isclose` for another tolerance.
    """

    context: AlgebraContext
    coeffs: np.ndarray

    __hash__ = None  # type: ignore[assignment]

    def isclose(self, other: AlgebraElement, atol: float = DEFAULT_ATOL) -> bool:
        _same_context(self, other)
        return bool(np.all(np.abs(self.coeffs - other.coeffs) <= atol))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.context == other.context and self.isclose(other)

    def __add__(self, other):
        other = _coerce(self.context, other)
        if other is None:
            return NotImplemented
        return linear_combine(1, self, 1, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self.context, other)
        if other is None:
            return NotImplemented
        return linear_combine(1, self, -1, other)

    def __rsub__(self, other):
        other = _coerce(self.context, other)
        if other is None:
            return NotImplemented
        return linear_combine(1, other, -1, self)

    def __neg__(self):
        return _wrap(self.context, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        if isinstance(other, Number):
            return _wrap(self.context, self.coeffs * complex(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return _wrap(self.context, self.coeffs * complex(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Number):
            return _wrap(self.context, self.coeffs / complex(other))
        return NotImplemented

    def __pow__(self, k: int):
        return power(self, k)

    def __repr__(self):
        return f"AlgebraElement(m={self.context.m}, d={self.context.d}, {format_element(self)})"

    def __str__(self):
        return format_element(self)


def _wrap(ctx: AlgebraContext, coeffs: np.ndarray) -> AlgebraElement:
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    coeffs.flags.writeable = False
    return AlgebraElement(ctx, coeffs)


def _coerce(ctx: AlgebraContext, value) -> AlgebraElement | None:
    if isinstance(value, AlgebraElement):
        return value
    if isinstance(value, Number):
        return scalar(ctx, complex(value))
    return None


def _same_context(*elements: AlgebraElement) -> AlgebraContext:
    ctx = elements[0].context
    for el in elements[1:]:
        if el.context != ctx:
            raise ContextMismatchError(
                f"elements from Cl(1/{ctx.m})_{ctx.d} and Cl(1/{el.context.m})_{el.context.d}"
            )
    return ctx


def from_coefficients(ctx: AlgebraContext, coeffs: Iterable[complex]) -> AlgebraElement:
    arr = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=np.complex128)
    if arr.shape != (ctx.dim,):
        raise ParameterError(f"expected {ctx.dim} coefficients, got shape {arr.shape}")
    return _wrap(ctx, arr)


def coefficient(U: AlgebraElement, J: Sequence[int]) -> complex:
    return complex(U.coeffs[index_of(U.context, J)])


def basis_element(ctx: AlgebraContext, J: Sequence[int]) -> AlgebraElement:
    coeffs = np.zeros(ctx.dim, dtype=np.complex128)
    coeffs[index_of(ctx, J)] = 1.0
    return _wrap(ctx, coeffs)


def zero(ctx: AlgebraContext) -> AlgebraElement:
    return _wrap(ctx, np.zeros(ctx.dim, dtype=np.complex128))


def scalar(ctx: AlgebraContext, value: complex) -> AlgebraElement:
    coeffs = np.zeros(ctx.dim, dtype=np.complex128)
    coeffs[0] = value
    return _wrap(ctx, coeffs)


def identity(ctx: AlgebraContext) -> AlgebraElement:
    return scalar(ctx, 1.0)


def generator(ctx: AlgebraContext, k: int) -> AlgebraElement:
    """The generator e_k, 1-based."""
    if not 1 <= k <= ctx.d:
        raise ParameterError(f"generator index {k} outside [1, {ctx.d}]")
    J = [0] * ctx.d
    J[k - 1] = 1
    return basis_element(ctx, J)


def phased_element(ctx: AlgebraContext, mono: PhasedMonomial) -> AlgebraElement:
    return ctx.omega_pow(mono.phase) * basis_element(ctx, mono.exponents)


def random_element(ctx: AlgebraContext, rng: np.random.Generator | int | None = None) -> AlgebraElement:
    """Coefficients with real and imaginary parts uniform on [-1, 1)."""
    rng = np.random.default_rng(rng)
    return _wrap(ctx, rng.uniform(-1, 1, ctx.dim) + 1j * rng.uniform(-1, 1, ctx.dim))


# --------------------------------------------------------------------------
# linear structure and product


def linear_combine(lam: complex, U: AlgebraElement, mu: complex, V: AlgebraElement) -> AlgebraElement:
    ctx = _same_context(U, V)
    return _wrap(ctx, complex(lam) * U.coeffs + complex(mu) * V.coeffs)


def multiply(U: AlgebraElement, V: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of :func:`monomial_product` over the supports of U and V."""
    ctx = _same_context(U, V)
    su = np.flatnonzero(U.coeffs)
    sv = np.flatnonzero(V.coeffs)
    out = np.zeros(ctx.dim, dtype=np.complex128)
    if su.size == 0 or sv.size == 0:
        return _wrap(ctx, out)
    t = tables(ctx)
    m = ctx.m
    EV = t.exponents[sv]
    v = V.coeffs[sv]
    rows = max(1, _MULTIPLY_BLOCK // sv.size)
    re = np.zeros(ctx.dim)
    im = np.zeros(ctx.dim)
    for start in range(0, su.size, rows):
        block = su[start : start + rows]
        EU = t.exponents[block]
        target = np.zeros((block.size, sv.size), dtype=np.int64)
        for a in range(ctx.d):
            target += ((EU[:, a, None] + EV[None, :, a]) % m) * t.weights[a]
        phase = (-(EU @ t.lower @ EV.T)) % m
        contrib = (U.coeffs[block, None] * v[None, :]) * ctx.roots[phase]
        flat = target.ravel()
        re += np.bincount(flat, weights=contrib.real.ravel(), minlength=ctx.dim)
        im += np.bincount(flat, weights=contrib.imag.ravel(), minlength=ctx.dim)
    out = re + 1j * im
    return _wrap(ctx, out)


@lru_cache(maxsize=None)
def _roots_ext(m: int) -> np.ndarray:
    two_pi = 8 * np.arctan(np.longdouble(1))
    k = np.arange(m, dtype=np.longdouble)
    roots = np.empty(m, dtype=np.clongdouble)
    roots.real = np.cos(two_pi * k / m)
    roots.imag = np.sin(two_pi * k / m)
    roots[0] = 1
    roots.flags.writeable = False
    return roots


def multiply_extended(ctx: AlgebraContext, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Product of raw coefficient vectors in extended (long double) precision.

    Used where long product chains amplify rounding (Faddeev-LeVerrier).
    Falls back to double precision on platforms without a wider long double.
    """
    t = tables(ctx)
    m = ctx.m
    roots = _roots_ext(m)
    sv = np.flatnonzero(v)
    out = np.zeros(ctx.dim, dtype=np.clongdouble)
    if sv.size == 0:
        return out
    EV = t.exponents[sv]
    vv = v[sv]
    twist = t.lower @ EV.T  # (d, |sv|)
    for j in np.flatnonzero(u):
        EJ = t.exponents[j]
        target = ((EJ[None, :] + EV) % m) @ t.weights
        phase = (-(EJ @ twist)) % m
        # K -> J+K is injective, so the fancy-indexed add has no collisions
        out[target] += u[j] * roots[phase] * vv
    return out


def power(U: AlgebraElement, k: int) -> AlgebraElement:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise ParameterError(f"exponent must be a nonnegative integer, got {k!r}")
    result = identity(U.context)
    base = U
    k = int(k)
    while k:
        if k & 1:
            result = multiply(result, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return result


def commutator(U: AlgebraElement, V: AlgebraElement) -> AlgebraElement:
    return multiply(U, V) - multiply(V, U)


# --------------------------------------------------------------------------
# grades


def grade_project(U: AlgebraElement, k: int) -> AlgebraElement:
    ctx = U.context
    if not 0 <= k <= ctx.max_grade:
        raise ParameterError(f"grade {k} outside [0, {ctx.max_grade}]")
    return _wrap(ctx, np.where(tables(ctx).grades == k, U.coeffs, 0))


def scalar_part(U: AlgebraElement) -> complex:
    return complex(U.coeffs[0])


def mod_grade_project(U: AlgebraElement, r: int) -> AlgebraElement:
    """Keep the components whose grade is congruent to r modulo m."""
    ctx = U.context
    if not 0 <= r < ctx.m:
        raise ParameterError(f"residue {r} outside [0, {ctx.m - 1}]")
    return _wrap(ctx, np.where(tables(ctx).grades % ctx.m == r, U.coeffs, 0))


def grade_automorphism(U: AlgebraElement, times: int = 1) -> AlgebraElement:
    """Multiply each grade-k component by w^(k * times)."""
    if times < 0:
        raise ParameterError(f"times must be >= 0, got {times}")
    ctx = U.context
    phases = ctx.roots[(tables(ctx).grades * times) % ctx.m]
    return _wrap(ctx, U.coeffs * phases)


# --------------------------------------------------------------------------
# conjugations and metric


def hermitian_conjugate(U: AlgebraElement) -> AlgebraElement:
    """Conjugate every coefficient and replace each monomial by its inverse."""
    ctx = U.context
    t = tables(ctx)
    out = np.empty(ctx.dim, dtype=np.complex128)
    out[t.inv_index] = np.conj(U.coeffs) * ctx.roots[t.inv_phase]
    return _wrap(ctx, out)


def underline(U: AlgebraElement) -> AlgebraElement:
    """2 <U>_0 - U: keeps the scalar part and flips the sign of every other grade."""
    out = -U.coeffs
    out[0] = U.coeffs[0]
    return _wrap(U.context, out)


def inner_product(U: AlgebraElement, V: AlgebraElement) -> complex:
    _same_context(U, V)
    return complex(np.vdot(U.coeffs, V.coeffs))


def norm(U: AlgebraElement) -> float:
    return float(np.linalg.norm(U.coeffs))


# --------------------------------------------------------------------------
# text and JSON forms


def format_monomial(J: Sequence[int]) -> str:
    """``e1^2*e3``; the identity monomial is ``e``."""
    parts = []
    for a, j in enumerate(J, start=1):
        if j == 1:
            parts.append(f"e{a}")
        elif j > 1:
            parts.append(f"e{a}^{j}")
    return "*".join(parts) if parts else "e"


def format_complex(z: complex) -> str:
    """``a+bi`` with 12 significant digits."""
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real:.12g}{sign}{abs(z.imag):.12g}i"


def format_element(U: AlgebraElement) -> str:
    """Canonical text form: nonzero terms in linear-index order."""
    terms = []
    for idx in np.flatnonzero(U.coeffs):
        J = exponents_of(U.context, int(idx))
        coeff = f"({format_complex(U.coeffs[idx])})"
        terms.append(coeff if not any(J) else f"{coeff}*{format_monomial(J)}")
    return " + ".join(terms) if terms else "0"


def element_to_json(U: AlgebraElement) -> dict:
    ctx = U.context
    return {
        "m": ctx.m,
        "d": ctx.d,
        "coeffs": [[float(c.real), float(c.imag)] for c in U.coeffs],
    }


def element_from_json(obj: dict, **caps) -> AlgebraElement:
    try:
        ctx = make_context(obj["m"], obj["d"], **caps)
        pairs = obj["coeffs"]
        coeffs = [complex(float(re), float(im)) for re, im in pairs]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"malformed element JSON: {exc}") from exc
    return from_coefficients(ctx, coeffs)
