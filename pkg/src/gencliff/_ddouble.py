"""Double-double arithmetic on numpy arrays.

A real value is carried as an unevaluated sum ``hi + lo`` of two doubles with
``|lo| <= ulp(hi) / 2``, about 106 significant bits.  The building blocks are
the error-free transformations TwoSum (Knuth) and TwoProduct with Veltkamp
splitting (Dekker), as in the QD library.  Plain float64 keeps the numpy
loops vectorized, which makes this several times faster than long double.

The transformations are exact as long as no intermediate underflows into the
subnormal range or overflows (splitting overflows near 1e300); callers check
for non-finite results.

A complex value is a 4-tuple ``(re_hi, re_lo, im_hi, im_lo)`` of arrays.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from functools import lru_cache

import numpy as np

DTYPE = np.float64
_SPLITTER = DTYPE(2**27 + 1)  # Veltkamp constant for a 53 bit significand

Complex2 = tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    """TwoSum for |a| >= |b|."""
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def add(xh, xl, yh, yl):
    """Double-double addition with error O(eps^2 (|x| + |y|)).

    This is the cheap ("sloppy") variant: under heavy cancellation the
    result is not accurate relative to |x + y|, only relative to the
    operands, which is the bound the callers here need.
    """
    s, e = two_sum(xh, yh)
    return quick_two_sum(s, e + (xl + yl))


def split(a):
    """Veltkamp split a = hi + lo with both halves of half the significand."""
    return _split(a)


def mul_split(a, ah, al, yh, yl):
    """a * (yh + yl) for a long double a given with its split (ah, al)."""
    p = a * yh
    bh, bl = _split(yh)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return quick_two_sum(p, e + a * yl)


def mul(xh, xl, yh, yl):
    p, e = two_prod(xh, yh)
    return quick_two_sum(p, e + (xh * yl + xl * yh))


def cadd(x: Complex2, y: Complex2) -> Complex2:
    return (*add(x[0], x[1], y[0], y[1]), *add(x[2], x[3], y[2], y[3]))


def cmul(x: Complex2, y: Complex2) -> Complex2:
    rr = mul(x[0], x[1], y[0], y[1])
    ii = mul(x[2], x[3], y[2], y[3])
    ri = mul(x[0], x[1], y[2], y[3])
    ir = mul(x[2], x[3], y[0], y[1])
    return (*add(rr[0], rr[1], -ii[0], -ii[1]), *add(ri[0], ri[1], ir[0], ir[1]))


def cscale(x: Complex2, num: int, den: int) -> Complex2:
    """x * num / den for small positive integers."""
    out = []
    for h, l in ((x[0], x[1]), (x[2], x[3])):
        h, l = mul(h, l, DTYPE(num), DTYPE(0))
        q1 = h / DTYPE(den)
        p, e = two_prod(q1, DTYPE(den))
        q2 = (((h - p) - e) + l) / DTYPE(den)
        out.extend(quick_two_sum(q1, q2))
    return tuple(out)


def csum_leading(x: Complex2) -> Complex2:
    """Sum a complex double-double array along axis 0 by pairwise reduction.

    The leading dimension must be a power of two.
    """
    while x[0].shape[0] > 1:
        half = x[0].shape[0] // 2
        x = cadd(tuple(a[:half] for a in x), tuple(a[half:] for a in x))
    return tuple(a[0] for a in x)


def from_complex(z: np.ndarray) -> Complex2:
    """Exact conversion of complex128 data (lo parts zero)."""
    z = np.asarray(z, dtype=np.complex128)
    zero = np.zeros(z.shape, dtype=DTYPE)
    return z.real.astype(DTYPE), zero, z.imag.astype(DTYPE), zero.copy()


def to_complex(x: Complex2) -> np.ndarray:
    return (x[0] + x[1]) + 1j * (x[2] + x[3])


_DIGITS = 60
_EPSILON = Decimal(10) ** -(_DIGITS + 5)


def _decimal_pi() -> Decimal:
    # Machin's formula, pi = 16 atan(1/5) - 4 atan(1/239)
    def atan_inv(n: int) -> Decimal:
        x = Decimal(1) / n
        x2 = x * x
        total, term, k = Decimal(0), x, 0
        while term > _EPSILON:
            total += term / (2 * k + 1) if k % 2 == 0 else -term / (2 * k + 1)
            term *= x2
            k += 1
        return total

    return 16 * atan_inv(5) - 4 * atan_inv(239)


def _decimal_cos_sin(x: Decimal) -> tuple[Decimal, Decimal]:
    cos, sin = Decimal(0), Decimal(0)
    term, k = Decimal(1), 0
    while abs(term) > _EPSILON:
        if k % 2 == 0:
            cos += term if k % 4 == 0 else -term
        else:
            sin += term if k % 4 == 1 else -term
        k += 1
        term = term * x / k
    return cos, sin


def _split_decimal(value: Decimal) -> tuple[float, float]:
    hi = DTYPE(str(value))
    exact_hi = Decimal(np.format_float_positional(hi, unique=False, precision=80, trim="-"))
    return hi, DTYPE(str(value - exact_hi))


@lru_cache(maxsize=None)
def roots_of_unity(m: int) -> Complex2:
    """exp(2 pi i k / m), k = 0..m-1, correct to double-double precision."""
    parts = np.zeros((4, m), dtype=DTYPE)
    with localcontext() as dec:
        dec.prec = _DIGITS
        two_pi = 2 * _decimal_pi()
        for k in range(m):
            cos, sin = _decimal_cos_sin(two_pi * k / m)
            parts[0, k], parts[1, k] = _split_decimal(cos)
            parts[2, k], parts[3, k] = _split_decimal(sin)
    for row in parts:
        row.flags.writeable = False
    return tuple(parts)
