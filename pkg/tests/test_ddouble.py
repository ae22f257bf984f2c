from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gencliff import _ddouble as dd

# away from underflow and overflow, where the transformations stop being error-free
doubles = st.one_of(
    st.just(0.0),
    st.floats(min_value=1e-100, max_value=1e100),
    st.floats(min_value=-1e100, max_value=-1e-100),
)


def exact(*parts):
    return sum(Fraction(float(p)) for p in parts)


@given(doubles, doubles)
def test_two_sum_is_error_free(a, b):
    s, e = dd.two_sum(np.float64(a), np.float64(b))
    assert exact(s, e) == Fraction(a) + Fraction(b)


@given(doubles, doubles)
def test_two_prod_is_error_free(a, b):
    p, e = dd.two_prod(np.float64(a), np.float64(b))
    assert exact(p, e) == Fraction(a) * Fraction(b)


@given(doubles, doubles, doubles, doubles)
def test_add_and_mul_accuracy(a, b, c, d):
    # build normalized double-double operands x = a + b', y = c + d'
    xh, xl = dd.two_sum(np.float64(a), np.float64(b) * 1e-17)
    yh, yl = dd.two_sum(np.float64(c), np.float64(d) * 1e-17)
    x, y = exact(xh, xl), exact(yh, yl)
    sh, sl = dd.add(xh, xl, yh, yl)
    assert abs(exact(sh, sl) - (x + y)) <= Fraction(2) ** -100 * (abs(x) + abs(y))
    ph, pl = dd.mul(xh, xl, yh, yl)
    assert abs(exact(ph, pl) - x * y) <= Fraction(2) ** -100 * abs(x * y)


@given(doubles, doubles, doubles)
def test_mul_split(a, b, c):
    yh, yl = dd.two_sum(np.float64(b), np.float64(c) * 1e-17)
    ah, al = dd.split(np.float64(a))
    assert exact(ah, al) == Fraction(a)
    ph, pl = dd.mul_split(np.float64(a), ah, al, yh, yl)
    want = Fraction(a) * exact(yh, yl)
    assert abs(exact(ph, pl) - want) <= Fraction(2) ** -100 * abs(want)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7, 12])
def test_roots_of_unity(m):
    rh, rl, ih, il = dd.roots_of_unity(m)
    for k in range(m):
        c, s = exact(rh[k], rl[k]), exact(ih[k], il[k])
        assert abs(c * c + s * s - 1) <= Fraction(2) ** -100
    # w^k are the powers of w = w^1 to double-double accuracy
    w = (rh[1:2], rl[1:2], ih[1:2], il[1:2])
    z = (rh[:1], rl[:1], ih[:1], il[:1])
    for k in range(m):
        gap = max(abs(exact(z[0][0], z[1][0]) - exact(rh[k], rl[k])), abs(exact(z[2][0], z[3][0]) - exact(ih[k], il[k])))
        assert gap <= Fraction(2) ** -95
        z = dd.cmul(z, w)


def test_scale_and_row_sums():
    x = dd.from_complex(np.array([1 / 3 + 2j / 7]))
    y = dd.cscale(x, 25, 7)
    want = (Fraction(1 / 3) * 25 / 7, Fraction(2 / 7) * 25 / 7)
    assert abs(exact(y[0][0], y[1][0]) - want[0]) <= Fraction(2) ** -100
    assert abs(exact(y[2][0], y[3][0]) - want[1]) <= Fraction(2) ** -100
    big = np.array([1e16, 1.0, -1e16, 1.0] * 2)[:, None]
    s = dd.csum_leading(dd.from_complex(big))
    assert exact(s[0][0], s[1][0]) == 4
    assert dd.to_complex(s)[0] == 4
