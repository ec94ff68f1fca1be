import random

from hypothesis import given, strategies as st

from qgr.chebyshev import cheb_first, cheb_generalized, cheb_second
from qgr.laurent import LaurentPoly


def _t():
    t = LaurentPoly.var(1, 0)
    return t, t + LaurentPoly.monomial((-1,))


def test_small_values():
    assert cheb_first(0, 5) == 2 and cheb_first(1, 5) == 5
    assert cheb_second(0, 5) == 1 and cheb_second(1, 5) == 5 and cheb_second(2, 5) == 24
    assert cheb_generalized([7]) == 7
    assert cheb_generalized([3, 4]) == 11


def test_first_kind_on_t_plus_inverse():
    t, x = _t()
    for l in range(1, 13):
        assert cheb_first(l, x) == t ** l + LaurentPoly.monomial((-l,))


def test_first_second_relation():
    _, x = _t()
    for l in range(2, 11):
        assert cheb_first(l, x) == cheb_second(l, x) - cheb_second(l - 2, x)


def _det(m):
    # cofactor expansion along the first row
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)) if m[0][j])


def _tridiagonal(xs):
    n = len(xs)
    return [[xs[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def test_generalized_matches_tridiagonal_determinant():
    rng = random.Random(20260101)
    for l in range(1, 9):
        for _ in range(100):
            xs = [rng.randint(-9, 9) for _ in range(l)]
            assert cheb_generalized(xs) == _det(_tridiagonal(xs))
            assert cheb_generalized(xs) == cheb_generalized(xs[::-1])


@given(st.integers(0, 9), st.integers(-20, 20))
def test_second_kind_is_constant_generalized(l, x):
    assert cheb_second(l, x) == cheb_generalized([x] * l)
