import itertools

import pytest
from hypothesis import given, strategies as st

from qgr.quiver import (
    NotAffineError,
    QuiverError,
    affine_a,
    classify_affine,
    coxeter_transform,
    defect,
    enumerate_roots,
    euler_form,
    is_real_root,
    parse_quiver,
    quiver_from_alias,
    tits_form,
)


def test_parse_text_and_json():
    k = parse_quiver("vertices:2 / arrows: 1 2, 1 2")
    assert k.vertex_count == 2 and k.arrows == ((0, 1), (0, 1))
    a = parse_quiver("vertices:3\narrows: 1 2, 2 3, 1 3")
    assert a == quiver_from_alias("a21")
    assert parse_quiver(k.to_dict().__repr__().replace("'", '"')) == k


def test_cycle_rejected():
    with pytest.raises(QuiverError):
        parse_quiver("vertices:2 / arrows: 1 2, 2 1")


def test_unknown_alias():
    with pytest.raises(ValueError):
        quiver_from_alias("e8")


def test_euler_form_examples(kq):
    assert euler_form(kq, (1, 0), (0, 1)) == -2
    assert euler_form(kq, (1, 1), (1, 2)) == -1
    assert euler_form(kq, (3, 5), (0, 0)) == 0


def test_delta():
    assert classify_affine(quiver_from_alias("kronecker")).delta == (1, 1)
    assert classify_affine(quiver_from_alias("a21")).delta == (1, 1, 1)
    assert classify_affine(affine_a(3, 2)).delta == (1,) * 5
    with pytest.raises(NotAffineError):
        classify_affine(parse_quiver("vertices:2 / arrows: 1 2"))


def test_defect(kq):
    assert defect(kq, (1, 1)) == 0
    assert defect(kq, (1, 0)) == 1
    assert defect(kq, (1, 2)) == -1


def _coxeter_oracle(q, beta):
    # c(beta) is characterised by <gamma, c(beta)> = -<beta, gamma> on a basis
    n = q.vertex_count
    for cand in itertools.product(range(-6, 7), repeat=n):
        if all(euler_form(q, q.simple(g), cand) == -euler_form(q, beta, q.simple(g)) for g in range(n)):
            return cand
    return None


@pytest.mark.parametrize("name", ["kronecker", "a21"])
def test_coxeter_against_oracle(name):
    q = quiver_from_alias(name)
    for i in range(q.vertex_count):
        beta = q.simple(i)
        assert coxeter_transform(q, beta) == _coxeter_oracle(q, beta)


def test_coxeter_examples(kq, a21):
    assert coxeter_transform(kq, (0, 1)) == (-2, -1)
    assert coxeter_transform(kq, (0, 1), -1) == (2, 3)
    assert coxeter_transform(kq, (1, 1)) == (1, 1)
    assert coxeter_transform(a21, (1, 1, 1), 5) == (1, 1, 1)
    assert coxeter_transform(a21, (2, 0, 1), 0) == (2, 0, 1)


def test_roots_kronecker(kq):
    roots = dict(enumerate_roots(kq, (2, 2)))
    assert roots == {(1, 0): "real", (0, 1): "real", (2, 1): "real", (1, 2): "real",
                     (1, 1): "imaginary", (2, 2): "imaginary"}
    assert is_real_root(kq, (0, 1)) and not is_real_root(kq, (2, 2))


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.integers(-3, 3))
def test_euler_form_bilinear(e, f, g, c):
    q = quiver_from_alias("a21")
    ef = [x + c * y for x, y in zip(e, f)]
    assert euler_form(q, ef, g) == euler_form(q, e, g) + c * euler_form(q, f, g)
    assert euler_form(q, g, ef) == euler_form(q, g, e) + c * euler_form(q, g, f)
    assert tits_form(q, e) == euler_form(q, e, e)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 4))
def test_delta_radical_and_fixed(r, s, l):
    q = affine_a(r, s)
    delta = classify_affine(q).delta
    d = tuple(l * x for x in delta)
    assert tits_form(q, d) == 0
    assert coxeter_transform(q, d) == d
    assert all(euler_form(q, d, q.simple(i)) + euler_form(q, q.simple(i), d) == 0 for i in range(q.vertex_count))


@given(st.lists(st.integers(0, 3), min_size=3, max_size=3), st.integers(-2, 2))
def test_coxeter_preserves_form(d, k):
    q = quiver_from_alias("a21")
    c = coxeter_transform(q, d, k)
    assert tits_form(q, c) == tits_form(q, d)
    assert coxeter_transform(q, c, -k) == tuple(d)
