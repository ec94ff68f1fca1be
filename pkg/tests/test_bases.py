import pytest

from qgr import bases
from qgr.chebyshev import cheb_first
from qgr.grassmannian import cc_character, transverse_character
from qgr.laurent import u_vars
from qgr.reps import CQObject, tube_point


def test_generic_variable(kq, a21):
    u1, u2 = u_vars(2)
    assert bases.generic_variable(kq) == (u1 ** 2 + u2 ** 2 + 1) * (u1 * u2) ** -1
    assert bases.generic_variable(a21) == cc_character(tube_point(a21, "band", 0, 1, 1))


def test_zero_defect_elements(kq, a21):
    base = bases.tube_base(a21, "A")
    e = bases.b_element_defect_zero(base, 1, 0)
    assert e.value == bases.generic_variable(a21) == cc_character(base.with_length(2)) - 1
    assert bases.b_element_defect_zero(base, 0, 1).value == cc_character(base.with_length(1))
    kb = bases.tube_base(kq, "band")
    assert bases.b_element_defect_zero(kb, 2, 0).value == cheb_first(2, bases.generic_variable(kq))


def test_difference_property(kq, a21):
    for q in (kq, a21):
        for name in bases.exceptional_tubes(q) + ["band"]:
            for l in (1, 2, 3):
                assert all(r.passed for r in bases.verify_difference_property(bases.tube_base(q, name), l))


def test_difference_theorem(a21):
    base = bases.tube_base(a21, "A")
    for l in (1, 2):
        for k in (0, 1):
            assert bases.verify_theorem_difference(base, l, k).passed


def test_multiplication_examples(kq, a21, a31):
    assert bases.verify_multiplication_formula(bases.tube_base(a21, "A"), 2, 2, 0, 1).passed
    assert bases.verify_multiplication_formula(bases.tube_base(kq, "band"), 1, 1, 0, 1).passed
    assert bases.verify_multiplication_formula(bases.tube_base(a31, "A"), 3, 2, 1, 0).passed
    with pytest.raises(ValueError):
        bases.verify_multiplication_formula(bases.tube_base(a21, "A"), 1, 1, 0, 0)


def test_key_identity(a21):
    base = bases.tube_base(a21, "A")
    r = bases.verify_key_identity(base, 1)
    assert r.passed and r.lhs == r.rhs


def test_transverse_is_tube_independent(a21):
    values = {transverse_character(tube_point(a21, "band", 0, 1, lam)) for lam in (1, "inf")}
    values.add(transverse_character(tube_point(a21, "A", 0, 2)))
    values.add(transverse_character(tube_point(a21, "A", 1, 2)))
    assert len(values) == 1


def test_ext_orthogonality(a21):
    r0, r1 = tube_point(a21, "A", 0, 1), tube_point(a21, "A", 1, 1)
    assert not bases.ext_orthogonal(r0, r1)
    assert bases.ext_orthogonal(r0, r0)


def test_basis_sets_small(kq):
    sets = bases.basis_sets(kq, (2, 2), 4)
    for name in "BGC":
        elems = sets.by_name(name)
        dens = [e.den for e in elems]
        assert len(dens) == len(set(dens))
    assert bases.den_multiset(sets.B) == bases.den_multiset(sets.G) == bases.den_multiset(sets.C)


def test_geometrization(kq):
    assert all(r.passed for r in bases.geometrization_check(kq, (2, 2), 3))


def test_positivity(kq, a21):
    b2 = bases.b_element_defect_zero(bases.tube_base(kq, "band"), 2, 0)
    assert bases.positivity_spotcheck(b2, (0,), kq).passed
    xd = bases.generic_variable(a21)
    assert bases.positivity_spotcheck(xd, (0, 1), a21).passed
    r = bases.positivity_spotcheck(xd * cc_character(CQObject(a21, (), (0,))), (), a21)
    assert r.passed


def test_report_json(a21):
    r = bases.verify_key_identity(bases.tube_base(a21, "A"), 2)
    obj = r.to_json_obj()
    assert obj["pass"] is True and obj["identity"] == "key_identity"
