from fractions import Fraction

from wmbkit import algebra as al
from wmbkit.constructors import catalog


def test_embedded_element_is_compatible():
    alg = catalog("PAIR2").alg
    m = al.embed(alg, {"(1,2)": 1})
    pairs = [(a, b) for a in alg.basis for b in alg.basis]
    assert al.is_compatible(m, pairs) is None
    assert m.lam_basis("(2,1)") == {"(1,1)": 1}
    assert m.rho_basis("(2,1)") == {"(2,2)": 1}


def test_incompatible_pair_detected():
    alg = catalog("PAIR2").alg
    bad = al.Multiplier(alg, lambda b: {b: 1}, lambda b: {})
    assert al.is_compatible(bad, [("(1,1)", "(1,1)")]) == ("(1,1)", "(1,1)")


def test_unit_of_groupoid_algebra_is_in_A():
    alg = catalog("PAIR2").alg
    one = al.combine(alg, [(1, al.embed(alg, {"(1,1)": 1})), (1, al.embed(alg, {"(2,2)": 1}))])
    assert al.is_in_A(one) == {"(1,1)": 1, "(2,2)": 1}
    assert all(one.lam_basis(b) == {b: 1} for b in alg.basis)


def test_check_algebra_reports():
    rep = al.check_algebra(catalog("PAIR2").alg)
    assert rep.associative and rep.idempotent and rep.nondegenerate
    zero = al.NonUnitalAlgebra("zero", lambda a, b: {}, ["z"])
    rep = al.check_algebra(zero)
    assert not rep.idempotent and not rep.nondegenerate


def test_check_algebra_catches_non_associative():
    # a*a = b, everything else zero except b*a = a
    def prod(x, y):
        return {("a", "a"): {"b": 1}, ("b", "a"): {"a": 1}}.get((x, y), {})
    alg = al.NonUnitalAlgebra("bad", prod, ["a", "b"])
    assert not al.check_algebra(alg).associative


def test_opposite_and_tensor():
    alg = catalog("PAIR2").alg
    op = al.opposite(alg)
    assert op.mul_basis("(2,1)", "(1,2)") == alg.mul_basis("(1,2)", "(2,1)")
    t = al.tensor(alg, alg)
    assert t.mul_basis(("(1,2)", "(1,1)"), ("(2,1)", "(1,2)")) == {("(1,1)", "(1,2)"): 1}


def test_legs_and_twist():
    x = {("a", "b"): Fraction(2), ("c", "d"): Fraction(-1)}
    assert al.tw(x) == {("b", "a"): 2, ("d", "c"): -1}
    assert al.tensor_elem({"a": 1}, {"b": 2}) == {("a", "b"): 2}
    y = al.leg_apply(x, 0, lambda k: {k.upper(): 1})
    assert y == {("A", "b"): 2, ("C", "d"): -1}
