import pytest

from wmbkit import algebra as al
from wmbkit import base
from wmbkit import exactlin as xl
from wmbkit import modules as md
from wmbkit.base import PIR, pi
from wmbkit.constructors import catalog


@pytest.fixture
def pair2():
    return catalog("PAIR2")


def test_module_checks(pair2):
    assert md.check_module(md.self_module(pair2)).ok
    assert md.check_module(md.column_module(pair2)).ok
    z = md.check_module(md.zero_module(pair2.alg))
    assert z.associative is None and not z.idempotent


def test_extend_action_by_elements_and_unit(pair2):
    v = md.self_module(pair2)
    for a in pair2.basis:
        assert md.extend_action(v, al.embed(pair2.alg, {a: 1})) == v.matrix(a)
    one = al.combine(pair2.alg, [(1, al.embed(pair2.alg, {"(1,1)": 1})), (1, al.embed(pair2.alg, {"(2,2)": 1}))])
    assert md.extend_action(v, one) == xl.identity(4)


def test_extend_action_by_piR_is_right_identity_at_source(pair2):
    v = md.self_module(pair2)
    for a, ident in (("(1,2)", "(2,2)"), ("(2,1)", "(1,1)")):
        assert md.extend_action(v, pi(pair2, PIR, a)) == v.matrix(ident)


def test_extend_action_rejects_non_idempotent_module(pair2):
    with pytest.raises(base.IllDefined):
        md.extend_action(md.zero_module(pair2.alg), al.embed(pair2.alg, {"(1,1)": 1}))


def test_R_as_module_table(pair2):
    # brute force: r . b = piR(r b); with r_1 = piR((1,1)) = e1 and r_2 = piR((1,2)) = e2
    R = md.r_as_a_module(pair2)
    table = {(k, b): R.act(k, b) for k in range(2) for b in pair2.basis}
    assert table[0, "(1,2)"] == {1: 1}
    assert table[1, "(1,2)"] == {}
    assert table[0, "(1,1)"] == {0: 1}
    assert table[1, "(2,1)"] == {0: 1}
    assert md.check_module(R).ok


def test_C2_R_is_trivial():
    R = md.r_as_a_module(catalog("C2"))
    assert R.dim == 1 and R.act(0, "g") == {0: 1}


def test_restriction_to_R(pair2):
    for v in (md.self_module(pair2), md.column_module(pair2), md.r_as_a_module(pair2)):
        rb = md.restrict_to_R(pair2, v)
        assert rb.ok, rb.checks


def test_column_module_actions_are_idempotents(pair2):
    rb = md.restrict_to_R(pair2, md.column_module(pair2))
    for m in rb.left + rb.right:
        assert xl.matmul(m, m) == m


def test_functoriality(pair2):
    v, c = md.self_module(pair2), md.column_module(pair2)
    assert len(md.hom_A(v, c)) == 2
    assert md.check_functoriality(pair2, v, c) is None
    assert md.check_functoriality(pair2, c, v) is None


def test_tensor_dimensions():
    assert md.tensor_over_R(catalog("PAIR2"), md.self_module(catalog("PAIR2")),
                            md.self_module(catalog("PAIR2"))).module.dim == 8
    c2 = catalog("C2")
    assert md.tensor_over_R(c2, md.self_module(c2), md.self_module(c2)).module.dim == 4


def test_monoidal_R_V_R(pair2):
    R, v = md.r_as_a_module(pair2), md.self_module(pair2)
    rep = md.verify_monoidal(pair2, R, v, R)
    assert rep.ok, rep.statuses()


def test_monoidal_with_column_module(pair2):
    c = md.column_module(pair2)
    rep = md.verify_monoidal(pair2, c, md.self_module(pair2), c)
    assert rep.ok, rep.statuses()


def test_lazy_instances_are_rejected():
    with pytest.raises(al.UnsupportedBackend):
        md.r_as_a_module(catalog("ZFUN"))
