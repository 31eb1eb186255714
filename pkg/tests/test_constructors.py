import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from wmbkit import antipode as ap
from wmbkit import constructors as cs
from wmbkit import wmb
from wmbkit.algebra import UnsupportedBackend


def groupoid_lines(components):
    """Disjoint union of (pair groupoid on k objects) x Z_n, as presentation lines."""
    objects, lines = [], []
    for c, (k, n) in enumerate(components):
        objs = [f"o{c}_{i}" for i in range(k)]
        objects += objs

        def arr(i, j, m):
            return f"a{c}_{i}{j}_{m}"
        for i in range(k):
            lines.append(f"identity {objs[i]} = {arr(i, i, 0)}")
            for j in range(k):
                for m in range(n):
                    lines.append(f"arrow {arr(i, j, m)} : {objs[j]} -> {objs[i]}")
                    lines.append(f"inverse {arr(i, j, m)} = {arr(j, i, (-m) % n)}")
                    for l in range(k):
                        for m2 in range(n):
                            lines.append(f"compose {arr(i, j, m)} * {arr(j, l, m2)} = {arr(i, l, (m + m2) % n)}")
    return objects, lines


def _order(line):
    # arrows must be declared before use; identities and inverses after arrows
    return {"arrow": 0, "identity": 1, "compose": 1, "inverse": 1}[line.split()[0]]


components = st.lists(st.tuples(st.integers(1, 2), st.integers(1, 3)), min_size=1, max_size=2).filter(
    lambda cs_: sum(k * k * n for k, n in cs_) <= 6)


@given(components, st.randoms(use_true_random=False))
@settings(max_examples=25, deadline=None)
def test_parse_render_round_trip(comps, rnd):
    objects, lines = groupoid_lines(comps)
    rnd.shuffle(lines)
    lines.sort(key=_order)
    text = "category G\n# generated\nobjects " + " ".join(objects) + "\n" + "\n".join(lines) + "\n"
    p = cs.parse_presentation(text)
    assert p.groupoid
    q = cs.parse_presentation(cs.render_presentation(p))
    assert q == p


@given(components)
@settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_random_groupoids_have_the_inverse_as_antipode(comps):
    objects, lines = groupoid_lines(comps)
    lines.sort(key=_order)
    p = cs.parse_presentation("category G\nobjects " + " ".join(objects) + "\n" + "\n".join(lines) + "\n")
    w = cs.span_wmb(p)
    assert wmb.verify(w, "axioms").ok
    res = ap.antipode(w)
    assert res.found
    for a in p.arrows:
        assert res.S.element(a) == {p.inverse[a]: 1}


@pytest.mark.parametrize("text,line,col,fragment", [
    ("objects a\n", 1, 1, "missing 'category"),
    ("category X\nobjects a\narrows f : a -> a\n", 3, 1, "unknown keyword"),
    ("category X\nobjects a\narrow f : a -> b\n", 3, 16, "unknown object"),
    ("category X\nobjects a\narrow f ; a -> a\n", 3, 9, "expected ':'"),
    ("category X\nobjects a\narrow f a -> a\n", 3, 15, "expected 'arrow"),
    ("category X\nobjects a\narrow f : a ->\n", 3, 15, "expected 'arrow"),
    ("category X\nobjects a a\n", 2, 11, "duplicate object"),
    ("category X\nobjects a\narrow f : a -> a\ncompose f * g = f\n", 4, 13, "unknown arrow"),
])
def test_syntax_errors_carry_locations(text, line, col, fragment):
    with pytest.raises(cs.PresentationSyntaxError) as ei:
        cs.parse_presentation(text)
    assert (ei.value.line, ei.value.col) == (line, col)
    assert fragment in ei.value.msg


BASE = "category X\nobjects a\narrow e : a -> a\narrow x : a -> a\nidentity a = e\n"


def test_validation_missing_composition():
    with pytest.raises(cs.ValidationError, match="missing"):
        cs.parse_presentation(BASE + "compose e * e = e\ncompose e * x = x\ncompose x * e = x\n")


def test_validation_identity_not_neutral():
    with pytest.raises(cs.ValidationError, match="neutral"):
        cs.parse_presentation(BASE + "compose e * e = e\ncompose e * x = e\ncompose x * e = x\ncompose x * x = x\n")


def test_validation_non_associative():
    # a two-object category whose compositions are locally consistent but not associative
    text = ("category X\nobjects a\narrow e : a -> a\narrow x : a -> a\narrow y : a -> a\nidentity a = e\n"
            + "".join(f"compose e * {t} = {t}\ncompose {t} * e = {t}\n" for t in "xy")
            + "compose e * e = e\ncompose x * x = y\ncompose x * y = x\ncompose y * x = y\ncompose y * y = y\n")
    with pytest.raises(cs.ValidationError, match="associative"):
        cs.parse_presentation(text)


def test_validation_bad_inverse():
    with pytest.raises(cs.ValidationError, match="not inverse"):
        cs.parse_presentation(cs.IDEM2_TEXT + "inverse x = x\n")


def test_catalog_shapes():
    dims = {n: len(cs.catalog(n).basis) for n in ("PAIR2", "IDEM2", "C2", "CYC3MON", "FPAIR2", "SUMC2PAIR2")}
    assert dims == {"PAIR2": 4, "IDEM2": 2, "C2": 2, "CYC3MON": 3, "FPAIR2": 4, "SUMC2PAIR2": 6}
    assert not cs.catalog("ZFUN").dense
    with pytest.raises(KeyError):
        cs.catalog("NOPE")


def test_direct_sum_rejects_empty_and_lazy():
    with pytest.raises(ValueError):
        cs.direct_sum([])
    with pytest.raises(UnsupportedBackend):
        cs.direct_sum([cs.catalog("ZFUN")])


def test_functional_product_is_pointwise():
    s, f = cs.catalog("PAIR2"), cs.catalog("FPAIR2")
    assert s.alg.mul_basis("(1,2)", "(2,1)") == {"(1,1)": 1}
    assert f.alg.mul_basis("(1,2)", "(2,1)") == {}
    assert f.alg.mul_basis("(1,2)", "(1,2)") == {"(1,2)": 1}


def test_unital_weak_bialgebra_route_agrees():
    w = cs.span_as_unital(cs.presentation("PAIR2"))
    assert wmb.verify(w, "axioms").ok
    assert ap.antipode(w).found


def test_lazy_spec_checks():
    spec = cs.integers_spec()
    cs.check_lazy_spec(spec, wmb.Sampler(0, 50))
    assert spec.compose(2, 3) == 5 and spec.inverse(4) == -4
