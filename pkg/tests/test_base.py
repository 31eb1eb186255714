import pytest

from wmbkit import base, wmb
from wmbkit.base import BARPIL, BARPIR, PIL, PIR, pi
from wmbkit.constructors import catalog, presentation


@pytest.mark.parametrize("name", ["PAIR2", "C2", "IDEM2"])
def test_pi_maps_on_span_instances(name):
    # oracle: on a span instance piR(a) acts as the identity at src(a), piL(a) at tgt(a)
    w, p = catalog(name), presentation(name)
    for a in p.arrows:
        for b in p.arrows:
            for kind, obj in ((PIR, p.src(a)), (PIL, p.tgt(a))):
                i = p.identity[obj]
                want = {p.compose[i, b]: 1} if p.composable(i, b) else {}
                assert pi(w, kind, a).lam_basis(b) == want


@pytest.mark.parametrize("name,dim", [("PAIR2", 2), ("FPAIR2", 2), ("C2", 1), ("SUMC2PAIR2", 3)])
def test_base_dimension_and_certificates(name, dim):
    w = catalog(name)
    bc = base.base_coalgebra(w, "R")
    assert bc.dim == dim
    assert all(v[0] for v in bc.certificates.values()), bc.certificates
    # the four pi images coincide on full instances
    spaces = [base.image_space(w, k) for k in (PIR, BARPIR)]
    assert spaces[0].dim == spaces[1].dim == dim


def test_nakayama_is_identity_for_groupoids():
    for name in ("PAIR2", "FPAIR2", "C2", "SUMC2PAIR2"):
        theta = base.nakayama(catalog(name))
        d = len(theta)
        assert theta == [[int(i == j) for j in range(d)] for i in range(d)]


def test_f_multiplier_well_defined_and_central():
    w = catalog("PAIR2")
    assert base.f_well_defined(w) is None
    rep = wmb.verify(w, ["F-MULT", "F-CENTRAL", "E-RESTRICT", "E-F"])
    assert rep.ok


def test_left_side_coalgebra():
    bc = base.base_coalgebra(catalog("PAIR2"), "L")
    assert bc.dim == 2 and all(v[0] for v in bc.certificates.values())


def test_base_counit_values_are_exact():
    c = base.base_counit(catalog("PAIR2"), "R")
    assert c
