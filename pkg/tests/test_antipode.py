import pytest

from wmbkit import antipode as ap
from wmbkit import exactlin as xl
from wmbkit import wmb
from wmbkit.constructors import catalog
from wmbkit.wmb import Sampler


@pytest.mark.parametrize("name", ["PAIR2", "C2", "FPAIR2", "SUMC2PAIR2"])
def test_endomap_families(name):
    w = catalog(name)
    rep = wmb.verify(w, list(ap.ENDOMAP_IDS))
    assert rep.ok, rep.statuses()
    assert all(r.status == "pass" for r in rep.results)


def test_splitting_through_E_and_G():
    w = catalog("PAIR2")
    m = ap.endomaps(w)
    T1, E1 = m["T1"].matrix(w), m["E1"].matrix(w)
    assert xl.matmul(E1, E1) == E1
    assert xl.subspace_equal(xl.image(T1), xl.image(E1))
    rc = ap.construct_R(w)
    assert rc.status == ap.FOUND and all(rc.certificates.values())


def test_S_is_involutive_on_groupoids():
    for name in ("PAIR2", "C2", "FPAIR2", "SUMC2PAIR2"):
        assert ap.antipode(catalog(name)).info["S o S = id"] is True


def test_kernel_mismatch_precedes_image_check():
    res = ap.antipode(catalog("IDEM2"))
    assert res.failure == ap.KERNEL_MISMATCH and res.info["side"] == "1"
    assert res.witness["raw"] == {("x", "e"): 1, ("x", "x"): -1}
    assert ap.kernel_witness_holds(catalog("IDEM2"), res.witness["raw"])


def test_antipode_laws_skip_without_antipode():
    rep = wmb.verify(catalog("CYC3MON"), ["AX-vii", "S-ANTIMULT"])
    assert rep.statuses() == {"AX-vii": "skipped", "S-ANTIMULT": "skipped"}


def test_corrupted_S_breaks_axioms_and_oracle():
    w = catalog("PAIR2")
    S = ap.antipode(w).S
    bad = ap.corrupted_S(w, S, "(1,2)", {"(1,2)": 1})
    rep = wmb.verify(w, list(ap.AXIOM_IDS) + ["S-ORACLE", "CONV-INV"], ctx=ap.antipode_ctx(w, bad))
    assert rep["AX-vii"].status == "fail"
    assert rep["S-ORACLE"].status == "fail"
    assert rep["CONV-INV"].status == "fail"


def test_lazy_declared_antipode():
    w = catalog("ZFUN")
    res = ap.antipode(w, Sampler(0, 100))
    assert res.found and res.source == "declared"
    assert res.S.element(5) == {-5: 1}
    rep = ap.verify_antipode_properties(w, res.S, sampler=Sampler(0, 100))
    assert rep.ok
    assert rep["S-ANTICOMULT"].status == "pass"


def test_lazy_antipode_corruption_is_caught_by_sampling():
    w = catalog("ZFUN")
    S = ap.declared_S(w)
    bad = ap.corrupted_S(w, S, 1, {1: 1})
    rep = ap.verify_antipode_axioms(w, bad, Sampler(0, 200))
    assert not rep.ok


def test_table_json():
    w = catalog("C2")
    out = ap.antipode(w).to_json(w)
    assert out["status"] == "Found"
    assert out["S"] == [["e", [["e", "1"]]], ["g", [["g", "1"]]]]
    failed = ap.antipode(catalog("IDEM2")).to_json(catalog("IDEM2"))
    assert failed["status"] == "Failed{KernelMismatch}"
    assert "raw" not in failed["witness"]
