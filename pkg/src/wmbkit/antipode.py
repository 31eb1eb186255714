"""Endomaps of A(x)A, the maps R1 and R2, and the antipode.

T1, E1, G1 (and R1 when it exists) form the left family; T2, E2, G2 (and R2)
the right one.  An antipode exists exactly when T1 and T2 split through the
E- and G-maps; S is then read off from R1 and R2.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import algebra as al
from . import base
from . import exactlin as xl
from . import wmb
from .algebra import Multiplier, add_into, lin
from .base import BARPIL, BARPIR, PIL, PIR, pi
from .wmb import B, Ctx, NotRegular, Sampler, WMBInstance, register

FOUND = "Found"
FAILED = "Failed"
IMAGE_MISMATCH = "ImageMismatch"
KERNEL_MISMATCH = "KernelMismatch"
AXIOM_FAILURE = "AxiomFailure"


class MultiplierIncompatible(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


# ---------------------------------------------------------------- endomaps

@dataclass
class EndoMap:
    name: str
    fn: Callable  # (a, b) basis pair -> element of A(x)A

    def __call__(self, a, b) -> dict:
        return self.fn(a, b)

    def on(self, X: dict) -> dict:
        acc: dict = {}
        for (a, b), c in X.items():
            add_into(acc, self.fn(a, b), c)
        return acc

    def matrix(self, w: WMBInstance) -> list:
        pairs = list(itertools.product(w.basis, repeat=2))
        cols = [wmb._pair_vec(w, self.fn(a, b)) for a, b in pairs]
        return xl.transpose(cols, len(pairs))


def _cached(fn):
    memo: dict = {}

    def inner(a, b):
        if (a, b) not in memo:
            memo[a, b] = fn(a, b)
        return memo[a, b]
    return inner


def endomaps(w: WMBInstance) -> dict:
    """T1, T2, E1, E2, G1, G2 and the alternative form of G1."""
    if not w.regular:
        raise NotRegular("the endomaps need a regular instance")
    if "endomaps" in w._cache:
        return w._cache["endomaps"]

    def g1(a, b):
        acc: dict = {}
        for c, a1, a2 in w.alg.factor(a):
            for (u, v), d in w.T2(a1, a2).items():
                for z, e in pi(w, PIR, v).lam_basis(b).items():
                    add_into(acc, {(u, z): 1}, c * d * e)
        return acc

    def g1_alt(a, d_):
        acc: dict = {}
        for k, b, c in w.alg.factor(d_):
            for (x, y), d in w.T4(c, b).items():
                for z, e in pi(w, BARPIR, y).rho_basis(a).items():
                    add_into(acc, {(z, x): 1}, k * d * e)
        return acc

    def g2(d_, c):
        acc: dict = {}
        for k, a, b in w.alg.factor(d_):
            for (x, y), d in w.T3(b, a).items():
                for z, e in pi(w, BARPIL, x).lam_basis(c).items():
                    add_into(acc, {(y, z): 1}, k * d * e)
        return acc

    maps = {
        "T1": EndoMap("T1", w.T1),
        "T2": EndoMap("T2", w.T2),
        "E1": EndoMap("E1", lambda a, b: w.e_basis(None, None, a, b)),
        "E2": EndoMap("E2", lambda a, b: w.e_basis(a, b, None, None)),
        "G1": EndoMap("G1", _cached(g1)),
        "G2": EndoMap("G2", _cached(g2)),
        "G1'": EndoMap("G1'", _cached(g1_alt)),
    }
    w._cache["endomaps"] = maps
    return maps


def _matrix_endomap(w: WMBInstance, name: str, mat: list) -> EndoMap:
    pairs = list(itertools.product(w.basis, repeat=2))
    idx = {p: i for i, p in enumerate(pairs)}

    def fn(a, b):
        j = idx[a, b]
        return {pairs[i]: mat[i][j] for i in range(len(pairs)) if mat[i][j]}
    return EndoMap(name, _cached(fn))


# ---------------------------------------------------------------- R1 and R2

@dataclass
class RConstruction:
    status: str
    R1: Optional[EndoMap] = None
    R2: Optional[EndoMap] = None
    failure: Optional[str] = None
    side: Optional[str] = None
    witness: Optional[dict] = None
    certificates: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)


def _vec_support(v) -> int:
    return sum(1 for x in v if x)


def _split(w, T, Emap, G, side):
    """R with R T = G, T R = E, R T R = R; or a failure diagnosis."""
    Tm, Em, Gm = T.matrix(w), Emap.matrix(w), G.matrix(w)
    N = len(Tm)
    # kernel condition first: Ker(T) in Ker(G)
    ker = xl.kernel(Tm, N)
    bad = [v for v in ker.basis if any(xl.matvec(Gm, v))]
    if bad:
        v = min(bad, key=lambda x: (_vec_support(x), [abs(c) for c in x]))
        return None, KERNEL_MISMATCH, {"vector": wmb._render(wmb._vec_pair(w, v)),
                                       "raw": wmb._vec_pair(w, v),
                                       "G(vector)": wmb._render(wmb._vec_pair(w, xl.matvec(Gm, v)))}
    imT, imE = xl.image(Tm), xl.image(Em)
    if not xl.subspace_equal(imT, imE):
        for row in imE.basis:
            if not imT.contains(row):
                return None, IMAGE_MISMATCH, {"in Im(E) not Im(T)": wmb._render(wmb._vec_pair(w, row))}
        for row in imT.basis:
            if not imE.contains(row):
                return None, IMAGE_MISMATCH, {"in Im(T) not Im(E)": wmb._render(wmb._vec_pair(w, row))}
    inj, surj = xl.split_idempotent(Em)
    r = len(surj)
    cols = []
    for i in range(r):
        b = [row[i] for row in inj]
        y = xl.solve(Tm, b)[0]
        cols.append(xl.matvec(Gm, y))
    Rb = xl.transpose(cols, N) if cols else xl.zeros(N, 0)
    Rm = xl.matmul(Rb, surj) if r else xl.zeros(N, N)
    cert = {
        f"R{side} T{side} = G{side}": xl.matmul(Rm, Tm) == Gm,
        f"T{side} R{side} = E{side}": xl.matmul(Tm, Rm) == Em,
        f"R{side} T{side} R{side} = R{side}": xl.matmul(xl.matmul(Rm, Tm), Rm) == Rm,
    }
    return Rm, cert, None


def construct_R(w: WMBInstance) -> RConstruction:
    if not w.dense:
        raise al.UnsupportedBackend("R1 and R2 are constructed on finite bases only")
    if "R" in w._cache:
        return w._cache["R"]
    m = endomaps(w)
    R1m, c1, wit1 = _split(w, m["T1"], m["E1"], m["G1"], "1")
    if R1m is None:
        res = RConstruction(FAILED, failure=c1, side="1", witness=wit1)
        w._cache["R"] = res
        return res
    R2m, c2, wit2 = _split(w, m["T2"], m["E2"], m["G2"], "2")
    if R2m is None:
        res = RConstruction(FAILED, failure=c2, side="2", witness=wit2)
        w._cache["R"] = res
        return res
    cert = dict(c1)
    cert.update(c2)
    res = RConstruction(FOUND, _matrix_endomap(w, "R1", R1m), _matrix_endomap(w, "R2", R2m),
                        certificates=cert, matrices={"R1": R1m, "R2": R2m})
    w._cache["R"] = res
    return res


# ---------------------------------------------------------------- S

class Antipode:
    """Basis-indexed multiplier-valued map with linear extension."""

    def __init__(self, alg, fn: Callable, source: str):
        self.alg = alg
        self._fn = fn
        self._memo: dict = {}
        self.source = source

    def __call__(self, a) -> Multiplier:
        if a not in self._memo:
            self._memo[a] = self._fn(a)
        return self._memo[a]

    def of(self, x: dict) -> Multiplier:
        return al.combine(self.alg, [(c, self(k)) for k, c in x.items()], f"S({al.fmt(x)})")

    def element(self, a) -> Optional[dict]:
        m = self(a)
        if isinstance(m.element, dict):
            return m.element
        return None


def extract_S(w: WMBInstance, R1: EndoMap, R2: EndoMap) -> Antipode:
    def s(a):
        return Multiplier(w.alg, lambda b: w.eps_id(R1(a, b)), lambda b: w.id_eps(R2(b, a)), f"S({al.fmt_key(a)})")

    S = Antipode(w.alg, s, "reconstructed")
    pairs = list(itertools.product(w.basis, repeat=2))
    for a in w.basis:
        bad = al.is_compatible(S(a), pairs)
        if bad is not None:
            raise MultiplierIncompatible(f"S({a}) is not a multiplier", {"a": a, "pair": bad})
    if w.alg.unit is not None:
        for a in w.basis:
            S(a).element = al.is_in_A(S(a))
    return S


def declared_S(w: WMBInstance) -> Optional[Antipode]:
    if w.antipode_decl is None:
        return None
    return Antipode(w.alg, w.antipode_decl, "declared")


def corrupted_S(w: WMBInstance, S: Antipode, a, value: dict) -> Antipode:
    """S with the value on the basis element a replaced by the element `value`."""
    def s(b):
        if b == a:
            return al.embed(w.alg, value, f"S'({al.fmt_key(b)})")
        return S(b)
    return Antipode(w.alg, s, "corrupted")


def ensure_S(ctx: Ctx) -> Optional[Antipode]:
    if "S" in ctx.cache:
        return ctx.cache["S"]
    w = ctx.w
    S = None
    if w.dense and w.regular:
        rc = construct_R(w)
        ctx.cache["R"] = rc if rc.status == FOUND else None
        if rc.status == FOUND:
            try:
                S = extract_S(w, rc.R1, rc.R2)
            except MultiplierIncompatible:
                S = None
    elif not w.dense:
        S = declared_S(w)
    ctx.cache["S"] = S
    return S


def _R(ctx: Ctx) -> Optional[RConstruction]:
    if "R" not in ctx.cache:
        if ctx.w.dense and ctx.w.regular:
            rc = construct_R(ctx.w)
            ctx.cache["R"] = rc if rc.status == FOUND else None
        else:
            ctx.cache["R"] = None
    return ctx.cache["R"]


def antipode_ctx(w: WMBInstance, S: Optional[Antipode] = None, sampler: Optional[Sampler] = None,
                 R: Optional[RConstruction] = None) -> Ctx:
    ctx = Ctx(w, sampler)
    if S is not None:
        ctx.cache["S"] = S
        ctx.flags["antipode"] = True
    if R is not None:
        ctx.cache["R"] = R
    return ctx


# ---------------------------------------------------------------- laws: endomaps

def _maps(ctx):
    return endomaps(ctx.w)


def _left_family(ctx):
    m = _maps(ctx)
    fam = [m["T1"], m["E1"], m["G1"]]
    rc = _R(ctx) if ctx.w.dense else None
    if rc is not None:
        fam.append(rc.R1)
    return fam


def _right_family(ctx):
    m = _maps(ctx)
    fam = [m["T2"], m["E2"], m["G2"]]
    rc = _R(ctx) if ctx.w.dense else None
    if rc is not None:
        fam.append(rc.R2)
    return fam


def _l_member(ctx, a, b, c):
    w = ctx.w
    bc = w.alg.mul_basis(b, c)
    X = {(a, b, c): 1}
    for L in _left_family(ctx):
        yield f"{L.name}(a(x)bc) = {L.name}(a(x)b)(1(x)c)", L.on(al.tensor_elem(B(a), bc)), \
            wmb.rmul_leg(w, L(a, b), 1, c)
        lhs = al.pair_apply(al.pair_apply(X, (1, 2), L.fn), (0, 1), w.T2)
        rhs = al.pair_apply(al.pair_apply(X, (0, 1), w.T2), (1, 2), L.fn)
        yield f"(T2(x)id)(id(x){L.name}) = (id(x){L.name})(T2(x)id)", lhs, rhs


register("L-MEMBER", "T1, E1, G1, R1 lie in the left family: right module maps in the second leg "
         "commuting with T2 on the first two legs", "antipode", [(3, _l_member)],
         needs=("regular",), prereq=("AX-i",))


def _r_member(ctx, a, b, c):
    w = ctx.w
    ab = w.alg.mul_basis(a, b)
    X = {(a, b, c): 1}
    for K in _right_family(ctx):
        yield f"{K.name}(ab(x)c) = (a(x)1){K.name}(b(x)c)", K.on(al.tensor_elem(ab, B(c))), \
            wmb.lmul_leg(w, K(b, c), 0, a)
        lhs = al.pair_apply(al.pair_apply(X, (0, 1), K.fn), (1, 2), w.T1)
        rhs = al.pair_apply(al.pair_apply(X, (1, 2), w.T1), (0, 1), K.fn)
        yield f"(id(x)T1)({K.name}(x)id) = ({K.name}(x)id)(id(x)T1)", lhs, rhs


register("R-MEMBER", "T2, E2, G2, R2 lie in the right family (mirror conditions)", "antipode",
         [(3, _r_member)], needs=("regular",), prereq=("AX-i",))


def _lr_images(ctx, a, b):
    w = ctx.w
    m = _maps(ctx)
    yield "lambda_T1(a) = a(-)", w.eps_id(m["T1"](a, b)), w.alg.mul_basis(a, b)
    yield "lambda_E1(a) = piL(a)(-)", w.eps_id(m["E1"](a, b)), pi(w, PIL, a).lam_basis(b)
    yield "lambda_G1(a) = piR(a)(-)", w.eps_id(m["G1"](a, b)), pi(w, PIR, a).lam_basis(b)
    yield "rho_T2(a) = (-)a", w.id_eps(m["T2"](b, a)), w.alg.mul_basis(b, a)
    yield "rho_E2(a) = (-)piR(a)", w.id_eps(m["E2"](b, a)), pi(w, PIR, a).rho_basis(b)
    yield "rho_G2(a) = (-)piL(a)", w.id_eps(m["G2"](b, a)), pi(w, PIL, a).rho_basis(b)


register("LR-IMAGES", "lambda images a, piL(a), piR(a) of T1, E1, G1 and rho images of T2, E2, G2",
         "antipode", [(2, _lr_images)], needs=("regular",), prereq=("AX-i",))


def _idem_rel(ctx, a, b):
    m = _maps(ctx)
    X = {(a, b): 1}
    for s in ("1", "2"):
        T, E, G = m["T" + s], m["E" + s], m["G" + s]
        yield f"E{s}E{s} = E{s}", E.on(E(a, b)), E(a, b)
        yield f"G{s}G{s} = G{s}", G.on(G(a, b)), G(a, b)
        yield f"E{s}T{s} = T{s}", E.on(T(a, b)), T(a, b)
        yield f"T{s}G{s} = T{s}", T.on(G(a, b)), T(a, b)
    del X


register("IDEM-REL", "E1E1 = E1, G1G1 = G1, E1T1 = T1 = T1G1 and the mirrors", "antipode",
         [(2, _idem_rel)], needs=("regular",), prereq=("AX-i",))


def _l_inj(ctx, a, b, c):
    w = ctx.w
    t2 = w.T2(a, b)
    for L in _left_family(ctx):
        rec: dict = {}
        for (u, v), k in t2.items():
            for z, e in w.eps_id(L(v, c)).items():
                add_into(rec, {(u, z): 1}, k * e)
        yield f"(a(x)1){L.name}(b(x)c) = ((id(x)lambda)T2(a(x)b))(1(x)c)", \
            wmb.lmul_leg(w, L(b, c), 0, a), rec
    t1 = w.T1(b, c)
    for K in _right_family(ctx):
        rec = {}
        for (u, v), k in t1.items():
            for z, e in w.id_eps(K(a, u)).items():
                add_into(rec, {(z, v): 1}, k * e)
        yield f"{K.name}(a(x)b)(1(x)c) = (a(x)1)((rho(x)id)T1(b(x)c))", \
            wmb.rmul_leg(w, K(a, b), 1, c), rec


register("L-INJ", "each map is recovered from its lambda (resp. rho) image", "antipode",
         [(3, _l_inj)], needs=("regular",), prereq=("AX-i",))


def _g1_d13(ctx, a, b, c):
    w = ctx.w
    m = _maps(ctx)
    X = {(x, b, y): k for (x, y), k in w.T1(a, c).items()}
    lhs = al.pair_apply(X, (0, 1), m["G1"].fn)
    rhs: dict = {}
    for (p, q), k in w.e_basis(None, None, b, c).items():
        for (x, y), d in w.T1(a, q).items():
            add_into(rhs, {(x, p, y): 1}, k * d)
    yield "(G1(x)id)[D13(a)(1(x)b(x)c)] = D13(a)(1(x)E)(1(x)b(x)c)", lhs, rhs


register("G1-D13", "(G1(x)id)[D13(a)(1(x)b(x)c)] = D13(a)(1(x)E)(1(x)b(x)c)", "antipode",
         [(3, _g1_d13)], needs=("regular",), prereq=("AX-i",))


def _g1_forms(ctx, a, b):
    m = _maps(ctx)
    yield "(a(x)1)F(1(x)b) by the right rule = by the left rule", m["G1"](a, b), m["G1'"](a, b)


register("G1-FORMS", "G1(a(x)b) = (a(x)1)F(1(x)b) computed from both rules defining F", "antipode",
         [(2, _g1_forms)], needs=("regular",), prereq=("AX-i",))


def _r_rel(ctx):
    rc = _R(ctx)
    bad = [k for k, v in sorted(rc.certificates.items()) if not v]
    return {"part": bad[0]} if bad else None


register("R-REL", "R1T1 = G1, T1R1 = E1, R1T1R1 = R1 and the mirrors", "antipode", (), _r_rel,
         needs=("regular", "R"), prereq=("AX-i",))


# ---------------------------------------------------------------- laws: S

def _S(ctx) -> Antipode:
    return ctx.cache["S"]


def _ax_vii(ctx, a, b, c):
    w = ctx.w
    S = _S(ctx)
    Z: dict = {}
    for (x, y), k in w.T2(a, b).items():
        for z, e in S(y).lam_basis(c).items():
            add_into(Z, {(x, z): 1}, k * e)
    yield "T1[((id(x)S)T2(a(x)b))(1(x)c)] = D(a)(b(x)c)", w.Tx(1, Z), w.d_basis(a, None, None, b, c)


register("AX-vii", "T1[((id(x)S)T2(a(x)b))(1(x)c)] = D(a)(b(x)c)", "antipode", [(3, _ax_vii)],
         needs=("antipode",), prereq=("AX-i",))


def _ax_viii(ctx, a, b, c):
    w = ctx.w
    S = _S(ctx)
    Z: dict = {}
    for (x, y), k in w.T1(b, c).items():
        for z, e in S(x).rho_basis(a).items():
            add_into(Z, {(z, y): 1}, k * e)
    yield "T2[(a(x)1)((S(x)id)T1(b(x)c))] = (a(x)b)D(c)", w.Tx(2, Z), w.d_basis(c, a, b, None, None)


register("AX-viii", "T2[(a(x)1)((S(x)id)T1(b(x)c))] = (a(x)b)D(c)", "antipode", [(3, _ax_viii)],
         needs=("antipode",), prereq=("AX-i",))


def _ax_ix(ctx, a, b):
    w = ctx.w
    S = _S(ctx)
    lhs: dict = {}
    for (p, q), k in w.e_basis(None, None, a, b).items():
        add_into(lhs, S(p).lam_basis(q), k)
    yield "mu(S(x)id)[E(a(x)b)] = S(a)b", lhs, S(a).lam_basis(b)
    rhs: dict = {}
    for (p, q), k in w.e_basis(b, a, None, None).items():
        add_into(rhs, S(q).rho_basis(p), k)
    yield "mu(id(x)S)[(b(x)a)E] = bS(a)", rhs, S(a).rho_basis(b)


register("AX-ix", "mu(S(x)id)[E(a(x)1)] = S(a), equivalently mu(id(x)S)[(1(x)a)E] = S(a)", "antipode",
         [(2, _ax_ix)], needs=("antipode",), prereq=("AX-i",))

AXIOM_IDS = ("AX-vii", "AX-viii", "AX-ix")


def _conv_inv(ctx, a, b):
    w = ctx.w
    S = _S(ctx)
    l1: dict = {}
    for (x, y), k in w.T1(a, b).items():
        add_into(l1, S(x).lam_basis(y), k)
    yield "mu(S(x)id)T1 = mu(piR(x)id)", l1, pi(w, PIR, a).lam_basis(b)
    l2: dict = {}
    for (x, y), k in w.T2(a, b).items():
        add_into(l2, S(y).rho_basis(x), k)
    yield "mu(id(x)S)T2 = mu(id(x)piL)", l2, pi(w, PIL, b).rho_basis(a)
    l3: dict = {}
    for (p, q), k in w.e_basis(None, None, a, b).items():
        add_into(l3, S(p).lam_basis(q), k)
    yield "mu(S(x)id)E1 = mu(S(x)id)", l3, S(a).lam_basis(b)
    l4: dict = {}
    for (p, q), k in w.e_basis(a, b, None, None).items():
        add_into(l4, S(q).rho_basis(p), k)
    yield "mu(id(x)S)E2 = mu(id(x)S)", l4, S(b).rho_basis(a)


register("CONV-INV", "mu(S(x)id)T1 = mu(piR(x)id), mu(id(x)S)T2 = mu(id(x)piL), "
         "mu(S(x)id)E1 = mu(S(x)id), mu(id(x)S)E2 = mu(id(x)S)", "antipode", [(2, _conv_inv)],
         needs=("regular", "antipode"), prereq=("AX-i",))


def _s_compat(ctx, x, a, b):
    w = ctx.w
    m = _S(ctx)(a)
    yield "x(S(a)b) = (xS(a))b", w.alg.multiply(B(x), m.lam_basis(b)), w.alg.multiply(m.rho_basis(x), B(b))


register("S-COMPAT", "x((eps(x)id)R1(a(x)b)) = ((id(x)eps)R2(x(x)a))b: each S(a) is a multiplier",
         "antipode", [(3, _s_compat)], needs=("antipode",), prereq=("AX-i",))


def _s_oracle(ctx, a):
    w = ctx.w
    S = _S(ctx)
    o = al.embed(w.alg, w.s_oracle(a))
    if w.dense:
        for b in w.basis:
            yield f"S(a)b = inverse(a)b for b={al.fmt_key(b)}", S(a).lam_basis(b), o.lam_basis(b)
            yield f"bS(a) = b inverse(a) for b={al.fmt_key(b)}", S(a).rho_basis(b), o.rho_basis(b)
    else:
        yield "S(a) = inverse(a) as elements", S.element(a), w.s_oracle(a)


register("S-ORACLE", "S agrees with the inverse map of the groupoid", "antipode", [(1, _s_oracle)],
         needs=("antipode", "oracle"), prereq=("AX-i",))


def _s_id(ctx, a, b):
    w = ctx.w
    rc = _R(ctx)
    yield "mu R1 = mu(piL(x)id)", _mu(w, rc.R1(a, b)), pi(w, PIL, a).lam_basis(b)
    yield "mu R2 = mu(id(x)piR)", _mu(w, rc.R2(a, b)), pi(w, PIR, b).rho_basis(a)


def _mu(w, X):
    acc: dict = {}
    for (x, y), k in X.items():
        add_into(acc, w.alg.mul_basis(x, y), k)
    return acc


register("S-ID", "mu R1 = mu(piL(x)id) and mu R2 = mu(id(x)piR)", "antipode", [(2, _s_id)],
         needs=("regular", "R"), prereq=("AX-i",))


def _s_pi(ctx, a, b):
    w = ctx.w
    rc = _R(ctx)
    S = _S(ctx)
    l1: dict = {}
    for (x, y), k in rc.R1(a, b).items():
        add_into(l1, pi(w, PIR, x).lam_basis(y), k)
    yield "mu(piR(x)id)R1 = mu(S(x)id)", l1, S(a).lam_basis(b)
    l2: dict = {}
    for (x, y), k in rc.R2(a, b).items():
        add_into(l2, pi(w, PIL, y).rho_basis(x), k)
    yield "mu(id(x)piL)R2 = mu(id(x)S)", l2, S(b).rho_basis(a)


register("S-PI", "mu(piR(x)id)R1 = mu(S(x)id) and mu(id(x)piL)R2 = mu(id(x)S)", "antipode",
         [(2, _s_pi)], needs=("regular", "R", "antipode"), prereq=("AX-i",))


def _s_antimult(ctx, b, c, d):
    w = ctx.w
    S = _S(ctx)
    sbc = S.of(w.alg.mul_basis(b, c))
    yield "S(bc)d = S(c)(S(b)d)", sbc.lam_basis(d), S(c).left(S(b).lam_basis(d))
    yield "dS(bc) = (dS(c))S(b)", sbc.rho_basis(d), S(b).right(S(c).rho_basis(d))


register("S-ANTIMULT", "S(bc) = S(c)S(b)", "antipode", [(3, _s_antimult)], needs=("antipode",),
         prereq=("AX-i",))


def _s_nondeg(ctx):
    w = ctx.w
    S = _S(ctx)
    n = len(w.basis)
    left = xl.span([w.alg.to_vec(S(b).rho_basis(a)) for a in w.basis for b in w.basis], n)
    right = xl.span([w.alg.to_vec(S(b).lam_basis(a)) for a in w.basis for b in w.basis], n)
    if not left.is_full():
        return {"part": "span A S(A) != A", "rank": left.dim, "dim": n}
    if not right.is_full():
        return {"part": "span S(A) A != A", "rank": right.dim, "dim": n}
    return None


register("S-NONDEG", "A S(A) = A = S(A) A", "antipode", (), _s_nondeg, needs=("antipode",),
         prereq=("AX-i",))


def _s_modmap(ctx, a, b, c):
    w = ctx.w
    S = _S(ctx)
    Sa = S(a)
    pairs = [
        ("S(a barpiL(b)) = piR(b)S(a)", S.of(pi(w, BARPIL, b).rho_basis(a)), pi(w, PIR, b) * Sa),
        ("S(barpiL(b)a) = S(a)piR(b)", S.of(pi(w, BARPIL, b).lam_basis(a)), Sa * pi(w, PIR, b)),
        ("S(a barpiR(b)) = piL(b)S(a)", S.of(pi(w, BARPIR, b).rho_basis(a)), pi(w, PIL, b) * Sa),
        ("S(barpiR(b)a) = S(a)piL(b)", S.of(pi(w, BARPIR, b).lam_basis(a)), Sa * pi(w, PIL, b)),
    ]
    for label, m1, m2 in pairs:
        yield f"{label} (left action)", m1.lam_basis(c), m2.lam_basis(c)
        yield f"{label} (right action)", m1.rho_basis(c), m2.rho_basis(c)


register("S-MODMAP", "S(a barpiL(b)) = piR(b)S(a) and the three companion identities", "antipode",
         [(3, _s_modmap)], needs=("regular", "antipode"), prereq=("AX-i",))


def _s_ef(ctx, a, b, c, d):
    w = ctx.w
    S = _S(ctx)
    ab = w.alg.mul_basis(a, b)
    lhs: dict = {}
    for (p, q), k in w.Ex(l1=ab, r2=B(d)).items():
        for z, e in S(q).rho_basis(c).items():
            add_into(lhs, {(p, z): 1}, k * e)
    X = al.tensor_elem(ab, S(d).rho_basis(c))
    yield "(ab(x)cS(d))((id(x)S)E) = (ab(x)cS(d))F", lhs, base.F_right(w, X)


register("S-EF", "(id(x)S)(E) = F", "antipode", [(4, _s_ef)],
         needs=("regular", "antipode", "left_full", "right_full"), prereq=("AX-i",))


def _s_fe(ctx, a, b, c, d):
    w = ctx.w
    S = _S(ctx)
    cd = w.alg.mul_basis(c, d)
    lhs: dict = {}
    for (p, q), k in base.F_left(w, al.tensor_elem(B(b), cd)).items():
        for z, e in S(p).rho_basis(a).items():
            add_into(lhs, {(z, q): 1}, k * e)
    aSb = S(b).rho_basis(a)
    rhs = al.tw(w.Ex(l2=aSb, r1=cd))
    yield "(aS(b)(x)1)((S(x)id)F)(1(x)cd) = (aS(b)(x)1)E^op(1(x)cd)", lhs, rhs


register("S-FE", "(S(x)id)(F) = E^op", "antipode", [(4, _s_fe)],
         needs=("regular", "antipode", "left_full", "right_full"), prereq=("AX-i",))


def _s_anticomult_gen(ctx, a, u, v, p, q):
    """Generator form for element-valued S: both sides on S(u)p (x) S(v)q."""
    w = ctx.w
    S = _S(ctx)
    sa, su, sv = S.element(a), S.element(u), S.element(v)
    if sa is None or su is None or sv is None:
        return
    y1 = w.alg.multiply(su, B(p))
    y2 = w.alg.multiply(sv, B(q))
    lhs = w.D(sa, r1=y1, r2=y2)
    rhs: dict = {}
    for (al_, be), k in al.tw(w.d_basis(a, v, u, None, None)).items():
        for x, e in S(al_).lam_basis(p).items():
            for y, f in S(be).lam_basis(q).items():
                add_into(rhs, {(x, y): 1}, k * e * f)
    yield "D(S(a))(S(u)p(x)S(v)q) = ((S(x)S)D^op(a))(S(u)p(x)S(v)q)", lhs, rhs


def _anticomult_dense(ctx):
    w = ctx.w
    S = _S(ctx)
    n = len(w.basis)
    N = n * n
    pairs = list(itertools.product(w.basis, repeat=2))
    gens = list(itertools.product(w.basis, repeat=3))
    G = xl.transpose([wmb._pair_vec(w, w.d_basis(x, None, None, b, c)) for x, b, c in gens], N)
    rG = xl.rank(G)
    sgen = list(itertools.product(w.basis, repeat=2))  # (u, p) -> S(u)p
    Gs = xl.transpose([w.alg.to_vec(S(u).lam_basis(p)) for u, p in sgen], n)
    rGs = xl.rank(Gs)
    if rGs < n:
        return {"part": "S(A)A != A, generator form unavailable"}
    dec = {}
    for e in w.basis:
        sol = xl.solve(Gs, w.alg.to_vec({e: 1}))
        dec[e] = [(c, g) for c, g in zip(sol[0], sgen) if c]
    for a in w.basis:
        Sa = S(a)
        Hcols = [w.D(Sa.lam_basis(x), r1=B(b), r2=B(c)) for x, b, c in gens]
        H = xl.transpose([wmb._pair_vec(w, h) for h in Hcols], N)
        if xl.rank(G + H) != rG:
            return {"part": "Delta(S(a)) ill defined on the spanning set", "a": al.fmt_key(a)}

        def rhs_gen(g1, g2):
            (u, p), (v, q) = g1, g2
            out: dict = {}
            for (x, y), k in al.tw(w.d_basis(a, v, u, None, None)).items():
                for s, e in S(x).lam_basis(p).items():
                    for t, f in S(y).lam_basis(q).items():
                        add_into(out, {(s, t): 1}, k * e * f)
            return out

        # well-definedness of the generator formula, one leg at a time
        # (stacking rows intersects kernels, so one rank test per leg suffices)
        H1, H2 = [], []
        for fixed in sgen:
            H1 += xl.transpose([wmb._pair_vec(w, rhs_gen(g, fixed)) for g in sgen], N)
            H2 += xl.transpose([wmb._pair_vec(w, rhs_gen(fixed, g)) for g in sgen], N)
        if xl.rank(Gs + H1) != rGs or xl.rank(Gs + H2) != rGs:
            return {"part": "(S(x)S)D^op(a) ill defined on generators", "a": al.fmt_key(a)}
        for z1, z2 in pairs:
            y = wmb._pair_vec(w, w.e_basis(None, None, z1, z2))
            k = xl.solve(G, y)[0]
            lhs: dict = {}
            for kj, h in zip(k, Hcols):
                if kj:
                    add_into(lhs, h, kj)
            rhs: dict = {}
            for c1, g1 in dec[z1]:
                for c2, g2 in dec[z2]:
                    add_into(rhs, rhs_gen(g1, g2), c1 * c2)
            if al.clean(lhs) != al.clean(rhs):
                return {"tuple": [al.fmt_key(a), al.fmt_key(z1), al.fmt_key(z2)],
                        "part": "D(S(a))(z1(x)z2) vs ((S(x)S)D^op(a))(z1(x)z2)",
                        "lhs": wmb._render(lhs), "rhs": wmb._render(rhs)}
    return None


register("S-ANTICOMULT", "D(S(a)) = (S(x)S)D^op(a)", "antipode", [(5, _s_anticomult_gen)],
         _anticomult_dense, needs=("regular", "antipode", "left_full", "right_full"), prereq=("AX-i",))


def _commute(ctx, X1: EndoMap, Y2: EndoMap, x, y, z):
    T = {(x, y, z): 1}
    lhs = al.pair_apply(al.pair_apply(T, (0, 1), Y2.fn), (1, 2), X1.fn)
    rhs = al.pair_apply(al.pair_apply(T, (1, 2), X1.fn), (0, 1), Y2.fn)
    return f"(id(x){X1.name})({Y2.name}(x)id) = ({Y2.name}(x)id)(id(x){X1.name})", lhs, rhs


EG_PAIRS = (("E1", "E2"), ("G1", "G2"), ("G1", "E2"), ("E1", "G2"))
R_PAIRS = (("E1", "R2"), ("R1", "E2"), ("G1", "R2"), ("R1", "G2"), ("R1", "R2"))


def _eg_law(p1, p2):
    def fn(ctx, x, y, z):
        m = _maps(ctx)
        yield _commute(ctx, m[p1], m[p2], x, y, z)
    return fn


def _r_law(p1, p2):
    def fn(ctx, x, y, z):
        m = dict(_maps(ctx))
        rc = _R(ctx)
        m["R1"], m["R2"] = rc.R1, rc.R2
        yield _commute(ctx, m[p1], m[p2], x, y, z)
    return fn


for _i, (_a, _b) in enumerate(EG_PAIRS, start=1):
    register(f"EG-{_i}", f"(id(x){_a})({_b}(x)id) = ({_b}(x)id)(id(x){_a})", "antipode",
             [(3, _eg_law(_a, _b))], needs=("regular",), prereq=("AX-i",))
for _i, (_a, _b) in enumerate(R_PAIRS, start=1):
    register(f"RC-{_i}", f"(id(x){_a})({_b}(x)id) = ({_b}(x)id)(id(x){_a})", "antipode",
             [(3, _r_law(_a, _b))], needs=("regular", "R"), prereq=("AX-i",))

EG_IDS = tuple(f"EG-{i}" for i in range(1, 5))
R_IDS = tuple(f"RC-{i}" for i in range(1, 6))
PROPERTY_IDS = ("CONV-INV", "S-COMPAT", "S-ORACLE", "S-ID", "S-PI", "S-ANTIMULT", "S-NONDEG",
                "S-MODMAP", "S-EF", "S-FE", "S-ANTICOMULT") + EG_IDS + R_IDS
ENDOMAP_IDS = ("L-MEMBER", "R-MEMBER", "LR-IMAGES", "IDEM-REL", "L-INJ", "G1-D13", "G1-FORMS", "R-REL")


# ---------------------------------------------------------------- drivers

def verify_antipode_axioms(w: WMBInstance, S: Antipode, sampler: Optional[Sampler] = None) -> wmb.LawReport:
    return wmb.verify(w, list(AXIOM_IDS), ctx=antipode_ctx(w, S, sampler))


def verify_antipode_properties(w: WMBInstance, S: Antipode, R: Optional[RConstruction] = None,
                               sampler: Optional[Sampler] = None) -> wmb.LawReport:
    ctx = antipode_ctx(w, S, sampler, R)
    return wmb.verify(w, list(PROPERTY_IDS), ctx=ctx)


def check_G1_delta13(w: WMBInstance, sampler: Optional[Sampler] = None) -> wmb.LawResult:
    return wmb.verify(w, ["G1-D13"], sampler)["G1-D13"]


@dataclass
class AntipodeResult:
    status: str
    S: Optional[Antipode] = None
    R: Optional[RConstruction] = None
    failure: Optional[str] = None
    witness: Optional[dict] = None
    report: Optional[wmb.LawReport] = None
    source: str = ""
    info: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def table(self, w: WMBInstance) -> list:
        """S on the basis: elements when known, else the left action table."""
        out = []
        basis = w.basis if w.dense else None
        if basis is None:
            return out
        for a in basis:
            m = self.S(a)
            if isinstance(m.element, dict):
                out.append([al.fmt_key(a), wmb._render(m.element)])
            else:
                out.append([al.fmt_key(a), {"left": [[al.fmt_key(b), wmb._render(m.lam_basis(b))]
                                                     for b in basis]}])
        return out

    def to_json(self, w: WMBInstance) -> dict:
        d = {"status": self.status if self.found else f"{self.status}{{{self.failure}}}",
             "source": self.source}
        if self.found:
            d["S"] = self.table(w)
        if self.witness is not None:
            wit = {k: v for k, v in self.witness.items() if k != "raw"}
            d["witness"] = wit
        if self.info:
            d["info"] = self.info
        return d


def antipode(w: WMBInstance, sampler: Optional[Sampler] = None) -> AntipodeResult:
    """endomaps -> R1, R2 -> S -> axioms (vii)-(ix); declared S on lazy backends."""
    if not w.regular:
        raise NotRegular("the antipode pipeline needs a regular instance")
    sampler = sampler or Sampler()
    if w.dense:
        rc = construct_R(w)
        if rc.status != FOUND:
            return AntipodeResult(FAILED, R=rc, failure=rc.failure, witness=rc.witness,
                                  source="reconstructed", info={"side": rc.side})
        if not all(rc.certificates.values()):
            bad = [k for k, v in rc.certificates.items() if not v]
            return AntipodeResult(FAILED, R=rc, failure=AXIOM_FAILURE, witness={"relation": bad[0]},
                                  source="reconstructed")
        try:
            S = extract_S(w, rc.R1, rc.R2)
        except MultiplierIncompatible as exc:
            return AntipodeResult(FAILED, R=rc, failure=AXIOM_FAILURE, witness=exc.witness,
                                  source="reconstructed")
        source = "reconstructed"
    else:
        rc = None
        S = declared_S(w)
        if S is None:
            return AntipodeResult(FAILED, failure=AXIOM_FAILURE,
                                  witness={"reason": "lazy instance without a declared antipode"},
                                  source="declared")
        source = "declared"
    rep = verify_antipode_axioms(w, S, sampler)
    if not rep.ok:
        r = next(x for x in rep.results if x.status == "fail")
        return AntipodeResult(FAILED, S=S, R=rc, failure=AXIOM_FAILURE, witness=r.witness,
                              report=rep, source=source)
    info = {}
    if w.dense:
        sq = all(al.clean(S.of(S(a).element).lam_basis(b) if isinstance(S(a).element, dict) else {}) ==
                 w.alg.mul_basis(a, b) for a in w.basis for b in w.basis) \
            if all(isinstance(S(a).element, dict) for a in w.basis) else None
        info["S o S = id"] = sq
    return AntipodeResult(FOUND, S=S, R=rc, report=rep, source=source, info=info)


def kernel_witness_holds(w: WMBInstance, vec: dict) -> bool:
    """vec lies in Ker(T1) but not in Ker(G1)."""
    m = endomaps(w)
    return not al.clean(m["T1"].on(vec)) and bool(al.clean(m["G1"].on(vec)))
