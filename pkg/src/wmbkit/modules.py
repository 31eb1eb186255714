"""Right A-modules, their restriction to the base algebra R, and the tensor product over R.

Module vectors are coordinate lists; an action is stored as one matrix per
algebra basis element, acting on column vectors.  The tensor product over R
is the image of the idempotent E-action on V(x)W, kept as a subspace with an
explicit embedding rather than as a quotient.
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
from .algebra import Multiplier, NonUnitalAlgebra
from .base import BARPIL, PIR, IllDefined, NotFull, pi
from .wmb import LawReport, LawResult, NotRegular, WMBInstance


def _unit_vec(n: int, i: int) -> list:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def kron(a: list, b: list) -> list:
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def _cols(m: list) -> list:
    return xl.transpose(m, len(m[0]) if m else 0)


@dataclass
class AModule:
    """Right A-module on Q^dim; act(i, a) is the element v_i . a as {index: coeff}."""
    name: str
    alg: NonUnitalAlgebra
    dim: int
    act: Callable
    labels: Optional[list] = None
    _mats: dict = field(default_factory=dict, repr=False)

    def matrix(self, a) -> list:
        if a not in self._mats:
            cols = []
            for i in range(self.dim):
                v = [Fraction(0)] * self.dim
                for j, c in self.act(i, a).items():
                    v[j] += c
                cols.append(v)
            self._mats[a] = xl.transpose(cols, self.dim) if cols else []
        return self._mats[a]

    def act_vec(self, v: list, x: dict) -> list:
        out = [Fraction(0)] * self.dim
        for a, c in x.items():
            for i, y in enumerate(xl.matvec(self.matrix(a), v)):
                if y:
                    out[i] += c * y
        return out

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"v{i}"


@dataclass
class ModuleReport:
    associative: Optional[dict]
    idempotent: bool
    nondegenerate: bool

    @property
    def ok(self) -> bool:
        return self.associative is None and self.idempotent and self.nondegenerate


def check_module(v: AModule) -> ModuleReport:
    alg = v.alg
    bad = None
    for i in range(v.dim):
        e = _unit_vec(v.dim, i)
        for a in alg.basis:
            va = xl.matvec(v.matrix(a), e)
            for b in alg.basis:
                if xl.matvec(v.matrix(b), va) != v.act_vec(e, alg.mul_basis(a, b)):
                    bad = {"tuple": [v.label(i), al.fmt_key(a), al.fmt_key(b)]}
                    break
            if bad:
                break
        if bad:
            break
    gens = [c for a in alg.basis for c in _cols(v.matrix(a))] if v.dim else []
    idem = xl.span(gens, v.dim).dim == v.dim
    stacked = [row for a in alg.basis for row in v.matrix(a)]
    nondeg = (xl.rank(stacked) == v.dim) if v.dim else True
    return ModuleReport(bad, idem, nondeg)


def _col(m: list, i: int) -> list:
    return [row[i] for row in m]


def _combine_cols(cols: list, coeffs, n: int) -> list:
    out = [Fraction(0)] * n
    for c, col in zip(coeffs, cols):
        if c:
            for i, x in enumerate(col):
                if x:
                    out[i] += c * x
    return out


def _section(v: AModule):
    """Generators v_i a, a maximal independent subset, and the inverse on it."""
    key = ("__section__",)
    if key not in v._mats:
        gens, labels = [], []
        for i in range(v.dim):
            for a in v.alg.basis:
                gens.append(_col(v.matrix(a), i))
                labels.append((i, a))
        G = xl.transpose(gens, v.dim) if gens else []
        _, piv = xl.rref_with_pivots(G) if gens else ([], [])
        if len(piv) < v.dim:
            v._mats[key] = (gens, labels, piv, None)
        else:
            Gp = xl.transpose([gens[j] for j in piv], v.dim)
            inv = xl.transpose([xl.solve(Gp, _unit_vec(v.dim, k))[0] for k in range(v.dim)], v.dim)
            v._mats[key] = (gens, labels, piv, inv)
    return v._mats[key]


def extend_action(v: AModule, m: Multiplier) -> list:
    """Matrix of v -> v.m, via v = sum v_i a_i and v.m = sum v_i (a_i m)."""
    gens, labels, piv, inv = _section(v)
    if inv is None:
        raise IllDefined(f"module {v.name} is not idempotent", {"rank": len(piv), "dim": v.dim})
    rho: dict = {}
    imgs = []
    for i, a in labels:
        if a not in rho:
            rho[a] = m.rho_basis(a)
        imgs.append(_combine_cols([_col(v.matrix(b), i) for b in rho[a]], list(rho[a].values()), v.dim))
    # the map fixed on the independent generators must reproduce every other image
    M = xl.matmul(xl.transpose([imgs[j] for j in piv], v.dim), inv)
    for g, h in zip(gens, imgs):
        if xl.matvec(M, g) != h:
            raise IllDefined(f"the action of {m.label} on {v.name} depends on the decomposition", {})
    return M


# ---------------------------------------------------------------- R as an A-module, restriction

def _require(w: WMBInstance):
    if not w.dense:
        raise al.UnsupportedBackend("modules are materialised on finite bases only")
    if not w.regular:
        raise NotRegular("module theory needs a regular instance")
    base._require_full(w, "R")


def r_as_a_module(w: WMBInstance) -> AModule:
    """R = piR(A) with r . b := piR(r b)."""
    _require(w)
    bs = base.base_basis(w, "R", PIR)

    def act(k, b):
        c = bs.coords_of(pi(w, PIR, bs.mults[k].lam_basis(b)))
        return {j: x for j, x in enumerate(c) if x}
    return AModule(f"R({w.name})", w.alg, bs.dim, act, labels=bs.labels())


def self_module(w: WMBInstance) -> AModule:
    idx = {b: i for i, b in enumerate(w.basis)}

    def act(i, a):
        return {idx[k]: c for k, c in w.alg.mul_basis(w.basis[i], a).items()}
    return AModule(f"self({w.name})", w.alg, len(w.basis), act, labels=[al.fmt_key(b) for b in w.basis])


def column_module(w: WMBInstance, n: int = 2) -> AModule:
    """f_k . (i,j) = [k == i] f_j for the pair groupoid on {1..n}."""
    def act(k, a):
        i, j = (int(s) for s in a.strip("()").split(","))
        return {j - 1: 1} if k == i - 1 else {}
    return AModule(f"col({w.name})", w.alg, n, act, labels=[f"f{k + 1}" for k in range(n)])


def zero_module(alg: NonUnitalAlgebra, dim: int = 1) -> AModule:
    return AModule("zero", alg, dim, lambda i, a: {})


@dataclass
class RBimodule:
    module: AModule
    space: base.BaseSpace
    left: list   # left[k]: matrix of r_k . (-)
    right: list  # right[k]: matrix of (-) . r_k
    products: list  # products[k][l]: coords of r_k r_l
    unit: Optional[list]
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _r_products(w: WMBInstance, bs: base.BaseSpace) -> list:
    return [[bs.coords_of(mk * ml) for ml in bs.mults] for mk in bs.mults]


def _comb(coeffs, mats, dim):
    out = xl.zeros(dim, dim)
    for c, m in zip(coeffs, mats):
        if c:
            out = [[x + c * y for x, y in zip(ro, rm)] for ro, rm in zip(out, m)]
    return out


def restrict_to_R(w: WMBInstance, v: AModule) -> RBimodule:
    """(va).piR(b) := v(a piR(b)) and piR(b).(va) := v(a barpiL(b))."""
    _require(w)
    bs = base.base_basis(w, "R", PIR)
    right = [extend_action(v, pi(w, PIR, p)) for p in bs.pre]
    left = [extend_action(v, pi(w, BARPIL, p)) for p in bs.pre]
    prods = _r_products(w, bs)
    n, d = bs.dim, v.dim
    checks = {}
    checks["actions commute"] = all(xl.matmul(L, R) == xl.matmul(R, L) for L in left for R in right)
    checks["right action"] = all(xl.matmul(right[l], right[k]) == _comb(prods[k][l], right, d)
                                 for k in range(n) for l in range(n))
    checks["left action"] = all(xl.matmul(left[k], left[l]) == _comb(prods[k][l], left, d)
                                for k in range(n) for l in range(n))
    # R is finite dimensional with local units, hence unital; firm means the unit acts as 1
    rows, rhs = [], []
    for l in range(n):
        for t in range(n):
            rows.append([prods[k][l][t] for k in range(n)])
            rhs.append(Fraction(int(t == l)))
    sol = xl.solve(rows, rhs)
    unit = sol[0] if sol else None
    I = xl.identity(d)
    checks["R unital"] = unit is not None
    checks["firm"] = unit is not None and _comb(unit, left, d) == I and _comb(unit, right, d) == I
    return RBimodule(v, bs, left, right, prods, unit, checks)


def hom_A(v: AModule, u: AModule) -> list:
    """Basis of A-module maps v -> u, as matrices (u.dim x v.dim)."""
    dv, du = v.dim, u.dim
    rows = []
    for a in v.alg.basis:
        Va, Ua = v.matrix(a), u.matrix(a)
        # (f Va - Ua f)[p][q] = sum_r f[p][r] Va[r][q] - sum_r Ua[p][r] f[r][q]
        for p in range(du):
            for q in range(dv):
                row = [Fraction(0)] * (du * dv)
                for r in range(dv):
                    row[p * dv + r] += Va[r][q]
                for r in range(du):
                    row[r * dv + q] -= Ua[p][r]
                rows.append(row)
    ker = xl.kernel(rows, du * dv) if rows else xl.span([_unit_vec(du * dv, i) for i in range(du * dv)], du * dv)
    return [[list(vec[p * dv:(p + 1) * dv]) for p in range(du)] for vec in ker.basis]


def check_functoriality(w: WMBInstance, v: AModule, u: AModule) -> Optional[dict]:
    """Every A-module map v -> u commutes with the restricted R-actions."""
    rv, ru = restrict_to_R(w, v), restrict_to_R(w, u)
    for idx, f in enumerate(hom_A(v, u)):
        for k in range(rv.space.dim):
            if xl.matmul(f, rv.left[k]) != xl.matmul(ru.left[k], f):
                return {"map": idx, "side": "left", "r": k}
            if xl.matmul(f, rv.right[k]) != xl.matmul(ru.right[k], f):
                return {"map": idx, "side": "right", "r": k}
    return None


# ---------------------------------------------------------------- tensor over R

def tensor_module(v: AModule, u: AModule) -> AModule:
    """V(x)W as a right module over A(x)A; index i*dim(W)+j."""
    t2 = al.tensor(v.alg, u.alg)
    du = u.dim

    def act(idx, ab):
        i, j = divmod(idx, du)
        x, y = v.act(i, ab[0]), u.act(j, ab[1])
        return {p * du + q: c * d for p, c in x.items() for q, d in y.items()}
    labels = [f"{v.label(i)}(x){u.label(j)}" for i in range(v.dim) for j in range(du)]
    return AModule(f"{v.name}(x){u.name}", t2, v.dim * du, act, labels=labels)


def delta_multiplier(w: WMBInstance, c) -> Multiplier:
    t2 = al.tensor(w.alg, w.alg)
    return Multiplier(t2, lambda k: w.d_basis(c, None, None, k[0], k[1]),
                      lambda k: w.d_basis(c, k[0], k[1], None, None), f"D({al.fmt_key(c)})")


@dataclass
class TensorOverR:
    module: AModule     # V (x)_R W with its A-action
    V: AModule
    W: AModule
    ambient: AModule    # V(x)W over A(x)A
    theta: list         # E-action on V(x)W
    inj: list           # ambient x dim
    surj: list          # dim x ambient
    checks: dict

    def embed(self, coords: list) -> list:
        return xl.matvec(self.inj, coords)

    def coords(self, vec: list) -> list:
        return xl.matvec(self.surj, vec)


def tensor_over_R(w: WMBInstance, v: AModule, u: AModule) -> TensorOverR:
    from .constructors import e_multiplier
    _require(w)
    amb = tensor_module(v, u)
    theta = extend_action(amb, e_multiplier(w))
    checks = {"theta idempotent": xl.matmul(theta, theta) == theta}
    if not checks["theta idempotent"]:
        raise xl.NotIdempotent("the E-action on the tensor square is not idempotent")
    inj, surj = xl.split_idempotent(theta)
    d = len(surj)
    img = xl.image(theta)
    acts = {}
    preserved = True
    for c in w.basis:
        M = extend_action(amb, delta_multiplier(w, c))
        for col in _cols(xl.matmul(M, inj)) if d else []:
            preserved &= img.contains(col)
        acts[c] = xl.matmul(xl.matmul(surj, M), inj) if d else []
    checks["carrier stable under A"] = preserved

    def act(k, c):
        return {j: acts[c][j][k] for j in range(d) if acts[c][j][k]}
    mod = AModule(f"{v.name}(x)_R {u.name}", w.alg, d, act)
    rep = check_module(mod)
    checks["A-module"] = rep.ok
    return TensorOverR(mod, v, u, amb, theta, inj, surj, checks)


# ---------------------------------------------------------------- monoidal structure

def _res(id_, anchor, bad, checked) -> LawResult:
    return LawResult(id_, anchor, "fail" if bad else "pass", "exhaustive", checked, bad)


def _unit_map(w, t: TensorOverR, kind: str, on_left: bool) -> list:
    """Matrix of R(x)_R V -> V (or V(x)_R R -> V), restricted to the carrier."""
    bs = base.base_basis(w, "R", PIR)
    mod = t.W if on_left else t.V
    acts = [extend_action(mod, pi(w, kind, p)) for p in bs.pre]
    amb_cols = []
    if on_left:
        for k in range(bs.dim):
            for i in range(mod.dim):
                amb_cols.append([row[i] for row in acts[k]])
    else:
        for i in range(mod.dim):
            for k in range(bs.dim):
                amb_cols.append([row[i] for row in acts[k]])
    Phi = xl.transpose(amb_cols, mod.dim)
    return xl.matmul(Phi, t.inj) if t.module.dim else xl.zeros(mod.dim, 0)


def _iso_and_map(L: list, src: AModule, dst: AModule) -> Optional[dict]:
    if src.dim != dst.dim or xl.rank(L) != dst.dim:
        return {"part": "not bijective", "dims": [src.dim, dst.dim], "rank": xl.rank(L) if L else 0}
    for c in src.alg.basis:
        if xl.matmul(L, src.matrix(c)) != xl.matmul(dst.matrix(c), L):
            return {"part": "not an A-module map", "c": al.fmt_key(c)}
    return None


def _actions_agree(w, J1, T1: TensorOverR, J2, T2: TensorOverR) -> Optional[dict]:
    for k in range(T1.module.dim):
        u = [row[k] for row in J1]
        c2 = xl.solve(J2, u)[0]
        for c in w.basis:
            l = xl.matvec(J1, xl.matvec(T1.module.matrix(c), _unit_vec(T1.module.dim, k)))
            r = xl.matvec(J2, xl.matvec(T2.module.matrix(c), c2))
            if l != r:
                return {"carrier vector": k, "c": al.fmt_key(c)}
    return None


def verify_monoidal(w: WMBInstance, v: AModule, u: AModule, z: AModule) -> LawReport:
    _require(w)
    results = []
    bs = base.base_basis(w, "R", PIR)
    A = "modules"
    # associativity: both iterated carriers inside V(x)W(x)Z
    vw = tensor_over_R(w, v, u)
    t1 = tensor_over_R(w, vw.module, z)
    uz = tensor_over_R(w, u, z)
    t2 = tensor_over_R(w, v, uz.module)
    J1 = xl.matmul(kron(vw.inj, xl.identity(z.dim)), t1.inj) if t1.module.dim else []
    J2 = xl.matmul(kron(xl.identity(v.dim), uz.inj), t2.inj) if t2.module.dim else []
    N = v.dim * u.dim * z.dim
    s1 = xl.span(_cols(J1), N) if J1 else xl.span([], N)
    s2 = xl.span(_cols(J2), N) if J2 else xl.span([], N)
    bad = None if xl.subspace_equal(s1, s2) else {"dims": [s1.dim, s2.dim]}
    results.append(_res("MON-ASSOC-CARRIER", "(V(x)_R W)(x)_R Z = V(x)_R(W(x)_R Z) inside V(x)W(x)Z", bad, 1))
    bad = bad or _actions_agree(w, J1, t1, J2, t2)
    results.append(_res("MON-ASSOC-ACTION", "the two induced A-actions agree on the common carrier", bad,
                        t1.module.dim * len(w.basis)))
    # unit constraints
    R = r_as_a_module(w)
    rv = tensor_over_R(w, R, v)
    vr = tensor_over_R(w, v, R)
    results.append(_res("MON-UNIT-DIM", "dim R(x)_R V = dim V = dim V(x)_R R",
                        None if rv.module.dim == v.dim == vr.module.dim
                        else {"dims": [rv.module.dim, v.dim, vr.module.dim]}, 1))
    results.append(_res("MON-LUNIT", "R(x)_R V -> V, piR(a)(x)v -> v barpiL(a), is an A-module isomorphism",
                        _iso_and_map(_unit_map(w, rv, BARPIL, True), rv.module, v), 1))
    results.append(_res("MON-RUNIT", "V(x)_R R -> V, v(x)piR(a) -> v piR(a), is an A-module isomorphism",
                        _iso_and_map(_unit_map(w, vr, PIR, False), vr.module, v), 1))
    # U strict monoidal, balancing, theta
    rb_v, rb_u = restrict_to_R(w, v), restrict_to_R(w, u)
    rb_vw = restrict_to_R(w, vw.module)
    bad_s = bad_b = None
    checked = 0
    th = vw.theta
    for i in range(v.dim):
        for j in range(u.dim):
            e = _unit_vec(v.dim * u.dim, i * u.dim + j)
            t = xl.matvec(th, e)
            c = vw.coords(t)
            for k in range(bs.dim):
                checked += 1
                ev, eu = _unit_vec(v.dim, i), _unit_vec(u.dim, j)
                lv = xl.matvec(rb_v.left[k], ev)
                ru = xl.matvec(rb_u.right[k], eu)
                lhs_l = vw.embed(xl.matvec(rb_vw.left[k], c))
                rhs_l = xl.matvec(th, [x * y for x in lv for y in eu])
                lhs_r = vw.embed(xl.matvec(rb_vw.right[k], c))
                rhs_r = xl.matvec(th, [x * y for x in ev for y in ru])
                if bad_s is None and (lhs_l != rhs_l or lhs_r != rhs_r):
                    bad_s = {"tuple": [v.label(i), u.label(j), bs.labels()[k]]}
                rv_ = xl.matvec(rb_v.right[k], ev)
                lu = xl.matvec(rb_u.left[k], eu)
                if bad_b is None and xl.matvec(th, [x * y for x in rv_ for y in eu]) != \
                        xl.matvec(th, [x * y for x in ev for y in lu]):
                    bad_b = {"tuple": [v.label(i), u.label(j), bs.labels()[k]]}
    results.append(_res("MON-STRICT", "r.(v(x)_R w).r' = (r.v)(x)_R(w.r') for the restricted R-actions",
                        bad_s, checked))
    results.append(_res("MON-BALANCE", "theta(v.r (x) w) = theta(v (x) r.w)", bad_b, checked))
    results.append(_res("MON-THETA", "the E-action on V(x)W is idempotent",
                        None if all(x.checks["theta idempotent"] for x in (vw, t1, uz, t2)) else {}, 4))
    # three forms of the action
    bad = None
    checked = 0
    amb = vw.ambient
    for i, j in itertools.product(range(v.dim), range(u.dim)):
        ev, eu = _unit_vec(v.dim, i), _unit_vec(u.dim, j)
        e = _unit_vec(amb.dim, i * u.dim + j)
        for a, b, c in itertools.product(w.basis, repeat=3):
            checked += 1
            y = amb.act_vec(e, w.e_basis(a, b, None, None))
            f1 = xl.matvec(extend_action_cached(w, amb, c), y)
            va = xl.matvec(v.matrix(a), ev)
            ub = xl.matvec(u.matrix(b), eu)
            f2 = amb.act_vec([x * q for x in va for q in eu], w.T3(c, b))
            f3 = amb.act_vec([x * q for x in ev for q in ub], w.T2(a, c))
            if not (f1 == f2 == f3):
                bad = {"tuple": [v.label(i), u.label(j), al.fmt_key(a), al.fmt_key(b), al.fmt_key(c)]}
                break
        if bad:
            break
    results.append(_res("MON-ACTION-FORMS", "((v(x)w)((a(x)b)E))c = (va(x)w)T3(c(x)b) = (v(x)wb)T2(a(x)c)",
                        bad, checked))
    results.append(_res("MON-A-MODULE", "each tensor product is an idempotent non-degenerate A-module",
                        None if all(x.checks["A-module"] and x.checks["carrier stable under A"]
                                    for x in (vw, t1, uz, t2, rv, vr)) else {}, 6))
    return LawReport(f"{w.name}:({v.name},{u.name},{z.name})", results)


def extend_action_cached(w: WMBInstance, amb: AModule, c) -> list:
    """Action of D(c) on an ambient tensor module, memoised on the module."""
    key = ("delta_action", c)
    if key not in amb._mats:
        amb._mats[key] = extend_action(amb, delta_multiplier(w, c))
    return amb._mats[key]
