"""Base algebras: the projections pi_L, pi_R, bar-pi_L, bar-pi_R, the
multiplier F, the base coalgebra and its Nakayama automorphism.

All four projections return ``Multiplier`` objects.  On a dense instance the
base algebra is materialised as a subspace of M(A), using the flattened
action matrices of ``Multiplier.vector``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from . import algebra as al
from . import exactlin as xl
from . import wmb
from .algebra import Multiplier, add_into, clean, lin
from .wmb import B, NotRegular, WMBInstance, register

PIL, PIR, BARPIL, BARPIR = "PiL", "PiR", "BarPiL", "BarPiR"
KINDS = (PIL, PIR, BARPIL, BARPIR)


class NotFull(ValueError):
    pass


class IllDefined(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class WellDefinednessFailed(IllDefined):
    pass


class DegenerateForm(ValueError):
    pass


# ---------------------------------------------------------------- the pi maps

def _pi_actions(w: WMBInstance, kind: str, a):
    if kind == BARPIL:
        return (lambda b: w.eps_id(w.T2(a, b)),
                lambda b: w.eps_id(w.e_basis(a, b, None, None)))
    if kind == BARPIR:
        return (lambda b: w.id_eps(w.e_basis(None, None, b, a)),
                lambda b: w.id_eps(w.T1(b, a)))
    if not w.regular:
        raise NotRegular(f"{kind} needs a regular instance")
    if kind == PIL:
        return (lambda b: w.eps_id(w.e_basis(None, None, a, b)),
                lambda b: w.eps_id(w.T4(a, b)))
    if kind == PIR:
        return (lambda b: w.id_eps(w.T3(b, a)),
                lambda b: w.id_eps(w.e_basis(b, a, None, None)))
    raise ValueError(f"unknown base map kind {kind!r}")


def pi(w: WMBInstance, kind: str, a) -> Multiplier:
    """pi_kind(a) for a basis index a, or for an element given as a dict."""
    if isinstance(a, dict):
        return al.combine(w.alg, [(c, pi(w, kind, k)) for k, c in a.items()],
                          f"{kind}({al.fmt(a)})")
    cache = w._cache.setdefault("pi", {})
    key = (kind, a)
    if key not in cache:
        lam, rho = _pi_actions(w, kind, a)
        lc: dict = {}
        rc: dict = {}

        def lam_c(b, lam=lam, lc=lc):
            if b not in lc:
                lc[b] = lam(b)
            return lc[b]

        def rho_c(b, rho=rho, rc=rc):
            if b not in rc:
                rc[b] = rho(b)
            return rc[b]

        cache[key] = Multiplier(w.alg, lam_c, rho_c, f"{kind}({al.fmt_key(a)})")
    return cache[key]


def pi_elem(w: WMBInstance, kind: str, x: dict) -> Multiplier:
    return pi(w, kind, x)


def image_space(w: WMBInstance, kind: str) -> xl.Subspace:
    if not w.dense:
        raise al.UnsupportedBackend("base algebras are materialised on finite bases only")
    n = len(w.basis)
    return xl.span([pi(w, kind, b).vector() for b in w.basis], 2 * n * n)


# ---------------------------------------------------------------- base spaces

@dataclass
class BaseSpace:
    """A basis pi_kind(pre[i]) of the image pi_kind(A) inside M(A)."""
    side: str
    kind: str
    pre: list
    mults: list
    vecs: list
    equal_bar: bool

    @property
    def dim(self) -> int:
        return len(self.pre)

    def coords(self, vec) -> Optional[list]:
        if not self.vecs:
            return [] if not any(vec) else None
        sol = xl.solve(xl.transpose(self.vecs, len(vec)), vec)
        return None if sol is None else sol[0]

    def coords_of(self, m: Multiplier) -> Optional[list]:
        return self.coords(m.vector())

    def multiplier(self, coords) -> Multiplier:
        return al.combine(self.mults[0].alg, list(zip(coords, self.mults)))

    def labels(self) -> list:
        return [m.label for m in self.mults]


def base_basis(w: WMBInstance, side: str = "R", kind: Optional[str] = None) -> BaseSpace:
    if not w.dense:
        raise al.UnsupportedBackend("base algebras are materialised on finite bases only")
    kind = kind or (PIR if side == "R" else BARPIL)
    bar = {PIR: BARPIR, BARPIR: PIR, PIL: BARPIL, BARPIL: PIL}[kind]
    key = ("base_basis", side, kind)
    if key in w._cache:
        return w._cache[key]
    pre, mults, vecs = [], [], []
    n = len(w.basis)
    rank = 0
    for b in w.basis:
        m = pi(w, kind, b)
        v = m.vector()
        r = xl.rank(vecs + [v])
        if r > rank:
            pre.append(b)
            mults.append(m)
            vecs.append(v)
            rank = r
    equal = False
    if w.regular or kind in (BARPIL, BARPIR) and bar in (BARPIL, BARPIR):
        try:
            equal = xl.subspace_equal(image_space(w, kind), image_space(w, bar))
        except NotRegular:
            equal = False
    bs = BaseSpace(side, kind, pre, mults, vecs, equal)
    w._cache[key] = bs
    return bs


def _require_full(w: WMBInstance, side: str):
    from .wmb import classify
    cl = w._cache.get("classification")
    if cl is None:
        cl = classify(w)
        w._cache["classification"] = cl
    ok = cl.right_full if side == "R" else cl.left_full
    if not ok:
        raise NotFull(f"instance {w.name} is not {'right' if side == 'R' else 'left'}-full")


def induced_map(w: WMBInstance, src_kind: str, dst_kind: str, dst: Optional[BaseSpace] = None,
                src: Optional[BaseSpace] = None, what: str = "") -> Any:
    """The linear map src_kind(a) -> dst_kind(a), certified well defined.

    Returns (matrix, src_space, dst_space) with the matrix expressed in base
    coordinates; raises WellDefinednessFailed when Ker(src) is not contained in
    Ker(dst)."""
    n = len(w.basis)
    sv = [pi(w, src_kind, b).vector() for b in w.basis]
    dv = [pi(w, dst_kind, b).vector() for b in w.basis]
    ker = xl.kernel(xl.transpose(sv, 2 * n * n), n)
    for kv in ker.basis:
        img = [sum((c * v[i] for c, v in zip(kv, dv)), Fraction(0)) for i in range(2 * n * n)]
        if any(img):
            p = w.alg.from_vec(kv)
            raise WellDefinednessFailed(f"{what or src_kind + '->' + dst_kind} is not well defined",
                                        {"p": wmb._render(p)})
    src = src or base_basis(w, "?", src_kind)
    dst = dst or base_basis(w, "?", dst_kind)
    cols = []
    for m in src.mults:
        s = xl.solve(xl.transpose(sv, 2 * n * n), m.vector())
        img = [sum((c * v[i] for c, v in zip(s[0], dv)), Fraction(0)) for i in range(2 * n * n)]
        cd = dst.coords(img)
        if cd is None:
            raise WellDefinednessFailed(f"{what}: image leaves the target base")
        cols.append(cd)
    return xl.transpose(cols, dst.dim), src, dst


# ---------------------------------------------------------------- counits

def base_counit(w: WMBInstance, side: str = "R") -> dict:
    """eps_R (or eps_L) on the base basis, after the kernel certificate."""
    if not w.dense:
        raise al.UnsupportedBackend("base counit needs a finite basis")
    _require_full(w, side)
    bs = base_basis(w, side)
    n = len(w.basis)
    vecs = [pi(w, bs.kind, b).vector() for b in w.basis]
    ker = xl.kernel(xl.transpose(vecs, 2 * n * n), n)
    for kv in ker.basis:
        p = w.alg.from_vec(kv)
        if w.eps(p) != 0:
            raise IllDefined("eps does not vanish on the kernel of the projection",
                             {"p": wmb._render(p), "eps(p)": al.fmt_scalar(w.eps(p))})
    return {i: Fraction(w.counit(a)) for i, a in enumerate(bs.pre)}


# ---------------------------------------------------------------- F

def f_multiplier(w: WMBInstance) -> Multiplier:
    """The multiplier F on A(x)A, given by its left and right actions."""
    if not w.regular:
        raise NotRegular("F needs a regular instance")
    if "F" in w._cache:
        return w._cache["F"]
    alg = w.alg
    t2 = al.tensor(alg, alg)

    def lam(k):
        x, y = k
        acc: dict = {}
        for c, b, cc in alg.factor(y):
            for (p, q), d in w.T4(cc, b).items():
                for u, e in pi(w, BARPIR, q).lam_basis(x).items():
                    add_into(acc, {(u, p): 1}, c * d * e)
        return acc

    def rho(k):
        x, y = k
        acc: dict = {}
        for c, a, b in alg.factor(x):
            for (u, v), d in w.T2(a, b).items():
                for z, e in pi(w, PIR, v).rho_basis(y).items():
                    add_into(acc, {(u, z): 1}, c * d * e)
        return acc

    cl: dict = {}
    cr: dict = {}

    def lam_c(k):
        if k not in cl:
            cl[k] = lam(k)
        return cl[k]

    def rho_c(k):
        if k not in cr:
            cr[k] = rho(k)
        return cr[k]

    F = Multiplier(t2, lam_c, rho_c, "F")
    w._cache["F"] = F
    return F


def F_left(w: WMBInstance, X: dict) -> dict:
    return lin(f_multiplier(w).lam_basis, X)


def F_right(w: WMBInstance, X: dict) -> dict:
    return lin(f_multiplier(w).rho_basis, X)


def f_well_defined(w: WMBInstance) -> Optional[dict]:
    """Both F rules respect every linear relation among products bc."""
    n = len(w.basis)
    pairs = list(itertools.product(w.basis, repeat=2))
    prods = [w.alg.to_vec(w.alg.mul_basis(b, c)) for b, c in pairs]
    ker = xl.kernel(xl.transpose(prods, n), len(pairs))
    for kv in ker.basis:
        for x in w.basis:
            left: dict = {}
            right: dict = {}
            for k, (b, c) in zip(kv, pairs):
                if not k:
                    continue
                for (p, q), d in w.T4(c, b).items():
                    for u, e in pi(w, BARPIR, q).lam_basis(x).items():
                        add_into(left, {(u, p): 1}, k * d * e)
                for (u, v), d in w.T2(b, c).items():
                    for z, e in pi(w, PIR, v).rho_basis(x).items():
                        add_into(right, {(u, z): 1}, k * d * e)
            if left or right:
                rel = {(b, c): k for k, (b, c) in zip(kv, pairs) if k}
                return {"part": "F rule depends on the factorisation", "relation": wmb._render(rel),
                        "x": al.fmt_key(x), "lhs": wmb._render(left), "rhs": wmb._render(right)}
    return None


# ---------------------------------------------------------------- base coalgebra

@dataclass
class BaseCoalgebra:
    side: str
    space: BaseSpace
    mult: dict  # (i, j) -> coordinate list
    delta: dict  # i -> {(j, k): coeff}
    counit: dict  # i -> scalar
    unit: Optional[list]
    nakayama: Optional[list] = None
    certificates: dict = field(default_factory=dict)
    group_like: Optional[list] = None

    @property
    def dim(self) -> int:
        return self.space.dim

    def to_json(self) -> dict:
        fs = al.fmt_scalar
        d = {"side": self.side, "dim": self.dim, "basis": self.space.labels(),
             "counit": [fs(self.counit[i]) for i in range(self.dim)],
             "delta": [[[f"{j},{k}", fs(c)] for (j, k), c in sorted(self.delta[i].items())]
                       for i in range(self.dim)],
             "unit": None if self.unit is None else [fs(c) for c in self.unit],
             "certificates": {k: v[0] for k, v in sorted(self.certificates.items())}}
        if self.nakayama is not None:
            d["nakayama"] = [[fs(c) for c in row] for row in self.nakayama]
        if self.group_like is not None:
            d["group_like_basis"] = self.group_like
        return d


def _coords_pair(bs: BaseSpace, X: list) -> Optional[dict]:
    """Coordinates in base(x)base of a sum of c * m1 (x) m2."""
    out: dict = {}
    for c, m1, m2 in X:
        c1 = bs.coords_of(m1)
        c2 = bs.coords_of(m2)
        if c1 is None or c2 is None:
            return None
        for j, x in enumerate(c1):
            for k, y in enumerate(c2):
                if x and y:
                    add_into(out, {(j, k): 1}, c * x * y)
    return out


def _delta_forms(w: WMBInstance, side: str):
    """Formulas giving delta(pi(ab)) as lists of (coeff, m1, m2)."""
    if side == "R":
        def main(a, b):
            return [(c, pi(w, PIR, u), pi(w, PIR, v)) for (u, v), c in w.T2(a, b).items()]

        def alt(a, b):
            return [(c, pi(w, PIR, u), pi(w, PIR, v)) for (u, v), c in w.T3(b, a).items()]

        def bar(a, b):
            return [(c, pi(w, BARPIR, v), pi(w, BARPIR, u)) for (u, v), c in w.T4(b, a).items()]

        def bar2(a, b):
            return [(c, pi(w, BARPIR, v), pi(w, BARPIR, u)) for (u, v), c in w.T1(a, b).items()]

        return PIR, BARPIR, main, alt, bar, bar2
    # L side: primary form through bar-pi_L and T3^op
    def main_l(a, b):
        return [(c, pi(w, BARPIL, v), pi(w, BARPIL, u)) for (u, v), c in w.T3(b, a).items()]

    def alt_l(a, b):
        return [(c, pi(w, BARPIL, v), pi(w, BARPIL, u)) for (u, v), c in w.T2(a, b).items()]

    return BARPIL, PIL, main_l, alt_l, None, None


def base_coalgebra(w: WMBInstance, side: str = "R") -> BaseCoalgebra:
    if not w.dense:
        raise al.UnsupportedBackend("base coalgebra needs a finite basis")
    if not w.regular:
        raise NotRegular("base coalgebra needs a regular instance")
    key = ("base_coalgebra", side)
    if key in w._cache:
        return w._cache[key]
    _require_full(w, side)
    prim, other, main, alt, bar, bar2 = _delta_forms(w, side)
    bs = base_basis(w, side, prim)
    d = bs.dim
    cert: dict = {}
    mult = {}
    for i in range(d):
        for j in range(d):
            mult[i, j] = bs.coords_of(bs.mults[i] * bs.mults[j])
    cert["closed under product"] = (all(v is not None for v in mult.values()), None)
    counit = base_counit(w, side) if prim in (PIR, BARPIL) else None
    if counit is None:
        counit = {i: Fraction(w.counit(a)) for i, a in enumerate(bs.pre)}
    # delta on the basis from one factorisation, then certified on all products
    delta = {}
    for i, a in enumerate(bs.pre):
        acc: dict = {}
        for c, x, y in w.alg.factor(a):
            v = _coords_pair(bs, main(x, y))
            if v is None:
                raise IllDefined("delta leaves base (x) base", {"a": al.fmt_key(a)})
            add_into(acc, v, c)
        delta[i] = acc

    def delta_lin(coords):
        acc: dict = {}
        for i, c in enumerate(coords):
            if c:
                add_into(acc, delta[i], c)
        return acc

    wd, same_alt, same_bar = None, None, None
    for a in w.basis:
        for b in w.basis:
            ab = w.alg.mul_basis(a, b)
            cab = bs.coords_of(pi(w, prim, ab))
            lhs = delta_lin(cab)
            v = _coords_pair(bs, main(a, b))
            if v != lhs and wd is None:
                wd = {"tuple": [al.fmt_key(a), al.fmt_key(b)], "lhs": sorted(map(str, lhs.items())),
                      "rhs": sorted(map(str, (v or {}).items()))}
            v2 = _coords_pair(bs, alt(a, b))
            if v2 != lhs and same_alt is None:
                same_alt = {"tuple": [al.fmt_key(a), al.fmt_key(b)], "part": "alternative form"}
            if bar is not None:
                # bar route in the same coordinates, via delta(bar-pi(ab))
                cbar = bs.coords_of(pi(w, other, ab))
                lb = delta_lin(cbar) if cbar is not None else None
                for form in (bar, bar2):
                    vb = _coords_pair(bs, form(a, b))
                    if (vb is None or vb != lb) and same_bar is None:
                        same_bar = {"tuple": [al.fmt_key(a), al.fmt_key(b)], "part": "bar form"}
    cert["delta well defined"] = (wd is None, wd)
    cert["delta alternative form"] = (same_alt is None, same_alt)
    if bar is not None:
        cert["delta bar form"] = (same_bar is None, same_bar)
        bad = next((a for a in w.basis
                    if _lin_counit(counit, bs.coords_of(pi(w, BARPIR, a))) != w.counit(a)), None)
        cert["eps_R bar"] = (bad is None, None if bad is None else {"a": al.fmt_key(bad)})

    def mult_lin(c1, c2):
        out = [Fraction(0)] * d
        for i, x in enumerate(c1):
            for j, y in enumerate(c2):
                if x and y:
                    for k, z in enumerate(mult[i, j]):
                        out[k] += x * y * z
        return out

    # section: mu delta = id
    sec = None
    for i in range(d):
        out = [Fraction(0)] * d
        for (j, k), c in delta[i].items():
            for t, z in enumerate(mult[j, k]):
                out[t] += c * z
        if out != _unit_vec(d, i) and sec is None:
            sec = {"basis": i}
    cert["mu delta = id"] = (sec is None, sec)
    # counit on both sides
    cu = None
    for i in range(d):
        left = [Fraction(0)] * d
        right = [Fraction(0)] * d
        for (j, k), c in delta[i].items():
            left[k] += c * counit[j]
            right[j] += c * counit[k]
        if (left != _unit_vec(d, i) or right != _unit_vec(d, i)) and cu is None:
            cu = {"basis": i}
    cert["counital"] = (cu is None, cu)
    # coassociativity
    ca = None
    for i in range(d):
        l: dict = {}
        r: dict = {}
        for (j, k), c in delta[i].items():
            for (p, q), e in delta[j].items():
                add_into(l, {(p, q, k): 1}, c * e)
            for (p, q), e in delta[k].items():
                add_into(r, {(j, p, q): 1}, c * e)
        if l != r and ca is None:
            ca = {"basis": i}
    cert["coassociative"] = (ca is None, ca)
    # bimodule map: delta(rs) = (r(x)1)delta(s) = delta(r)(1(x)s)
    bm = None
    for i in range(d):
        for j in range(d):
            lhs = delta_lin(mult[i, j])
            m1: dict = {}
            m2: dict = {}
            for (p, q), c in delta[j].items():
                for t, z in enumerate(mult[i, p]):
                    if z:
                        add_into(m1, {(t, q): 1}, c * z)
            for (p, q), c in delta[i].items():
                for t, z in enumerate(mult[q, j]):
                    if z:
                        add_into(m2, {(p, t): 1}, c * z)
            if (lhs != m1 or lhs != m2) and bm is None:
                bm = {"pair": [i, j]}
    cert["bimodule map"] = (bm is None, bm)
    # unit by linear solve: u r = r = r u for all basis r
    rows, rhs = [], []
    for j in range(d):
        for k in range(d):
            rows.append([mult[i, j][k] for i in range(d)])
            rhs.append(Fraction(1 if j == k else 0))
            rows.append([mult[j, i][k] for i in range(d)])
            rhs.append(Fraction(1 if j == k else 0))
    sol = xl.solve(rows, rhs) if d else None
    unit = sol[0] if sol else None
    cert["local units"] = (unit is not None, None)
    # group-like basis
    gl = []
    seen = set()
    for a in w.basis:
        cv = bs.coords_of(pi(w, prim, a))
        if cv is None or not any(cv) or tuple(cv) in seen:
            continue
        dl = delta_lin(cv)
        sq = {(j, k): x * y for j, x in enumerate(cv) for k, y in enumerate(cv) if x and y}
        if dl == sq:
            seen.add(tuple(cv))
            gl.append(cv)
    group_like = None
    if gl and xl.rank(gl) == d:
        group_like = [[al.fmt_scalar(c) for c in v] for v in gl]
    bc = BaseCoalgebra(side, bs, mult, delta, counit, unit, None, cert, group_like)
    w._cache[key] = bc
    return bc


def _unit_vec(d, i):
    v = [Fraction(0)] * d
    v[i] = Fraction(1)
    return v


def _lin_counit(counit, coords):
    if coords is None:
        return None
    return sum((c * counit[i] for i, c in enumerate(coords)), Fraction(0))


# ---------------------------------------------------------------- Nakayama and sigma

def nakayama(w: WMBInstance, side: str = "R") -> list:
    """theta with eps_R(s r) = eps_R(theta(r) s), as a matrix on the base basis."""
    bc = base_coalgebra(w, side)
    d = bc.dim
    M = [[_lin_counit(bc.counit, bc.mult[t, s]) for s in range(d)] for t in range(d)]
    if xl.rank(M) < d:
        raise DegenerateForm("the form (s, r) -> eps_R(sr) is degenerate")
    MT = xl.transpose(M, d)
    cols = []
    for r in range(d):
        sol = xl.solve(MT, [M[s][r] for s in range(d)])
        cols.append(sol[0])
    theta = xl.transpose(cols, d)
    bc.nakayama = theta
    return theta


def _apply(mat, v):
    return xl.matvec(mat, v)


@dataclass
class SigmaMaps:
    sigma: list
    sigma_bar: list
    tau: list
    tau_bar: list
    R: BaseSpace
    L: BaseSpace
    certificates: dict


def sigma_maps(w: WMBInstance) -> SigmaMaps:
    if not w.dense:
        raise al.UnsupportedBackend("sigma maps need a finite basis")
    if "sigma" in w._cache:
        return w._cache["sigma"]
    _require_full(w, "R")
    _require_full(w, "L")
    R = base_basis(w, "R", PIR)
    L = base_basis(w, "L", BARPIL)
    sig, _, _ = induced_map(w, BARPIL, PIR, dst=R, src=L, what="sigma")
    tau, _, _ = induced_map(w, PIR, BARPIL, dst=L, src=R, what="tau")
    sigb, _, _ = induced_map(w, PIL, BARPIR, dst=R, src=L, what="sigma_bar")
    taub, _, _ = induced_map(w, BARPIR, PIL, dst=L, src=R, what="tau_bar")
    cert: dict = {}
    dR, dL = R.dim, L.dim
    cert["tau sigma = id"] = (xl.matmul(tau, sig) == xl.identity(dL), None)
    cert["sigma tau = id"] = (xl.matmul(sig, tau) == xl.identity(dR), None)
    cert["tau_bar sigma_bar = id"] = (xl.matmul(taub, sigb) == xl.identity(dL), None)
    cert["sigma_bar tau_bar = id"] = (xl.matmul(sigb, taub) == xl.identity(dR), None)
    # anti-multiplicativity on basis pairs
    multR = {(i, j): R.coords_of(R.mults[i] * R.mults[j]) for i in range(dR) for j in range(dR)}
    multL = {(i, j): L.coords_of(L.mults[i] * L.mults[j]) for i in range(dL) for j in range(dL)}

    def mR(x, y):
        out = [Fraction(0)] * dR
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                if a and b:
                    for k, z in enumerate(multR[i, j]):
                        out[k] += a * b * z
        return out

    def mL(x, y):
        out = [Fraction(0)] * dL
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                if a and b:
                    for k, z in enumerate(multL[i, j]):
                        out[k] += a * b * z
        return out

    def col(m, i):
        return [row[i] for row in m]

    for name, mat, mdom, mcod, dd in (("sigma", sig, mL, mR, dL), ("sigma_bar", sigb, mL, mR, dL),
                                      ("tau", tau, mR, mL, dR), ("tau_bar", taub, mR, mL, dR)):
        bad = None
        for i in range(dd):
            for j in range(dd):
                ei, ej = _unit_vec(dd, i), _unit_vec(dd, j)
                if _apply(mat, mdom(ei, ej)) != mcod(col(mat, j), col(mat, i)):
                    bad = bad or {"pair": [i, j]}
        cert[f"{name} anti-multiplicative"] = (bad is None, bad)
    # anti-coalgebra: (sigma(x)sigma) delta_L^op = delta_R sigma, eps_R sigma = eps_L
    bR = base_coalgebra(w, "R")
    bL = base_coalgebra(w, "L")
    bad = None
    for i in range(dL):
        lhs: dict = {}
        for (j, k), c in bL.delta[i].items():
            for p, x in enumerate(col(sig, k)):
                for q, y in enumerate(col(sig, j)):
                    if x and y:
                        add_into(lhs, {(p, q): 1}, c * x * y)
        rhs: dict = {}
        for t, c in enumerate(col(sig, i)):
            if c:
                add_into(rhs, bR.delta[t], c)
        if lhs != rhs:
            bad = bad or {"basis": i}
    cert["sigma anti-coalgebra"] = (bad is None, bad)
    ok = all(_lin_counit(bR.counit, col(sig, i)) == bL.counit[i] for i in range(dL))
    cert["eps_R sigma = eps_L"] = (ok, None)
    sm = SigmaMaps(sig, sigb, tau, taub, R, L, cert)
    w._cache["sigma"] = sm
    return sm


def nakayama_via_sigma(w: WMBInstance) -> list:
    """sigma composed with the inverse of sigma_bar (= tau_bar), on the R base."""
    sm = sigma_maps(w)
    return xl.matmul(sm.sigma, sm.tau_bar)


# ---------------------------------------------------------------- E and F

def e_f_relation(w: WMBInstance) -> Optional[dict]:
    """((id(x)sigma)E)(piR(a)(x)piR(bc)) against F(piR(a)(x)piR(bc)).

    The left side is evaluated with the restricted-E identity, which expresses
    (1(x)bar-piL(bc))E through T3; sigma then acts on the second leg.  The right
    side is delta(piR(bc)) (piR(a)(x)1), which is F(1(x)piR(bc)) by centrality
    of F.  Both sides are compared in base(x)base coordinates."""
    sm = sigma_maps(w)
    R, L = sm.R, sm.L
    bR = base_coalgebra(w, "R")
    for a in w.basis:
        ca = R.coords_of(pi(w, PIR, a))
        for b in w.basis:
            for c in w.basis:
                bc = w.alg.mul_basis(b, c)
                if not bc:
                    continue
                # (1(x)bar-piL(bc))E = (piR(x)bar-piL) T3(c(x)b): sigma on leg 2 -> piR(c-part)
                lhs: dict = {}
                for (x, y), k in w.T3(c, b).items():
                    c1 = R.coords_of(pi(w, PIR, x))
                    c2 = L.coords_of(pi(w, BARPIL, y))
                    s2 = _apply(sm.sigma, c2)
                    p1 = _mul_coords(bR, c1, ca)
                    for j, u in enumerate(p1):
                        for t, v in enumerate(s2):
                            if u and v:
                                add_into(lhs, {(j, t): 1}, k * u * v)
                cbc = R.coords_of(pi(w, PIR, bc))
                rhs: dict = {}
                for t, z in enumerate(cbc):
                    if z:
                        for (p, q), e in bR.delta[t].items():
                            pa = _mul_coords(bR, _unit_vec(R.dim, p), ca)
                            for j, u in enumerate(pa):
                                if u:
                                    add_into(rhs, {(j, q): 1}, z * e * u)
                if lhs != rhs:
                    return {"tuple": [al.fmt_key(a), al.fmt_key(b), al.fmt_key(c)],
                            "lhs": sorted(map(str, lhs.items())), "rhs": sorted(map(str, rhs.items()))}
    return None


def _mul_coords(bc: BaseCoalgebra, x, y):
    d = bc.dim
    out = [Fraction(0)] * d
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            if a and b:
                for k, z in enumerate(bc.mult[i, j]):
                    out[k] += a * b * z
    return out


def check_E_F_relation(w: WMBInstance) -> list:
    return wmb.verify(w, ["E-RESTRICT", "E-F"]).results


# ---------------------------------------------------------------- laws

def P(ctx, kind, a) -> Multiplier:
    return pi(ctx.w, kind, a)


def _lr(m: Multiplier, n: Multiplier, c, label):
    yield f"{label} (left action)", m.lam_basis(c), n.lam_basis(c)
    yield f"{label} (right action)", m.rho_basis(c), n.rho_basis(c)


def _pi_mult(ctx, a, b, c):
    w = ctx.w
    kinds = KINDS if w.regular else (BARPIL, BARPIR)
    for k in kinds:
        m = P(ctx, k, a)
        yield f"c {k}(a) b compatible", w.alg.multiply(B(c), m.lam_basis(b)), \
            w.alg.multiply(m.rho_basis(c), B(b))


register("PI-MULT", "each projection value is a multiplier: c(pi(a)b) = (c pi(a))b", "base",
         [(3, _pi_mult)], prereq=("AX-i",))


def _pibar_e_mult(ctx, a, b, c):
    w = ctx.w
    ab = w.alg.mul_basis(a, b)
    # (id(x)barpiL)T2(a(x)b) acting on (1(x)c) from the left of c: barpiL(v).lam(c)
    X: dict = {}
    for (u, v), k in w.T2(a, b).items():
        for z, e in P(ctx, BARPIL, v).lam_basis(c).items():
            add_into(X, {(u, z): 1}, k * e)
    yield "((id(x)barpiL)T2(a(x)b))(1(x)c) = (ab(x)1)E(1(x)c)", X, w.Ex(l1=ab, r2=B(c))
    Y: dict = {}
    for (u, v), k in w.T2(a, b).items():
        for z, e in P(ctx, BARPIL, v).rho_basis(c).items():
            add_into(Y, {(u, z): 1}, k * e)
    yield "(1(x)c)((id(x)barpiL)T2(a(x)b)) = (1(x)c)(ab(x)1)E", Y, w.Ex(l1=ab, l2=B(c))


register("PIBAR-L-E", "(id(x)barpiL)T2(a(x)b) = (ab(x)1)E", "base", [(3, _pibar_e_mult)],
         prereq=("AX-i",))


def _pibar_r_e(ctx, a, b, c):
    w = ctx.w
    ab = w.alg.mul_basis(a, b)
    X: dict = {}
    for (u, v), k in w.T1(a, b).items():
        for z, e in P(ctx, BARPIR, u).rho_basis(c).items():
            add_into(X, {(z, v): 1}, k * e)
    yield "(c(x)1)((barpiR(x)id)T1(a(x)b)) = (c(x)1)E(1(x)ab)", X, w.Ex(l1=B(c), r2=ab)
    Y: dict = {}
    for (u, v), k in w.T1(a, b).items():
        for z, e in P(ctx, BARPIR, u).lam_basis(c).items():
            add_into(Y, {(z, v): 1}, k * e)
    yield "((barpiR(x)id)T1(a(x)b))(c(x)1) = E(c(x)ab)", Y, w.Ex(r1=B(c), r2=ab)


register("PIBAR-R-E", "(barpiR(x)id)T1(a(x)b) = E(1(x)ab)", "base", [(3, _pibar_r_e)],
         prereq=("AX-i",))


def _b1(ctx, a, b):
    w = ctx.w
    ab = w.eps(w.alg.mul_basis(a, b))
    yield "eps(barpiL(a)b) = eps(ab)", w.eps(P(ctx, BARPIL, a).lam_basis(b)), ab
    yield "eps(a barpiR(b)) = eps(ab)", w.eps(P(ctx, BARPIR, b).rho_basis(a)), ab
    if w.regular:
        yield "eps(a piL(b)) = eps(ab)", w.eps(P(ctx, PIL, b).rho_basis(a)), ab
        yield "eps(piR(a)b) = eps(ab)", w.eps(P(ctx, PIR, a).lam_basis(b)), ab


register("B1", "eps(barpiL(a)b) = eps(ab) = eps(a barpiR(b)); regular: eps(a piL(b)) = eps(ab) = eps(piR(a)b)",
         "base", [(2, _b1)], prereq=("AX-i",))


def _b2(ctx, a, b, c):
    w = ctx.w
    ab = w.alg.mul_basis(a, b)
    yield from _lr(pi(w, BARPIL, P(ctx, BARPIL, a).lam_basis(b)), pi(w, BARPIL, ab), c,
                   "barpiL(barpiL(a)b) = barpiL(ab)")
    yield from _lr(pi(w, BARPIR, P(ctx, BARPIR, b).rho_basis(a)), pi(w, BARPIR, ab), c,
                   "barpiR(a barpiR(b)) = barpiR(ab)")
    if w.regular:
        yield from _lr(pi(w, PIL, P(ctx, PIL, b).rho_basis(a)), pi(w, PIL, ab), c,
                       "piL(a piL(b)) = piL(ab)")
        yield from _lr(pi(w, PIR, P(ctx, PIR, a).lam_basis(b)), pi(w, PIR, ab), c,
                       "piR(piR(a)b) = piR(ab)")


register("B2", "barpiL(barpiL(a)b) = barpiL(ab) and piL(a piL(b)) = piL(ab), with mirrors", "base",
         [(3, _b2)], prereq=("AX-i",))


def _b3(ctx, a, x, b, c):
    w = ctx.w
    kinds = [(BARPIL, 0), (BARPIR, 1)]
    if w.regular:
        kinds += [(PIL, 0), (PIR, 1)]
    Y = w.d_basis(x, None, None, b, c)
    Yr = w.d_basis(x, b, c, None, None)
    for kind, leg in kinds:
        m = P(ctx, kind, a)
        lhs = w.D(m.lam_basis(x), r1=B(b), r2=B(c))
        r1 = al.leg_apply(w.E_on(Y), leg, m.lam_basis)
        r2 = w.E_on(al.leg_apply(Y, leg, m.lam_basis))
        yield f"D({kind}(a)) = ({kind}(a) on leg {leg})E, on D(x)(b(x)c)", lhs, r1
        yield f"D({kind}(a)) = E({kind}(a) on leg {leg}), on D(x)(b(x)c)", lhs, r2
        lhs2 = w.D(m.rho_basis(x), l1=B(b), l2=B(c))
        s1 = w.on_E(al.leg_apply(Yr, leg, m.rho_basis))
        s2 = al.leg_apply(w.on_E(Yr), leg, m.rho_basis)
        yield f"(b(x)c)D(x)D({kind}(a)) = (b(x)c)D(x)(({kind}(a) on leg {leg})E)", lhs2, s1
        yield f"(b(x)c)D(x)D({kind}(a)) = (b(x)c)D(x)(E({kind}(a) on leg {leg}))", lhs2, s2


register("B3", "D(barpiL(a)) = (barpiL(a)(x)1)E = E(barpiL(a)(x)1) and the mirrors", "base",
         [(4, _b3)], prereq=("AX-i", "E-MULT"))


def _b4(ctx, a, b, c):
    w = ctx.w
    yield from _lr(pi(w, BARPIL, P(ctx, BARPIL, b).rho_basis(a)), P(ctx, BARPIL, a) * P(ctx, BARPIL, b), c,
                   "barpiL(a barpiL(b)) = barpiL(a)barpiL(b)")
    yield from _lr(pi(w, BARPIR, P(ctx, BARPIR, a).lam_basis(b)), P(ctx, BARPIR, a) * P(ctx, BARPIR, b), c,
                   "barpiR(barpiR(a)b) = barpiR(a)barpiR(b)")
    if w.regular:
        yield from _lr(pi(w, PIL, P(ctx, PIL, a).lam_basis(b)), P(ctx, PIL, a) * P(ctx, PIL, b), c,
                       "piL(piL(a)b) = piL(a)piL(b)")
        yield from _lr(pi(w, PIR, P(ctx, PIR, b).rho_basis(a)), P(ctx, PIR, a) * P(ctx, PIR, b), c,
                       "piR(a piR(b)) = piR(a)piR(b)")


register("B4", "barpiL(a barpiL(b)) = barpiL(a)barpiL(b) and piL(piL(a)b) = piL(a)piL(b), with mirrors",
         "base", [(3, _b4)], prereq=("AX-i",))


def _b5(ctx, a, b, c):
    w = ctx.w
    yield from _lr(P(ctx, BARPIR, a) * P(ctx, BARPIL, b), P(ctx, BARPIL, b) * P(ctx, BARPIR, a), c,
                   "barpiR(a)barpiL(b) = barpiL(b)barpiR(a)")
    if w.regular:
        yield from _lr(P(ctx, PIL, a) * P(ctx, PIR, b), P(ctx, PIR, b) * P(ctx, PIL, a), c,
                       "piL(a)piR(b) = piR(b)piL(a)")


register("B5", "barpiR(a)barpiL(b) = barpiL(b)barpiR(a); piL(a)piR(b) = piR(b)piL(a)", "base",
         [(3, _b5)], prereq=("AX-i",))


def _b6(ctx, a, b, c, d):
    w = ctx.w
    ab = w.alg.mul_basis(a, b)
    cd = w.alg.mul_basis(c, d)
    lhs: dict = {}
    for (x, y), k in w.T1(c, d).items():
        for z, e in P(ctx, BARPIR, x).right(ab).items():
            add_into(lhs, {(z, y): 1}, k * e)
    rhs: dict = {}
    for (u, v), k in w.T2(a, b).items():
        for z, e in P(ctx, BARPIL, v).left(cd).items():
            add_into(rhs, {(u, z): 1}, k * e)
    yield "(ab(x)1)((barpiR(x)id)T1(c(x)d)) = ((id(x)barpiL)T2(a(x)b))(1(x)cd)", lhs, rhs
    yield "... = (ab(x)1)E(1(x)cd)", lhs, w.Ex(l1=ab, r2=cd)


register("B6", "(ab(x)1)((barpiR(x)id)T1(c(x)d)) = ((id(x)barpiL)T2(a(x)b))(1(x)cd)", "base",
         [(4, _b6)], prereq=("AX-i",))


def _b7(ctx, a, b, c):
    w = ctx.w
    yield "piR(a)b = (id(x)eps)T3(b(x)a)", P(ctx, PIR, a).lam_basis(b), w.id_eps(w.T3(b, a))
    yield "b piL(a) = (eps(x)id)T4(a(x)b)", P(ctx, PIL, a).rho_basis(b), w.eps_id(w.T4(a, b))
    ab = w.alg.mul_basis(a, b)
    t3 = w.T3(b, a)
    X: dict = {}
    Y: dict = {}
    for (x, y), k in t3.items():
        for z, e in P(ctx, PIR, x).rho_basis(c).items():
            add_into(X, {(z, y): 1}, k * e)
        for z, e in P(ctx, PIR, x).lam_basis(c).items():
            add_into(Y, {(z, y): 1}, k * e)
    yield "(c(x)1)(1(x)ab)E = (c(x)1)(piR(x)id)T3(b(x)a)", w.Ex(l1=B(c), l2=ab), X
    yield "(1(x)ab)E(c(x)1) = ((piR(x)id)T3(b(x)a))(c(x)1)", w.Ex(l2=ab, r1=B(c)), Y
    t4 = w.T4(b, a)
    X2: dict = {}
    Y2: dict = {}
    for (x, y), k in t4.items():
        for z, e in P(ctx, PIL, y).rho_basis(c).items():
            add_into(X2, {(x, z): 1}, k * e)
        for z, e in P(ctx, PIL, y).lam_basis(c).items():
            add_into(Y2, {(x, z): 1}, k * e)
    yield "(1(x)c)E(ab(x)1) = (1(x)c)(id(x)piL)T4(b(x)a)", w.Ex(l2=B(c), r1=ab), X2
    yield "E(ab(x)c) = ((id(x)piL)T4(b(x)a))(1(x)c)", w.Ex(r1=ab, r2=B(c)), Y2
    yield from _lr(pi(w, PIR, P(ctx, PIR, a).lam_basis(b)), pi(w, PIR, ab), c, "piR(piR(a)b) = piR(ab)")


def _b7_pi_identity(ctx, a, b, c, d):
    w = ctx.w
    cd = w.alg.mul_basis(c, d)
    ba = w.alg.mul_basis(b, a)
    lhs: dict = {}
    for (x, y), k in w.T3(a, b).items():
        for z, e in P(ctx, PIR, x).left(cd).items():
            add_into(lhs, {(z, y): 1}, k * e)
    rhs: dict = {}
    for (u, v), k in w.T4(d, c).items():
        for z, e in P(ctx, PIL, v).right(ba).items():
            add_into(rhs, {(u, z): 1}, k * e)
    yield "((piR(x)id)T3(a(x)b))(cd(x)1) = (1(x)ba)((id(x)piL)T4(d(x)c))", lhs, rhs


register("B7", "regular block: piR(a)b = (id(x)eps)T3(b(x)a), (1(x)ab)E = (piR(x)id)T3(b(x)a), "
         "E(ab(x)1) = (id(x)piL)T4(b(x)a), piR(piR(a)b) = piR(ab), and the pi identity",
         "base", [(3, _b7), (4, _b7_pi_identity)], needs=("regular",), prereq=("AX-i",))


def _b8(ctx, a, b):
    w = ctx.w
    ab = w.alg.mul_basis(a, b)
    ba = w.alg.mul_basis(b, a)
    l1: dict = {}
    for (x, y), k in w.T3(a, b).items():
        add_into(l1, P(ctx, BARPIL, x).rho_basis(y), k)
    yield "mu_op(barpiL(x)id)T3 = mu_op", l1, ba
    l2: dict = {}
    for (x, y), k in w.T4(a, b).items():
        add_into(l2, P(ctx, BARPIR, y).lam_basis(x), k)
    yield "mu_op(id(x)barpiR)T4 = mu_op", l2, ba
    l3: dict = {}
    for (x, y), k in w.T1(a, b).items():
        add_into(l3, P(ctx, PIL, x).lam_basis(y), k)
    yield "mu(piL(x)id)T1 = mu", l3, ab
    l4: dict = {}
    for (x, y), k in w.T2(a, b).items():
        add_into(l4, P(ctx, PIR, y).rho_basis(x), k)
    yield "mu(id(x)piR)T2 = mu", l4, ab


register("B8", "mu_op(barpiL(x)id)T3 = mu_op, mu_op(id(x)barpiR)T4 = mu_op, mu(piL(x)id)T1 = mu, "
         "mu(id(x)piR)T2 = mu", "base", [(2, _b8)], needs=("regular",), prereq=("AX-i",))


def _b9(ctx, a, b):
    w = ctx.w
    yield "eps(piL(a)b) = eps(barpiR(b)a)", w.eps(P(ctx, PIL, a).lam_basis(b)), \
        w.eps(P(ctx, BARPIR, b).lam_basis(a))
    yield "eps(a piR(b)) = eps(b barpiL(a))", w.eps(P(ctx, PIR, b).rho_basis(a)), \
        w.eps(P(ctx, BARPIL, a).rho_basis(b))


register("B9", "eps(piL(a)b) = eps(barpiR(b)a); eps(a piR(b)) = eps(b barpiL(a))", "base",
         [(2, _b9)], needs=("regular",), prereq=("AX-i",))


def _b10(ctx, a, x, y):
    w = ctx.w
    EX = w.e_basis(None, None, x, y)
    XE = w.e_basis(x, y, None, None)
    yield "(piR(a)(x)1)E(x(x)y) = (1(x)barpiL(a))E(x(x)y)", \
        al.leg_apply(EX, 0, P(ctx, PIR, a).lam_basis), al.leg_apply(EX, 1, P(ctx, BARPIL, a).lam_basis)
    yield "(x(x)y)(piR(a)(x)1)E = (x(x)y)(1(x)barpiL(a))E", \
        w.on_E(al.leg_apply({(x, y): 1}, 0, P(ctx, PIR, a).rho_basis)), \
        w.on_E(al.leg_apply({(x, y): 1}, 1, P(ctx, BARPIL, a).rho_basis))
    yield "E(barpiR(a)(x)1)(x(x)y) = E(1(x)piL(a))(x(x)y)", \
        w.E_on(al.leg_apply({(x, y): 1}, 0, P(ctx, BARPIR, a).lam_basis)), \
        w.E_on(al.leg_apply({(x, y): 1}, 1, P(ctx, PIL, a).lam_basis))
    yield "(x(x)y)E(barpiR(a)(x)1) = (x(x)y)E(1(x)piL(a))", \
        al.leg_apply(XE, 0, P(ctx, BARPIR, a).rho_basis), al.leg_apply(XE, 1, P(ctx, PIL, a).rho_basis)


register("B10", "(piR(a)(x)1)E = (1(x)barpiL(a))E; E(barpiR(a)(x)1) = E(1(x)piL(a))", "base",
         [(3, _b10)], needs=("regular",), prereq=("AX-i", "E-MULT"))


def _b11(ctx, a, b, c, d):
    w = ctx.w
    ab = w.alg.mul_basis(a, b)
    dc = w.alg.mul_basis(d, c)
    lhs: dict = {}
    for (x, y), k in w.T4(c, d).items():
        for z, e in P(ctx, BARPIR, y).right(ab).items():
            add_into(lhs, {(x, z): 1}, k * e)
    rhs: dict = {}
    for (u, v), k in w.T2(a, b).items():
        # T2^op(a(x)b) = v(x)u
        for z, e in P(ctx, PIR, v).left(dc).items():
            add_into(rhs, {(z, u): 1}, k * e)
    yield "(1(x)ab)((id(x)barpiR)T4(c(x)d)) = ((piR(x)id)T2^op(a(x)b))(dc(x)1)", lhs, rhs
    cd = w.alg.mul_basis(c, d)
    ba = w.alg.mul_basis(b, a)
    lhs2: dict = {}
    for (x, y), k in w.T3(a, b).items():
        for z, e in P(ctx, BARPIL, x).left(cd).items():
            add_into(lhs2, {(z, y): 1}, k * e)
    rhs2: dict = {}
    for (u, v), k in w.T1(c, d).items():
        # T1^op(c(x)d) = v(x)u
        for z, e in P(ctx, PIL, u).right(ba).items():
            add_into(rhs2, {(v, z): 1}, k * e)
    yield "((barpiL(x)id)T3(a(x)b))(cd(x)1) = (1(x)ba)((id(x)piL)T1^op(c(x)d))", lhs2, rhs2


register("B11", "(1(x)ab)((id(x)barpiR)T4(c(x)d)) = ((piR(x)id)T2^op(a(x)b))(dc(x)1) and its mirror",
         "base", [(4, _b11)], needs=("regular",), prereq=("AX-i",))


def _b12(ctx, a, b, c):
    w = ctx.w
    m1 = pi(w, PIR, P(ctx, BARPIR, b).rho_basis(a))
    m2 = P(ctx, PIR, a) * P(ctx, BARPIR, b)
    m3 = pi(w, BARPIR, P(ctx, PIR, a).lam_basis(b))
    yield from _lr(m1, m2, c, "piR(a barpiR(b)) = piR(a)barpiR(b)")
    yield from _lr(m2, m3, c, "piR(a)barpiR(b) = barpiR(piR(a)b)")
    n1 = pi(w, PIL, P(ctx, BARPIL, a).lam_basis(b))
    n2 = P(ctx, BARPIL, a) * P(ctx, PIL, b)
    n3 = pi(w, BARPIL, P(ctx, PIL, b).rho_basis(a))
    yield from _lr(n1, n2, c, "piL(barpiL(a)b) = barpiL(a)piL(b)")
    yield from _lr(n2, n3, c, "barpiL(a)piL(b) = barpiL(a piL(b))")


register("B12", "piR(a barpiR(b)) = piR(a)barpiR(b) = barpiR(piR(a)b) and the L mirror", "base",
         [(3, _b12)], needs=("regular",), prereq=("AX-i",))


def _b13(ctx, a, b, c):
    w = ctx.w
    yield from _lr(pi(w, PIR, P(ctx, BARPIL, b).rho_basis(a)), P(ctx, PIR, b) * P(ctx, PIR, a), c,
                   "piR(a barpiL(b)) = piR(b)piR(a)")
    yield from _lr(pi(w, PIL, P(ctx, BARPIR, a).lam_basis(b)), P(ctx, PIL, b) * P(ctx, PIL, a), c,
                   "piL(barpiR(a)b) = piL(b)piL(a)")
    yield from _lr(pi(w, BARPIR, P(ctx, PIL, b).lam_basis(a)), P(ctx, BARPIR, a) * P(ctx, BARPIR, b), c,
                   "barpiR(piL(b)a) = barpiR(a)barpiR(b)")
    yield from _lr(pi(w, BARPIL, P(ctx, PIR, a).rho_basis(b)), P(ctx, BARPIL, a) * P(ctx, BARPIL, b), c,
                   "barpiL(b piR(a)) = barpiL(a)barpiL(b)")


register("B13", "piR(a barpiL(b)) = piR(b)piR(a) and the three mirrors", "base", [(3, _b13)],
         needs=("regular",), prereq=("AX-i",))


def _f_mult(ctx, x, y, u, v):
    w = ctx.w
    X = {(x, y): 1}
    U = {(u, v): 1}
    yield "(x(x)y)(F(u(x)v)) = ((x(x)y)F)(u(x)v)", al.tensor_mul(w.alg, X, F_left(w, U)), \
        al.tensor_mul(w.alg, F_right(w, X), U)


register("F-MULT", "the two rules defining F give one multiplier on A(x)A", "base",
         [(4, _f_mult)], needs=("regular",), prereq=("AX-i",))


@wmb.global_check("F-MULT")
def _f_wd(ctx):
    return f_well_defined(ctx.w)


def _f_central(ctx, a, x, y):
    w = ctx.w
    m = P(ctx, PIR, a)
    lhs = F_right(w, al.leg_apply({(x, y): 1}, 0, m.rho_basis))
    rhs = al.leg_apply(F_right(w, {(x, y): 1}), 1, m.rho_basis)
    yield "(x(x)y)(piR(a)(x)1)F = (x(x)y)F(1(x)piR(a))", lhs, rhs
    lhs2 = al.leg_apply(F_left(w, {(x, y): 1}), 0, m.lam_basis)
    rhs2 = F_left(w, al.leg_apply({(x, y): 1}, 1, m.lam_basis))
    yield "(piR(a)(x)1)F(x(x)y) = F(1(x)piR(a))(x(x)y)", lhs2, rhs2


register("F-CENTRAL", "(piR(a)(x)1)F = F(1(x)piR(a))", "base", [(3, _f_central)],
         needs=("regular",), prereq=("AX-i",))


def _e_restrict(ctx, b, c, x, y):
    w = ctx.w
    bc = w.alg.mul_basis(b, c)
    # (1(x)barpiL(bc))E(x(x)y)
    lhs = al.leg_apply(w.e_basis(None, None, x, y), 1, lambda k: pi(w, BARPIL, bc).lam_basis(k))
    rhs: dict = {}
    for (p, q), k in w.T3(c, b).items():
        for s, e in P(ctx, PIR, p).lam_basis(x).items():
            for t, f in P(ctx, BARPIL, q).lam_basis(y).items():
                add_into(rhs, {(s, t): 1}, k * e * f)
    yield "(1(x)barpiL(bc))E(x(x)y) = ((piR(x)barpiL)T3(c(x)b))(x(x)y)", lhs, rhs


register("E-RESTRICT", "(1(x)barpiL(bc))E = (piR(x)barpiL)T3(c(x)b)", "base", [(4, _e_restrict)],
         needs=("regular",), prereq=("AX-i",))


# -- C-block: global certificates of the base coalgebra (finite bases only)

def _cert_law(cert_name: str, side: str = "R"):
    def fn(ctx):
        w = ctx.w
        try:
            bc = ctx.get(f"base_{side}", lambda: base_coalgebra(w, side))
        except (NotFull, IllDefined, DegenerateForm) as exc:
            return {"part": cert_name, "error": f"{type(exc).__name__}: {exc}"}
        ok, wit = bc.certificates.get(cert_name, (False, {"missing": cert_name}))
        if not ok:
            return {"part": cert_name, "witness": wit}
        return None
    return fn


_C_LAWS = [
    ("C-DELTA", "delta(piR(ab)) = (piR(x)piR)T2(a(x)b), well defined on all products", "delta well defined"),
    ("C-DELTA-T3", "delta(piR(ab)) = (piR(x)piR)T3(b(x)a)", "delta alternative form"),
    ("C-SECTION", "mu delta = id on the base", "mu delta = id"),
    ("C-COASSOC", "delta is coassociative", "coassociative"),
    ("C-COUNIT", "(eps_R(x)id)delta = id = (id(x)eps_R)delta", "counital"),
    ("C-BIMOD", "delta is a bimodule map", "bimodule map"),
    ("C-BAR", "delta(barpiR(ab)) = (barpiR(x)barpiR)T4^op(b(x)a) = (barpiR(x)barpiR)T1^op(a(x)b)",
     "delta bar form"),
    ("C-EPS-BAR", "eps_R(barpiR(a)) = eps(a)", "eps_R bar"),
    ("C-UNITS", "the base algebra has local units", "local units"),
]
for _id, _anchor, _cert in _C_LAWS:
    register(_id, _anchor, "base", (), _cert_law(_cert), needs=("regular", "right_full"),
             prereq=("AX-i",))
register("C-DELTA-L", "delta(barpiL(ab)) = (barpiL(x)barpiL)T3^op(b(x)a) with counit and coassociativity",
         "base", (), None, needs=("regular", "left_full"), prereq=("AX-i",))


@wmb.global_check("C-DELTA-L")
def _c_delta_l(ctx):
    for cert in ("delta well defined", "mu delta = id", "counital", "coassociative"):
        wit = _cert_law(cert, "L")(ctx)
        if wit:
            return wit
    return None


register("C-NAKAYAMA", "theta with eps_R(sr) = eps_R(theta(r)s) exists, is unique and multiplicative",
         "base", (), None, needs=("regular", "right_full"), prereq=("AX-i",))


@wmb.global_check("C-NAKAYAMA")
def _c_nakayama(ctx):
    w = ctx.w
    try:
        theta = nakayama(w, "R")
    except DegenerateForm as exc:
        return {"part": "Gram matrix", "error": str(exc)}
    bc = base_coalgebra(w, "R")
    d = bc.dim
    for i in range(d):
        for j in range(d):
            lhs = xl.matvec(theta, bc.mult[i, j])
            rhs = _mul_coords(bc, [r[i] for r in theta], [r[j] for r in theta])
            if lhs != rhs:
                return {"part": "theta multiplicative", "pair": [i, j]}
    return None


register("C-SIGMA", "sigma, sigma_bar, tau, tau_bar: well defined, anti-multiplicative, tau = sigma^-1, "
         "tau_bar = sigma_bar^-1, sigma anti-coalgebra", "base", (), None,
         needs=("regular", "right_full", "left_full"), prereq=("AX-i",))


@wmb.global_check("C-SIGMA")
def _c_sigma(ctx):
    try:
        sm = sigma_maps(ctx.w)
    except IllDefined as exc:
        return {"part": str(exc), "witness": exc.witness}
    for name, (ok, wit) in sorted(sm.certificates.items()):
        if not ok:
            return {"part": name, "witness": wit}
    return None


register("C-NAK-SIGMA", "theta = sigma sigma_bar^-1", "base", (), None,
         needs=("regular", "right_full", "left_full"), prereq=("AX-i",))


@wmb.global_check("C-NAK-SIGMA")
def _c_nak_sigma(ctx):
    w = ctx.w
    try:
        theta = nakayama(w, "R")
        other = nakayama_via_sigma(w)
    except (DegenerateForm, IllDefined) as exc:
        return {"part": type(exc).__name__, "error": str(exc)}
    if theta != other:
        return {"part": "theta vs sigma tau_bar", "lhs": wmb._render(theta), "rhs": wmb._render(other)}
    return None


register("E-F", "(id(x)sigma)(E) = F on piR(A)(x)piR(A)", "base", (), None,
         needs=("regular", "right_full", "left_full"), prereq=("AX-i",))


@wmb.global_check("E-F")
def _e_f(ctx):
    try:
        return e_f_relation(ctx.w)
    except IllDefined as exc:
        return {"part": str(exc), "witness": exc.witness}
