"""Weak multiplier bialgebra instances, the law registry and axiom checks.

An instance is described by basis-level *sandwich* evaluators:

* ``delta(a, l1, l2, r1, r2)`` returns (l1 (x) l2) Delta(a) (r1 (x) r2),
* ``E(l1, l2, r1, r2)`` returns (l1 (x) l2) E (r1 (x) r2),

where every l/r argument is a basis index or ``None`` (standing for the unit
of the multiplier algebra).  The four T-maps are special sandwiches, e.g.
T1(a (x) b) = delta(a, None, None, None, b).  A sandwich of E must cover each
leg at least once so that its value lies in A (x) A.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Optional

from . import algebra as al
from . import exactlin as xl
from .algebra import add_into, clean, lin, leg_contract

COMPOSITION_CONVENTION = "ab is 'a after b': defined iff src(a) == tgt(b)"


class NotRegular(ValueError):
    pass


# ---------------------------------------------------------------- instance

@dataclass
class WMBInstance:
    name: str
    alg: al.NonUnitalAlgebra
    delta: Callable  # (a, l1, l2, r1, r2) -> element of A(x)A
    counit: Callable  # basis index -> scalar
    E: Callable  # (l1, l2, r1, r2) -> element of A(x)A
    regular: bool = True
    declared: dict = field(default_factory=dict)
    antipode_decl: Optional[Callable] = None  # basis -> Multiplier (lazy instances)
    s_oracle: Optional[Callable] = None  # basis -> element: independent inverse oracle
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self._d = lru_cache(maxsize=None)(self.delta)
        self._e = lru_cache(maxsize=None)(self.E)
        self._cache: dict = {}

    @property
    def dense(self) -> bool:
        return self.alg.dense

    @property
    def basis(self):
        return self.alg.basis

    # -- element-level sandwiches
    def D(self, a: dict, l1=None, l2=None, r1=None, r2=None) -> dict:
        return _sandwich(self._d, [a, l1, l2, r1, r2])

    def Ex(self, l1=None, l2=None, r1=None, r2=None) -> dict:
        return _sandwich(self._e, [l1, l2, r1, r2])

    def d_basis(self, a, l1=None, l2=None, r1=None, r2=None) -> dict:
        return self._d(a, l1, l2, r1, r2)

    def e_basis(self, l1=None, l2=None, r1=None, r2=None) -> dict:
        return self._e(l1, l2, r1, r2)

    def eps(self, x: dict):
        return sum((c * self.counit(k) for k, c in x.items()), 0)

    def mul(self, *xs: dict) -> dict:
        out = xs[0]
        for x in xs[1:]:
            out = self.alg.multiply(out, x)
        return out

    # -- T-maps on basis indices
    def T1(self, a, b) -> dict:
        return self._d(a, None, None, None, b)

    def T2(self, a, b) -> dict:
        return self._d(b, a, None, None, None)

    def T3(self, a, b) -> dict:
        if not self.regular:
            raise NotRegular("T3 needs a regular instance")
        return self._d(a, None, b, None, None)

    def T4(self, a, b) -> dict:
        if not self.regular:
            raise NotRegular("T4 needs a regular instance")
        return self._d(b, None, None, a, None)

    def T(self, i: int, x: dict, y: dict) -> dict:
        f = {1: self.T1, 2: self.T2, 3: self.T3, 4: self.T4}[i]
        acc: dict = {}
        for a, c in x.items():
            for b, d in y.items():
                add_into(acc, f(a, b), c * d)
        return acc

    def Tx(self, i: int, X: dict) -> dict:
        """A T-map applied to an element of A(x)A."""
        f = {1: self.T1, 2: self.T2, 3: self.T3, 4: self.T4}[i]
        acc: dict = {}
        for (a, b), c in X.items():
            add_into(acc, f(a, b), c)
        return acc

    # -- multiplier actions on A(x)A
    def D_on(self, a, X: dict) -> dict:
        """Delta(a) X for a basis index a and X in A(x)A."""
        acc: dict = {}
        for (x, y), c in X.items():
            add_into(acc, self._d(a, None, None, x, y), c)
        return acc

    def on_D(self, X: dict, a) -> dict:
        acc: dict = {}
        for (x, y), c in X.items():
            add_into(acc, self._d(a, x, y, None, None), c)
        return acc

    def E_on(self, X: dict) -> dict:
        acc: dict = {}
        for (x, y), c in X.items():
            add_into(acc, self._e(None, None, x, y), c)
        return acc

    def on_E(self, X: dict) -> dict:
        acc: dict = {}
        for (x, y), c in X.items():
            add_into(acc, self._e(x, y, None, None), c)
        return acc

    def eps_id(self, X: dict) -> dict:
        return leg_contract(X, 0, self.counit)

    def id_eps(self, X: dict) -> dict:
        return leg_contract(X, 1, self.counit)

    def eps_eps(self, X: dict):
        return sum((c * self.counit(a) * self.counit(b) for (a, b), c in X.items()), 0)

    def with_(self, **changes) -> "WMBInstance":
        return replace(self, **changes)


def _sandwich(f: Callable, args: list) -> dict:
    supports = [[(None, 1)] if x is None else list(x.items()) for x in args]
    acc: dict = {}
    for combo in itertools.product(*supports):
        c = 1
        for _, v in combo:
            c *= v
        if c:
            add_into(acc, f(*[k for k, _ in combo]), c)
    return acc


def t_map(w: WMBInstance, i: int, a: dict, b: dict) -> dict:
    if i in (3, 4) and not w.regular:
        raise NotRegular(f"T{i} needs a regular instance")
    return w.T(i, a, b)


# ---------------------------------------------------------------- sampling

@dataclass(frozen=True)
class Sampler:
    seed: int = 0
    n: int = 200

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}/{tag}")

    def tuples(self, alg: al.NonUnitalAlgebra, k: int, tag: str) -> list:
        r = self.rng(tag)
        return [tuple(alg.sample(r) for _ in range(k)) for _ in range(self.n)]

    @property
    def mode(self) -> str:
        return f"sampled(n={self.n}, seed={self.seed})"


# ---------------------------------------------------------------- registry

@dataclass(frozen=True)
class Part:
    arity: int
    fn: Callable  # (ctx, *basis) -> iterable of (label, lhs, rhs)


@dataclass(frozen=True)
class Law:
    id: str
    anchor: str
    group: str
    parts: tuple
    global_fn: Optional[Callable] = None  # (ctx) -> None | witness dict; dense only
    needs: tuple = ()
    prereq: tuple = ()


LAWS: dict[str, Law] = {}
GROUPS: dict[str, list] = {}


def register(id: str, anchor: str, group: str, parts=(), global_fn=None, needs=(), prereq=()):
    law = Law(id, anchor, group, tuple(Part(a, f) for a, f in parts), global_fn, tuple(needs),
              tuple(prereq))
    LAWS[id] = law
    GROUPS.setdefault(group, []).append(id)
    return law


def part(law_id: str, arity: int):
    """Decorator adding an evaluator part to an already registered law."""
    def deco(fn):
        law = LAWS[law_id]
        LAWS[law_id] = replace(law, parts=law.parts + (Part(arity, fn),))
        return fn
    return deco


def global_check(law_id: str):
    def deco(fn):
        LAWS[law_id] = replace(LAWS[law_id], global_fn=fn)
        return fn
    return deco


@dataclass
class LawResult:
    id: str
    anchor: str
    status: str  # pass | fail | skipped
    mode: str = ""
    checked: int = 0
    witness: Optional[dict] = None
    reason: str = ""

    def to_json(self) -> dict:
        d = {"id": self.id, "anchor": self.anchor, "status": self.status, "mode": self.mode,
             "checked": self.checked}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.reason:
            d["reason"] = self.reason
        return d


@dataclass
class LawReport:
    instance: str
    results: list

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def __getitem__(self, law_id: str) -> LawResult:
        for r in self.results:
            if r.id == law_id:
                return r
        raise KeyError(law_id)

    def statuses(self) -> dict:
        return {r.id: r.status for r in self.results}

    def failed(self) -> list:
        return [r.id for r in self.results if r.status == "fail"]


class Ctx:
    """Evaluation context: an instance plus lazily built derived structure."""

    def __init__(self, w: WMBInstance, sampler: Optional[Sampler] = None):
        self.w = w
        self.sampler = sampler or Sampler()
        self.cache: dict = {}
        self.flags: dict = {"regular": w.regular}

    def get(self, key: str, builder: Callable):
        if key not in self.cache:
            self.cache[key] = builder()
        return self.cache[key]

    def flag(self, name: str) -> bool:
        if name not in self.flags:
            if name in ("left_full", "right_full"):
                if self.w.dense:
                    cl = classify(self.w)
                    self.flags["left_full"] = cl.left_full
                    self.flags["right_full"] = cl.right_full
                else:
                    self.flags[name] = bool(self.w.declared.get(name, False))
            elif name == "antipode":
                from . import antipode
                self.flags[name] = antipode.ensure_S(self) is not None
            elif name == "R":
                from . import antipode
                self.flags[name] = antipode._R(self) is not None
            elif name == "oracle":
                self.flags[name] = self.w.s_oracle is not None
            elif name == "dense":
                self.flags[name] = self.w.dense
            else:
                self.flags[name] = False
        return self.flags[name]


def _render(v) -> Any:
    if isinstance(v, dict):
        return [[al.fmt_key(k), al.fmt_scalar(c)] for k, c in al.sorted_items(clean(v))]
    if isinstance(v, (int, Fraction)):
        return al.fmt_scalar(v)
    if isinstance(v, (list, tuple)):
        return [_render(x) for x in v]
    return str(v)


def _same(l, r) -> bool:
    if isinstance(l, dict) or isinstance(r, dict):
        return clean(l or {}) == clean(r or {})
    return l == r


def evaluate_part(ctx: Ctx, p: Part, args: tuple) -> Optional[dict]:
    for label, lhs, rhs in p.fn(ctx, *args):
        if not _same(lhs, rhs):
            return {"tuple": [al.fmt_key(a) for a in args], "part": label,
                    "lhs": _render(lhs), "rhs": _render(rhs), "raw_tuple": args}
    return None


def run_law(ctx: Ctx, law: Law) -> LawResult:
    w = ctx.w
    for need in law.needs:
        if not ctx.flag(need):
            return LawResult(law.id, law.anchor, "skipped", reason=f"requires {need}")
    checked = 0
    if w.dense:
        mode = "exhaustive"
        for p in law.parts:
            for args in itertools.product(w.basis, repeat=p.arity):
                checked += 1
                wit = evaluate_part(ctx, p, args)
                if wit:
                    return LawResult(law.id, law.anchor, "fail", mode, checked, wit)
        if law.global_fn is not None:
            checked += 1
            wit = law.global_fn(ctx)
            if wit:
                return LawResult(law.id, law.anchor, "fail", mode, checked, wit)
        return LawResult(law.id, law.anchor, "pass", mode, checked)
    s = ctx.sampler
    mode = s.mode
    if not law.parts:
        return LawResult(law.id, law.anchor, "skipped", reason="subspace criterion needs a finite basis")
    for i, p in enumerate(law.parts):
        for args in s.tuples(w.alg, p.arity, f"{law.id}/{i}"):
            checked += 1
            wit = evaluate_part(ctx, p, args)
            if wit:
                return LawResult(law.id, law.anchor, "fail", mode, checked, wit)
    note = "global subspace criterion not run on lazy backend" if law.global_fn else ""
    return LawResult(law.id, law.anchor, "pass", mode, checked, reason=note)


def resolve_laws(law_ids) -> list:
    if law_ids is None or law_ids == "all":
        return list(LAWS)
    if isinstance(law_ids, str):
        if law_ids in GROUPS:
            return list(GROUPS[law_ids])
        law_ids = [x.strip() for x in law_ids.split(",") if x.strip()]
    out = []
    for x in law_ids:
        if x in GROUPS:
            out.extend(GROUPS[x])
        elif x in LAWS:
            out.append(x)
        else:
            raise KeyError(f"unknown law id {x!r}")
    return out


def verify(w: WMBInstance, law_ids=None, sampler: Optional[Sampler] = None,
           ctx: Optional[Ctx] = None) -> LawReport:
    """Evaluate the requested laws in registry order; skip those whose
    prerequisites failed."""
    ctx = ctx or Ctx(w, sampler)
    wanted = set(resolve_laws(law_ids))
    results = []
    bad: set = set()
    for lid, law in LAWS.items():
        if lid not in wanted:
            continue
        broken = [p for p in law.prereq if p in bad]
        if broken:
            res = LawResult(lid, law.anchor, "skipped", reason=f"prerequisite failed: {', '.join(broken)}")
            bad.add(lid)
        else:
            res = run_law(ctx, law)
            if res.status == "fail":
                bad.add(lid)
        results.append(res)
    return LawReport(w.name, results)


def reevaluate(w: WMBInstance, law_id: str, witness: dict, ctx: Optional[Ctx] = None) -> bool:
    """True when the witness still exhibits a failure of the law."""
    ctx = ctx or Ctx(w)
    law = LAWS[law_id]
    args = tuple(witness["raw_tuple"])
    for p in law.parts:
        if p.arity == len(args) and evaluate_part(ctx, p, args):
            return True
    return False


# ---------------------------------------------------------------- helpers used by laws

def pairs_mul(w: WMBInstance, X: dict, left=None, right=None) -> dict:
    """(left) X (right) for two-leg elements; left/right are two-leg elements."""
    if left is not None:
        X = al.tensor_mul(w.alg, left, X)
    if right is not None:
        X = al.tensor_mul(w.alg, X, right)
    return X


def lmul_leg(w: WMBInstance, X: dict, leg: int, a) -> dict:
    """Multiply leg `leg` of X on the left by the basis element a."""
    return al.leg_apply(X, leg, lambda k: w.alg.mul_basis(a, k))


def rmul_leg(w: WMBInstance, X: dict, leg: int, a) -> dict:
    return al.leg_apply(X, leg, lambda k: w.alg.mul_basis(k, a))


def lmul_leg_e(w: WMBInstance, X: dict, leg: int, x: dict) -> dict:
    return al.leg_apply(X, leg, lambda k: w.alg.multiply(x, {k: 1}))


def rmul_leg_e(w: WMBInstance, X: dict, leg: int, x: dict) -> dict:
    return al.leg_apply(X, leg, lambda k: w.alg.multiply({k: 1}, x))


def E3_left(w: WMBInstance, X3: dict, order: str) -> dict:
    """(E(x)1)(1(x)E) X3 for order 'E1,1E', or (1(x)E)(E(x)1) X3 for '1E,E1'."""
    first, second = (1, 0) if order == "E1,1E" else (0, 1)
    def app(X, pos):
        return al.pair_apply(X, (pos, pos + 1), lambda a, b: w.e_basis(None, None, a, b))
    return app(app(X3, first), second)


# ---------------------------------------------------------------- axiom laws

B = lambda k: {k: 1}  # noqa: E731


def _alg_assoc(ctx, a, b, c):
    w = ctx.w
    yield "(ab)c = a(bc)", w.alg.multiply(w.alg.mul_basis(a, b), B(c)), \
        w.alg.multiply(B(a), w.alg.mul_basis(b, c))


register("ALG", "associativity of the product table", "axioms", [(3, _alg_assoc)])


def _ax_i(ctx, a, b, c):
    w = ctx.w
    bc = w.alg.mul_basis(b, c)
    yield "T1(a(x)bc) = T1(a(x)b)(1(x)c)", w.T(1, B(a), bc), rmul_leg(w, w.T1(a, b), 1, c)
    ab = w.alg.mul_basis(a, b)
    yield "T2(ab(x)c) = (a(x)1)T2(b(x)c)", w.T(2, ab, B(c)), lmul_leg(w, w.T2(b, c), 0, a)
    yield "(c(x)1)T1(a(x)b) = T2(c(x)a)(1(x)b)", lmul_leg(w, w.T1(a, b), 0, c), \
        rmul_leg(w, w.T2(c, a), 1, b)
    yield "two-sided: (c(x)1)D(a)(1(x)b) = sandwich", lmul_leg(w, w.T1(a, b), 0, c), \
        w.d_basis(a, c, None, None, b)
    if w.regular:
        yield "(1(x)c)T1(a(x)b) = T3(a(x)c)(1(x)b)", lmul_leg(w, w.T1(a, b), 1, c), \
            rmul_leg(w, w.T3(a, c), 1, b)
        yield "T1(a(x)b)(c(x)1) = T4(c(x)a)(1(x)b)", rmul_leg(w, w.T1(a, b), 0, c), \
            rmul_leg(w, w.T4(c, a), 1, b)
        yield "T3(a(x)cb) = (1(x)c)T3(a(x)b)", w.T(3, B(a), w.alg.mul_basis(c, b)), \
            lmul_leg(w, w.T3(a, b), 1, c)
        yield "T4(ac(x)b) = T4(a(x)b)(c(x)1)", w.T(4, w.alg.mul_basis(a, c), B(b)), \
            rmul_leg(w, w.T4(a, b), 0, c)


def _ax_i_support(ctx):
    w = ctx.w
    keys = set(w.basis)
    for a in w.basis:
        for b in w.basis:
            for i in ((1, 2, 3, 4) if w.regular else (1, 2)):
                for (x, y) in w.T(i, B(a), B(b)):
                    if x not in keys or y not in keys:
                        return {"tuple": [al.fmt_key(a), al.fmt_key(b)], "part": f"T{i} leaves A(x)A"}
    return None


register("AX-i", "T1(a(x)b)=D(a)(1(x)b) and T2(a(x)b)=(a(x)1)D(b) lie in A(x)A, as module maps",
         "axioms", [(3, _ax_i)], _ax_i_support, prereq=("ALG",))


def _hom(ctx, a, b, x, y):
    w = ctx.w
    ab = w.alg.mul_basis(a, b)
    X = {(x, y): 1}
    lhs = w.D(ab, r1=B(x), r2=B(y))
    rhs = w.D_on(a, w.D_on(b, X))
    yield "D(ab)(x(x)y) = D(a)(D(b)(x(x)y))", lhs, rhs
    yield "(x(x)y)D(ab) = ((x(x)y)D(a))D(b)", w.D(ab, l1=B(x), l2=B(y)), w.on_D(w.on_D(X, a), b)
    yield "(x(x)y)(D(a)(1(x)b)) = ((x(x)y)D(a))(1(x)b)", \
        al.tensor_mul(w.alg, X, w.T1(a, b)), rmul_leg(w, w.on_D(X, a), 1, b)


register("HOM", "comultiplication is multiplicative and each D(a) is a multiplier", "axioms",
         [(4, _hom)], prereq=("AX-i",))


def _e_mult(ctx, x, y, u, v):
    w = ctx.w
    X = {(x, y): 1}
    U = {(u, v): 1}
    yield "(x(x)y)(E(u(x)v)) = ((x(x)y)E)(u(x)v)", al.tensor_mul(w.alg, X, w.E_on(U)), \
        al.tensor_mul(w.alg, w.on_E(X), U)
    yield "E(E(u(x)v)) = E(u(x)v)", w.E_on(w.E_on(U)), w.E_on(U)
    yield "((x(x)y)E)E = (x(x)y)E", w.on_E(w.on_E(X)), w.on_E(X)
    yield "(x(x)1)E(1(x)v) consistent", rmul_leg(w, w.e_basis(x, None, None, v), 0, u), \
        w.e_basis(x, None, u, v)


register("E-MULT", "E is an idempotent multiplier on A(x)A", "axioms", [(4, _e_mult)], prereq=("ALG",))


def _ax_ii(ctx, a, b, c):
    w = ctx.w
    X = {(a, b, c): 1}
    lhs = al.pair_apply(al.pair_apply(X, (1, 2), w.T1), (0, 1), w.T2)
    rhs = al.pair_apply(al.pair_apply(X, (0, 1), w.T2), (1, 2), w.T1)
    yield "(T2(x)id)(id(x)T1) = (id(x)T1)(T2(x)id)", lhs, rhs


register("AX-ii", "coassociativity (T2(x)id)(id(x)T1)=(id(x)T1)(T2(x)id)", "axioms",
         [(3, _ax_ii)], prereq=("AX-i",))


def _ax_iii(ctx, a, b):
    w = ctx.w
    ab = w.alg.mul_basis(a, b)
    yield "(eps(x)id)T1 = mu", w.eps_id(w.T1(a, b)), ab
    yield "(id(x)eps)T2 = mu", w.id_eps(w.T2(a, b)), ab


register("AX-iii", "counit: (eps(x)id)T1 = mu = (id(x)eps)T2", "axioms", [(2, _ax_iii)],
         prereq=("AX-i",))


def _ax_iv(ctx, a, b, c):
    w = ctx.w
    t = w.d_basis(a, None, None, b, c)
    yield "E D(a)(b(x)c) = D(a)(b(x)c)", w.E_on(t), t
    s = w.d_basis(a, b, c, None, None)
    yield "(b(x)c)D(a) E = (b(x)c)D(a)", w.on_E(s), s


def _pair_vec(w, X):
    n = len(w.basis)
    v = [Fraction(0)] * (n * n)
    for (x, y), c in X.items():
        v[w.alg.index[x] * n + w.alg.index[y]] = Fraction(c)
    return v


def _vec_pair(w, v):
    n = len(w.basis)
    return {(w.basis[i // n], w.basis[i % n]): c for i, c in enumerate(v) if c}


def _ax_iv_spans(ctx):
    w = ctx.w
    n = len(w.basis)
    B3 = list(itertools.product(w.basis, repeat=3))
    B2 = list(itertools.product(w.basis, repeat=2))
    for side in ("left", "right"):
        if side == "left":
            dv = [_pair_vec(w, w.d_basis(a, None, None, b, c)) for a, b, c in B3]
            ev = [_pair_vec(w, w.e_basis(None, None, b, c)) for b, c in B2]
        else:
            dv = [_pair_vec(w, w.d_basis(a, b, c, None, None)) for a, b, c in B3]
            ev = [_pair_vec(w, w.e_basis(b, c, None, None)) for b, c in B2]
        sd, se = xl.span(dv, n * n), xl.span(ev, n * n)
        if not xl.subspace_equal(sd, se):
            for row in se.basis:
                if not sd.contains(row):
                    return {"part": f"{side} span: E-vector outside Delta-span",
                            "lhs": _render(_vec_pair(w, row)), "rhs": f"dim {sd.dim} vs {se.dim}"}
            for row in sd.basis:
                if not se.contains(row):
                    return {"part": f"{side} span: Delta-vector outside E-span",
                            "lhs": _render(_vec_pair(w, row)), "rhs": f"dim {sd.dim} vs {se.dim}"}
    return None


register("AX-iv", "<D(a)(b(x)b')> = <E(b(x)b')> and <(b(x)b')D(a)> = <(b(x)b')E>", "axioms",
         [(3, _ax_iv)], _ax_iv_spans, prereq=("AX-i",))


def _ax_v_a(ctx, x, y, z):
    w = ctx.w
    X = {(x, y, z): 1}
    yield "(E(x)1)(1(x)E) = (1(x)E)(E(x)1)", E3_left(w, X, "E1,1E"), E3_left(w, X, "1E,E1")


def _ax_v_b(ctx, u, v, a, b, c):
    w = ctx.w
    # (E(x)1)(1(x)E)(D(u)(a(x)b) (x) vc) = (D(x)id)(E(u(x)v))(a(x)b(x)c)
    vc = w.alg.mul_basis(v, c)
    du = w.d_basis(u, None, None, a, b)
    X = {(p, q, r): s * t for (p, q), s in du.items() for r, t in vc.items()}
    lhs = E3_left(w, X, "E1,1E")
    rhs: dict = {}
    for (u2, v2), s in w.e_basis(None, None, u, v).items():
        for (p, q), t in w.d_basis(u2, None, None, a, b).items():
            for r, z in w.alg.mul_basis(v2, c).items():
                add_into(rhs, {(p, q, r): s * t * z})
    yield "E3 = (D(x)id)E on spanning set", lhs, rhs
    # mirror: (1(x)E)(E(x)1)(ua (x) D(v)(b(x)c)) = (id(x)D)(E(u(x)v))(a(x)b(x)c)
    ua = w.alg.mul_basis(u, a)
    dv = w.d_basis(v, None, None, b, c)
    Y = {(p, q, r): s * t for p, s in ua.items() for (q, r), t in dv.items()}
    lhs2 = E3_left(w, Y, "1E,E1")
    rhs2: dict = {}
    for (u2, v2), s in w.e_basis(None, None, u, v).items():
        for p, t in w.alg.mul_basis(u2, a).items():
            for (q, r), z in w.d_basis(v2, None, None, b, c).items():
                add_into(rhs2, {(p, q, r): s * t * z})
    yield "E3 = (id(x)D)E on spanning set", lhs2, rhs2


register("AX-v", "(E(x)1)(1(x)E) = E3 = (1(x)E)(E(x)1)", "axioms",
         [(3, _ax_v_a), (5, _ax_v_b)], prereq=("AX-i", "E-MULT"))


def _ax_vi(ctx, a, b, c):
    w = ctx.w
    yield "(eps(x)id)((1(x)a)E(b(x)c)) = (eps(x)id)(D(a)(b(x)c))", \
        w.eps_id(w.e_basis(None, a, b, c)), w.eps_id(w.d_basis(a, None, None, b, c))
    yield "(eps(x)id)((a(x)b)E(1(x)c)) = (eps(x)id)((a(x)b)D(c))", \
        w.eps_id(w.e_basis(a, b, None, c)), w.eps_id(w.d_basis(c, a, b, None, None))


register("AX-vi", "(eps(x)id)((1(x)a)E(b(x)c)) = (eps(x)id)(D(a)(b(x)c)) and its mirror", "axioms",
         [(3, _ax_vi)], prereq=("AX-i",))


def _reg_eq(ctx, a, b, c):
    w = ctx.w
    ba = w.alg.mul_basis(b, a)
    yield "(eps(x)id)T3 = mu_op", w.eps_id(w.T3(a, b)), ba
    yield "(id(x)eps)T4 = mu_op", w.id_eps(w.T4(a, b)), ba
    X = {(a, b, c): 1}
    lhs = al.pair_apply(al.pair_apply(X, (1, 2), w.T3), (0, 1), w.T4)
    rhs = al.pair_apply(al.pair_apply(X, (0, 1), w.T4), (1, 2), w.T3)
    yield "(T4(x)id)(id(x)T3) = (id(x)T3)(T4(x)id)", lhs, rhs


register("REG-EQ", "regular forms: (eps(x)id)T3 = mu_op = (id(x)eps)T4, T3/T4 coassociativity",
         "axioms", [(3, _reg_eq)], needs=("regular",), prereq=("AX-i",))


def _ed(ctx, a, b, c):
    w = ctx.w
    X = {(b, c): 1}
    t = w.d_basis(a, None, None, b, c)
    s = w.d_basis(a, b, c, None, None)
    yield "(E D(a))(b(x)c) = D(a)(b(x)c)", w.E_on(t), t
    yield "(b(x)c)(E D(a)) = (b(x)c)D(a)", w.on_D(w.on_E(X), a), s
    yield "(D(a) E)(b(x)c) = D(a)(b(x)c)", w.D_on(a, w.E_on(X)), t
    yield "(b(x)c)(D(a) E) = (b(x)c)D(a)", w.on_E(s), s


register("ED", "E D(a) = D(a) = D(a) E", "axioms", [(3, _ed)], prereq=("AX-i",))


# ---------------------------------------------------------------- axiom (vi) equivalents

def _vi_statements(w: WMBInstance):
    def s1(a, b, c):
        return w.eps_id(w.e_basis(a, b, None, c)), w.eps_id(w.d_basis(c, a, b, None, None))

    def s2(a, b, c):
        return w.id_eps(w.e_basis(a, None, b, c)), w.id_eps(w.d_basis(a, None, None, b, c))

    def s3(a, c):
        return w.eps_eps(w.e_basis(a, None, None, c)), w.eps(w.alg.mul_basis(a, c))

    def s4(a, b, c):
        return w.eps_eps(w.d_basis(b, a, None, None, c)), w.eps(w.mul(B(a), B(b), B(c)))

    def r1(a, b, c):
        return w.eps_id(w.e_basis(None, a, b, c)), w.eps_id(w.d_basis(a, None, None, b, c))

    def r2(a, b, c):
        return w.id_eps(w.e_basis(a, b, c, None)), w.id_eps(w.d_basis(c, a, b, None, None))

    def r3(a, c):
        return w.eps_eps(w.e_basis(None, a, c, None)), w.eps(w.alg.mul_basis(a, c))

    def r4(a, b, c):
        return w.eps_eps(w.d_basis(b, None, a, c, None)), w.eps(w.mul(B(a), B(b), B(c)))

    plain = [("VI-1", 3, s1), ("VI-2", 3, s2), ("VI-3", 2, s3), ("VI-4", 3, s4)]
    reg = [("VI-R1", 3, r1), ("VI-R2", 3, r2), ("VI-R3", 2, r3), ("VI-R4", 3, r4)]
    return plain, reg


VI_TEXT = {
    "VI-1": "(eps(x)id)((a(x)b)E(1(x)c)) = (eps(x)id)((a(x)b)D(c))",
    "VI-2": "(id(x)eps)((a(x)1)E(b(x)c)) = (id(x)eps)(D(a)(b(x)c))",
    "VI-3": "(a(x)1)E(1(x)c) in A(x)A and (eps(x)eps)((a(x)1)E(1(x)c)) = eps(ac)",
    "VI-4": "(eps(x)eps)((a(x)1)D(b)(1(x)c)) = eps(abc)",
    "VI-R1": "(eps(x)id)((1(x)a)E(b(x)c)) = (eps(x)id)(D(a)(b(x)c))",
    "VI-R2": "(id(x)eps)((a(x)b)E(c(x)1)) = (id(x)eps)((a(x)b)D(c))",
    "VI-R3": "(eps(x)eps)((1(x)a)E(c(x)1)) = eps(ac)",
    "VI-R4": "(eps(x)eps)((1(x)a)D(b)(c(x)1)) = eps(abc)",
}


def _statement_truth(w, sampler, sid, arity, fn):
    if w.dense:
        tuples = itertools.product(w.basis, repeat=arity)
        mode = "exhaustive"
    else:
        tuples = sampler.tuples(w.alg, arity, sid)
        mode = sampler.mode
    n = 0
    for t in tuples:
        n += 1
        l, r = fn(*t)
        if not _same(l, r):
            return False, mode, n, {"tuple": [al.fmt_key(x) for x in t], "part": sid,
                                    "lhs": _render(l), "rhs": _render(r), "raw_tuple": t}
    return True, mode, n, None


def verify_vi_equivalents(w: WMBInstance, sampler: Optional[Sampler] = None) -> LawReport:
    """Evaluate the four equivalent forms of axiom (vi) (and their regular
    mirrors) and check that each family is all-true or all-false."""
    sampler = sampler or Sampler()
    plain, reg = _vi_statements(w)
    results = []
    fams = [plain] + ([reg] if w.regular else [])
    agree = True
    for fam in fams:
        truths = []
        for sid, ar, fn in fam:
            ok, mode, n, wit = _statement_truth(w, sampler, sid, ar, fn)
            truths.append(ok)
            results.append(LawResult(sid, VI_TEXT[sid], "pass" if ok else "fail", mode, n, wit))
        if len(set(truths)) > 1:
            agree = False
    results.append(LawResult("VI-AGREE", "the equivalent forms of axiom (vi) agree",
                             "pass" if agree else "fail",
                             "exhaustive" if w.dense else sampler.mode, len(results)))
    if not w.regular:
        results.append(LawResult("VI-R", "regular forms", "skipped", reason="requires regular"))
    return LawReport(w.name, results)


# ---------------------------------------------------------------- counit solving

@dataclass
class CounitSolution:
    particular: Optional[dict]
    solution_dim: int  # dimension of the affine solution set; -1 if inconsistent
    matches_declared: bool

    @property
    def unique(self) -> bool:
        return self.solution_dim == 0


def solve_counit(w: WMBInstance) -> CounitSolution:
    """Solve the linear system in eps given by axioms (iii) and (vi)."""
    if not w.dense:
        raise al.UnsupportedBackend("counit solving needs a finite basis")
    basis = w.basis
    n = len(basis)
    idx = w.alg.index
    rows, rhs = [], []

    def contract(X, leg):
        # (eps on `leg`) X as {remaining key: coefficient row over unknowns}
        out: dict = {}
        for k, c in X.items():
            rest = k[1 - leg]
            row = out.setdefault(rest, [Fraction(0)] * n)
            row[idx[k[leg]]] += c
        return out

    def add_eq(lhs_rows: dict, target: dict):
        for key in set(lhs_rows) | set(target):
            rows.append(lhs_rows.get(key, [Fraction(0)] * n))
            rhs.append(Fraction(target.get(key, 0)))

    def add_diff(x_rows: dict, y_rows: dict):
        for key in set(x_rows) | set(y_rows):
            zx = x_rows.get(key, [Fraction(0)] * n)
            zy = y_rows.get(key, [Fraction(0)] * n)
            rows.append([p - q for p, q in zip(zx, zy)])
            rhs.append(Fraction(0))

    for a in basis:
        for b in basis:
            ab = w.alg.mul_basis(a, b)
            add_eq(contract(w.T1(a, b), 0), ab)
            add_eq(contract(w.T2(a, b), 1), ab)
            for c in basis:
                add_diff(contract(w.e_basis(None, a, b, c), 0), contract(w.d_basis(a, None, None, b, c), 0))
                add_diff(contract(w.e_basis(a, b, None, c), 0), contract(w.d_basis(c, a, b, None, None), 0))
    sol = xl.solve(rows, rhs)
    if sol is None:
        return CounitSolution(None, -1, False)
    x, _ = sol
    dim = n - xl.rank(rows)
    found = {basis[i]: x[i] for i in range(n)}
    matches = dim == 0 and all(found[b] == w.counit(b) for b in basis)
    return CounitSolution(found, dim, matches)


# ---------------------------------------------------------------- classification

@dataclass
class Classification:
    regular: bool
    left_full: bool
    right_full: bool
    multiplier_bialgebra: bool
    right_criteria: dict
    left_criteria: dict
    mb_criteria: dict
    mode: str

    @property
    def right_agree(self) -> bool:
        return len(set(self.right_criteria.values())) <= 1

    @property
    def left_agree(self) -> bool:
        return len(set(self.left_criteria.values())) <= 1

    @property
    def mb_agree(self) -> bool:
        return len(set(self.mb_criteria.values())) <= 1

    def to_json(self) -> dict:
        return {"regular": self.regular, "left_full": self.left_full, "right_full": self.right_full,
                "multiplier_bialgebra": self.multiplier_bialgebra, "mode": self.mode,
                "right_full_criteria": self.right_criteria, "left_full_criteria": self.left_criteria,
                "multiplier_bialgebra_criteria": self.mb_criteria}


def _slices_full(w, X_list, leg_keep):
    n = len(w.basis)
    vecs = []
    for X in X_list:
        by_other: dict = {}
        for k, c in X.items():
            by_other.setdefault(k[1 - leg_keep], {})[k[leg_keep]] = c
        for part_ in by_other.values():
            vecs.append(w.alg.to_vec(part_))
    return xl.span(vecs, n).is_full()


def _mb_criteria(w: WMBInstance, sampler: Sampler) -> dict:
    from . import base
    if w.dense:
        pairs = list(itertools.product(w.basis, repeat=2))
    else:
        pairs = sampler.tuples(w.alg, 2, "mb-criteria")
    e1 = all(w.e_basis(None, None, a, b) == {(a, b): 1} and w.e_basis(a, b, None, None) == {(a, b): 1}
             for a, b in pairs)
    mult = all(w.eps(w.alg.mul_basis(a, b)) == w.counit(a) * w.counit(b) for a, b in pairs)

    def scalar_pi(kind):
        for a, b in pairs:
            m = base.pi(w, kind, a)
            target = {b: w.counit(a)} if w.counit(a) else {}
            if clean(m.lam_basis(b)) != target or clean(m.rho_basis(b)) != target:
                return False
        return True

    return {"E=1": e1, "eps multiplicative": mult,
            "pibarL(a)=eps(a)1": scalar_pi(base.BARPIL), "pibarR(a)=eps(a)1": scalar_pi(base.BARPIR)}


def classify(w: WMBInstance, sampler: Optional[Sampler] = None) -> Classification:
    from . import base
    sampler = sampler or Sampler()
    mb = _mb_criteria(w, sampler)
    if not w.dense:
        rf = bool(w.declared.get("right_full", False))
        lf = bool(w.declared.get("left_full", False))
        return Classification(w.regular, lf, rf, all(mb.values()), {"declared": rf}, {"declared": lf},
                              mb, f"declared fullness; E=1 criteria {sampler.mode}")
    basis = w.basis
    pairs = list(itertools.product(basis, repeat=2))
    n = len(basis)
    full = lambda vecs: xl.span(vecs, n).is_full()  # noqa: E731
    right = {
        "(1) slices of T1": _slices_full(w, [w.T1(a, b) for a, b in pairs], 0),
        "(3) (id(x)eps)T1 spans A": full([w.alg.to_vec(w.id_eps(w.T1(a, b))) for a, b in pairs]),
    }
    left = {
        "(1)' slices of T2": _slices_full(w, [w.T2(a, b) for a, b in pairs], 1),
        "(3)' (eps(x)id)T2 spans A": full([w.alg.to_vec(w.eps_id(w.T2(a, b))) for a, b in pairs]),
    }
    if w.regular:
        right["(2) slices of T3"] = _slices_full(w, [w.T3(a, b) for a, b in pairs], 0)
        right["(4) (id(x)eps)T3 spans A"] = full([w.alg.to_vec(w.id_eps(w.T3(a, b))) for a, b in pairs])
        right["(5) piR(A) = pibarR(A)"] = xl.subspace_equal(base.image_space(w, base.PIR),
                                                            base.image_space(w, base.BARPIR))
        left["(2)' slices of T4"] = _slices_full(w, [w.T4(a, b) for a, b in pairs], 1)
        left["(4)' (eps(x)id)T4 spans A"] = full([w.alg.to_vec(w.eps_id(w.T4(a, b))) for a, b in pairs])
        left["(5)' piL(A) = pibarL(A)"] = xl.subspace_equal(base.image_space(w, base.PIL),
                                                           base.image_space(w, base.BARPIL))
    rf = right.get("(5) piR(A) = pibarR(A)", right["(3) (id(x)eps)T1 spans A"])
    lf = left.get("(5)' piL(A) = pibarL(A)", left["(3)' (eps(x)id)T2 spans A"])
    return Classification(w.regular, lf, rf, mb["E=1"], right, left, mb, "exhaustive")
