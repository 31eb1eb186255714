"""Instances from categories, unital weak bialgebras and direct sums.

Composition convention: ``ab`` is "a after b" and is defined iff
src(a) == tgt(b).  An arrow written (i,j) goes from j to i.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Optional

from . import algebra as al
from .algebra import add_into
from .wmb import WMBInstance

CATALOG_NAMES = ("PAIR2", "IDEM2", "C2", "CYC3MON", "FPAIR2", "ZFUN", "SUMC2PAIR2", "SUMINF_C2")


class PresentationSyntaxError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col
        self.msg = msg


class ValidationError(ValueError):
    def __init__(self, msg: str, triple: Optional[tuple] = None):
        super().__init__(msg if triple is None else f"{msg}: {triple}")
        self.triple = triple


class FiberNotFinite(ValueError):
    pass


# ---------------------------------------------------------------- presentations

@dataclass
class CategoryPresentation:
    name: str
    objects: list
    arrows: dict  # id -> (src, tgt), insertion ordered
    compose: dict  # (a, b) -> c, meaning a after b
    identity: dict  # object -> arrow id
    inverse: dict = field(default_factory=dict)

    def src(self, a):
        return self.arrows[a][0]

    def tgt(self, a):
        return self.arrows[a][1]

    def composable(self, a, b) -> bool:
        return self.src(a) == self.tgt(b)

    @property
    def groupoid(self) -> bool:
        return all(a in self.inverse for a in self.arrows)

    def is_identity(self, a) -> bool:
        return a in self.identity.values()

    def validate(self) -> "CategoryPresentation":
        arrows = list(self.arrows)
        for (a, b), c in self.compose.items():
            if not self.composable(a, b):
                raise ValidationError(f"compose {a} * {b} given but src({a}) != tgt({b})", (a, b, c))
            if self.src(c) != self.src(b) or self.tgt(c) != self.tgt(a):
                raise ValidationError(f"{a} * {b} = {c} has the wrong source or target", (a, b, c))
        for a in arrows:
            for b in arrows:
                if self.composable(a, b) and (a, b) not in self.compose:
                    raise ValidationError(f"composition {a} * {b} missing", (a, b))
        for o in self.objects:
            if o not in self.identity:
                raise ValidationError(f"missing identity for object {o}")
            i = self.identity[o]
            if self.arrows[i] != (o, o):
                raise ValidationError(f"identity {i} of {o} is not a loop at {o}")
        for a in arrows:
            if self.compose[a, self.identity[self.src(a)]] != a:
                raise ValidationError("identity not neutral", (a, self.identity[self.src(a)]))
            if self.compose[self.identity[self.tgt(a)], a] != a:
                raise ValidationError("identity not neutral", (self.identity[self.tgt(a)], a))
        for a, b, c in itertools.product(arrows, repeat=3):
            if self.composable(a, b) and self.composable(b, c):
                if self.compose[self.compose[a, b], c] != self.compose[a, self.compose[b, c]]:
                    raise ValidationError("composition not associative", (a, b, c))
        for a, b in self.inverse.items():
            if self.arrows[b] != (self.tgt(a), self.src(a)):
                raise ValidationError(f"inverse {b} of {a} has the wrong source or target", (a, b))
            if self.compose[a, b] != self.identity[self.tgt(a)] or \
                    self.compose[b, a] != self.identity[self.src(a)]:
                raise ValidationError(f"{b} is not inverse to {a}", (a, b))
        return self


_KEYWORDS = ("category", "objects", "arrow", "compose", "inverse", "identity")


def _tokens(line: str):
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_presentation(text: str) -> CategoryPresentation:
    name = None
    objects: list = []
    arrows: dict = {}
    compose: dict = {}
    identity: dict = {}
    inverse: dict = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        kw, col = toks[0]
        end_col = len(line.rstrip()) + 1

        def expect(n, shape):
            if len(toks) != n:
                where = toks[n][1] if len(toks) > n else end_col
                raise PresentationSyntaxError(ln, where, f"expected '{shape}'")

        def sep(i, s, shape):
            if toks[i][0] != s:
                raise PresentationSyntaxError(ln, toks[i][1], f"expected '{s}' in '{shape}'")

        def arrow_ref(i):
            t, c = toks[i]
            if t not in arrows:
                raise PresentationSyntaxError(ln, c, f"unknown arrow {t!r}")
            return t

        def obj_ref(i):
            t, c = toks[i]
            if t not in objects:
                raise PresentationSyntaxError(ln, c, f"unknown object {t!r}")
            return t

        if kw == "category":
            expect(2, "category <name>")
            name = toks[1][0]
        elif kw == "objects":
            if len(toks) < 2:
                raise PresentationSyntaxError(ln, end_col, "expected at least one object")
            for t, c in toks[1:]:
                if t in objects:
                    raise PresentationSyntaxError(ln, c, f"duplicate object {t!r}")
                objects.append(t)
        elif kw == "arrow":
            shape = "arrow <id> : <obj> -> <obj>"
            expect(6, shape)
            sep(2, ":", shape)
            sep(4, "->", shape)
            aid, c = toks[1]
            if aid in arrows:
                raise PresentationSyntaxError(ln, c, f"duplicate arrow {aid!r}")
            s, t = obj_ref(3), obj_ref(5)
            arrows[aid] = (s, t)
        elif kw == "compose":
            shape = "compose <id> * <id> = <id>"
            expect(6, shape)
            sep(2, "*", shape)
            sep(4, "=", shape)
            a, b, c_ = arrow_ref(1), arrow_ref(3), arrow_ref(5)
            if (a, b) in compose and compose[a, b] != c_:
                raise PresentationSyntaxError(ln, toks[5][1], f"conflicting value for {a} * {b}")
            compose[a, b] = c_
        elif kw == "inverse":
            shape = "inverse <id> = <id>"
            expect(4, shape)
            sep(2, "=", shape)
            inverse[arrow_ref(1)] = arrow_ref(3)
        elif kw == "identity":
            shape = "identity <obj> = <arrow-id>"
            expect(4, shape)
            sep(2, "=", shape)
            identity[obj_ref(1)] = arrow_ref(3)
        else:
            raise PresentationSyntaxError(ln, col, f"unknown keyword {kw!r}")
    if name is None:
        raise PresentationSyntaxError(1, 1, "missing 'category <name>' line")
    return CategoryPresentation(name, objects, arrows, compose, identity, inverse).validate()


def render_presentation(p: CategoryPresentation) -> str:
    out = [f"category {p.name}", "objects " + " ".join(p.objects)]
    for a, (s, t) in p.arrows.items():
        out.append(f"arrow {a} : {s} -> {t}")
    for o in p.objects:
        out.append(f"identity {o} = {p.identity[o]}")
    for (a, b), c in p.compose.items():
        out.append(f"compose {a} * {b} = {c}")
    for a, b in p.inverse.items():
        out.append(f"inverse {a} = {b}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- lazy groupoids

@dataclass
class LazyGroupoidSpec:
    """A locally finite groupoid given by rules instead of tables.

    ``left_fiber(a, b)`` enumerates {c : ca = b}; ``right_fiber(a, b)``
    enumerates {c : ac = b}.
    """
    name: str
    sample: Callable  # rng -> arrow
    src: Callable
    tgt: Callable
    compose: Callable  # (a, b) -> a after b
    inverse: Callable
    is_identity: Callable
    left_fiber: Callable
    right_fiber: Callable

    def composable(self, a, b) -> bool:
        return self.src(a) == self.tgt(b)


def check_lazy_spec(spec: LazyGroupoidSpec, sampler) -> None:
    """Groupoid laws and fiber correctness on sampled arrows."""
    rng = sampler.rng(f"spec/{spec.name}")
    for _ in range(min(sampler.n, 100)):
        a, b, c = spec.sample(rng), spec.sample(rng), spec.sample(rng)
        ia = spec.inverse(a)
        if not spec.is_identity(spec.compose(a, ia)) or not spec.is_identity(spec.compose(ia, a)):
            raise ValidationError("inverse law fails", (a, ia))
        if spec.composable(a, b) and spec.composable(b, c):
            if spec.compose(spec.compose(a, b), c) != spec.compose(a, spec.compose(b, c)):
                raise ValidationError("composition not associative", (a, b, c))
        lf = spec.left_fiber(a, b)
        if lf is None or any(not spec.composable(x, a) or spec.compose(x, a) != b for x in lf):
            raise FiberNotFinite(f"left fiber of ({a}, {b}) is wrong")
        if spec.tgt(a) == spec.tgt(b) and not lf:
            pass
        if spec.src(a) == spec.src(b):
            want = spec.compose(b, spec.inverse(a))
            if want not in lf:
                raise FiberNotFinite(f"left fiber of ({a}, {b}) misses {want}")
        rf = spec.right_fiber(a, b)
        if rf is None or any(not spec.composable(a, x) or spec.compose(a, x) != b for x in rf):
            raise FiberNotFinite(f"right fiber of ({a}, {b}) is wrong")
        if spec.tgt(a) == spec.tgt(b):
            want = spec.compose(spec.inverse(a), b)
            if want not in rf:
                raise FiberNotFinite(f"right fiber of ({a}, {b}) misses {want}")


class _FiniteCat:
    """Table-driven view of a presentation with the LazyGroupoidSpec surface."""

    def __init__(self, p: CategoryPresentation):
        self.p = p
        self.arrows = list(p.arrows)

    def composable(self, a, b):
        return self.p.composable(a, b)

    def compose(self, a, b):
        return self.p.compose[a, b]

    def is_identity(self, a):
        return self.p.is_identity(a)

    def left_fiber(self, a, b):
        return [c for c in self.arrows if self.composable(c, a) and self.compose(c, a) == b]

    def right_fiber(self, a, b):
        return [c for c in self.arrows if self.composable(a, c) and self.compose(a, c) == b]


# ---------------------------------------------------------------- span construction

def _mul_opt(alg, x: Optional[dict], y: dict) -> dict:
    return y if x is None else alg.multiply(x, y)


def _sandwich_elem(alg, X: dict, l1, l2, r1, r2) -> dict:
    """(l1(x)l2) X (r1(x)r2) for an element X of A(x)A and basis indices or None."""
    acc: dict = {}
    for (p, q), c in X.items():
        left = {p: 1}
        if l1 is not None:
            left = alg.mul_basis(l1, p)
        if r1 is not None:
            left = alg.multiply(left, {r1: 1})
        if not left:
            continue
        right = {q: 1}
        if l2 is not None:
            right = alg.mul_basis(l2, q)
        if r2 is not None:
            right = alg.multiply(right, {r2: 1})
        for u, d in left.items():
            for v, e in right.items():
                add_into(acc, {(u, v): 1}, c * d * e)
    return acc


def span_wmb(p: CategoryPresentation, name: Optional[str] = None) -> WMBInstance:
    """The category algebra with Delta(a) = a(x)a and eps(a) = 1."""
    def prod(a, b):
        return {p.compose[a, b]: 1} if p.composable(a, b) else {}

    def factor(a):
        return [(1, a, p.identity[p.src(a)])]

    unit = {p.identity[o]: 1 for o in p.objects}
    alg = al.NonUnitalAlgebra(name or p.name, prod, list(p.arrows), factor=factor, unit=unit)
    E_elem = {(p.identity[o], p.identity[o]): 1 for o in p.objects}

    def delta(a, l1, l2, r1, r2):
        return _sandwich_elem(alg, {(a, a): 1}, l1, l2, r1, r2)

    def E(l1, l2, r1, r2):
        return _sandwich_elem(alg, E_elem, l1, l2, r1, r2)

    oracle = None
    if p.groupoid:
        def oracle(a):
            return {p.inverse[a]: 1}
    declared = {"multiplier_bialgebra": len(p.objects) == 1}
    return WMBInstance(name or p.name, alg, delta, lambda a: 1, E, True, declared, None, oracle,
                       {"construction": "span", "presentation": p})


# ---------------------------------------------------------------- functional construction

def _functional_from(cat, alg, name, dense_arrows: Optional[list], declared: dict, meta: dict,
                     antipode=None, oracle=None) -> WMBInstance:
    def leg(l, r):
        if l is not None and r is not None and l != r:
            return False
        return l if l is not None else r

    def delta(a, l1, l2, r1, r2):
        p, q = leg(l1, r1), leg(l2, r2)
        if p is False or q is False:
            return {}
        if p is not None and q is not None:
            return {(p, q): 1} if cat.composable(p, q) and cat.compose(p, q) == a else {}
        if p is not None:
            return {(p, x): 1 for x in cat.right_fiber(p, a)}
        if q is not None:
            return {(x, q): 1 for x in cat.left_fiber(q, a)}
        if dense_arrows is None:
            raise al.UnsupportedBackend("Delta(a) is not in A(x)A on a lazy backend")
        return {(x, y): 1 for x in dense_arrows for y in dense_arrows
                if cat.composable(x, y) and cat.compose(x, y) == a}

    def E(l1, l2, r1, r2):
        p, q = leg(l1, r1), leg(l2, r2)
        if p is False or q is False:
            return {}
        if p is not None and q is not None:
            return {(p, q): 1} if cat.composable(p, q) else {}
        if dense_arrows is None:
            raise al.UnsupportedBackend("one-legged sandwich of E is not in A(x)A on a lazy backend")
        if p is not None:
            return {(p, y): 1 for y in dense_arrows if cat.composable(p, y)}
        if q is not None:
            return {(x, q): 1 for x in dense_arrows if cat.composable(x, q)}
        return {(x, y): 1 for x in dense_arrows for y in dense_arrows if cat.composable(x, y)}

    def counit(a):
        return 1 if cat.is_identity(a) else 0

    return WMBInstance(name, alg, delta, counit, E, True, declared, antipode, oracle, meta)


def functional_wmb(p: CategoryPresentation, name: Optional[str] = None) -> WMBInstance:
    """Finitely supported functions on the arrows, pointwise product."""
    arrows = list(p.arrows)
    alg = al.NonUnitalAlgebra(name or f"F({p.name})", lambda a, b: {a: 1} if a == b else {}, arrows,
                              factor=lambda a: [(1, a, a)], unit={a: 1 for a in arrows})
    oracle = (lambda a: {p.inverse[a]: 1}) if p.groupoid else None
    return _functional_from(_FiniteCat(p), alg, name or f"F({p.name})", arrows, {},
                            {"construction": "functional", "presentation": p}, None, oracle)


def lazy_functional(spec: LazyGroupoidSpec, name: Optional[str] = None,
                    declared: Optional[dict] = None) -> WMBInstance:
    alg = al.NonUnitalAlgebra(name or spec.name, lambda a, b: {a: 1} if a == b else {}, None,
                              backend=al.LAZY, sample=spec.sample, factor=lambda a: [(1, a, a)],
                              declared={"idempotent": True, "nondegenerate": True})
    decl = {"left_full": True, "right_full": True}
    decl.update(declared or {})

    def oracle(a):
        return {spec.inverse(a): 1}

    def antipode(a):
        return al.embed(alg, oracle(a), f"S({a})")

    return _functional_from(spec, alg, name or spec.name, None, decl,
                            {"construction": "lazy functional"}, antipode, oracle)


def integers_spec() -> LazyGroupoidSpec:
    """The group Z as a one-object groupoid; arrows are ints."""
    return LazyGroupoidSpec(
        "ZFUN", sample=lambda rng: rng.randint(-3, 3), src=lambda a: 0, tgt=lambda a: 0,
        compose=lambda a, b: a + b, inverse=lambda a: -a, is_identity=lambda a: a == 0,
        left_fiber=lambda a, b: [b - a], right_fiber=lambda a, b: [b - a])


# ---------------------------------------------------------------- unital weak bialgebras

def from_unital_weak_bialgebra(name: str, basis: list, mult: dict, delta: dict, counit: dict,
                               unit: dict, oracle: Optional[dict] = None) -> WMBInstance:
    """mult[(i, j)] and delta[i] are elements; E is taken to be Delta(1)."""
    if not basis:
        raise ValidationError("empty basis")
    alg = al.NonUnitalAlgebra(name, lambda a, b: dict(mult.get((a, b), {})), basis,
                              factor=lambda a: [(c, a, u) for u, c in unit.items()], unit=dict(unit))
    for b in basis:
        if alg.multiply(unit, {b: 1}) != {b: 1} or alg.multiply({b: 1}, unit) != {b: 1}:
            raise ValidationError("unit is not a two-sided unit", (b,))
    E_elem: dict = {}
    for u, c in unit.items():
        add_into(E_elem, delta[u], c)
    if al.tensor_mul(alg, E_elem, E_elem) != E_elem:
        raise ValidationError("Delta(1) is not idempotent")

    def d(a, l1, l2, r1, r2):
        return _sandwich_elem(alg, delta[a], l1, l2, r1, r2)

    def E(l1, l2, r1, r2):
        return _sandwich_elem(alg, E_elem, l1, l2, r1, r2)

    orc = (lambda a: dict(oracle[a])) if oracle else None
    return WMBInstance(name, alg, d, lambda a: counit[a], E, True,
                       {"multiplier_bialgebra": al.clean(E_elem) == {(u, v): c * e for u, c in unit.items()
                                                                    for v, e in unit.items()}},
                       None, orc, {"construction": "unital weak bialgebra", "E": E_elem})


def span_as_unital(p: CategoryPresentation, name: Optional[str] = None) -> WMBInstance:
    """The span data of a finite category fed through the unital constructor."""
    basis = list(p.arrows)
    mult = {(a, b): {p.compose[a, b]: 1} for a in basis for b in basis if p.composable(a, b)}
    delta = {a: {(a, a): 1} for a in basis}
    unit = {p.identity[o]: 1 for o in p.objects}
    oracle = {a: {p.inverse[a]: 1} for a in basis} if p.groupoid else None
    return from_unital_weak_bialgebra(name or f"{p.name}/unital", basis, mult, delta,
                                      {a: 1 for a in basis}, unit, oracle)


# ---------------------------------------------------------------- direct sums

def _sum_parts(get, comps_of):
    def delta(a, l1, l2, r1, r2):
        j, x = a
        args = (l1, l2, r1, r2)
        if any(t is not None and t[0] != j for t in args):
            return {}
        inner = get(j).d_basis(x, *[None if t is None else t[1] for t in args])
        return {((j, p), (j, q)): c for (p, q), c in inner.items()}

    def E(l1, l2, r1, r2):
        args = (l1, l2, r1, r2)
        comps = {t[0] for t in args if t is not None}
        if len(comps) != 1:
            return {}
        j = comps.pop()
        inner = get(j).e_basis(*[None if t is None else t[1] for t in args])
        return {((j, p), (j, q)): c for (p, q), c in inner.items()}

    def prod(a, b):
        if a[0] != b[0]:
            return {}
        return {(a[0], k): c for k, c in get(a[0]).alg.mul_basis(a[1], b[1]).items()}

    def factor(a):
        return [(c, (a[0], x), (a[0], y)) for c, x, y in get(a[0]).alg.factor(a[1])]

    return delta, E, prod, factor


def direct_sum(summands: list, name: Optional[str] = None) -> WMBInstance:
    if not summands:
        raise ValueError("direct_sum needs at least one summand")
    if not all(s.dense for s in summands):
        raise al.UnsupportedBackend("finite direct sums take dense summands")
    name = name or "+".join(s.name for s in summands)
    delta, E, prod, factor = _sum_parts(lambda j: summands[j], None)
    basis = [(j, b) for j, s in enumerate(summands) for b in s.basis]
    unit = None
    if all(s.alg.unit is not None for s in summands):
        unit = {(j, k): c for j, s in enumerate(summands) for k, c in s.alg.unit.items()}
    alg = al.NonUnitalAlgebra(name, prod, basis, factor=factor, unit=unit)
    oracle = None
    if all(s.s_oracle is not None for s in summands):
        def oracle(a):
            return {(a[0], k): c for k, c in summands[a[0]].s_oracle(a[1]).items()}
    return WMBInstance(name, alg, delta, lambda a: summands[a[0]].counit(a[1]), E,
                       all(s.regular for s in summands),
                       {"multiplier_bialgebra": len(summands) == 1 and
                        summands[0].declared.get("multiplier_bialgebra", False)},
                       None, oracle, {"construction": "direct sum", "summands": [s.name for s in summands]})


def lazy_direct_sum(summand: WMBInstance, name: Optional[str] = None, spread: int = 3) -> WMBInstance:
    """Countably many copies of one finite instance, indexed by 0, 1, 2, ..."""
    name = name or f"SUM_N({summand.name})"
    delta, E, prod, factor = _sum_parts(lambda j: summand, None)

    def sample(rng):
        return (rng.randrange(spread), rng.choice(summand.basis))

    alg = al.NonUnitalAlgebra(name, prod, None, backend=al.LAZY, sample=sample, factor=factor,
                              declared={"idempotent": True, "nondegenerate": True})
    oracle = antipode = None
    if summand.s_oracle is not None:
        def oracle(a):
            return {(a[0], k): c for k, c in summand.s_oracle(a[1]).items()}

        def antipode(a):
            return al.embed(alg, oracle(a), f"S({al.fmt_key(a)})")
    return WMBInstance(name, alg, delta, lambda a: summand.counit(a[1]), E, summand.regular,
                       {"left_full": True, "right_full": True, "E_in_A": False},
                       antipode, oracle, {"construction": "lazy direct sum", "summand": summand.name})


def e_multiplier(w: WMBInstance) -> al.Multiplier:
    """E as a multiplier of the tensor square algebra.

    On lazy sums E has infinite support, so it is known not to lie in A(x)A."""
    t2 = al.tensor(w.alg, w.alg)
    elem: Any = "unknown"
    if not w.dense:
        elem = None if w.declared.get("E_in_A") is False else "unknown"
    return al.Multiplier(t2, lambda k: w.e_basis(None, None, k[0], k[1]),
                         lambda k: w.e_basis(k[0], k[1], None, None), "E", element=elem)


# ---------------------------------------------------------------- catalog

PAIR2_TEXT = """\
category PAIR2
# pair groupoid on two objects; (i,j) goes from j to i
objects 1 2
arrow (1,1) : 1 -> 1
arrow (1,2) : 2 -> 1
arrow (2,1) : 1 -> 2
arrow (2,2) : 2 -> 2
identity 1 = (1,1)
identity 2 = (2,2)
""" + "".join(f"compose ({i},{j}) * ({j},{k}) = ({i},{k})\n"
              for i in (1, 2) for j in (1, 2) for k in (1, 2)) + \
    "".join(f"inverse ({i},{j}) = ({j},{i})\n" for i in (1, 2) for j in (1, 2))

IDEM2_TEXT = """\
category IDEM2
objects o
arrow e : o -> o
arrow x : o -> o
identity o = e
compose e * e = e
compose e * x = x
compose x * e = x
compose x * x = x
"""

C2_TEXT = """\
category C2
objects o
arrow e : o -> o
arrow g : o -> o
identity o = e
compose e * e = e
compose e * g = g
compose g * e = g
compose g * g = e
inverse e = e
inverse g = g
"""

CYC3MON_TEXT = """\
category CYC3MON
# the monoid {e, x, x2} with x^3 = x
objects o
arrow e : o -> o
arrow x : o -> o
arrow x2 : o -> o
identity o = e
compose e * e = e
compose e * x = x
compose e * x2 = x2
compose x * e = x
compose x2 * e = x2
compose x * x = x2
compose x * x2 = x
compose x2 * x = x
compose x2 * x2 = x2
"""

C2C2_TEXT = """\
category C2C2
# two objects, each with automorphism group Z/2
objects p q
arrow ep : p -> p
arrow gp : p -> p
arrow eq : q -> q
arrow gq : q -> q
identity p = ep
identity q = eq
compose ep * ep = ep
compose ep * gp = gp
compose gp * ep = gp
compose gp * gp = ep
compose eq * eq = eq
compose eq * gq = gq
compose gq * eq = gq
compose gq * gq = eq
inverse ep = ep
inverse gp = gp
inverse eq = eq
inverse gq = gq
"""

PRESENTATIONS = {"PAIR2": PAIR2_TEXT, "IDEM2": IDEM2_TEXT, "C2": C2_TEXT, "CYC3MON": CYC3MON_TEXT,
                 "C2C2": C2C2_TEXT}


def presentation(name: str) -> CategoryPresentation:
    return parse_presentation(PRESENTATIONS[name])


@lru_cache(maxsize=None)
def catalog(name: str) -> WMBInstance:
    if name in ("PAIR2", "IDEM2", "C2", "CYC3MON"):
        return span_wmb(presentation(name))
    if name == "FPAIR2":
        return functional_wmb(presentation("PAIR2"), "FPAIR2")
    if name == "ZFUN":
        return lazy_functional(integers_spec(), "ZFUN")
    if name == "SUMC2PAIR2":
        return direct_sum([catalog("C2"), catalog("PAIR2")], "SUMC2PAIR2")
    if name == "SUMINF_C2":
        return lazy_direct_sum(catalog("C2"), "SUMINF_C2")
    raise KeyError(f"unknown catalog instance {name!r}; known: {', '.join(CATALOG_NAMES)}")


def build(p: CategoryPresentation, construction: str = "span") -> WMBInstance:
    if construction == "span":
        return span_wmb(p)
    if construction == "functional":
        return functional_wmb(p)
    raise ValueError(f"unknown construction {construction!r}")


# ---------------------------------------------------------------- corruptions

def corrupt_counit(w: WMBInstance) -> WMBInstance:
    return w.with_(name=w.name + "[eps=0]", counit=lambda a: 0)


def corrupt_E(w: WMBInstance) -> WMBInstance:
    return w.with_(name=w.name + "[E=0]", E=lambda l1, l2, r1, r2: {})
