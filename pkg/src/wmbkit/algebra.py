"""Non-unital algebras, multipliers and tensor products.

Elements are plain dicts ``{basis_index: coefficient}`` with no stored zeros.
Elements of tensor powers use tuples of basis indices as keys.  Coefficients
are ints or Fractions; both are exact.

Two backends share one interface.  ``DENSE`` algebras have a finite basis list
and every check runs over all basis tuples.  ``LAZY`` algebras have an
enumerable basis that is only ever sampled.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Optional

from . import exactlin as xl

DENSE = "dense-finite"
LAZY = "lazy-locally-finite"


class UnsupportedBackend(RuntimeError):
    pass


class DegenerateAlgebra(ValueError):
    pass


class SpanningConditionFailed(ValueError):
    pass


# ---------------------------------------------------------------- elements

def clean(x: dict) -> dict:
    return {k: v for k, v in x.items() if v != 0}


def add_into(acc: dict, x: dict, c=1) -> dict:
    for k, v in x.items():
        nv = acc.get(k, 0) + c * v
        if nv == 0:
            acc.pop(k, None)
        else:
            acc[k] = nv
    return acc


def add(*xs: dict) -> dict:
    acc: dict = {}
    for x in xs:
        add_into(acc, x)
    return acc


def sub(x: dict, y: dict) -> dict:
    return add_into(dict(x), y, -1)


def scale(c, x: dict) -> dict:
    if c == 0:
        return {}
    return {k: c * v for k, v in x.items()}


def lin(f: Callable[[Any], dict], x: dict) -> dict:
    """Extend a basis-level map linearly to the element x."""
    acc: dict = {}
    for k, c in x.items():
        add_into(acc, f(k), c)
    return acc


def basis_elem(k) -> dict:
    return {k: 1}


def _sort_key(k):
    if isinstance(k, bool):
        return (0, int(k))
    if isinstance(k, int):
        return (0, k)
    if isinstance(k, str):
        return (1, k)
    if isinstance(k, tuple):
        return (2, tuple(_sort_key(x) for x in k))
    if k is None:
        return (-1,)
    return (3, repr(k))


def sort_key(k):
    return _sort_key(k)


def sorted_items(x: dict):
    return sorted(x.items(), key=lambda kv: _sort_key(kv[0]))


def fmt_scalar(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def fmt_key(k) -> str:
    if isinstance(k, tuple):
        return "(" + ",".join(fmt_key(x) for x in k) + ")"
    return str(k)


def fmt(x: dict) -> str:
    if not x:
        return "0"
    parts = []
    for k, c in sorted_items(x):
        parts.append(f"{fmt_scalar(c)}*{fmt_key(k)}")
    return " + ".join(parts)


# ---------------------------------------------------------------- algebras

class NonUnitalAlgebra:
    """An associative algebra given by a product rule on basis indices.

    ``factor`` (optional) returns, for a basis index x, a list of
    ``(coeff, a, b)`` with sum coeff*a*b == x; dense algebras derive it by a
    linear solve.  ``sample`` draws a random basis index from an rng.
    """

    def __init__(self, name: str, product: Callable[[Any, Any], dict], basis: Optional[list] = None,
                 backend: str = DENSE, sample: Optional[Callable] = None,
                 factor: Optional[Callable] = None, unit: Optional[dict] = None,
                 declared: Optional[dict] = None):
        self.name = name
        self.backend = backend
        self.basis = list(basis) if basis is not None else None
        if backend == DENSE and self.basis is None:
            raise ValueError("dense algebras need a basis list")
        self._product = lru_cache(maxsize=None)(product)
        self._sample = sample
        self._factor = factor
        self.unit = unit
        self.declared = dict(declared or {})
        if self.basis is not None:
            self.index = {b: i for i, b in enumerate(self.basis)}
        self._factor_cache: dict = {}

    @property
    def dense(self) -> bool:
        return self.backend == DENSE

    @property
    def dim(self) -> int:
        if not self.dense:
            raise UnsupportedBackend("lazy algebra has no finite dimension")
        return len(self.basis)

    def mul_basis(self, a, b) -> dict:
        return self._product(a, b)

    def multiply(self, x: dict, y: dict) -> dict:
        acc: dict = {}
        for a, c in x.items():
            for b, d in y.items():
                add_into(acc, self._product(a, b), c * d)
        return acc

    def sample(self, rng):
        if self._sample is not None:
            return self._sample(rng)
        return rng.choice(self.basis)

    def to_vec(self, x: dict) -> list:
        v = [Fraction(0)] * len(self.basis)
        for k, c in x.items():
            v[self.index[k]] = Fraction(c)
        return v

    def from_vec(self, v) -> dict:
        return {self.basis[i]: c for i, c in enumerate(v) if c != 0}

    def factor(self, x) -> list:
        """Write basis index x as a combination of products of basis indices."""
        if x in self._factor_cache:
            return self._factor_cache[x]
        if self._factor is not None:
            res = self._factor(x)
        elif self.dense:
            res = self._dense_factor(x)
        else:
            raise UnsupportedBackend("lazy algebra without a factorisation rule")
        self._factor_cache[x] = res
        return res

    def _dense_factor(self, x) -> list:
        pairs = [(a, b) for a in self.basis for b in self.basis]
        cols = [self.to_vec(self.mul_basis(a, b)) for a, b in pairs]
        sol = xl.solve(xl.transpose(cols, self.dim), self.to_vec({x: 1}))
        if sol is None:
            raise DegenerateAlgebra(f"{fmt_key(x)} is not a sum of products")
        return [(c, a, b) for c, (a, b) in zip(sol[0], pairs) if c != 0]

    def __repr__(self):
        return f"NonUnitalAlgebra({self.name!r}, {self.backend})"


def opposite(alg: NonUnitalAlgebra) -> NonUnitalAlgebra:
    return NonUnitalAlgebra(alg.name + "^op", lambda a, b: alg.mul_basis(b, a), alg.basis,
                            alg.backend, alg._sample, None, alg.unit, alg.declared)


@dataclass
class AlgebraReport:
    associative: bool
    idempotent: bool
    nondegenerate: bool
    mode: str
    witnesses: dict = field(default_factory=dict)


def check_algebra(alg: NonUnitalAlgebra, sampler=None) -> AlgebraReport:
    """Associativity, idempotency and non-degeneracy, with witnesses."""
    wit: dict = {}
    if alg.dense:
        triples = itertools.product(alg.basis, repeat=3)
        mode = "exhaustive"
    else:
        rng = sampler.rng("algebra") if sampler else None
        if rng is None:
            raise ValueError("lazy algebras need a sampler")
        triples = [tuple(alg.sample(rng) for _ in range(3)) for _ in range(sampler.n)]
        mode = f"sampled(n={sampler.n}, seed={sampler.seed})"
    assoc = True
    for a, b, c in triples:
        l = alg.multiply(alg.mul_basis(a, b), {c: 1})
        r = alg.multiply({a: 1}, alg.mul_basis(b, c))
        if l != r:
            assoc = False
            wit["associative"] = (a, b, c)
            break
    if alg.dense:
        prods = [alg.to_vec(alg.mul_basis(a, b)) for a in alg.basis for b in alg.basis]
        im = xl.span(prods, alg.dim)
        idem = im.is_full()
        if not idem:
            missing = next(i for i in range(alg.dim) if not im.contains(xl.identity(alg.dim)[i]))
            wit["idempotent"] = alg.basis[missing]
        nondeg = True
        for side in ("left", "right"):
            # x with x*b = 0 for all b (left) or b*x = 0 for all b (right)
            rows = []
            for b in alg.basis:
                cols = []
                for a in alg.basis:
                    p = alg.mul_basis(a, b) if side == "left" else alg.mul_basis(b, a)
                    cols.append(alg.to_vec(p))
                rows.extend(xl.transpose(cols, alg.dim))
            ker = xl.kernel(rows, alg.dim)
            if ker.dim:
                nondeg = False
                wit["nondegenerate"] = (side, alg.from_vec(ker.basis[0]))
        return AlgebraReport(assoc, idem, nondeg, mode, wit)
    # lazy: idempotency and non-degeneracy are declared and spot-checked
    rng = sampler.rng("algebra-idem")
    idem = bool(alg.declared.get("idempotent", True))
    nondeg = bool(alg.declared.get("nondegenerate", True))
    for _ in range(min(sampler.n, 50)):
        x = alg.sample(rng)
        f = alg.factor(x)
        rebuilt = {}
        for c, a, b in f:
            add_into(rebuilt, alg.mul_basis(a, b), c)
        if rebuilt != {x: 1}:
            idem = False
            wit["idempotent"] = x
            break
    return AlgebraReport(assoc, idem, nondeg, mode + " (declared, verified on sample)", wit)


# ---------------------------------------------------------------- multipliers

class Multiplier:
    """A pair (lam, rho) of maps on basis indices with a*lam(b) == rho(a)*b.

    ``m.left(x)`` is m*x (= lam(x)) and ``m.right(x)`` is x*m (= rho(x)).
    """

    __slots__ = ("alg", "_lam", "_rho", "label", "element")

    def __init__(self, alg: NonUnitalAlgebra, lam: Callable, rho: Callable, label: str = "",
                 element: Any = "unknown"):
        self.alg = alg
        self._lam = lam
        self._rho = rho
        self.label = label
        # "unknown": not decided; None: known not to lie in A; dict: the element
        self.element = element

    def lam_basis(self, b) -> dict:
        return self._lam(b)

    def rho_basis(self, b) -> dict:
        return self._rho(b)

    def left(self, x: dict) -> dict:
        return lin(self._lam, x)

    def right(self, x: dict) -> dict:
        return lin(self._rho, x)

    def __mul__(self, other: "Multiplier") -> "Multiplier":
        a, b = self, other
        return Multiplier(self.alg, lambda x: a.left(b.lam_basis(x)),
                          lambda x: b.right(a.rho_basis(x)), f"({a.label})({b.label})")

    def scaled(self, c) -> "Multiplier":
        return Multiplier(self.alg, lambda x: scale(c, self._lam(x)), lambda x: scale(c, self._rho(x)),
                          f"{c}*{self.label}")

    def vector(self) -> list:
        """Both action matrices flattened; dense backend only."""
        alg = self.alg
        if not alg.dense:
            raise UnsupportedBackend("multiplier vectors need a finite basis")
        v = []
        for b in alg.basis:
            v.extend(alg.to_vec(self._lam(b)))
        for b in alg.basis:
            v.extend(alg.to_vec(self._rho(b)))
        return v


def combine(alg: NonUnitalAlgebra, terms: list, label: str = "") -> Multiplier:
    """Linear combination sum c*m of multipliers given as (c, m) pairs."""
    terms = [(c, m) for c, m in terms if c != 0]
    return Multiplier(alg, lambda x: add(*[scale(c, m.lam_basis(x)) for c, m in terms]),
                      lambda x: add(*[scale(c, m.rho_basis(x)) for c, m in terms]), label)


def embed(alg: NonUnitalAlgebra, a: dict, label: str = "") -> Multiplier:
    a = dict(a)
    return Multiplier(alg, lambda b: alg.multiply(a, {b: 1}), lambda b: alg.multiply({b: 1}, a),
                      label or fmt(a), element=a)


def unit_multiplier(alg: NonUnitalAlgebra) -> Multiplier:
    elem = alg.unit if alg.unit is not None else ("unknown" if alg.dense else None)
    return Multiplier(alg, lambda b: {b: 1}, lambda b: {b: 1}, "1", element=elem)


def is_compatible(m: Multiplier, pairs: Iterable) -> Optional[tuple]:
    """First (a, b) violating a*lam(b) == rho(a)*b, or None."""
    alg = m.alg
    for a, b in pairs:
        if alg.multiply({a: 1}, m.lam_basis(b)) != alg.multiply(m.rho_basis(a), {b: 1}):
            return (a, b)
    return None


def multipliers_equal(m: Multiplier, n: Multiplier, test: Iterable) -> Optional[Any]:
    for b in test:
        if m.lam_basis(b) != n.lam_basis(b) or m.rho_basis(b) != n.rho_basis(b):
            return b
    return None


@dataclass
class MultiplierAlgebra:
    alg: NonUnitalAlgebra
    basis: list  # list of Multiplier
    space: xl.Subspace  # span of multiplier vectors
    embedding_injective: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, m: Multiplier):
        return self.space.coordinates(m.vector())


def _matrix_multiplier(alg, lam_m, rho_m, label) -> Multiplier:
    n = alg.dim

    def lam(b):
        j = alg.index[b]
        return alg.from_vec([lam_m[i][j] for i in range(n)])

    def rho(b):
        j = alg.index[b]
        return alg.from_vec([rho_m[i][j] for i in range(n)])

    return Multiplier(alg, lam, rho, label)


def multiplier_algebra(alg: NonUnitalAlgebra) -> MultiplierAlgebra:
    """All pairs of endomorphisms (L, R) with a L(b) = R(a) b, as a basis."""
    if not alg.dense:
        raise UnsupportedBackend("multiplier algebra of a lazy algebra is never enumerated")
    rep = check_algebra(alg)
    if not rep.nondegenerate:
        raise DegenerateAlgebra(f"witness {rep.witnesses.get('nondegenerate')}")
    n = alg.dim
    # unknowns: L[i][j] at i*n+j, R[i][j] at n*n + i*n+j  (column j = image of basis j)
    nun = 2 * n * n
    table = {(x, y): alg.to_vec(alg.mul_basis(x, y)) for x in alg.basis for y in alg.basis}
    rows = []
    for ai, a in enumerate(alg.basis):
        for bj, b in enumerate(alg.basis):
            # a*L(b) - R(a)*b = 0, coordinate k
            for k in range(n):
                row = [Fraction(0)] * nun
                for i, x in enumerate(alg.basis):
                    ca = table[a, x][k]
                    if ca:
                        row[i * n + bj] += ca
                    cb = table[x, b][k]
                    if cb:
                        row[n * n + i * n + ai] -= cb
                if any(row):
                    rows.append(row)
    ker = xl.kernel(rows, nun) if rows else xl.span(xl.identity(nun), nun)
    basis = []
    for t, vec in enumerate(ker.basis):
        lam_m = [[vec[i * n + j] for j in range(n)] for i in range(n)]
        rho_m = [[vec[n * n + i * n + j] for j in range(n)] for i in range(n)]
        basis.append(_matrix_multiplier(alg, lam_m, rho_m, f"m{t}"))
    space = xl.span([m.vector() for m in basis], 2 * n * n)
    emb = xl.span([embed(alg, {a: 1}).vector() for a in alg.basis], 2 * n * n)
    return MultiplierAlgebra(alg, basis, space, emb.dim == n)


def is_in_A(m: Multiplier) -> Optional[dict]:
    """The element of A representing m, or None when m lies outside A."""
    alg = m.alg
    if not alg.dense:
        if isinstance(m.element, dict) or m.element is None:
            return m.element
        raise UnsupportedBackend("membership in A is not decidable on a lazy algebra")
    target = m.vector()
    cols = [embed(alg, {a: 1}).vector() for a in alg.basis]
    sol = xl.solve(xl.transpose(cols, len(target)), target)
    if sol is None:
        return None
    return alg.from_vec(sol[0])


def extend_hom(gamma: Callable[[Any], Multiplier], e: Multiplier, alg_a: NonUnitalAlgebra,
               alg_b: NonUnitalAlgebra) -> Callable[[Multiplier], Multiplier]:
    """Extend a non-degenerate homomorphism A -> M(B) to M(A) -> M(B).

    gamma maps basis indices of A to multipliers on B; e is the idempotent
    that the unit of M(A) is sent to.  Dense backends only.
    """
    if not (alg_a.dense and alg_b.dense):
        raise UnsupportedBackend("extension is computed on finite bases only")
    if multipliers_equal(e * e, e, alg_b.basis) is not None:
        raise xl.NotIdempotent("e*e != e")
    nb = alg_b.dim
    gens_l = [(a, b) for a in alg_a.basis for b in alg_b.basis]
    vec_l = [alg_b.to_vec(gamma(a).lam_basis(b)) for a, b in gens_l]
    vec_r = [alg_b.to_vec(gamma(a).rho_basis(b)) for a, b in gens_l]
    span_l = xl.span(vec_l, nb)
    span_r = xl.span(vec_r, nb)
    e_l = xl.span([alg_b.to_vec(e.lam_basis(b)) for b in alg_b.basis], nb)
    e_r = xl.span([alg_b.to_vec(e.rho_basis(b)) for b in alg_b.basis], nb)
    if not xl.subspace_equal(span_l, e_l):
        raise SpanningConditionFailed("<gamma(a)b> != eB")
    if not xl.subspace_equal(span_r, e_r):
        raise SpanningConditionFailed("<b gamma(a)> != Be")
    mat_l = xl.transpose(vec_l, nb)
    mat_r = xl.transpose(vec_r, nb)
    ker_l = xl.kernel(mat_l, len(gens_l))
    ker_r = xl.kernel(mat_r, len(gens_l))
    dec_l, dec_r = {}, {}
    for b in alg_b.basis:
        sl = xl.solve(mat_l, alg_b.to_vec(e.lam_basis(b)))
        sr = xl.solve(mat_r, alg_b.to_vec(e.rho_basis(b)))
        dec_l[b] = [(c, g) for c, g in zip(sl[0], gens_l) if c]
        dec_r[b] = [(c, g) for c, g in zip(sr[0], gens_l) if c]

    def extend(omega: Multiplier) -> Multiplier:
        # well-definedness: relations among gamma(a)b must be respected
        for kv in ker_l.basis:
            acc: dict = {}
            for c, (a, b) in zip(kv, gens_l):
                if c:
                    add_into(acc, lin(lambda x: gamma(x).lam_basis(b), omega.left({a: 1})), c)
            if acc:
                raise SpanningConditionFailed("extension is not well defined on the left")
        for kv in ker_r.basis:
            acc = {}
            for c, (a, b) in zip(kv, gens_l):
                if c:
                    add_into(acc, lin(lambda x: gamma(x).rho_basis(b), omega.right({a: 1})), c)
            if acc:
                raise SpanningConditionFailed("extension is not well defined on the right")

        def lam(y):
            acc: dict = {}
            for c, (a, b) in dec_l[y]:
                add_into(acc, lin(lambda x: gamma(x).lam_basis(b), omega.left({a: 1})), c)
            return acc

        def rho(y):
            acc: dict = {}
            for c, (a, b) in dec_r[y]:
                add_into(acc, lin(lambda x: gamma(x).rho_basis(b), omega.right({a: 1})), c)
            return acc

        return Multiplier(alg_b, lam, rho, f"ext({omega.label})")

    return extend


# ---------------------------------------------------------------- tensors

def tensor(alg_a: NonUnitalAlgebra, alg_b: NonUnitalAlgebra) -> NonUnitalAlgebra:
    def prod(x, y):
        l = alg_a.mul_basis(x[0], y[0])
        r = alg_b.mul_basis(x[1], y[1])
        return {(p, q): c * d for p, c in l.items() for q, d in r.items()}

    basis = None
    if alg_a.dense and alg_b.dense:
        basis = [(a, b) for a in alg_a.basis for b in alg_b.basis]
        backend = DENSE
    else:
        backend = LAZY

    def sample(rng):
        return (alg_a.sample(rng), alg_b.sample(rng))

    def factor(x):
        fa = alg_a.factor(x[0])
        fb = alg_b.factor(x[1])
        return [(c * d, (a1, b1), (a2, b2)) for c, a1, a2 in fa for d, b1, b2 in fb]

    return NonUnitalAlgebra(f"{alg_a.name}(x){alg_b.name}", prod, basis, backend, sample, factor)


def tw(x: dict) -> dict:
    """Flip of the two legs of an element of A (x) A."""
    return {(k[1], k[0]): c for k, c in x.items()}


def tensor_elem(*xs: dict) -> dict:
    acc = {(): 1}
    for x in xs:
        acc = {k + (j,): c * d for k, c in acc.items() for j, d in x.items()}
    return clean(acc)


def leg_apply(x: dict, leg: int, f: Callable[[Any], dict]) -> dict:
    """Apply a basis-level linear map to one leg of a tensor element."""
    acc: dict = {}
    for k, c in x.items():
        for j, d in f(k[leg]).items():
            nk = k[:leg] + (j,) + k[leg + 1:]
            nv = acc.get(nk, 0) + c * d
            if nv == 0:
                acc.pop(nk, None)
            else:
                acc[nk] = nv
    return acc


def leg_contract(x: dict, leg: int, f: Callable[[Any], Any]) -> dict:
    """Apply a functional to one leg, dropping it."""
    acc: dict = {}
    for k, c in x.items():
        s = f(k[leg])
        if s:
            nk = k[:leg] + k[leg + 1:]
            if len(nk) == 1:
                nk = nk[0]
            nv = acc.get(nk, 0) + c * s
            if nv == 0:
                acc.pop(nk, None)
            else:
                acc[nk] = nv
    return acc


def leg_expand(x: dict, leg: int, f: Callable[[Any], dict]) -> dict:
    """Replace one leg by a two-leg element f(k) (e.g. a T-map)."""
    acc: dict = {}
    for k, c in x.items():
        for j, d in f(k[leg]).items():
            nk = k[:leg] + tuple(j) + k[leg + 1:]
            nv = acc.get(nk, 0) + c * d
            if nv == 0:
                acc.pop(nk, None)
            else:
                acc[nk] = nv
    return acc


def pair_apply(x: dict, legs: tuple, f: Callable[[Any, Any], dict]) -> dict:
    """Apply a bilinear map A(x)A -> A(x)A to two adjacent legs."""
    i, j = legs
    acc: dict = {}
    for k, c in x.items():
        for out, d in f(k[i], k[j]).items():
            nk = k[:i] + tuple(out) + k[j + 1:]
            nv = acc.get(nk, 0) + c * d
            if nv == 0:
                acc.pop(nk, None)
            else:
                acc[nk] = nv
    return acc


def tensor_mul(alg: NonUnitalAlgebra, x: dict, y: dict) -> dict:
    """Factorwise product of two elements of a tensor power of A."""
    acc: dict = {}
    for k, c in x.items():
        for l, d in y.items():
            part = {(): c * d}
            for a, b in zip(k, l):
                p = alg.mul_basis(a, b)
                if not p:
                    part = {}
                    break
                part = {kk + (j,): v * w for kk, v in part.items() for j, w in p.items()}
            add_into(acc, part)
    return acc


def delta_op(delta: Callable) -> Callable:
    """Opposite comultiplication on sandwiches: (l1 l2) D^op(a) (r1 r2)."""
    def op(a, l1=None, l2=None, r1=None, r2=None):
        return tw(delta(a, l2, l1, r2, r1))
    return op


def delta_13(delta: Callable, a, b, c, d) -> dict:
    """D13(a)(b (x) c (x) d) = (id (x) tw)(D(a)(b (x) d) (x) c)."""
    inner = delta(a, None, None, b, d)
    return {(k[0], c, k[1]): v for k, v in inner.items()}
