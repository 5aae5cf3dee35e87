"""Buchberger's algorithm for ideals and submodules of free modules.

Internally every element is a *vector*: a dict mapping ``(position,
exponents)`` to a non-zero coefficient.  A polynomial is a vector supported in
position 0.  Orders on vectors are given by key functions on such terms:

``top``
    term over position: compare monomials first, then positions (position 0
    is the largest).
``split``
    used for syzygies: positions below ``split`` dominate everything at or
    above it, TOP inside each block.  A reduced basis for this order contains
    a basis of the syzygy module in its lower block.
"""

from __future__ import annotations

import contextlib
import heapq
from functools import lru_cache
from operator import add, le, sub
from typing import Iterable, Sequence

from .errors import DegreeCapExceeded, PreconditionError, RingMismatchError
from .polycore import Polynomial, PolyRing, TermOrder

__all__ = [
    "FreeElement",
    "GroebnerBasis",
    "Ideal",
    "buchberger",
    "membership",
    "syzygy_basis",
    "elimination",
    "ideal_intersection",
    "colon_ideal",
    "radical_membership",
    "saturation",
    "degree_cap",
    "get_degree_cap",
    "set_degree_cap",
]

DEFAULT_DEGREE_CAP = 60
_settings = {"degree_cap": DEFAULT_DEGREE_CAP}


def get_degree_cap() -> int:
    return _settings["degree_cap"]


def set_degree_cap(cap: int) -> None:
    if cap < 1:
        raise ValueError("degree cap must be positive")
    _settings["degree_cap"] = int(cap)


@contextlib.contextmanager
def degree_cap(cap: int):
    """Temporarily change the total-degree limit of Gröbner computations."""
    old = _settings["degree_cap"]
    set_degree_cap(cap)
    try:
        yield
    finally:
        _settings["degree_cap"] = old


# ---------------------------------------------------------------------------
# vector kernel


@lru_cache(maxsize=128)
def term_key(ring: PolyRing, kind: str = "top", split: int = 0):
    ok = ring.order.key
    cache: dict = {}

    if kind == "top":
        def key(t):
            k = cache.get(t)
            if k is None:
                k = cache[t] = (ok(t[1]), -t[0])
            return k
    elif kind == "pot":
        def key(t):
            k = cache.get(t)
            if k is None:
                k = cache[t] = (-t[0], ok(t[1]))
            return k
    elif kind == "split":
        def key(t):
            k = cache.get(t)
            if k is None:
                k = cache[t] = (t[0] < split, ok(t[1]), -t[0])
            return k
    else:
        raise ValueError(f"unknown module order {kind!r}")
    return key


def poly_to_vec(f: Polynomial, pos: int = 0) -> dict:
    return {(pos, e): c for e, c in f.term_dict.items()}


def vec_to_poly(ring: PolyRing, v: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


def vec_component(ring: PolyRing, v: dict, pos: int) -> Polynomial:
    return Polynomial(ring, {e: c for (p, e), c in v.items() if p == pos})


def vec_degree(v: dict) -> int:
    return max((sum(e) for _, e in v), default=-1)


def scale_vec(v: dict, f: Polynomial, fld) -> dict:
    """``f * v`` for a polynomial ``f``."""
    out: dict = {}
    P = fld.modulus
    for e2, c2 in f.term_dict.items():
        for (pos, e1), c1 in v.items():
            t = (pos, tuple(map(add, e1, e2)))
            out[t] = out.get(t, 0) + c1 * c2
    if P is None:
        return {t: c for t, c in out.items() if c != 0}
    return {t: c % P for t, c in out.items() if c % P}


def add_vecs(a: dict, b: dict, fld, sign: int = 1) -> dict:
    out = dict(a)
    P = fld.modulus
    for t, c in b.items():
        v = out.get(t, 0) + sign * c
        if P is not None:
            v %= P
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def shift_positions(v: dict, offset: int) -> dict:
    return {(p + offset, e): c for (p, e), c in v.items()}


def _sub_scaled(p: dict, g: dict, factor, shift, P) -> None:
    """In place: ``p -= factor * x^shift * g``."""
    trivial = not any(shift)
    for (pos, e), c in g.items():
        t = (pos, e) if trivial else (pos, tuple(map(add, e, shift)))
        v = p.get(t, 0) - factor * c
        if P is not None:
            v %= P
        if v:
            p[t] = v
        else:
            p.pop(t, None)


def _divides(a, b) -> bool:
    return all(map(le, a, b))


def _reduce(vec: dict, G: list, by_pos: dict, key, fld, full: bool = True) -> dict:
    """Normal form of ``vec`` w.r.t. monic basis entries ``G[k] = (lt, vec)``."""
    P = fld.modulus
    p = dict(vec)
    rem: dict = {}
    while p:
        t = max(p, key=key)
        c = p[t]
        pos, e = t
        for k in by_pos.get(pos, ()):
            lt, g = G[k]
            if _divides(lt[1], e):
                _sub_scaled(p, g, c, tuple(map(sub, e, lt[1])), P)
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[t] = p.pop(t)
    return rem


def _monic(v: dict, key, fld):
    lt = max(v, key=key)
    lc = v[lt]
    if lc == 1:
        return lt, v
    inv = fld.inv(lc)
    P = fld.modulus
    if P is None:
        return lt, {t: c * inv for t, c in v.items()}
    return lt, {t: c * inv % P for t, c in v.items()}


def _index(G: list) -> dict:
    by_pos: dict = {}
    for k, (lt, _) in enumerate(G):
        by_pos.setdefault(lt[0], []).append(k)
    return by_pos


def reduce_vector(vec: dict, basis: Sequence[dict], key, fld) -> dict:
    """Full normal form of ``vec`` against ``basis`` (divisors in list order)."""
    G = [_monic(g, key, fld) for g in basis if g]
    return _reduce(vec, G, _index(G), key, fld)


def groebner_vectors(vecs: Iterable[dict], key, fld, product_criterion: bool = False) -> list:
    """Reduced Gröbner basis (monic, sorted by decreasing leading term).

    Pairs are processed by the normal strategy (smallest lcm first) and
    discarded by Buchberger's chain criterion; the coprime-leading-term
    criterion is only valid for ideals and is enabled by the caller.
    """
    cap = _settings["degree_cap"]
    G: list = []
    by_pos: dict = {}
    pairs: list = []
    pending: set = set()

    def insert(h):
        lt, h = _monic(h, key, fld)
        idx = len(G)
        G.append((lt, h))
        pos, e = lt
        for i in by_pos.get(pos, ()):
            lcm = (pos, tuple(map(max, G[i][0][1], e)))
            heapq.heappush(pairs, (key(lcm), i, idx, lcm))
            pending.add((i, idx))
        by_pos.setdefault(pos, []).append(idx)

    for v in vecs:
        if not v:
            continue
        if vec_degree(v) > cap:
            raise DegreeCapExceeded(vec_degree(v), cap)
        h = _reduce(v, G, by_pos, key, fld)
        if h:
            insert(h)

    P = fld.modulus
    while pairs:
        _, i, j, lcm = heapq.heappop(pairs)
        pending.discard((i, j))
        (pos, ei), gi = G[i]
        ej, gj = G[j][0][1], G[j][1]
        L = lcm[1]
        if product_criterion and all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        skip = False
        for k in by_pos[pos]:
            if k == i or k == j:
                continue
            if _divides(G[k][0][1], L):
                a = (i, k) if i < k else (k, i)
                b = (j, k) if j < k else (k, j)
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        d = sum(L)
        if d > cap:
            raise DegreeCapExceeded(d, cap)
        s: dict = {}
        _sub_scaled(s, gi, P - 1 if P else -1, tuple(map(sub, L, ei)), P)
        _sub_scaled(s, gj, 1, tuple(map(sub, L, ej)), P)
        h = _reduce(s, G, by_pos, key, fld)
        if h:
            insert(h)

    # minimalize: drop elements whose leading term is divisible by another's
    keep = []
    for k, (lt, g) in enumerate(G):
        redundant = False
        for m, (lt2, _) in enumerate(G):
            if m == k or lt2[0] != lt[0]:
                continue
            if _divides(lt2[1], lt[1]) and (lt2[1] != lt[1] or m < k):
                redundant = True
                break
        if not redundant:
            keep.append((lt, g))
    # inter-reduce tails
    out = []
    for k, (lt, g) in enumerate(keep):
        others = keep[:k] + keep[k + 1:]
        r = _reduce(g, others, _index(others), key, fld)
        out.append(_monic(r, key, fld))
    out.sort(key=lambda item: key(item[0]), reverse=True)
    return [g for _, g in out]


def syzygy_vectors(ring: PolyRing, rank: int, vecs: Sequence[dict]) -> list:
    """Generators (a reduced TOP Gröbner basis) of the syzygies of ``vecs``.

    A syzygy is ``(a_1..a_s)`` with ``sum a_i * vecs[i] == 0`` in ``R^rank``.
    """
    zero = (0,) * ring.ngens
    fld = ring.field
    aug = []
    for i, v in enumerate(vecs):
        a = dict(v)
        a[(rank + i, zero)] = fld.one
        aug.append(a)
    key = term_key(ring, "split", rank)
    G = groebner_vectors(aug, key, fld)
    return [shift_positions(g, -rank) for g in G if max(g, key=key)[0] >= rank]


# ---------------------------------------------------------------------------
# public element types


class FreeElement:
    """An element of the free module ``R^rank``."""

    __slots__ = ("ring", "rank", "vec")

    def __init__(self, ring: PolyRing, rank: int, vec: dict):
        self.ring = ring
        self.rank = rank
        self.vec = vec

    @classmethod
    def from_components(cls, ring: PolyRing, components: Sequence) -> "FreeElement":
        vec: dict = {}
        for i, c in enumerate(components):
            vec.update(poly_to_vec(ring(c), i))
        return cls(ring, len(components), vec)

    @classmethod
    def basis(cls, ring: PolyRing, rank: int, i: int) -> "FreeElement":
        return cls(ring, rank, {(i, (0,) * ring.ngens): ring.field.one})

    @property
    def components(self) -> tuple:
        return tuple(vec_component(self.ring, self.vec, i) for i in range(self.rank))

    def is_zero(self) -> bool:
        return not self.vec

    def degree(self) -> int:
        return vec_degree(self.vec)

    def _check(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        if other.ring != self.ring or other.rank != self.rank:
            raise RingMismatchError("free elements in different ambient modules")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FreeElement(self.ring, self.rank, add_vecs(self.vec, other.vec, self.ring.field))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FreeElement(self.ring, self.rank, add_vecs(self.vec, other.vec, self.ring.field, -1))

    def __neg__(self):
        return self.scale(self.ring.constant(-1))

    def scale(self, f) -> "FreeElement":
        return FreeElement(self.ring, self.rank, scale_vec(self.vec, self.ring(f), self.ring.field))

    def __rmul__(self, f):
        if isinstance(f, FreeElement):
            return NotImplemented
        return self.scale(f)

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.ring == other.ring and self.rank == other.rank and self.vec == other.vec

    def __hash__(self):
        return hash((self.ring, self.rank, frozenset(self.vec.items())))

    def __str__(self):
        if self.rank == 1:
            return str(self.components[0])
        return "[" + ", ".join(str(c) for c in self.components) + "]"

    def __repr__(self):
        return f"FreeElement({self})"


class GroebnerBasis:
    """A reduced Gröbner basis of an ideal (``rank is None``) or a submodule."""

    def __init__(self, ring: PolyRing, vectors: list, rank: int | None = None, kind: str = "top"):
        self.ring = ring
        self.rank = rank
        self.kind = kind
        self.vectors = vectors
        self.key = term_key(ring, kind)
        self._G = [_monic(v, self.key, ring.field) for v in vectors]
        self._by_pos = _index(self._G)

    @property
    def ambient(self):
        return "ideal" if self.rank is None else self.rank

    @property
    def order(self) -> TermOrder:
        return self.ring.order

    @property
    def elements(self) -> list:
        if self.rank is None:
            return [vec_to_poly(self.ring, v) for v in self.vectors]
        return [FreeElement(self.ring, self.rank, v) for v in self.vectors]

    def __len__(self):
        return len(self.vectors)

    def leading_terms(self) -> list:
        """(position, exponents) of each element, in basis order."""
        return [lt for lt, _ in self._G]

    def reduce_vec(self, v: dict) -> dict:
        return _reduce(v, self._G, self._by_pos, self.key, self.ring.field)

    def _as_vec(self, x) -> dict:
        if isinstance(x, Polynomial):
            if self.rank not in (None, 1):
                raise RingMismatchError("polynomial tested against a submodule of rank > 1")
            if x.ring != self.ring:
                raise RingMismatchError("element over a different ring")
            return poly_to_vec(x)
        if isinstance(x, FreeElement):
            if x.ring != self.ring or (self.rank is not None and x.rank != self.rank):
                raise RingMismatchError("element in a different ambient module")
            if self.rank is None and x.rank != 1:
                raise RingMismatchError("free element tested against an ideal")
            return x.vec
        return poly_to_vec(self.ring(x))

    def reduce(self, x):
        r = self.reduce_vec(self._as_vec(x))
        if isinstance(x, FreeElement):
            return FreeElement(self.ring, x.rank, r)
        return vec_to_poly(self.ring, r)

    def contains_vec(self, v: dict) -> bool:
        return not _reduce(v, self._G, self._by_pos, self.key, self.ring.field, full=False)

    def contains(self, x) -> bool:
        return self.contains_vec(self._as_vec(x))

    __contains__ = contains

    def is_unit(self) -> bool:
        zero = (0,) * self.ring.ngens
        return any(lt[1] == zero for lt, _ in self._G)

    def spair_residues(self) -> list:
        """Normal forms of all S-vectors; empty list entries are zero."""
        out = []
        G = self._G
        P = self.ring.field.modulus
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                (pi, ei), gi = G[i]
                (pj, ej), gj = G[j]
                if pi != pj:
                    continue
                L = tuple(map(max, ei, ej))
                s: dict = {}
                _sub_scaled(s, gi, P - 1 if P else -1, tuple(map(sub, L, ei)), P)
                _sub_scaled(s, gj, 1, tuple(map(sub, L, ej)), P)
                out.append(self.reduce_vec(s))
        return out

    def __repr__(self):
        return f"GroebnerBasis({[str(e) for e in self.elements]})"


class Ideal:
    """An ideal of a polynomial ring given by generators.

    The Gröbner basis is computed on first use and cached.  Equality is
    equality of ideals (reduced bases are canonical).
    """

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        self.ring = ring
        self.generators = tuple(g for g in (ring(x) for x in generators) if not g.is_zero())
        self._gb = None

    @property
    def gens(self) -> tuple:
        return self.generators

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            vecs = groebner_vectors(
                [poly_to_vec(g) for g in self.generators],
                term_key(self.ring, "top"),
                self.ring.field,
                product_criterion=True,
            )
            self._gb = GroebnerBasis(self.ring, vecs)
        return self._gb

    def contains(self, f) -> bool:
        f = self.ring(f)
        if self.ring != f.ring:
            raise RingMismatchError("polynomial over a different ring")
        return self.gb().contains(f)

    __contains__ = contains

    def reduce(self, f) -> Polynomial:
        return self.gb().reduce(self.ring(f))

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def is_monomial(self) -> bool:
        return all(len(v) == 1 for v in self.gb().vectors)

    def leading_monomials(self) -> list:
        return [lt[1] for lt in self.gb().leading_terms()]

    def issubset(self, other: "Ideal") -> bool:
        if self.ring != other.ring:
            raise RingMismatchError("ideals over different rings")
        return all(other.contains(g) for g in self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingMismatchError("ideals over different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingMismatchError("ideals over different rings")
        return Ideal(self.ring, [a * b for a in self.generators for b in other.generators])

    def _canonical(self) -> frozenset:
        return frozenset(frozenset(v.items()) for v in self.gb().vectors)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self._canonical() == other._canonical()

    def __hash__(self):
        return hash((self.ring, self._canonical()))

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    def __repr__(self):
        return f"Ideal({self})"


# ---------------------------------------------------------------------------
# operations


def buchberger(gens: Sequence) -> GroebnerBasis:
    """Reduced Gröbner basis of polynomials or of free-module elements."""
    gens = list(gens)
    if not gens:
        raise PreconditionError("buchberger needs at least one generator to fix the ambient")
    first = gens[0]
    if isinstance(first, Polynomial):
        if not all(isinstance(g, Polynomial) and g.ring == first.ring for g in gens):
            raise RingMismatchError("generators over mixed ambients")
        return Ideal(first.ring, gens).gb()
    if isinstance(first, FreeElement):
        if not all(isinstance(g, FreeElement) and g.ring == first.ring and g.rank == first.rank for g in gens):
            raise RingMismatchError("generators over mixed ambients")
        ring = first.ring
        vecs = groebner_vectors([g.vec for g in gens], term_key(ring, "top"), ring.field,
                                product_criterion=first.rank == 1)
        return GroebnerBasis(ring, vecs, rank=first.rank)
    raise TypeError("generators must be Polynomial or FreeElement")


def membership(f, T) -> bool:
    """Decide ``f in T`` for an ideal or submodule ``T``."""
    return T.contains(f)


def syzygy_basis(G):
    """Syzygies of ``G`` as a submodule of ``R^s``.

    ``G`` is a GroebnerBasis or a plain list of polynomials or free-module
    elements; a list is used as given, duplicates included.
    """
    from .fpmodule import Submodule

    if isinstance(G, GroebnerBasis):
        ring, rank, vecs = G.ring, 1 if G.rank is None else G.rank, G.vectors
    else:
        G = list(G)
        if not G:
            raise PreconditionError("syzygies of an empty list have no ambient")
        ring = G[0].ring
        if isinstance(G[0], FreeElement):
            rank, vecs = G[0].rank, [g.vec for g in G]
        else:
            rank, vecs = 1, [poly_to_vec(g) for g in G]
    syz = syzygy_vectors(ring, rank, vecs)
    return Submodule.from_gb_vectors(ring, len(vecs), syz)


def _extension(ring: PolyRing, k: int = 1, order: TermOrder | None = None):
    """Ring with ``k`` fresh variables in front and the map of old indices."""
    names = []
    probe = ring
    for _ in range(k):
        name = probe.fresh_name("t")
        names.append(name)
        probe = probe.extend([name])
    ext = ring.extend(names, front=True, order=order or TermOrder("elim", k))
    return ext, [i + k for i in range(ring.ngens)]


def _eliminate_front(ext: PolyRing, polys: Sequence[Polynomial], k: int) -> list:
    key = term_key(ext, "top")
    G = groebner_vectors([poly_to_vec(p) for p in polys], key, ext.field, product_criterion=True)
    out = []
    for v in G:
        if all(not any(e[:k]) for _, e in v):
            out.append(vec_to_poly(ext, v))
    return out


def _pull_back(ring: PolyRing, ext: PolyRing, polys: Sequence[Polynomial], k: int) -> list:
    out = []
    for p in polys:
        terms = {e[k:]: c for e, c in p.term_dict.items()}
        out.append(Polynomial(ring, terms))
    return out


def elimination(I: Ideal, drop: Iterable[str]) -> Ideal:
    """``I ∩ k[remaining variables]``, returned as an ideal of ``I.ring``."""
    ring = I.ring
    drop = [v for v in ring.variables if v in set(drop)]
    unknown = set(drop) - set(ring.variables)
    if unknown:
        raise PreconditionError(f"cannot eliminate unknown variables {sorted(unknown)}")
    if not drop:
        return Ideal(ring, I.gb().elements)
    keep = [v for v in ring.variables if v not in drop]
    k = len(drop)
    ext = PolyRing(tuple(drop) + tuple(keep), ring.field, TermOrder("elim", k))
    index = [ext.variables.index(v) for v in ring.variables]
    polys = [g.embed(ext, index) for g in I.generators]
    survivors = _eliminate_front(ext, polys, k)
    back = [ring.variables.index(v) for v in ext.variables]
    return Ideal(ring, [p.embed(ring, back) for p in survivors])


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1 - t)*J``."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals over different rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    ext, index = _extension(ring)
    t = ext.gens[0]
    polys = [t * g.embed(ext, index) for g in I.generators]
    polys += [(1 - t) * g.embed(ext, index) for g in J.generators]
    return Ideal(ring, _pull_back(ring, ext, _eliminate_front(ext, polys, 1), 1))


def colon_ideal(I: Ideal, f: Polynomial) -> Ideal:
    """``(I : f) = {a : a*f in I}``, read off the syzygies of ``f, I``."""
    f = I.ring(f)
    if f.is_zero():
        raise PreconditionError("colon by the zero polynomial")
    ring = I.ring
    vecs = [poly_to_vec(f)] + [poly_to_vec(g) for g in I.generators]
    syz = syzygy_vectors(ring, 1, vecs)
    return Ideal(ring, [vec_component(ring, s, 0) for s in syz])


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """``f in sqrt(I)``, decided by ``1 in I + <t*f - 1>`` in ``R[t]``."""
    f = I.ring(f)
    if f.is_zero():
        return True
    ring = I.ring
    ext, index = _extension(ring, order=ring.order)
    t = ext.gens[0]
    polys = [g.embed(ext, index) for g in I.generators] + [t * f.embed(ext, index) - 1]
    return Ideal(ext, polys).is_unit()


def saturation(I: Ideal, f: Polynomial) -> Ideal:
    """``(I : f^∞)`` by eliminating ``t`` from ``I + <t*f - 1>``."""
    f = I.ring(f)
    if f.is_zero():
        raise PreconditionError("saturation by the zero polynomial")
    ring = I.ring
    ext, index = _extension(ring)
    t = ext.gens[0]
    polys = [g.embed(ext, index) for g in I.generators] + [t * f.embed(ext, index) - 1]
    return Ideal(ring, _pull_back(ring, ext, _eliminate_front(ext, polys, 1), 1))
