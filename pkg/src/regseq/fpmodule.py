"""Finitely presented modules ``M = R^m / N`` and homological tools.

Kernels, homology and Ext modules are re-presented as :class:`FPModule`
objects (generators plus a fresh relation module) by :func:`subquotient`.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import GradingError, PreconditionError, RingMismatchError
from .groebner import (
    FreeElement,
    GroebnerBasis,
    Ideal,
    groebner_vectors,
    ideal_intersection,
    poly_to_vec,
    scale_vec,
    syzygy_vectors,
    term_key,
    vec_component,
)
from .polycore import Polynomial, PolyRing, TermOrder

__all__ = [
    "Submodule",
    "FPModule",
    "ModuleMap",
    "Complex",
    "present",
    "free_module",
    "is_zero",
    "quotient_by_sequence",
    "colon_submodule",
    "kernel",
    "subquotient",
    "annihilator",
    "free_resolution",
    "ext_module",
    "krull_dimension",
    "hilbert_function",
    "standard_monomial_count",
    "adjoin_variable",
    "direct_power",
]


class Submodule:
    """A submodule of ``R^rank`` given by generators, with a cached basis."""

    def __init__(self, ring: PolyRing, rank: int, generators: Iterable = ()):
        self.ring = ring
        self.rank = rank
        vecs = []
        for g in generators:
            if isinstance(g, FreeElement):
                if g.rank != rank or g.ring != ring:
                    raise RingMismatchError("generator in a different ambient module")
                g = g.vec
            elif isinstance(g, Polynomial):
                if rank != 1:
                    raise RingMismatchError("polynomial generator needs rank 1")
                g = poly_to_vec(g)
            elif isinstance(g, (list, tuple)):
                if len(g) != rank:
                    raise PreconditionError(f"generator of length {len(g)} in rank {rank}")
                g = FreeElement.from_components(ring, g).vec
            if g:
                vecs.append(g)
        self.vectors = vecs
        self._gb = None

    @classmethod
    def from_gb_vectors(cls, ring: PolyRing, rank: int, vecs: list) -> "Submodule":
        sub = cls(ring, rank, vecs)
        sub._gb = GroebnerBasis(ring, vecs, rank=rank)
        return sub

    @property
    def generators(self) -> list:
        return [FreeElement(self.ring, self.rank, v) for v in self.vectors]

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            vecs = groebner_vectors(self.vectors, term_key(self.ring, "top"), self.ring.field,
                                    product_criterion=self.rank == 1)
            self._gb = GroebnerBasis(self.ring, vecs, rank=self.rank)
        return self._gb

    def contains_vec(self, v: dict) -> bool:
        if not v:
            return True
        if not self.vectors:
            return False
        return self.gb().contains_vec(v)

    def contains(self, x) -> bool:
        if isinstance(x, FreeElement):
            if x.ring != self.ring or x.rank != self.rank:
                raise RingMismatchError("element in a different ambient module")
            return self.contains_vec(x.vec)
        if isinstance(x, Polynomial) and self.rank == 1:
            return self.contains_vec(poly_to_vec(x))
        raise TypeError("expected a FreeElement")

    __contains__ = contains

    def issubset(self, other: "Submodule") -> bool:
        return all(other.contains_vec(v) for v in self.vectors)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return (self.ring == other.ring and self.rank == other.rank
                and self.issubset(other) and other.issubset(self))

    __hash__ = None

    def is_monomial(self) -> bool:
        return all(len(v) == 1 for v in self.gb().vectors)

    def __repr__(self):
        return f"Submodule(rank={self.rank}, {[str(g) for g in self.generators]})"


class FPModule:
    """The cokernel ``R^rank / relations``, optionally graded by ``shifts``."""

    def __init__(self, ring: PolyRing, rank: int, relations: Submodule | None = None, shifts=None):
        self.ring = ring
        self.rank = rank
        self.relations = relations if relations is not None else Submodule(ring, rank)
        if self.relations.rank != rank:
            raise PreconditionError("relations live in a free module of another rank")
        self.shifts = None if shifts is None else tuple(int(s) for s in shifts)
        if self.shifts is not None:
            if len(self.shifts) != rank:
                raise GradingError("one degree shift per generator is required")
            for v in self.relations.vectors:
                if _vec_weighted_degree(v, self.shifts) is None:
                    raise GradingError(
                        f"relation {FreeElement(ring, rank, v)} is not homogeneous")

    @property
    def ambient_rank(self) -> int:
        return self.rank

    @property
    def is_graded(self) -> bool:
        return self.shifts is not None

    def relation_vectors(self) -> list:
        return self.relations.vectors

    def basis_vec(self, i: int) -> dict:
        return {(i, (0,) * self.ring.ngens): self.ring.field.one}

    def presentation_matrix(self) -> list:
        """Rows indexed by generators, one column per relation."""
        rels = self.relations.vectors
        return [[vec_component(self.ring, v, i) for v in rels] for i in range(self.rank)]

    def is_free(self) -> bool:
        return not self.relations.vectors

    def is_monomial(self) -> bool:
        return self.relations.is_monomial()

    def to_json(self):
        return [[str(p) for p in row] for row in self.presentation_matrix()]

    @classmethod
    def from_json(cls, ring: PolyRing, rows, shifts=None) -> "FPModule":
        rank = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise PreconditionError("ragged presentation matrix")
        cols = [[ring(rows[i][j]) for i in range(rank)] for j in range(ncols)]
        return present(ring, rank, cols, shifts=shifts)

    def __str__(self):
        if self.is_free():
            return f"R^{self.rank}"
        return f"coker {self.to_json()}"

    def __repr__(self):
        return f"FPModule({self})"


def _vec_weighted_degree(v: dict, shifts) -> int | None:
    degs = {sum(e) + shifts[p] for p, e in v}
    if len(degs) > 1:
        return None
    return degs.pop() if degs else 0


def present(ring: PolyRing, ambient_rank: int, relations: Iterable = (), shifts=None,
            graded: bool = False) -> FPModule:
    """Build ``R^ambient_rank / <relations>``.

    Relations may be :class:`FreeElement` objects, component lists, or (for
    rank one) polynomials.  ``graded=True`` is shorthand for zero shifts.
    """
    if graded and shifts is None:
        shifts = (0,) * ambient_rank
    return FPModule(ring, ambient_rank, Submodule(ring, ambient_rank, relations), shifts)


def free_module(ring: PolyRing, rank: int = 1, graded: bool = True) -> FPModule:
    return present(ring, rank, (), graded=graded)


def is_zero(M: FPModule) -> bool:
    return all(M.relations.contains_vec(M.basis_vec(i)) for i in range(M.rank))


def direct_power(M: FPModule, count: int, shifts=None) -> FPModule:
    """``M^count``; block ``a`` occupies positions ``a*m .. a*m + m - 1``."""
    m = M.rank
    rels = []
    for a in range(count):
        for v in M.relations.vectors:
            rels.append({(p + a * m, e): c for (p, e), c in v.items()})
    if shifts is None and M.shifts is not None:
        shifts = M.shifts * count
    return FPModule(M.ring, m * count, Submodule(M.ring, m * count, rels), shifts)


def quotient_by_sequence(M: FPModule, f: Sequence) -> FPModule:
    """Presentation of ``M / (f_1..f_r) M``."""
    ring = M.ring
    f = [ring(x) for x in f]
    rels = list(M.relations.vectors)
    for fj in f:
        for i in range(M.rank):
            rels.append(poly_to_vec(fj, i))
    shifts = M.shifts
    if shifts is not None and not all(p.is_homogeneous() for p in f):
        shifts = None
    return FPModule(ring, M.rank, Submodule(ring, M.rank, rels), shifts)


def preimage_vectors(ring: PolyRing, rank: int, images: Sequence[dict], target: Submodule) -> list:
    """Generators of ``{a : sum a_j images[j] in target}`` inside ``R^len(images)``."""
    s = len(images)
    den = target.gb().vectors if target.vectors else []
    syz = syzygy_vectors(ring, rank, list(images) + den)
    out = []
    for z in syz:
        a = {t: c for t, c in z.items() if t[0] < s}
        if a:
            out.append(a)
    return out


def colon_submodule(N: Submodule, f: Polynomial) -> Submodule:
    """``{v : f*v in N}``."""
    f = N.ring(f)
    if f.is_zero():
        raise PreconditionError("colon by the zero polynomial")
    if f.is_constant():
        return N
    images = [poly_to_vec(f, i) for i in range(N.rank)]
    return Submodule(N.ring, N.rank, preimage_vectors(N.ring, N.rank, images, N))


def subquotient(ring: PolyRing, rank: int, numerators: Sequence[dict], denominators: Sequence[dict],
                shifts=None):
    """Present ``(<numerators> + D) / D`` with ``D = <denominators>`` in ``R^rank``.

    Returns ``(module, lifts)`` where ``lifts`` are the numerator vectors kept
    as generators (those already in ``D`` are dropped).  ``shifts`` are the
    ambient degree shifts; the result is graded when every kept numerator is
    homogeneous.
    """
    D = Submodule(ring, rank, denominators)
    kept, seen = [], set()
    for v in numerators:
        if not v or D.contains_vec(v):
            continue
        k = frozenset(v.items())
        if k in seen:
            continue
        seen.add(k)
        kept.append(v)
    gen_shifts = None
    if shifts is not None:
        degs = [_vec_weighted_degree(v, shifts) for v in kept]
        if all(d is not None for d in degs):
            gen_shifts = degs
    rels = preimage_vectors(ring, rank, kept, D) if kept else []
    module = FPModule(ring, len(kept), Submodule(ring, len(kept), rels), gen_shifts)
    return module, [FreeElement(ring, rank, v) for v in kept]


def subquotient_is_zero(ring: PolyRing, rank: int, numerators: Sequence[dict], denominators: Sequence[dict]):
    """First numerator outside ``<denominators>``, or ``None`` if the subquotient vanishes."""
    D = Submodule(ring, rank, denominators)
    for v in numerators:
        if v and not D.contains_vec(v):
            return v
    return None


class ModuleMap:
    """A homomorphism given by the images of the source generators."""

    def __init__(self, source: FPModule, target: FPModule, images: Sequence):
        if source.ring != target.ring:
            raise RingMismatchError("map between modules over different rings")
        if len(images) != source.rank:
            raise PreconditionError("one image per source generator is required")
        vecs = []
        for im in images:
            if isinstance(im, FreeElement):
                im = im.vec
            elif isinstance(im, (list, tuple)):
                im = FreeElement.from_components(source.ring, im).vec
            vecs.append(im)
        self.source = source
        self.target = target
        self.images = vecs

    @property
    def ring(self) -> PolyRing:
        return self.source.ring

    @property
    def matrix(self) -> list:
        """``target.rank x source.rank`` matrix of polynomials."""
        return [[vec_component(self.ring, v, i) for v in self.images] for i in range(self.target.rank)]

    def apply_vec(self, v: dict) -> dict:
        fld = self.ring.field
        out: dict = {}
        for (p, e), c in v.items():
            mono = Polynomial(self.ring, {e: c})
            for t, c2 in scale_vec(self.images[p], mono, fld).items():
                s = out.get(t, 0) + c2
                if fld.modulus is not None:
                    s %= fld.modulus
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return out

    def __call__(self, x: FreeElement) -> FreeElement:
        return FreeElement(self.ring, self.target.rank, self.apply_vec(x.vec))

    def is_well_defined(self) -> bool:
        return all(self.target.relations.contains_vec(self.apply_vec(v))
                   for v in self.source.relations.vectors)

    def to_json(self):
        return [[str(p) for p in row] for row in self.matrix]


def kernel(phi: ModuleMap):
    """``ker(phi)`` as an FPModule plus the lifts of its generators to the source ambient."""
    if not phi.is_well_defined():
        raise PreconditionError("map is not well defined on the presentations")
    src = phi.source
    K = preimage_vectors(phi.ring, phi.target.rank, phi.images, phi.target.relations)
    return subquotient(phi.ring, src.rank, K, src.relations.vectors, src.shifts)


class Complex:
    """Maps ``d_1, d_2, ...`` with ``d_i: C_i -> C_{i-1}``."""

    def __init__(self, maps: Sequence[ModuleMap], base: FPModule | None = None):
        self.maps = list(maps)
        if base is None:
            base = self.maps[0].target if self.maps else None
        self.base = base

    @property
    def modules(self) -> list:
        return [self.base] + [d.source for d in self.maps]

    @property
    def ranks(self) -> tuple:
        return tuple(M.rank for M in self.modules)

    def differential(self, i: int) -> ModuleMap:
        return self.maps[i - 1]

    def composites_vanish(self) -> bool:
        """Check ``d_i o d_{i+1} = 0`` generator by generator."""
        for d, d_next in zip(self.maps, self.maps[1:]):
            for v in d_next.images:
                if not d.target.relations.contains_vec(d.apply_vec(v)):
                    return False
        return True

    def to_json(self):
        return {"ranks": list(self.ranks), "differentials": [d.to_json() for d in self.maps]}


# ---------------------------------------------------------------------------
# resolutions and Ext


def free_resolution(M: FPModule, length: int) -> Complex:
    """Free resolution ``F_length -> ... -> F_0 = R^rank`` of ``M`` by iterated syzygies."""
    if length < 0:
        raise PreconditionError("length must be non-negative")
    ring = M.ring
    images = [list(M.relations.gb().vectors) if M.relations.vectors else []]
    prev_rank = M.rank
    for _ in range(1, length):
        cur = images[-1]
        nxt = syzygy_vectors(ring, prev_rank, cur) if cur else []
        prev_rank = len(cur)
        images.append(nxt)
    maps = []
    modules = [FPModule(ring, M.rank)]
    for imgs in images[:length]:
        src = FPModule(ring, len(imgs))
        maps.append(ModuleMap(src, modules[-1], imgs))
        modules.append(src)
    return Complex(maps, base=modules[0])


@lru_cache(maxsize=256)
def _resolution_of_cyclic(ring: PolyRing, gens: tuple, length: int) -> tuple:
    """Images of the differentials of a resolution of ``R/<gens>``."""
    C = free_resolution(present(ring, 1, gens), length)
    return tuple((d.source.rank, tuple(d.images)) for d in C.maps)


def _hom_images(d_images: Sequence[dict], b_src: int, m: int) -> list:
    """Images of the generators of ``M^{b_src}`` under ``Hom(d, M)``.

    ``d_images[c]`` is the image of the ``c``-th basis vector of ``F_{j+1}`` in
    ``F_j = R^{b_src}``; the result lives in ``M^{len(d_images)}``.
    """
    out = [dict() for _ in range(b_src * m)]
    for c, v in enumerate(d_images):
        for (a, e), coef in v.items():
            for k in range(m):
                out[a * m + k][(c * m + k, e)] = coef
    return out


def ext_module(i: int, I: Ideal, M: FPModule) -> FPModule:
    """``Ext^i_R(R/I, M)`` computed from a free resolution of ``R/I``."""
    if i < 0:
        raise PreconditionError("Ext index must be non-negative")
    module, _ = ext_subquotient(i, I, M)
    return module


def ext_parts(i: int, I: Ideal, M: FPModule):
    """Ext as cycles over boundaries: ``(ambient_rank, cycles, boundaries)``.

    The ambient is that of ``Hom(F_i, M) = M^{b_i}`` where ``F`` resolves ``R/I``.
    """
    ring = M.ring
    if I.ring != ring:
        raise RingMismatchError("ideal and module over different rings")
    res = _resolution_of_cyclic(ring, tuple(I.generators), i + 1)
    ranks = [1] + [r for r, _ in res]
    m = M.rank
    b_i = ranks[i]
    out_imgs = _hom_images(res[i][1], b_i, m)
    target = direct_power(M, ranks[i + 1]).relations
    cycles = preimage_vectors(ring, m * ranks[i + 1], out_imgs, target)
    boundaries = list(direct_power(M, b_i).relations.vectors)
    if i > 0:
        boundaries += _hom_images(res[i - 1][1], ranks[i - 1], m)
    return m * b_i, cycles, boundaries


def ext_subquotient(i: int, I: Ideal, M: FPModule):
    """Ext as a presented module plus lifts of its generators to ``M^{b_i}``."""
    rank, cycles, boundaries = ext_parts(i, I, M)
    return subquotient(M.ring, rank, cycles, boundaries)


# ---------------------------------------------------------------------------
# annihilator, dimension, Hilbert function


def annihilator(M: FPModule) -> Ideal:
    """``ann(M)``, the intersection of the colon ideals ``(N : e_i)``."""
    ring = M.ring
    result = None
    for i in range(M.rank):
        e = M.basis_vec(i)
        if M.relations.contains_vec(e):
            continue
        colon = Ideal(ring, [vec_component(ring, z, 0)
                             for z in preimage_vectors(ring, M.rank, [e], M.relations)])
        result = colon if result is None else ideal_intersection(result, colon)
    return result if result is not None else Ideal(ring, [ring.one])


def element_annihilator(M: FPModule, v: dict) -> Ideal:
    """``ann`` of the class of the ambient vector ``v`` in ``M``."""
    ring = M.ring
    return Ideal(ring, [vec_component(ring, z, 0)
                        for z in preimage_vectors(ring, M.rank, [v], M.relations)])


def _monomial_dimension(ngens: int, lead_monomials: Sequence[tuple]) -> int:
    """Largest variable set containing the support of no leading monomial."""
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in lead_monomials]
    if any(not s for s in supports):
        return -1
    for size in range(ngens, -1, -1):
        for S in itertools.combinations(range(ngens), size):
            S = frozenset(S)
            if not any(s <= S for s in supports):
                return size
    return -1


def krull_dimension(M: FPModule) -> int:
    """``dim R/ann(M)``; ``-1`` for the zero module."""
    ann = annihilator(M)
    return _monomial_dimension(M.ring.ngens, ann.leading_monomials())


def initial_dimension(M: FPModule) -> int:
    """Dimension read off the initial module of the relations (no annihilator)."""
    if is_zero(M):
        return -1
    lts = M.relations.gb().leading_terms() if M.relations.vectors else []
    best = -1
    for i in range(M.rank):
        best = max(best, _monomial_dimension(M.ring.ngens, [e for p, e in lts if p == i]))
    return best


def _monomials(n: int, d: int):
    if d < 0:
        return
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def _rank(rows: list, fld) -> int:
    """Rank of sparse rows (dicts column -> coefficient) by Gaussian elimination."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col in pivots:
                prow = pivots[col]
                factor = fld.div(row[col], prow[col])
                for c, v in prow.items():
                    nv = fld.sub(row.get(c, fld.zero), fld.mul(factor, v))
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            else:
                pivots[col] = row
                rank += 1
                break
    return rank


def _require_graded(M: FPModule):
    if not M.is_graded:
        raise GradingError("operation needs a graded module")


def hilbert_function(M: FPModule, d: int) -> int:
    """``dim_k M_d`` by dense linear algebra on monomial multiples of the relations."""
    _require_graded(M)
    ring, n = M.ring, M.ring.ngens
    basis = {}
    for i, s in enumerate(M.shifts):
        for e in _monomials(n, d - s):
            basis[(i, e)] = len(basis)
    rows = []
    for v in M.relations.vectors:
        deg = _vec_weighted_degree(v, M.shifts)
        for mono in _monomials(n, d - deg):
            row = {}
            for (p, e), c in v.items():
                row[basis[(p, tuple(a + b for a, b in zip(e, mono)))]] = c
            rows.append(row)
    return len(basis) - _rank(rows, ring.field)


def standard_monomial_count(M: FPModule, d: int) -> int:
    """``dim_k M_d`` as the number of standard monomials of the relation basis."""
    _require_graded(M)
    n = M.ring.ngens
    lts = M.relations.gb().leading_terms() if M.relations.vectors else []
    count = 0
    for i, s in enumerate(M.shifts):
        leads = [e for p, e in lts if p == i]
        for e in _monomials(n, d - s):
            if not any(all(a <= b for a, b in zip(lm, e)) for lm in leads):
                count += 1
    return count


def adjoin_variable(M: FPModule, name: str | None = None) -> FPModule:
    """Base change to ``R[t]``: same presentation over a ring with one more variable."""
    ring = M.ring
    name = name or ring.fresh_name("t")
    order = ring.order if ring.order.kind != "elim" else TermOrder("elim", ring.order.block)
    new = ring.extend([name], front=False, order=order)
    rels = []
    for v in M.relations.vectors:
        rels.append({(p, e + (0,)): c for (p, e), c in v.items()})
    return FPModule(new, M.rank, Submodule(new, M.rank, rels), M.shifts)


def extend_polynomial(f: Polynomial, ring: PolyRing) -> Polynomial:
    """Image of ``f`` in a ring obtained by appending variables."""
    pad = (0,) * (ring.ngens - f.ring.ngens)
    return Polynomial(ring, {e + pad: c for e, c in f.term_dict.items()})
