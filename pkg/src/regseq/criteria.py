"""Decision procedures for regular sequences and their cross-checks.

Three independent routes decide regularity of ``f_1..f_r`` on ``M``:

* successive colon submodules (strong regularity, element by element),
* vanishing of Koszul homology in positive degrees,
* local depth ``>= r`` at the associated primes of ``M/(f)M``, where local
  depth is the first ``i`` with ``Ext^i(R/p, M)`` supported at ``p``.

:func:`theorem_crosscheck` runs the last two side by side and reports any
disagreement as an inconsistency.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import GradingError, InconsistencyError, PreconditionError, RegseqError
from .fpmodule import (
    FPModule,
    Submodule,
    colon_submodule,
    ext_parts,
    is_zero,
    krull_dimension,
    preimage_vectors,
    quotient_by_sequence,
    annihilator,
)
from .groebner import FreeElement, Ideal, poly_to_vec, radical_membership, vec_component
from .koszul import build_koszul, colex_subsets, homology_witness
from .polycore import Polynomial, PolyRing

__all__ = [
    "PrimeCandidate",
    "PrimeSet",
    "Verdict",
    "Witness",
    "Report",
    "is_strongly_regular",
    "is_regular",
    "depth_ext",
    "local_depth",
    "prime_membership",
    "monomial_ass",
    "theorem_crosscheck",
    "corollary2_check",
    "sop_regular_check",
    "revalidate",
    "format_depth",
]

INFINITY = math.inf


def format_depth(d):
    return "infinity" if d == INFINITY else d


@dataclass(frozen=True)
class PrimeCandidate:
    """An ideal treated as prime.

    Ideals generated by variables are recognised structurally
    (``assertion == "verified-monomial-prime"``); anything else is taken on
    the caller's word.
    """

    ideal: Ideal
    assertion: str

    @classmethod
    def of(cls, ring: PolyRing, generators: Sequence) -> "PrimeCandidate":
        ideal = Ideal(ring, generators)
        return cls(ideal, "verified-monomial-prime" if _is_variable_ideal(ideal) else "user-asserted")

    @classmethod
    def from_variables(cls, ring: PolyRing, indices: Sequence[int]) -> "PrimeCandidate":
        gens = [ring.gens[i] for i in indices]
        return cls(Ideal(ring, gens), "verified-monomial-prime")

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def verified(self) -> bool:
        return self.assertion == "verified-monomial-prime"

    def contains_ideal(self, J: Ideal) -> bool:
        return all(self.ideal.contains(g) for g in J.generators)

    def sort_key(self):
        return (len(self.ideal.generators), str(self))

    def __str__(self):
        if not self.ideal.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.ideal.generators) + ")"


def _is_variable_ideal(I: Ideal) -> bool:
    for v in I.gb().vectors:
        if len(v) != 1:
            return False
        (_, e), = v
        if sum(e) != 1:
            return False
    return not I.is_unit()


@dataclass
class PrimeSet:
    primes: list
    complete: bool

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def names(self) -> list:
        return [str(p) for p in self.primes]


@dataclass
class Witness:
    """Evidence behind a negative verdict.

    ``kind`` is ``"zero-divisor"`` (``element`` is killed by ``f_index`` modulo
    the earlier ones), ``"homology"`` (``element`` is a Koszul cycle that is
    not a boundary in degree ``index``) or ``"prime"`` (local depth too small).
    """

    kind: str
    index: int | None = None
    element: FreeElement | None = None
    prime: PrimeCandidate | None = None
    depth: object = None

    def to_json(self):
        out = {"kind": self.kind}
        if self.index is not None:
            out["index"] = self.index
        if self.element is not None:
            out["element"] = str(self.element)
        if self.prime is not None:
            out["prime"] = str(self.prime)
        if self.depth is not None:
            out["depth"] = format_depth(self.depth)
        return out


@dataclass
class Verdict:
    holds: bool
    criterion: str
    witness: Witness | None = None

    def __bool__(self):
        return self.holds

    def to_json(self):
        out = {"holds": self.holds, "criterion": self.criterion}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


@dataclass
class Report:
    """Result of a composite check.

    ``status`` is ``"ok"``, ``"negative"`` (a verdict came out false or a
    hypothesis failed) or ``"inconsistent"`` (criteria that must agree did
    not).
    """

    kind: str
    status: str
    data: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.status != "inconsistent"

    @property
    def exit_code(self) -> int:
        return {"ok": 0, "negative": 1, "inconsistent": 2}[self.status]

    def to_json(self):
        return {"kind": self.kind, "status": self.status, "consistent": self.consistent,
                **self.data, "notes": list(self.notes)}

    def raise_if_inconsistent(self):
        if not self.consistent:
            raise InconsistencyError("; ".join(self.notes) or f"{self.kind} inconsistent")


# ---------------------------------------------------------------------------
# regularity


def _polys(M: FPModule, f: Sequence) -> list:
    return [M.ring(x) for x in f]


def _pick(vectors: Sequence[dict], N: Submodule, ring, rank):
    """Smallest (by degree, size, text) normal form among vectors outside ``N``."""
    best = None
    for v in vectors:
        if N.contains_vec(v):
            continue
        r = N.gb().reduce_vec(v) if N.vectors else v
        w = FreeElement(ring, rank, r)
        k = (w.degree(), len(r), str(w))
        if best is None or k < best[0]:
            best = (k, w)
    return None if best is None else best[1]


def is_strongly_regular(f: Sequence, M: FPModule) -> Verdict:
    """Each ``f_i`` is a non-zero divisor on ``M / (f_1..f_{i-1}) M``."""
    ring, m = M.ring, M.rank
    f = _polys(M, f)
    rels = list(M.relations.vectors)
    for i, fi in enumerate(f, 1):
        N = Submodule(ring, m, rels)
        if fi.is_zero():
            # zero kills everything, so it is a non-zero divisor only on the zero module
            w = _pick([{(k, (0,) * ring.ngens): ring.field.one} for k in range(m)], N, ring, m)
        else:
            w = _pick(colon_submodule(N, fi).vectors, N, ring, m)
        if w is not None:
            return Verdict(False, "colon", Witness("zero-divisor", i, w))
        rels += [poly_to_vec(fi, k) for k in range(m)]
    return Verdict(True, "colon")


def is_regular(f: Sequence, M: FPModule) -> Verdict:
    """Koszul homology ``H_i(f; M)`` vanishes for every ``i >= 1``."""
    f = _polys(M, f)
    K = build_koszul(f, M)
    for i in range(1, len(f) + 1):
        w = homology_witness(K, i)
        if w is not None:
            return Verdict(False, "koszul", Witness("homology", i, w))
    return Verdict(True, "koszul")


# ---------------------------------------------------------------------------
# depth and primes


def _nonzero_at(rank: int, cycles, boundaries, p: PrimeCandidate, ring) -> bool:
    """Whether ``(<cycles> + D)/D`` survives localisation at ``p``.

    For a prime ``p`` this holds iff some generator has annihilator inside ``p``.
    """
    D = Submodule(ring, rank, boundaries)
    for v in cycles:
        if not v or D.contains_vec(v):
            continue
        ann = preimage_vectors(ring, rank, [v], D)
        if all(p.ideal.contains(vec_component(ring, z, 0)) for z in ann):
            return True
    return False


def supported_at(M: FPModule, p: PrimeCandidate) -> bool:
    """``p in Supp(M)``, i.e. ``ann(M)`` is contained in ``p``."""
    basis = [M.basis_vec(i) for i in range(M.rank)]
    return _nonzero_at(M.rank, basis, M.relations.vectors, p, M.ring)


def ext_supported_at(i: int, M: FPModule, p: PrimeCandidate) -> bool:
    rank, cycles, boundaries = ext_parts(i, p.ideal, M)
    return _nonzero_at(rank, cycles, boundaries, p, M.ring)


def local_depth(M: FPModule, p: PrimeCandidate, at_least: int | None = None):
    """``depth M_p``: first ``i`` with ``Ext^i(R/p, M)_p != 0``; infinity if ``M_p = 0``.

    With ``at_least`` the search stops there and returns that value as soon
    as depth is known to be at least that large.
    """
    if p.ring != M.ring:
        raise PreconditionError("prime and module over different rings")
    if not supported_at(M, p):
        return INFINITY
    n = M.ring.ngens
    stop = n if at_least is None else min(at_least, n + 1)
    for i in range(0, n + 1):
        if at_least is not None and i >= stop:
            return stop
        if ext_supported_at(i, M, p):
            return i
    raise RegseqError(f"no non-vanishing Ext up to {n} at {p}; is the candidate really prime?")


def depth_ext(M: FPModule):
    """Depth at the irrelevant ideal via the first non-vanishing ``Ext^i(R/m, M)``."""
    if is_zero(M):
        return INFINITY
    m = PrimeCandidate.from_variables(M.ring, range(M.ring.ngens))
    return local_depth(M, m)


@dataclass(frozen=True)
class PrimeMembership:
    in_supp: bool
    in_ass: bool


def prime_membership(M: FPModule, p: PrimeCandidate) -> PrimeMembership:
    """Support via ``ann(M) ⊆ p``; association via ``Hom(R/p, M)_p != 0``."""
    if not supported_at(M, p):
        return PrimeMembership(False, False)
    return PrimeMembership(True, ext_supported_at(0, M, p))


def _all_variable_primes(ring: PolyRing) -> list:
    n = ring.ngens
    return [PrimeCandidate.from_variables(ring, S)
            for size in range(n + 1) for S in itertools.combinations(range(n), size)]


def monomial_ass(M: FPModule) -> PrimeSet:
    """All associated primes of a module with monomial relations."""
    if M.relations.vectors and not M.relations.is_monomial():
        raise PreconditionError("monomial_ass needs monomial relations")
    primes = [p for p in _all_variable_primes(M.ring) if prime_membership(M, p).in_ass]
    return PrimeSet(sorted(primes, key=PrimeCandidate.sort_key), complete=True)


def monomial_supp(M: FPModule) -> PrimeSet:
    """The variable primes in the support of ``M`` (complete only among such primes)."""
    primes = [p for p in _all_variable_primes(M.ring) if supported_at(M, p)]
    return PrimeSet(sorted(primes, key=PrimeCandidate.sort_key), complete=False)


# ---------------------------------------------------------------------------
# cross-checks


def theorem_crosscheck(M: FPModule, f: Sequence, candidates: Sequence | None = None,
                       strict: bool = False) -> Report:
    """Compare Koszul regularity with local depth at the primes of ``M/(f)M``.

    Without ``candidates`` the quotient must have monomial relations; its
    associated primes are then enumerated completely and a disagreement
    between the two routes is reported as an inconsistency.  With
    ``candidates`` only the implication from regularity to the depth bounds
    can be checked.
    """
    f = _polys(M, f)
    r = len(f)
    Q = quotient_by_sequence(M, f)
    crit_i = is_regular(f, M)
    notes = []

    if candidates is None:
        if Q.relations.vectors and not Q.relations.is_monomial():
            raise PreconditionError(
                "M/(f)M is not monomial; supply candidate primes for the depth criteria")
        ass = list(monomial_ass(Q))
        supp = list(monomial_supp(Q))
        complete = True
    else:
        if strict:
            raise PreconditionError("candidate primes give an incomplete prime set (strict mode)")
        complete = False
        ass, supp = [], []
        for p in candidates:
            pm = prime_membership(Q, p)
            if pm.in_supp:
                supp.append(p)
            if pm.in_ass:
                ass.append(p)
        notes.append("prime set incomplete: criteria evaluated on candidates only")

    ass_names = {str(p) for p in ass}
    table = []
    depth_of = {}
    for p in sorted(supp, key=PrimeCandidate.sort_key):
        d = local_depth(M, p)
        depth_of[str(p)] = d
        table.append({"prime": str(p), "in_ass": str(p) in ass_names, "in_supp": True,
                      "assertion": p.assertion, "local_depth": format_depth(d)})

    bad_iii = [p for p in ass if depth_of[str(p)] < r]
    bad_ii = [p for p in supp if depth_of[str(p)] < r]
    crit_iii = Verdict(not bad_iii, "ext-depth-ass",
                       None if not bad_iii else Witness("prime", prime=bad_iii[0], depth=depth_of[str(bad_iii[0])]))
    crit_ii = Verdict(not bad_ii, "ext-depth-supp-candidates",
                      None if not bad_ii else Witness("prime", prime=bad_ii[0], depth=depth_of[str(bad_ii[0])]))

    inconsistencies = []
    if complete and crit_i.holds != crit_iii.holds:
        inconsistencies.append("criterion (i) (Koszul) disagrees with (iii) (depth at Ass)")
    if crit_i.holds and not crit_iii.holds and not complete:
        inconsistencies.append("regular sequence but a candidate associated prime has small depth")
    if crit_i.holds and not crit_ii.holds:
        inconsistencies.append("regular sequence but a support candidate has small depth")
    if complete and crit_ii.holds and not crit_iii.holds:
        inconsistencies.append("depth bound on the support but not on Ass")
    notes.extend(inconsistencies)
    status = "inconsistent" if inconsistencies else "ok"
    data = {
        "r": r,
        "sequence": [str(x) for x in f],
        "criteria": {
            "i_koszul": crit_i.to_json(),
            "ii_supp": {**crit_ii.to_json(), "scope": "consistent-with-ii on listed primes"},
            "iii_ass": crit_iii.to_json(),
        },
        "complete": complete,
        "ass": sorted(ass_names),
        "primes": table,
    }
    return Report("theorem", status, data, notes)


def corollary2_check(M: FPModule, f: Sequence, g: Sequence) -> Report:
    """If ``Supp M/(g)M ⊆ Supp M/(f)M`` and ``f`` is regular, ``g`` must be regular."""
    f, g = _polys(M, f), _polys(M, g)
    if len(f) != len(g):
        raise PreconditionError("f and g must have the same length")
    # Supp(M/(h)M) = V(ann M + (h)), so containment is radical membership of each f_i
    target = annihilator(M) + Ideal(M.ring, g)
    missing = [x for x in f if not radical_membership(x, target)]
    data = {"f": [str(x) for x in f], "g": [str(x) for x in g], "hypothesis": not missing}
    if missing:
        data["hypothesis_witness"] = str(missing[0])
        return Report("corollary2", "negative", data, ["hypothesis not satisfied"])
    f_reg = is_regular(f, M)
    data["f_regular"] = f_reg.to_json()
    if not f_reg.holds:
        return Report("corollary2", "negative", data, ["f is not regular; nothing to conclude"])
    g_reg = is_regular(g, M)
    data["g_regular"] = g_reg.to_json()
    if not g_reg.holds:
        return Report("corollary2", "inconsistent", data,
                      ["hypothesis holds and f is regular but g is not regular"])
    return Report("corollary2", "ok", data, ["conclusion confirmed: g is regular"])


def sop_regular_check(M: FPModule, f: Sequence) -> Report:
    """A system of parameters of a Cohen–Macaulay module must be regular."""
    if not M.is_graded:
        raise GradingError("system-of-parameters check needs a graded module")
    f = _polys(M, f)
    if not all(x.is_homogeneous() for x in f):
        raise GradingError("system of parameters must be homogeneous")
    if is_zero(M):
        raise PreconditionError("module must be non-zero")
    dim = krull_dimension(M)
    if len(f) != dim:
        raise PreconditionError(f"need {dim} elements (the dimension), got {len(f)}")
    quotient_dim = krull_dimension(quotient_by_sequence(M, f))
    depth = depth_ext(M)
    data = {"sequence": [str(x) for x in f], "dim": dim, "depth": format_depth(depth),
            "quotient_dim": quotient_dim, "sop": quotient_dim == 0, "cohen_macaulay": depth == dim}
    if quotient_dim != 0:
        return Report("sop", "negative", data, ["not a system of parameters"])
    if depth != dim:
        return Report("sop", "negative", data, ["not Cohen-Macaulay"])
    reg = is_regular(f, M)
    data["regular"] = reg.to_json()
    if not reg.holds:
        return Report("sop", "inconsistent", data,
                      ["system of parameters on a Cohen-Macaulay module is not regular"])
    return Report("sop", "ok", data, ["regularity confirmed"])


# ---------------------------------------------------------------------------
# witness re-validation (plain membership arithmetic, no Koszul objects)


def _koszul_boundary(v: dict, f: Sequence[Polynomial], m: int, i: int, ring) -> dict:
    """Apply the degree-``i`` Koszul differential to ``v`` directly."""
    from .groebner import add_vecs

    r = len(f)
    src = colex_subsets(r, i)
    tgt = {S: a for a, S in enumerate(colex_subsets(r, i - 1))}
    out: dict = {}
    for (pos, e), c in v.items():
        S = src[pos // m]
        comp = pos % m
        mono = Polynomial(ring, {e: c})
        for k, j in enumerate(S):
            coef = f[j] * mono * (-1 if k % 2 else 1)
            out = add_vecs(out, poly_to_vec(coef, tgt[S[:k] + S[k + 1:]] * m + comp), ring.field)
    return out


def revalidate(verdict: Verdict, f: Sequence, M: FPModule) -> bool:
    """Re-check a negative verdict's witness by direct membership tests."""
    if verdict.holds:
        return True
    w = verdict.witness
    ring, m = M.ring, M.rank
    f = _polys(M, f)
    if w is None:
        return False
    if w.kind == "zero-divisor":
        rels = list(M.relations.vectors)
        for fj in f[: w.index - 1]:
            rels += [poly_to_vec(fj, k) for k in range(m)]
        N = Submodule(ring, m, rels)
        return N.contains(w.element.scale(f[w.index - 1])) and not N.contains(w.element)
    if w.kind == "homology":
        i, r = w.index, len(f)
        v = w.element.vec
        below = Submodule(ring, m * len(colex_subsets(r, i - 1)),
                          [{(p + a * m, e): c for (p, e), c in z.items()}
                           for a in range(len(colex_subsets(r, i - 1))) for z in M.relations.vectors])
        if not below.contains_vec(_koszul_boundary(v, f, m, i, ring)):
            return False
        here = [{(p + a * m, e): c for (p, e), c in z.items()}
                for a in range(len(colex_subsets(r, i))) for z in M.relations.vectors]
        if i < r:
            for a in range(len(colex_subsets(r, i + 1))):
                for k in range(m):
                    here.append(_koszul_boundary({(a * m + k, (0,) * ring.ngens): ring.field.one},
                                                 f, m, i + 1, ring))
        return not Submodule(ring, w.element.rank, here).contains_vec(v)
    if w.kind == "prime":
        return local_depth(M, w.prime) == w.depth
    return False
