import math

import pytest

import corpus
from regseq.criteria import (
    PrimeCandidate,
    Report,
    corollary2_check,
    depth_ext,
    is_regular,
    is_strongly_regular,
    local_depth,
    monomial_ass,
    prime_membership,
    revalidate,
    sop_regular_check,
    theorem_crosscheck,
)
from regseq.errors import InconsistencyError, PreconditionError
from regseq.fpmodule import adjoin_variable, extend_polynomial, free_module, present
from regseq.polycore import GF, QQ, PolyRing


@pytest.fixture(params=[QQ, GF(32003)], ids=["QQ", "GF32003"])
def example(request):
    P = PolyRing(("x", "y", "z"), request.param)
    X, Y, Z = P.gens
    return P, present(P, 1, [Y * (X - 1), Y * Z])


R = PolyRing(("x", "y"), QQ)
x, y = R.gens
F = free_module(R)


def test_example_verdicts(example):
    P, M = example
    X, Y, Z = P.gens
    assert is_regular([Z, X], M)
    v = is_strongly_regular([Z, X], M)
    assert not v
    assert (v.witness.index, str(v.witness.element)) == (1, "y")
    assert revalidate(v, [Z, X], M)
    assert is_strongly_regular([X, Z], M)
    assert is_strongly_regular([], M)


def test_vacuous_and_repeated():
    assert is_regular([R.one], F)
    assert is_strongly_regular([R.one], F)
    S = PolyRing(("x",), QQ)
    s = S.gens[0]
    v = is_regular([s, s], free_module(S))
    assert not v and v.witness.index == 1
    assert revalidate(v, [s, s], free_module(S))


def test_depth_examples():
    assert depth_ext(F) == 2
    assert depth_ext(present(R, 1, [x**2, x * y])) == 0
    assert depth_ext(present(R, 1, [R.one])) == math.inf


def test_local_depth_examples(example):
    P, M = example
    X, Y, Z = P.gens
    assert local_depth(M, PrimeCandidate.of(P, [X, Y, Z])) == 2
    assert local_depth(M, PrimeCandidate.of(P, [X - 1, Y, Z])) == 1
    assert local_depth(M, PrimeCandidate.of(P, [Y])) == 0
    assert local_depth(M, PrimeCandidate.of(P, [X])) == math.inf


def test_prime_membership_examples(example):
    P, M = example
    X, Y, Z = P.gens
    pm = prime_membership(M, PrimeCandidate.of(P, [Y]))
    assert pm.in_supp and pm.in_ass
    pm = prime_membership(M, PrimeCandidate.of(P, [X, Y, Z]))
    assert pm.in_supp and not pm.in_ass
    pm = prime_membership(M, PrimeCandidate.of(P, [X]))
    assert not pm.in_supp and not pm.in_ass


def test_prime_assertions():
    assert PrimeCandidate.of(R, [x, y]).verified
    assert not PrimeCandidate.of(R, [x - 1]).verified
    assert str(PrimeCandidate.of(R, [])) == "(0)"


def test_monomial_ass_examples():
    assert monomial_ass(present(R, 1, [x**2, x * y])).names() == ["(x)", "(x, y)"]
    assert monomial_ass(F).names() == ["(0)"]
    assert monomial_ass(present(R, 1, [R.one])).names() == []
    with pytest.raises(PreconditionError):
        monomial_ass(present(R, 1, [x + y]))


def test_theorem_examples(example):
    P, M = example
    X, Y, Z = P.gens
    rep = theorem_crosscheck(M, [Z, X])
    assert rep.status == "ok"
    assert rep.data["ass"] == ["(x, y, z)"]
    assert rep.data["primes"][0]["local_depth"] == 2
    assert rep.data["criteria"]["i_koszul"]["holds"]
    assert theorem_crosscheck(F, [x, y]).status == "ok"
    S = PolyRing(("x",), QQ)
    s = S.gens[0]
    rep = theorem_crosscheck(free_module(S), [s, s])
    assert rep.status == "ok"
    assert rep.data["ass"] == ["(x)"]
    assert not rep.data["criteria"]["i_koszul"]["holds"]
    assert not rep.data["criteria"]["iii_ass"]["holds"]
    assert rep.data["criteria"]["iii_ass"]["witness"]["depth"] == 1


def test_theorem_with_candidates(example):
    P, M = example
    X, Y, Z = P.gens
    cands = [PrimeCandidate.of(P, [X - 1, Y, Z]), PrimeCandidate.of(P, [X, Y, Z])]
    rep = theorem_crosscheck(M, [Y + Z], cands)
    assert not rep.data["complete"]
    assert "prime set incomplete" in rep.notes[0]
    with pytest.raises(PreconditionError):
        theorem_crosscheck(M, [Y + Z], cands, strict=True)
    with pytest.raises(PreconditionError):
        theorem_crosscheck(M, [Y + Z])


def test_corollary2_examples():
    rep = corollary2_check(F, [x, y], [x + y, x * y])
    assert rep.status == "ok" and rep.data["hypothesis"]
    assert corollary2_check(F, [x, y], [x, y]).status == "ok"
    rep = corollary2_check(F, [x], [y])
    assert rep.status == "negative" and rep.notes == ["hypothesis not satisfied"]
    assert "g_regular" not in rep.data


def test_sop_examples():
    M = present(R, 1, [x * y], graded=True)
    rep = sop_regular_check(M, [x - y])
    assert rep.status == "ok" and rep.data["cohen_macaulay"]
    assert sop_regular_check(F, [x, y]).status == "ok"
    rep = sop_regular_check(present(R, 1, [x**2, x * y], graded=True), [y])
    assert rep.status == "negative" and rep.notes == ["not Cohen-Macaulay"]
    assert "regular" not in rep.data


def test_report_exit_codes():
    assert Report("t", "ok").exit_code == 0
    assert Report("t", "negative").exit_code == 1
    forged = Report("t", "inconsistent", notes=["forged"])
    assert forged.exit_code == 2
    with pytest.raises(InconsistencyError):
        forged.raise_if_inconsistent()


CASES = corpus.instances(80, seed=5)


@pytest.mark.parametrize("ring,M,f", CASES)
def test_strong_iff_prefixes_and_soundness(ring, M, f):
    strong = is_strongly_regular(f, M)
    prefixes = all(is_regular(f[:s], M) for s in range(1, len(f) + 1))
    assert bool(strong) == prefixes
    reg = is_regular(f, M)
    if strong:
        assert reg
    assert revalidate(strong, f, M)
    assert revalidate(reg, f, M)


@pytest.mark.parametrize("ring,M,f", CASES[:40])
def test_flat_extension(ring, M, f):
    N = adjoin_variable(M)
    g = [extend_polynomial(p, N.ring) for p in f]
    assert bool(is_regular(f, M)) == bool(is_regular(g, N))
    assert bool(is_strongly_regular(f, M)) == bool(is_strongly_regular(g, N))


@pytest.mark.parametrize("ring,M,f", CASES)
def test_theorem_consistent(ring, M, f):
    rep = theorem_crosscheck(M, f)
    assert rep.status == "ok", rep.notes
