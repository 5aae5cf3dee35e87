"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import io
import itertools
import json
import pathlib
import random
import re
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).parent))

import corpus  # noqa: E402
from oracles import colon_dimension, piece_dimension  # noqa: E402
from regseq.cli import main as cli_main  # noqa: E402
from regseq.criteria import (  # noqa: E402
    corollary2_check,
    depth_ext,
    is_regular,
    is_strongly_regular,
    revalidate,
    sop_regular_check,
    theorem_crosscheck,
)
from regseq.fpmodule import (  # noqa: E402
    ModuleMap,
    adjoin_variable,
    colon_submodule,
    extend_polynomial,
    free_module,
    hilbert_function,
    kernel,
    present,
    standard_monomial_count,
)
from regseq.groebner import poly_to_vec  # noqa: E402
from regseq.koszul import depth_via_koszul  # noqa: E402
from regseq.polycore import GF, QQ, PolyRing  # noqa: E402
from regseq.session import parse_session  # noqa: E402

FIXTURES = sorted(pathlib.Path(__file__).parent.joinpath("fixtures").glob("*.rs"))
CORPUS = corpus.instances(200)
RESULTS: dict = {}


def record(number: int, title: str, ok: bool, detail: str, seconds: float):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({detail}; {seconds:.2f}s)"
    RESULTS[number] = line
    print(line)
    return ok


class timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


# ---------------------------------------------------------------------------


def criterion_1():
    checks = []
    with timer() as t:
        for fld in (GF(32003), QQ):
            P = PolyRing(("x", "y", "z"), fld)
            X, Y, Z = P.gens
            M = present(P, 1, [Y * (X - 1), Y * Z])
            strong = is_strongly_regular([Z, X], M)
            checks += [bool(is_regular([Z, X], M)), not strong,
                       strong.witness is not None and str(strong.witness.element) == "y",
                       revalidate(strong, [Z, X], M), bool(is_strongly_regular([X, Z], M))]
    ok = all(checks) and t.seconds < 1.0
    return record(1, "example golden test in GF(32003) and QQ", ok,
                  f"{sum(checks)}/{len(checks)} verdicts as expected, limit 1s", t.seconds)


def criterion_2():
    bad, regular = [], 0
    with timer() as t:
        for k, (ring, M, f) in enumerate(CORPUS):
            rep = theorem_crosscheck(M, f)
            regular += rep.data["criteria"]["i_koszul"]["holds"]
            if rep.status != "ok" or not rep.data["complete"]:
                bad.append(k)
    ok = not bad and len(CORPUS) >= 200 and t.seconds < 60
    return record(2, "theorem equivalence (Koszul vs depth at Ass)", ok,
                  f"{len(CORPUS)} instances, {regular} regular, {len(bad)} inconsistencies, limit 60s",
                  t.seconds)


def criterion_3():
    bad = []
    with timer() as t:
        for k, (ring, M, f) in enumerate(CORPUS):
            strong = bool(is_strongly_regular(f, M))
            prefixes = all(is_regular(f[:s], M) for s in range(1, len(f) + 1))
            if strong != prefixes:
                bad.append(k)
    return record(3, "strongly regular iff every prefix regular", not bad,
                  f"{len(CORPUS)} instances, {len(bad)} discrepancies", t.seconds)


def criterion_4():
    bad, perms = [], 0
    with timer() as t:
        for k, (ring, M, f) in enumerate(CORPUS):
            verdicts = set()
            for p in itertools.permutations(f):
                verdicts.add(bool(is_regular(list(p), M)))
                perms += 1
            if len(verdicts) != 1:
                bad.append(k)
    return record(4, "regularity invariant under permutations", not bad,
                  f"{perms} permutations, {len(bad)} discrepancies", t.seconds)


def criterion_5():
    R = PolyRing(("x", "y"), QQ)
    x, y = R.gens
    known = [(free_module(R), 2), (present(R, 1, [x**2, x * y], graded=True), 0),
             (present(R, 1, [x * y], graded=True), 1)]
    modules = [M for _, M, _ in CORPUS if M.is_graded]
    for path in FIXTURES:
        try:
            s = parse_session(path.read_text())
        except Exception:
            continue
        modules += [M for M in s.modules.values() if M.is_graded]
    bad = 0
    with timer() as t:
        for M, want in known:
            bad += not (depth_ext(M) == depth_via_koszul(M) == want)
        for M in modules:
            bad += depth_ext(M) != depth_via_koszul(M)
    total = len(known) + len(modules)
    return record(5, "depth via Ext equals depth via Koszul", bad == 0 and total >= 100,
                  f"{total} graded modules, {bad} discrepancies", t.seconds)


def corollary2_pairs():
    R = PolyRing(("x", "y"), QQ)
    x, y = R.gens
    S = PolyRing(("x", "y", "z"), QQ)
    X, Y, Z = S.gens
    FR, FS = free_module(R), free_module(S)
    MS = present(S, 1, [X * Y])
    MR = present(R, 1, [x**2])
    MZ = present(S, 1, [X * Z, Y * Z])
    return [
        (FR, [x, y], [x + y, x * y]),
        (FR, [x, y], [x, y]),
        (FR, [x, y], [x**2, y**2]),
        (FR, [x, y], [y, x]),
        (FR, [x, y], [x**3, y]),
        (FR, [x, y], [x + y, x - y]),
        (FR, [x, y], [x**2 + y**2, x * y]),
        (FR, [x, y], [x * y, x + y]),
        (FR, [x, y], [x**2, x * y + y**2]),
        (FR, [x], [x**2]),
        (FR, [x], [x**5]),
        (FS, [X, Y, Z], [X + Y + Z, X * Y + Y * Z + Z * X, X * Y * Z]),
        (FS, [X, Y, Z], [X**2, Y**2, Z**2]),
        (FS, [X, Y, Z], [X, Y + Z, Z**2]),
        (MS, [Z], [Z**2]),
        (MS, [X + Y, Z], [X + Y, Z**3]),
        (MR, [y], [y**3]),
        (MZ, [Z], [Z**2]),
        (FR, [x], [y]),
        (FS, [X, Y], [X, Z]),
    ]


def perturbations(rng, f):
    """Triangular power/sum perturbations keep the radical; the others may not."""
    ring = f[0].ring
    g = []
    for i, fi in enumerate(f):
        h = fi ** rng.randint(1, 3)
        if i and rng.random() < 0.6:
            j = rng.randrange(i) if rng.random() < 0.8 else rng.randrange(len(f))
            h = h + f[j] * ring.gens[rng.randrange(ring.ngens)] ** rng.randint(0, 1)
        g.append(h)
    return g


def criterion_6():
    cases = corollary2_pairs()
    rng = random.Random(6)
    for ring, M, f in CORPUS[:80]:
        cases.append((M, f, perturbations(rng, f)))
    violations = bad_reports = confirmed = skipped = 0
    with timer() as t:
        for M, f, g in cases:
            rep = corollary2_check(M, f, g)
            if rep.status == "inconsistent":
                violations += 1
            elif not rep.data["hypothesis"]:
                skipped += 1
                bad_reports += rep.notes != ["hypothesis not satisfied"] or "g_regular" in rep.data
            elif rep.status == "ok":
                confirmed += 1
    ok = violations == 0 and bad_reports == 0 and confirmed >= 20
    return record(6, "support containment transfers regularity", ok,
                  f"{len(cases)} pairs, {confirmed} confirmed, {skipped} hypothesis failures, "
                  f"{violations} violations", t.seconds)


def cm_fixtures():
    R1 = PolyRing(("x",), QQ)
    R2 = PolyRing(("x", "y"), QQ)
    R3 = PolyRing(("x", "y", "z"), GF(32003))
    x, y = R2.gens
    X, Y, Z = R3.gens
    return [
        free_module(R1), free_module(R2), free_module(R3), free_module(R2, 2),
        present(R2, 1, [x * y], graded=True), present(R2, 1, [x**2], graded=True),
        present(R2, 1, [x**2 - y**2], graded=True), present(R2, 1, [x**3 + x * y**2], graded=True),
        present(R3, 1, [X * Y], graded=True), present(R3, 1, [X**2 + Y**2 + Z**2], graded=True),
    ]


def random_form(rng, ring, degree):
    f = ring.zero
    for e in corpus.all_monomials(ring.ngens, degree):
        f = f + ring.monomial(e, rng.randint(-3, 3))
    return f


def criterion_7():
    from regseq.fpmodule import krull_dimension

    rng = random.Random(7)
    violations = confirmed = 0
    with timer() as t:
        for M in cm_fixtures():
            dim = krull_dimension(M)
            found = 0
            for _ in range(40):
                if found == 3:
                    break
                f = [random_form(rng, M.ring, rng.choice([1, 1, 2])) for _ in range(dim)]
                if any(p.is_zero() for p in f):
                    continue
                rep = sop_regular_check(M, f)
                if rep.data["sop"]:
                    found += 1
                    confirmed += rep.status == "ok"
                    violations += rep.status != "ok"
        R = PolyRing(("x", "y"), QQ)
        x, y = R.gens
        rep = sop_regular_check(present(R, 1, [x**2, x * y], graded=True), [y])
        non_cm = rep.status == "negative" and rep.notes == ["not Cohen-Macaulay"]
    ok = violations == 0 and confirmed >= 10 and non_cm
    return record(7, "systems of parameters on Cohen-Macaulay modules are regular", ok,
                  f"{confirmed} s.o.p.s confirmed on 10 modules, {violations} violations, "
                  f"non-CM case reported: {non_cm}", t.seconds)


def criterion_8():
    graded = [M for _, M, _ in CORPUS if M.is_graded] + cm_fixtures()
    for path in FIXTURES:
        try:
            graded += [M for M in parse_session(path.read_text()).modules.values() if M.is_graded]
        except Exception:
            pass
    hf_bad = colon_bad = 0
    with timer() as t:
        for M in graded:
            for d in range(7):
                hf_bad += hilbert_function(M, d) != standard_monomial_count(M, d)
        for ring, M, f in CORPUS[:50]:
            n, m, sh, fld = ring.ngens, M.rank, M.shifts, ring.field
            rels = list(M.relations.vectors)
            strong_bf = True
            for fi in f:
                N = present(ring, m, rels).relations
                C = colon_submodule(N, fi)
                Q = present(ring, m, rels, shifts=sh)
                K, lifts = kernel(ModuleMap(Q, Q, [poly_to_vec(fi, k) for k in range(m)]))
                lifts = [getattr(v, "vec", v) for v in lifts]
                for d in range(5):
                    want = colon_dimension(rels, fi.term_dict, fi.degree(), n, m, sh, d, fld)
                    colon_bad += piece_dimension(C.vectors, n, m, sh, d, fld) != want
                    colon_bad += piece_dimension(lifts + rels, n, m, sh, d, fld) != want
                    if want != piece_dimension(rels, n, m, sh, d, fld):
                        strong_bf = False
                rels += [poly_to_vec(fi, k) for k in range(m)]
            colon_bad += strong_bf != bool(is_strongly_regular(f, M))
    ok = hf_bad == 0 and colon_bad == 0
    return record(8, "Hilbert engines agree; colon and kernel match brute force", ok,
                  f"{len(graded)} graded modules to degree 6, 50 colon/kernel instances to degree 4, "
                  f"{hf_bad + colon_bad} discrepancies", t.seconds)


def criterion_9():
    bad = 0
    with timer() as t:
        for ring, M, f in CORPUS[:50]:
            N = adjoin_variable(M)
            g = [extend_polynomial(p, N.ring) for p in f]
            bad += bool(is_regular(f, M)) != bool(is_regular(g, N))
            bad += bool(is_strongly_regular(f, M)) != bool(is_strongly_regular(g, N))
    return record(9, "verdicts unchanged by adjoining a variable", bad == 0,
                  f"50 instances, {bad} discrepancies", t.seconds)


def _cli(argv):
    out = io.StringIO()
    return cli_main(argv, stdout=out), out.getvalue()


def criterion_10():
    bad = []
    with timer() as t:
        for path in FIXTURES:
            want = int(re.search(r"# expect: (\d)", path.read_text()).group(1))
            code, first = _cli(["run", "--session", str(path), "--format", "json"])
            code2, second = _cli(["run", "--session", str(path), "--format", "json"])
            if code != want or code2 != want or first != second or json.loads(first)["exit_code"] != want:
                bad.append(path.name)
        code, out = _cli(["check", "f", "on", "M", "--session", str(FIXTURES[0].parent / "example.rs"),
                          "--format", "json"])
        rep = json.loads(out)["results"][0]["report"]
        example_ok = code == 1 and (rep["regular"], rep["strongly_regular"], rep["witness"]) == (True, False, "y")
    ok = not bad and example_ok and t.seconds < 300
    return record(10, "CLI byte-stable JSON and exit codes", ok,
                  f"{len(FIXTURES)} fixture sessions, mismatches: {bad or 'none'}, limit 300s", t.seconds)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def test_criterion_1():
    assert criterion_1()


def test_criterion_2():
    assert criterion_2()


def test_criterion_3():
    assert criterion_3()


def test_criterion_4():
    assert criterion_4()


def test_criterion_5():
    assert criterion_5()


def test_criterion_6():
    assert criterion_6()


def test_criterion_7():
    assert criterion_7()


def test_criterion_8():
    assert criterion_8()


def test_criterion_9():
    assert criterion_9()


def test_criterion_10():
    assert criterion_10()


if __name__ == "__main__":
    results = [check() for check in CRITERIA]
    sys.exit(0 if all(results) else 1)
