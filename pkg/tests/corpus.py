"""Seeded random instances shared by the property and acceptance suites."""

import random

from regseq.fpmodule import present
from regseq.groebner import FreeElement
from regseq.polycore import PolyRing

VARIABLES = ("x", "y", "z")


def random_monomial(rng, n, max_degree, min_degree=0, support=None):
    support = range(n) if support is None else support
    d = rng.randint(min_degree, max_degree)
    e = [0] * n
    for _ in range(d):
        e[rng.choice(support)] += 1
    return tuple(e)


def random_monomial_module(rng, ring, max_gens=5, max_degree=4, max_rank=2):
    """Cokernel of monomial vectors (each a monomial times a basis element)."""
    n = ring.ngens
    rank = rng.randint(1, max_rank)
    rels = []
    # half of the modules only involve some of the variables in their relations
    support = list(range(n)) if rng.random() < 0.5 else rng.sample(range(n), rng.randint(1, n))
    for _ in range(rng.randint(0, rng.choice([2, max_gens]))):
        e = random_monomial(rng, n, max_degree, min_degree=1, support=support)
        pos = rng.randrange(rank)
        comps = [ring.zero] * rank
        comps[pos] = ring.monomial(e)
        rels.append(FreeElement.from_components(ring, comps))
    return present(ring, rank, rels, graded=True)


def random_sequence(rng, ring, max_length=3, max_degree=2):
    """Variables (mostly) or products of variables."""
    r = rng.randint(1, min(max_length, ring.ngens + 1))
    seq = []
    fresh = list(ring.gens)
    rng.shuffle(fresh)
    for _ in range(r):
        if fresh and rng.random() < 0.7:
            seq.append(fresh.pop())
        else:
            seq.append(ring.monomial(random_monomial(rng, ring.ngens, max_degree, min_degree=1)))
    return seq


def instances(count, seed=2004, field=None):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, 3)
        kwargs = {} if field is None else {"field": field}
        ring = PolyRing(VARIABLES[:n], **kwargs)
        M = random_monomial_module(rng, ring)
        f = random_sequence(rng, ring)
        out.append((ring, M, f))
    return out


def all_monomials(n, d):
    """Exponent vectors of total degree ``d`` in ``n`` variables."""
    if n == 1:
        return [(d,)]
    return [(a,) + rest for a in range(d, -1, -1) for rest in all_monomials(n - 1, d - a)]
