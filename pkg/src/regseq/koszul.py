"""Koszul complexes ``K(f_1..f_r; M)`` and their homology."""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from .errors import GradingError, PreconditionError
from .fpmodule import (
    Complex,
    FPModule,
    ModuleMap,
    direct_power,
    is_zero,
    subquotient,
    subquotient_is_zero,
)
from .groebner import FreeElement, poly_to_vec
from .polycore import Polynomial

__all__ = ["KoszulComplex", "build_koszul", "koszul_homology", "homology_vanishes", "depth_via_koszul"]


def colex_subsets(r: int, i: int) -> list:
    """All ``i``-subsets of ``range(r)`` in colexicographic order."""
    return sorted(itertools.combinations(range(r), i), key=lambda S: tuple(reversed(S)))


class KoszulComplex(Complex):
    """Component ``K_i`` is ``M^{C(r,i)}`` with one block per ``i``-subset.

    The differential sends ``e_S`` to ``sum_k (-1)^k f_{S[k]} e_{S - S[k]}``,
    ``k`` counting from zero inside the increasing tuple ``S``.
    """

    def __init__(self, sequence: Sequence[Polynomial], base: FPModule):
        self.sequence = tuple(sequence)
        r = len(self.sequence)
        self.subsets = [colex_subsets(r, i) for i in range(r + 1)]
        m = base.rank
        graded = base.is_graded and all(f.is_homogeneous() for f in self.sequence)
        degs = [max(f.degree(), 0) for f in self.sequence]

        components = []
        for i in range(r + 1):
            shifts = None
            if graded:
                shifts = tuple(base.shifts[k] + sum(degs[j] for j in S)
                               for S in self.subsets[i] for k in range(m))
            components.append(direct_power(base, len(self.subsets[i]), shifts))
        self.components = components

        maps = []
        for i in range(1, r + 1):
            index = {S: a for a, S in enumerate(self.subsets[i - 1])}
            images = []
            for S in self.subsets[i]:
                blocks = []
                for k, j in enumerate(S):
                    face = S[:k] + S[k + 1:]
                    sign = -1 if k % 2 else 1
                    blocks.append((index[face], sign * self.sequence[j]))
                for comp in range(m):
                    v: dict = {}
                    for a, coef in blocks:
                        for (_, e), c in poly_to_vec(coef).items():
                            v[(a * m + comp, e)] = c
                    images.append(v)
            maps.append(ModuleMap(components[i], components[i - 1], images))
        super().__init__(maps, base=components[0])
        self.module = base

    @property
    def length(self) -> int:
        return len(self.sequence)

    def kernel_and_boundaries(self, i: int):
        """Numerator (cycle) and denominator vectors for ``H_i`` in ``K_i``'s ambient."""
        from .fpmodule import preimage_vectors

        r = self.length
        K_i = self.components[i]
        ring = self.module.ring
        if i == 0:
            cycles = [K_i.basis_vec(p) for p in range(K_i.rank)]
        else:
            d = self.maps[i - 1]
            cycles = preimage_vectors(ring, d.target.rank, d.images, d.target.relations)
        boundaries = list(K_i.relations.vectors)
        if i < r:
            boundaries += self.maps[i].images
        return cycles, boundaries

    def to_json(self):
        data = super().to_json()
        data["sequence"] = [str(f) for f in self.sequence]
        data["subsets"] = [[list(S) for S in level] for level in self.subsets]
        return data


def build_koszul(f: Sequence, M: FPModule) -> KoszulComplex:
    return KoszulComplex([M.ring(x) for x in f], M)


def _check_index(K: KoszulComplex, i: int):
    if not 0 <= i <= K.length:
        raise PreconditionError(f"homology index {i} outside 0..{K.length}")


def koszul_homology(K: KoszulComplex, i: int) -> FPModule:
    """``H_i(K) = ker d_i / im d_{i+1}`` as a finitely presented module."""
    _check_index(K, i)
    cycles, boundaries = K.kernel_and_boundaries(i)
    comp = K.components[i]
    module, _ = subquotient(comp.ring, comp.rank, cycles, boundaries, comp.shifts)
    return module


def homology_witness(K: KoszulComplex, i: int):
    """A cycle that is not a boundary, as a FreeElement, or ``None`` if ``H_i = 0``."""
    _check_index(K, i)
    cycles, boundaries = K.kernel_and_boundaries(i)
    comp = K.components[i]
    v = subquotient_is_zero(comp.ring, comp.rank, cycles, boundaries)
    return None if v is None else FreeElement(comp.ring, comp.rank, v)


def homology_vanishes(K: KoszulComplex, i: int) -> bool:
    return homology_witness(K, i) is None


def depth_via_koszul(M: FPModule):
    """Depth at the irrelevant ideal: ``n - max{i : H_i(x_1..x_n; M) != 0}``."""
    if not M.is_graded:
        raise GradingError("Koszul depth needs a graded module")
    if is_zero(M):
        return math.inf
    n = M.ring.ngens
    K = build_koszul(M.ring.gens, M)
    for i in range(n, -1, -1):
        if not homology_vanishes(K, i):
            return n - i
    raise AssertionError("H_0 of a non-zero graded module cannot vanish")
