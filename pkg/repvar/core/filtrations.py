#!/usr/bin/env python3
"""
Filtration search module for repvar.

Decides whether a representation M has a chain of subrepresentations
M = M_0 ⊇ M_1 ⊇ ... ⊇ M_{L+1} = 0 with semisimple quotients of prescribed
dimension vectors, and counts the sequences that govern such chains.

Every such chain satisfies J^l M ⊆ M_l ⊆ soc_{L-l} M, and M_{l+1} always
contains J·M_l. Each step therefore picks a subspace of
(soc_{L-l-1} M ∩ M_l) / J·M_l of the right dimension at every vertex;
any such choice is automatically a subrepresentation. The search runs
depth first over these finite Grassmannians.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Set, Tuple

import numpy as np

from ..utils import linalg
from ..utils.config import Config
from .layers import SemisimpleSequence, dominance_leq, enumerate_realizable
from .repfield import (
    Representation, Subrepresentation, extend_scalars, radical_layering, radical_of,
    socle_layering, socle_series, sub_intersect, whole, zero_sub,
)


logger = logging.getLogger(__name__)


class FiltrationSearchCapError(Exception):
    """Exception raised when a filtration search exceeds its subspace budget."""
    pass


def _state_key(sub: Subrepresentation) -> Tuple:
    return tuple((b.shape, np.asarray(b.view(np.ndarray)).tobytes()) for b in sub.bases)


class FiltrationSearch:
    """
    Depth-first search for filtrations of one representation.

    The socle series is computed once; ``visited`` counts candidate
    subrepresentations across all searches of this instance.
    """

    def __init__(self, m: Representation, cap: int = Config.FILTRATION_CAP):
        """
        Initialize the search.

        Args:
            m: Representation to filter
            cap: Maximum number of candidate subrepresentations to visit
        """
        self.m = m
        self.cap = cap
        self.visited = 0
        self.loewy_bound = m.algebra.loewy_bound
        self.socles = socle_series(m)
        self.radical = radical_layering(m)
        self.socle = socle_layering(m)

    def passes_prune(self, s: SemisimpleSequence) -> bool:
        """Necessary conditions: S ≤ S(M) and reversed S ≤ S*(M)."""
        return dominance_leq(s, self.radical) and dominance_leq(s.reversed(), self.socle)

    def _upper(self, l: int) -> Subrepresentation:
        k = self.loewy_bound - l - 1
        return self.socles[k] if k >= 0 else zero_sub(self.m)

    def _candidates(self, lower: Subrepresentation, upper: Subrepresentation,
                    target: Tuple[int, ...]) -> Iterator[Subrepresentation]:
        m = self.m
        complements = []
        for v, d in enumerate(m.dims):
            a_v, b_v = lower.bases[v], upper.bases[v]
            complements.append(linalg.complement_basis(a_v, b_v, d) if d else m.gf.Zeros((0, 0)))

        def choose(v: int, chosen: list):
            if v == m.n:
                yield Subrepresentation(tuple(chosen))
                return
            d = m.dims[v]
            a_v = lower.bases[v]
            comp = complements[v]
            k = target[v] - linalg.dim(a_v)
            if k == 0:
                yield from choose(v + 1, chosen + [a_v])
                return
            for coeffs in linalg.grassmannian(m.gf, k, comp.shape[0]):
                self.visited += 1
                if self.visited > self.cap:
                    raise FiltrationSearchCapError(
                        f"Filtration search over {m.dims} exceeded {self.cap} subspaces"
                    )
                w = linalg.matmul(coeffs, comp)
                yield from choose(v + 1, chosen + [linalg.span_sum(a_v, w, d)])

        yield from choose(0, [])

    def iter_filtrations(self, s: SemisimpleSequence) -> Iterator[List[Subrepresentation]]:
        """All filtrations of M governed by ``s``, as chains M_0, ..., M_{L+1}."""
        m = self.m
        if s.total() != m.dims:
            raise ValueError(f"Sequence total {s.total()} differs from {m.dims}")
        if not self.passes_prune(s):
            return
        tails = [tuple(int(x) for x in np.sum(np.array(s.layers[l + 1:], dtype=np.int64), axis=0))
                 if l < self.loewy_bound else (0,) * m.n
                 for l in range(self.loewy_bound + 1)]
        failed: Set[Tuple] = set()

        def step(l: int, chain: List[Subrepresentation]):
            current = chain[-1]
            if l == self.loewy_bound + 1:
                yield list(chain)
                return
            key = (l, _state_key(current))
            if key in failed:
                return
            lower = radical_of(m, current)
            upper = sub_intersect(m, self._upper(l), current)
            target = tails[l]
            for a_v, b_v, t in zip(lower.dims, upper.dims, target):
                if not a_v <= t <= b_v:
                    failed.add(key)
                    return
            if not all(linalg.contains(b, a, d) for a, b, d in zip(lower.bases, upper.bases, m.dims)):
                failed.add(key)
                return
            found = False
            for nxt in self._candidates(lower, upper, target):
                for witness in step(l + 1, chain + [nxt]):
                    found = True
                    yield witness
            if not found:
                failed.add(key)

        yield from step(0, [whole(m)])

    def find(self, s: SemisimpleSequence) -> Optional[List[Subrepresentation]]:
        return next(self.iter_filtrations(s), None)

    def exists_any(self, sequences: List[SemisimpleSequence]) -> bool:
        """True iff some sequence governs a filtration; the cap applies per sequence."""
        for s in sequences:
            self.visited = 0
            if self.find(s) is not None:
                return True
        return False


def find_filtration(m: Representation, s: SemisimpleSequence,
                    cap: int = Config.FILTRATION_CAP,
                    extension_degree: int = 1) -> Optional[List[Subrepresentation]]:
    """Witness chain for a filtration of ``m`` governed by ``s``, or None."""
    if extension_degree > 1:
        m = extend_scalars(m, extension_degree)
    return FiltrationSearch(m, cap).find(s)


def filtration_exists(m: Representation, s: SemisimpleSequence,
                      cap: int = Config.FILTRATION_CAP, extension_degree: int = 1) -> bool:
    """
    True iff ``m`` has a filtration governed by ``s``.

    The search is exhaustive over GF(p^extension_degree)-rational chains.

    Raises:
        FiltrationSearchCapError: If more than ``cap`` subspaces are visited
    """
    return find_filtration(m, s, cap, extension_degree) is not None


@dataclass
class GammaResult:
    """Sequences governing a filtration of one representation."""
    witnesses: List[SemisimpleSequence] = field(default_factory=list)
    complete: bool = True
    visited: int = 0

    @property
    def count(self) -> int:
        return len(self.witnesses)


def gamma_witnesses(m: Representation, cap: int = Config.FILTRATION_CAP,
                    extension_degree: int = 1, stop_after: Optional[int] = None) -> GammaResult:
    """
    Realizable sequences governing some filtration of ``m``.

    The radical layering of ``m`` always qualifies. With ``stop_after`` the
    enumeration ends once that many witnesses are known (``complete`` is
    then False).
    """
    if extension_degree > 1:
        m = extend_scalars(m, extension_degree)
    search = FiltrationSearch(m, cap)
    result = GammaResult()
    for s in enumerate_realizable(m.dims, m.algebra):
        if stop_after is not None and result.count >= stop_after:
            result.complete = False
            break
        if s == search.radical or search.find(s) is not None:
            result.witnesses.append(s)
    result.visited = search.visited
    logger.debug(f"Gamma of {m.dims}: {result.count} witnesses, {search.visited} subspaces visited")
    return result


def gamma(m: Representation, cap: int = Config.FILTRATION_CAP, extension_degree: int = 1) -> int:
    """Number of realizable sequences governing a filtration of ``m``."""
    return gamma_witnesses(m, cap, extension_degree).count


def gamma_exceeds_one(m: Representation, cap: int = Config.FILTRATION_CAP,
                      extension_degree: int = 1) -> bool:
    """Early-exit test Γ(m) ≥ 2."""
    return gamma_witnesses(m, cap, extension_degree, stop_after=2).count >= 2
