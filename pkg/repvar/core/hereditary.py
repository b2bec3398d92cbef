#!/usr/bin/env python3
"""
Hereditary module for repvar.

Generic Hom/Ext values, submodule dimension vectors, Schur roots and
canonical decompositions for path algebras of acyclic quivers, estimated
by sampling random representations over a prime field. Ext is obtained
from dim Hom minus the Euler form.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

from ..utils import linalg
from ..utils.config import Config
from ..utils.seeding import SeedLike, derive_rng, stable_hash
from .quiver import DimVector, Quiver, TruncatedAlgebra, euler_form
from .repfield import Representation, end_dim, fitting_decompose, hom_dim


logger = logging.getLogger(__name__)

# Stream tags keeping the sample families of different oracles apart
_HOM_STREAM = 1
_SCHUR_STREAM = 2
_DECOMP_STREAM = 3


class HereditaryError(Exception):
    """Exception raised when a hereditary oracle is asked about a cyclic quiver."""
    pass


def _check_acyclic(q: Quiver) -> TruncatedAlgebra:
    longest = q.longest_path_length()
    if longest is None:
        raise HereditaryError("Hereditary oracles need an acyclic quiver")
    return TruncatedAlgebra(q, longest)


def _check_samples(samples: int) -> None:
    if samples < 1:
        raise ValueError(f"At least one sample is needed, got {samples}")


def sample_representation(q: Quiver, d: Sequence[int], p: int = Config.HEREDITARY_PRIME,
                          seed: SeedLike = Config.DEFAULT_SEED,
                          loewy_bound: Optional[int] = None) -> Representation:
    """
    Uniformly random representation of dimension vector ``d`` over GF(p).

    Acyclic quivers need no ``loewy_bound``. For a quiver with cycles the
    bound is mandatory and the sample must satisfy the truncation, otherwise
    ``RepresentationError`` is raised.
    """
    d = q.check_dim(d)
    if loewy_bound is None:
        algebra = _check_acyclic(q)
        check = False
    else:
        algebra = TruncatedAlgebra(q, loewy_bound)
        check = True
    gf = linalg.field(p)
    rng = derive_rng(seed)
    matrices = {
        arrow.name: linalg.random_matrix(gf, d[arrow.target - 1], d[arrow.source - 1], rng)
        for arrow in q.arrows
    }
    return Representation(algebra, gf, d, matrices, check=check)


def generic_hom(q: Quiver, d1: Sequence[int], d2: Sequence[int],
                samples: int = Config.DEFAULT_SAMPLES, p: int = Config.HEREDITARY_PRIME,
                seed: int = Config.DEFAULT_SEED) -> int:
    """Minimum of dim Hom(M, N) over ``samples`` independent pairs."""
    _check_acyclic(q)
    _check_samples(samples)
    d1, d2 = q.check_dim(d1), q.check_dim(d2)
    if not any(d1) or not any(d2):
        return 0
    key = stable_hash(d1 + d2)
    best = None
    for k in range(samples):
        m = sample_representation(q, d1, p, (seed, _HOM_STREAM, key, k, 0))
        n = sample_representation(q, d2, p, (seed, _HOM_STREAM, key, k, 1))
        value = hom_dim(m, n)
        best = value if best is None else min(best, value)
        if best == max(0, euler_form(q, d1, d2)):
            break
    return best


def generic_ext(q: Quiver, d1: Sequence[int], d2: Sequence[int],
                samples: int = Config.DEFAULT_SAMPLES, p: int = Config.HEREDITARY_PRIME,
                seed: int = Config.DEFAULT_SEED) -> int:
    """
    Estimate of ext(d1, d2) = min dim Ext^1(M, N).

    Always an upper bound on the generic value and equal to it with high
    probability. Adding samples never increases the estimate.
    """
    return generic_hom(q, d1, d2, samples, p, seed) - euler_form(q, d1, d2)


def sub_dimension_vectors(q: Quiver, d: Sequence[int], samples: int = Config.DEFAULT_SAMPLES,
                          p: int = Config.HEREDITARY_PRIME,
                          seed: int = Config.DEFAULT_SEED) -> Set[DimVector]:
    """Dimension vectors d' <= d with ext(d', d - d') = 0."""
    d = q.check_dim(d)
    result = set()
    for sub in itertools.product(*(range(x + 1) for x in d)):
        quotient = tuple(x - y for x, y in zip(d, sub))
        if generic_ext(q, sub, quotient, samples, p, seed) == 0:
            result.add(tuple(sub))
    logger.debug(f"Sub{d}: {len(result)} vectors")
    return result


def is_schur_root(q: Quiver, d: Sequence[int], samples: int = Config.DEFAULT_SAMPLES,
                  p: int = Config.HEREDITARY_PRIME, seed: int = Config.DEFAULT_SEED) -> bool:
    """True iff some sampled representation of dimension ``d`` has End = K."""
    _check_acyclic(q)
    _check_samples(samples)
    d = q.check_dim(d)
    if not any(d):
        return False
    key = stable_hash(d)
    for k in range(samples):
        if end_dim(sample_representation(q, d, p, (seed, _SCHUR_STREAM, key, k))) == 1:
            return True
    return False


@dataclass
class CanonicalDecomposition:
    """Generic direct-sum decomposition of a dimension vector into Schur roots."""
    summands: List[Tuple[DimVector, int]]
    verified: bool = True
    prime: int = Config.HEREDITARY_PRIME
    samples: int = Config.DEFAULT_SAMPLES
    rounds: int = 1

    def vectors(self) -> List[DimVector]:
        """Summands repeated by multiplicity."""
        return [v for v, mult in self.summands for _ in range(mult)]

    def total(self, n: int) -> DimVector:
        total = [0] * n
        for v, mult in self.summands:
            for i, x in enumerate(v):
                total[i] += mult * x
        return tuple(total)

    def to_dict(self) -> dict:
        return {
            "summands": [{"vector": list(v), "multiplicity": mult} for v, mult in self.summands],
            "verified": self.verified,
            "prime": self.prime,
            "samples": self.samples,
            "rounds": self.rounds,
        }


def _group(vectors: Sequence[DimVector]) -> List[Tuple[DimVector, int]]:
    counts = Counter(vectors)
    return sorted(counts.items(), key=lambda item: (-sum(item[0]), item[0]))


def verify_decomposition(q: Quiver, summands: List[Tuple[DimVector, int]],
                         samples: int, p: int, seed: int) -> bool:
    """Schur test on every vector and vanishing ext between every pair of summands."""
    for v, _ in summands:
        if not is_schur_root(q, v, samples, p, seed):
            logger.debug(f"{v} failed the Schur test")
            return False
    for (v, mv), (w, _) in itertools.product(summands, repeat=2):
        if v == w and mv < 2:
            continue
        if generic_ext(q, v, w, samples, p, seed) != 0:
            logger.debug(f"ext({v}, {w}) does not vanish")
            return False
    return True


def canonical_decomposition(q: Quiver, d: Sequence[int], samples: int = Config.DEFAULT_SAMPLES,
                            p: int = Config.HEREDITARY_PRIME, seed: int = Config.DEFAULT_SEED,
                            rounds: int = Config.DECOMPOSITION_ROUNDS) -> CanonicalDecomposition:
    """
    Canonical decomposition of ``d`` by sampling and verification.

    Each round Fitting-decomposes sampled representations and tries the
    observed summand lists, finest first (ties by frequency). The first
    list passing ``verify_decomposition`` is returned. Sample counts double
    between rounds; when every round fails the most frequent finest
    candidate is returned with ``verified`` False.
    """
    algebra = _check_acyclic(q)
    _check_samples(samples)
    d = q.check_dim(d)
    if not any(d):
        return CanonicalDecomposition([], True, p, samples, 0)

    tally: Counter = Counter()
    drawn = 0
    tried: Set[Tuple[DimVector, ...]] = set()
    n_samples = samples
    ranked: List[Tuple[DimVector, ...]] = []
    for round_index in range(max(1, rounds)):
        for k in range(drawn, n_samples):
            rep = sample_representation(q, d, p, (seed, _DECOMP_STREAM, k))
            parts = fitting_decompose(rep, seed=stable_hash((seed, k)))
            tally[tuple(sorted((s.dims for s in parts), reverse=True))] += 1
        drawn = n_samples
        ranked = sorted(tally, key=lambda c: (-len(c), -tally[c], c))
        for candidate in ranked:
            if candidate in tried:
                continue
            tried.add(candidate)
            summands = _group(candidate)
            if verify_decomposition(q, summands, n_samples, p, seed):
                logger.info(f"Canonical decomposition of {d}: {summands} (round {round_index + 1})")
                return CanonicalDecomposition(summands, True, p, n_samples, round_index + 1)
        # a failed candidate may pass with more samples
        tried.clear()
        n_samples *= 2

    best = _group(ranked[0])
    logger.warning(f"Canonical decomposition of {d} unverified after {rounds} rounds: {best}")
    return CanonicalDecomposition(best, False, p, drawn, max(1, rounds))


def mu_from_decomposition(q: Quiver, decomposition: CanonicalDecomposition) -> int:
    """Sum over summands, with multiplicity, of 1 - <v, v>."""
    return sum(mult * (1 - euler_form(q, v, v)) for v, mult in decomposition.summands)


def mu_generic_params(q: Quiver, d: Sequence[int], samples: int = Config.DEFAULT_SAMPLES,
                      p: int = Config.HEREDITARY_PRIME, seed: int = Config.DEFAULT_SEED,
                      rounds: int = Config.DECOMPOSITION_ROUNDS) -> int:
    """Generic number of parameters; zero exactly when Rep_d has a dense orbit."""
    return mu_from_decomposition(q, canonical_decomposition(q, d, samples, p, seed, rounds))
