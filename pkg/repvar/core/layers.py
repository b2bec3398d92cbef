#!/usr/bin/env python3
"""
Layers module for repvar.

Semisimple sequences (radical and socle layerings), the dominance order,
realizability, the generic socle layering of a realizable sequence, the
generic radical layering over an acyclic quiver, and extraction of minimal
(radical, socle) pairs.
"""

import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .quiver import DimVector, Quiver, TruncatedAlgebra, adjacency_matrix


logger = logging.getLogger(__name__)


class LayeringError(Exception):
    """Exception raised for invalid layerings or oversized enumerations."""
    pass


@dataclass(frozen=True, order=True)
class SemisimpleSequence:
    """
    Sequence (S_0, ..., S_L) of dimension vectors.

    Isomorphic semisimple modules are identified with their dimension
    vectors, so a layer is just a tuple of multiplicities.
    """
    layers: Tuple[DimVector, ...]

    def __post_init__(self):
        layers = tuple(tuple(int(x) for x in layer) for layer in self.layers)
        if not layers:
            raise LayeringError("A semisimple sequence needs at least one layer")
        n = len(layers[0])
        if any(len(layer) != n for layer in layers):
            raise LayeringError(f"Layers of unequal length in {layers}")
        if any(x < 0 for layer in layers for x in layer):
            raise LayeringError(f"Negative multiplicity in {layers}")
        object.__setattr__(self, "layers", layers)

    @classmethod
    def zero(cls, n: int, loewy_bound: int) -> "SemisimpleSequence":
        return cls(tuple((0,) * n for _ in range(loewy_bound + 1)))

    @classmethod
    def semisimple(cls, d: Sequence[int], loewy_bound: int) -> "SemisimpleSequence":
        """The layering (d, 0, ..., 0) of a semisimple module."""
        d = tuple(d)
        return cls((d,) + tuple((0,) * len(d) for _ in range(loewy_bound)))

    @property
    def loewy_bound(self) -> int:
        return len(self.layers) - 1

    @property
    def n(self) -> int:
        return len(self.layers[0])

    def __getitem__(self, index: int) -> DimVector:
        return self.layers[index]

    def __len__(self) -> int:
        return len(self.layers)

    def total(self) -> DimVector:
        return tuple(int(x) for x in np.sum(np.array(self.layers, dtype=np.int64), axis=0))

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(np.array(self.layers, dtype=np.int64), axis=0)

    def rank_key(self) -> int:
        """Sum of all partial sums; strictly increasing along the dominance order."""
        return int(self.partial_sums().sum())

    def reversed(self) -> "SemisimpleSequence":
        return SemisimpleSequence(tuple(reversed(self.layers)))

    def is_semisimple(self) -> bool:
        return not any(any(layer) for layer in self.layers[1:])

    def to_list(self) -> List[List[int]]:
        return [list(layer) for layer in self.layers]

    def __str__(self) -> str:
        return format_layering(self)


@dataclass(frozen=True)
class LayeringPair:
    """A (radical layering, socle layering) value of the map Theta."""
    radical: SemisimpleSequence
    socle: SemisimpleSequence

    def __post_init__(self):
        if self.radical.total() != self.socle.total():
            raise LayeringError(
                f"Radical total {self.radical.total()} differs from socle total {self.socle.total()}"
            )

    def rank_key(self) -> int:
        return self.radical.rank_key() + self.socle.rank_key()


def dominance_leq(s: SemisimpleSequence, t: SemisimpleSequence) -> bool:
    """True iff every partial layer sum of ``s`` is componentwise <= that of ``t``."""
    if s.total() != t.total() or len(s) != len(t):
        raise LayeringError(f"Cannot compare {s} with {t}: totals or lengths differ")
    return bool(np.all(s.partial_sums() <= t.partial_sums()))


def pair_leq(p: LayeringPair, q: LayeringPair) -> bool:
    return dominance_leq(p.radical, q.radical) and dominance_leq(p.socle, q.socle)


def sequence_count(d: Sequence[int], loewy_bound: int) -> int:
    """|Seq(d)| = prod_i C(d_i + L, L)."""
    count = 1
    for di in d:
        count *= comb(di + loewy_bound, loewy_bound)
    return count


def _check_cap(d: Sequence[int], loewy_bound: int, cap: Optional[int]) -> None:
    if cap is not None:
        count = sequence_count(d, loewy_bound)
        if count > cap:
            raise LayeringError(
                f"Seq({tuple(d)}) has {count} elements, above the cap {cap}; "
                f"restrict the dimension vector or raise the cap"
            )


def _bounded_vectors(bound: Sequence[int]) -> Iterator[DimVector]:
    return itertools.product(*(range(b + 1) for b in bound))


def enumerate_sequences(d: Sequence[int], loewy_bound: int,
                        cap: Optional[int] = None) -> List[SemisimpleSequence]:
    """All semisimple sequences with total ``d``, lexicographic on concatenated layers."""
    d = tuple(d)
    _check_cap(d, loewy_bound, cap)
    out: List[SemisimpleSequence] = []

    def walk(prefix, remaining):
        if len(prefix) == loewy_bound:
            out.append(SemisimpleSequence(tuple(prefix) + (tuple(remaining),)))
            return
        for layer in _bounded_vectors(remaining):
            walk(prefix + [layer], tuple(r - x for r, x in zip(remaining, layer)))

    walk([], d)
    return out


def _layer_image(layer: Sequence[int], a: np.ndarray) -> np.ndarray:
    return np.array(layer, dtype=np.int64) @ a


def is_realizable(s: SemisimpleSequence, a: TruncatedAlgebra) -> bool:
    """udim S_{l+1} <= udim S_l · A for every l."""
    if s.n != a.n:
        raise LayeringError(f"Sequence over {s.n} vertices used with a {a.n}-vertex quiver")
    if s.loewy_bound != a.loewy_bound:
        raise LayeringError(
            f"Sequence has {len(s)} layers, algebra expects {a.loewy_bound + 1}"
        )
    adj = adjacency_matrix(a.quiver)
    for l in range(s.loewy_bound):
        if np.any(np.array(s[l + 1]) > _layer_image(s[l], adj)):
            return False
    return True


def enumerate_realizable(d: Sequence[int], a: TruncatedAlgebra,
                         cap: Optional[int] = None) -> List[SemisimpleSequence]:
    """
    Realizable sequences with total ``d``.

    Same order as filtering :func:`enumerate_sequences`, but generated layer
    by layer so non-realizable prefixes are never expanded.
    """
    d = a.quiver.check_dim(d)
    loewy_bound = a.loewy_bound
    _check_cap(d, loewy_bound, cap)
    adj = adjacency_matrix(a.quiver)
    out: List[SemisimpleSequence] = []

    def walk(prefix, remaining):
        if len(prefix) == loewy_bound + 1:
            if not any(remaining):
                out.append(SemisimpleSequence(tuple(prefix)))
            return
        if not prefix:
            bound = remaining
        else:
            reach = _layer_image(prefix[-1], adj)
            bound = tuple(min(r, int(x)) for r, x in zip(remaining, reach))
        if len(prefix) == loewy_bound:
            # last layer takes everything that is left
            if all(r <= b for r, b in zip(remaining, bound)):
                walk(prefix + [tuple(remaining)], (0,) * len(remaining))
            return
        for layer in _bounded_vectors(bound):
            walk(prefix + [layer], tuple(r - x for r, x in zip(remaining, layer)))

    walk([], d)
    logger.debug(f"{len(out)} realizable sequences with total {d} at L={loewy_bound}")
    return out


def _socle_recursion(layers: List[np.ndarray], b: np.ndarray) -> List[np.ndarray]:
    loewy_bound = len(layers) - 1
    zero = np.zeros_like(layers[0])
    if not any(np.any(x) for x in layers):
        return [zero.copy() for _ in layers]

    padded = layers + [zero]

    # top socle layer: sup over the tail sums, clamped at 0
    acc = zero.copy()
    socle0 = zero.copy()
    for j in range(loewy_bound + 1):
        l = loewy_bound - j
        acc = acc + padded[l] - padded[l + 1] @ b
        socle0 = np.maximum(socle0, acc)
    if not np.any(socle0):
        raise LayeringError("Empty generic socle for a nonzero sequence")

    # layering of M / soc M
    quotient = [None] * (loewy_bound + 1)
    quotient[loewy_bound] = zero.copy()
    envelope = zero.copy()
    used = zero.copy()
    for m in range(1, loewy_bound + 1):
        envelope = envelope + padded[loewy_bound - m + 1] @ b
        used = used + quotient[loewy_bound - m + 1]
        quotient[loewy_bound - m] = np.maximum(
            zero, np.minimum(padded[loewy_bound - m], envelope - used)
        )

    rest = _socle_recursion(quotient, b)
    if np.any(rest[-1]):
        raise LayeringError("Quotient socle layering overflows the Loewy bound")
    return [socle0] + rest[:-1]


def generic_socle_layering(s: SemisimpleSequence, a: TruncatedAlgebra) -> SemisimpleSequence:
    """
    Socle layering of the generic module with radical layering ``s``.

    Uses B = A^T: the top socle layer is the componentwise sup of the tail
    sums of S_l - S_{l+1}·B, the radical layering of M/soc M follows from
    the inf-recursion with E_1(X) = X·B, and the remaining socle layers come
    from recursing on that quotient.
    """
    if not is_realizable(s, a):
        raise LayeringError(f"Sequence {s} is not realizable")
    b = adjacency_matrix(a.quiver).T
    layers = [np.array(x, dtype=np.int64) for x in s.layers]
    result = SemisimpleSequence(tuple(tuple(int(v) for v in x) for x in _socle_recursion(layers, b)))
    if result.total() != s.total():
        raise LayeringError(f"Socle recursion lost dimension: {s} -> {result}")
    return result


def generic_radical_layering_hereditary(q: Quiver, d: Sequence[int]) -> SemisimpleSequence:
    """Generic radical layering of Rep_d(KQ) for an acyclic quiver."""
    d = q.check_dim(d)
    loewy_bound = q.longest_path_length()
    if loewy_bound is None:
        raise LayeringError("Generic radical layering requires an acyclic quiver")
    adj = adjacency_matrix(q)
    dv = np.array(d, dtype=np.int64)
    zero = np.zeros_like(dv)
    layers = []
    rest = dv.copy()
    for _ in range(loewy_bound + 1):
        layer = np.maximum(zero, rest - rest @ adj)
        layers.append(tuple(int(x) for x in layer))
        rest = rest - layer
    if np.any(rest):
        raise LayeringError(f"Radical recursion left {tuple(rest)} unassigned")
    return SemisimpleSequence(tuple(layers))


def minimal_pairs(pairs: Sequence[LayeringPair]) -> List[LayeringPair]:
    """
    Minimal elements under the product of dominance orders.

    Candidates are scanned along a linear extension (``rank_key``) and only
    compared with minimal elements already found. Output keeps input order.
    """
    order = sorted(range(len(pairs)), key=lambda i: (pairs[i].rank_key(), i))
    minimal_idx = []
    seen = set()
    for i in order:
        pair = pairs[i]
        if pair in seen:
            continue
        seen.add(pair)
        if not any(pair_leq(pairs[j], pair) for j in minimal_idx):
            minimal_idx.append(i)
    keep = set(minimal_idx)
    return [pairs[i] for i in range(len(pairs)) if i in keep]


def format_layering(s: SemisimpleSequence) -> str:
    """Text form ``"1:1;2:1"``; zero layers are empty segments."""
    segments = []
    for layer in s.layers:
        segments.append(",".join(f"{v + 1}:{m}" for v, m in enumerate(layer) if m))
    return ";".join(segments)


def parse_layering(text: str, n: int, loewy_bound: Optional[int] = None) -> SemisimpleSequence:
    """
    Parse the layering text format.

    Args:
        text: Semicolon-separated layers of ``vertex:multiplicity`` items
        n: Number of vertices
        loewy_bound: Pad with trailing zero layers up to L+1 layers

    Raises:
        LayeringError: On malformed items, unknown vertices or too many layers
    """
    segments = text.strip().split(";")
    layers = []
    for segment in segments:
        layer = [0] * n
        for item in filter(None, (x.strip() for x in segment.split(","))):
            try:
                vertex, mult = (int(x) for x in item.split(":"))
            except ValueError:
                raise LayeringError(f"Malformed layer item '{item}'") from None
            if not 1 <= vertex <= n:
                raise LayeringError(f"Unknown vertex {vertex} in layer item '{item}'")
            if mult < 0:
                raise LayeringError(f"Negative multiplicity in '{item}'")
            layer[vertex - 1] += mult
        layers.append(tuple(layer))
    if loewy_bound is not None:
        if len(layers) > loewy_bound + 1:
            raise LayeringError(
                f"Layering has {len(layers)} layers, at most {loewy_bound + 1} allowed"
            )
        layers.extend([(0,) * n] * (loewy_bound + 1 - len(layers)))
    return SemisimpleSequence(tuple(layers))
