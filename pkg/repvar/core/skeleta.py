#!/usr/bin/env python3
"""
Skeleta module for repvar.

Abstract skeleta (path forests with prescribed layer counts), their
critical paths, the generic-module presentation attached to a skeleton,
and specialization of that presentation into a concrete representation
over a finite field.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy

from ..utils import linalg
from ..utils.config import Config
from ..utils.seeding import derive_rng
from .layers import SemisimpleSequence, is_realizable
from .quiver import Path, TruncatedAlgebra
from .repfield import Representation, radical_layering


logger = logging.getLogger(__name__)


class SkeletonError(Exception):
    """Exception raised when a skeleton or presentation cannot be built."""
    pass


class SpecializationError(SkeletonError):
    """Exception raised when no specialization with the right layering was found."""
    pass


@dataclass(frozen=True)
class Element:
    """The path ``path`` applied to top element ``z_top`` (tops numbered from 1)."""
    top: int
    path: Path

    @property
    def end(self) -> int:
        return self.path.end

    @property
    def sort_key(self):
        return (len(self.path), self.top, self.path.arrows)

    def render(self) -> str:
        return self.path.render(suffix=f"z{self.top}")


@dataclass(frozen=True)
class Skeleton:
    """
    A path forest: one tree per top element, closed under initial subpaths.

    ``tops[r-1]`` is the vertex of top element ``z_r``; ``paths`` is sorted
    by (length, top index, arrow names), which is also the basis order of
    every matrix model built from this skeleton.
    """
    tops: Tuple[int, ...]
    paths: Tuple[Element, ...]
    layering: SemisimpleSequence

    def __contains__(self, element: Element) -> bool:
        return element in self._members()

    def _members(self):
        cached = self.__dict__.get("_member_set")
        if cached is None:
            cached = frozenset(self.paths)
            object.__setattr__(self, "_member_set", cached)
        return cached

    def basis_at(self, vertex: int) -> List[Element]:
        return [e for e in self.paths if e.end == vertex]

    def to_dict(self) -> dict:
        return {
            "tops": list(self.tops),
            "paths": [e.render() for e in self.paths],
        }


@dataclass(frozen=True)
class Relation:
    """``critical - sum(parameter * element)``; an empty sum means ``critical = 0``."""
    critical: Element
    terms: Tuple[Tuple[str, Element], ...]

    def render(self) -> str:
        text = self.critical.render()
        for name, element in self.terms:
            text += f" - {name}*{element.render()}"
        return text

    def render_equation(self) -> str:
        if not self.terms:
            return f"{self.critical.render()} = 0"
        rhs = " + ".join(f"{name}*{element.render()}" for name, element in self.terms)
        return f"{self.critical.render()} = {rhs}"


@dataclass(frozen=True)
class GenericPresentation:
    """Generic module P_0 / R(skeleton) with free parameters x1, x2, ..."""
    skeleton: Skeleton
    relations: Tuple[Relation, ...]
    parameters: Tuple[str, ...]
    loewy_bound: int

    @property
    def layering(self) -> SemisimpleSequence:
        return self.skeleton.layering

    def relation_for(self, critical: Element) -> Relation:
        for relation in self.relations:
            if relation.critical == critical:
                return relation
        raise SkeletonError(f"{critical.render()} is not a critical path of this skeleton")

    def symbols(self) -> Dict[str, sympy.Symbol]:
        return {name: sympy.Symbol(name) for name in self.parameters}

    def render(self) -> List[str]:
        return [r.render_equation() for r in self.relations]

    def to_dict(self) -> dict:
        return {
            "skeleton": self.skeleton.to_dict(),
            "parameters": list(self.parameters),
            "relations": [
                {
                    "critical": r.critical.render(),
                    "terms": [[name, e.render()] for name, e in r.terms],
                    "text": r.render(),
                }
                for r in self.relations
            ],
        }


def _tops_of(s: SemisimpleSequence) -> Tuple[int, ...]:
    tops = []
    for vertex, mult in enumerate(s[0], start=1):
        tops.extend([vertex] * mult)
    return tuple(tops)


def iter_skeleta(s: SemisimpleSequence, a: TruncatedAlgebra) -> Iterator[Skeleton]:
    """Skeleta with layering ``s`` in deterministic order."""
    if s.n != a.n or s.loewy_bound != a.loewy_bound:
        raise SkeletonError(f"Layering {s} does not fit the algebra")
    tops = _tops_of(s)
    layer0 = [Element(r, Path(v)) for r, v in enumerate(tops, start=1)]

    def extend(chosen: List[Element], frontier: List[Element], l: int):
        if l == s.loewy_bound:
            yield Skeleton(tops, tuple(sorted(chosen, key=lambda e: e.sort_key)), s)
            return
        need = s[l + 1]
        candidates: Dict[int, List[Element]] = {v: [] for v in range(1, a.n + 1)}
        for element in frontier:
            for arrow in a.quiver.arrows_from(element.end):
                candidates[arrow.target].append(Element(element.top, element.path.extend(arrow)))
        per_vertex = []
        for v in range(1, a.n + 1):
            pool = sorted(candidates[v], key=lambda e: e.sort_key)
            if len(pool) < need[v - 1]:
                return
            per_vertex.append(list(itertools.combinations(pool, need[v - 1])))
        for choice in itertools.product(*per_vertex):
            layer = [e for group in choice for e in group]
            yield from extend(chosen + layer, layer, l + 1)

    yield from extend(list(layer0), layer0, 0)


def enumerate_skeleta(s: SemisimpleSequence, a: TruncatedAlgebra,
                      limit: Optional[int] = None) -> List[Skeleton]:
    """All skeleta with layering ``s``; empty iff ``s`` is not realizable."""
    return list(itertools.islice(iter_skeleta(s, a), limit))


def critical_paths(sk: Skeleton, a: TruncatedAlgebra) -> List[Element]:
    """
    Paths one arrow outside the skeleton, of length at most L.

    Listed by length, then top, then with arrows declared later coming
    first position by position.
    """
    order = {arrow.name: i for i, arrow in enumerate(a.quiver.arrows)}
    critical = []
    for element in sk.paths:
        if len(element.path) >= a.loewy_bound:
            continue
        for arrow in a.quiver.arrows_from(element.end):
            candidate = Element(element.top, element.path.extend(arrow))
            if candidate not in sk:
                critical.append(candidate)
    return sorted(critical, key=lambda e: (len(e.path), e.top, tuple(-order[x] for x in e.path.arrows)))


def generic_presentation(s: SemisimpleSequence, a: TruncatedAlgebra,
                         sk: Optional[Skeleton] = None) -> GenericPresentation:
    """
    Presentation of the generic module with radical layering ``s``.

    One relation per critical path q·z_r, expanding it over the skeleton
    paths p·z_s with the same terminal vertex and length >= len(q).

    Raises:
        SkeletonError: If ``s`` is not realizable or ``sk`` has another layering
    """
    if not is_realizable(s, a):
        raise SkeletonError(f"Layering {s} is not realizable")
    if sk is None:
        sk = next(iter_skeleta(s, a), None)
        if sk is None:
            raise SkeletonError(f"No skeleton for {s}")
    elif sk.layering != s:
        raise SkeletonError(f"Skeleton layering {sk.layering} differs from {s}")

    relations = []
    parameters = []
    for crit in critical_paths(sk, a):
        terms = []
        for element in sk.paths:
            if element.end == crit.end and len(element.path) >= len(crit.path):
                name = f"x{len(parameters) + 1}"
                parameters.append(name)
                terms.append((name, element))
        relations.append(Relation(crit, tuple(terms)))

    logger.debug(f"Presentation of {s}: {len(relations)} relations, {len(parameters)} parameters")
    return GenericPresentation(sk, tuple(relations), tuple(parameters), a.loewy_bound)


def _apply_arrow(gp: GenericPresentation, a: TruncatedAlgebra, element: Element, arrow_name: str):
    """Image of a skeleton basis element under an arrow, as (coefficient symbol or 1, element) terms."""
    arrow = a.quiver.arrow(arrow_name)
    if arrow.source != element.end or len(element.path) + 1 > gp.loewy_bound:
        return []
    image = Element(element.top, element.path.extend(arrow))
    if image in gp.skeleton:
        return [(None, image)]
    return list(gp.relation_for(image).terms)


def reduce_path(gp: GenericPresentation, a: TruncatedAlgebra, top: int,
                arrows: Sequence[str]) -> Dict[Element, sympy.Expr]:
    """
    Expand ``path * z_top`` in the skeleton basis.

    ``arrows`` are given in application order. Returns the nonzero
    coefficients as polynomials in the presentation parameters.
    """
    if not 1 <= top <= len(gp.skeleton.tops):
        raise SkeletonError(f"Unknown top element z{top}")
    symbols = gp.symbols()
    vector: Dict[Element, sympy.Expr] = {Element(top, Path(gp.skeleton.tops[top - 1])): sympy.Integer(1)}
    for name in arrows:
        image: Dict[Element, sympy.Expr] = {}
        for element, coeff in vector.items():
            for param, target in _apply_arrow(gp, a, element, name):
                factor = symbols[param] if param else sympy.Integer(1)
                image[target] = image.get(target, sympy.Integer(0)) + coeff * factor
        vector = {e: sympy.expand(c) for e, c in image.items()}
        vector = {e: c for e, c in vector.items() if c != 0}
    return vector


def _model_matrices(gp: GenericPresentation, a: TruncatedAlgebra, gf,
                    values: Mapping[str, int]):
    position = {}
    dims = [0] * a.n
    for element in gp.skeleton.paths:
        position[element] = dims[element.end - 1]
        dims[element.end - 1] += 1
    matrices = {}
    for arrow in a.quiver.arrows:
        m = np.zeros((dims[arrow.target - 1], dims[arrow.source - 1]), dtype=np.int64)
        for element in gp.skeleton.basis_at(arrow.source):
            col = position[element]
            for param, target in _apply_arrow(gp, a, element, arrow.name):
                m[position[target], col] = 1 if param is None else values[param] % gf.order
        matrices[arrow.name] = gf(m)
    return tuple(dims), matrices


def specialize(gp: GenericPresentation, a: TruncatedAlgebra, p: int = Config.LARGE_PRIME,
               assignment: Optional[Mapping[str, int]] = None, seed: int = Config.DEFAULT_SEED,
               retries: int = Config.SPECIALIZATION_RETRIES, degree: int = 1) -> Representation:
    """
    Matrix model of the generic module over GF(p^degree).

    Parameters come from ``assignment`` when given, otherwise they are
    uniform nonzero field elements drawn from ``seed``. The model is
    accepted once its radical layering equals the presentation's.

    Raises:
        SpecializationError: If ``retries`` draws all fail the layering check
    """
    gf = linalg.field(p, degree)
    for attempt in range(max(1, retries)):
        if assignment is not None:
            missing = [x for x in gp.parameters if x not in assignment]
            if missing:
                raise SkeletonError(f"Assignment misses parameters {missing}")
            values = dict(assignment)
        else:
            rng = derive_rng(seed, attempt)
            drawn = rng.integers(1, gf.order, size=len(gp.parameters))
            values = {name: int(v) for name, v in zip(gp.parameters, drawn)}
        dims, matrices = _model_matrices(gp, a, gf, values)
        # a layering with the full total also certifies that J^(L+1) acts as zero
        rep = Representation(a, gf, dims, matrices, check=False)
        if radical_layering(rep) == gp.layering:
            rep.parameters = values
            return rep
        logger.debug(f"Specialization attempt {attempt} of {gp.layering} has the wrong layering")
        if assignment is not None:
            break
    raise SpecializationError(
        f"No specialization of {gp.layering} over GF({p}^{degree}) matched its layering"
    )
