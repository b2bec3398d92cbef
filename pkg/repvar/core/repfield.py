#!/usr/bin/env python3
"""
Finite-field representation module for repvar.

Concrete representations of a truncated path algebra over GF(q): radical
and socle series, path nullities, homomorphism spaces, subrepresentations,
and a randomized Fitting decomposition into direct summands.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import galois
import numpy as np

from ..utils import linalg
from ..utils.config import Config
from ..utils.seeding import derive_rng
from .layers import SemisimpleSequence
from .quiver import DimVector, Path, TruncatedAlgebra


logger = logging.getLogger(__name__)


class RepresentationError(Exception):
    """Exception raised for inconsistent representations or mismatched operands."""
    pass


class Representation:
    """
    A representation of a truncated path algebra over a finite field.

    Holds one ``d_target x d_source`` matrix per arrow. Construction checks
    the shapes and that every path of length L+1 acts as zero.
    """

    def __init__(self, algebra: TruncatedAlgebra, gf, dims: Sequence[int],
                 matrices: Mapping[str, object], check: bool = True):
        """
        Initialize a representation.

        Args:
            algebra: The truncated algebra acted on
            gf: ``galois`` field class of the matrix entries
            dims: Dimension vector
            matrices: Arrow name -> matrix over ``gf``
            check: Verify shapes and truncation
        """
        self.algebra = algebra
        self.gf = gf
        self.dims: DimVector = algebra.quiver.check_dim(dims)
        self.matrices: Dict[str, object] = {}
        for arrow in algebra.quiver.arrows:
            if arrow.name not in matrices:
                raise RepresentationError(f"Missing matrix for arrow {arrow.name}")
            m = matrices[arrow.name]
            if not isinstance(m, gf):
                m = gf(np.asarray(m, dtype=np.int64) % gf.order)
            expected = (self.dims[arrow.target - 1], self.dims[arrow.source - 1])
            if m.size == 0:
                m = gf.Zeros(expected)
            if m.shape != expected:
                raise RepresentationError(
                    f"Matrix of {arrow.name} has shape {m.shape}, expected {expected}"
                )
            self.matrices[arrow.name] = m
        self.parameters: Optional[Dict[str, int]] = None
        if check:
            if any(radical_series(self)[-1].dims):
                raise RepresentationError("Paths of length L+1 do not act as zero")

    @property
    def characteristic(self) -> int:
        return int(self.gf.characteristic)

    @property
    def degree(self) -> int:
        return int(self.gf.degree)

    @property
    def n(self) -> int:
        return self.algebra.n

    def total_dim(self) -> int:
        return sum(self.dims)

    def matrix(self, name: str):
        return self.matrices[name]

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def to_dict(self) -> dict:
        return {
            "field_order": int(self.gf.order),
            "dims": list(self.dims),
            "matrices": {
                name: np.asarray(m.view(np.ndarray)).astype(int).tolist()
                for name, m in sorted(self.matrices.items())
            },
        }

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims}, field=GF({self.gf.order}))"


@dataclass(frozen=True)
class Subrepresentation:
    """Per-vertex row-reduced subspace bases of an ambient representation."""
    bases: Tuple[object, ...]

    @property
    def dims(self) -> DimVector:
        return tuple(linalg.dim(b) for b in self.bases)


def whole(m: Representation) -> Subrepresentation:
    return Subrepresentation(tuple(linalg.identity(m.gf, d) if d else m.gf.Zeros((0, 0)) for d in m.dims))


def zero_sub(m: Representation) -> Subrepresentation:
    return Subrepresentation(tuple(m.gf.Zeros((0, d)) for d in m.dims))


def radical_of(m: Representation, sub: Subrepresentation) -> Subrepresentation:
    """J·N: the sum of the images of N under all arrows."""
    bases = [m.gf.Zeros((0, d)) for d in m.dims]
    for arrow in m.algebra.quiver.arrows:
        s, t = arrow.source - 1, arrow.target - 1
        img = linalg.image(m.matrices[arrow.name], sub.bases[s], m.dims[t])
        bases[t] = linalg.span_sum(bases[t], img, m.dims[t])
    return Subrepresentation(tuple(bases))


def sub_sum(m: Representation, a: Subrepresentation, b: Subrepresentation) -> Subrepresentation:
    return Subrepresentation(tuple(linalg.span_sum(x, y, d) for x, y, d in zip(a.bases, b.bases, m.dims)))


def sub_intersect(m: Representation, a: Subrepresentation, b: Subrepresentation) -> Subrepresentation:
    return Subrepresentation(tuple(linalg.intersect(x, y, d) for x, y, d in zip(a.bases, b.bases, m.dims)))


def sub_contains(m: Representation, big: Subrepresentation, small: Subrepresentation) -> bool:
    return all(linalg.contains(x, y, d) for x, y, d in zip(big.bases, small.bases, m.dims))


def radical_series(m: Representation) -> List[Subrepresentation]:
    """J^0 M, J^1 M, ..., J^{L+1} M."""
    series = [whole(m)]
    for _ in range(m.algebra.loewy_bound + 1):
        series.append(radical_of(m, series[-1]))
    return series


def socle_series(m: Representation) -> List[Subrepresentation]:
    """soc_0 M within soc_1 M within ... soc_L M (the (l+1)-st socles)."""
    q = m.algebra.quiver
    previous = zero_sub(m)
    series = []
    for _ in range(m.algebra.loewy_bound + 1):
        bases = []
        for v in q.vertices:
            d = m.dims[v - 1]
            rows = []
            for arrow in q.arrows_from(v):
                t = arrow.target - 1
                ann = linalg.annihilator(previous.bases[t], m.dims[t])
                if ann.shape[0]:
                    rows.append(linalg.matmul(ann, m.matrices[arrow.name]))
            if d == 0:
                bases.append(m.gf.Zeros((0, 0)))
            elif rows:
                bases.append(linalg.null_space(m.gf(np.vstack(rows)), d))
            else:
                bases.append(m.gf.Identity(d))
        previous = Subrepresentation(tuple(bases))
        series.append(previous)
    return series


def _layers_from_series(dims_series: List[DimVector], descending: bool) -> SemisimpleSequence:
    layers = []
    for a, b in zip(dims_series, dims_series[1:]):
        hi, lo = (a, b) if descending else (b, a)
        layers.append(tuple(x - y for x, y in zip(hi, lo)))
    return SemisimpleSequence(tuple(layers))


def radical_layering(m: Representation) -> SemisimpleSequence:
    """Layer l is udim J^l M / J^{l+1} M."""
    return _layers_from_series([s.dims for s in radical_series(m)], descending=True)


def socle_layering(m: Representation) -> SemisimpleSequence:
    """Layer l is udim soc_l M / soc_{l-1} M."""
    dims = [(0,) * m.n] + [s.dims for s in socle_series(m)]
    return _layers_from_series(dims, descending=False)


def path_matrix(m: Representation, path: Path):
    """Matrix of ``path`` from e_start M to e_end M."""
    d = m.dims[path.start - 1]
    result = linalg.identity(m.gf, d) if d else m.gf.Zeros((0, 0))
    vertex = path.start
    for name in path.arrows:
        arrow = m.algebra.quiver.arrow(name)
        if arrow.source != vertex:
            raise RepresentationError(f"Path {path.render()} is not composable at {name}")
        result = linalg.matmul(m.matrices[name], result)
        vertex = arrow.target
    return result


def path_nullity(m: Representation, path: Path) -> int:
    """Nullity of the path acting on e_start M."""
    if len(path) > m.algebra.loewy_bound:
        raise RepresentationError(f"Path {path.render()} is longer than the Loewy bound")
    d = m.dims[path.start - 1]
    return d - linalg.rank(path_matrix(m, path))


def path_nullity_profile(m: Representation, paths: Sequence[Path]) -> Tuple[int, ...]:
    return tuple(path_nullity(m, p) for p in paths)


def _check_compatible(m: Representation, n: Representation) -> None:
    if m.algebra != n.algebra:
        raise RepresentationError("Representations over different algebras")
    if m.gf.order != n.gf.order:
        raise RepresentationError(f"Fields differ: GF({m.gf.order}) vs GF({n.gf.order})")


def _hom_system(m: Representation, n: Representation):
    """Coefficient matrix of F_t X_a - Y_a F_s = 0 in the unknowns F_i (n_i x m_i)."""
    gf = m.gf
    offsets = []
    total = 0
    for i in range(m.n):
        offsets.append(total)
        total += n.dims[i] * m.dims[i]
    blocks = []
    for arrow in m.algebra.quiver.arrows:
        s, t = arrow.source - 1, arrow.target - 1
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        block = gf.Zeros((rows, total))
        x, y = m.matrices[arrow.name], n.matrices[arrow.name]
        if n.dims[t] * m.dims[t]:
            left = linalg.block_kron(linalg.identity(gf, n.dims[t]), x.T)
            block[:, offsets[t]:offsets[t] + left.shape[1]] += left
        if n.dims[s] * m.dims[s]:
            right = linalg.block_kron(-y, linalg.identity(gf, m.dims[s]))
            block[:, offsets[s]:offsets[s] + right.shape[1]] += right
        blocks.append(block)
    system = gf(np.vstack(blocks)) if blocks else gf.Zeros((0, total))
    return system, offsets, total


def hom_basis(m: Representation, n: Representation) -> List[Tuple[object, ...]]:
    """Basis of Hom(M, N) as tuples of per-vertex matrices."""
    _check_compatible(m, n)
    system, offsets, total = _hom_system(m, n)
    if total == 0:
        return []
    kernel = linalg.null_space(system, total)
    basis = []
    for row in kernel:
        maps = []
        for i in range(m.n):
            size = n.dims[i] * m.dims[i]
            maps.append(row[offsets[i]:offsets[i] + size].reshape(n.dims[i], m.dims[i]))
        basis.append(tuple(maps))
    return basis


def hom_dim(m: Representation, n: Representation) -> int:
    """dim Hom(M, N) over the common field."""
    _check_compatible(m, n)
    system, _, total = _hom_system(m, n)
    return total - linalg.rank(system)


def end_dim(m: Representation) -> int:
    return hom_dim(m, m)


def simple_representation(algebra: TruncatedAlgebra, vertex: int, gf) -> Representation:
    dims = [0] * algebra.n
    dims[vertex - 1] = 1
    return zero_representation(algebra, gf, dims)


def zero_representation(algebra: TruncatedAlgebra, gf, dims: Sequence[int]) -> Representation:
    """All arrows act as zero on the given dimension vector (a semisimple module)."""
    matrices = {
        a.name: gf.Zeros((dims[a.target - 1], dims[a.source - 1]))
        for a in algebra.quiver.arrows
    }
    return Representation(algebra, gf, dims, matrices, check=False)


def direct_sum(reps: Sequence[Representation]) -> Representation:
    if not reps:
        raise RepresentationError("Direct sum of no representations")
    first = reps[0]
    for other in reps[1:]:
        _check_compatible(first, other)
    gf = first.gf
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(first.n))
    matrices = {}
    for arrow in first.algebra.quiver.arrows:
        s, t = arrow.source - 1, arrow.target - 1
        out = gf.Zeros((dims[t], dims[s]))
        row = col = 0
        for r in reps:
            block = r.matrices[arrow.name]
            out[row:row + r.dims[t], col:col + r.dims[s]] = block
            row += r.dims[t]
            col += r.dims[s]
        matrices[arrow.name] = out
    return Representation(first.algebra, gf, dims, matrices, check=False)


def extend_scalars(m: Representation, degree: int) -> Representation:
    """The same matrices read over GF(p^degree); prime-field entries embed as integers."""
    if degree == m.degree:
        return m
    if m.degree != 1:
        raise RepresentationError("Only prime-field representations can be extended")
    gf = linalg.field(m.characteristic, degree)
    matrices = {name: gf(np.asarray(x.view(np.ndarray))) for name, x in m.matrices.items()}
    rep = Representation(m.algebra, gf, m.dims, matrices, check=False)
    rep.parameters = m.parameters
    return rep


def restrict(m: Representation, sub: Subrepresentation) -> Representation:
    """The subrepresentation as a representation in its row-reduced bases."""
    matrices = {}
    for arrow in m.algebra.quiver.arrows:
        s, t = arrow.source - 1, arrow.target - 1
        bs, bt = sub.bases[s], sub.bases[t]
        if bs.shape[0] == 0 or bt.shape[0] == 0:
            matrices[arrow.name] = m.gf.Zeros((bt.shape[0], bs.shape[0]))
            continue
        images = linalg.matmul(m.matrices[arrow.name], bs.T)
        matrices[arrow.name] = images[linalg.pivots(bt), :]
    return Representation(m.algebra, m.gf, sub.dims, matrices, check=False)


def sample_endomorphism(basis: List[Tuple[object, ...]], gf, rng: np.random.Generator):
    coeffs = rng.integers(0, gf.order, size=len(basis))
    result = [gf.Zeros(b.shape) for b in basis[0]]
    for c, maps in zip(coeffs, basis):
        if c:
            result = [r + gf(int(c)) * f for r, f in zip(result, maps)]
    return result


def _matrix_power(x, k: int):
    result = x
    for _ in range(k - 1):
        result = result @ x
    return result


def _evaluate(poly: galois.Poly, f):
    """poly(f) for a square matrix f, by Horner's rule."""
    gf = type(f)
    d = f.shape[0]
    result = gf.Zeros((d, d))
    for c in poly.coeffs:
        result = result @ f + c * gf.Identity(d)
    return result


def minimal_poly(f) -> galois.Poly:
    """
    Minimal polynomial of a square field matrix.

    Finds the first linear dependency among I, f, f^2, ... (flattened),
    which costs at most d matrix products and d small null spaces.
    """
    gf = type(f)
    d = f.shape[0]
    if d == 0:
        return galois.Poly.One(field=gf)
    power = gf.Identity(d)
    columns = [power.reshape(-1)]
    for k in range(1, d + 1):
        power = power @ f
        columns.append(power.reshape(-1))
        kernel = linalg.null_space(gf(np.stack(columns, axis=1)), k + 1)
        if kernel.shape[0]:
            c = kernel[0]
            # k is minimal, so the kernel is a line and c[k] != 0
            return galois.Poly(c[::-1] / c[k])
    raise RepresentationError(f"No dependency among the first {d + 1} powers")


def _split_pieces(maps) -> List[Tuple[galois.Poly, int]]:
    """Irreducible factors, with multiplicity, of the minimal polynomial of a vertexwise map."""
    polys = [minimal_poly(f) for f in maps if f.shape[0]]
    if not polys:
        return []
    poly = polys[0] if len(polys) == 1 else galois.lcm(*polys)
    if poly.degree == 0:
        return []
    factors, multiplicities = poly.factors()
    return list(zip(factors, multiplicities))


def _fitting_split(m: Representation, maps) -> Optional[List[Subrepresentation]]:
    pieces = _split_pieces(maps)
    if len(pieces) < 2:
        return None
    subs = []
    for factor, mult in pieces:
        bases = []
        for f, d in zip(maps, m.dims):
            if d == 0:
                bases.append(m.gf.Zeros((0, 0)))
                continue
            hf = _matrix_power(_evaluate(factor, f), mult)
            bases.append(linalg.null_space(hf, d))
        subs.append(Subrepresentation(tuple(bases)))
    return [s for s in subs if sum(s.dims)]


def fitting_decompose(m: Representation, seed: int = Config.DEFAULT_SEED,
                      attempts: int = Config.FITTING_ATTEMPTS) -> List[Representation]:
    """
    Split ``m`` into direct summands with random endomorphisms.

    A summand is split into the generalized eigenspaces of a random
    endomorphism, one per irreducible factor of its minimal polynomial.
    A summand that survives ``attempts`` samples without splitting is
    reported as (probably) indecomposable.
    Summand dimension vectors always add up to ``m.dims``.
    """
    pending = [m]
    summands = []
    counter = 0
    while pending:
        rep = pending.pop(0)
        if rep.total_dim() <= 1:
            summands.append(rep)
            continue
        basis = hom_basis(rep, rep)
        split = None
        if len(basis) > 1:
            for attempt in range(attempts):
                rng = derive_rng(seed, counter, attempt)
                maps = sample_endomorphism(basis, rep.gf, rng)
                split = _fitting_split(rep, maps)
                if split:
                    break
        counter += 1
        if split and len(split) > 1:
            logger.debug(f"Split {rep.dims} into {[s.dims for s in split]}")
            pending.extend(restrict(rep, s) for s in split)
        else:
            summands.append(rep)
    return summands
