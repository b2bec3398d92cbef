"""
Subspace arithmetic over finite fields.

Thin layer over ``galois`` field arrays. Subspaces of F^n are stored as
row-reduced bases (shape ``k x n``); the empty subspace is a ``0 x n``
array. All helpers accept and return such bases and take care of the
zero-size shapes that the underlying routines do not handle.
"""

import itertools
import logging
from functools import lru_cache
from typing import Iterator, List

import galois
import numpy as np


logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def field(p: int, degree: int = 1):
    """The field GF(p^degree) as a ``galois`` FieldArray class."""
    return galois.GF(p ** degree)


def identity(gf, n: int):
    if n == 0:
        return gf.Zeros((0, 0))
    return gf.Identity(n)


def matmul(a, b):
    """Matrix product tolerant of zero-size operands."""
    gf = type(a)
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return gf.Zeros((a.shape[0], b.shape[1]))
    return a @ b


def random_matrix(gf, rows: int, cols: int, rng: np.random.Generator, nonzero: bool = False):
    """Uniform random matrix over ``gf`` (entries in F^* when ``nonzero``)."""
    low = 1 if nonzero else 0
    values = rng.integers(low, gf.order, size=(rows, cols))
    return gf(values)


def rref(rows, n: int):
    """Row-reduced basis of the span of ``rows`` (zero rows dropped)."""
    gf = type(rows)
    if rows.shape[0] == 0 or n == 0:
        return gf.Zeros((0, n))
    reduced = rows.row_reduce()
    mask = np.any(reduced != 0, axis=1)
    return reduced[mask]


def pivots(basis) -> List[int]:
    """Pivot columns of a row-reduced basis."""
    cols = []
    for row in basis:
        nz = np.flatnonzero(row != 0)
        cols.append(int(nz[0]))
    return cols


def dim(basis) -> int:
    return int(basis.shape[0])


def span_sum(a, b, n: int):
    gf = type(a)
    if a.shape[0] == 0:
        return rref(b, n)
    if b.shape[0] == 0:
        return rref(a, n)
    return rref(gf(np.vstack([a, b])), n)


def null_space(x, n: int):
    """Row basis of {v in F^n : x v = 0}."""
    gf = type(x)
    if n == 0:
        return gf.Zeros((0, 0))
    if x.shape[0] == 0 or not np.any(x != 0):
        return gf.Identity(n)
    ns = x.null_space()
    if ns.shape[0] == 0:
        return gf.Zeros((0, n))
    return rref(ns, n)


def annihilator(basis, n: int):
    """Row basis of the vectors orthogonal to every row of ``basis``."""
    return null_space(basis, n)


def intersect(a, b, n: int):
    gf = type(a)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return gf.Zeros((0, n))
    stacked = np.vstack([annihilator(a, n), annihilator(b, n)])
    return null_space(gf(stacked.reshape(-1, n)), n)


def image(x, basis, n_target: int):
    """Row basis of x(U) for U spanned by ``basis``; x maps F^{n_source} -> F^{n_target}."""
    gf = type(x)
    if basis.shape[0] == 0 or n_target == 0:
        return gf.Zeros((0, n_target))
    return rref(matmul(basis, x.T), n_target)


def contains(big, small, n: int) -> bool:
    """True iff span(small) is a subspace of span(big)."""
    if small.shape[0] == 0:
        return True
    return dim(span_sum(big, small, n)) == dim(big)


def complement_basis(sub, sup, n: int):
    """Rows of ``sup`` completing a basis of ``sub`` to one of sub + sup."""
    gf = type(sup)
    current = sub
    chosen = []
    for row in sup:
        candidate = span_sum(current, gf(row.reshape(1, n)), n)
        if dim(candidate) > dim(current):
            chosen.append(row)
            current = candidate
    if not chosen:
        return gf.Zeros((0, n))
    return gf(np.vstack(chosen))


def rank(x) -> int:
    if x.shape[0] == 0 or x.shape[1] == 0:
        return 0
    return int(np.linalg.matrix_rank(x))


def block_kron(a, b):
    """Kronecker product of two field matrices."""
    gf = type(a)
    ra, ca = a.shape
    rb, cb = b.shape
    out = gf.Zeros((ra * rb, ca * cb))
    for i in range(ra):
        for j in range(ca):
            if a[i, j] != 0:
                out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = a[i, j] * b
    return out


def grassmannian(gf, k: int, n: int) -> Iterator:
    """
    All k-dimensional subspaces of GF^n, as row-reduced k x n bases.

    Enumerated pivot set by pivot set in lexicographic order; within a pivot
    set the free entries (right of each pivot, outside pivot columns) run
    through all field elements.
    """
    if k == 0:
        yield gf.Zeros((0, n))
        return
    if k > n:
        return
    order = gf.order
    for pivot_cols in itertools.combinations(range(n), k):
        pivot_set = set(pivot_cols)
        free = [(i, j) for i, pc in enumerate(pivot_cols)
                for j in range(pc + 1, n) if j not in pivot_set]
        base = np.zeros((k, n), dtype=np.int64)
        for i, pc in enumerate(pivot_cols):
            base[i, pc] = 1
        for values in itertools.product(range(order), repeat=len(free)):
            m = base.copy()
            for (i, j), v in zip(free, values):
                m[i, j] = v
            yield gf(m)
