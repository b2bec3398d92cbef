#!/usr/bin/env python3
"""
Unit tests for repfield module.

Tests representation validation, radical and socle series, path nullities,
homomorphism dimensions and the Fitting decomposition.
"""

import time
import unittest

import galois
import numpy as np

from ..core.layers import SemisimpleSequence
from ..core.quiver import Path, Quiver, TruncatedAlgebra
from ..core.repfield import (
    Representation, RepresentationError, direct_sum, end_dim, extend_scalars,
    fitting_decompose, hom_dim, minimal_poly, path_nullity, radical_layering, radical_of,
    simple_representation, socle_layering, whole, zero_representation,
)
from ..utils import linalg


KRONECKER = TruncatedAlgebra(Quiver.from_arrows(2, [("a1", 1, 2), ("a2", 1, 2)]), 1)
LOOP = Quiver.from_arrows(1, [("x", 1, 1)])


def kronecker_module(gf, a1, a2):
    return Representation(KRONECKER, gf, (1, 1), {"a1": [[a1]], "a2": [[a2]]})


def shift(n):
    """Nilpotent Jordan block of size n."""
    return np.eye(n, k=-1, dtype=np.int64)


def jordan_module(gf, sizes):
    """Sum of nilpotent Jordan blocks on the one-loop quiver, Loewy length max(sizes)."""
    blocks = [Representation(TruncatedAlgebra(LOOP, max(sizes) - 1), gf, (k,), {"x": shift(k)})
              for k in sizes]
    return direct_sum(blocks)


def unipotent(gf, d, rng):
    """Random invertible matrix as a product of unipotent triangular ones."""
    p = gf.characteristic
    lower = np.tril(rng.integers(0, p, size=(d, d)), -1) + np.eye(d, dtype=np.int64)
    upper = np.triu(rng.integers(0, p, size=(d, d)), 1) + np.eye(d, dtype=np.int64)
    return gf(lower) @ gf(upper)


def change_basis(m, rng):
    """The same module written in random bases at every vertex."""
    g = [unipotent(m.gf, d, rng) if d else None for d in m.dims]
    matrices = {}
    for arrow in m.algebra.quiver.arrows:
        x = m.matrix(arrow.name)
        s, t = arrow.source - 1, arrow.target - 1
        if x.size:
            x = g[t] @ x @ np.linalg.inv(g[s])
        matrices[arrow.name] = x
    return Representation(m.algebra, m.gf, m.dims, matrices)


class TestRepresentation(unittest.TestCase):
    """Test cases for Representation construction."""

    def setUp(self):
        """Set up GF(7)."""
        self.gf = linalg.field(7)

    def test_shape_mismatch(self):
        """Test matrices must match the dimension vector."""
        with self.assertRaises(RepresentationError):
            Representation(KRONECKER, self.gf, (1, 2), {"a1": [[1]], "a2": [[0]]})

    def test_missing_arrow(self):
        """Test every arrow needs a matrix."""
        with self.assertRaises(RepresentationError):
            Representation(KRONECKER, self.gf, (1, 1), {"a1": [[1]]})

    def test_truncation_violation(self):
        """Test paths longer than L must act as zero."""
        shift = [[0, 0, 0], [1, 0, 0], [0, 1, 0]]
        Representation(TruncatedAlgebra(LOOP, 2), self.gf, (3,), {"x": shift})
        with self.assertRaises(RepresentationError):
            Representation(TruncatedAlgebra(LOOP, 1), self.gf, (3,), {"x": shift})

    def test_full_loewy_length_accepted(self):
        """Test a module of Loewy length exactly L+1 passes the truncation check."""
        for size in (2, 5, 10):
            with self.subTest(size=size):
                a = TruncatedAlgebra(LOOP, size - 1)
                m = Representation(a, self.gf, (size,), {"x": shift(size)})
                self.assertEqual(radical_layering(m).layers, tuple((1,) for _ in range(size)))
                with self.assertRaises(RepresentationError):
                    Representation(TruncatedAlgebra(LOOP, size - 2), self.gf, (size,),
                                   {"x": shift(size)})

    def test_entries_reduced(self):
        """Test integer entries are reduced modulo p."""
        m = kronecker_module(self.gf, 8, -1)
        self.assertEqual(int(m.matrix("a1")[0, 0]), 1)
        self.assertEqual(int(m.matrix("a2")[0, 0]), 6)

    def test_to_dict(self):
        """Test the serializable form."""
        data = kronecker_module(self.gf, 1, 2).to_dict()
        self.assertEqual(data["field_order"], 7)
        self.assertEqual(data["matrices"], {"a1": [[1]], "a2": [[2]]})


class TestLayerings(unittest.TestCase):
    """Test cases for radical and socle layerings."""

    def setUp(self):
        """Set up GF(7)."""
        self.gf = linalg.field(7)

    def test_jordan_block(self):
        """Test a nilpotent Jordan block is uniserial."""
        a = TruncatedAlgebra(LOOP, 2)
        m = Representation(a, self.gf, (3,), {"x": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]})
        uniserial = SemisimpleSequence(((1,), (1,), (1,)))
        self.assertEqual(radical_layering(m), uniserial)
        self.assertEqual(socle_layering(m), uniserial)

    def test_kronecker(self):
        """Test radical and socle layerings of a Kronecker module."""
        m = kronecker_module(self.gf, 1, 3)
        self.assertEqual(radical_layering(m), SemisimpleSequence(((1, 0), (0, 1))))
        self.assertEqual(socle_layering(m), SemisimpleSequence(((0, 1), (1, 0))))
        self.assertEqual(radical_of(m, whole(m)).dims, (0, 1))

    def test_semisimple(self):
        """Test zero arrows give a semisimple layering."""
        m = zero_representation(KRONECKER, self.gf, (2, 1))
        self.assertEqual(radical_layering(m), SemisimpleSequence(((2, 1), (0, 0))))
        self.assertEqual(socle_layering(m), SemisimpleSequence(((2, 1), (0, 0))))

    def test_path_nullity(self):
        """Test nullities of powers of a Jordan block."""
        a = TruncatedAlgebra(LOOP, 2)
        m = Representation(a, self.gf, (3,), {"x": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]})
        self.assertEqual(path_nullity(m, Path(1, ("x",), 1)), 1)
        self.assertEqual(path_nullity(m, Path(1, ("x", "x"), 1)), 2)
        with self.assertRaises(RepresentationError):
            path_nullity(m, Path(1, ("x", "x", "x"), 1))


class TestHom(unittest.TestCase):
    """Test cases for homomorphism spaces."""

    def setUp(self):
        """Set up GF(7) modules."""
        self.gf = linalg.field(7)
        self.m = kronecker_module(self.gf, 1, 3)
        self.s1 = simple_representation(KRONECKER, 1, self.gf)
        self.s2 = simple_representation(KRONECKER, 2, self.gf)

    def test_hom_dims(self):
        """Test Hom dimensions between a brick and the simples."""
        self.assertEqual(end_dim(self.m), 1)
        self.assertEqual(hom_dim(self.s1, self.m), 0)
        self.assertEqual(hom_dim(self.m, self.s1), 1)
        self.assertEqual(hom_dim(self.s2, self.m), 1)
        self.assertEqual(hom_dim(self.m, self.s2), 0)

    def test_direct_sum(self):
        """Test End of a sum of equal simples is a full matrix algebra."""
        twice = direct_sum([self.s1, self.s1])
        self.assertEqual(twice.dims, (2, 0))
        self.assertEqual(end_dim(twice), 4)
        self.assertEqual(end_dim(zero_representation(KRONECKER, self.gf, (1, 1))), 2)

    def test_hom_independent_of_bases(self):
        """Test Hom dimensions do not change under a change of basis at each vertex."""
        rng = np.random.default_rng(11)
        m = direct_sum([self.m, self.s1, kronecker_module(self.gf, 0, 1)])
        n = direct_sum([kronecker_module(self.gf, 1, 3), self.s2, self.s2])
        for trial in range(4):
            with self.subTest(trial=trial):
                m2 = change_basis(m, rng)
                n2 = change_basis(n, rng)
                self.assertEqual(hom_dim(m2, n2), hom_dim(m, n))
                self.assertEqual(hom_dim(n2, m2), hom_dim(n, m))
                self.assertEqual(end_dim(m2), end_dim(m))

    def test_field_mismatch(self):
        """Test Hom over different fields is refused."""
        other = simple_representation(KRONECKER, 1, linalg.field(5))
        with self.assertRaises(RepresentationError):
            hom_dim(self.s1, other)

    def test_extend_scalars(self):
        """Test extension of scalars keeps Hom dimensions."""
        big = extend_scalars(self.m, 2)
        self.assertEqual(big.gf.order, 49)
        self.assertEqual(end_dim(big), 1)
        self.assertIs(extend_scalars(self.m, 1), self.m)


class TestFittingDecompose(unittest.TestCase):
    """Test cases for the randomized Fitting decomposition."""

    def setUp(self):
        """Set up GF(7)."""
        self.gf = linalg.field(7)

    def test_brick_is_kept(self):
        """Test an indecomposable module stays whole."""
        m = kronecker_module(self.gf, 1, 3)
        summands = fitting_decompose(m, seed=1)
        self.assertEqual([s.dims for s in summands], [(1, 1)])

    def test_splits_sum(self):
        """Test M + S1 splits into its two summands."""
        m = direct_sum([kronecker_module(self.gf, 1, 3), simple_representation(KRONECKER, 1, self.gf)])
        summands = fitting_decompose(m, seed=4)
        self.assertEqual(sorted(s.dims for s in summands), [(1, 0), (1, 1)])
        self.assertTrue(all(end_dim(s) == 1 for s in summands))

    def test_dims_add_up(self):
        """Test summand dimension vectors add up for a semisimple module."""
        m = zero_representation(KRONECKER, self.gf, (2, 2))
        for seed in range(5):
            with self.subTest(seed=seed):
                summands = fitting_decompose(m, seed=seed)
                self.assertEqual(tuple(map(sum, zip(*(s.dims for s in summands)))), (2, 2))

    def test_splits_simples(self):
        """Test S1 + S2 splits although every vertex space is a line."""
        m = direct_sum([simple_representation(KRONECKER, 1, self.gf),
                        simple_representation(KRONECKER, 2, self.gf)])
        summands = fitting_decompose(m, seed=0)
        self.assertEqual(sorted(s.dims for s in summands), [(0, 1), (1, 0)])

    def test_splits_equal_dimension_vectors(self):
        """Test two non-isomorphic bricks of the same dimension vector are separated."""
        m = Representation(KRONECKER, self.gf, (2, 2), {"a1": [[1, 0], [0, 1]], "a2": [[2, 0], [0, 3]]})
        summands = fitting_decompose(m, seed=2)
        self.assertEqual(sorted(s.dims for s in summands), [(1, 1), (1, 1)])
        self.assertTrue(all(end_dim(s) == 1 for s in summands))

    def test_irreducible_pencil(self):
        """Test a pencil with an irreducible quadratic stays whole and splits over GF(49)."""
        # t^2 - 3 has no root mod 7
        m = Representation(KRONECKER, self.gf, (2, 2), {"a1": [[1, 0], [0, 1]], "a2": [[0, 3], [1, 0]]})
        self.assertEqual(end_dim(m), 2)
        self.assertEqual([s.dims for s in fitting_decompose(m, seed=3)], [(2, 2)])
        big = fitting_decompose(extend_scalars(m, 2), seed=3)
        self.assertEqual(sorted(s.dims for s in big), [(1, 1), (1, 1)])

    def test_reassembly_keeps_layerings(self):
        """Test the sum of the summands has the radical and socle layerings of the module."""
        modules = [
            direct_sum([kronecker_module(self.gf, 1, 3), simple_representation(KRONECKER, 1, self.gf)]),
            Representation(KRONECKER, self.gf, (2, 2), {"a1": [[1, 0], [0, 1]], "a2": [[2, 0], [0, 3]]}),
            jordan_module(self.gf, (3, 2, 1)),
        ]
        for i, m in enumerate(modules):
            with self.subTest(module=i):
                again = direct_sum(fitting_decompose(m, seed=i))
                self.assertEqual(again.dims, m.dims)
                self.assertEqual(radical_layering(again), radical_layering(m))
                self.assertEqual(socle_layering(again), socle_layering(m))

    def test_large_jordan_block(self):
        """Test a 10-dimensional uniserial module is kept whole quickly."""
        m = jordan_module(self.gf, (10,))
        start = time.perf_counter()
        summands = fitting_decompose(m, seed=5)
        self.assertLess(time.perf_counter() - start, 10.0)
        self.assertEqual([s.dims for s in summands], [(10,)])

    def test_two_jordan_blocks(self):
        """Test a sum of two equal Jordan blocks splits for some seed."""
        m = jordan_module(self.gf, (5, 5))
        results = [sorted(s.dims for s in fitting_decompose(m, seed=seed)) for seed in range(5)]
        for dims in results:
            self.assertIn(dims, ([(10,)], [(5,), (5,)]))
        self.assertIn([(5,), (5,)], results)


class TestMinimalPoly(unittest.TestCase):
    """Test cases for minimal polynomials of field matrices."""

    def setUp(self):
        """Set up GF(7)."""
        self.gf = linalg.field(7)

    def test_small_matrices(self):
        """Test minimal polynomials of scalar, diagonal and nilpotent matrices."""
        gf = self.gf
        self.assertEqual(minimal_poly(gf([[4]])), galois.Poly([1, -4 % 7], field=gf))
        self.assertEqual(minimal_poly(gf([[2, 0], [0, 2]])), galois.Poly([1, 5], field=gf))
        self.assertEqual(minimal_poly(gf([[2, 0], [0, 3]])),
                         galois.Poly([1, 5], field=gf) * galois.Poly([1, 4], field=gf))
        self.assertEqual(minimal_poly(gf(shift(4))), galois.Poly([1, 0, 0, 0, 0], field=gf))
        self.assertEqual(minimal_poly(gf.Zeros((0, 0))), galois.Poly.One(field=gf))

    def test_annihilates_random_matrices(self):
        """Test the minimal polynomial kills the matrix and divides the characteristic one."""
        rng = np.random.default_rng(3)
        for d in (1, 3, 6):
            with self.subTest(d=d):
                f = linalg.random_matrix(self.gf, d, d, rng)
                poly = minimal_poly(f)
                value = self.gf.Zeros((d, d))
                for c in poly.coeffs:
                    value = value @ f + c * self.gf.Identity(d)
                self.assertFalse(np.any(value))
                self.assertLessEqual(poly.degree, d)
                self.assertEqual(int(poly.coeffs[0]), 1)


if __name__ == '__main__':
    unittest.main()
