import unittest

import numpy as np
import scipy.linalg
from scipy.stats import ortho_group

from isoforms.errors import InvariantViolation
from isoforms.geometry.normal_form import THETA, boost, rotation
from isoforms.geometry.orbit import (
    centralizer_dimension_numeric,
    conjugate,
    form_for_symbol,
    generic_representative,
    group_dimension,
    isotropy_dimension,
    lie_algebra_basis,
    orbit_dimension,
    random_group_element,
    same_orbit_type,
)
from isoforms.geometry.segre import Space, enumerate_symbols, parse


class TestIsotropyDimension(unittest.TestCase):
    def test_examples(self):
        cases = [
            (Space.SPHERICAL, 3, "[(2 2)]", 4),
            (Space.SPHERICAL, 3, "[4]", 6),
            (Space.SPHERICAL, 3, "[(1 1),(1 1)]", 2),
            (Space.EUCLIDEAN, 3, "[h;3;0]", 4),
            (Space.EUCLIDEAN, 3, "[e;3;0]", 6),
            (Space.HYPERBOLIC, 3, "[p;4;0]", 2),
            (Space.HYPERBOLIC, 3, "[h;2;(1 1)]", 2),
        ]
        for space, n, text, expected in cases:
            with self.subTest(symbol=text, space=space.value):
                self.assertEqual(isotropy_dimension(parse(text, space, n)), expected)

    def test_orbit_dimension(self):
        sym = parse("[(2 2)]", Space.SPHERICAL, 3)
        self.assertEqual(group_dimension(Space.SPHERICAL, 3), 6)
        self.assertEqual(orbit_dimension(sym), 2)

    def test_identity_has_full_isotropy(self):
        for space in Space:
            for n in range(1, 7):
                identity = enumerate_symbols(space, n)[0]
                with self.subTest(space=space.value, n=n):
                    self.assertEqual(isotropy_dimension(identity), group_dimension(space, n))
                    self.assertEqual(orbit_dimension(identity), 0)

    def test_merging_eigenvalues_grows_isotropy(self):
        pairs = [
            (Space.SPHERICAL, 3, "[(2 2)]", "[(1 1),(1 1)]"),
            (Space.SPHERICAL, 3, "[4]", "[3,1]"),
            (Space.EUCLIDEAN, 3, "[e;0;3]", "[e;0;(1 1),1]"),
            (Space.HYPERBOLIC, 3, "[e;1;3]", "[e;1;(1 1),1]"),
        ]
        for space, n, merged, split in pairs:
            with self.subTest(merged=merged, split=split):
                self.assertGreater(
                    isotropy_dimension(parse(merged, space, n)),
                    isotropy_dimension(parse(split, space, n)),
                )

    def test_rejects_non_symbols(self):
        with self.assertRaises(InvariantViolation):
            isotropy_dimension("[4]")


class TestCentralizer(unittest.TestCase):
    def test_lie_algebra_dimension(self):
        for space in Space:
            for n in range(1, 6):
                self.assertEqual(len(lie_algebra_basis(space, n)), group_dimension(space, n))

    def test_hyperbolic_algebra_is_lorentz(self):
        j = np.diag([-1.0, 1.0, 1.0, 1.0])
        for x in lie_algebra_basis(Space.HYPERBOLIC, 3):
            np.testing.assert_allclose(x.T @ j + j @ x, 0.0)

    def test_examples(self):
        cases = [
            (np.eye(4), Space.SPHERICAL, 6),
            (scipy.linalg.block_diag(rotation(0.9), rotation(0.9)), Space.SPHERICAL, 4),
            (scipy.linalg.block_diag(THETA, 1.0), Space.HYPERBOLIC, 2),
            (scipy.linalg.block_diag(boost(1.0), rotation(0.5)), Space.HYPERBOLIC, 2),
        ]
        for matrix, space, expected in cases:
            self.assertEqual(centralizer_dimension_numeric(matrix, space), expected)

    def test_formula_matches_centralizer(self):
        rng = np.random.default_rng(17)
        for space in Space:
            for n in range(1, 6):
                for sym in enumerate_symbols(space, n):
                    form = generic_representative(sym, rng).matrix()
                    with self.subTest(symbol=str(sym), space=space.value, n=n):
                        self.assertEqual(centralizer_dimension_numeric(form, space), isotropy_dimension(sym))

    def test_conjugation_invariance(self):
        form = scipy.linalg.block_diag(rotation(0.4), rotation(0.4), -1.0)
        expected = centralizer_dimension_numeric(form, Space.SPHERICAL)
        for seed in range(20):
            q = ortho_group.rvs(dim=5, random_state=np.random.default_rng(seed))
            self.assertEqual(centralizer_dimension_numeric(q @ form @ q.T, Space.SPHERICAL), expected)


class TestOrbitType(unittest.TestCase):
    def test_same_orbit_type(self):
        a = scipy.linalg.block_diag(rotation(0.5), np.eye(2))
        b = scipy.linalg.block_diag(rotation(1.3), -np.eye(2))
        self.assertTrue(same_orbit_type(a, b, Space.SPHERICAL))
        self.assertFalse(same_orbit_type(a, -np.eye(4), Space.SPHERICAL))

    def test_conjugates_share_orbit_type(self):
        rng = np.random.default_rng(5)
        sym = parse("[h;2;1,1]", Space.HYPERBOLIC, 3)
        form = form_for_symbol(sym, [], rapidity=0.7).matrix()
        other = conjugate(form, random_group_element(Space.HYPERBOLIC, 3, rng))
        self.assertTrue(same_orbit_type(form, other, Space.HYPERBOLIC))

    def test_form_for_symbol_needs_one_angle_per_rotation(self):
        sym = parse("[(1 1),(1 1)]", Space.SPHERICAL, 3)
        with self.assertRaises(InvariantViolation):
            form_for_symbol(sym, [0.3])


if __name__ == "__main__":
    unittest.main()
