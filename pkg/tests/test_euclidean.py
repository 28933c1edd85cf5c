import unittest

import numpy as np
import scipy.linalg
from numpy.testing import assert_allclose

from isoforms.errors import NotInGroup, UnsupportedDimension
from isoforms.geometry.euclidean import (
    classify_euclidean,
    euclidean_normal_form,
    euclidean_symbol,
    fixed_point_dimension,
)
from isoforms.geometry.normal_form import BlockKind, rotation
from isoforms.geometry.orbit import conjugate, random_group_element
from isoforms.geometry.segre import IsometryKind, Space


def affine(linear: np.ndarray, translation) -> np.ndarray:
    n = linear.shape[0]
    m = np.eye(n + 1)
    m[:n, :n] = linear
    m[:n, n] = translation
    return m


def screw(theta: float, a: float) -> np.ndarray:
    """Rotation about the third axis composed with a translation of length a along it."""
    return affine(scipy.linalg.block_diag(rotation(theta), 1.0), [0.0, 0.0, a])


class TestEuclideanNormalForm(unittest.TestCase):
    def test_pure_translation_is_unchanged(self):
        m = np.array([[1.0, 2.5], [0.0, 1.0]])
        result = euclidean_normal_form(m)
        self.assertEqual([b.kind for b in result.form.blocks], [BlockKind.TRANS])
        self.assertAlmostEqual(result.form.translation_length, 2.5, places=12)
        assert_allclose(result.form_matrix, m, atol=1e-12)

    def test_identity(self):
        result = euclidean_normal_form(np.eye(3))
        self.assertEqual([(b.kind, b.count) for b in result.form.blocks], [(BlockKind.POS_ID, 3)])
        self.assertEqual(str(euclidean_symbol(np.eye(3))), "[e;2;0]")

    def test_screw_motion_round_trip(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            q = random_group_element(Space.EUCLIDEAN, 3, rng)
            m = conjugate(screw(0.9, 1.7), q)
            result = euclidean_normal_form(m)
            self.assertEqual(
                [b.kind for b in result.form.blocks], [BlockKind.ROT, BlockKind.TRANS]
            )
            self.assertAlmostEqual(result.form.translation_length, 1.7, delta=1e-8)
            self.assertAlmostEqual(result.form.angles[0], 0.9, delta=1e-8)
            conj = result.conjugator
            assert_allclose(conj[3], [0.0, 0.0, 0.0, 1.0], atol=1e-15)
            assert_allclose(conj[:3, :3].T @ conj[:3, :3], np.eye(3), atol=1e-9)
            assert_allclose(np.linalg.solve(conj, m @ conj), result.form_matrix, atol=1e-9)

    def test_normal_form_classifies_like_input(self):
        rng = np.random.default_rng(4)
        q = random_group_element(Space.EUCLIDEAN, 3, rng)
        m = conjugate(affine(np.diag([-1.0, 1.0, 1.0]), [0.0, 0.3, 0.0]), q)
        result = euclidean_normal_form(m)
        self.assertEqual(euclidean_symbol(result.form_matrix), euclidean_symbol(m))


class TestClassifyEuclidean(unittest.TestCase):
    def test_examples(self):
        cases = [
            (affine(-np.eye(2), [0.4, -1.0]), "[e;0;2]"),
            (affine(np.diag([-1.0, 1.0]), [0.0, 2.0]), "[h;1;1]"),
            (affine(scipy.linalg.block_diag(rotation(1.2), 1.0), [3.0, -2.0, 0.0]), "[e;1;(1 1)]"),
            (screw(0.9, 1.7), "[h;1;(1 1)]"),
            (affine(np.eye(3), [1.0, 2.0, 2.0]), "[h;3;0]"),
        ]
        for matrix, expected in cases:
            with self.subTest(expected=expected):
                self.assertEqual(str(euclidean_symbol(matrix)), expected)

    def test_kind_matches_fixed_points(self):
        self.assertEqual(fixed_point_dimension(affine(-np.eye(2), [0.4, -1.0])), 0)
        self.assertEqual(fixed_point_dimension(affine(np.diag([-1.0, 1.0]), [1.0, 0.0])), 1)
        self.assertEqual(fixed_point_dimension(screw(0.9, 1.7)), -1)
        self.assertIs(classify_euclidean(screw(0.9, 1.7)).kind, IsometryKind.HYPERBOLIC)

    def test_translation_length_is_the_displacement_along_the_axis(self):
        # reflection in a line composed with an oblique translation: glide of length 2
        m = affine(np.diag([-1.0, 1.0]), [5.0, 2.0])
        result = euclidean_normal_form(m)
        self.assertAlmostEqual(result.form.translation_length, 2.0, places=12)

    def test_bad_shape(self):
        with self.assertRaises(NotInGroup):
            classify_euclidean(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.1, 0.0, 1.0]]))
        with self.assertRaises(NotInGroup):
            classify_euclidean(affine(np.array([[1.0, 0.2], [0.0, 1.0]]), [0.0, 0.0]))
        with self.assertRaises(UnsupportedDimension):
            classify_euclidean(np.eye(1))


if __name__ == "__main__":
    unittest.main()
