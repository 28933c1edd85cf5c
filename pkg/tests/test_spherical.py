import unittest

import numpy as np
import scipy.linalg
from numpy.testing import assert_allclose
from scipy.stats import ortho_group

from isoforms.errors import NotInGroup
from isoforms.geometry.normal_form import BlockKind, rotation
from isoforms.geometry.numkit import Tolerance
from isoforms.geometry.spherical import classify_spherical, orthogonal_normal_form, spherical_symbol


def conjugated(form: np.ndarray, seed: int) -> np.ndarray:
    q = ortho_group.rvs(dim=form.shape[0], random_state=np.random.default_rng(seed))
    return q @ form @ q.T


class TestOrthogonalNormalForm(unittest.TestCase):
    def test_identity(self):
        result = orthogonal_normal_form(np.eye(3))
        self.assertEqual([(b.kind, b.count) for b in result.form.blocks], [(BlockKind.POS_ID, 3)])
        q = result.conjugator
        assert_allclose(q.T @ q, np.eye(3), atol=1e-12)
        assert_allclose(result.form_matrix, np.eye(3))
        self.assertLessEqual(result.residual, 1e-12)

    def test_rotation_and_reflection(self):
        a = conjugated(scipy.linalg.block_diag(rotation(np.pi / 3), -1.0), seed=1)
        result = orthogonal_normal_form(a)
        blocks = result.form.blocks
        self.assertEqual([b.kind for b in blocks], [BlockKind.ROT, BlockKind.NEG_ID])
        self.assertAlmostEqual(blocks[0].parameter, np.pi / 3, places=10)
        q = result.conjugator
        assert_allclose(q.T @ q, np.eye(3), atol=1e-12)
        assert_allclose(q.T @ a @ q, result.form_matrix, atol=1e-10)

    def test_repeated_rotation_is_unchanged(self):
        form = scipy.linalg.block_diag(rotation(1.0), rotation(1.0))
        result = orthogonal_normal_form(form)
        self.assertEqual(len(result.form.blocks), 1)
        self.assertEqual(result.form.blocks[0].count, 2)
        assert_allclose(result.form_matrix, form, atol=1e-12)

    def test_idempotent(self):
        a = conjugated(scipy.linalg.block_diag(rotation(2.0), rotation(0.4), -np.eye(2)), seed=5)
        first = orthogonal_normal_form(a)
        second = orthogonal_normal_form(first.form_matrix)
        self.assertEqual(
            [(b.kind, b.count) for b in first.form.blocks],
            [(b.kind, b.count) for b in second.form.blocks],
        )
        assert_allclose(first.form.angles, second.form.angles, atol=1e-10)

    def test_determinant_is_preserved(self):
        a = conjugated(scipy.linalg.block_diag(rotation(0.8), 1.0, -1.0), seed=9)
        result = orthogonal_normal_form(a)
        self.assertAlmostEqual(np.linalg.det(result.form_matrix), np.linalg.det(a), places=9)

    def test_not_orthogonal(self):
        with self.assertRaises(NotInGroup):
            orthogonal_normal_form(np.array([[1.0, 0.1], [0.0, 1.0]]))


class TestClassifySpherical(unittest.TestCase):
    def test_examples(self):
        cases = [
            (scipy.linalg.block_diag(rotation(0.5), np.eye(2)), "[(1 1),2]"),
            (scipy.linalg.block_diag(rotation(0.5), -np.eye(2)), "[(1 1),2]"),
            (-np.eye(4), "[4]"),
            (conjugated(scipy.linalg.block_diag(rotation(0.7), rotation(0.7), 1.0), seed=2), "[(2 2),1]"),
        ]
        for matrix, expected in cases:
            with self.subTest(expected=expected):
                self.assertEqual(str(spherical_symbol(matrix)), expected)

    def test_conjugation_invariance(self):
        form = scipy.linalg.block_diag(rotation(0.3), rotation(2.2), 1.0, -1.0, -1.0)
        expected = classify_spherical(form)
        for seed in range(200):
            self.assertEqual(classify_spherical(conjugated(form, seed)), expected)

    def test_close_angles_are_reported(self):
        form = scipy.linalg.block_diag(rotation(1.0), rotation(1.0 + 5e-7))
        result = orthogonal_normal_form(form, Tolerance())
        self.assertTrue(any(d.code == "AmbiguousCluster" for d in result.diagnostics))
        self.assertEqual(len(result.form.blocks), 2)


if __name__ == "__main__":
    unittest.main()
