"""Orthogonal normal forms and Segre symbols for isometries of S^n."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from isoforms.errors import InternalInconsistency, NotInGroup
from isoforms.geometry.normal_form import (
    Block,
    BlockKind,
    ConjugationResult,
    Diagnostic,
    NormalForm,
    conclude,
)
from isoforms.geometry.numkit import (
    Matrix,
    Tolerance,
    as_matrix,
    inf_norm,
    rank_kernel,
    require_square,
)
from isoforms.geometry.segre import SegreSymbol, SphericalSegre, Space

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrthogonalDecomposition:
    """Orthonormal basis in which an orthogonal matrix is in normal form."""

    blocks: tuple[Block, ...]
    basis: Matrix
    diagnostics: tuple[Diagnostic, ...]

    @property
    def symbol(self) -> SphericalSegre:
        return symbol_of_blocks(self.blocks)


def symbol_of_blocks(blocks: tuple[Block, ...] | list[Block]) -> SphericalSegre:
    rotations = sorted((b.count for b in blocks if b.kind is BlockKind.ROT), reverse=True)
    reals = sorted(
        (b.count for b in blocks if b.kind in (BlockKind.POS_ID, BlockKind.NEG_ID)),
        reverse=True,
    )
    return SphericalSegre(tuple(rotations), tuple(reals))


def check_orthogonal(a: Matrix, tol: Tolerance) -> float:
    require_square(a)
    residual = inf_norm(a.T @ a - np.eye(a.shape[0]))
    if residual > tol.residual_tol:
        raise NotInGroup(f"matrix is not orthogonal (residual {residual:.3e})", residual)
    return residual


def _rotation_planes(a_w: Matrix, cluster: Matrix, tol: Tolerance) -> tuple[list[Matrix], list[float]]:
    """Split an invariant subspace with one rotation angle into planes.

    In each plane (x, y) the restriction of ``a_w`` is R(theta), theta in (0, pi).
    """
    planes: list[Matrix] = []
    angles: list[float] = []
    remaining = cluster
    while remaining.shape[1]:
        x = remaining[:, 0]
        ax = a_w @ x
        c = float(x @ ax)
        v = ax - c * x
        v = remaining @ (remaining.T @ v)
        s = float(np.linalg.norm(v))
        if s <= tol.rank_tol:
            raise InternalInconsistency("rotation plane degenerated to a real eigenvector")
        y = v / s
        planes.append(np.column_stack([x, y]))
        angles.append(float(np.arctan2(s, c)))
        _, kernel = rank_kernel((remaining.T @ np.column_stack([x, y])).T, tol)
        if kernel.shape[1] != remaining.shape[1] - 2:
            raise InternalInconsistency("rotation planes are not independent")
        remaining = remaining @ kernel
    return planes, angles


def orthogonal_decomposition(a: Matrix, tol: Tolerance) -> OrthogonalDecomposition:
    """Normal form of an orthogonal matrix given in orthonormal coordinates."""
    dim = a.shape[0]
    if dim == 0:
        return OrthogonalDecomposition((), np.zeros((0, 0)), ())
    diagnostics: list[Diagnostic] = []
    _, k_plus = rank_kernel(a - np.eye(dim), tol, tol.unit_tol)
    _, k_minus = rank_kernel(a + np.eye(dim), tol, tol.unit_tol)
    real_part = np.hstack([k_plus, k_minus])
    if real_part.shape[1]:
        _, w = rank_kernel(real_part.T, tol)
    else:
        w = np.eye(dim)
    if w.shape[1] % 2:
        raise InternalInconsistency(
            f"non-real part has odd dimension {w.shape[1]}; tolerances are mis-set"
        )

    rotation_blocks: list[tuple[Block, Matrix]] = []
    if w.shape[1]:
        a_w = w.T @ a @ w
        cosines, vectors = np.linalg.eigh((a_w + a_w.T) / 2.0)
        angles = np.arccos(np.clip(cosines, -1.0, 1.0))
        order = np.argsort(-angles)
        angles, vectors = angles[order], vectors[:, order]

        groups: list[list[int]] = [[0]]
        for i in range(1, angles.size):
            gap = angles[groups[-1][-1]] - angles[i]
            if gap <= tol.angle_tol:
                groups[-1].append(i)
            else:
                if gap <= 10 * tol.angle_tol:
                    diagnostics.append(
                        Diagnostic(
                            "AmbiguousCluster",
                            f"rotation angles {angles[i - 1]:.12g} and {angles[i]:.12g} "
                            f"differ by {gap:.3e}",
                        )
                    )
                groups.append([i])

        for group in groups:
            if len(group) % 2:
                raise InternalInconsistency(
                    f"rotation angle {angles[group[0]]:.12g} has odd multiplicity"
                )
            planes, plane_angles = _rotation_planes(a_w, vectors[:, group], tol)
            theta = float(np.mean(plane_angles))
            if min(theta, np.pi - theta) <= 10 * tol.angle_tol:
                diagnostics.append(
                    Diagnostic("AmbiguousCluster", f"rotation angle {theta:.3e} is close to 0 or pi")
                )
            rotation_blocks.append((Block.rot(theta, len(planes)), w @ np.hstack(planes)))

    rotation_blocks.sort(key=lambda item: (-item[0].count, -item[0].parameter))
    blocks = [b for b, _ in rotation_blocks]
    columns = [basis for _, basis in rotation_blocks]
    if k_plus.shape[1]:
        blocks.append(Block.pos_id(k_plus.shape[1]))
        columns.append(k_plus)
    if k_minus.shape[1]:
        blocks.append(Block.neg_id(k_minus.shape[1]))
        columns.append(k_minus)

    for d in diagnostics:
        logger.warning(d.message)
    basis = np.hstack(columns) if columns else np.zeros((dim, 0))
    return OrthogonalDecomposition(tuple(blocks), basis, tuple(diagnostics))


def orthogonal_normal_form(a: ArrayLike, tol: Tolerance | None = None) -> ConjugationResult:
    tol = tol or Tolerance()
    a = as_matrix(a)
    check_orthogonal(a, tol)
    decomposition = orthogonal_decomposition(a, tol)
    q = decomposition.basis
    logger.info(f"orthogonal normal form {NormalForm(decomposition.blocks).descriptor()}")
    group_residual = inf_norm(q.T @ q - np.eye(q.shape[0]))
    return conclude(
        a, NormalForm(decomposition.blocks), q, group_residual, tol, decomposition.diagnostics
    )


def classify_spherical(a: ArrayLike, tol: Tolerance | None = None) -> SphericalSegre:
    tol = tol or Tolerance()
    a = as_matrix(a)
    check_orthogonal(a, tol)
    return orthogonal_decomposition(a, tol).symbol


def spherical_symbol(a: ArrayLike, tol: Tolerance | None = None) -> SegreSymbol:
    """Classification wrapped as a full symbol of I(S^n), n = size - 1."""
    sigma = classify_spherical(a, tol)
    return SegreSymbol(Space.SPHERICAL, sigma.dimension - 1, sigma)
