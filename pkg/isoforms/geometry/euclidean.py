"""Euclidean normal forms and Segre symbols for isometries of E^n.

Isometries are affine matrices of size n+1 with last row (0, ..., 0, 1) and
an orthogonal upper-left block.
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike

from isoforms.errors import InternalInconsistency, NotInGroup, UnsupportedDimension
from isoforms.geometry.normal_form import Block, BlockKind, ConjugationResult, NormalForm, conclude
from isoforms.geometry.numkit import Matrix, Tolerance, as_matrix, inf_norm, rank_kernel, require_square
from isoforms.geometry.segre import EuclideanSegre, IsometryKind, SegreSymbol, Space
from isoforms.geometry.spherical import check_orthogonal, orthogonal_decomposition

logger = logging.getLogger(__name__)


def check_euclidean(m: Matrix, tol: Tolerance) -> float:
    """Validate the affine shape; returns the orthogonality residual."""
    require_square(m)
    n = m.shape[0] - 1
    if n < 1:
        raise UnsupportedDimension("Euclidean isometries need n >= 1")
    last_row = np.zeros(n + 1)
    last_row[n] = 1.0
    shape_residual = inf_norm(m[n] - last_row)
    if shape_residual > tol.residual_tol:
        raise NotInGroup(
            f"last row must be (0, ..., 0, 1) (residual {shape_residual:.3e})", shape_residual
        )
    return check_orthogonal(m[:n, :n], tol)


def _decompose(m: Matrix, tol: Tolerance):
    n = m.shape[0] - 1
    a = m[:n, :n]
    b = m[:n, n]

    _, k_plus = rank_kernel(a - np.eye(n), tol, tol.unit_tol)
    r = k_plus.shape[1]
    _, fixed = rank_kernel(m - np.eye(n + 1), tol, tol.unit_tol)
    d = fixed.shape[1]
    if d == r + 1:
        kind = IsometryKind.ELLIPTIC
    elif d == r:
        kind = IsometryKind.HYPERBOLIC
    else:
        raise InternalInconsistency(
            f"dim Ker(M - I) = {d} is neither r = {r} nor r + 1; tolerances are mis-set"
        )
    logger.info(f"Euclidean isometry is {kind.label} (r = {r}, d = {d})")

    # V = V_R + V_1 with V_1 = Ker(A - I)
    b_one = k_plus @ (k_plus.T @ b)
    b_rest = b - b_one
    if r:
        _, v_rest = rank_kernel(k_plus.T, tol)
    else:
        v_rest = np.eye(n)
    a_rest = v_rest.T @ a @ v_rest
    # p solves (I - A) p = b_R on V_R, so f(p) = p + b_1
    if v_rest.shape[1]:
        p = v_rest @ np.linalg.solve(np.eye(a_rest.shape[0]) - a_rest, v_rest.T @ b_rest)
    else:
        p = np.zeros(n)

    orthogonal = orthogonal_decomposition(a_rest, tol)
    if any(blk.kind is BlockKind.POS_ID for blk in orthogonal.blocks):
        raise InternalInconsistency("non-unit part has eigenvalue 1; tolerances are mis-set")
    linear = [v_rest @ orthogonal.basis]
    blocks = list(orthogonal.blocks)

    if kind is IsometryKind.ELLIPTIC:
        linear.append(k_plus)
        blocks.append(Block.pos_id(r + 1))
    else:
        length = float(np.linalg.norm(b_one))
        u = b_one / length
        _, rest = rank_kernel((k_plus.T @ u)[np.newaxis, :], tol)
        linear += [k_plus @ rest, u[:, np.newaxis]]
        if r > 1:
            blocks.append(Block.pos_id(r - 1))
        blocks.append(Block.trans(length))

    q = np.eye(n + 1)
    q[:n, :n] = np.hstack(linear)
    q[:n, n] = p
    return kind, r, orthogonal, NormalForm(tuple(blocks)), q


def euclidean_normal_form(m: ArrayLike, tol: Tolerance | None = None) -> ConjugationResult:
    tol = tol or Tolerance()
    m = as_matrix(m)
    check_euclidean(m, tol)
    _, _, orthogonal, form, q = _decompose(m, tol)
    n = m.shape[0] - 1
    group_residual = inf_norm(q[:n, :n].T @ q[:n, :n] - np.eye(n))
    return conclude(m, form, q, group_residual, tol, orthogonal.diagnostics)


def classify_euclidean(m: ArrayLike, tol: Tolerance | None = None) -> EuclideanSegre:
    tol = tol or Tolerance()
    m = as_matrix(m)
    check_euclidean(m, tol)
    kind, r, orthogonal, _, _ = _decompose(m, tol)
    return EuclideanSegre(kind, r, orthogonal.symbol)


def euclidean_symbol(m: ArrayLike, tol: Tolerance | None = None) -> SegreSymbol:
    body = classify_euclidean(m, tol)
    return SegreSymbol(Space.EUCLIDEAN, body.dimension, body)


def fixed_point_dimension(m: ArrayLike, tol: Tolerance | None = None) -> int:
    """Dimension of the fixed affine subspace, -1 when there is no fixed point."""
    tol = tol or Tolerance()
    m = as_matrix(m)
    check_euclidean(m, tol)
    kind, r, *_ = _decompose(m, tol)
    return r if kind is IsometryKind.ELLIPTIC else -1
