"""Lorentz normal forms and Segre symbols for isometries of H^n.

Isometries are matrices T of size n+1 with T^t J T = J, J = diag(-1, 1, ..., 1).
T is proper (preserves the upper sheet of the hyperboloid) iff T[0, 0] > 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from isoforms.errors import InternalInconsistency, NotInGroup, NotProper, UnsupportedDimension
from isoforms.geometry.normal_form import (
    PARABOLIC_CHANGE,
    Block,
    ConjugationResult,
    NormalForm,
    conclude,
)
from isoforms.geometry.numkit import (
    BilinearForm,
    Matrix,
    Tolerance,
    as_matrix,
    inf_norm,
    null_vectors,
    orthogonal_complement,
    orthonormalize,
    rank_kernel,
    require_square,
)
from isoforms.geometry.segre import HyperbolicSegre, IsometryKind, SegreSymbol, Space
from isoforms.geometry.spherical import OrthogonalDecomposition, orthogonal_decomposition

logger = logging.getLogger(__name__)


class TemporalKind(str, Enum):
    UNIT = "unit"
    BOOSTPAIR = "boostpair"


@dataclass(frozen=True)
class SpaceTimeSplit:
    """V = V_t + V_s with V_s the sum of the space-like primary components."""

    temporal_basis: Matrix  # orthonormal, T-invariant
    spatial_basis: Matrix  # Lorentz-orthonormal, space-like
    temporal_kind: TemporalKind
    eigenvalue: float = 1.0  # largest temporal eigenvalue

    @property
    def r(self) -> int:
        return self.temporal_basis.shape[1]


def lorentz_matrix(dim: int) -> Matrix:
    return BilinearForm.lorentz(dim).matrix


def check_lorentz(t: Matrix, tol: Tolerance, allow_improper: bool = False) -> bool:
    """Validate T^t J T = J; returns True when T is proper."""
    require_square(t)
    if t.shape[0] < 2:
        raise UnsupportedDimension("hyperbolic isometries need n >= 1")
    j = lorentz_matrix(t.shape[0])
    residual = inf_norm(t.T @ j @ t - j)
    bound = tol.residual_tol * max(1.0, inf_norm(t)) ** 2
    if residual > bound:
        raise NotInGroup(f"matrix is not in O(1,n) (residual {residual:.3e})", residual)
    proper = bool(t[0, 0] > 0)
    if not proper and not allow_improper:
        raise NotProper(
            "matrix reverses time orientation (T[0,0] <= 0); negate it or allow improper input",
            residual,
        )
    return proper


def space_time_split(t: ArrayLike, tol: Tolerance | None = None) -> SpaceTimeSplit:
    tol = tol or Tolerance()
    t = as_matrix(t)
    check_lorentz(t, tol)
    return _split(t, tol)


def _split(t: Matrix, tol: Tolerance) -> SpaceTimeSplit:
    """Temporal part from the fixed space K = Ker(T - I) and its Lorentz signature.

    K time-like: elliptic, V_t = K. K degenerate: parabolic, V_t is K plus the
    Jordan chain over its light-like vector. K space-like or zero: hyperbolic,
    V_t is the plane of the eigenvalues λ > 1 and 1/λ.
    """
    dim = t.shape[0]
    form = BilinearForm.lorentz(dim)
    margin = np.sqrt(tol.residual_tol)
    _, fixed = rank_kernel(t - np.eye(dim), tol, relative=tol.unit_tol)
    gram = np.linalg.eigvalsh(form.gram(fixed)) if fixed.shape[1] else np.zeros(0)

    largest = 1.0
    if gram.size and gram.min() < -margin:
        kind = TemporalKind.UNIT
        temporal = fixed
    elif gram.size and gram.min() <= margin:
        kind = TemporalKind.UNIT
        temporal = _parabolic_span(t, fixed, form, tol)
    else:
        kind = TemporalKind.BOOSTPAIR
        largest, temporal = _boost_plane(t, fixed, form, tol)

    temporal = np.linalg.qr(temporal)[0]
    spatial_span = orthogonal_complement(temporal, form, tol)
    spatial_basis = orthonormalize(spatial_span, form, tol)
    if temporal.shape[1] + spatial_basis.shape[1] != dim:
        raise InternalInconsistency("space-time split does not span the whole space")
    logger.info(
        f"space-time split: r = {temporal.shape[1]}, {kind.value}, largest eigenvalue {largest:.6g}"
    )
    return SpaceTimeSplit(temporal, spatial_basis, kind, largest)


def _restriction(t: Matrix, basis: Matrix) -> Matrix:
    """Matrix of T on the invariant span of the orthonormal columns of ``basis``."""
    return basis.T @ t @ basis


def _parabolic_span(t: Matrix, fixed: Matrix, form: BilinearForm, tol: Tolerance) -> Matrix:
    """Fixed space plus the chain v, w with (T - I) v = u, (T - I) w = v, u light-like."""
    _, vectors = np.linalg.eigh(form.gram(fixed))
    u = fixed @ vectors[:, 0]
    spacelike = fixed @ vectors[:, 1:]
    # on the complement of the space-like fixed vectors, Ker(T - I) is the line of u
    if spacelike.shape[1]:
        _, inner = rank_kernel(spacelike.T @ form.matrix, tol)
    else:
        inner = np.eye(t.shape[0])
    e = _restriction(t, inner) - np.eye(inner.shape[1])
    left, singular, vh = np.linalg.svd(e)
    if singular.size < 3:
        raise InternalInconsistency("parabolic part needs a Lorentz block of size 3")

    def solve(b: np.ndarray) -> np.ndarray:
        coefficients = (left.T @ b)[:-1] / singular[:-1]
        return vh[:-1].T @ coefficients

    v = solve(inner.T @ u)
    w = solve(v)
    return np.column_stack([fixed, inner @ v, inner @ w])


def _boost_plane(
    t: Matrix, fixed: Matrix, form: BilinearForm, tol: Tolerance
) -> tuple[float, Matrix]:
    """Largest eigenvalue λ > 1 and the span of its eigenvector and that of 1/λ."""
    if fixed.shape[1]:
        _, rest = rank_kernel(fixed.T @ form.matrix, tol)
    else:
        rest = np.eye(t.shape[0])
    t_rest = _restriction(t, rest)
    values = np.linalg.eigvals(t_rest)
    lam = values[np.argmax(np.abs(values))]
    if abs(lam.imag) > tol.unit_tol * abs(lam) or lam.real <= 1.0 + tol.unit_tol:
        raise InternalInconsistency(
            f"no fixed time-like or light-like vector, yet no eigenvalue λ > 1 (found {lam:.6g})"
        )
    lam = float(lam.real)
    x = null_vectors(t_rest - lam * np.eye(rest.shape[1]), 1)
    y = null_vectors(t_rest - np.eye(rest.shape[1]) / lam, 1)
    return lam, rest @ np.hstack([x, y])


def _future(basis: Matrix) -> Matrix:
    """Flip the time-like first vector to the upper sheet."""
    if basis.shape[1] and basis[0, 0] < 0:
        basis = basis.copy()
        basis[:, 0] = -basis[:, 0]
    return basis


def _temporal_frame(
    t: Matrix, split: SpaceTimeSplit, tol: Tolerance
) -> tuple[IsometryKind, list[Block], Matrix]:
    """Blocks and conjugator columns for V_t, worked out in its orthonormal basis Z."""
    form = BilinearForm.lorentz(t.shape[0])
    z = split.temporal_basis
    r = split.r
    gram = form.gram(z)
    t_z = _restriction(t, z)
    scale = max(1.0, inf_norm(t))

    if split.temporal_kind is TemporalKind.BOOSTPAIR:
        lam = split.eigenvalue
        x = null_vectors(t_z - lam * np.eye(r), 1)[:, 0]
        y = null_vectors(t_z - np.eye(r) / lam, 1)[:, 0]
        y = -y / float(x @ gram @ y)
        basis = z @ np.column_stack([x + y, x - y]) / np.sqrt(2.0)
        if basis[0, 0] < 0:
            basis = -basis
        return IsometryKind.HYPERBOLIC, [Block.boost(float(np.log(lam)))], basis

    e = t_z - np.eye(r)
    if _rank(e, scale, tol) == 0:
        return IsometryKind.ELLIPTIC, [Block.pos_id(r)], _future(orthonormalize(z, form, tol))

    # chain E w = v, E v = u
    _, _, vh = np.linalg.svd(e @ e)
    w = vh[0]
    v = e @ w
    u = e @ v
    if float(v @ gram @ v) <= 0.0:
        raise InternalInconsistency("unipotent temporal part has no space-like chain vector")
    if (z @ u)[0] < 0:
        w, v, u = -w, -v, -u
    alpha = 1.0 / np.sqrt(float(v @ gram @ v))
    w, v, u = alpha * w, alpha * v, alpha * u
    # fix the remaining freedom: v has no time component, Q(w) = 0
    gamma = -(z @ v)[0] / (z @ u)[0]
    w, v = w + gamma * v, v + gamma * u
    w = w + 0.5 * float(w @ gram @ w) * u

    _, inside = rank_kernel(np.column_stack([u, v, w]).T @ gram, tol)
    coords = np.column_stack([u, v, w, inside])
    # in the chain basis E is a single shift u <- v <- w
    adapted = np.linalg.solve(coords, e @ coords)
    norm = max(1.0, inf_norm(adapted))
    ranks = [_rank(np.linalg.matrix_power(adapted, k), norm**k, tol) for k in range(1, 4)]
    if ranks != [2, 1, 0]:
        raise InternalInconsistency(
            f"unipotent temporal part has ranks {ranks} for E, E^2, E^3; expected [2, 1, 0]"
        )
    chain = z @ coords[:, :3] @ PARABOLIC_CHANGE
    if r == 3:
        return IsometryKind.PARABOLIC, [Block.theta()], chain
    rest = orthonormalize(z @ inside, form, tol)
    return IsometryKind.PARABOLIC, [Block.theta(), Block.pos_id(r - 3)], np.hstack([chain, rest])


def _rank(m: Matrix, scale: float, tol: Tolerance) -> int:
    """Number of singular values above ``unit_tol * scale``."""
    singular = np.linalg.svd(m, compute_uv=False)
    return int(np.count_nonzero(singular > tol.unit_tol * scale))


def _spatial(t: Matrix, split: SpaceTimeSplit, tol: Tolerance) -> tuple[OrthogonalDecomposition, Matrix]:
    s = split.spatial_basis
    j = lorentz_matrix(t.shape[0])
    t_s = s.T @ j @ t @ s
    decomposition = orthogonal_decomposition(t_s, tol)
    return decomposition, s @ decomposition.basis


@dataclass(frozen=True)
class _Analysis:
    kind: IsometryKind
    form: NormalForm
    conjugator: Matrix
    spatial: OrthogonalDecomposition
    proper: bool

    @property
    def r(self) -> int:
        return self.form.size - self.spatial.basis.shape[1]


def _analyse(t: Matrix, tol: Tolerance, allow_improper: bool) -> _Analysis:
    proper = check_lorentz(t, tol, allow_improper)
    work = t if proper else -t
    split = _split(work, tol)
    kind, temporal_blocks, temporal_basis = _temporal_frame(work, split, tol)
    spatial, spatial_basis = _spatial(work, split, tol)
    logger.info(f"Lorentz isometry is {kind.label} (r = {split.r})")
    form = NormalForm(tuple(temporal_blocks) + spatial.blocks, sign=1 if proper else -1)
    return _Analysis(kind, form, np.hstack([temporal_basis, spatial_basis]), spatial, proper)


def lorentz_normal_form(t: ArrayLike, tol: Tolerance | None = None) -> ConjugationResult:
    """Normal form of any T in O(1,n); improper T gives -(normal form of -T)."""
    tol = tol or Tolerance()
    t = as_matrix(t)
    analysis = _analyse(t, tol, allow_improper=True)
    q = analysis.conjugator
    j = lorentz_matrix(t.shape[0])
    group_residual = inf_norm(q.T @ j @ q - j)
    return conclude(
        t,
        analysis.form,
        q,
        group_residual,
        tol,
        analysis.spatial.diagnostics,
        improper=not analysis.proper,
    )


def classify_hyperbolic(
    t: ArrayLike, tol: Tolerance | None = None, allow_improper: bool = False
) -> HyperbolicSegre:
    """Segre symbol of a proper T; with ``allow_improper`` an improper T is classified as -T."""
    tol = tol or Tolerance()
    t = as_matrix(t)
    analysis = _analyse(t, tol, allow_improper)
    return HyperbolicSegre(analysis.kind, analysis.r, analysis.spatial.symbol)


def hyperbolic_symbol(
    t: ArrayLike, tol: Tolerance | None = None, allow_improper: bool = False
) -> SegreSymbol:
    body = classify_hyperbolic(t, tol, allow_improper)
    return SegreSymbol(Space.HYPERBOLIC, body.dimension - 1, body)
