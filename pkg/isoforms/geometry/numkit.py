"""Dense real linear-algebra kernels shared by the classifiers.

Everything here is a pure function on immutable values. Matrices are plain
``numpy`` arrays of ``float64``; :func:`as_matrix` is the single validation
gate that turns caller input into one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from isoforms.errors import (
    ConvergenceFailure,
    DegenerateSpan,
    InputError,
    InternalInconsistency,
    UnsupportedDimension,
)

logger = logging.getLogger(__name__)

Matrix = NDArray[np.float64]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds used by every rank and clustering decision."""

    rank_tol: float = 1e-12
    angle_tol: float = 1e-7
    residual_tol: float = 1e-9
    cluster_tol: float = 1e-4
    max_dimension: int = 64

    def __post_init__(self) -> None:
        for name in ("rank_tol", "angle_tol", "residual_tol", "cluster_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise InputError(f"{name} must be strictly positive, got {value!r}")
        if self.max_dimension < 1:
            raise InputError("max_dimension must be at least 1")

    @property
    def unit_tol(self) -> float:
        """Relative threshold for the eigenvalues +1 and -1 of an isometry.

        An eigen-angle within ``angle_tol`` of 0 or pi counts as real.
        """
        return max(self.rank_tol, self.angle_tol)


class FormKind(str, Enum):
    EUCLIDEAN = "euclidean"
    LORENTZ = "lorentz"


@dataclass(frozen=True)
class BilinearForm:
    """Euclidean form or the Lorentz form J = diag(-1, 1, ..., 1)."""

    kind: FormKind
    dim: int

    @classmethod
    def euclidean(cls, dim: int) -> "BilinearForm":
        return cls(FormKind.EUCLIDEAN, dim)

    @classmethod
    def lorentz(cls, dim: int) -> "BilinearForm":
        return cls(FormKind.LORENTZ, dim)

    @property
    def matrix(self) -> Matrix:
        diagonal = np.ones(self.dim)
        if self.kind is FormKind.LORENTZ:
            diagonal[0] = -1.0
        return np.diag(diagonal)

    def gram(self, vectors: Matrix) -> Matrix:
        """Gram matrix of the columns of ``vectors``."""
        return vectors.T @ self.matrix @ vectors

    def __call__(self, u: NDArray, v: NDArray) -> float:
        return float(u @ self.matrix @ v)


@dataclass(frozen=True)
class RealVal:
    value: float


@dataclass(frozen=True)
class ComplexPair:
    """Conjugate pair modulus * exp(±i angle), angle in (0, π)."""

    modulus: float
    angle: float


@dataclass(frozen=True)
class EigenCluster:
    eigenvalue: RealVal | ComplexPair
    multiplicity: int
    basis: Matrix  # columns span the primary component
    residual: float


@dataclass(frozen=True)
class EigenStructure:
    clusters: tuple[EigenCluster, ...]

    @property
    def dimension(self) -> int:
        return sum(c.multiplicity for c in self.clusters)

    def basis(self) -> Matrix:
        """Concatenated primary-component bases, one cluster after another."""
        return np.hstack([c.basis for c in self.clusters])


def as_matrix(data: ArrayLike, name: str = "matrix") -> Matrix:
    """Validate and copy ``data`` into a read-only finite 2-D float array."""
    try:
        m = np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} is not a numeric matrix: {exc}") from exc
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise InputError(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError(f"{name} has NaN or infinite entries")
    m.setflags(write=False)
    return m


def require_square(m: Matrix, name: str = "matrix") -> None:
    if m.shape[0] != m.shape[1]:
        raise InputError(f"{name} must be square, got shape {m.shape}")


def inf_norm(m: NDArray) -> float:
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, ord=np.inf)) if m.ndim == 2 else float(np.max(np.abs(m)))


def rank_kernel(
    m: Matrix, tol: Tolerance, relative: float | None = None
) -> tuple[int, Matrix]:
    """Numerical rank and an orthonormal kernel basis (as columns).

    Singular values below ``relative * max(1, sigma_max)`` count as zero;
    ``relative`` defaults to ``rank_tol``.
    """
    cols = m.shape[1]
    if m.shape[0] == 0 or cols == 0:
        return 0, np.eye(cols)
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    sigma_max = float(s[0]) if s.size else 0.0
    threshold = (tol.rank_tol if relative is None else relative) * max(1.0, sigma_max)
    rank = int(np.count_nonzero(s > threshold))
    kernel = vh[rank:].T.copy()
    return rank, kernel.reshape(cols, cols - rank)


def null_vectors(m: Matrix, count: int) -> Matrix:
    """Right singular vectors of the ``count`` smallest singular values."""
    _, _, vh = np.linalg.svd(m, full_matrices=True)
    return vh[vh.shape[0] - count :].T.copy()


def orthogonal_complement(
    basis: Matrix, form: BilinearForm, tol: Tolerance
) -> Matrix:
    """Basis of the form-orthogonal complement of the column span of ``basis``."""
    if basis.shape[1] == 0:
        return np.eye(form.dim)
    _, kernel = rank_kernel(basis.T @ form.matrix, tol)
    return kernel


def _cluster_labels(values: NDArray[np.complex128], radius: float) -> NDArray[np.int_]:
    """Single-linkage clustering of points in the complex plane."""
    n = values.size
    labels = np.arange(n)

    def find(i: int) -> int:
        while labels[i] != i:
            labels[i] = labels[labels[i]]
            i = labels[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            scale = max(1.0, abs(values[i]), abs(values[j]))
            if abs(values[i] - values[j]) <= radius * scale:
                ri, rj = find(i), find(j)
                if ri != rj:
                    labels[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(n)])
    _, dense = np.unique(roots, return_inverse=True)
    return dense


def _leading_basis(
    m: Matrix, eigenvalues: NDArray[np.complex128], chosen: NDArray[np.bool_]
) -> tuple[Matrix, int]:
    """Orthonormal basis of the invariant subspace of the ``chosen`` eigenvalues."""

    def select(re, im=None):
        z = complex(re) if im is None else complex(re, im)
        return bool(
            chosen[np.argmin(np.abs(eigenvalues - z))]
            or chosen[np.argmin(np.abs(eigenvalues - z.conjugate()))]
        )

    try:
        _, z_vectors, sdim = scipy.linalg.schur(m, output="real", sort=select)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceFailure(f"could not reorder the Schur form: {exc}") from exc
    return z_vectors[:, :sdim].copy(), int(sdim)


def _is_defective(
    m: Matrix, eigenvalues: NDArray[np.complex128], members: NDArray[np.bool_], tol: Tolerance
) -> bool:
    """True when a group of nearby real eigenvalues is a split Jordan cluster.

    A perturbed Jordan block spreads its eigenvalues far less than the norm of
    ``M - c I`` on its invariant subspace; nearby semisimple eigenvalues do not.
    """
    values = eigenvalues[members]
    center = complex(np.mean(values))
    if abs(center.imag) > tol.cluster_tol * max(1.0, abs(center)):
        return False
    basis, _ = _leading_basis(m, eigenvalues, members)
    restricted = basis.T @ m @ basis - center.real * np.eye(basis.shape[1])
    spread = float(np.max(np.abs(values - center)))
    return spread <= np.sqrt(tol.cluster_tol) * inf_norm(restricted)


def eigen_structure(m: Matrix, tol: Tolerance) -> EigenStructure:
    """Primary decomposition of a real square matrix.

    Eigenvalues closer than ``angle_tol`` share a cluster. Groups within
    ``cluster_tol`` of each other are merged only when they behave like one
    perturbed Jordan block. The basis of each primary component comes from an
    ordered real Schur form with that cluster moved to the leading block.
    """
    require_square(m)
    n = m.shape[0]
    if n > tol.max_dimension:
        raise UnsupportedDimension(
            f"matrix size {n} exceeds the eigensolver cap {tol.max_dimension}"
        )
    try:
        schur_t, _ = scipy.linalg.schur(m, output="real")
        eigenvalues = scipy.linalg.eigvals(schur_t)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceFailure(
            f"eigensolver did not converge ({exc}); raise max_dimension or check the input"
        ) from exc

    # angles within angle_tol of 0 or pi count as real
    near_axis = np.abs(eigenvalues.imag) <= tol.angle_tol * np.maximum(1.0, np.abs(eigenvalues))
    labels = _cluster_labels(np.where(near_axis, eigenvalues.real + 0j, eigenvalues), tol.angle_tol)
    coarse = _cluster_labels(eigenvalues, tol.cluster_tol)
    defective = np.zeros(n, dtype=bool)
    for group in np.unique(coarse):
        members = coarse == group
        inside = np.unique(labels[members])
        if inside.size > 1 and _is_defective(m, eigenvalues, members, tol):
            labels[members] = inside[0]
            defective |= members
    _, labels = np.unique(labels, return_inverse=True)

    clusters: list[EigenCluster] = []
    for label in range(int(labels.max()) + 1):
        chosen = labels == label
        members = eigenvalues[chosen]
        center = complex(np.mean(members))
        radius = tol.cluster_tol if defective[chosen].any() else tol.angle_tol
        is_real = abs(center.imag) <= radius * max(1.0, abs(center))
        if not is_real and center.imag < 0:
            continue  # handled with its conjugate
        if not is_real:
            chosen = chosen | (labels == labels[np.argmin(np.abs(eigenvalues - center.conjugate()))])

        basis, sdim = _leading_basis(m, eigenvalues, chosen)
        if is_real:
            value: RealVal | ComplexPair = RealVal(center.real)
            multiplicity = members.size
            factor = m - center.real * np.eye(n)
        else:
            value = ComplexPair(abs(center), float(np.angle(center)))
            multiplicity = 2 * members.size
            factor = m @ m - 2.0 * center.real * m + abs(center) ** 2 * np.eye(n)
        if sdim != multiplicity:
            raise InternalInconsistency(
                f"Schur reordering selected {sdim} eigenvalues, expected {multiplicity}"
            )
        power = multiplicity if is_real else multiplicity // 2
        annihilator = np.linalg.matrix_power(factor, power)
        residual = inf_norm(annihilator @ basis) / max(1.0, inf_norm(factor)) ** power
        if residual > tol.residual_tol:
            logger.info(f"primary component for {value} has residual {residual:.3e}")
        clusters.append(EigenCluster(value, multiplicity, basis, residual))

    clusters.sort(key=_cluster_key)
    return EigenStructure(tuple(clusters))


def _cluster_key(cluster: EigenCluster) -> tuple:
    ev = cluster.eigenvalue
    if isinstance(ev, RealVal):
        return (0, -ev.value, 0.0)
    return (1, -ev.modulus, ev.angle)


def orthonormalize(vectors: Matrix, form: BilinearForm, tol: Tolerance) -> Matrix:
    """Form-orthonormal basis of the column span of ``vectors``.

    Euclidean: Gram-Schmidt in input order. Lorentz: symmetric pivoting on the
    Gram matrix, then the time-like vector (if any) is moved to the front.
    """
    if vectors.shape[1] == 0:
        return vectors.copy()
    if form.kind is FormKind.EUCLIDEAN:
        q, r = np.linalg.qr(vectors)
        diag = np.diag(r)
        if np.any(np.abs(diag) <= tol.rank_tol * max(1.0, float(np.max(np.abs(diag))))):
            raise DegenerateSpan("vectors are linearly dependent")
        result = q * np.sign(diag)
    else:
        result = _lorentz_gram_schmidt(vectors, form, tol)

    gram = form.gram(result)
    target = np.diag(np.sign(np.diag(gram)))
    if inf_norm(gram - target) > tol.residual_tol:
        raise DegenerateSpan(
            f"orthonormalized Gram matrix off by {inf_norm(gram - target):.3e}"
        )
    return result


def _lorentz_gram_schmidt(
    vectors: Matrix, form: BilinearForm, tol: Tolerance
) -> Matrix:
    remaining = [vectors[:, i].astype(np.float64) for i in range(vectors.shape[1])]
    scale = max(1.0, inf_norm(form.gram(vectors)))
    threshold = tol.residual_tol * scale
    found: list[tuple[float, NDArray]] = []
    while remaining:
        block = np.column_stack(remaining)
        gram = form.gram(block)
        diag = np.diag(gram)
        i = int(np.argmax(np.abs(diag)))
        if abs(diag[i]) <= threshold:
            off = np.abs(gram - np.diag(diag))
            i, j = np.unravel_index(int(np.argmax(off)), off.shape)
            if off[i, j] <= threshold:
                raise DegenerateSpan(
                    "span is light-like; the restricted form is singular"
                )
            # u + s v has form value 2 s Q(u, v) != 0
            remaining[i] = remaining[i] - np.sign(gram[i, j]) * remaining[j]
            continue
        v = remaining.pop(i)
        sign = float(np.sign(diag[i]))
        e = v / np.sqrt(abs(diag[i]))
        for _ in range(2):
            remaining = [w - sign * form(w, e) * e for w in remaining]
        found.append((sign, e))
    found.sort(key=lambda item: item[0])  # stable: time-like first
    return np.column_stack([e for _, e in found])
