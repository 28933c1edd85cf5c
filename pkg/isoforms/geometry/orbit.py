"""Isotropy dimensions, orbit-type comparison and representatives of each class."""

from __future__ import annotations

import itertools
import logging

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike
from scipy.stats import ortho_group

from isoforms.errors import InvariantViolation
from isoforms.geometry.classify import check_membership, classify
from isoforms.geometry.normal_form import Block, NormalForm, canonical_rotations
from isoforms.geometry.numkit import Matrix, Tolerance, as_matrix, rank_kernel
from isoforms.geometry.segre import IsometryKind, SegreSymbol, Space, SphericalSegre

logger = logging.getLogger(__name__)


def group_dimension(space: Space, n: int) -> int:
    """dim O(n+1) = dim Euc(n) = dim O(1,n) = n(n+1)/2."""
    return n * (n + 1) // 2


def _orthogonal_isotropy(sigma: SphericalSegre) -> int:
    return sum(k * k for k in sigma.rotation_mults) + sum(m * (m - 1) // 2 for m in sigma.real_mults)


def isotropy_dimension(sym: SegreSymbol) -> int:
    """Dimension of the centralizer of any isometry with symbol ``sym``."""
    if not isinstance(sym, SegreSymbol):
        raise InvariantViolation(f"expected a SegreSymbol, got {type(sym).__name__}")
    base = _orthogonal_isotropy(sym.sigma)
    r = sym.r
    match sym.space, sym.kind:
        case Space.SPHERICAL, _:
            return base
        case Space.EUCLIDEAN, IsometryKind.ELLIPTIC:
            return base + r * (r + 1) // 2
        case Space.EUCLIDEAN, IsometryKind.HYPERBOLIC:
            return base + r * (r - 1) // 2 + 1
        case Space.HYPERBOLIC, IsometryKind.ELLIPTIC:
            return base + r * (r - 1) // 2
        case Space.HYPERBOLIC, IsometryKind.PARABOLIC:
            return base + 1 + (r - 3) * (r - 2) // 2
        case Space.HYPERBOLIC, IsometryKind.HYPERBOLIC:
            return base + 1
    raise InvariantViolation(f"no isotropy formula for {sym.space.value} kind {sym.kind}")


def orbit_dimension(sym: SegreSymbol) -> int:
    return group_dimension(sym.space, sym.n) - isotropy_dimension(sym)


def lie_algebra_basis(space: Space, n: int) -> list[Matrix]:
    """Basis of the Lie algebra of the isometry group, as (n+1)x(n+1) matrices."""
    size = n + 1
    space = Space(space)
    linear = n if space is Space.EUCLIDEAN else size
    basis = []
    for i, j in itertools.combinations(range(linear), 2):
        x = np.zeros((size, size))
        x[i, j], x[j, i] = 1.0, -1.0
        basis.append(x)
    if space is Space.EUCLIDEAN:
        for i in range(n):
            x = np.zeros((size, size))
            x[i, n] = 1.0
            basis.append(x)
    elif space is Space.HYPERBOLIC:
        # X = J K with K skew satisfies X^t J + J X = 0
        j = np.diag([-1.0] + [1.0] * n)
        basis = [j @ x for x in basis]
    return basis


def centralizer_dimension_numeric(
    m: ArrayLike, space: Space, tol: Tolerance | None = None
) -> int:
    """Nullity of X -> M X M^-1 - X on the Lie algebra."""
    tol = tol or Tolerance()
    m = as_matrix(m)
    check_membership(m, space, tol, allow_improper=True)
    n = m.shape[0] - 1
    inverse = np.linalg.inv(m)
    basis = lie_algebra_basis(space, n)
    operator = np.column_stack([(m @ x @ inverse - x).ravel() for x in basis])
    rank, _ = rank_kernel(operator, tol)
    return len(basis) - rank


def same_orbit_type(a: ArrayLike, b: ArrayLike, space: Space, tol: Tolerance | None = None) -> bool:
    return classify(a, space, tol) == classify(b, space, tol)


def form_for_symbol(
    sym: SegreSymbol,
    angles: list[float] | tuple[float, ...],
    translation: float = 1.0,
    rapidity: float = 1.0,
    flip: bool = False,
) -> NormalForm:
    """Normal form with symbol ``sym``; one angle per rotation multiplicity.

    ``flip`` swaps the signs of a sign-blind pair of real eigenvalues.
    """
    sigma = sym.sigma
    if len(angles) != len(sigma.rotation_mults):
        raise InvariantViolation(
            f"need {len(sigma.rotation_mults)} rotation angles, got {len(angles)}"
        )
    rotations = canonical_rotations(
        [Block.rot(theta, k) for theta, k in zip(angles, sigma.rotation_mults)]
    )
    reals = list(sigma.real_mults)
    sign_blind = sym.space is Space.SPHERICAL or (
        sym.space is Space.HYPERBOLIC and sym.kind is IsometryKind.HYPERBOLIC
    )
    if sign_blind:
        signs = [1, -1][: len(reals)]
        if flip:
            signs = [-s for s in signs]
        positive = [m for m, s in zip(reals, signs) if s > 0]
        negative = [m for m, s in zip(reals, signs) if s < 0]
        spatial = rotations + [Block.pos_id(m) for m in positive] + [Block.neg_id(m) for m in negative]
    else:
        spatial = rotations + [Block.neg_id(m) for m in reals]

    r = sym.r
    match sym.space, sym.kind:
        case Space.SPHERICAL, _:
            blocks = spatial
        case Space.EUCLIDEAN, IsometryKind.ELLIPTIC:
            blocks = spatial + [Block.pos_id(r + 1)]
        case Space.EUCLIDEAN, IsometryKind.HYPERBOLIC:
            blocks = spatial + ([Block.pos_id(r - 1)] if r > 1 else []) + [Block.trans(translation)]
        case Space.HYPERBOLIC, IsometryKind.ELLIPTIC:
            blocks = [Block.pos_id(r)] + spatial
        case Space.HYPERBOLIC, IsometryKind.PARABOLIC:
            blocks = [Block.theta()] + ([Block.pos_id(r - 3)] if r > 3 else []) + spatial
        case _:
            blocks = [Block.boost(rapidity)] + spatial
    return NormalForm(tuple(blocks))


def generic_angles(count: int, rng: np.random.Generator, tol: Tolerance) -> list[float]:
    """Distinct angles in (0, pi), pairwise and from 0 and pi further than 100 angle_tol."""
    margin = max(0.2, 100 * tol.angle_tol)
    while True:
        angles = sorted(rng.uniform(margin, np.pi - margin, size=count), reverse=True)
        if all(a - b > max(0.05, 100 * tol.angle_tol) for a, b in zip(angles, angles[1:])):
            return [float(a) for a in angles]


def generic_representative(
    sym: SegreSymbol, rng: np.random.Generator, tol: Tolerance | None = None
) -> NormalForm:
    """Normal form of the class with random, well separated continuous parameters."""
    tol = tol or Tolerance()
    angles = generic_angles(len(sym.sigma.rotation_mults), rng, tol)
    return form_for_symbol(
        sym,
        angles,
        translation=float(rng.uniform(0.5, 3.0)),
        rapidity=float(rng.uniform(0.5, 2.0)),
        flip=bool(rng.random() < 0.5),
    )


def symbolic_representative(sym: SegreSymbol) -> NormalForm:
    """Deterministic representative used when rendering tables."""
    count = len(sym.sigma.rotation_mults)
    angles = [np.pi * (count - i) / (count + 1) for i in range(count)]
    return form_for_symbol(sym, angles)


def _random_orthogonal(dim: int, rng: np.random.Generator) -> Matrix:
    if dim == 1:
        return np.array([[1.0 if rng.random() < 0.5 else -1.0]])
    return ortho_group.rvs(dim=dim, random_state=rng)


def random_group_element(space: Space, n: int, rng: np.random.Generator) -> Matrix:
    """Random element of O(n+1), Euc(n) or the proper Lorentz group O+(1,n)."""
    match Space(space):
        case Space.SPHERICAL:
            return _random_orthogonal(n + 1, rng)
        case Space.EUCLIDEAN:
            q = np.eye(n + 1)
            q[:n, :n] = _random_orthogonal(n, rng)
            q[:n, n] = rng.normal(size=n)
            return q
        case Space.HYPERBOLIC:
            direction = rng.normal(size=n)
            direction /= np.linalg.norm(direction)
            generator = np.zeros((n + 1, n + 1))
            generator[0, 1:] = generator[1:, 0] = rng.uniform(-3.0, 3.0) * direction
            before = scipy.linalg.block_diag(1.0, _random_orthogonal(n, rng))
            after = scipy.linalg.block_diag(1.0, _random_orthogonal(n, rng))
            return before @ scipy.linalg.expm(generator) @ after


def conjugate(m: Matrix, q: Matrix) -> Matrix:
    """Q M Q^-1."""
    return q @ np.linalg.solve(q.T, m.T).T
