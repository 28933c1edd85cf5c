"""Dispatch on the space form: one entry point for the three classifiers."""

from __future__ import annotations

from numpy.typing import ArrayLike

from isoforms.geometry.euclidean import check_euclidean, euclidean_normal_form, euclidean_symbol
from isoforms.geometry.hyperbolic import check_lorentz, hyperbolic_symbol, lorentz_normal_form
from isoforms.geometry.normal_form import ConjugationResult
from isoforms.geometry.numkit import Matrix, Tolerance, as_matrix
from isoforms.geometry.segre import SegreSymbol, Space
from isoforms.geometry.spherical import check_orthogonal, orthogonal_normal_form, spherical_symbol


def check_membership(m: Matrix, space: Space, tol: Tolerance, allow_improper: bool = False) -> None:
    match Space(space):
        case Space.SPHERICAL:
            check_orthogonal(m, tol)
        case Space.EUCLIDEAN:
            check_euclidean(m, tol)
        case Space.HYPERBOLIC:
            check_lorentz(m, tol, allow_improper)


def normal_form(m: ArrayLike, space: Space, tol: Tolerance | None = None) -> ConjugationResult:
    match Space(space):
        case Space.SPHERICAL:
            return orthogonal_normal_form(m, tol)
        case Space.EUCLIDEAN:
            return euclidean_normal_form(m, tol)
        case Space.HYPERBOLIC:
            return lorentz_normal_form(m, tol)


def classify(
    m: ArrayLike, space: Space, tol: Tolerance | None = None, allow_improper: bool = False
) -> SegreSymbol:
    m = as_matrix(m)
    match Space(space):
        case Space.SPHERICAL:
            return spherical_symbol(m, tol)
        case Space.EUCLIDEAN:
            return euclidean_symbol(m, tol)
        case Space.HYPERBOLIC:
            return hyperbolic_symbol(m, tol, allow_improper)
