"""Varieties of invariant totally geodesic submanifolds and their dimension vectors.

A variety is a disjoint union of components; each component is a product of
Grassmannians. The linear building block S(k) collects the k-dimensional
invariant subspaces of an orthogonal map with symbol sigma: one component
per index tuple (k_1..k_s, r_1..r_t) with 2 sum(k_i) + sum(r_j) = k.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from isoforms.errors import (
    AmbiguousMatch,
    DegreeRangeError,
    InvariantViolation,
    NoMatch,
    SymbolSyntaxError,
)
from isoforms.geometry.segre import (
    IsometryKind,
    SegreSymbol,
    Space,
    SphericalSegre,
    enumerate_symbols,
)

logger = logging.getLogger(__name__)

# Degrees 0..t determine the symbol.
RECONSTRUCTION_DEPTH = {Space.SPHERICAL: 1, Space.EUCLIDEAN: 3, Space.HYPERBOLIC: 4}


class FactorKind(str, Enum):
    REAL = "real"
    COMPLEX = "complex"
    AFFINE = "affine"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class GrassmannianFactor:
    """Gr(k, R^m), Gr(k, C^m), or the k-flats of E^m or H^m."""

    kind: FactorKind
    sub: int
    ambient: int

    def __post_init__(self) -> None:
        if not 0 <= self.sub <= self.ambient:
            raise InvariantViolation(
                f"empty Grassmannian: sub {self.sub} not in 0..{self.ambient}"
            )

    @property
    def real_dim(self) -> int:
        k, m = self.sub, self.ambient
        match self.kind:
            case FactorKind.REAL:
                return k * (m - k)
            case FactorKind.COMPLEX:
                return 2 * k * (m - k)
            case _:
                return (k + 1) * (m - k)

    @property
    def is_point(self) -> bool:
        return self.real_dim == 0

    def render(self) -> str:
        k, m = self.sub, self.ambient
        if self.is_point:
            return "*"
        match self.kind:
            case FactorKind.REAL:
                if k in (1, m - 1):
                    return f"P^{m - 1}"
                return f"Gr({k},R^{m})"
            case FactorKind.COMPLEX:
                return f"Gr({k},C^{m})"
            case FactorKind.AFFINE:
                return f"E^{m}" if k == 0 else f"Gr({k},E^{m})"
            case FactorKind.HYPERBOLIC:
                return f"H^{m}" if k == 0 else f"Gr({k},H^{m})"


def _factor(kind: FactorKind, sub: int, ambient: int) -> GrassmannianFactor | None:
    if 0 <= sub <= ambient:
        return GrassmannianFactor(kind, sub, ambient)
    return None


@dataclass(frozen=True)
class Component:
    """One connected component; ``indices`` identifies it inside its variety."""

    factors: tuple[GrassmannianFactor, ...]
    indices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return sum(f.real_dim for f in self.factors)

    def times(self, factor: GrassmannianFactor, first: bool = False) -> "Component":
        if first:
            return Component((factor,) + self.factors, (factor.sub,) + self.indices)
        return Component(self.factors + (factor,), self.indices + (factor.sub,))

    def render(self) -> str:
        parts = [f.render() for f in self.factors if not f.is_point]
        return " x ".join(parts) if parts else "*"


@dataclass(frozen=True)
class VarietyDescription:
    degree: int
    components: tuple[Component, ...] = ()

    def __post_init__(self) -> None:
        seen = {c.indices for c in self.components}
        if len(seen) != len(self.components):
            raise InvariantViolation(f"repeated component in the degree-{self.degree} variety")

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(sorted((c.dim for c in self.components), reverse=True))

    def render(self) -> str:
        if self.is_empty:
            return "empty"
        return " | ".join(c.render() for c in self.components)


_INT = re.compile(r"-?\d+")


def _render_degree(dims: tuple[int, ...]) -> str:
    if len(dims) == 1:
        return str(dims[0])
    return "(" + ",".join(str(d) for d in dims) + ")"


def _parse_degree(chunk: str, offset: int) -> tuple[int, ...]:
    text = chunk.strip()
    start = offset + len(chunk) - len(chunk.lstrip())
    if text.startswith("("):
        if not text.endswith(")"):
            raise SymbolSyntaxError("expected ')'", start + len(text))
        text, start = text[1:-1], start + 1
    values = []
    for part in text.split(","):
        if not _INT.fullmatch(part.strip()):
            raise SymbolSyntaxError(f"expected an integer, found {part.strip()!r}", start)
        values.append(int(part))
        start += len(part) + 1
    return tuple(values)


@dataclass(frozen=True)
class DimensionVector:
    """Per degree, the component dimensions sorted descending; (-1,) marks emptiness."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        normalized = tuple(tuple(sorted(e, reverse=True)) for e in self.entries)
        for k, entry in enumerate(normalized):
            if not entry:
                raise InvariantViolation(f"degree {k} has no entry; use -1 for an empty variety")
            if entry != (-1,) and min(entry) < 0:
                raise InvariantViolation(f"degree {k}: -1 must stand alone, got {entry}")
        object.__setattr__(self, "entries", normalized)

    def __len__(self) -> int:
        return len(self.entries)

    def render(self) -> str:
        return "[" + ";".join(_render_degree(e) for e in self.entries) + "]"

    def __str__(self) -> str:
        return self.render()

    def to_lists(self) -> list[list[int]]:
        return [list(e) for e in self.entries]

    @classmethod
    def parse(cls, text: str) -> "DimensionVector":
        """Accepts ``[1;(0,0);1]`` as well as the bare ``1;0,0``."""
        body = text.strip()
        offset = len(text) - len(text.lstrip())
        if body.startswith("["):
            if not body.endswith("]"):
                raise SymbolSyntaxError("expected ']'", offset + len(body))
            body, offset = body[1:-1], offset + 1
        if not body.strip():
            raise SymbolSyntaxError("empty dimension vector", offset)
        entries = []
        for chunk in body.split(";"):
            entries.append(_parse_degree(chunk, offset))
            offset += len(chunk) + 1
        return cls(tuple(entries))


# --- varieties ----------------------------------------------------------------


def _bounded_tuples(total: int, bounds: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Tuples (x_1..x_t) with 0 <= x_j <= bounds[j] and sum x_j = total."""
    if not bounds:
        if total == 0:
            yield ()
        return
    head, rest = bounds[0], bounds[1:]
    for x in range(min(head, total), -1, -1):
        for tail in _bounded_tuples(total - x, rest):
            yield (x,) + tail


def _linear_components(sigma: SphericalSegre, k: int) -> list[Component]:
    if not 0 <= k <= sigma.dimension:
        return []
    components = []
    ranges = [range(n, -1, -1) for n in sigma.rotation_mults]
    for ks in itertools.product(*ranges):
        rest = k - 2 * sum(ks)
        if rest < 0:
            continue
        for rs in _bounded_tuples(rest, sigma.real_mults):
            factors = [GrassmannianFactor(FactorKind.COMPLEX, ki, n) for ki, n in zip(ks, sigma.rotation_mults)]
            factors += [GrassmannianFactor(FactorKind.REAL, rj, m) for rj, m in zip(rs, sigma.real_mults)]
            components.append(Component(tuple(factors), tuple(ks) + rs))
    return components


def linear_invariant_variety(sigma: SphericalSegre, k: int) -> VarietyDescription:
    """Invariant k-dimensional linear subspaces of an orthogonal map with symbol ``sigma``."""
    if not 0 <= k <= sigma.dimension:
        raise DegreeRangeError(f"k = {k} is outside 0..{sigma.dimension}")
    return VarietyDescription(k, tuple(_linear_components(sigma, k)))


def _products(
    k: int, factor_for, sigma: SphericalSegre, offset: int = 0, flat_first: bool = False
) -> list[Component]:
    """Union over k1 + k2 = k - offset of S_sigma(k1) x factor_for(k2)."""
    components = []
    for k2 in range(k - offset + 1):
        factor = factor_for(k2)
        if factor is None:
            continue
        for linear in _linear_components(sigma, k - offset - k2):
            components.append(linear.times(factor, first=flat_first))
    return components


def invariant_variety(sym: SegreSymbol, k: int) -> VarietyDescription:
    """Invariant k-dimensional totally geodesic submanifolds of an isometry with symbol ``sym``."""
    if not 0 <= k <= sym.n:
        raise DegreeRangeError(f"k = {k} is outside 0..{sym.n}")
    sigma, r = sym.sigma, sym.r
    match sym.space, sym.kind:
        case Space.SPHERICAL, _:
            components = _linear_components(sigma, k + 1)
        case Space.EUCLIDEAN, IsometryKind.ELLIPTIC:
            components = _products(k, lambda k2: _factor(FactorKind.AFFINE, k2, r), sigma)
        case Space.EUCLIDEAN, IsometryKind.HYPERBOLIC:
            # flats containing the translation axis direction
            components = _products(
                k,
                lambda k2: _factor(FactorKind.AFFINE, k2 - 1, r - 1) if k2 >= 1 else None,
                sigma,
            )
        case Space.HYPERBOLIC, IsometryKind.ELLIPTIC:
            components = _products(
                k, lambda k1: _factor(FactorKind.HYPERBOLIC, k1, r - 1), sigma, flat_first=True
            )
        case Space.HYPERBOLIC, IsometryKind.PARABOLIC:
            components = (
                _products(
                    k, lambda k1: _factor(FactorKind.AFFINE, k1, r - 3), sigma, 2, flat_first=True
                )
                if k >= 2
                else []
            )
        case Space.HYPERBOLIC, IsometryKind.HYPERBOLIC:
            components = _linear_components(sigma, k - 1) if k >= 1 else []
        case _:
            raise InvariantViolation(f"unexpected symbol {sym}")
    variety = VarietyDescription(k, tuple(components))
    logger.debug(f"{sym} degree {k}: {variety.render()}")
    return variety


def dimension_vector(sym: SegreSymbol, upto: int | None = None) -> DimensionVector:
    """d_0..d_upto; ``upto`` defaults to n - 1, the range of the published tables."""
    last = sym.n - 1 if upto is None else upto
    if not -1 <= last <= sym.n - 1:
        raise DegreeRangeError(f"upto = {last} is outside -1..{sym.n - 1}")
    entries = []
    for k in range(last + 1):
        dims = invariant_variety(sym, k).dims
        entries.append(dims if dims else (-1,))
    return DimensionVector(tuple(entries))


def reconstruction_degree(space: Space, n: int) -> int:
    return min(RECONSTRUCTION_DEPTH[Space(space)], n - 1)


def signature(sym: SegreSymbol) -> DimensionVector:
    """The part of the dimension vector that determines the symbol."""
    return dimension_vector(sym, reconstruction_degree(sym.space, sym.n))


def reconstruct_symbol(space: Space, n: int, dvecs: DimensionVector) -> SegreSymbol:
    """The unique Segre symbol whose dimension vector starts with ``dvecs``."""
    space = Space(space)
    if not 1 <= len(dvecs) <= n:
        raise DegreeRangeError(f"need d_0 .. d_k with k <= {n - 1}, got {len(dvecs)} degrees")
    upto = len(dvecs) - 1
    matches = [s for s in enumerate_symbols(space, n) if dimension_vector(s, upto) == dvecs]
    if not matches:
        raise NoMatch(f"no {space.value} symbol in dimension {n} has d = {dvecs}")
    if len(matches) > 1:
        raise AmbiguousMatch(
            f"d = {dvecs} fits {len(matches)} symbols: {', '.join(str(s) for s in matches)}"
        )
    return matches[0]


@dataclass(frozen=True)
class Erratum:
    """A printed table value that disagrees with the computed one."""

    space: Space
    n: int
    symbol: str
    printed: str
    computed: str
    note: str


PRINTED_ERRATA: tuple[Erratum, ...] = (
    Erratum(
        Space.SPHERICAL,
        3,
        "[4]",
        printed="[2;4;2]",
        computed="[3;4;3]",
        note="the identity of S^3 fixes every point, so Gamma(0) = P^3 has dimension 3",
    ),
)
