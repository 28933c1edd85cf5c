"""Segre symbols: data model, text grammar, class counts and enumeration.

Text forms::

    spherical   [(2 2),1]   [3,1]   [0]
    euclidean   [e;2;1]     [h;1;(1 1)]
    hyperbolic  [p;4;0]     [h;2;1,1]

A rotation item ``(k k)`` records ``k`` rotation planes sharing one angle;
a bare integer is the multiplicity of a real eigenvalue ±1.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator

from isoforms.errors import InvariantViolation, SymbolSyntaxError, UnsupportedDimension


class Space(str, Enum):
    SPHERICAL = "spherical"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"


class IsometryKind(str, Enum):
    ELLIPTIC = "e"
    PARABOLIC = "p"
    HYPERBOLIC = "h"

    @property
    def label(self) -> str:
        return {"e": "elliptic", "p": "parabolic", "h": "hyperbolic"}[self.value]


# Kind order used by the published tables: e, h, p.
_KIND_RANK = {None: 0, IsometryKind.ELLIPTIC: 0, IsometryKind.HYPERBOLIC: 1, IsometryKind.PARABOLIC: 2}


def _check_descending_positive(values: tuple[int, ...], what: str) -> None:
    if any(v < 1 for v in values):
        raise InvariantViolation(f"{what} must be positive, got {values}")
    if list(values) != sorted(values, reverse=True):
        raise InvariantViolation(f"{what} must be sorted descending, got {values}")


@dataclass(frozen=True)
class SphericalSegre:
    """Sign-blind symbol of an orthogonal map."""

    rotation_mults: tuple[int, ...] = ()
    real_mults: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation_mults", tuple(int(v) for v in self.rotation_mults))
        object.__setattr__(self, "real_mults", tuple(int(v) for v in self.real_mults))
        _check_descending_positive(self.rotation_mults, "rotation multiplicities")
        _check_descending_positive(self.real_mults, "real multiplicities")
        if len(self.real_mults) > 2:
            raise InvariantViolation("at most two real eigenvalues (+1 and -1)")

    @property
    def dimension(self) -> int:
        """Linear dimension of the space the map acts on."""
        return 2 * sum(self.rotation_mults) + sum(self.real_mults)

    @property
    def rotation_weight(self) -> int:
        return sum(self.rotation_mults)

    @property
    def is_empty(self) -> bool:
        return not self.rotation_mults and not self.real_mults

    def items(self) -> str:
        parts = [f"({k} {k})" for k in self.rotation_mults]
        parts += [str(m) for m in self.real_mults]
        return ",".join(parts) if parts else "0"


@dataclass(frozen=True)
class EuclideanSegre:
    kind: IsometryKind
    r: int
    sigma_r: SphericalSegre

    def __post_init__(self) -> None:
        if self.kind is IsometryKind.PARABOLIC:
            raise InvariantViolation("Euclidean isometries are elliptic or hyperbolic")
        if self.r < 0:
            raise InvariantViolation(f"r must be non-negative, got {self.r}")
        if self.kind is IsometryKind.HYPERBOLIC and self.r < 1:
            raise InvariantViolation("a hyperbolic Euclidean isometry needs r >= 1")
        if len(self.sigma_r.real_mults) > 1:
            raise InvariantViolation("the non-unit part carries only the eigenvalue -1")

    @property
    def dimension(self) -> int:
        return self.r + self.sigma_r.dimension


@dataclass(frozen=True)
class HyperbolicSegre:
    kind: IsometryKind
    r: int
    sigma_s: SphericalSegre

    def __post_init__(self) -> None:
        if self.kind is IsometryKind.ELLIPTIC and self.r < 1:
            raise InvariantViolation("an elliptic Lorentz map has r >= 1")
        if self.kind is IsometryKind.PARABOLIC and self.r < 3:
            raise InvariantViolation("a parabolic Lorentz map has r >= 3")
        if self.kind is IsometryKind.HYPERBOLIC and self.r != 2:
            raise InvariantViolation("a hyperbolic Lorentz map has r = 2")
        if self.kind is not IsometryKind.HYPERBOLIC and len(self.sigma_s.real_mults) > 1:
            raise InvariantViolation("the spatial part carries only the eigenvalue -1")

    @property
    def dimension(self) -> int:
        return self.r + self.sigma_s.dimension


Body = SphericalSegre | EuclideanSegre | HyperbolicSegre


@dataclass(frozen=True)
class SegreSymbol:
    """A Segre symbol of an isometry of the n-dimensional space form."""

    space: Space
    n: int
    body: Body

    def __post_init__(self) -> None:
        expected = {
            Space.SPHERICAL: SphericalSegre,
            Space.EUCLIDEAN: EuclideanSegre,
            Space.HYPERBOLIC: HyperbolicSegre,
        }[self.space]
        if not isinstance(self.body, expected):
            raise InvariantViolation(f"{self.space.value} symbol needs a {expected.__name__}")
        linear_dim = self.n if self.space is Space.EUCLIDEAN else self.n + 1
        if self.body.dimension != linear_dim:
            raise InvariantViolation(
                f"symbol accounts for {self.body.dimension} dimensions, expected {linear_dim}"
            )

    @property
    def kind(self) -> IsometryKind | None:
        return None if isinstance(self.body, SphericalSegre) else self.body.kind

    @property
    def r(self) -> int | None:
        return None if isinstance(self.body, SphericalSegre) else self.body.r

    @property
    def sigma(self) -> SphericalSegre:
        """The orthogonal part: the whole symbol, sigma_R or sigma_s."""
        if isinstance(self.body, SphericalSegre):
            return self.body
        if isinstance(self.body, EuclideanSegre):
            return self.body.sigma_r
        return self.body.sigma_s

    def sort_key(self) -> tuple:
        sigma = self.sigma
        return (
            _KIND_RANK[self.kind],
            -(self.r or 0),
            sigma.rotation_weight,
            tuple(-k for k in sigma.rotation_mults),
            tuple(-m for m in sigma.real_mults),
        )

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class ClassCount:
    space: Space
    n: int
    total: int
    elliptic: int | None = None
    parabolic: int | None = None
    hyperbolic: int | None = None

    def by_kind(self) -> dict[str, int]:
        counts = {"elliptic": self.elliptic, "parabolic": self.parabolic, "hyperbolic": self.hyperbolic}
        return {k: v for k, v in counts.items() if v is not None}


# --- counts -----------------------------------------------------------------


@lru_cache(maxsize=None)
def partition_count(k: int) -> int:
    """Number of partitions of k (Euler's pentagonal recurrence)."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    table = [1] + [0] * k
    for m in range(1, k + 1):
        total = 0
        for j in itertools.count(1):
            g1 = j * (3 * j - 1) // 2
            if g1 > m:
                break
            sign = 1 if j % 2 else -1
            total += sign * table[m - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= m:
                total += sign * table[m - g2]
        table[m] = total
    return table[k]


def spherical_count(n: int) -> int:
    """s(n); s(-1) = 1 counts the empty orthogonal symbol."""
    half = (n + 1) // 2
    return sum(partition_count(j) * (half - j + 1) for j in range(half + 1))


def _elliptic_count(n: int) -> int:
    if n < 0:
        return 0
    return sum(partition_count(j) * (n - 2 * j + 1) for j in range(n // 2 + 1))


def euclidean_count_sum_form(n: int) -> int:
    """e(n) written as the double sum over i = n-1, n."""
    return sum(
        partition_count(j) * (i - 2 * j + 1)
        for i in (n - 1, n)
        for j in range(i // 2 + 1)
    )


_MIN_DIMENSION = {Space.SPHERICAL: 0, Space.EUCLIDEAN: 1, Space.HYPERBOLIC: 1}


def _check_dimension(space: Space, n: int) -> None:
    if n < _MIN_DIMENSION[space]:
        raise UnsupportedDimension(
            f"{space.value} space needs n >= {_MIN_DIMENSION[space]}, got {n}"
        )


def count_classes(space: Space, n: int) -> ClassCount:
    space = Space(space)
    _check_dimension(space, n)
    if space is Space.SPHERICAL:
        return ClassCount(space, n, spherical_count(n))
    if space is Space.EUCLIDEAN:
        elliptic, hyperbolic = _elliptic_count(n), _elliptic_count(n - 1)
        return ClassCount(space, n, elliptic + hyperbolic, elliptic=elliptic, hyperbolic=hyperbolic)
    elliptic = _elliptic_count(n)
    parabolic = _elliptic_count(n - 2)
    hyperbolic = spherical_count(n - 2)
    return ClassCount(
        space,
        n,
        elliptic + parabolic + hyperbolic,
        elliptic=elliptic,
        parabolic=parabolic,
        hyperbolic=hyperbolic,
    )


# --- enumeration ------------------------------------------------------------


@lru_cache(maxsize=None)
def partitions(k: int, largest: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All partitions of k as descending tuples with parts <= largest."""
    if largest is None:
        largest = k
    if k == 0:
        return ((),)
    result = []
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            result.append((first,) + rest)
    return tuple(result)


def spherical_symbols(dim: int, max_real: int = 2) -> Iterator[SphericalSegre]:
    """Every sign-blind orthogonal symbol on a space of linear dimension ``dim``."""
    for weight in range(dim // 2 + 1):
        rest = dim - 2 * weight
        if max_real == 2:
            reals = [tuple(m for m in (rest - low, low) if m) for low in range(rest // 2 + 1)]
        else:
            reals = [(rest,) if rest else ()]
        for rotations in partitions(weight):
            for real in reals:
                yield SphericalSegre(rotations, real)


def _unsorted_symbols(space: Space, n: int) -> Iterator[SegreSymbol]:
    if space is Space.SPHERICAL:
        for sigma in spherical_symbols(n + 1):
            yield SegreSymbol(space, n, sigma)
        return
    if space is Space.EUCLIDEAN:
        for kind, low in ((IsometryKind.ELLIPTIC, 0), (IsometryKind.HYPERBOLIC, 1)):
            for r in range(low, n + 1):
                for sigma in spherical_symbols(n - r, max_real=1):
                    yield SegreSymbol(space, n, EuclideanSegre(kind, r, sigma))
        return
    for kind, low in ((IsometryKind.ELLIPTIC, 1), (IsometryKind.PARABOLIC, 3)):
        for r in range(low, n + 2):
            for sigma in spherical_symbols(n + 1 - r, max_real=1):
                yield SegreSymbol(space, n, HyperbolicSegre(kind, r, sigma))
    for sigma in spherical_symbols(n - 1):
        yield SegreSymbol(space, n, HyperbolicSegre(IsometryKind.HYPERBOLIC, 2, sigma))


def enumerate_symbols(space: Space, n: int) -> list[SegreSymbol]:
    """All Segre symbols of the space, in the order of the published tables."""
    space = Space(space)
    _check_dimension(space, n)
    return sorted(_unsorted_symbols(space, n), key=SegreSymbol.sort_key)


# --- grammar ----------------------------------------------------------------


def render(sym: SegreSymbol) -> str:
    body = sym.body
    if isinstance(body, SphericalSegre):
        return f"[{body.items()}]"
    sigma = body.sigma_r if isinstance(body, EuclideanSegre) else body.sigma_s
    return f"[{body.kind.value};{body.r};{sigma.items()}]"


_INTEGER = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise SymbolSyntaxError(f"expected {char!r}, found {found}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        match = _INTEGER.match(self.text, self.pos)
        if not match:
            raise SymbolSyntaxError("expected an integer", self.pos)
        self.pos = match.end()
        return int(match.group())

    def kind(self, allowed: str) -> IsometryKind:
        char = self.peek()
        if not char or char not in allowed:
            raise SymbolSyntaxError(f"expected one of {', '.join(allowed)}", self.pos)
        self.pos += 1
        return IsometryKind(char)

    def items(self) -> SphericalSegre:
        """Inner item list, or ``0`` for the empty list."""
        if self.peek() == "0":
            self.pos += 1
            return SphericalSegre()
        rotations: list[int] = []
        reals: list[int] = []
        while True:
            if self.peek() == "(":
                self.pos += 1
                start = self.pos
                first = self.integer()
                self.expect(" ")
                second = self.integer()
                if first != second:
                    raise SymbolSyntaxError("rotation item must repeat its multiplicity", start)
                self.expect(")")
                rotations.append(first)
            else:
                reals.append(self.integer())
            if self.peek() != ",":
                break
            self.pos += 1
        return SphericalSegre(
            tuple(sorted(rotations, reverse=True)), tuple(sorted(reals, reverse=True))
        )

    def end(self) -> None:
        if self.pos != len(self.text):
            raise SymbolSyntaxError("unexpected trailing text", self.pos)


def parse(text: str, space: Space, n: int) -> SegreSymbol:
    """Parse a Segre string; inverse of :func:`render`."""
    space = Space(space)
    p = _Parser(text.strip())
    p.expect("[")
    if space is Space.SPHERICAL:
        body: Body = p.items()
    else:
        kind = p.kind("eh" if space is Space.EUCLIDEAN else "eph")
        p.expect(";")
        r = p.integer()
        p.expect(";")
        sigma = p.items()
        if space is Space.EUCLIDEAN:
            body = EuclideanSegre(kind, r, sigma)
        else:
            body = HyperbolicSegre(kind, r, sigma)
    p.expect("]")
    p.end()
    return SegreSymbol(space, n, body)
