"""Normal-form value types shared by the three classifiers."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.linalg

from isoforms.geometry.numkit import Matrix, Tolerance, inf_norm

logger = logging.getLogger(__name__)

THETA = np.array(
    [
        [1.5, 1.0, -0.5],
        [1.0, 1.0, -1.0],
        [0.5, 1.0, 0.5],
    ]
)

# (e0 e1 e2) = (u v w) P maps the parabolic chain onto a Lorentz-orthonormal basis.
PARABOLIC_GRAM = np.array(
    [
        [0.0, 0.0, -1.0],
        [0.0, 1.0, -0.5],
        [-1.0, -0.5, 0.0],
    ]
)
PARABOLIC_CHANGE = np.array(
    [
        [0.375, 0.0, 0.625],
        [0.5, 1.0, -0.5],
        [1.0, 0.0, -1.0],
    ]
)


class BlockKind(str, Enum):
    ROT = "rot"
    POS_ID = "pos_id"
    NEG_ID = "neg_id"
    TRANS = "trans"
    THETA = "theta"
    BOOST = "boost"


def rotation(angle: float) -> Matrix:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def boost(rapidity: float) -> Matrix:
    c, s = np.cosh(rapidity), np.sinh(rapidity)
    return np.array([[c, s], [s, c]])


@dataclass(frozen=True)
class Block:
    """One canonical block.

    ``count`` is the number of rotation planes for ``ROT`` and the size of an
    identity block for ``POS_ID``/``NEG_ID``. ``parameter`` holds the rotation
    angle, the translation length or the rapidity.
    """

    kind: BlockKind
    count: int = 1
    parameter: float | None = None

    @classmethod
    def rot(cls, angle: float, count: int = 1) -> "Block":
        return cls(BlockKind.ROT, count, float(angle))

    @classmethod
    def pos_id(cls, size: int) -> "Block":
        return cls(BlockKind.POS_ID, size)

    @classmethod
    def neg_id(cls, size: int) -> "Block":
        return cls(BlockKind.NEG_ID, size)

    @classmethod
    def trans(cls, length: float) -> "Block":
        return cls(BlockKind.TRANS, 1, float(length))

    @classmethod
    def theta(cls) -> "Block":
        return cls(BlockKind.THETA)

    @classmethod
    def boost(cls, rapidity: float) -> "Block":
        return cls(BlockKind.BOOST, 1, float(rapidity))

    @property
    def size(self) -> int:
        if self.kind is BlockKind.ROT:
            return 2 * self.count
        if self.kind in (BlockKind.POS_ID, BlockKind.NEG_ID):
            return self.count
        if self.kind is BlockKind.THETA:
            return 3
        return 2

    def matrix(self) -> Matrix:
        match self.kind:
            case BlockKind.ROT:
                return scipy.linalg.block_diag(*[rotation(self.parameter)] * self.count)
            case BlockKind.POS_ID:
                return np.eye(self.count)
            case BlockKind.NEG_ID:
                return -np.eye(self.count)
            case BlockKind.TRANS:
                return np.array([[1.0, self.parameter], [0.0, 1.0]])
            case BlockKind.THETA:
                return THETA.copy()
            case BlockKind.BOOST:
                return boost(self.parameter)

    def descriptor(self, name: str | None = None, digits: int = 6) -> str:
        """Short text form, e.g. ``R(0.7)^2``; ``name`` replaces the number."""
        value = name if name is not None else (
            f"{self.parameter:.{digits}g}" if self.parameter is not None else ""
        )
        match self.kind:
            case BlockKind.ROT:
                return f"R({value})" + (f"^{self.count}" if self.count > 1 else "")
            case BlockKind.POS_ID:
                return f"I{self.count}"
            case BlockKind.NEG_ID:
                return f"-I{self.count}"
            case BlockKind.TRANS:
                return f"T({value})"
            case BlockKind.THETA:
                return "Theta"
            case BlockKind.BOOST:
                return f"Omega({value})"


def canonical_rotations(blocks: list[Block]) -> list[Block]:
    """Rotation blocks by decreasing plane count, then decreasing angle."""
    return sorted(blocks, key=lambda b: (-b.count, -b.parameter))


@dataclass(frozen=True)
class NormalForm:
    """Ordered canonical blocks; ``sign`` is -1 for a negated improper Lorentz form."""

    blocks: tuple[Block, ...]
    sign: int = 1

    @property
    def size(self) -> int:
        return sum(b.size for b in self.blocks)

    def matrix(self) -> Matrix:
        if not self.blocks:
            return np.zeros((0, 0))
        return self.sign * scipy.linalg.block_diag(*[b.matrix() for b in self.blocks])

    def of_kind(self, kind: BlockKind) -> list[Block]:
        return [b for b in self.blocks if b.kind is kind]

    @property
    def angles(self) -> list[float]:
        return [b.parameter for b in self.of_kind(BlockKind.ROT) for _ in range(b.count)]

    @property
    def translation_length(self) -> float | None:
        trans = self.of_kind(BlockKind.TRANS)
        return trans[0].parameter if trans else None

    @property
    def rapidity(self) -> float | None:
        boosts = self.of_kind(BlockKind.BOOST)
        return boosts[0].parameter if boosts else None

    def descriptor(self, symbolic: bool = False, digits: int = 6) -> str:
        """Blocks joined by ``+``; ``symbolic`` names parameters theta1, a, t."""
        parts = []
        angle_index = 0
        for block in self.blocks:
            name = None
            if symbolic:
                if block.kind is BlockKind.ROT:
                    angle_index += 1
                    name = f"theta{angle_index}"
                elif block.kind is BlockKind.TRANS:
                    name = "a"
                elif block.kind is BlockKind.BOOST:
                    name = "t"
            parts.append(block.descriptor(name, digits))
        text = " + ".join(parts)
        return f"-({text})" if self.sign < 0 else text


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str


@dataclass(frozen=True)
class ConjugationResult:
    """Normal form together with a group element Q with Q^-1 A Q = form_matrix."""

    form: NormalForm
    form_matrix: Matrix
    conjugator: Matrix
    residual: float
    group_residual: float = 0.0
    diagnostics: tuple[Diagnostic, ...] = field(default=())
    improper: bool = False


def conclude(
    a: Matrix,
    form: NormalForm,
    conjugator: Matrix,
    group_residual: float,
    tol: Tolerance,
    diagnostics: list[Diagnostic] | tuple[Diagnostic, ...] = (),
    improper: bool = False,
) -> ConjugationResult:
    """Assemble a :class:`ConjugationResult` and measure its residual."""
    form_matrix = form.matrix()
    residual = inf_norm(np.linalg.solve(conjugator, a @ conjugator) - form_matrix)
    bound = tol.residual_tol * max(1.0, inf_norm(a))
    if residual > bound:
        logger.warning(f"conjugation residual {residual:.3e} exceeds {bound:.3e}")
    if group_residual > tol.residual_tol:
        logger.warning(f"conjugator group residual {group_residual:.3e}")
    return ConjugationResult(
        form=form,
        form_matrix=form_matrix,
        conjugator=conjugator,
        residual=residual,
        group_residual=group_residual,
        diagnostics=tuple(diagnostics),
        improper=improper,
    )
