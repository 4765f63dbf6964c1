"""Spaces of block matrices with sup norm, their elements and operators.

A space is an l-infinity direct sum of rectangular complex matrix blocks
M_{p,q}.  Elements carry one matrix per block.  Linear operators are stored
as dense complex matrices acting on the fixed global coordinates obtained by
vectorizing every block in column-major order and concatenating.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ShapeError

__all__ = ["TripleSpace", "Element", "LinOp"]


@dataclass(frozen=True)
class TripleSpace:
    """An l-infinity direct sum of complex matrix blocks.

    blocks: tuple of (p, q) with p, q >= 1.  The rank is the maximal number
    of mutually orthogonal tripotents, sum of min(p, q) over blocks.
    """

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("a space needs at least one block")
        blocks = tuple((int(p), int(q)) for p, q in self.blocks)
        if any(p < 1 or q < 1 for p, q in blocks):
            raise ValueError("block dimensions must be >= 1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def complex_dim(self) -> int:
        return sum(p * q for p, q in self.blocks)

    @property
    def rank(self) -> int:
        return sum(min(p, q) for p, q in self.blocks)

    @property
    def nblocks(self) -> int:
        return len(self.blocks)

    def block_offsets(self) -> list[int]:
        """Start index of each block in the global coordinate vector."""
        offs, pos = [], 0
        for p, q in self.blocks:
            offs.append(pos)
            pos += p * q
        return offs

    def inner_weights(self) -> np.ndarray:
        """Per-coordinate weights (p+q)/2 of the trace inner product.

        On a block M_{p,q} the trace of the box operator x [] y equals
        ((p+q)/2) tr(x y*), so the trace form is the Frobenius form scaled
        by (p+q)/2 blockwise.
        """
        w = np.empty(self.complex_dim)
        pos = 0
        for p, q in self.blocks:
            w[pos:pos + p * q] = 0.5 * (p + q)
            pos += p * q
        return w

    def zero(self) -> "Element":
        return Element(self, [np.zeros((p, q), dtype=np.complex128)
                              for p, q in self.blocks])

    def basis(self) -> Iterator["Element"]:
        """Global coordinate basis elements (matrix units, block by block)."""
        n = self.complex_dim
        for i in range(n):
            v = np.zeros(n, dtype=np.complex128)
            v[i] = 1.0
            yield Element.from_vec(self, v)

    def matrix_unit(self, block: int, row: int, col: int) -> "Element":
        x = self.zero()
        b = [blk.copy() for blk in x.blocks]
        b[block][row, col] = 1.0
        return Element(self, b)


class Element:
    """A point of the space: one complex matrix per block.

    Instances behave as immutable values; the block arrays are flagged
    non-writeable.  Arithmetic returns fresh elements.
    """

    __slots__ = ("space", "blocks")

    def __init__(self, space: TripleSpace, blocks: Sequence[np.ndarray]):
        if len(blocks) != space.nblocks:
            raise ShapeError(f"expected {space.nblocks} blocks, got {len(blocks)}")
        mats = []
        for (p, q), blk in zip(space.blocks, blocks):
            arr = np.asarray(blk, dtype=np.complex128)
            if arr.shape != (p, q):
                raise ShapeError(f"block shape {arr.shape} does not match ({p},{q})")
            arr = arr.copy()
            arr.flags.writeable = False
            mats.append(arr)
        self.space = space
        self.blocks = tuple(mats)

    # -- construction --------------------------------------------------

    @classmethod
    def from_vec(cls, space: TripleSpace, v: np.ndarray) -> "Element":
        v = np.asarray(v, dtype=np.complex128).ravel()
        if v.size != space.complex_dim:
            raise ShapeError(f"vector length {v.size} != dim {space.complex_dim}")
        blocks, pos = [], 0
        for p, q in space.blocks:
            blocks.append(v[pos:pos + p * q].reshape((p, q), order="F"))
            pos += p * q
        return cls(space, blocks)

    def vec(self) -> np.ndarray:
        """Global coordinates: blocks flattened column-major, concatenated."""
        return np.concatenate([b.ravel(order="F") for b in self.blocks])

    # -- arithmetic ----------------------------------------------------

    def _check_same_space(self, other: "Element") -> None:
        if self.space != other.space:
            raise ShapeError("elements live in different spaces")

    def __add__(self, other: "Element") -> "Element":
        self._check_same_space(other)
        return Element(self.space, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "Element") -> "Element":
        self._check_same_space(other)
        return Element(self.space, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self) -> "Element":
        return Element(self.space, [-a for a in self.blocks])

    def __mul__(self, scalar: complex) -> "Element":
        return Element(self.space, [scalar * a for a in self.blocks])

    __rmul__ = __mul__

    def conj_transpose_blocks(self) -> list[np.ndarray]:
        """Blockwise conjugate transposes (used by quadratic maps)."""
        return [b.conj().T for b in self.blocks]

    def frobenius(self) -> float:
        return float(np.sqrt(sum(np.vdot(b, b).real for b in self.blocks)))

    def __repr__(self) -> str:
        shapes = ",".join(f"{p}x{q}" for p, q in self.space.blocks)
        return f"Element[{shapes}]"


@dataclass
class LinOp:
    """A complex-linear operator in the fixed global coordinates.

    ``matrix`` has shape (dim, dim) and acts on ``Element.vec()``.
    ``self_adjoint_hint`` marks operators expected to be self-adjoint with
    respect to the trace inner product; it is advisory and verified
    numerically wherever eigenvalues are extracted.
    """

    space: TripleSpace
    matrix: np.ndarray
    self_adjoint_hint: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        n = self.space.complex_dim
        if m.shape != (n, n):
            raise ShapeError(f"operator matrix shape {m.shape} != ({n},{n})")
        self.matrix = m

    @classmethod
    def identity(cls, space: TripleSpace) -> "LinOp":
        return cls(space, np.eye(space.complex_dim, dtype=np.complex128),
                   self_adjoint_hint=True)

    def __call__(self, x: Element) -> Element:
        if x.space != self.space:
            raise ShapeError("operator and element spaces differ")
        return Element.from_vec(self.space, self.matrix @ x.vec())

    def __matmul__(self, other: "LinOp") -> "LinOp":
        if other.space != self.space:
            raise ShapeError("operator spaces differ")
        return LinOp(self.space, self.matrix @ other.matrix)

    def __add__(self, other: "LinOp") -> "LinOp":
        if other.space != self.space:
            raise ShapeError("operator spaces differ")
        return LinOp(self.space, self.matrix + other.matrix,
                     self_adjoint_hint=self.self_adjoint_hint and other.self_adjoint_hint)

    def __sub__(self, other: "LinOp") -> "LinOp":
        if other.space != self.space:
            raise ShapeError("operator spaces differ")
        return LinOp(self.space, self.matrix - other.matrix,
                     self_adjoint_hint=self.self_adjoint_hint and other.self_adjoint_hint)

    def __mul__(self, scalar: complex) -> "LinOp":
        return LinOp(self.space, scalar * self.matrix)

    __rmul__ = __mul__
