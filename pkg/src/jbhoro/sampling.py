"""Seeded random generators for elements, frames and boundary data.

Entries are i.i.d. complex standard normals rescaled to a target norm;
frames come from Haar-random unitary pairs applied to matrix units, so
generic spectra are covered while planted degeneracies stay available via
the explicit constructors in the test suites.
"""

from __future__ import annotations

import numpy as np

from .space import Element, TripleSpace
from .triple import triple_norm

__all__ = [
    "derive_rng",
    "random_unitary",
    "random_element",
    "random_frame",
    "random_maximal_tripotent",
]


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """Deterministic per-trial generator derived from a root seed and counters."""
    return np.random.default_rng([int(seed)] + [int(k) for k in keys])


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_element(space: TripleSpace, rng: np.random.Generator,
                   norm: float | None = None) -> Element:
    blocks = [rng.normal(size=(p, q)) + 1j * rng.normal(size=(p, q))
              for p, q in space.blocks]
    x = Element(space, blocks)
    if norm is not None:
        current = triple_norm(x)
        if current > 0:
            x = (norm / current) * x
    return x


def random_frame(space: TripleSpace, rng: np.random.Generator,
                 length: int | None = None) -> list[Element]:
    """Mutually orthogonal minimal tripotents, Haar-random per block.

    ``length`` defaults to the full rank; slots are assigned to blocks by a
    random permutation of the available capacity.
    """
    caps = [min(p, q) for p, q in space.blocks]
    if length is None:
        length = sum(caps)
    if length < 1 or length > sum(caps):
        raise ValueError(f"frame length {length} outside 1..{sum(caps)}")
    slots = np.concatenate([[bi] * c for bi, c in enumerate(caps)])
    chosen = rng.permutation(slots)[:length]
    counts = {bi: int(np.sum(chosen == bi)) for bi in range(space.nblocks)}
    tripotents: list[Element] = []
    for bi, (p, q) in enumerate(space.blocks):
        m = counts.get(bi, 0)
        if m == 0:
            continue
        u = random_unitary(p, rng)
        v = random_unitary(q, rng)
        for i in range(m):
            blocks = [np.zeros(shape, dtype=np.complex128) for shape in space.blocks]
            blocks[bi] = np.outer(u[:, i], v[:, i].conj())
            tripotents.append(Element(space, blocks))
    order = rng.permutation(length)
    return [tripotents[i] for i in order]


def random_maximal_tripotent(space: TripleSpace, rng: np.random.Generator) -> Element:
    """A random extreme point of the unit ball: full partial isometries blockwise."""
    blocks = []
    for p, q in space.blocks:
        u = random_unitary(p, rng)
        v = random_unitary(q, rng)
        eye = np.eye(p, q, dtype=np.complex128)
        blocks.append(u @ eye @ v.conj().T)
    return Element(space, blocks)
