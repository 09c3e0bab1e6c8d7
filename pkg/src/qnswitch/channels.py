"""Partially depolarizing qudit channels and their Kraus representations.

A channel of transparency q maps rho to q*rho + (1-q)*I/d; q = 1 is the
identity channel and q = 0 erases the input to the maximally mixed state.
The unitary part of every Kraus set is built on the Heisenberg-Weyl
operators X(a)Z(b), which form a trace-orthogonal unitary basis of the
d x d matrices: tr(U_i^dag U_j) = d * delta_ij.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .symgroup import Permutation, apply_order

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DensityMatrix:
    """A d x d density matrix: Hermitian, unit trace, positive semidefinite."""

    entries: np.ndarray

    def __post_init__(self):
        entries = _frozen(self.entries)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {entries.shape}")
        if np.abs(entries - entries.conj().T).max() > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(entries) - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {np.trace(entries)} != 1")
        if np.linalg.eigvalsh(entries).min() < -PSD_TOL:
            raise ValueError("density matrix has a negative eigenvalue")

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    @classmethod
    def basis_state(cls, d: int, index: int = 0) -> DensityMatrix:
        mat = np.zeros((d, d), dtype=complex)
        mat[index, index] = 1.0
        return cls(mat)

    @classmethod
    def pure(cls, vector: Sequence[complex]) -> DensityMatrix:
        v = np.asarray(vector, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, d: int) -> DensityMatrix:
        return cls(np.eye(d, dtype=complex) / d)


def random_density(d: int, rng: np.random.Generator) -> DensityMatrix:
    """Random full-rank density matrix (normalized Wishart draw)."""
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = m @ m.conj().T
    return DensityMatrix(h / np.trace(h))


def random_pure(d: int, rng: np.random.Generator) -> DensityMatrix:
    """Random pure state, uniform under the unitary group."""
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return DensityMatrix.pure(v)


@dataclass(frozen=True)
class DepolarizingChannel:
    """Channel rho -> q*rho + (1-q)*I/d; 1-q is the depolarization strength."""

    q: float
    d: int

    def __post_init__(self):
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "d", int(self.d))
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"transparency must lie in [0, 1], got {self.q}")
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")


@dataclass(frozen=True)
class UnitaryBasis:
    """d^2 unitaries forming a trace-orthogonal basis; element 1 is the identity.

    Domain indices are 1-based: element(i) for i in 1..d^2.
    """

    d: int
    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        elements = tuple(_frozen(u) for u in self.elements)
        object.__setattr__(self, "elements", elements)
        d = self.d
        if len(elements) != d * d:
            raise ValueError(f"expected {d * d} elements, got {len(elements)}")
        if np.abs(elements[0] - np.eye(d)).max() > HERMITIAN_TOL:
            raise ValueError("element with index 1 must be the identity")
        stack = np.stack(elements)
        for u in elements:
            if np.abs(u @ u.conj().T - np.eye(d)).max() > HERMITIAN_TOL:
                raise ValueError("basis element is not unitary")
        gram = np.einsum("aij,bij->ab", stack.conj(), stack)
        if np.abs(gram - d * np.eye(d * d)).max() > HERMITIAN_TOL:
            raise ValueError("basis is not trace-orthogonal")

    def element(self, i: int) -> np.ndarray:
        """1-based access: element(1) is the identity."""
        if not 1 <= i <= self.d * self.d:
            raise ValueError(f"basis index must be in 1..{self.d * self.d}, got {i}")
        return self.elements[i - 1]


@lru_cache(maxsize=None)
def weyl_basis(d: int) -> UnitaryBasis:
    """Heisenberg-Weyl basis {X(a)Z(b)} in row-major order over (a, b).

    X(a)|l> = |(l+a) mod d>, Z(b)|l> = omega^(b*l)|l> with omega = exp(2*pi*i/d)
    and no extra global phase. Index i in 1..d^2 maps to the pair
    (a, b) = ((i-1) div d, (i-1) mod d), so index 1 is X(0)Z(0) = I.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    omega = np.exp(2j * np.pi / d)
    shift = np.zeros((d, d), dtype=complex)
    for l in range(d):
        shift[(l + 1) % d, l] = 1.0
    clock = np.diag(omega ** np.arange(d))
    elements = []
    for a in range(d):
        xa = np.linalg.matrix_power(shift, a)
        for b in range(d):
            elements.append(xa @ np.linalg.matrix_power(clock, b))
    return UnitaryBasis(d=d, elements=tuple(elements))


def apply_depolarizing(rho: DensityMatrix, q: float) -> DensityMatrix:
    """Send rho to q*rho + (1-q)*I/d."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"transparency must lie in [0, 1], got {q}")
    d = rho.d
    return DensityMatrix(q * rho.entries + (1.0 - q) * np.eye(d) / d)


def kraus_set(q: float, d: int, basis: UnitaryBasis | None = None) -> list[np.ndarray]:
    """Kraus operators of the depolarizing channel, indexed 0..d^2.

    Index 0 is sqrt(q)*I, absorbing the transparent part of the channel
    directly (this stays finite at q = 1, where a basis-side scaled identity
    would be singular). Indices 1..d^2 are sqrt(1-q)/d times the Weyl
    unitaries. The set satisfies sum_i K_i^dag K_i = I.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"transparency must lie in [0, 1], got {q}")
    if basis is None:
        basis = weyl_basis(d)
    elif basis.d != d:
        raise ValueError(f"basis dimension {basis.d} != requested {d}")
    scale = np.sqrt(1.0 - q) / d
    return [np.sqrt(q) * np.eye(d, dtype=complex)] + [scale * u for u in basis.elements]


def compose_definite(
    channels: Sequence[DepolarizingChannel],
    p: Permutation,
    rho: DensityMatrix,
) -> DensityMatrix:
    """Apply the channels to rho in the definite causal order p.

    The rearranged sequence reads as an operator product, so its last
    element acts first. Depolarizing channels commute as maps, hence the
    result equals a single depolarizing channel of transparency prod(q_j).
    """
    if len(channels) != p.n:
        raise ValueError(f"expected {p.n} channels, got {len(channels)}")
    for ch in channels:
        if ch.d != rho.d:
            raise ValueError(f"channel dimension {ch.d} != state dimension {rho.d}")
    out = rho
    for ch in reversed(apply_order(p, list(channels))):
        out = apply_depolarizing(out, ch.q)
    return out
