"""Operator-states and their real coordinate vectors in the unit ball.

A unit-trace positive semidefinite matrix D on an N-dimensional Hilbert
space maps to a real vector r of length N^2 - 1 through
D = (1/N)(I + c_N r.L) with c_N = sqrt(N(N-1)/2).  Pure states sit on the
unit sphere, the maximally mixed state at the center, and for N > 2 most
of the ball carries no state at all: the linear combination is always
Hermitian with unit trace but need not be positive.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .generators import GeneratorSet, build_generators
from .linalg import as_square_matrix, fix_phase, is_hermitian

TRACE_ATOL = 1e-12
POSITIVITY_ATOL = 1e-10
NORM_ATOL = 1e-10
PURITY_RANK1_ATOL = 1e-9


@dataclass(frozen=True)
class DensityState:
    """A validated operator-state: Hermitian within 1e-12, unit trace
    within 1e-12, smallest eigenvalue >= -1e-10."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_square_matrix(self.matrix)
        if not is_hermitian(m):
            raise ValueError("density matrix is not Hermitian within 1e-12")
        if abs(np.trace(m) - 1.0) > TRACE_ATOL:
            raise ValueError(f"density matrix trace {np.trace(m):.15g} is not 1")
        smallest = float(np.linalg.eigvalsh(m)[0])
        if smallest < -POSITIVITY_ATOL:
            raise ValueError(f"density matrix has negative eigenvalue {smallest:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class BlochVector:
    """Real coordinate vector of length N^2 - 1, norm at most 1."""

    dim_n: int
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        expected = self.dim_n * self.dim_n - 1
        if c.shape != (expected,):
            raise ValueError(f"expected {expected} coordinates for N={self.dim_n}, got shape {c.shape}")
        if np.linalg.norm(c) > 1.0 + NORM_ATOL:
            raise ValueError(f"coordinate norm {np.linalg.norm(c):.15g} exceeds 1")
        object.__setattr__(self, "coords", c)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))


@dataclass(frozen=True)
class PureState:
    """A unit ket with the global phase fixed so the first component of
    magnitude > 1e-9 is real positive."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.ndim != 1:
            raise ValueError(f"expected a vector of amplitudes, got shape {a.shape}")
        if abs(np.linalg.norm(a) - 1.0) > TRACE_ATOL:
            raise ValueError(f"amplitude norm {np.linalg.norm(a):.15g} is not 1")
        object.__setattr__(self, "amplitudes", fix_phase(a))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def projector(self) -> DensityState:
        return DensityState(np.outer(self.amplitudes, self.amplitudes.conj()))


def state_to_bloch(d: DensityState, g: GeneratorSet) -> BlochVector:
    """Coordinates r_i = (N / 2c_N) Tr(D L_i) of an operator-state."""
    if d.dim != g.dim:
        raise ValueError(f"dimension mismatch: state is {d.dim}, generators are {g.dim}")
    raw = np.einsum("kij,ji->k", g.matrices, d.matrix) * (g.dim / (2.0 * g.c))
    residue = float(np.max(np.abs(raw.imag)))
    if residue > 1e-10:
        raise ValueError(f"imaginary residue {residue:.3e} in coordinates")
    return BlochVector(dim_n=g.dim, coords=raw.real)


def bloch_to_operator(r: BlochVector, g: GeneratorSet) -> np.ndarray:
    """Inverse map (1/N)(I + c_N r.L).

    Always Hermitian with unit trace, but not necessarily positive: the
    result describes a state only where :func:`is_state` says so.
    """
    if r.dim_n != g.dim:
        raise ValueError(f"dimension mismatch: vector is for N={r.dim_n}, generators are {g.dim}")
    n = g.dim
    return (np.eye(n, dtype=complex) + g.c * np.tensordot(r.coords, g.matrices, axes=1)) / n


def purity(r: BlochVector) -> float:
    """Tr D^2 of the mapped operator: 1/N + (1 - 1/N) ||r||^2."""
    n = r.dim_n
    return 1.0 / n + (1.0 - 1.0 / n) * float(r.coords @ r.coords)


def is_state(r: BlochVector, g: GeneratorSet) -> tuple[bool, float]:
    """Whether the mapped operator is positive semidefinite.

    Returns ``(ok, smallest_eigenvalue)``; ok means the smallest eigenvalue
    is >= -1e-10, so exact boundary states are not rejected.
    """
    smallest = float(np.linalg.eigvalsh(bloch_to_operator(r, g))[0])
    return smallest >= -POSITIVITY_ATOL, smallest


def projector_to_ket(p: DensityState) -> PureState:
    """Recover the ket of a rank-1 operator-state.

    The global phase is gone; amplitudes are rebuilt from the first basis
    column with non-negligible population, b_l = <b_l|P|b_k> <b_k|P|b_k>^(-1/2).
    Raises ValueError if the input is not rank-1 (purity off 1 by > 1e-9).
    """
    m = p.matrix
    if abs(np.trace(m @ m).real - 1.0) > PURITY_RANK1_ATOL:
        raise ValueError("state is not rank-1; cannot extract a ket")
    populations = m.diagonal().real
    k = int(np.argmax(populations > 1e-12))
    if populations[k] <= 1e-12:
        raise ValueError("projector has no populated basis column")
    return PureState(m[:, k] / np.sqrt(populations[k]))


def pure_state_from_direction(theta: float, phi: float) -> DensityState:
    """Two-level pure state pointing along spherical angles (theta, phi)."""
    half = theta / 2.0
    c, s = np.cos(half), np.sin(half)
    off = s * c * np.exp(-1j * phi)
    return DensityState(np.array([[c * c, off], [np.conj(off), s * s]], dtype=complex))


def random_density(n: int, rng: np.random.Generator) -> DensityState:
    """Random operator-state G^dagger G / Tr(G^dagger G) from a complex
    Gaussian G; covers the full state region."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = g.conj().T @ g
    return DensityState(m / np.trace(m).real)


def random_ket(n: int, rng: np.random.Generator) -> PureState:
    """Haar-random unit ket from normalized complex Gaussians."""
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState(v / np.linalg.norm(v))


def default_generators(n: int) -> GeneratorSet:
    """Canonical-basis generator set for dimension n."""
    return build_generators(n)
