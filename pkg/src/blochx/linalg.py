"""Dense complex linear algebra for small Hilbert spaces (N <= 64).

Contract-checked wrappers around numpy: products, traces, Kronecker
products, and Hermitian eigendecompositions with a deterministic
per-column phase convention so eigenvectors are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITICITY_ATOL = 1e-12
PHASE_MAGNITUDE_CUTOFF = 1e-9
DEGENERACY_ATOL = 1e-9


def as_square_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def matmul(a, b) -> np.ndarray:
    """Product of two square complex matrices of equal dimension."""
    a = as_square_matrix(a)
    b = as_square_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def trace(a) -> complex:
    """Sum of the diagonal entries."""
    return complex(np.trace(as_square_matrix(a)))


def kron(a, b) -> np.ndarray:
    """Kronecker product; its trace is the product of the factor traces."""
    return np.kron(as_square_matrix(a), as_square_matrix(b))


def is_hermitian(a, atol: float = HERMITICITY_ATOL) -> bool:
    a = as_square_matrix(a)
    return bool(np.max(np.abs(a - a.conj().T)) <= atol)


def fix_phase(v: np.ndarray, cutoff: float = PHASE_MAGNITUDE_CUTOFF) -> np.ndarray:
    """Rescale a vector by a unit phase so that its first component of
    magnitude above ``cutoff`` becomes real and positive."""
    v = np.asarray(v, dtype=complex)
    for x in v:
        if abs(x) > cutoff:
            return v * (x.conjugate() / abs(x))
    return v.copy()


@dataclass(frozen=True)
class HermitianEigenSystem:
    """Spectral decomposition A = V diag(w) V† with w ascending.

    Columns of ``eigenvectors`` are unit norm, mutually orthogonal, and
    phase-fixed (first component of magnitude > 1e-9 real positive).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvectors.shape[0]

    def column(self, i: int) -> np.ndarray:
        return self.eigenvectors[:, i]

    def projector(self, i: int) -> np.ndarray:
        v = self.eigenvectors[:, i]
        return np.outer(v, v.conj())


def eigh(a) -> HermitianEigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Raises ValueError if the input deviates from Hermiticity by more than
    1e-12 in any entry.  Degenerate eigenspaces come back with orthonormal
    columns; the internal basis within such a space is whatever the solver
    picked, phase convention applied per column.
    """
    a = as_square_matrix(a)
    if not is_hermitian(a):
        raise ValueError("matrix is not Hermitian within 1e-12")
    w, v = np.linalg.eigh(a)
    v = np.column_stack([fix_phase(v[:, i]) for i in range(v.shape[1])])
    return HermitianEigenSystem(eigenvalues=w, eigenvectors=v)


def degeneracy_groups(values, atol: float = DEGENERACY_ATOL) -> list[list[int]]:
    """Partition indices of ``values`` into groups equal within ``atol``.

    Groups are ordered by value ascending; indices inside a group keep
    their original relative order.  Values are compared against the first
    member of the current group, so near-ties cannot chain into drift.
    """
    values = np.asarray(values, dtype=float)
    order = np.argsort(values, kind="stable")
    groups: list[list[int]] = []
    for idx in order:
        if groups and values[idx] - values[groups[-1][0]] <= atol:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    return groups
