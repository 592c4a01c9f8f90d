"""Orthogonal traceless Hermitian generator bases for N-level systems.

For dimension N the basis holds N^2 - 1 matrices built from an orthonormal
basis {|b_1>, ..., |b_N>}: the symmetric off-diagonal pairs, the
antisymmetric (imaginary) pairs, and N - 1 diagonal members, normalized so
that Tr(L_i L_j) = 2 delta_ij.  With the canonical basis and N = 2 this is
exactly the Pauli triple; for N = 3 it is the Gell-Mann family.

The ordering is fixed: all symmetric pairs (j, k) with j < k in
lexicographic order, then the antisymmetric pairs in the same order, then
the diagonal members, so coordinate vectors are reproducible across runs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_square_matrix

UNITARITY_ATOL = 1e-10


def scale_constant(n: int) -> float:
    """sqrt(N(N-1)/2), the radial scale of the generator expansion of a
    unit-trace operator."""
    return float(np.sqrt(n * (n - 1) / 2.0))


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered generator basis of an N-level system.

    ``matrices`` is an (N^2-1, N, N) stack; ``basis`` holds the orthonormal
    basis vectors as columns; ``c`` is sqrt(N(N-1)/2).
    """

    dim: int
    matrices: np.ndarray
    basis: np.ndarray
    c: float

    def __len__(self) -> int:
        return self.matrices.shape[0]

    def __iter__(self):
        return iter(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]


def build_generators(n: int, basis=None) -> GeneratorSet:
    """Construct the ordered generator basis for dimension ``n``.

    ``basis``, if given, must be an n x n unitary whose columns replace the
    canonical basis vectors.  Raises ValueError for n < 2 or a non-unitary
    basis.
    """
    if n < 2:
        raise ValueError(f"dimension must be at least 2, got {n}")
    if basis is None:
        b = np.eye(n, dtype=complex)
    else:
        b = as_square_matrix(basis)
        if b.shape[0] != n:
            raise ValueError(f"basis shape {b.shape} does not match dimension {n}")
        if np.max(np.abs(b.conj().T @ b - np.eye(n))) > UNITARITY_ATOL:
            raise ValueError("basis is not unitary within 1e-10")

    cols = [b[:, i] for i in range(n)]
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            mats.append(np.outer(cols[j], cols[k].conj()) + np.outer(cols[k], cols[j].conj()))
    for j in range(n):
        for k in range(j + 1, n):
            mats.append(-1j * (np.outer(cols[j], cols[k].conj()) - np.outer(cols[k], cols[j].conj())))
    for l in range(1, n):
        diag_sum = sum(np.outer(cols[j], cols[j].conj()) for j in range(l))
        mats.append(np.sqrt(2.0 / (l * (l + 1))) * (diag_sum - l * np.outer(cols[l], cols[l].conj())))

    return GeneratorSet(dim=n, matrices=np.stack(mats), basis=b, c=scale_constant(n))


def expand_on_generators(a, g: GeneratorSet) -> tuple[complex, np.ndarray]:
    """Expand a matrix on the identity plus the generator basis.

    Returns ``(identity_coeff, coeffs)`` with identity_coeff = Tr(a)/N and
    coeffs_i = Tr(a L_i)/2, so that a = identity_coeff * I + sum coeffs_i L_i.
    """
    a = as_square_matrix(a)
    if a.shape[0] != g.dim:
        raise ValueError(f"dimension mismatch: matrix is {a.shape[0]}, generators are {g.dim}")
    identity_coeff = complex(np.trace(a)) / g.dim
    coeffs = np.einsum("kij,ji->k", g.matrices, a) / 2.0
    return identity_coeff, coeffs
