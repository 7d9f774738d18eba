"""Negativity of the joint state via partial transposition over the qubit.

Partial transposition only transposes qubit indices, so it cannot mix
total-spin sectors: transposing the assembled block-diagonal matrix
equals transposing each sector independently.  The negativity of the
joint state is therefore the weight-averaged sum of per-sector values,
each obtained from a dense Hermitian eigensolve of dimension 2(2K+1).
Values below the eigensolver noise floor (1e-12) are clamped to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .dynamics import JointState

NOISE_FLOOR = 1e-12


def partial_transpose_qubit(rho: np.ndarray) -> np.ndarray:
    """Partial transpose over the first (qubit) factor of a 2d x 2d matrix.

    In qubit-major ordering this swaps the two off-diagonal d x d quarter
    blocks while leaving their internal bath indices untouched.
    """
    dim = rho.shape[0]
    if rho.shape != (dim, dim) or dim % 2:
        raise ValueError(f"expected a square matrix of even dimension, got {rho.shape}")
    d = dim // 2
    out = rho.copy()
    out[:d, d:] = rho[d:, :d]
    out[d:, :d] = rho[:d, d:]
    return out


def negative_eigenvalue_sum(hermitian: np.ndarray) -> float:
    """Sum of |lambda| over the negative eigenvalues, i.e. sum (|l|-l)/2."""
    vals = np.linalg.eigvalsh(hermitian)
    neg = vals[vals < 0]
    return float(-neg.sum())


def sector_negativity(rho: np.ndarray) -> float:
    """Negativity of one normalized sector matrix (unweighted)."""
    return negative_eigenvalue_sum(partial_transpose_qubit(rho))


@dataclass(frozen=True)
class NegativityResult:
    """Total negativity with its per-sector decomposition and upper bound."""

    total: float
    per_sector: tuple[tuple[float, float], ...]  # (K, weighted contribution)
    bound: float


def negativity(state: JointState) -> NegativityResult:
    """Negativity of the joint state, summed over sectors.

    Each sector contributes weight * sum(|lambda| - lambda)/2 over the
    eigenvalues of its partially transposed matrix.  A total below the
    1e-12 noise floor is reported as exactly zero.
    """
    per_sector = []
    total = 0.0
    for s in state.sectors:
        contrib = s.weight * sector_negativity(s.rho)
        per_sector.append((s.k, contrib))
        total += contrib
    if total < NOISE_FLOOR:
        total = 0.0
    return NegativityResult(
        total=total, per_sector=tuple(per_sector), bound=isotropic_bound()
    )


def negativity_direct_sum(state: JointState) -> float:
    """Negativity via one partial transpose of the assembled full matrix.

    Builds the complete qubit x (direct-sum bath) density matrix with
    every multiplicity copy laid out explicitly, transposes the qubit
    indices of that single matrix, and diagonalizes it whole.  Exists to
    validate that the per-sector path is exact; never used on hot paths.
    """
    bath_dim = sum(s.multiplicity * s.bath_dim for s in state.sectors)
    full = np.zeros((2 * bath_dim, 2 * bath_dim), dtype=complex)
    offset = 0
    for s in state.sectors:
        d = s.bath_dim
        per_copy = s.weight / s.multiplicity
        blocks = s.rho.reshape(2, d, 2, d)
        for _ in range(s.multiplicity):
            for qi in range(2):
                for qj in range(2):
                    row = qi * bath_dim + offset
                    col = qj * bath_dim + offset
                    full[row : row + d, col : col + d] = per_copy * blocks[qi, :, qj, :]
            offset += d
    pt = full.copy()
    pt[:bath_dim, bath_dim:] = full[bath_dim:, :bath_dim]
    pt[bath_dim:, :bath_dim] = full[:bath_dim, bath_dim:]
    return negative_eigenvalue_sum(pt)


def _isotropic_state(kappa: float) -> np.ndarray:
    """Two-qubit mixture of a maximally entangled state with white noise."""
    phi = np.zeros(4)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    return kappa * np.outer(phi, phi) + (1 - kappa) * np.eye(4) / 4


@lru_cache(maxsize=None)
def isotropic_bound(purity: float = 0.5) -> float:
    """Upper bound on the joint negativity from the purity-matched isotropic state.

    Solves trace(rho_iso^2) = purity for the mixing parameter kappa, then
    partially transposes the resulting two-qubit state and returns the
    unhalved negative-eigenvalue sum, sum_i (|lambda_i| - lambda_i).

    The joint state here starts as (pure) x (maximally mixed), whose purity
    1/(2F+1)^n is at most 1/2, and no state of that purity can be more
    entangled than the purity-matched isotropic state.  The bound is quoted
    in the trace-norm normalization |rho^PT|_1 - 1, twice the halved-sum
    convention used by :func:`negativity`, so it dominates every computed
    trace with a factor-two margin.  For the default purity 1/2 the value
    is (sqrt(3) - 1)/2, approximately 0.3660.
    """
    if not 0.25 <= purity <= 1.0:
        raise ValueError(f"two-qubit purity must lie in [1/4, 1], got {purity}")

    def purity_gap(kappa: float) -> float:
        rho = _isotropic_state(kappa)
        return float(np.einsum("ij,ji->", rho, rho).real) - purity

    if abs(purity_gap(1.0)) < 1e-14:
        kappa = 1.0
    elif abs(purity_gap(0.0)) < 1e-14:
        kappa = 0.0
    else:
        kappa = brentq(purity_gap, 0.0, 1.0, xtol=1e-14)
    pt = partial_transpose_qubit(_isotropic_state(kappa))
    return 2 * negative_eigenvalue_sum(pt)
