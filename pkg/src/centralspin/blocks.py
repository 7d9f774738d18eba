"""Box-model Hamiltonian blocks and their closed-form eigensystem.

The joint Hamiltonian of qubit and bath is

    H = -g mu_B B S_z + A S.K,
    S.K = S_z K_z + (S+ K- + S- K+) / 2,

with S the qubit spin-1/2 and K the conserved total bath spin.  Within a
sector of fixed K the flip-flop term only couples |up, K, m> to
|down, K, m+1>, so H splits into 2x2 blocks plus the two unpaired edge
levels |up, K, K> and |down, K, -K>.  Everything here is analytic; the
assembled 2x2 matrix is the ground truth and the closed forms are checked
against its numerical diagonalization in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import atan2, cos, sin, sqrt

import numpy as np

from .constants import DEFAULT_A_UEV, DEFAULT_G_FACTOR, MU_B_UEV_PER_T


@dataclass(frozen=True)
class PhysicalParams:
    """Couplings and field for the joint evolution.

    ``a_uev`` is the per-nucleus box coupling (energy), ``bfield_t`` the
    magnetic field along z in Tesla, ``g_factor`` the electron g-factor.
    A negative field is folded onto the positive axis: the joint dynamics
    is symmetric under flipping the qubit basis together with the field
    sign, and negativity is blind to that relabeling.
    """

    a_uev: float = DEFAULT_A_UEV
    bfield_t: float = 0.0
    g_factor: float = DEFAULT_G_FACTOR

    def __post_init__(self):
        if self.a_uev < 0:
            raise ValueError(f"coupling must be nonnegative, got {self.a_uev!r}")
        if self.bfield_t < 0:
            object.__setattr__(self, "bfield_t", -self.bfield_t)

    @property
    def zeeman_uev(self) -> float:
        """Signed qubit Zeeman energy g mu_B B (ueV)."""
        return self.g_factor * MU_B_UEV_PER_T * self.bfield_t


@dataclass(frozen=True)
class BlockEigensystem:
    """Eigenpairs of one flip-flop block span{|up,K,m>, |down,K,m+1>}."""

    k: float
    m: float
    sin_theta: float
    cos_theta: float
    e_plus: float
    e_minus: float

    @property
    def eigenvectors(self) -> np.ndarray:
        """Columns (+, -) in the (|up,K,m>, |down,K,m+1>) basis."""
        c, s = self.cos_theta, self.sin_theta
        return np.array([[c, -s], [s, c]])


def _validate_block_m(k: float, m: float) -> None:
    if round(2 * k) < 1:
        raise ValueError(f"sector K={k} has no flip-flop blocks")
    two_m = round(2 * m)
    if abs(2 * m - two_m) > 1e-9 or (two_m - round(2 * k)) % 2 != 0:
        raise ValueError(f"m={m} is not a projection of K={k}")
    if two_m < -round(2 * k) or two_m > round(2 * k) - 2:
        raise ValueError(
            f"m={m} out of range for K={k}: blocks need -K <= m <= K-1 "
            "(the edge levels are unpaired eigenstates)"
        )


def flip_flop_amplitude(a_uev: float, k: float, m: float) -> float:
    """Off-diagonal element (A/2) sqrt(K(K+1) - m(m+1)) of a block."""
    return a_uev / 2 * sqrt(k * (k + 1) - m * (m + 1))


def assemble_block(params: PhysicalParams, k: float, m: float) -> np.ndarray:
    """Hamiltonian restricted to span{|up,K,m>, |down,K,m+1>}.

    Diagonal entries carry the qubit Zeeman energy and the Ising part
    A S_z K_z; the off-diagonal element is the flip-flop amplitude.
    """
    _validate_block_m(k, m)
    z = params.zeeman_uev
    a = params.a_uev
    h11 = -z / 2 + a * m / 2
    h22 = +z / 2 - a * (m + 1) / 2
    off = flip_flop_amplitude(a, k, m)
    return np.array([[h11, off], [off, h22]])


def block_eigensystem(params: PhysicalParams, k: float, m: float) -> BlockEigensystem:
    """Closed-form mixing angle and eigenvalues of one block.

    Every block has trace -A/2, so with the detuning
    D = h11 - h22 = -g mu_B B + (A/2)(2m+1) and flip-flop amplitude M:

        E+- = -A/4 +- sqrt(D^2 + 4 M^2) / 2,
        theta = atan2(2M, D) / 2,

    and the + eigenvector is (cos theta, sin theta) with both components
    nonnegative (M > 0 fixes the phase convention).  At zero field and
    m = 0 this reduces to sin theta = sqrt(K / (2K+1)).
    """
    _validate_block_m(k, m)
    z = params.zeeman_uev
    a = params.a_uev
    mm = flip_flop_amplitude(a, k, m)
    delta = -z + a * (2 * m + 1) / 2
    s = sqrt(delta * delta + 4 * mm * mm)
    theta = 0.5 * atan2(2 * mm, delta)
    return BlockEigensystem(
        k=k,
        m=m,
        sin_theta=sin(theta),
        cos_theta=cos(theta),
        e_plus=-a / 4 + s / 2,
        e_minus=-a / 4 - s / 2,
    )


def unpaired_levels(params: PhysicalParams, k: float) -> tuple[float, float]:
    """Energies of the edge eigenstates (|up,K,K>, |down,K,-K>)."""
    z = params.zeeman_uev
    a = params.a_uev
    return (-z / 2 + a * k / 2, +z / 2 + a * k / 2)


def sector_dim(k: float) -> int:
    """Joint qubit x bath dimension 2(2K+1) of sector K."""
    return 2 * (round(2 * k) + 1)


def sector_eigensystem(params: PhysicalParams, k: float) -> tuple[np.ndarray, np.ndarray]:
    """Full eigenbasis (V, E) of the 2(2K+1)-dimensional sector K.

    Basis ordering is qubit-major with bath projection ascending:
    index s (2K+1) + i maps to qubit s in (up, down) and m = -K + i.
    V is real orthogonal; columns are eigenvectors with eigenvalues E.
    """
    d = round(2 * k) + 1
    dim = 2 * d
    vecs = np.zeros((dim, dim))
    vals = np.empty(dim)
    col = 0
    for i in range(d - 1):
        m = -k + i
        eig = block_eigensystem(params, k, m)
        up_idx = i            # |up, m>
        dn_idx = d + i + 1    # |down, m+1>
        vecs[up_idx, col] = eig.cos_theta
        vecs[dn_idx, col] = eig.sin_theta
        vals[col] = eig.e_plus
        col += 1
        vecs[up_idx, col] = -eig.sin_theta
        vecs[dn_idx, col] = eig.cos_theta
        vals[col] = eig.e_minus
        col += 1
    e_up, e_dn = unpaired_levels(params, k)
    vecs[d - 1, col] = 1.0
    vals[col] = e_up
    col += 1
    vecs[d, col] = 1.0
    vals[col] = e_dn
    return vecs, vals


def sector_hamiltonian(params: PhysicalParams, k: float) -> np.ndarray:
    """Dense sector-K Hamiltonian in the same basis as sector_eigensystem."""
    d = round(2 * k) + 1
    dim = 2 * d
    h = np.zeros((dim, dim))
    z = params.zeeman_uev
    a = params.a_uev
    for i in range(d):
        m = -k + i
        h[i, i] = -z / 2 + a * m / 2          # |up, m>
        h[d + i, d + i] = +z / 2 - a * m / 2  # |down, m>
    for i in range(d - 1):
        m = -k + i
        off = flip_flop_amplitude(a, k, m)
        h[i, d + i + 1] = off
        h[d + i + 1, i] = off
    return h
