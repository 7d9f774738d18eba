"""Brute-force validation path in the full product basis.

Builds the joint Hamiltonian from individual spin operators by Kronecker
products, diagonalizes it densely, evolves the full density matrix, and
computes negativity by reshaping the qubit indices.  It deliberately
shares no computational code with the sector fast path (only unit
constants and plain data records), so pointwise agreement between the
two is a meaningful end-to-end check rather than a tautology.
"""

from __future__ import annotations

import numpy as np

from .blocks import PhysicalParams
from .constants import HBAR_UEV_NS, MU_B_UEV_PER_T, ORACLE_DIM_CAP
from .dynamics import QubitState
from .errors import DimensionCapError
from .sectors import BathSpec


def _spin_matrices(two_j: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense (Sx, Sy, Sz) for spin j = two_j / 2, projections descending."""
    d = two_j + 1
    j = two_j / 2
    m = j - np.arange(d)
    sz = np.diag(m)
    raise_amp = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    sp = np.zeros((d, d))
    sp[np.arange(d - 1), np.arange(1, d)] = raise_amp
    sm = sp.T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j
    return sx, sy, sz


def _check_cap(spec: BathSpec, cap: int) -> int:
    dim = 2 * spec.product_dim
    if dim > cap:
        raise DimensionCapError(
            f"oracle dimension 2(2F+1)^n = {dim} exceeds the cap {cap}"
        )
    return spec.product_dim


def build_full_hamiltonian(
    spec: BathSpec, params: PhysicalParams, cap: int = ORACLE_DIM_CAP
) -> np.ndarray:
    """Joint Hamiltonian, qubit factor first, nuclei in index order."""
    bath_dim = _check_cap(spec, cap)
    d1 = spec.two_f + 1
    sx, sy, sz = _spin_matrices(1)
    fx, fy, fz = _spin_matrices(spec.two_f)
    ham = np.zeros((2 * bath_dim, 2 * bath_dim), dtype=complex)
    zeeman = params.g_factor * MU_B_UEV_PER_T * params.bfield_t
    ham += -zeeman * np.kron(sz, np.eye(bath_dim))
    for site in range(spec.n):
        left = np.eye(d1**site)
        right = np.eye(d1 ** (spec.n - 1 - site))
        for s_op, f_op in ((sx, fx), (sy, fy), (sz, fz)):
            bath_op = np.kron(left, np.kron(f_op, right))
            ham += params.a_uev * np.kron(s_op, bath_op)
    return ham


def full_initial_state(spec: BathSpec, qubit: QubitState) -> np.ndarray:
    """(pure qubit) x (identity / dim) in the product basis."""
    bath_dim = spec.product_dim
    psi = np.array([qubit.alpha, qubit.beta], dtype=complex)
    return np.kron(np.outer(psi, psi.conj()), np.eye(bath_dim) / bath_dim)


def _negativity_reshape(rho: np.ndarray, bath_dim: int) -> float:
    """Negativity by transposing the qubit indices via a 4-index reshape."""
    pt = (
        rho.reshape(2, bath_dim, 2, bath_dim)
        .transpose(2, 1, 0, 3)
        .reshape(2 * bath_dim, 2 * bath_dim)
    )
    vals = np.linalg.eigvalsh(pt)
    return float((np.abs(vals) - vals).sum() / 2)


def oracle_negativity_values(
    spec: BathSpec,
    params: PhysicalParams,
    qubit: QubitState,
    times_ns,
    cap: int = ORACLE_DIM_CAP,
) -> np.ndarray:
    """Exact negativity at each requested time, full-basis evolution."""
    bath_dim = _check_cap(spec, cap)
    ham = build_full_hamiltonian(spec, params, cap=cap)
    vals, vecs = np.linalg.eigh(ham)
    rho0 = full_initial_state(spec, qubit)
    tilde0 = vecs.conj().T @ rho0 @ vecs
    out = np.empty(len(times_ns))
    for i, t in enumerate(times_ns):
        phases = np.exp(-1j * vals * (t / HBAR_UEV_NS))
        rho = (vecs * phases) @ tilde0 @ (vecs * phases).conj().T
        out[i] = _negativity_reshape(rho, bath_dim)
    return out


def oracle_negativity_trace(
    spec: BathSpec,
    params: PhysicalParams,
    qubit: QubitState,
    times_ns,
    cap: int = ORACLE_DIM_CAP,
):
    """Same values as :func:`oracle_negativity_values`, as a trace record."""
    from .experiments import NegativityTrace  # data record only, no shared numerics

    times_ns = np.asarray(times_ns, dtype=float)
    values = oracle_negativity_values(spec, params, qubit, times_ns, cap=cap)
    provenance = {
        "n": spec.n,
        "f_spin": spec.f,
        "alpha": abs(qubit.alpha),
        "beta_phase_rad": float(np.angle(qubit.beta)) if abs(qubit.beta) > 0 else 0.0,
        "bfield_T": params.bfield_t,
        "a_coupling_ueV": params.a_uev,
        "g_factor": params.g_factor,
        "path": "oracle",
    }
    return NegativityTrace(times_ns=times_ns, values=values, params=provenance)


def oracle_spectrum(
    spec: BathSpec, params: PhysicalParams, cap: int = ORACLE_DIM_CAP
) -> np.ndarray:
    """Sorted eigenvalues of the full Hamiltonian."""
    ham = build_full_hamiltonian(spec, params, cap=cap)
    return np.linalg.eigvalsh(ham)


def oracle_reduced_qubit(
    spec: BathSpec,
    params: PhysicalParams,
    qubit: QubitState,
    t_ns: float,
    cap: int = ORACLE_DIM_CAP,
) -> np.ndarray:
    """Qubit density matrix at one time, by full-basis partial trace."""
    bath_dim = _check_cap(spec, cap)
    ham = build_full_hamiltonian(spec, params, cap=cap)
    vals, vecs = np.linalg.eigh(ham)
    rho0 = full_initial_state(spec, qubit)
    phases = np.exp(-1j * vals * (t_ns / HBAR_UEV_NS))
    rho = (vecs * phases) @ (vecs.conj().T @ rho0 @ vecs) @ (vecs * phases).conj().T
    return np.einsum("ibjb->ij", rho.reshape(2, bath_dim, 2, bath_dim))
