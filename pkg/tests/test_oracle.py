"""Brute-force product-basis path and its agreement with the sector path."""

from math import sqrt

import numpy as np
import pytest

from centralspin import (
    BathSpec,
    DimensionCapError,
    HBAR_UEV_NS,
    MU_B_UEV_PER_T,
    NegativityEvaluator,
    PhysicalParams,
    QubitState,
    build_full_hamiltonian,
    enumerate_sectors,
    oracle_negativity_trace,
    oracle_negativity_values,
    oracle_spectrum,
    sector_eigensystem,
)

A = 83.0


def test_two_spin_spectrum():
    ham = build_full_hamiltonian(BathSpec(1, 0.5), PhysicalParams(a_uev=A, bfield_t=0.0))
    np.testing.assert_allclose(ham, ham.conj().T, atol=0)
    vals = np.sort(np.linalg.eigvalsh(ham))
    np.testing.assert_allclose(vals, [-3 * A / 4, A / 4, A / 4, A / 4], atol=1e-12)


def test_zeeman_only_bath():
    params = PhysicalParams(a_uev=0.0, bfield_t=1.0)
    ham = build_full_hamiltonian(BathSpec(2, 0.5), params)
    assert np.abs(ham - np.diag(np.diag(ham))).max() == 0.0
    vals = np.sort(np.linalg.eigvalsh(ham))
    z = -0.44 * MU_B_UEV_PER_T
    expected = np.sort([+z / 2] * 4 + [-z / 2] * 4)
    np.testing.assert_allclose(vals, expected, atol=1e-12)


def test_empty_bath_rejected():
    with pytest.raises(ValueError):
        BathSpec(0, 0.5)


def test_dimension_cap_refusal_names_cap():
    with pytest.raises(DimensionCapError) as err:
        build_full_hamiltonian(BathSpec(12, 1.5), PhysicalParams())
    assert "8192" in str(err.value)


def test_trace_record_carries_provenance():
    trace = oracle_negativity_trace(
        BathSpec(1, 0.5),
        PhysicalParams(a_uev=A),
        QubitState.from_alpha(1.0),
        np.linspace(0, 0.02, 5),
    )
    assert trace.values[0] == pytest.approx(0.0, abs=1e-12)
    assert trace.params["path"] == "oracle"
    assert trace.params["n"] == 1


@pytest.mark.parametrize(
    "n,f,alpha,bfield",
    [
        (1, 0.5, 1.0, 0.0),
        (1, 0.5, 1 / sqrt(2), 0.0),
        (2, 0.5, 0.9, 1.0),
        (2, 1.0, 0.8, 0.0),
        (3, 0.5, 1.0, 1.0),
    ],
)
def test_fast_path_matches_oracle_pointwise(n, f, alpha, bfield):
    spec = BathSpec(n, f)
    params = PhysicalParams(a_uev=A, bfield_t=bfield)
    qubit = QubitState.from_alpha(alpha)
    times = np.linspace(0.0, 0.08, 40)
    brute = oracle_negativity_values(spec, params, qubit, times)
    fast = np.array([NegativityEvaluator(spec, params, qubit)(t) for t in times])
    assert np.abs(brute - fast).max() < 1e-10


@pytest.mark.parametrize("n,f,bfield", [(2, 0.5, 0.0), (2, 1.0, 1.0), (3, 0.5, 2.0)])
def test_spectrum_matches_sector_union(n, f, bfield):
    spec = BathSpec(n, f)
    params = PhysicalParams(a_uev=A, bfield_t=bfield)
    union = np.sort(
        np.concatenate(
            [
                np.repeat(sector_eigensystem(params, e.k)[1], e.multiplicity)
                for e in enumerate_sectors(spec).entries
            ]
        )
    )
    np.testing.assert_allclose(oracle_spectrum(spec, params), union, atol=1e-9)


def test_oracle_conserves_trace_and_purity():
    spec = BathSpec(2, 0.5)
    params = PhysicalParams(a_uev=A, bfield_t=0.5)
    qubit = QubitState.from_alpha(0.9)
    ham = build_full_hamiltonian(spec, params)
    vals, vecs = np.linalg.eigh(ham)
    from centralspin.oracle import full_initial_state

    rho0 = full_initial_state(spec, qubit)
    p0 = np.einsum("ij,ji->", rho0, rho0).real
    for t in (0.01, 0.07):
        ph = np.exp(-1j * vals * t / HBAR_UEV_NS)
        rho = (vecs * ph) @ (vecs.conj().T @ rho0 @ vecs) @ (vecs * ph).conj().T
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)
        assert np.einsum("ij,ji->", rho, rho).real == pytest.approx(p0, abs=1e-10)
