"""Randomized invariants of the sector machinery (hypothesis)."""

from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from centralspin import (
    BathSpec,
    PhysicalParams,
    QubitState,
    enumerate_sectors,
    evolve,
    initial_state,
    multiplicity_closed_form,
    negativity,
    negativity_direct_sum,
    sector_hamiltonian,
)

bath_specs = st.builds(
    BathSpec,
    n=st.integers(min_value=1, max_value=6),
    f=st.sampled_from([0.5, 1.0, 1.5, 2.0, 2.5]),
)
small_specs = st.builds(
    BathSpec,
    n=st.integers(min_value=1, max_value=3),
    f=st.sampled_from([0.5, 1.0, 1.5]),
)
alphas = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
phases = st.floats(min_value=0.0, max_value=6.2832, allow_nan=False)
fields = st.floats(min_value=0.0, max_value=8.0, allow_nan=False)
times = st.floats(min_value=0.0, max_value=0.4, allow_nan=False)


@settings(max_examples=150, deadline=None)
@given(spec=bath_specs)
def test_dimension_conservation_and_normalization(spec):
    table = enumerate_sectors(spec)
    assert sum(e.multiplicity * e.bath_dim for e in table.entries) == spec.product_dim
    assert sum(e.weight for e in table.entries) == Fraction(1)


@settings(max_examples=100, deadline=None)
@given(spec=bath_specs)
def test_closed_form_matches_convolution(spec):
    table = enumerate_sectors(spec)
    for e in table.entries:
        assert multiplicity_closed_form(spec, e.k) == e.multiplicity


@settings(max_examples=60, deadline=None)
@given(spec=small_specs, alpha=alphas, phase=phases, bfield=fields, t=times)
def test_evolution_preserves_hermiticity_and_trace(spec, alpha, phase, bfield, t):
    params = PhysicalParams(bfield_t=bfield)
    state = initial_state(QubitState.from_alpha(alpha, phase), enumerate_sectors(spec))
    evolved = evolve(state, params, t)
    for s in evolved.sectors:
        assert np.abs(s.rho - s.rho.conj().T).max() < 1e-13
        assert abs(np.trace(s.rho).real - 1) < 1e-12
        assert np.linalg.eigvalsh(s.rho).min() > -1e-10


@settings(max_examples=60, deadline=None)
@given(spec=small_specs, alpha=alphas, bfield=fields, t=times)
def test_evolution_preserves_purity_and_weights(spec, alpha, bfield, t):
    params = PhysicalParams(bfield_t=bfield)
    state = initial_state(QubitState.from_alpha(alpha), enumerate_sectors(spec))
    evolved = evolve(state, params, t)
    assert abs(evolved.purity() - state.purity()) < 1e-10
    for before, after in zip(state.sectors, evolved.sectors):
        assert after.weight == before.weight and after.multiplicity == before.multiplicity


@settings(max_examples=40, deadline=None)
@given(spec=small_specs, alpha=alphas, bfield=fields, t=times)
def test_sector_negativity_matches_direct_sum(spec, alpha, bfield, t):
    params = PhysicalParams(bfield_t=bfield)
    state = initial_state(QubitState.from_alpha(alpha), enumerate_sectors(spec))
    evolved = evolve(state, params, t)
    assert abs(negativity(evolved).total - negativity_direct_sum(evolved)) < 1e-10


@settings(max_examples=40, deadline=None)
@given(bfield=fields, k=st.sampled_from([0.5, 1.0, 2.5, 4.0]))
def test_sector_hamiltonian_hermitian(bfield, k):
    h = sector_hamiltonian(PhysicalParams(bfield_t=bfield), k)
    assert np.array_equal(h, h.T)
