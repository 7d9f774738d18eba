"""Flip-flop blocks: assembly, closed-form eigensystem, sector structure."""

from math import sqrt

import numpy as np
import pytest

from centralspin import (
    MU_B_UEV_PER_T,
    PhysicalParams,
    assemble_block,
    block_eigensystem,
    sector_eigensystem,
    sector_hamiltonian,
    unpaired_levels,
)

A = 83.0


def two_spin_half_hamiltonian(a, zeeman):
    """Direct product-basis expansion for qubit + one spin-1/2 nucleus."""
    sz = np.diag([0.5, -0.5])
    sp = np.array([[0.0, 1.0], [0.0, 0.0]])
    sm = sp.T
    sx, sy = (sp + sm) / 2, (sp - sm) / 2j
    eye = np.eye(2)
    h = -zeeman * np.kron(sz, eye).astype(complex)
    for op in (sx, sy, sz):
        h += a * np.kron(op, op)
    return h


def test_block_matches_two_spin_expansion():
    params = PhysicalParams(a_uev=A, bfield_t=0.0)
    block = assemble_block(params, 0.5, -0.5)
    # restrict the 4x4 two-spin matrix to the span of |up,down>, |down,up>
    full = two_spin_half_hamiltonian(A, 0.0)
    sub = full[np.ix_([1, 2], [1, 2])]
    np.testing.assert_allclose(block, sub.real, atol=1e-14)
    np.testing.assert_array_equal(block, [[-A / 4, A / 2], [A / 2, -A / 4]])


def test_block_is_hermitian_exactly():
    params = PhysicalParams(a_uev=A, bfield_t=2.3)
    for k in (0.5, 1.0, 2.5, 7.0):
        m = -k
        while m <= k - 1:
            block = assemble_block(params, k, m)
            assert np.array_equal(block, block.conj().T)
            m += 1


def test_edge_projection_rejected_and_unpaired_energy():
    params = PhysicalParams(a_uev=A, bfield_t=1.0)
    with pytest.raises(ValueError):
        assemble_block(params, 1.5, 1.5)
    e_up, e_dn = unpaired_levels(params, 1.5)
    z = params.zeeman_uev
    assert e_up == pytest.approx(-z / 2 + A * 1.5 / 2, rel=1e-15)
    assert e_dn == pytest.approx(+z / 2 + A * 1.5 / 2, rel=1e-15)


def test_flip_flop_amplitude_k1_m0():
    block = assemble_block(PhysicalParams(a_uev=A), 1.0, 0.0)
    assert block[0, 1] == pytest.approx(A / 2 * sqrt(2), rel=1e-15)


def test_k_half_eigenvalues_are_quartet_and_singlet():
    eig = block_eigensystem(PhysicalParams(a_uev=A), 0.5, -0.5)
    assert eig.e_plus == pytest.approx(A / 4, rel=1e-14)
    assert eig.e_minus == pytest.approx(-3 * A / 4, rel=1e-14)


@pytest.mark.parametrize("bfield", [0.0, 1.0, 5.0])
def test_closed_form_reproduces_numerical_diagonalization(bfield):
    params = PhysicalParams(a_uev=A, bfield_t=bfield)
    for two_k in range(1, 21):
        k = two_k / 2
        for two_m in range(-two_k, two_k - 1, 2):
            m = two_m / 2
            block = assemble_block(params, k, m)
            eig = block_eigensystem(params, k, m)
            assert eig.sin_theta**2 + eig.cos_theta**2 == pytest.approx(1, abs=1e-14)
            scale = np.linalg.norm(block)
            vecs = eig.eigenvectors
            for col, energy in ((0, eig.e_plus), (1, eig.e_minus)):
                v = vecs[:, col]
                assert np.linalg.norm(block @ v - energy * v) <= 1e-12 * scale
            w = np.linalg.eigvalsh(block)
            assert eig.e_minus == pytest.approx(w[0], rel=1e-12, abs=1e-12 * scale)
            assert eig.e_plus == pytest.approx(w[1], rel=1e-12, abs=1e-12 * scale)


def test_zero_field_m0_mixing():
    params = PhysicalParams(a_uev=A, bfield_t=0.0)
    for k in (1.0, 2.0, 5.0, 9.0):
        eig = block_eigensystem(params, k, 0.0)
        assert eig.sin_theta == pytest.approx(sqrt(k / (2 * k + 1)), abs=1e-14)
        assert eig.cos_theta == pytest.approx(sqrt((k + 1) / (2 * k + 1)), abs=1e-14)


def test_strong_field_decouples_blocks():
    up = block_eigensystem(PhysicalParams(a_uev=A, bfield_t=4000.0, g_factor=-0.44), 1.0, 0.0)
    assert min(up.sin_theta, up.cos_theta) < 5e-3
    down = block_eigensystem(PhysicalParams(a_uev=A, bfield_t=4000.0, g_factor=+0.44), 1.0, 0.0)
    assert min(down.sin_theta, down.cos_theta) < 5e-3
    assert abs(up.sin_theta - down.sin_theta) > 0.9  # opposite limits


def test_sector_eigensystem_diagonalizes_sector_hamiltonian():
    for bfield in (0.0, 1.7):
        params = PhysicalParams(a_uev=A, bfield_t=bfield)
        for k in (0.0, 0.5, 1.0, 3.5):
            h = sector_hamiltonian(params, k)
            vecs, vals = sector_eigensystem(params, k)
            np.testing.assert_allclose(vecs @ vecs.T, np.eye(len(vals)), atol=1e-13)
            np.testing.assert_allclose(
                h @ vecs, vecs * vals, atol=1e-12 * max(1.0, np.linalg.norm(h))
            )


def test_sector_trace_identity():
    params = PhysicalParams(a_uev=A, bfield_t=0.9)
    for k in (0.5, 2.0, 4.5):
        _, vals = sector_eigensystem(params, k)
        assert vals.sum() == pytest.approx(np.trace(sector_hamiltonian(params, k)), rel=1e-13)


def test_params_validation_and_field_folding():
    with pytest.raises(ValueError):
        PhysicalParams(a_uev=-1.0)
    folded = PhysicalParams(a_uev=A, bfield_t=-2.0)
    assert folded.bfield_t == 2.0
    assert PhysicalParams(a_uev=A, bfield_t=1.0).zeeman_uev == pytest.approx(
        -0.44 * MU_B_UEV_PER_T, rel=1e-15
    )
