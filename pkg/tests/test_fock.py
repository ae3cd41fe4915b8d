import itertools
import math

import numpy as np
import pytest

from urtetrad.fock import (
    TETRAD_BILINEARS,
    BadModeError,
    BispinorAmplitudes,
    CutoffTooLargeError,
    DimensionMismatchError,
    FockSpace,
    SparseOperator,
    TruncationTooLossyError,
    coherent_bilinear_value,
    coherent_state,
    expectation,
    operator_tetrad,
    tetrad_component,
)
from urtetrad.spinor import GroupElement, dyad_from_element, random_group_element
from urtetrad.tetrad import real_tetrad

MODES = (1, 2, 3, 4)


def brute_force_basis(cutoff):
    states = [
        s for s in itertools.product(range(cutoff + 1), repeat=4) if sum(s) <= cutoff
    ]
    return sorted(states, key=lambda s: (sum(s), s))


@pytest.mark.parametrize("cutoff,dim", [(0, 1), (1, 5), (3, 35)])
def test_dimension_matches_enumeration(cutoff, dim):
    space = FockSpace(cutoff)
    assert space.dimension == dim
    assert list(space.basis) == brute_force_basis(cutoff)


def test_basis_index_roundtrip():
    space = FockSpace(3)
    for i, state in enumerate(space.basis):
        assert space.index_of(state) == i


def test_cutoff_bound():
    with pytest.raises(CutoffTooLargeError):
        FockSpace(5, max_states=10)
    with pytest.raises(CutoffTooLargeError):
        FockSpace(68)  # binomial(72, 4) is above the default bound
    with pytest.raises(ValueError):
        FockSpace(-1)


def test_bad_mode():
    space = FockSpace(1)
    with pytest.raises(BadModeError):
        space.annihilator(0)
    with pytest.raises(BadModeError):
        space.tau(1, 5)


def test_annihilator_frozen_cutoff1():
    # basis order: vacuum, then (0,0,0,1), (0,0,1,0), (0,1,0,0), (1,0,0,0)
    space = FockSpace(1)
    assert space.annihilator(1).triplets() == [(0, 4, 1.0 + 0.0j)]
    assert space.annihilator(2).triplets() == [(0, 3, 1.0 + 0.0j)]
    assert space.annihilator(3).triplets() == [(0, 2, 1.0 + 0.0j)]
    assert space.annihilator(4).triplets() == [(0, 1, 1.0 + 0.0j)]


def test_annihilator_vacuum_gives_zero():
    space = FockSpace(2)
    vacuum = np.zeros(space.dimension, dtype=complex)
    vacuum[0] = 1.0
    assert np.abs(space.annihilator(1) @ vacuum).max() == 0.0


def test_annihilator_amplitudes():
    space = FockSpace(3)
    idx2 = space.index_of((0, 2, 0, 0))
    idx1 = space.index_of((0, 1, 0, 0))
    state = np.zeros(space.dimension, dtype=complex)
    state[idx2] = 1.0
    out = space.annihilator(2) @ state
    assert out[idx1] == pytest.approx(math.sqrt(2))


def test_creator_is_adjoint():
    space = FockSpace(3)
    for r in MODES:
        np.testing.assert_array_equal(
            space.creator(r).to_dense(), space.annihilator(r).to_dense().conj().T
        )


def test_canonical_commutator_on_vacuum():
    space = FockSpace(1)
    vacuum = np.zeros(space.dimension, dtype=complex)
    vacuum[0] = 1.0
    a1, c1 = space.annihilator(1), space.creator(1)
    out = a1 @ (c1 @ vacuum) - c1 @ (a1 @ vacuum)
    np.testing.assert_allclose(out, vacuum, atol=1e-15)


def test_commutators_cutoff3():
    space = FockSpace(3)
    eye = space.identity()
    safe = space.safe_indices()
    ann = {r: space.annihilator(r) for r in MODES}
    cre = {r: ann[r].dagger() for r in MODES}
    for r in MODES:
        for s in MODES:
            comm = ann[r] @ cre[s] - cre[s] @ ann[r]
            if r == s:
                comm = comm - eye
            assert comm.max_abs(columns=safe) < 1e-14
            assert (ann[r] @ ann[s] - ann[s] @ ann[r]).max_abs() == 0.0
            assert (cre[r] @ cre[s] - cre[s] @ cre[r]).max_abs() == 0.0


def test_safe_indices_are_below_cutoff():
    space = FockSpace(2)
    safe = set(space.safe_indices().tolist())
    for i, state in enumerate(space.basis):
        assert (i in safe) == (sum(state) < 2)


def test_tau_on_vacuum_block():
    # vacuum-only space: the anticommutator reduces to its zero-point half
    space = FockSpace(0)
    assert space.tau(1, 1).triplets() == [(0, 0, 0.5 + 0.0j)]
    assert space.tau(1, 2).triplets() == []


def test_tau_adjoint_symmetry():
    space = FockSpace(3)
    for r in MODES:
        for s in MODES:
            assert (space.tau(r, s).dagger() - space.tau(s, r)).max_abs() == 0.0


def test_tau_matches_anticommutator_on_safe_subspace():
    space = FockSpace(3)
    safe = space.safe_indices()
    for r in MODES:
        for s in MODES:
            cr, an = space.creator(r), space.annihilator(s)
            anticomm = 0.5 * (cr @ an + an @ cr)
            assert (space.tau(r, s) - anticomm).max_abs(columns=safe) < 1e-14


def test_tau_normal_ordered_form():
    space = FockSpace(3)
    eye = space.identity()
    for r in MODES:
        for s in MODES:
            normal = space.creator(r) @ space.annihilator(s)
            if r == s:
                normal = normal + 0.5 * eye
            assert (space.tau(r, s) - normal).max_abs() < 1e-14


def test_number_operator_vacuum_eigenvalue():
    space = FockSpace(2)
    vacuum = np.zeros(space.dimension, dtype=complex)
    vacuum[0] = 1.0
    n_hat = tetrad_component(space, "t0")
    assert expectation(n_hat, vacuum) == pytest.approx(2.0)


def test_time_component_counts_quanta():
    space = FockSpace(4)
    t0 = tetrad_component(space, "t0")
    expected = space.occupations.sum(axis=1).astype(float) + 2.0
    np.testing.assert_array_equal(t0.diagonal().real, expected)
    assert (t0 - SparseOperator.from_diagonal(expected)).max_abs() == 0.0


def test_operator_tetrad_structure():
    space = FockSpace(2)
    ot = operator_tetrad(space)
    for op in ot.t_hat[1:]:
        assert op.nnz == 0
    for vec in (ot.z_hat, ot.x_hat, ot.y_hat):
        assert vec[0].nnz == 0
    labels = [name for name, _ in ot.components()]
    assert labels == [f"{v}{mu}" for v in "tzxy" for mu in range(4)]
    for _, op in ot.components():
        assert op.hermiticity_defect() < 1e-12


def test_z3_is_diagonal_with_expected_values():
    space = FockSpace(2)
    z3 = tetrad_component(space, "z3")
    occ = space.occupations
    expected = 0.5 * (-occ[:, 0] + occ[:, 1] + occ[:, 2] - occ[:, 3])
    np.testing.assert_array_equal(z3.diagonal().real, expected)
    assert z3.nnz == np.count_nonzero(expected)


def test_z3_single_quantum_expectation():
    space = FockSpace(1)
    state = np.zeros(space.dimension, dtype=complex)
    state[space.index_of((1, 0, 0, 0))] = 1.0
    assert expectation(tetrad_component(space, "z3"), state) == pytest.approx(-0.5)


def test_spatial_components_have_no_zero_point_shift():
    space = FockSpace(3)
    vacuum_row = 0
    for name in TETRAD_BILINEARS:
        if name == "t0":
            continue
        diag = tetrad_component(space, name).diagonal()
        assert diag[vacuum_row] == 0.0


def test_unknown_component_rejected():
    with pytest.raises(ValueError):
        tetrad_component(FockSpace(1), "w9")


def test_sparse_operator_from_triplets():
    op = SparseOperator.from_triplets(3, [(0, 1, 1j), (2, 0, 2.0)])
    assert op.triplets() == [(0, 1, 1j), (2, 0, 2.0 + 0.0j)]
    with pytest.raises(ValueError):
        SparseOperator.from_triplets(3, [(0, 1, 1.0), (0, 1, 2.0)])
    with pytest.raises(ValueError):
        SparseOperator.from_triplets(3, [(0, 3, 1.0)])


def test_sparse_operator_triplets_row_major():
    space = FockSpace(2)
    trips = tetrad_component(space, "x1").triplets()
    assert trips == sorted(trips, key=lambda t: (t[0], t[1]))


def test_sparse_operator_algebra():
    eye = SparseOperator.identity(3)
    twice = eye + eye
    assert (2.0 * eye - twice).max_abs() == 0.0
    assert (-eye + eye).max_abs() == 0.0
    assert (eye @ eye - eye).max_abs() == 0.0


def test_expectation_contracts():
    eye = SparseOperator.identity(4)
    state = np.full(4, 0.5, dtype=complex)
    assert expectation(eye, state) == pytest.approx(1.0)
    with pytest.raises(DimensionMismatchError):
        expectation(eye, np.ones(3))


def test_bispinor_amplitudes_table():
    g = GroupElement(0.6, 0.8j, 0.3)
    amps = BispinorAmplitudes.from_element(g)
    ph = np.exp(0.3j)
    assert amps.u1 == pytest.approx(0.6 * ph)
    assert amps.u2 == pytest.approx(0.8j * ph)  # -conj(b) = -(-0.8j)
    assert amps.u3 == pytest.approx(0.8j * ph)
    assert amps.u4 == pytest.approx(0.6 * ph)


def test_coherent_scale_zero_is_vacuum():
    space = FockSpace(2)
    amps = BispinorAmplitudes.from_element(GroupElement(1, 0))
    state = coherent_state(space, amps, 0.0)
    expected = np.zeros(space.dimension)
    expected[0] = 1.0
    np.testing.assert_array_equal(state, expected)


def test_coherent_moments_match_analytic():
    space = FockSpace(12)
    rng = np.random.default_rng(73)
    for _ in range(3):
        g = random_group_element(rng)
        amps = BispinorAmplitudes.from_element(g)
        state = coherent_state(space, amps, 0.5)
        alphas = 0.5 * amps.as_array()
        for r in MODES:
            for s in MODES:
                op = space.creator(r) @ space.annihilator(s)
                want = np.conj(alphas[r - 1]) * alphas[s - 1]
                assert abs(expectation(op, state) - want) < 1e-6


def test_coherent_z3_matches_classical():
    space = FockSpace(12)
    amps = BispinorAmplitudes.from_element(GroupElement(1, 0))
    state = coherent_state(space, amps, 0.5)
    val = expectation(tetrad_component(space, "z3"), state)
    # classical z component is |b|^2 - |a|^2 = -1, scaled by 0.25
    assert abs(val - (-0.25)) < 1e-6


def test_coherent_truncation_rejected():
    space = FockSpace(2)
    amps = BispinorAmplitudes.from_element(GroupElement(1, 0))
    with pytest.raises(TruncationTooLossyError):
        coherent_state(space, amps, 2.0)


def test_coherent_phase_covariance():
    space = FockSpace(8)
    g = GroupElement(0.6, 0.8j, 1.1)
    amps = BispinorAmplitudes.from_element(g)
    phased = BispinorAmplitudes(*(np.exp(0.7j) * amps.as_array()))
    state = coherent_state(space, amps, 0.4)
    state_ph = coherent_state(space, phased, 0.4)
    for name in TETRAD_BILINEARS:
        op = tetrad_component(space, name)
        assert abs(expectation(op, state) - expectation(op, state_ph)) < 1e-12


def test_classical_limit_small_sweep():
    space = FockSpace(12)
    rng = np.random.default_rng(79)
    comps = {name: tetrad_component(space, name) for name in TETRAD_BILINEARS}
    for _ in range(5):
        g = random_group_element(rng)
        amps = BispinorAmplitudes.from_element(g)
        state = coherent_state(space, amps, 0.5)
        rt = real_tetrad(dyad_from_element(g))
        classical = {"z": rt.z, "x": rt.x, "y": rt.y}
        for name, op in comps.items():
            val = expectation(op, state)
            if name == "t0":
                assert abs(val - (2.0 + 2.0 * 0.25)) < 1e-6
            else:
                want = 0.25 * classical[name[0]][int(name[1])]
                assert abs(val - want) < 1e-6
            # matrix expectation also agrees with the analytic moment formula
            analytic = coherent_bilinear_value(amps, 0.5, TETRAD_BILINEARS[name])
            assert abs(val - analytic) < 1e-6
