"""Splitter statistics: closed forms against the matrix oracle."""

import math

import numpy as np
import pytest

from gralab.fock import (
    BeamSplitter,
    ChaoticState,
    CoherentState,
    DegenerateState,
    NumberState,
    TruncationError,
    TwoModeMixture,
    creation_matrix,
    default_cutoff,
    expect_coincidence,
    expect_reflected,
    expect_transmitted,
    g2,
    oracle_g2,
    oracle_output_state,
    split_photons,
)

BALANCED = BeamSplitter.balanced()


def test_balanced_splitter():
    assert np.abs(BALANCED.t**2 - 0.5) < 1e-15
    assert np.abs(BALANCED.t**2 + BALANCED.r**2 - 1.0) < 1e-15


def test_from_transmittance():
    bs = BeamSplitter.from_transmittance(0.3)
    assert np.abs(bs.t**2 - 0.3) < 1e-15
    assert np.abs(bs.r**2 - 0.7) < 1e-15


def test_splitter_validation():
    with pytest.raises(ValueError):
        BeamSplitter(t=0.9, r=0.9)
    with pytest.raises(ValueError):
        BeamSplitter(t=1.2, r=0.0)
    with pytest.raises(ValueError):
        BeamSplitter.from_transmittance(1.5)


def test_state_validation():
    with pytest.raises(ValueError):
        NumberState(-1)
    with pytest.raises(ValueError):
        ChaoticState(0.0)
    with pytest.raises(ValueError):
        ChaoticState(1.0)


def test_chaotic_from_temperature_ratio():
    state = ChaoticState.from_temperature_ratio(1.5)
    assert np.abs(state.u - math.exp(-1.5)) < 1e-15
    assert np.abs(state.mean_photons - state.u / (1.0 - state.u)) < 1e-15


def test_single_photon_g2_exactly_zero():
    assert g2(NumberState(1), BALANCED) == 0.0


def test_number_state_closed_form():
    for n in range(2, 21):
        assert np.abs(g2(NumberState(n), BALANCED) - (n - 1) / n) < 1e-12


def test_coherent_and_chaotic_closed_forms():
    rng = np.random.default_rng(7)
    for _ in range(50):
        alpha = rng.uniform(0.2, 2.5) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        assert np.abs(g2(CoherentState(alpha), BALANCED) - 1.0) < 1e-12
        assert np.abs(g2(ChaoticState(rng.uniform(0.05, 0.95)), BALANCED) - 2.0) < 1e-12


def test_g2_independent_of_splitter():
    rng = np.random.default_rng(11)
    for _ in range(25):
        bs = BeamSplitter.from_transmittance(rng.uniform(0.05, 0.95))
        assert np.abs(g2(NumberState(4), bs) - 0.75) < 1e-12
        assert np.abs(g2(ChaoticState(0.3), bs) - 2.0) < 1e-12


def test_degenerate_inputs():
    with pytest.raises(DegenerateState):
        g2(NumberState(0), BALANCED)
    with pytest.raises(DegenerateState):
        g2(NumberState(2), BeamSplitter(t=0.0, r=1.0))
    with pytest.raises(DegenerateState):
        g2(NumberState(2), BeamSplitter(t=1.0, r=0.0))


def test_arm_expectations_sum_to_mean():
    rng = np.random.default_rng(13)
    states = [NumberState(3), CoherentState(1.3 + 0.4j), ChaoticState(0.6)]
    for _ in range(20):
        bs = BeamSplitter.from_transmittance(rng.uniform(0.0, 1.0))
        for state in states:
            total = expect_transmitted(state, bs) + expect_reflected(state, bs)
            assert np.abs(total - state.mean_photons) < 1e-9


def test_coincidence_closed_forms():
    bs = BeamSplitter.from_transmittance(0.3)
    scale = 0.3 * 0.7
    assert np.abs(expect_coincidence(NumberState(5), bs) - scale * 20.0) < 1e-12
    assert np.abs(expect_coincidence(CoherentState(1.2), bs) - scale * 1.2**4) < 1e-12
    u = 0.4
    assert np.abs(expect_coincidence(ChaoticState(u), bs) - scale * 2.0 * u**2 / 0.36) < 1e-12


def test_creation_matrix_entries():
    create = creation_matrix(3)
    vec = np.zeros(4)
    vec[1] = 1.0
    raised = create @ vec
    assert np.abs(raised[2] - math.sqrt(2.0)) < 1e-15
    assert np.abs(raised).sum() - math.sqrt(2.0) < 1e-15


def test_single_photon_amplitudes():
    out = split_photons(1, BALANCED)
    assert np.abs(out.amplitudes[1, 0] - BALANCED.t) < 1e-15
    assert np.abs(out.amplitudes[0, 1] - 1j * BALANCED.r) < 1e-15


def test_two_photon_amplitudes():
    # (t bt+ + i r br+)^2 / sqrt(2) on the vacuum, balanced splitter:
    # amplitudes t^2, i sqrt(2) t r, -r^2 on |2,0>, |1,1>, |0,2>.
    out = split_photons(2, BALANCED)
    assert np.abs(out.amplitudes[2, 0] - 0.5) < 1e-15
    assert np.abs(out.amplitudes[1, 1] - 1j / math.sqrt(2.0)) < 1e-15
    assert np.abs(out.amplitudes[0, 2] + 0.5) < 1e-15
    assert np.abs(out.norm() - 1.0) < 1e-10


def test_split_photons_conserves_photon_number():
    rng = np.random.default_rng(17)
    for n in (1, 2, 5, 9):
        bs = BeamSplitter.from_transmittance(rng.uniform(0.1, 0.9))
        out = split_photons(n, bs, n_max=n)
        exp_t, exp_r, _ = out.arm_expectations()
        assert np.abs(out.norm() - 1.0) < 1e-10
        assert np.abs(exp_t + exp_r - n) < 1e-9


def test_split_photons_truncation():
    with pytest.raises(TruncationError):
        split_photons(3, BALANCED, n_max=2)


def test_mixture_weights_keep_tail():
    out = oracle_output_state(ChaoticState(0.5), BALANCED)
    assert isinstance(out, TwoModeMixture)
    assert np.abs(out.weights.sum() + out.tail - 1.0) < 1e-14
    assert out.tail <= 1e-12


def test_oracle_cutoff_too_small():
    with pytest.raises(TruncationError):
        oracle_output_state(ChaoticState(0.7), BALANCED, n_max=10)
    with pytest.raises(TruncationError):
        oracle_output_state(CoherentState(2.0), BALANCED, n_max=6)


def test_default_cutoff_meets_tolerance():
    assert default_cutoff(NumberState(4)) == 4
    assert 0.5 ** (default_cutoff(ChaoticState(0.5)) + 1) <= 1e-12


def test_oracle_matches_closed_forms():
    rng = np.random.default_rng(19)
    for n in range(1, 7):
        bs = BeamSplitter.from_transmittance(rng.uniform(0.2, 0.8))
        assert np.abs(oracle_g2(NumberState(n), bs) - g2(NumberState(n), bs)) < 1e-8
    for _ in range(4):
        alpha = rng.uniform(0.3, 1.5) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        assert np.abs(oracle_g2(CoherentState(alpha), BALANCED) - 1.0) < 1e-8
        assert np.abs(oracle_g2(ChaoticState(rng.uniform(0.1, 0.5)), BALANCED) - 2.0) < 1e-8


def test_oracle_independent_of_reflection_phase():
    rng = np.random.default_rng(23)
    for _ in range(3):
        phase = rng.uniform(0.0, 2.0 * math.pi)
        bs = BeamSplitter(reflection_phase=phase)
        assert np.abs(oracle_g2(NumberState(3), bs) - oracle_g2(NumberState(3), BALANCED)) < 1e-12
        assert (
            np.abs(oracle_g2(ChaoticState(0.4), bs) - oracle_g2(ChaoticState(0.4), BALANCED))
            < 1e-12
        )


def test_oracle_degenerate_vacuum():
    with pytest.raises(DegenerateState):
        oracle_g2(NumberState(0), BALANCED)
