"""Semiclassical intensity model: the coincidence ratio never dips below one."""

import warnings

import numpy as np
import pytest

from gralab.classical import (
    GateIntensityEnsemble,
    ZeroMeanIntensity,
    classical_alpha,
    coincidence_probability,
    singles_probabilities,
)


def _ensemble(intensities, gate=1.0, eff_t=0.1, eff_r=0.1):
    return GateIntensityEnsemble(
        intensities=np.asarray(intensities, dtype=float),
        gate_duration=gate,
        alpha_t=eff_t,
        alpha_r=eff_r,
    )


def test_constant_intensity_alpha_exactly_one():
    assert classical_alpha(_ensemble(np.full(100, 2.7))) == 1.0


def test_two_point_alpha_two():
    assert np.abs(classical_alpha(_ensemble([0.0, 2.0])) - 2.0) < 1e-12


def test_probability_formulas():
    ens = _ensemble([1.0, 3.0], gate=0.1, eff_t=0.2, eff_r=0.3)
    p_t, p_r = singles_probabilities(ens)
    assert np.abs(p_t - 0.2 * 0.1 * 2.0) < 1e-15
    assert np.abs(p_r - 0.3 * 0.1 * 2.0) < 1e-15
    assert np.abs(coincidence_probability(ens) - 0.2 * 0.3 * 0.01 * 5.0) < 1e-15


def test_alpha_never_below_one():
    rng = np.random.default_rng(29)
    for _ in range(200):
        kind = rng.integers(0, 4)
        n = int(rng.integers(2, 200))
        if kind == 0:
            intensities = rng.uniform(0.0, 2.0, n)
        elif kind == 1:
            intensities = rng.exponential(1.0, n)
        elif kind == 2:
            intensities = rng.lognormal(0.0, 1.0, n)
        else:
            intensities = np.full(n, rng.uniform(0.1, 5.0))
        assert classical_alpha(_ensemble(intensities, eff_t=0.01, eff_r=0.01)) >= 1.0 - 1e-12


def test_coincidence_at_least_product_of_singles():
    rng = np.random.default_rng(31)
    for _ in range(50):
        ens = _ensemble(rng.exponential(1.0, 50), gate=0.1, eff_t=0.05, eff_r=0.05)
        p_t, p_r = singles_probabilities(ens)
        assert coincidence_probability(ens) >= p_t * p_r - 1e-15


def test_exponential_intensity_close_to_two():
    rng = np.random.default_rng(37)
    ens = _ensemble(rng.exponential(1.0, 40000), eff_t=0.01, eff_r=0.01)
    assert np.abs(classical_alpha(ens) - 2.0) < 0.15


def test_inadmissible_probabilities_warn():
    with pytest.warns(UserWarning):
        ens = _ensemble(np.array([50.0, 150.0]), gate=1.0, eff_t=0.5, eff_r=0.5)
    assert not ens.admissible
    assert classical_alpha(ens) >= 1.0


def test_admissible_ensemble_quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ens = _ensemble([0.5, 1.5])
    assert ens.admissible


def test_zero_mean_raises():
    with pytest.raises(ZeroMeanIntensity):
        _ensemble(np.zeros(10))


def test_invalid_inputs():
    with pytest.raises(ValueError):
        _ensemble([-1.0, 2.0])
    with pytest.raises(ValueError):
        _ensemble([])
    with pytest.raises(ValueError):
        _ensemble([1.0], gate=0.0)
    with pytest.raises(ValueError):
        _ensemble([1.0], eff_t=-0.1)
