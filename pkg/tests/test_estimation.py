import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extropy import (
    ExponentialParams,
    KdeModel,
    McStudyConfig,
    SampleBatch,
    SeededSampler,
    WeibullParams,
    estimate_relative_extropy,
    gaussian_kernel,
    kde_pdf,
    mc_bias_mse,
    sample_batch,
    sheather_jones_bandwidth,
)
from extropy.errors import DegenerateSample, InvalidParameter
from extropy.quadrature import QuadratureSpec, integrate
from oracles import sheather_jones_oracle


def exp_batch(rate, n, seed):
    return sample_batch(ExponentialParams(rate), n, SeededSampler(seed))


# --- kernel and KDE ---------------------------------------------------------


def test_gaussian_kernel_center():
    assert float(gaussian_kernel(0.0)) == pytest.approx(0.3989422804, abs=1e-10)


def test_gaussian_kernel_symmetry_and_mass():
    u = np.linspace(0.1, 6.0, 25)
    assert np.allclose(gaussian_kernel(u), gaussian_kernel(-u))
    q = QuadratureSpec()
    mass = integrate(lambda x: float(gaussian_kernel(x)), -8.0, 8.0, q).value
    assert mass == pytest.approx(1.0, abs=1e-10)


def test_kde_kernel_at_its_center():
    m = KdeModel(SampleBatch(np.array([0.0, 0.0])), bandwidth=1.0)
    assert float(m.pdf(0.0)) == pytest.approx(0.3989422804, abs=1e-10)


def test_kde_shift_equivariance():
    batch = exp_batch(1.0, 60, 11)
    m = KdeModel(batch, 0.3)
    shifted = KdeModel(batch.shifted(2.5), 0.3)
    for x in (0.2, 0.9, 1.7):
        assert float(shifted.pdf(x + 2.5)) == pytest.approx(float(m.pdf(x)), abs=1e-12)


def test_kde_matches_brute_force_sum():
    batch = exp_batch(1.0, 100, 21)
    b = 0.25
    m = KdeModel(batch, b)
    x = 1.0
    brute = sum(
        math.exp(-0.5 * ((x - v) / b) ** 2) / math.sqrt(2 * math.pi) for v in batch.values
    ) / (100 * b)
    assert float(m.pdf(x)) == pytest.approx(brute, abs=1e-12)


def test_kde_mass_is_one():
    batch = exp_batch(1.0, 80, 3)
    b = sheather_jones_bandwidth(batch)
    m = KdeModel(batch, b)
    q = QuadratureSpec()
    lo = batch.values[0] - 8 * b
    hi = batch.values[-1] + 8 * b
    assert integrate(lambda x: float(m.pdf(x)), lo, hi, q).value == pytest.approx(1.0, abs=1e-6)


def test_kde_windowed_path_matches_exact():
    rng = np.random.default_rng(9)
    values = rng.normal(size=10_050)  # beyond the exact-sum limit
    batch = SampleBatch(values)
    b = 0.1
    m = KdeModel(batch, b)
    for x in (-1.0, 0.0, 0.4, 2.0):
        exact = float(gaussian_kernel((x - batch.values) / b).sum()) / (batch.n * b)
        assert float(m.pdf(x)) == pytest.approx(exact, abs=1e-12)


def test_kde_reflection_preserves_mass_and_clips():
    batch = exp_batch(2.0, 60, 4)
    b = sheather_jones_bandwidth(batch)
    m = KdeModel(batch, b, reflect_at=0.0)
    assert float(m.pdf(-0.5)) == 0.0
    q = QuadratureSpec()
    mass = integrate(lambda x: float(m.pdf(x)), 0.0, float(batch.values[-1]) + 8 * b, q).value
    assert mass == pytest.approx(1.0, abs=1e-6)


def test_kde_pdf_function_form():
    m = KdeModel(SampleBatch(np.array([0.0, 1.0])), 0.5)
    assert kde_pdf(m, 0.5) == pytest.approx(float(m.pdf(0.5)))


# --- Sheather-Jones bandwidth -------------------------------------------------


def test_sj_scale_equivariance():
    batch = exp_batch(1.0, 90, 17)
    h = sheather_jones_bandwidth(batch)
    for c in (0.01, 3.7, 250.0):
        hc = sheather_jones_bandwidth(SampleBatch(c * batch.values))
        assert hc == pytest.approx(c * h, rel=1e-9)


def test_sj_against_independent_oracle():
    # dual implementation: same plug-in equations coded separately (raw data,
    # meshgrid sums, bisection in log h)
    for seed in (12345, 777):
        rng = np.random.default_rng(seed)
        x = rng.normal(size=100)
        mine = sheather_jones_bandwidth(SampleBatch(x))
        oracle = sheather_jones_oracle(x)
        assert mine == pytest.approx(oracle, abs=1e-6)


def test_sj_rate_with_sample_size():
    # quadrupling n should shrink the bandwidth by roughly 4^(-1/5)
    ratios = []
    for seed in range(50):
        sampler = SeededSampler(seed)
        small = sample_batch(WeibullParams(2.0, 1.0), 100, sampler, substream=0)
        big = sample_batch(WeibullParams(2.0, 1.0), 400, sampler, substream=1)
        ratios.append(sheather_jones_bandwidth(big) / sheather_jones_bandwidth(small))
    mean_ratio = float(np.mean(ratios))
    assert mean_ratio == pytest.approx(4.0 ** (-0.2), rel=0.25)


def test_sj_degenerate_inputs():
    with pytest.raises(DegenerateSample):
        sheather_jones_bandwidth(SampleBatch(np.array([1.0, 1.0, 1.0, 1.0, 1.0])))
    with pytest.raises(DegenerateSample):
        sheather_jones_bandwidth(SampleBatch(np.array([1.0, 2.0, 3.0])))


def test_sample_batch_validation():
    with pytest.raises(DegenerateSample):
        SampleBatch(np.array([1.0]))
    with pytest.raises(DegenerateSample):
        SampleBatch(np.array([1.0, np.inf]))
    batch = SampleBatch(np.array([3.0, 1.0, 2.0]))
    assert list(batch.values) == [1.0, 2.0, 3.0]


# --- the estimator ---------------------------------------------------------------


def test_estimate_identical_samples_zero():
    batch = exp_batch(1.0, 80, 5)
    assert estimate_relative_extropy(batch, batch) == 0.0


def test_estimate_translation_invariance():
    sx = exp_batch(1.0, 70, 6)
    sy = exp_batch(2.0, 70, 7)
    base = estimate_relative_extropy(sx, sy)
    for c in (-3.0, 4.5):
        shifted = estimate_relative_extropy(sx.shifted(c), sy.shifted(c))
        assert shifted == pytest.approx(base, abs=1e-9)


def test_estimate_symmetry_and_nonnegativity():
    sx = exp_batch(1.0, 60, 8)
    sy = exp_batch(2.0, 60, 9)
    a = estimate_relative_extropy(sx, sy)
    b = estimate_relative_extropy(sy, sx)
    assert a >= 0.0
    assert a == pytest.approx(b, abs=1e-12)


def test_estimate_ballpark_on_seeded_pair():
    sx = exp_batch(1.0, 200, 101)
    sy = exp_batch(2.0, 200, 202)
    value = estimate_relative_extropy(sx, sy, support_lower=0.0)
    assert abs(value - 1.0 / 12.0) < 0.1


def test_estimate_support_lower_changes_value():
    sx = exp_batch(1.0, 60, 10)
    sy = exp_batch(2.0, 60, 12)
    full = estimate_relative_extropy(sx, sy)
    clipped = estimate_relative_extropy(sx, sy, support_lower=0.0)
    assert clipped < full  # drops the below-zero leakage region
    reflected = estimate_relative_extropy(sx, sy, support_lower=0.0, boundary_reflect=True)
    assert reflected >= 0.0


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_estimate_nonnegative_random_seeds(seed):
    sx = exp_batch(1.0, 30, seed)
    sy = exp_batch(1.5, 30, seed + 1)
    assert estimate_relative_extropy(sx, sy) >= 0.0


# --- Monte-Carlo study -------------------------------------------------------------


def _cfg(n=50, reps=8, seed=99, **kw):
    return McStudyConfig(
        family_x=ExponentialParams(1.0),
        family_y=ExponentialParams(2.0),
        n=n,
        reps=reps,
        seed=seed,
        true_value=1.0 / 12.0,
        **kw,
    )


def test_mc_study_deterministic():
    row_a = mc_bias_mse(_cfg())
    row_b = mc_bias_mse(_cfg())
    assert row_a == row_b


def test_mc_study_mse_bias_inequality():
    row = mc_bias_mse(_cfg(reps=20))
    assert row.mse >= row.bias**2 - 1e-12


def test_mc_study_config_validation():
    with pytest.raises(InvalidParameter):
        _cfg(reps=1)
    with pytest.raises(InvalidParameter):
        _cfg(n=5)


def test_mc_study_same_family_shrinks():
    def run(n):
        cfg = McStudyConfig(
            family_x=ExponentialParams(1.0),
            family_y=ExponentialParams(1.0),
            n=n,
            reps=40,
            seed=314,
            true_value=0.0,
        )
        return mc_bias_mse(cfg)

    small, large = run(50), run(200)
    assert small.mean_estimate > 0.0  # smoothing and sampling noise never cancel
    assert large.mean_estimate > 0.0
    assert large.mse < small.mse


def test_mc_study_failure_policy(monkeypatch):
    import extropy.estimation as est

    def boom(*a, **k):
        raise DegenerateSample("forced")

    monkeypatch.setattr(est, "estimate_relative_extropy", boom)
    with pytest.raises(DegenerateSample):
        mc_bias_mse(_cfg(reps=5))


def test_mc_consistency_trend():
    # mean estimate moves toward the true 0.0833 as n grows through
    # {50, 100, 200, 400}; one inversion of at most 10% of the gap tolerated
    distances = []
    for n in (50, 100, 200, 400):
        row = mc_bias_mse(_cfg(n=n, reps=200, seed=20260810))
        distances.append(abs(row.mean_estimate - 0.0833))
    inversions = [b - a for a, b in zip(distances, distances[1:]) if b > a]
    assert len(inversions) <= 1
    for excess, prev in zip(inversions, distances):
        assert excess <= 0.10 * prev
