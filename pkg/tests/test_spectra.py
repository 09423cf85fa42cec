import math

import numpy as np
import pytest

from gcga_power.errors import FundamentalMismatchError, SpectrumError
from gcga_power.power import apparent_power
from gcga_power.spectra import (
    HarmonicComponent,
    Spectrum,
    cft,
    instantaneous_power,
    partition,
    period,
    rms,
    sample,
)

from conftest import W50, phasors, random_pair
from oracles import fourier_phasors, period_mean


def test_cft_example1(ex1):
    u, _ = ex1
    expected = phasors((1, 200, 0), (2, 200, -30), (4, 100, 30))
    assert u.orders == [1, 2, 4]
    for n, x in expected.items():
        assert u.phasor(n) == pytest.approx(x, abs=1e-12)


def test_cft_trivial():
    s = cft([], "voltage", W50)
    assert s.components == {} and rms(s) == 0
    s = cft([HarmonicComponent(1, 1.0, 0.0)], "current", W50)
    assert s.components == {1: 1 + 0j}
    s = cft([HarmonicComponent(1, 0.0, 0.3), HarmonicComponent(2, 1.0)], "current", W50)
    assert s.orders == [2]


def test_cft_errors():
    with pytest.raises(SpectrumError):
        cft([HarmonicComponent(2, 1), HarmonicComponent(2, 3)], "voltage", W50)
    with pytest.raises(SpectrumError):
        cft([], "voltage", 0.0)
    with pytest.raises(SpectrumError):
        HarmonicComponent(0, 1.0)


def test_sample_example1_at_zero(ex1):
    u, _ = ex1
    expected = math.sqrt(2) * (200 * 0 + 200 * math.sin(math.radians(-30)) + 100 * math.sin(math.radians(30)))
    assert sample(u, 0.0) == pytest.approx(expected)
    assert sample(u, 0.0) == pytest.approx(-70.7107, abs=1e-4)
    assert sample(Spectrum("voltage", W50), 0.123) == 0


def test_sample_vectorised(ex1):
    u, _ = ex1
    t = np.linspace(0, 0.02, 7)
    assert np.allclose(sample(u, t), [sample(u, x) for x in t])


def test_cft_round_trip_by_quadrature():
    rng = np.random.default_rng(1)
    for _ in range(20):
        u, _ = random_pair(rng)
        back = fourier_phasors(lambda t: sample(u, t), u.omega, range(1, 9))
        scale = rms(u)
        for n in range(1, 9):
            assert abs(back[n] - u.phasor(n)) <= 1e-9 * scale


def test_rms_examples(ex1):
    u, i = ex1
    assert rms(u) == pytest.approx(300)
    assert rms(i) == pytest.approx(math.sqrt(600))
    assert rms(i) == pytest.approx(24.495, abs=5e-4)


def test_rms_equals_norm():
    rng = np.random.default_rng(2)
    for _ in range(50):
        u, _ = random_pair(rng)
        assert rms(u) == pytest.approx(u.to_multivector().norm(), rel=1e-12)


def test_parseval():
    rng = np.random.default_rng(4)
    for _ in range(100):
        u, _ = random_pair(rng)
        mean_sq = period_mean(lambda t: sample(u, t) ** 2, period(u))
        assert mean_sq == pytest.approx(rms(u) ** 2, rel=1e-9)


def test_partition_example1(ex1):
    part = partition(*ex1)
    assert (set(part.N), set(part.L), set(part.M)) == ({1, 2}, {4}, {3})


def test_partition_trivial_cases():
    u = Spectrum("voltage", W50, {1: 1, 3: 1})
    i = Spectrum("current", W50, {1: 1, 3: 2j})
    p = partition(u, i)
    assert p.L == p.M == frozenset()
    p = partition(u, Spectrum("current", W50, {2: 1}))
    assert p.N == frozenset() and p.L == {1, 3} and p.M == {2}


def test_partition_ignores_numeric_dust():
    u = Spectrum("voltage", W50, {1: 100, 2: 1e-12})
    i = Spectrum("current", W50, {1: 1, 2: 1})
    assert partition(u, i).N == {1}


def test_partition_symmetry():
    rng = np.random.default_rng(8)
    for _ in range(100):
        u, i = random_pair(rng)
        a = partition(u, i)
        b = partition(Spectrum("voltage", W50, i.components), Spectrum("current", W50, u.components))
        assert a.L == b.M and a.M == b.L and a.N == b.N


def test_fundamental_mismatch():
    with pytest.raises(FundamentalMismatchError):
        partition(Spectrum("voltage", W50, {1: 1}), Spectrum("current", 2 * W50, {1: 1}))


def test_average_power_example1(ex1):
    u, i = ex1
    avg = period_mean(lambda t: instantaneous_power(u, i, t), period(u))
    assert avg == pytest.approx(5196.15, abs=0.01)


def test_instantaneous_power_trivial():
    u = Spectrum("voltage", W50, {1: 1})
    assert instantaneous_power(u, Spectrum("current", W50), 0.3) == 0
    avg = period_mean(lambda t: instantaneous_power(u, Spectrum("current", W50, {1: 1}), t), period(u))
    assert avg == pytest.approx(1.0)


def test_average_power_equals_P_random():
    rng = np.random.default_rng(9)
    for _ in range(100):
        u, i = random_pair(rng, force_common=True)
        P = apparent_power(u, i).P
        avg = period_mean(lambda t: instantaneous_power(u, i, t), period(u))
        assert avg == pytest.approx(P, rel=1e-6, abs=1e-12 * rms(u) * rms(i))
