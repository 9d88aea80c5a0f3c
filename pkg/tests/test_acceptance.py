"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report lines.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest
from scipy.integrate import quad

from nlll import (
    ChannelSpec,
    LuttingerParams,
    ParticleHoleConfig,
    all_channels,
    amplitude_ratio,
    c0_from_prefactor,
    continuum_hole,
    continuum_particle,
    dsf_step,
    enumerate_configs,
    epsilon_lower,
    epsilon_upper,
    exponents_for_channel,
    finite_L_sum,
    power_fit,
    prefactor_from_c0,
    shift_reduction_check,
    sum_rule_bruteforce,
    sum_rule_closed,
    threshold_energy,
)

from oracles import partition_count

L = 2.0 * math.pi * 200.0


@contextmanager
def criterion(num: int, title: str):
    state = {"ok": False}
    try:
        yield state
        state["ok"] = True
    finally:
        print(f"\n[criterion {num:02d}] {'PASS' if state['ok'] else 'FAIL'}  {title}")


def test_criterion_01_sum_rule():
    with criterion(1, "sum rule brute force vs closed form, m <= 12, rel err < 1e-9, < 5 s"):
        t0 = time.perf_counter()
        for m in range(13):
            for a in (0.3, 0.7, 1.25, 1.9):
                brute = sum_rule_bruteforce(m, a)
                closed = sum_rule_closed(m, a * a)
                assert abs(brute / closed - 1.0) < 1e-9, (m, a)
        elapsed = time.perf_counter() - t0
        assert elapsed < 5.0, f"took {elapsed:.2f}s"


def test_criterion_02_enumeration_counts():
    with criterion(2, "configuration counts equal partition numbers, m <= 20, exact"):
        for m in range(21):
            assert len(enumerate_configs(m)) == partition_count(m), m


def test_criterion_03_shift_reduction():
    with criterion(3, "shift reduction: exact for empty config, 1/p decay for one pair"):
        empty = ParticleHoleConfig((), ())
        assert shift_reduction_check(100, empty, 1.25) < 1e-12
        pair = ParticleHoleConfig((1,), (0,))
        ps = [100, 1000, 10_000]
        devs = [shift_reduction_check(p, pair, 1.25) for p in ps]
        slope = np.polyfit(np.log(ps), np.log(devs), 1)[0]
        assert -1.2 < slope < -0.8, slope


def test_criterion_04_alpha_cancellation():
    with criterion(4, "alpha cancellation < 1e-12 on all 8 channels, family closed forms"):
        for xi in (0.25, 0.5, 2.0, 4.0):
            for channel in all_channels():
                e = exponents_for_channel(channel, xi)
                assert e.cancellation_residual() < 1e-12, (channel.name, xi)
            fp = exponents_for_channel(ChannelSpec.from_name("fermion_particle"), xi)
            assert abs(fp.alpha - 0.5 * (xi + 1.0 / xi)) < 1e-12
            dp = exponents_for_channel(ChannelSpec.from_name("density_2pf_particle"), xi)
            assert abs(dp.alpha - 2.0 / xi) < 1e-12
            bp = exponents_for_channel(ChannelSpec.from_name("boson_particle"), xi)
            assert abs(bp.alpha - 0.5 * xi) < 1e-12


@pytest.fixture(scope="module")
def particle_hist():
    channel = ChannelSpec.from_name("fermion_particle")
    params = LuttingerParams(xi=2.0, v=0.19, L=L)
    t0 = time.perf_counter()
    hist = finite_L_sum(channel, 2.0, params, qmax=2000)
    return hist, time.perf_counter() - t0


@pytest.fixture(scope="module")
def hole_hist():
    channel = ChannelSpec.from_name("fermion_hole")
    params = LuttingerParams(xi=2.0, v=1.0, L=L)
    t0 = time.perf_counter()
    hist = finite_L_sum(channel, 1.2, params, qmax=2000)
    return hist, time.perf_counter() - t0


def test_criterion_05_threshold_exponent_recovery(particle_hist, hole_hist):
    with criterion(5, "xi=2 fermion slopes within 3% over >= 1 decade at qmax=2000, < 30 s"):
        hist, t_particle = particle_hist
        mu = exponents_for_channel(ChannelSpec.from_name("fermion_particle"), 2.0).mu
        for side in (+1, -1):
            fit = power_fit(hist, side)
            assert fit.decades >= 1.0, (side, fit.decades)
            assert abs((fit.slope + mu) / mu) < 0.03, (side, fit.slope, -mu)
        hh, t_hole = hole_hist
        mu_h = exponents_for_channel(ChannelSpec.from_name("fermion_hole"), 2.0).mu
        fit = power_fit(hh, +1)
        assert fit.decades >= 1.0
        assert abs((fit.slope + mu_h) / abs(mu_h)) < 0.03, (fit.slope, -mu_h)
        assert t_particle < 30.0 and t_hole < 30.0, (t_particle, t_hole)


def test_criterion_06_two_sided_asymmetry(particle_hist):
    with criterion(6, "particle side-amplitude ratio matches sin(pi d2^2)/sin(pi d1^2) to 5%"):
        hist, _ = particle_hist
        e = exponents_for_channel(ChannelSpec.from_name("fermion_particle"), 2.0)
        analytic = math.sin(math.pi * e.beta2) / math.sin(math.pi * e.beta1)
        fitted = amplitude_ratio(hist)
        assert abs(fitted / analytic - 1.0) < 0.05, (fitted, analytic)


def test_criterion_07_hole_one_sidedness(hole_hist):
    with criterion(7, "hole channel has exactly zero weight below the edge"):
        hist, _ = hole_hist
        i0 = hist.threshold_index
        assert hist.negative_weight() == 0.0
        assert np.all(hist.weights[:i0] == 0.0) and np.all(hist.counts[:i0] == 0)


def test_criterion_08_dsf_step():
    with criterion(8, "DSF step: height m/(k xi), frequency integral k/xi to 1e-12"):
        params = LuttingerParams(xi=2.0, v=1.0, m_eff=1.0)
        k = 0.3
        lo, hi = epsilon_lower(k, params), epsilon_upper(k, params)
        assert dsf_step(0.5 * (lo + hi), k, params) == params.m_eff / (k * params.xi)
        val, _ = quad(lambda w: dsf_step(w, k, params), lo, hi, points=[lo, hi])
        assert abs(val / (k / params.xi) - 1.0) < 1e-12


def test_criterion_09_L_independence():
    with criterion(9, "continuum invariant under L -> 2L at fixed ff_norm; c0 round trip"):
        channel = ChannelSpec.from_name("fermion_particle")
        hole = ChannelSpec.from_name("fermion_hole")
        for L1 in (100.0, 1000.0):
            pa = LuttingerParams(xi=2.0, v=0.19, L=L1, ff_norm=1.7)
            pb = LuttingerParams(xi=2.0, v=0.19, L=2 * L1, ff_norm=1.7)
            eps = threshold_energy(channel, 2.0, pa)
            for dw in (0.3, -0.3):
                va = continuum_particle(eps + dw, 2.0, pa, channel).a_value
                vb = continuum_particle(eps + dw, 2.0, pb, channel).a_value
                assert abs(va / vb - 1.0) < 1e-12
            ph_a = LuttingerParams(xi=2.0, v=1.0, L=L1, ff_norm=0.9)
            ph_b = LuttingerParams(xi=2.0, v=1.0, L=2 * L1, ff_norm=0.9)
            eps_h = threshold_energy(hole, 1.2, ph_a)
            ha = continuum_hole(eps_h + 0.2, 1.2, ph_a, hole).a_value
            hb = continuum_hole(eps_h + 0.2, 1.2, ph_b, hole).a_value
            assert abs(ha / hb - 1.0) < 1e-12
        for c0, alpha in ((1.0, 1.25), (3.7, 2.125)):
            assert abs(c0_from_prefactor(prefactor_from_c0(c0, alpha), alpha) / c0 - 1.0) < 1e-15


def test_criterion_10_k_scaling():
    with criterion(10, "prefactor k-scaling: particle k^(2a-2), hole k^(-2-2a), to 1e-12"):
        channel = ChannelSpec.from_name("fermion_particle")
        params = LuttingerParams(xi=2.0, v=0.19, L=L)
        e = exponents_for_channel(channel, 2.0)
        vd = params.v + 2.0
        a_k = continuum_particle(
            threshold_energy(channel, 2.0, params) + 0.1, 2.0, params, channel, vd=vd).a_value
        a_2k = continuum_particle(
            threshold_energy(channel, 4.0, params) + 0.1, 4.0, params, channel, vd=vd).a_value
        assert abs(a_2k / a_k - 2.0 ** (2.0 * e.a - 2.0)) < 1e-12

        hole = ChannelSpec.from_name("fermion_hole")
        ph = LuttingerParams(xi=2.0, v=1.0, L=L)
        eh = exponents_for_channel(hole, 2.0)
        vdh = ph.v - 1.2
        h_k = continuum_hole(
            threshold_energy(hole, 1.2, ph) + 0.05, 1.2, ph, hole, vd=vdh).a_value
        h_2k = continuum_hole(
            threshold_energy(hole, 2.4, ph) + 0.05, 2.4, ph, hole, vd=vdh).a_value
        assert abs(h_2k / h_k - 2.0 ** (-2.0 - 2.0 * eh.a)) < 1e-12
