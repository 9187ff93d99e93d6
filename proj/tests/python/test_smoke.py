"""Smoke tests for the python module: thin checks that the bindings expose
the library faithfully.  The numerical heavy lifting is covered by the C++
test suites."""

import math

import pytest

import condshrink as cs


def test_spiked_maps():
    lo, hi = cs.bulk_edges(1.0)
    assert lo == pytest.approx(0.0, abs=1e-12)
    assert hi == pytest.approx(4.0)
    assert cs.spike_detection_threshold(4.0) == pytest.approx(3.0)
    assert cs.eigen_map(5.0, 1.0) == pytest.approx(6.25)
    assert cs.eigen_inverse(6.25, 1.0) == pytest.approx(5.0)
    assert cs.cosine2(5.0, 1.0) == pytest.approx(0.75)
    assert cs.sine2(5.0, 1.0) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        cs.eigen_inverse(4.0, 1.0)


def test_pivot_block():
    b = cs.block(5.0, 2.0, 1.0)
    assert b.trace == pytest.approx(1.6)
    assert b.det == pytest.approx(0.4)
    assert b.nu_minus == pytest.approx(0.31010205144336433)
    assert b.nu_plus == pytest.approx(1.2898979485566358)
    a, bb = cs.ab_coeffs(5.0, 1.0)
    assert (a, bb) == (pytest.approx(0.4), pytest.approx(0.8))
    assert cs.asymptotic_kappa(1.0, [5.0], [1.0]) == pytest.approx(5.0)


def test_shrinkers():
    assert cs.eta_single(6.25, 1.0) == pytest.approx(2.0)
    assert cs.eta_single(3.9, 1.0) == 1.0
    assert cs.eta_multi(6.25, 6.25, 1.0) == pytest.approx(2.0)
    assert cs.eta_mmst(14.0, 1.0) == pytest.approx(6.0)
    assert cs.eta_pnl(cs.eigen_map(5.0, 1.0), 1.0) == pytest.approx(2.5)
    out = cs.apply("single", [6.25, 3.9, 0.5], 1.0)
    assert out == [pytest.approx(2.0), 1.0, 1.0]
    ell_thr, lambda_thr = cs.dead_zone_single(1.0)
    assert ell_thr == pytest.approx(3.0)
    assert lambda_thr == pytest.approx(4.5)


def test_losses():
    assert cs.kappa_star(5.0, 1.0) == pytest.approx(4.159591794226542)
    assert cs.kappa_star_limit(1.0) == pytest.approx(5.828427124746191)
    assert cs.rsrg_from_kappa(4.0) == pytest.approx(1.25)
    report = cs.loss_report(1.0, [5.0], "identity")
    assert report["kappa"] == pytest.approx(5.0)
    assert report["regret_kappa_pct"] == pytest.approx(16.808164, rel=1e-6)
    row = cs.max_regret("single", 1.0)
    assert row["max_regret_kappa_pct"] <= 1e-6
    assert len(cs.default_gamma_grid()) == 101


def test_montecarlo_roundtrip():
    pop = cs.SpikedPopulation(120, 0.5, [5.0], seed=7)
    values, vectors = cs.sample_empirical(pop, 240, seed=3, top_k=6)
    assert values[0] == pytest.approx(cs.eigen_map(5.0, 0.5), rel=0.25)
    etas = cs.apply("single", list(values), 0.5)
    kappa = cs.empirical_pivot_kappa(pop, values, vectors, etas)
    assert kappa >= 1.0
    sim = cs.simulate_loss(pop, 240, "single", reps=4, seed=11)
    assert sim["reps"] == 4
    assert sim["target"] == pytest.approx(cs.kappa_star(5.0, 0.5))
    assert len(sim["kappa"]) == 4
    sim2 = cs.simulate_loss(pop, 240, "single", reps=4, seed=11)
    assert sim["kappa"] == sim2["kappa"]


def test_least_favorable():
    pop = cs.SpikedPopulation(60, 1.0, [5.0], seed=2)
    values, vectors = cs.sample_empirical(pop, 60, seed=5, top_k=5)
    etas = cs.apply("single", list(values), 1.0)
    fv = cs.least_favorable_forecast(pop, vectors, etas)
    assert fv["achieved_ratio"] == pytest.approx(fv["bound"], abs=1e-8)
    assert math.isclose(sum(x * x for x in fv["mu"]), 1.0, rel_tol=1e-9)
