"""Acceptance suite: each test is one release criterion at its stated
tolerance and prints a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s`. The tumour-model
calibration criterion dominates the runtime (about ten minutes of
single-core simulation); everything else finishes in seconds.
"""
import math
import time

import numpy as np
import pytest
import scipy.stats as st

from abckit.core import Beta, LogNormal, PriorSpec, StreamTree, derive_stream
from abckit.oracles import BinomialModel, GaussianMeanModel
from abckit.smc import (
    SmcConfig,
    adapt_tolerance,
    choose_mcmc_steps,
    posterior_predictive,
    run,
)
from abckit.vcbm import (
    CANCER,
    TissueState,
    VcbmConfig,
    VcbmModel,
    VcbmParams,
    boundary_distance,
    simulate,
    triangulate,
    tumour_volume,
)

from .oracles import (
    brute_force_delaunay_edges,
    nearest_healthy_scan,
    rejection_abc,
    rotating_scan_extents,
)


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})")


def test_oracle_posterior_recovery():
    name = "oracle-posterior-recovery"
    t0 = time.perf_counter()
    model = GaussianMeanModel(sigma=1.0, n_obs=10, mu0=0.0, tau0=1.0)
    config = SmcConfig(n_particles=1000, alpha=0.5, target_epsilon=0.05,
                       max_simulations=500_000)
    pop, trace = run(model, model.prior(), np.array([1.0]), config, seed=2024)
    elapsed = time.perf_counter() - t0

    summaries = np.array([p.summary[0] for p in pop.particles])
    frac_close = float(np.mean(np.abs(summaries - 1.0) <= 0.05))
    thetas = pop.theta_matrix()[:, 0]
    exact_mean, exact_sd = model.exact_posterior(1.0)  # 10/11, sqrt(1/11)
    mean_err = abs(thetas.mean() - exact_mean)
    sd_rel_err = abs(thetas.std() - exact_sd) / exact_sd
    ok = (frac_close >= 0.99 and mean_err < 0.05 and sd_rel_err < 0.15
          and elapsed < 60.0)
    _report(name, ok,
            f"close={frac_close:.3f} mean_err={mean_err:.4f} "
            f"sd_rel_err={sd_rel_err:.3f} elapsed={elapsed:.1f}s "
            f"sims={trace.total_simulations}")
    assert frac_close >= 0.99
    assert mean_err < 0.05
    assert sd_rel_err < 0.15
    assert elapsed < 60.0


def test_rejection_abc_equivalence():
    name = "rejection-abc-equivalence"
    t0 = time.perf_counter()
    model = BinomialModel(n_trials=50, a=1.0, b=1.0)
    y_obs = np.array([0.4])  # 20 successes out of 50
    config = SmcConfig(n_particles=1000, alpha=0.5, target_epsilon=0.04,
                       max_simulations=500_000)
    pop, trace = run(model, model.prior(), y_obs, config, seed=7)
    epsilon = pop.epsilon
    smc_thetas = pop.theta_matrix()[:, 0]
    reference = rejection_abc(model, model.prior(), y_obs, epsilon, 1000, seed=123)
    result = st.ks_2samp(smc_thetas, reference[:, 0])
    elapsed = time.perf_counter() - t0
    ok = result.pvalue > 1e-3 and elapsed < 120.0
    _report(name, ok,
            f"epsilon={epsilon:.4g} ks_p={result.pvalue:.4f} elapsed={elapsed:.1f}s")
    assert result.pvalue > 1e-3
    assert elapsed < 120.0


def test_smc_invariant_suite():
    name = "smc-invariant-suite"
    model = GaussianMeanModel(sigma=1.0, n_obs=10, mu0=0.0, tau0=1.0)
    config = SmcConfig(n_particles=100, alpha=0.5, target_epsilon=0.1,
                       max_simulations=30_000)
    n_runs = 20
    for seed in range(1, n_runs + 1):
        pop, trace = run(model, model.prior(), np.array([1.0]), config, seed=seed)
        records = list(trace)
        eps = [r.epsilon for r in records]
        assert all(a > b for a, b in zip(eps, eps[1:])), f"seed {seed}: eps not decreasing"
        sims = [r.cumulative_simulations for r in records]
        assert all(a <= b for a, b in zip(sims, sims[1:]))
        assert len(pop) == 100
        assert all(p.distance <= pop.epsilon for p in pop.particles)
        # retained count convention on the final population
        if len({p.distance for p in pop.particles}) > 1:
            eps_next, retained = adapt_tolerance(pop, 0.5)
            assert len(retained) == 50
            assert eps_next < pop.epsilon
    assert choose_mcmc_steps(0.5, 0.01) == 7
    assert choose_mcmc_steps(1.0, 0.01) == 1
    assert choose_mcmc_steps(0.0, 0.01, r_max=500) == 500
    _report(name, True, f"{n_runs} seeded runs, all invariants held, R(0.5,0.01)=7")


def test_geometry_oracles():
    name = "geometry-oracles"
    rng = np.random.default_rng(1234)

    for trial in range(200):
        pts = rng.random((12, 2)) * 10.0
        assert triangulate(pts).edge_set() == brute_force_delaunay_edges(pts), \
            f"triangulation mismatch on trial {trial}"

    for trial in range(200):
        n = int(rng.integers(10, 60))
        pts = rng.random((n, 2)) * 20.0
        kinds = (rng.random(n) < 0.5).astype(np.int8)
        if not (kinds == 0).any():
            kinds[0] = 0
        if not (kinds == 1).any():
            kinds[1] = 1
        state = TissueState(pts, kinds, np.zeros(n), triangulate(pts))
        cancer = np.flatnonzero(kinds == CANCER)
        idx = int(cancer[int(rng.integers(0, len(cancer)))])
        expected = nearest_healthy_scan(pts, kinds, idx)
        assert boundary_distance(idx, state) == pytest.approx(expected, abs=1e-12)

    config = VcbmConfig(steps_per_day=20, spring_constant=2.0, cell_diameter_mm=1.0)
    for trial in range(200):
        n = int(rng.integers(3, 60))
        cancer_pts = rng.random((n, 2)) * 25.0
        healthy = np.array([[90.0, 90.0], [91.0, 90.0], [90.0, 91.0]])
        pts = np.vstack([cancer_pts, healthy])
        kinds = np.array([CANCER] * n + [0, 0, 0], dtype=np.int8)
        state = TissueState(pts, kinds, np.zeros(n + 3), triangulate(pts))
        L_ref, W_ref = rotating_scan_extents(cancer_pts)
        expected = 0.5 * (L_ref + 1.0) * (W_ref + 1.0) ** 2
        assert tumour_volume(state, config) == pytest.approx(expected, abs=1e-9)

    _report(name, True, "200 triangulations, 200 boundary scans, 200 volume extents")


DESK_CONFIG = VcbmConfig(
    steps_per_day=2,
    spring_constant=0.2,
    initial_tumour_cells=200,
    domain_half_width=11.0,
    cell_cycle_jitter=2.0,
    max_cells=6000,
)
THETA_SYNTH = (0.2, 1e-5, 31.0, 114.0)
MEASUREMENT_DAYS = (0.0, 7.0, 14.0)


def _vcbm_prior() -> PriorSpec:
    return PriorSpec(
        ("p0", "p_psc", "d_max", "g_age"),
        (
            Beta(1.0, 1.0),
            Beta(1.0, 1e4),
            LogNormal(math.log(30.0), 1.0),
            LogNormal(math.log(160.0), 1.0),
        ),
    )


def test_vcbm_desk_scale_calibration():
    name = "vcbm-desk-calibration"
    t0 = time.perf_counter()
    model = VcbmModel(DESK_CONFIG, 14.0, MEASUREMENT_DAYS)
    prior = _vcbm_prior()
    observed = simulate(VcbmParams(*THETA_SYNTH), DESK_CONFIG, 14.0,
                        MEASUREMENT_DAYS, derive_stream(900, [100]))
    config = SmcConfig(n_particles=100, alpha=0.5, max_simulations=5000)

    n_replicates = 10
    n_contains = 0
    first_population = None
    for rep in range(1, n_replicates + 1):
        pop, trace = run(model, prior, observed.volumes, config, seed=rep)
        p0 = pop.theta_matrix()[:, 0]
        lo, hi = np.quantile(p0, [0.05, 0.95])
        if lo <= THETA_SYNTH[0] <= hi:
            n_contains += 1
        if rep == 1:
            first_population = pop

    _, bands = posterior_predictive(first_population, model, 200,
                                    StreamTree(1).child(99))
    enclosed = (bands["q025"] <= observed.volumes) & (observed.volumes <= bands["q975"])
    frac_days = float(np.mean(enclosed))
    elapsed = time.perf_counter() - t0

    ok = n_contains >= 8 and frac_days >= 0.9 and elapsed < 900.0
    _report(name, ok,
            f"p0 coverage {n_contains}/{n_replicates}, bands enclose "
            f"{frac_days:.0%} of days, elapsed={elapsed:.0f}s")
    assert n_contains >= 8
    assert frac_days >= 0.9
    assert elapsed < 900.0


GAUSS_CONFIG = """
[run]
seed = 42
workers = {workers}
output_dir = {out}

[model]
name = gaussian_mean
sigma = 1.0
n_obs = 10

[smc]
n_particles = 200
alpha = 0.5
target_epsilon = 0.1
max_simulations = 100000

[data]
observed_summary = 1.0
"""

VCBM_CONFIG = """
[run]
seed = 11
workers = {workers}
output_dir = {out}

[model]
name = vcbm
days = 2
measurement_days = 0 1 2
steps_per_day = 2
spring_constant = 0.2
initial_tumour_cells = 12
domain_half_width = 5
max_cells = 500

[prior]
p0 = beta 1 1
p_psc = beta 1 10000
d_max = lognormal 3.4012 1.0
g_age = lognormal 1.6 0.5

[smc]
n_particles = 20
alpha = 0.5
max_simulations = 400

[data]
synthetic_theta = 0.5 1e-5 31 3
"""


def test_determinism_and_verify_round_trips(tmp_path):
    from abckit.cli import main

    name = "determinism-and-verify"

    def write(template, stem, workers):
        path = tmp_path / f"{stem}.ini"
        path.write_text(template.format(out=tmp_path / stem, workers=workers))
        return path

    # calibrate: verify round trip and worker independence, both models
    for template, stem in ((GAUSS_CONFIG, "gauss"), (VCBM_CONFIG, "vcbm")):
        cfg1 = write(template, f"{stem}_w1", workers=1)
        cfg8 = write(template, f"{stem}_w8", workers=8)
        assert main(["calibrate", str(cfg1)]) == 0
        assert main(["calibrate", str(cfg8)]) == 0
        assert main(["verify", str(tmp_path / f"{stem}_w1")]) == 0
        for fname in ("population.csv", "trace.csv"):
            a = (tmp_path / f"{stem}_w1" / fname).read_bytes()
            b = (tmp_path / f"{stem}_w8" / fname).read_bytes()
            assert a == b, f"{stem}: {fname} differs between workers=1 and workers=8"

    # simulate: verify round trip, worker independence implied (single run)
    sim1 = write(VCBM_CONFIG, "sim_w1", workers=1)
    sim8 = write(VCBM_CONFIG, "sim_w8", workers=8)
    assert main(["simulate", str(sim1)]) == 0
    assert main(["simulate", str(sim8)]) == 0
    assert main(["verify", str(tmp_path / "sim_w1")]) == 0
    assert (tmp_path / "sim_w1" / "trajectory.csv").read_bytes() == \
        (tmp_path / "sim_w8" / "trajectory.csv").read_bytes()

    # predict: verify round trip and worker independence
    population = tmp_path / "gauss_w1" / "population.csv"
    pred1 = write(GAUSS_CONFIG, "pred_w1", workers=1)
    pred8 = write(GAUSS_CONFIG, "pred_w8", workers=8)
    assert main(["predict", str(pred1), "--population", str(population),
                 "--draws", "64"]) == 0
    assert main(["predict", str(pred8), "--population", str(population),
                 "--draws", "64"]) == 0
    assert main(["verify", str(tmp_path / "pred_w1")]) == 0
    for fname in ("predictive_bands.csv", "predictive_draws.csv"):
        a = (tmp_path / "pred_w1" / fname).read_bytes()
        b = (tmp_path / "pred_w8" / fname).read_bytes()
        assert a == b, f"predict: {fname} differs between workers=1 and workers=8"

    _report(name, True, "verify round trips and workers=1 vs 8 byte-identical "
                        "for calibrate, simulate, predict")
