"""Command implementations behind the CLI: calibrate, simulate, predict, verify."""
from __future__ import annotations

import filecmp
import tempfile
import time
from pathlib import Path

import numpy as np

from .. import __version__
from ..core.dataset import Dataset
from ..core.params import ParamVector
from ..core.particles import Particle, Population
from ..core.rng import RNG_SCHEME, StreamTree, derive_stream
from ..smc import posterior_predictive, run
from ..vcbm.config import VcbmParams
from ..vcbm.simulate import simulate as vcbm_simulate
from .outputs import (
    _write_csv,
    fmt,
    read_metadata,
    read_population_csv,
    write_bands_csv,
    write_draws_csv,
    write_metadata,
    write_population_csv,
    write_positions_csv,
    write_trace_csv,
    write_trajectory_csv,
)
from .runconfig import RunConfig, resolve_config

# stream labels owned by the command layer (the sampler owns 0..3)
LABEL_SYNTH_DATA = 100
LABEL_SIMULATE = 101


class CommandError(RuntimeError):
    """A command failed at run time (not a configuration problem)."""


def _base_metadata(config: RunConfig, command: str) -> dict:
    return {
        "version": __version__,
        "rng_scheme": RNG_SCHEME,
        "command": command,
        "seed": config.seed,
        "workers": config.workers,
        "config": config.echo,
        "effective_prior": config.prior.describe(),
        "volatile_fields": ["wall_time_seconds"],
    }


def resolve_observed(config: RunConfig) -> tuple[np.ndarray, np.ndarray, Dataset | None]:
    """Observation grid and summary vector; generates synthetic data if asked.

    Returns (days, summary, generated_dataset) where the dataset is only
    set in synthetic mode (so callers can write it out for reference).
    """
    if config.data_mode == "path":
        return config.dataset.days, config.dataset.summary(), None
    if config.data_mode == "summary":
        return config.obs_days, config.observed_summary, None
    rng = derive_stream(config.synthetic_seed, [LABEL_SYNTH_DATA])
    summary = np.asarray(config.model.simulate(config.synthetic_theta, rng), dtype=float)
    generated = None
    if config.model_name == "vcbm":
        generated = Dataset(config.obs_days, summary)
    return config.obs_days, summary, generated


def cmd_calibrate(config: RunConfig) -> Path:
    """Run the sampler and write population.csv, trace.csv, metadata.json."""
    t0 = time.perf_counter()
    days, s_obs, generated = resolve_observed(config)
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    population, trace = run(
        config.model, config.prior, s_obs, config.smc,
        StreamTree(config.seed), workers=config.workers,
    )
    outputs = ["population.csv", "trace.csv"]
    write_population_csv(out / "population.csv", population)
    write_trace_csv(out / "trace.csv", trace)
    if generated is not None:
        write_trajectory_csv(out / "observed.csv", generated)
        outputs.append("observed.csv")
    meta = _base_metadata(config, "calibrate")
    meta.update(
        {
            "outputs": sorted(outputs),
            "stop_reason": trace.stop_reason,
            "total_simulations": trace.total_simulations,
            "final_epsilon": trace.final_epsilon,
            "n_iterations": len(trace) - 1,
            "observed_days": [float(d) for d in days],
            "wall_time_seconds": time.perf_counter() - t0,
            "column_orders": {
                "population.csv": list(population.param_names()) + ["distance"],
                "trace.csv": [
                    "iteration", "epsilon", "n_unique_particles",
                    "mcmc_acceptance_rate", "r_mcmc_steps", "cumulative_simulations",
                ],
            },
        }
    )
    write_metadata(out / "metadata.json", meta)
    return out


def cmd_simulate(config: RunConfig) -> Path:
    """Single forward run at the synthetic theta; writes trajectory.csv."""
    if config.data_mode != "synthetic":
        raise CommandError(
            "simulate requires a [data] synthetic_theta block naming the "
            "parameter value to run"
        )
    t0 = time.perf_counter()
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    rng = derive_stream(config.seed, [LABEL_SIMULATE])
    outputs = ["trajectory.csv"]
    if config.model_name == "vcbm":
        params = VcbmParams.from_values(config.synthetic_theta)
        result = vcbm_simulate(
            params, config.vcbm_config, config.model.days,
            config.model.measurement_days, rng,
            record_states=config.write_positions,
        )
        if config.write_positions:
            trajectory, states = result
            write_positions_csv(
                out / "positions.csv",
                list(zip(trajectory.days, states)),
            )
            outputs.append("positions.csv")
        else:
            trajectory = result
        write_trajectory_csv(out / "trajectory.csv", trajectory)
    else:
        # oracle summaries may be negative, so bypass Dataset validation
        summary = np.asarray(config.model.simulate(config.synthetic_theta, rng), dtype=float)
        _write_csv(out / "trajectory.csv", ("day", "volume_mm3"),
                   [[fmt(d), fmt(v)] for d, v in zip(config.obs_days, summary)])
    meta = _base_metadata(config, "simulate")
    meta.update(
        {
            "outputs": sorted(outputs),
            "wall_time_seconds": time.perf_counter() - t0,
            "column_orders": {"trajectory.csv": ["day", "volume_mm3"]},
        }
    )
    write_metadata(out / "metadata.json", meta)
    return out


def cmd_predict(config: RunConfig, population_path, m_draws: int) -> Path:
    """Posterior-predictive bands from a calibrated population file."""
    if m_draws < 1:
        raise CommandError(f"--draws must be >= 1, got {m_draws}")
    t0 = time.perf_counter()
    population_path = Path(population_path)
    thetas, distances = read_population_csv(population_path, config.model.param_names)
    names = tuple(config.model.param_names)
    particles = tuple(
        Particle(ParamVector(names, row), np.empty(0), float(d))
        for row, d in zip(thetas, distances)
    )
    population = Population(particles, epsilon=float(distances.max()), iteration=0)

    days, s_obs, _ = resolve_observed(config)
    draws, bands = posterior_predictive(
        population, config.model, m_draws, StreamTree(config.seed),
        workers=config.workers,
    )
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    write_bands_csv(out / "predictive_bands.csv", days, bands)
    write_draws_csv(out / "predictive_draws.csv", days, draws)
    meta = _base_metadata(config, "predict")
    meta.update(
        {
            "outputs": ["predictive_bands.csv", "predictive_draws.csv"],
            "population_path": str(population_path.resolve()),
            "m_draws": m_draws,
            "observed_days": [float(d) for d in days],
            "wall_time_seconds": time.perf_counter() - t0,
            "column_orders": {
                "predictive_bands.csv": ["day", "q025", "q50", "q975"],
                "predictive_draws.csv": ["draw", "day", "value"],
            },
        }
    )
    write_metadata(out / "metadata.json", meta)
    return out


def cmd_verify(output_dir) -> list[str]:
    """Re-run a finished output directory and compare bytes.

    Returns the list of compared files; raises CommandError on the first
    mismatch. The re-run happens in a temporary directory using only the
    metadata's config echo, which is the reproducibility contract.
    """
    output_dir = Path(output_dir)
    meta_path = output_dir / "metadata.json"
    if not meta_path.exists():
        raise FileNotFoundError(f"{meta_path} does not exist")
    meta = read_metadata(meta_path)
    command = meta.get("command")
    echo = meta.get("config")
    if command not in ("calibrate", "simulate", "predict") or echo is None:
        raise CommandError(f"{meta_path}: not a reproducible abckit output directory")

    with tempfile.TemporaryDirectory(prefix="abckit-verify-") as tmp:
        sections = {name: dict(kv) for name, kv in echo.items()}
        sections["run"]["output_dir"] = tmp
        config = resolve_config(sections, base_dir=output_dir)
        if command == "calibrate":
            cmd_calibrate(config)
        elif command == "simulate":
            cmd_simulate(config)
        else:
            cmd_predict(config, meta["population_path"], int(meta["m_draws"]))
        compared = []
        for name in meta.get("outputs", []):
            original = output_dir / name
            regenerated = Path(tmp) / name
            if not original.exists():
                raise CommandError(f"verify: missing original output {original}")
            if not regenerated.exists():
                raise CommandError(f"verify: re-run did not produce {name}")
            if not filecmp.cmp(original, regenerated, shallow=False):
                raise CommandError(f"verify: {name} differs from the re-run")
            compared.append(name)
    if not compared:
        raise CommandError("verify: metadata lists no outputs to compare")
    return compared
