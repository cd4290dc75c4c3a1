"""Run configuration: a flat, sectioned key-value file with explicit types.

A parsed configuration is resolved into a RunConfig whose ``echo`` mapping
records every value actually used, defaults included, in canonical string
form. Re-resolving the echo reproduces the identical RunConfig, which is
what makes ``verify`` round trips possible.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..core.dataset import Dataset
from ..core.priors import Beta, LogNormal, Marginal, Normal, PriorSpec, Uniform
from ..oracles import BinomialModel, GaussianMeanModel
from ..parallel import default_workers
from ..smc.config import SmcConfig
from ..vcbm.config import VcbmConfig, VcbmParams
from ..vcbm.simulate import VcbmModel
from .datasets import load_dataset
from .outputs import fmt


class ConfigError(ValueError):
    """One or more configuration problems, each named individually."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


MODEL_NAMES = ("vcbm", "gaussian_mean", "binomial")

_SMC_DEFAULTS = {
    "n_particles": "1000",
    "alpha": "0.5",
    "target_epsilon": "none",
    "max_simulations": "100000",
    "acceptance_floor": "0.01",
    "mcmc_tuning_c": "0.01",
    "r_max": "500",
    "initial_acceptance": "0.5",
    "move_retained": "false",
}

_VCBM_MODEL_DEFAULTS = {
    "steps_per_day": "24",
    "spring_constant": "2.0",
    "rest_length": "1.0",
    "initial_tumour_cells": "37",
    "domain_half_width": "12.0",
    "cell_cycle_jitter": "0.0",
    "initial_age_spread": "1.0",
    "cell_diameter_mm": "0.02",
    "volume_formula": "caliper",
    "edge_cap_factor": "3.0",
    "boundary_margin": "2.0",
    "max_cells": "50000",
    "write_positions": "false",
}

_GAUSSIAN_DEFAULTS = {
    "sigma": "1.0",
    "n_obs": "10",
    "prior_mean": "0.0",
    "prior_sd": "1.0",
}

_BINOMIAL_DEFAULTS = {
    "n_trials": "50",
    "a": "1.0",
    "b": "1.0",
}


@dataclass
class RunConfig:
    seed: int
    workers: int
    output_dir: Path
    model_name: str
    model: object
    prior: PriorSpec
    smc: SmcConfig
    data_mode: str  # "path" | "synthetic" | "summary"
    data_path: Path | None
    dataset: Dataset | None
    synthetic_theta: np.ndarray | None
    synthetic_seed: int
    observed_summary: np.ndarray | None
    obs_days: np.ndarray
    vcbm_config: VcbmConfig | None
    write_positions: bool
    echo: dict = field(repr=False)


class _Problems:
    def __init__(self):
        self.items: list[str] = []

    def add(self, message: str) -> None:
        self.items.append(message)

    def raise_if_any(self) -> None:
        if self.items:
            raise ConfigError(self.items)


class _Section:
    """Typed key extraction over one raw string-to-string section."""

    def __init__(self, name, raw: dict, problems: _Problems):
        self.name = name
        self.raw = dict(raw)
        self.problems = problems
        self.used: dict[str, str] = {}

    def _take(self, key, default):
        if key in self.raw:
            value = self.raw.pop(key).strip()
        elif default is not None:
            value = default
        else:
            self.problems.add(f"[{self.name}] missing required key '{key}'")
            return None
        self.used[key] = value
        return value

    def string(self, key, default=None, choices=None):
        value = self._take(key, default)
        if value is not None and choices and value not in choices:
            self.problems.add(
                f"[{self.name}] {key} must be one of {choices}, got {value!r}"
            )
            return None
        return value

    def integer(self, key, default=None, minimum=None):
        value = self._take(key, default)
        if value is None:
            return None
        try:
            out = int(value)
        except ValueError:
            self.problems.add(f"[{self.name}] {key} must be an integer, got {value!r}")
            return None
        if minimum is not None and out < minimum:
            self.problems.add(f"[{self.name}] {key} must be >= {minimum}, got {out}")
            return None
        self.used[key] = str(out)
        return out

    def real(self, key, default=None, minimum=None, maximum=None,
             exclusive_min=False, exclusive_max=False):
        value = self._take(key, default)
        if value is None:
            return None
        try:
            out = float(value)
        except ValueError:
            self.problems.add(f"[{self.name}] {key} must be a number, got {value!r}")
            return None
        if not math.isfinite(out):
            self.problems.add(f"[{self.name}] {key} must be finite, got {out}")
            return None
        if minimum is not None and (out <= minimum if exclusive_min else out < minimum):
            op = ">" if exclusive_min else ">="
            self.problems.add(f"[{self.name}] {key} must be {op} {minimum}, got {out}")
            return None
        if maximum is not None and (out >= maximum if exclusive_max else out > maximum):
            op = "<" if exclusive_max else "<="
            self.problems.add(f"[{self.name}] {key} must be {op} {maximum}, got {out}")
            return None
        self.used[key] = fmt(out)
        return out

    def boolean(self, key, default=None):
        value = self._take(key, default)
        if value is None:
            return None
        low = value.lower()
        if low in ("true", "yes", "1"):
            self.used[key] = "true"
            return True
        if low in ("false", "no", "0"):
            self.used[key] = "false"
            return False
        self.problems.add(f"[{self.name}] {key} must be true or false, got {value!r}")
        return None

    def reals(self, key, default=None):
        value = self._take(key, default)
        if value is None:
            return None
        parts = value.split()
        try:
            out = [float(p) for p in parts]
        except ValueError:
            self.problems.add(
                f"[{self.name}] {key} must be space-separated numbers, got {value!r}"
            )
            return None
        if not out:
            self.problems.add(f"[{self.name}] {key} must not be empty")
            return None
        self.used[key] = " ".join(fmt(v) for v in out)
        return np.array(out)

    def optional_real(self, key, default="none", minimum=None):
        value = self._take(key, default)
        if value is None or value.lower() == "none":
            self.used[key] = "none"
            return None
        return self.real(key, default=value, minimum=minimum)

    def finish(self) -> None:
        for key in self.raw:
            self.problems.add(f"[{self.name}] unknown key '{key}'")


def _parse_marginal(text: str, key: str, problems: _Problems) -> Marginal | None:
    parts = text.split()
    if len(parts) != 3:
        problems.add(
            f"[prior] {key} must be '<family> <arg1> <arg2>', got {text!r}"
        )
        return None
    family = parts[0].lower()
    try:
        a, b = float(parts[1]), float(parts[2])
    except ValueError:
        problems.add(f"[prior] {key}: non-numeric arguments in {text!r}")
        return None
    try:
        if family == "uniform":
            return Uniform(a, b)
        if family == "beta":
            return Beta(a, b)
        if family == "lognormal":
            return LogNormal(a, b)
        if family == "normal":
            return Normal(a, b)
    except ValueError as exc:
        problems.add(f"[prior] {key}: {exc}")
        return None
    problems.add(
        f"[prior] {key}: unknown family {family!r} "
        "(expected uniform, beta, lognormal, or normal)"
    )
    return None


def _marginal_echo(m: Marginal) -> str:
    if isinstance(m, Uniform):
        return f"uniform {fmt(m.low)} {fmt(m.high)}"
    if isinstance(m, Beta):
        return f"beta {fmt(m.a)} {fmt(m.b)}"
    if isinstance(m, LogNormal):
        return f"lognormal {fmt(m.mu)} {fmt(m.sigma)}"
    return f"normal {fmt(m.mu)} {fmt(m.sigma)}"


def parse_config_text(text: str, source: str = "<config>") -> dict[str, dict[str, str]]:
    """Parse the sectioned key-value format into raw string mappings."""
    parser = configparser.ConfigParser(
        interpolation=None, strict=True, empty_lines_in_values=False
    )
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError([f"parse error: {exc}"]) from None
    return {name: dict(parser.items(name)) for name in parser.sections()}


def load_config(path, seed_override: int | None = None) -> RunConfig:
    """Read, validate, and fully resolve a run-configuration file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError([f"cannot read config {path}: {exc}"]) from None
    sections = parse_config_text(text, source=str(path))
    return resolve_config(sections, base_dir=path.parent, seed_override=seed_override)


def resolve_config(sections: dict, base_dir=None,
                   seed_override: int | None = None) -> RunConfig:
    """Validate raw section mappings and build the resolved RunConfig."""
    base_dir = Path(base_dir) if base_dir is not None else Path.cwd()
    problems = _Problems()
    known = {"run", "model", "prior", "smc", "data"}
    for name in sections:
        if name not in known:
            problems.add(f"unknown section [{name}]")
    for required in ("run", "model", "data"):
        if required not in sections:
            problems.add(f"missing section [{required}]")
    problems.raise_if_any()

    run_sec = _Section("run", sections.get("run", {}), problems)
    seed = run_sec.integer("seed", minimum=0)
    if seed_override is not None:
        seed = seed_override
        run_sec.used["seed"] = str(seed)
    workers = run_sec.integer("workers", default=str(default_workers()), minimum=1)
    output_dir = run_sec.string("output_dir")
    run_sec.finish()

    model_sec = _Section("model", sections.get("model", {}), problems)
    model_name = model_sec.string("name", choices=MODEL_NAMES)
    problems.raise_if_any()

    data_sec = _Section("data", sections.get("data", {}), problems)
    data_path_raw = data_sec.raw.pop("path", None)
    synthetic_theta_raw = data_sec.raw.pop("synthetic_theta", None)
    observed_summary_raw = data_sec.raw.pop("observed_summary", None)
    modes = [
        name
        for name, raw in (
            ("path", data_path_raw),
            ("synthetic", synthetic_theta_raw),
            ("summary", observed_summary_raw),
        )
        if raw is not None
    ]
    if len(modes) != 1:
        problems.add(
            "[data] exactly one of 'path', 'synthetic_theta', or "
            f"'observed_summary' is required, got {modes or 'none'}"
        )
        problems.raise_if_any()
    data_mode = modes[0]

    dataset = None
    data_path = None
    synthetic_theta = None
    observed_summary = None
    if data_mode == "path":
        data_path = Path(data_path_raw.strip())
        if not data_path.is_absolute():
            data_path = (base_dir / data_path).resolve()
        data_sec.used["path"] = str(data_path)
        try:
            dataset = load_dataset(data_path)
        except ValueError as exc:
            problems.add(f"[data] {exc}")
    elif data_mode == "synthetic":
        try:
            theta_list = [float(p) for p in synthetic_theta_raw.split()]
        except ValueError:
            theta_list = None
            problems.add(
                f"[data] synthetic_theta must be space-separated numbers, "
                f"got {synthetic_theta_raw!r}"
            )
        if theta_list is not None:
            synthetic_theta = np.array(theta_list)
            data_sec.used["synthetic_theta"] = " ".join(fmt(v) for v in synthetic_theta)
    else:
        try:
            observed_summary = np.array([float(p) for p in observed_summary_raw.split()])
            data_sec.used["observed_summary"] = " ".join(fmt(v) for v in observed_summary)
        except ValueError:
            problems.add(
                f"[data] observed_summary must be space-separated numbers, "
                f"got {observed_summary_raw!r}"
            )
    synthetic_seed = data_sec.integer("synthetic_seed", default=str(seed), minimum=0)
    data_sec.finish()

    # model-specific keys, prior, and the observation grid
    vcbm_config = None
    write_positions = False
    prior = None
    model = None
    obs_days = None
    if model_name == "vcbm":
        days = model_sec.real(
            "days",
            default=None if data_mode != "path" else fmt(float(dataset.days[-1])) if dataset else None,
            minimum=0.0,
        )
        if data_mode == "path" and dataset is not None:
            measurement_days = dataset.days
            model_sec.used["measurement_days"] = " ".join(fmt(v) for v in measurement_days)
            if "measurement_days" in model_sec.raw:
                model_sec.raw.pop("measurement_days")
                problems.add(
                    "[model] measurement_days must not be given together with "
                    "[data] path (the observed grid is used)"
                )
        else:
            measurement_days = model_sec.reals("measurement_days")
        kwargs = {}
        kwargs["steps_per_day"] = model_sec.integer(
            "steps_per_day", _VCBM_MODEL_DEFAULTS["steps_per_day"], minimum=1)
        kwargs["spring_constant"] = model_sec.real(
            "spring_constant", _VCBM_MODEL_DEFAULTS["spring_constant"], minimum=0.0, exclusive_min=True)
        kwargs["rest_length"] = model_sec.real(
            "rest_length", _VCBM_MODEL_DEFAULTS["rest_length"], minimum=0.0, exclusive_min=True)
        kwargs["initial_tumour_cells"] = model_sec.integer(
            "initial_tumour_cells", _VCBM_MODEL_DEFAULTS["initial_tumour_cells"], minimum=1)
        kwargs["domain_half_width"] = model_sec.real(
            "domain_half_width", _VCBM_MODEL_DEFAULTS["domain_half_width"], minimum=0.0, exclusive_min=True)
        kwargs["cell_cycle_jitter"] = model_sec.real(
            "cell_cycle_jitter", _VCBM_MODEL_DEFAULTS["cell_cycle_jitter"], minimum=0.0)
        kwargs["initial_age_spread"] = model_sec.real(
            "initial_age_spread", _VCBM_MODEL_DEFAULTS["initial_age_spread"], minimum=0.0, maximum=1.0)
        kwargs["cell_diameter_mm"] = model_sec.real(
            "cell_diameter_mm", _VCBM_MODEL_DEFAULTS["cell_diameter_mm"], minimum=0.0, exclusive_min=True)
        kwargs["volume_formula"] = model_sec.string(
            "volume_formula", _VCBM_MODEL_DEFAULTS["volume_formula"], choices=("caliper", "ellipsoid"))
        kwargs["edge_cap_factor"] = model_sec.real(
            "edge_cap_factor", _VCBM_MODEL_DEFAULTS["edge_cap_factor"], minimum=1.0, exclusive_min=True)
        kwargs["boundary_margin"] = model_sec.real(
            "boundary_margin", _VCBM_MODEL_DEFAULTS["boundary_margin"], minimum=0.0, exclusive_min=True)
        kwargs["max_cells"] = model_sec.integer(
            "max_cells", _VCBM_MODEL_DEFAULTS["max_cells"], minimum=1)
        write_positions = model_sec.boolean(
            "write_positions", _VCBM_MODEL_DEFAULTS["write_positions"])
        problems.raise_if_any()
        try:
            vcbm_config = VcbmConfig(**kwargs)
        except ValueError as exc:
            problems.add(f"[model] {exc}")
        if "prior" not in sections:
            problems.add("missing section [prior] (required for the vcbm model)")
        else:
            prior_sec = _Section("prior", sections["prior"], problems)
            marginals = []
            for key in VcbmParams.PARAM_NAMES:
                raw = prior_sec.string(key)
                if raw is not None:
                    m = _parse_marginal(raw, key, problems)
                    if m is not None:
                        marginals.append(m)
                        prior_sec.used[key] = _marginal_echo(m)
            prior_sec.finish()
            if len(marginals) == len(VcbmParams.PARAM_NAMES):
                prior = PriorSpec(VcbmParams.PARAM_NAMES, tuple(marginals))
            prior_echo = prior_sec.used
        problems.raise_if_any()
        if days is None:
            problems.add("[model] missing required key 'days'")
        problems.raise_if_any()
        model = VcbmModel(vcbm_config, float(days), tuple(float(d) for d in measurement_days))
        obs_days = np.asarray(measurement_days, dtype=float)
    elif model_name == "gaussian_mean":
        sigma = model_sec.real("sigma", _GAUSSIAN_DEFAULTS["sigma"], minimum=0.0, exclusive_min=True)
        n_obs = model_sec.integer("n_obs", _GAUSSIAN_DEFAULTS["n_obs"], minimum=1)
        prior_mean = model_sec.real("prior_mean", _GAUSSIAN_DEFAULTS["prior_mean"])
        prior_sd = model_sec.real("prior_sd", _GAUSSIAN_DEFAULTS["prior_sd"], minimum=0.0, exclusive_min=True)
        if "prior" in sections:
            problems.add(
                "[prior] must be omitted for gaussian_mean (the model carries "
                "its conjugate Normal prior)"
            )
        problems.raise_if_any()
        model = GaussianMeanModel(sigma=sigma, n_obs=n_obs, mu0=prior_mean, tau0=prior_sd)
        prior = model.prior()
        prior_echo = {"mu": _marginal_echo(prior.marginals[0])}
        obs_days = np.arange(1.0)
    else:
        n_trials = model_sec.integer("n_trials", _BINOMIAL_DEFAULTS["n_trials"], minimum=1)
        a = model_sec.real("a", _BINOMIAL_DEFAULTS["a"], minimum=0.0, exclusive_min=True)
        b = model_sec.real("b", _BINOMIAL_DEFAULTS["b"], minimum=0.0, exclusive_min=True)
        if "prior" in sections:
            problems.add(
                "[prior] must be omitted for binomial (the model carries its "
                "conjugate Beta prior)"
            )
        problems.raise_if_any()
        model = BinomialModel(n_trials=n_trials, a=a, b=b)
        prior = model.prior()
        prior_echo = {"theta": _marginal_echo(prior.marginals[0])}
        obs_days = np.arange(1.0)
    model_sec.finish()

    smc_sec = _Section("smc", sections.get("smc", {}), problems)
    smc_kwargs = {
        "n_particles": smc_sec.integer("n_particles", _SMC_DEFAULTS["n_particles"], minimum=1),
        "alpha": smc_sec.real("alpha", _SMC_DEFAULTS["alpha"], minimum=0.0, maximum=1.0,
                              exclusive_min=True, exclusive_max=True),
        "target_epsilon": smc_sec.optional_real("target_epsilon", _SMC_DEFAULTS["target_epsilon"], minimum=0.0),
        "max_simulations": smc_sec.integer("max_simulations", _SMC_DEFAULTS["max_simulations"], minimum=1),
        "acceptance_floor": smc_sec.real("acceptance_floor", _SMC_DEFAULTS["acceptance_floor"],
                                         minimum=0.0, maximum=1.0, exclusive_min=True, exclusive_max=True),
        "mcmc_tuning_c": smc_sec.real("mcmc_tuning_c", _SMC_DEFAULTS["mcmc_tuning_c"],
                                      minimum=0.0, maximum=1.0, exclusive_min=True, exclusive_max=True),
        "r_max": smc_sec.integer("r_max", _SMC_DEFAULTS["r_max"], minimum=1),
        "initial_acceptance": smc_sec.real("initial_acceptance", _SMC_DEFAULTS["initial_acceptance"],
                                           minimum=0.0, maximum=1.0, exclusive_min=True),
        "move_retained": smc_sec.boolean("move_retained", _SMC_DEFAULTS["move_retained"]),
    }
    smc_sec.finish()
    problems.raise_if_any()
    try:
        smc = SmcConfig(**smc_kwargs)
    except ValueError as exc:
        problems.add(f"[smc] {exc}")
    problems.raise_if_any()

    # data-mode/model consistency
    if data_mode == "synthetic" and synthetic_theta is not None:
        expected = len(model.param_names)
        if synthetic_theta.size != expected:
            missing = [
                name for i, name in enumerate(model.param_names)
                if i >= synthetic_theta.size
            ]
            problems.add(
                f"[data] synthetic_theta has {synthetic_theta.size} components, "
                f"model {model_name} needs {expected}"
                + (f" (missing: {', '.join(missing)})" if missing else "")
            )
    if data_mode == "summary" and observed_summary is not None:
        if observed_summary.size != obs_days.size:
            problems.add(
                f"[data] observed_summary has {observed_summary.size} values "
                f"but the model produces {obs_days.size}"
            )
    if data_mode == "path" and dataset is not None and model_name != "vcbm":
        if len(dataset) != obs_days.size:
            problems.add(
                f"[data] dataset has {len(dataset)} rows but the "
                f"{model_name} summary has {obs_days.size} component(s)"
            )
    problems.raise_if_any()

    out_dir = Path(output_dir)
    if not out_dir.is_absolute():
        out_dir = (base_dir / out_dir).resolve()
    run_sec.used["output_dir"] = str(out_dir)

    echo = {
        "run": run_sec.used,
        "model": {"name": model_name, **model_sec.used},
        "smc": smc_sec.used,
        "data": data_sec.used,
    }
    if model_name == "vcbm":
        echo["prior"] = prior_echo
    if data_mode == "path":
        obs_days = dataset.days

    return RunConfig(
        seed=seed,
        workers=workers,
        output_dir=out_dir,
        model_name=model_name,
        model=model,
        prior=prior,
        smc=smc,
        data_mode=data_mode,
        data_path=data_path,
        dataset=dataset,
        synthetic_theta=synthetic_theta,
        synthetic_seed=synthetic_seed,
        observed_summary=observed_summary,
        obs_days=obs_days,
        vcbm_config=vcbm_config,
        write_positions=bool(write_positions),
        echo=echo,
    )
