import json

import numpy as np
import pytest

from abckit.core import Dataset, ParamVector, Particle, Population
from abckit.io import load_dataset, read_population_csv, write_population_csv
from abckit.io.datasets import DatasetError
from abckit.io.outputs import fmt, read_metadata, write_metadata, write_trajectory_csv
from abckit.smc import RunTrace, TraceRecord
from abckit.io import write_trace_csv


def test_load_two_rows(tmp_path):
    p = tmp_path / "obs.csv"
    p.write_text("day,volume_mm3\n0,50\n7,120\n")
    ds = load_dataset(p)
    assert len(ds) == 2
    assert np.array_equal(ds.days, [0.0, 7.0])
    assert np.array_equal(ds.volumes, [50.0, 120.0])


def test_non_monotone_days_reports_row(tmp_path):
    p = tmp_path / "obs.csv"
    p.write_text("day,volume_mm3\n0,50\n7,120\n7,130\n")
    with pytest.raises(DatasetError, match="row 4"):
        load_dataset(p)


def test_empty_data_section(tmp_path):
    p = tmp_path / "obs.csv"
    p.write_text("day,volume_mm3\n")
    with pytest.raises(DatasetError, match="no data rows"):
        load_dataset(p)


def test_bad_header(tmp_path):
    p = tmp_path / "obs.csv"
    p.write_text("time,volume\n0,50\n")
    with pytest.raises(DatasetError, match="header"):
        load_dataset(p)


def test_negative_volume_reports_row(tmp_path):
    p = tmp_path / "obs.csv"
    p.write_text("day,volume_mm3\n0,50\n7,-1\n")
    with pytest.raises(DatasetError, match="row 3"):
        load_dataset(p)


def test_malformed_row_reports_row(tmp_path):
    p = tmp_path / "obs.csv"
    p.write_text("day,volume_mm3\n0,50\nseven,120\n")
    with pytest.raises(DatasetError, match="row 3"):
        load_dataset(p)


def test_wrong_field_count_reports_row(tmp_path):
    p = tmp_path / "obs.csv"
    p.write_text("day,volume_mm3\n0,50,9\n")
    with pytest.raises(DatasetError, match="row 2"):
        load_dataset(p)


def test_fmt_round_trips_floats():
    rng = np.random.default_rng(0)
    for x in rng.normal(size=200) * 10.0 ** rng.integers(-8, 8, size=200):
        assert float(fmt(float(x))) == float(x)
    assert fmt(3) == "3"
    assert fmt(0.1) == "0.1"


def test_population_csv_round_trip(tmp_path):
    names = ("p0", "g_age")
    rng = np.random.default_rng(1)
    particles = tuple(
        Particle(ParamVector(names, row), np.array([0.0]), float(abs(row[0])))
        for row in rng.normal(size=(20, 2))
    )
    pop = Population(particles, epsilon=10.0)
    path = tmp_path / "population.csv"
    write_population_csv(path, pop)
    thetas, distances = read_population_csv(path, names)
    assert np.array_equal(thetas, pop.theta_matrix())
    assert np.array_equal(distances, pop.distances())


def test_population_csv_header_mismatch(tmp_path):
    names = ("p0", "g_age")
    particles = (Particle(ParamVector(names, [0.1, 1.0]), np.array([0.0]), 0.1),)
    path = tmp_path / "population.csv"
    write_population_csv(path, Population(particles, epsilon=1.0))
    with pytest.raises(ValueError, match="does not match"):
        read_population_csv(path, ("mu",))


def test_trajectory_round_trip(tmp_path):
    traj = Dataset([0.0, 7.0, 14.0], [0.5, 1.25, 2.0 / 3.0])
    path = tmp_path / "trajectory.csv"
    write_trajectory_csv(path, traj)
    back = load_dataset(path)
    assert np.array_equal(back.days, traj.days)
    assert np.array_equal(back.volumes, traj.volumes)


def test_trace_csv_layout(tmp_path):
    trace = RunTrace()
    trace.append(TraceRecord(0, 4.0, 10, 1.0, 0, 10))
    trace.append(TraceRecord(1, 2.0, 9, 0.5, 7, 80))
    path = tmp_path / "trace.csv"
    write_trace_csv(path, trace)
    lines = path.read_text().splitlines()
    assert lines[0] == ("iteration,epsilon,n_unique_particles,"
                        "mcmc_acceptance_rate,r_mcmc_steps,cumulative_simulations")
    assert lines[1] == "0,4.0,10,1.0,0,10"
    assert lines[2] == "1,2.0,9,0.5,7,80"


def test_metadata_round_trip(tmp_path):
    path = tmp_path / "metadata.json"
    payload = {"seed": 42, "config": {"run": {"seed": "42"}}, "outputs": ["a.csv"]}
    write_metadata(path, payload)
    assert read_metadata(path) == payload
    # deterministic serialization
    first = path.read_bytes()
    write_metadata(path, json.loads(path.read_text()))
    assert path.read_bytes() == first
