import json
from pathlib import Path

from plotkit.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def test_predictive_flags(tmp_path):
    out = tmp_path / "fig.png"
    code = main([
        "predictive",
        "--bands", str(FIXTURES / "predictive_bands.csv"),
        "--observed", str(FIXTURES / "observed.csv"),
        "--output", str(out),
        "--title", "synthetic check",
    ])
    assert code == 0
    assert out.exists()


def test_trace_flags(tmp_path):
    out = tmp_path / "trace.png"
    code = main(["trace", "--trace", str(FIXTURES / "trace.csv"),
                 "--output", str(out)])
    assert code == 0
    assert out.exists()


def test_spec_file_mode(tmp_path):
    out = tmp_path / "fig.png"
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({
        "bands_path": str(FIXTURES / "predictive_bands.csv"),
        "data_path": str(FIXTURES / "observed.csv"),
        "output_image_path": str(out),
        "title": "from spec",
    }))
    assert main(["predictive", "--spec", str(spec)]) == 0
    assert out.exists()


def test_schema_error_exit_code(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("day,q025,median,q975\n0,1,1,1\n")
    out = tmp_path / "fig.png"
    assert main(["predictive", "--bands", str(bad), "--output", str(out)]) == 2
    assert not out.exists()


def test_missing_required_flag():
    assert main(["predictive", "--output", "x.png"]) == 2


def test_unknown_spec_key(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"bands_path": "x.csv", "mystery": 1}))
    assert main(["predictive", "--spec", str(spec)]) == 2


def test_missing_fixture_file(tmp_path):
    out = tmp_path / "fig.png"
    assert main(["predictive", "--bands", str(tmp_path / "none.csv"),
                 "--output", str(out)]) == 2
