import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest


@pytest.fixture(scope="module")
def schema():
    text = resources.files("msw").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


def cli(args):
    proc = subprocess.run([sys.executable, "-m", "msw.cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode in (0, 1, 2), proc.stderr
    return json.loads(proc.stdout)


def test_reports_validate_against_schema(schema, tmp_path):
    w3 = tmp_path / "w3.json"
    subprocess.run([sys.executable, "-m", "msw.cli", "construct", "wedge",
                    "--n", "3", "--p", "3", "-o", str(w3)], check=True)
    reports = [
        cli(["props", str(w3)]),
        cli(["primitivity", str(w3)]),
        cli(["dual", str(w3)]),
        cli(["reduce", str(w3)]),
        cli(["recognize", "wedge", str(w3)]),
        cli(["scan", "--n", "2", "--p", "2", "--dim", "1", "--predicate", "nilpotent"]),
        cli(["theorem", "atkinson", str(w3)]),
        cli(["probe", "--spec", "implications", "--seed", "0", "--trials", "5"]),
    ]
    for report in reports:
        jsonschema.validate(report, schema)
