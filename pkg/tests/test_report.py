import json
import os

import pytest

from components.report import (
    ReportContext,
    check_four_lines,
    check_lower_bounds,
    check_oracle_equivalence,
    run_checks,
)
from main import main
from utils.constants import EXIT_OK


def test_four_lines_check(tmp_path):
    ctx = ReportContext(str(tmp_path), workers=1)
    passed, detail = check_four_lines(2, ctx)
    assert passed
    assert detail == "coverage 12"
    assert os.path.exists(tmp_path / "q2" / "pg3_four_lines.json")
    assert check_lower_bounds(2, ctx)[0]


def test_lower_bound_check_alone(tmp_path):
    passed, detail = check_lower_bounds(7, ReportContext(str(tmp_path)))
    assert passed
    assert detail == "violations: none"


def test_oracle_check_at_two(tmp_path):
    passed, detail = check_oracle_equivalence(2, ReportContext(str(tmp_path), workers=1))
    assert passed
    assert detail.endswith("0 forward violations")


@pytest.mark.slow
def test_acceptance_at_two(tmp_path):
    results = run_checks([2], ReportContext(str(tmp_path), workers=1))
    failed = [(r["criterion"], r["detail"]) for r in results if not r["passed"]]
    assert not failed
    criteria = {r["criterion"] for r in results}
    assert {"covering_dictionary", "resolving", "oracle_equivalence", "eight_planes"} <= criteria


@pytest.mark.slow
def test_report_command(tmp_path, capsys):
    out_dir = str(tmp_path / "report")
    assert main(["report", "--q-list", "2", "--out-dir", out_dir]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["passed"]
    with open(os.path.join(out_dir, "results.json"), encoding="utf-8") as f:
        assert json.load(f)["passed"]
    assert os.path.exists(os.path.join(out_dir, "results.txt"))
