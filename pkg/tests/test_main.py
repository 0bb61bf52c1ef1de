import json
import os

import pytest

from artifacts import load_arrangement, save_arrangement, save_template
from main import build_parser, main
from models.arrangement import Arrangement, Certificate
from models.projective_space import enumerate_subspaces, span
from search_engine import spread_template
from utils.constants import EXIT_FAILURE, EXIT_INPUT_ERROR, EXIT_OK, NOT_HIGPIG, STRONG_SCAN


@pytest.fixture
def four_lines_file(data_dir):
    return os.path.join(data_dir, "pg3_q2_four_lines.json")


@pytest.fixture
def concurrent_file(tmp_path, pg33):
    centre = pg33.unit_point(0)
    arr = Arrangement(pg33, 1, [span([centre, pg33.unit_point(i)]) for i in (1, 2, 3)])
    path = str(tmp_path / "concurrent.json")
    save_arrangement(arr, path)
    return path


@pytest.fixture
def plane_points_file(tmp_path, pg22):
    path = str(tmp_path / "fano.json")
    save_arrangement(Arrangement(pg22, 0, list(enumerate_subspaces(pg22, 0))), path)
    return path


def output(capsys):
    return json.loads(capsys.readouterr().out)


def test_parser_defaults():
    args = build_parser().parse_args(["report"])
    assert args.command == "report"
    assert args.workers is None
    assert args.q_list is None
    assert not args.verbose


def test_workers_after_the_subcommand(four_lines_file):
    parser = build_parser()
    assert parser.parse_args(["verify", four_lines_file, "--workers", "2"]).workers == 2
    assert parser.parse_args(["--workers", "3", "verify", four_lines_file]).workers == 3
    assert parser.parse_args(["report", "--workers", "2"]).workers == 2
    assert parser.parse_args(["verify", four_lines_file]).workers is None


def test_verify_with_workers_option(four_lines_file, capsys):
    assert main(["verify", four_lines_file, "--workers", "1"]) == EXIT_OK
    assert output(capsys)["verdict"] == "HigPig"


def test_verify_shipped_file(four_lines_file, capsys):
    assert main(["verify", four_lines_file]) == EXIT_OK
    certificate = output(capsys)
    assert certificate["verdict"] == "HigPig"
    assert certificate["witness"] is None


def test_verify_writes_certificate(four_lines_file, tmp_path, capsys):
    out = str(tmp_path / "certified.json")
    assert main(["verify", four_lines_file, "--method", "strong", "--out", out]) == EXIT_OK
    assert load_arrangement(out).certificate.method == "StrongBlockingScan"


def test_verify_concurrent_lines(concurrent_file, capsys):
    assert main(["verify", concurrent_file]) == EXIT_FAILURE
    certificate = output(capsys)
    assert certificate["verdict"] == "NotHigPig"
    assert certificate["witness_kind"] == "transversal"


def test_verify_overrides_forged_certificate(tmp_path, pg33, capsys):
    centre = pg33.unit_point(0)
    arr = Arrangement(pg33, 1, [span([centre, pg33.unit_point(i)]) for i in (1, 2)])
    arr.certificate = Certificate(verdict="HigPig", method=STRONG_SCAN)
    path = str(tmp_path / "forged.json")
    save_arrangement(arr, path)
    assert main(["verify", path]) == EXIT_FAILURE
    assert output(capsys)["verdict"] == NOT_HIGPIG
    assert main(["resolve", path]) == EXIT_INPUT_ERROR


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"format": "hpforge/0"}), encoding="utf-8")
    assert main(["verify", str(bad)]) == EXIT_INPUT_ERROR
    assert main(["verify", str(tmp_path / "missing.json")]) == EXIT_INPUT_ERROR
    assert main(["frobnicate"]) == EXIT_INPUT_ERROR
    assert main(["construct", "pg3_four_lines"]) == EXIT_INPUT_ERROR


def test_construct_four_lines(tmp_path):
    out = str(tmp_path / "four.json")
    assert main(["construct", "pg3_four_lines", "--q", "2", "--out", out]) == EXIT_OK
    arr = load_arrangement(out)
    assert len(arr) == 4
    assert arr.certificate.is_higgledy_piggledy


def test_construct_tetrahedron(capsys):
    assert main(["construct", "tetrahedron", "--q", "3"]) == EXIT_OK
    assert len(output(capsys)["elements"]) == 6


def test_construct_subline_triples(capsys):
    assert main(["construct", "subline_triples", "--q", "3", "--m", "2"]) == EXIT_OK
    data = output(capsys)
    assert data["found"]
    assert len(data["sublines"]) == 3


def test_construct_failing_certification(monkeypatch, capsys):
    def not_higgledy_piggledy(arr, method="auto", workers=None):
        return Certificate(verdict=NOT_HIGPIG, method=STRONG_SCAN)

    monkeypatch.setattr("constructions.is_higgledy_piggledy", not_higgledy_piggledy)
    assert main(["construct", "pg3_four_lines", "--q", "2"]) == EXIT_FAILURE
    assert capsys.readouterr().out == ""


def test_construct_bad_q():
    assert main(["construct", "subline_triples", "--q", "2"]) == EXIT_INPUT_ERROR


def test_search_template(tmp_path, capsys):
    path = str(tmp_path / "template.json")
    save_template(spread_template(1, 1, 2, 4, budget=10, name="four_spread_lines"), path)
    out = str(tmp_path / "found.json")
    assert main(["search", path, "--seed", "5", "--out", out]) == EXIT_OK
    assert output(capsys)["found"]
    assert load_arrangement(out).provenance["seed"] == 5


def test_search_exhaustion(tmp_path, capsys):
    path = str(tmp_path / "template.json")
    save_template(spread_template(1, 1, 2, 2, budget=3, name="two_lines"), path)
    assert main(["search", path]) == EXIT_FAILURE
    assert output(capsys)["found"] is False


def test_codes_minimality(four_lines_file, tmp_path, capsys):
    out = str(tmp_path / "code.json")
    assert main(["codes", "minimality", "--input", four_lines_file, "--out", out]) == EXIT_OK
    assert output(capsys)["minimal"]
    assert os.path.exists(out)


def test_codes_covering_radius(plane_points_file, capsys):
    assert main(["codes", "covering-radius", "--input", plane_points_file]) == EXIT_OK
    assert output(capsys)["covering_radius"] == 1


def test_codes_saturating(plane_points_file, capsys):
    assert main(["codes", "saturating", "--input", plane_points_file, "--rho", "0"]) == EXIT_OK
    assert output(capsys)["saturating"]
    assert main(["codes", "saturating", "--input", plane_points_file]) == EXIT_OK
    assert output(capsys)["least_rho"] == 0


def test_codes_needs_input():
    assert main(["codes", "minimality"]) == EXIT_INPUT_ERROR


def test_codes_bounds(capsys):
    assert main(["codes", "bounds", "--q", "5"]) == EXIT_OK
    rows = output(capsys)["bounds"]
    values = {(r["quantity"], r["kind"]): r["value"] for r in rows}
    assert values[("m(5,q)", "construction")] == 35


def test_resolve_check(four_lines_file, tmp_path, capsys):
    out = str(tmp_path / "resolving.json")
    assert main(["resolve", four_lines_file, "--check", "--out", out]) == EXIT_OK
    data = output(capsys)
    assert data["candidate_resolving"]
    assert len(data["vertices"]) == 16
