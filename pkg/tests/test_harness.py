import json
import random

import jsonschema
import pytest

from conftest import FIXTURES
from qde.cli import main
from qde.errors import CurveDataError
from qde.harness import CurveRecord, ValidationReport, parse_curves, validate
from qde.schemas import SCHEMAS


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def test_parse_single_row(tmp_path):
    path = tmp_path / "one.csv"
    path.write_text("label,rank,sha_order\n11a1,0,1\n")
    assert parse_curves(str(path)) == [CurveRecord("11a1", 0, 1)]


def test_parse_optional_columns(tmp_path):
    path = tmp_path / "full.csv"
    path.write_text(
        "label,rank,sha_order,torsion_order,conductor\nx1,0,1,5,11\nx2,1,4,,389\n"
    )
    records = parse_curves(str(path))
    assert records[0].torsion_order == 5 and records[0].conductor == 11
    assert records[1].torsion_order is None and records[1].conductor == 389


def test_parse_rejects_negative_rank_with_line_number(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("label,rank,sha_order\nok,0,1\nbad,-1,1\n")
    with pytest.raises(CurveDataError) as info:
        parse_curves(str(path))
    assert any("line 3" in p and "rank" in p for p in info.value.problems)


def test_parse_rejects_duplicates_and_bad_cells(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("label,rank,sha_order\na,0,1\na,1,4\nb,zero,1\nc,0\n")
    with pytest.raises(CurveDataError) as info:
        parse_curves(str(path))
    problems = "\n".join(info.value.problems)
    assert "line 3" in problems and "duplicate" in problems
    assert "line 4" in problems and "integer" in problems
    assert "line 5" in problems and "columns" in problems


def test_parse_rejects_unknown_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("name,rank,sha\nx,0,1\n")
    with pytest.raises(CurveDataError):
        parse_curves(str(path))


def test_parse_empty_file_warns(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("# nothing here yet\nlabel,rank,sha_order\n")
    with pytest.warns(UserWarning):
        assert parse_curves(str(path)) == []


def test_parse_skips_comment_lines(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("# provenance: hand-entered\nlabel,rank,sha_order\n# mid comment\nz,1,4\n")
    assert parse_curves(str(path)) == [CurveRecord("z", 1, 4)]


def test_parse_json_format(tmp_path):
    path = tmp_path / "rows.json"
    path.write_text('[{"label": "a", "rank": 0, "sha_order": 1}]')
    assert parse_curves(str(path), format="json") == [CurveRecord("a", 0, 1)]
    path.write_text('[{"label": "a", "rank": 0, "sha_order": 1, "extra": 7}]')
    with pytest.raises(CurveDataError):
        parse_curves(str(path), format="json")


def test_parse_bundled_fixtures_agree():
    csv_records = parse_curves(str(FIXTURES / "curves.csv"))
    json_records = parse_curves(str(FIXTURES / "curves.json"), format="json")
    assert csv_records == json_records
    assert len(csv_records) == 6


def test_curve_record_validation():
    with pytest.raises(ValueError):
        CurveRecord("", 0, 1)
    with pytest.raises(ValueError):
        CurveRecord("x", -1, 1)
    with pytest.raises(ValueError):
        CurveRecord("x", 0, 0)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def test_validate_marks_square_rank_identity():
    report = validate(
        [
            CurveRecord("r0-ok", 0, 1),
            CurveRecord("r1-ok", 1, 4),
            CurveRecord("r1-bad", 1, 1),
        ]
    )
    assert (report.total, report.consistent, report.violations) == (3, 2, 1)
    assert report.violation_rows == (("r1-bad", 1, 1, 4),)
    assert report.by_rank == ((0, 1, 1), (1, 2, 1))


def test_validate_is_order_independent():
    records = parse_curves(str(FIXTURES / "curves.csv"))
    shuffled = records[:]
    random.Random(7).shuffle(shuffled)
    assert validate(records) == validate(shuffled)


def test_validate_parallel_report_is_identical():
    records = parse_curves(str(FIXTURES / "curves.csv")) * 40
    # labels must stay unique for the report to be meaningful; relabel copies
    records = [
        CurveRecord(f"{r.label}#{i}", r.rank, r.sha_order, r.torsion_order, r.conductor)
        for i, r in enumerate(records)
    ]
    serial = validate(records, jobs=1)
    for jobs in (2, 3, 8):
        parallel = validate(records, jobs=jobs)
        assert parallel == serial
        assert json.dumps(parallel.to_json_dict()) == json.dumps(serial.to_json_dict())


def test_validate_aggregate_invariant_enforced():
    with pytest.raises(ValueError):
        ValidationReport(2, 2, 1, (), ())


# ---------------------------------------------------------------------------
# command-line interface
# ---------------------------------------------------------------------------


def test_cli_predict_json_exact(capsys):
    assert main(["predict", "--theta", "sqrt(10)", "--json"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == (
        '{"D":10,"f":1,"h":2,"rank":1,'
        '"sha":{"invariant_factors":[2,2],"order":4},"k0_rank":3}'
    )


def test_cli_cf_text(capsys):
    assert main(["cf", "--theta", "(1+sqrt(5))/2"]) == 0
    assert capsys.readouterr().out.strip() == "preperiod=[] period=[1]"


def test_cli_validate_fixture(capsys):
    assert main(["validate", "--input", str(FIXTURES / "curves.csv"), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["consistent"] + report["violations"] == report["total"]
    flagged = {row["label"] for row in report["violation_rows"]}
    assert "37a1" in flagged and "11a1" not in flagged


def test_cli_domain_errors_exit_1(capsys):
    assert main(["cf", "--theta", "(3+sqrt(9))/2"]) == 1
    assert "perfect square" in capsys.readouterr().err
    assert main(["validate", "--input", "/nonexistent.csv"]) == 1


def test_cli_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["cf"])  # missing --theta
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["classgroup"])  # neither --theta nor --D
    assert info.value.code == 2


def test_cli_max_disc_flag_and_env(capsys, monkeypatch):
    assert main(["classgroup", "--D", "10", "--max-disc", "30"]) == 1
    assert "30" in capsys.readouterr().err
    monkeypatch.setenv("QDE_MAX_DISC", "30")
    assert main(["classgroup", "--D", "10"]) == 1
    assert "desk-scale bound 30" in capsys.readouterr().err
    monkeypatch.setenv("QDE_MAX_DISC", "100")
    assert main(["classgroup", "--D", "10"]) == 0
    capsys.readouterr()


@pytest.mark.parametrize(
    "argv,schema",
    [
        (["cf", "--theta", "sqrt(19)", "--json"], "cf"),
        (["unit", "--D", "13", "--json"], "unit"),
        (["order", "--theta", "(3+sqrt(45))/6", "--json"], "order"),
        (["classgroup", "--D", "10", "--json"], "classgroup"),
        (["classgroup", "--theta", "sqrt(40)", "--json"], "classgroup"),
        (["companions", "--D", "10", "--json"], "companions"),
        (["k0", "--theta", "sqrt(10)", "--json"], "k0"),
        (["predict", "--theta", "(1+sqrt(5))/2", "--json"], "predict"),
        (["validate", "--input", str(FIXTURES / "curves.json"), "--format", "json",
          "--jobs", "2", "--json"], "validate"),
    ],
)
def test_cli_json_outputs_satisfy_published_schemas(capsys, argv, schema):
    assert main(argv) == 0
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, SCHEMAS[schema])


def test_cli_companions_round_trip_through_parser(capsys):
    assert main(["companions", "--D", "79", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    from qde.quadratic import parse_theta

    assert payload["count"] == 3
    for expr in payload["companions"]:
        theta = parse_theta(expr)
        assert str(theta) == expr
