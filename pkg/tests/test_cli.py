import json
from fractions import Fraction

import pytest

from wreathprob.cli import main
from wreathprob.groups import character_table_to_json, cyclic_group

LEFT_REGULAR = '{"kind":"example1","group":"cyclic:2"}'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_diagram_single_box(capsys):
    code, out, _ = run(capsys, "diagram", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["transition_measure"]["atoms"] == [-1, 1]
    assert [w["exact"] for w in doc["transition_measure"]["weights"]] == ["1/2", "1/2"]


def test_diagram_empty_and_hook(capsys):
    code, out, _ = run(capsys, "diagram", "")
    assert code == 0
    doc = json.loads(out)
    assert doc["transition_measure"]["atoms"] == [0]
    assert doc["p_tilde"]["2"]["exact"] == "0"

    code, out, _ = run(capsys, "diagram", "2,1")
    doc = json.loads(out)
    assert [c["exact"] for c in doc["free_cumulants"]][:3] == ["0", "3", "0"]


def test_diagram_csv_format(capsys):
    code, out, _ = run(capsys, "diagram", "2,1", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "# schema_version=1"
    assert lines[1] == "quantity,index,exact,float"
    assert "atom,-2,3/8,0.375" in lines


def test_diagram_malformed_literal(capsys):
    code, _, err = run(capsys, "diagram", "1,3")
    assert code == 2
    assert "usage error" in err


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 2


def test_group_builtin(capsys):
    code, out, _ = run(capsys, "group", "--group", "S3")
    assert code == 0
    doc = json.loads(out)
    assert doc["order"] == 6
    assert sorted(doc["dimensions"]) == [1, 1, 2]
    assert doc["valid"]


def test_group_corrupted_table(capsys, tmp_path):
    doc = character_table_to_json(cyclic_group(2))
    doc["character_table"]["irreps"][1]["values"][1] = 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "group", "--group", str(path))
    assert code == 1
    assert not json.loads(out)["valid"]


def test_family_report_with_measure(capsys):
    code, out, _ = run(capsys, "family", "--family", LEFT_REGULAR, "--q", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "example1"
    assert doc["num_slots"] == 2
    c_rows = {(s, i): v for s, i, v in doc["limits"]["c"]}
    assert c_rows[(0, 2)] == "1/2" and c_rows[(1, 2)] == "1/2"
    atoms = {
        tuple(tuple(l) for l in a["shapes"]): a["probability"]["exact"]
        for a in doc["measure"]["atoms"]
    }
    assert atoms[((1,), (1,))] == "1/2"
    assert atoms[((2,), ())] == "1/8"
    assert len(atoms) == 5


def test_family_measure_infeasible(capsys):
    code, _, err = run(capsys, "family", "--family", LEFT_REGULAR, "--q", "50")
    assert code == 3
    assert "infeasible" in err


def test_moments_csv(capsys):
    code, out, _ = run(
        capsys,
        "moments",
        "--family",
        LEFT_REGULAR,
        "--rows",
        "0:1",
        "--q-grid",
        "4,6,8",
        "--format",
        "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "q,exact,float"
    assert lines[2:] == ["4,2,2.0", "6,3,3.0", "8,4,4.0"]


def test_moments_requires_rows(capsys):
    code, _, err = run(capsys, "moments", "--family", LEFT_REGULAR, "--q", "4")
    assert code == 2
    assert "rows" in err


def test_cumulants_natural_and_free(capsys):
    code, out, _ = run(
        capsys,
        "cumulants",
        "--family",
        LEFT_REGULAR,
        "--rows",
        "0:2;0:2",
        "--q",
        "10",
        "--format",
        "csv",
    )
    assert code == 0
    assert out.strip().splitlines()[-1] == "10,45,45.0"

    code, out, _ = run(
        capsys,
        "cumulants",
        "--family",
        LEFT_REGULAR,
        "--rows",
        "0:2",
        "--kind",
        "free",
        "--q",
        "10",
        "--format",
        "csv",
    )
    assert code == 0
    assert out.strip().splitlines()[-1] == "10,5,5.0"


def test_limits_constant_mean(capsys):
    code, out, _ = run(
        capsys,
        "limits",
        "--family",
        LEFT_REGULAR,
        "--rows",
        "0:1",
        "--condition",
        "3",
        "--q-grid",
        "4,8,12",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] is True
    assert all(row["scaled"] == "1/2" for row in doc["rows"])


def test_limits_covariance_grid(capsys):
    code, out, _ = run(
        capsys,
        "limits",
        "--family",
        LEFT_REGULAR,
        "--rows",
        "0:2;0:2",
        "--condition",
        "3",
        "--q-grid",
        "10,20,30",
        "--format",
        "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    errors = [Fraction(line.split(",")[4]) for line in lines[2:]]
    assert errors == sorted(errors, reverse=True)
    assert lines[2].split(",")[2] == "9/20"


def test_limits_auto_limit_beyond_default_table_depth(capsys):
    # the order-8 free cumulant of the one-box measure is -5; a table
    # built only to the default depth used to predict 0 here
    one_box = '{"kind":"irreducible","group":"cyclic:2","weights":["1","0"]}'
    code, out, _ = run(
        capsys,
        "limits",
        "--family",
        one_box,
        "--rows",
        "0:8",
        "--condition",
        "4",
        "--q-grid",
        "6,8",
        "--format",
        "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[2].split(",")[3] == "-5"


def test_sample_prediction_beyond_default_table_depth(capsys):
    code, out, _ = run(
        capsys,
        "sample",
        "--family",
        LEFT_REGULAR,
        "--q",
        "10",
        "--n-samples",
        "4",
        "--seed",
        "1",
        "--stats",
        "R:0:9",
    )
    assert code == 0
    lines = out.splitlines()
    summary = json.loads("\n".join(line[2:] for line in lines[lines.index("# {") :]))
    assert summary["predicted_covariance"][0][0] == pytest.approx(8 * 0.5**8)


def test_limits_condition_one_rejected(capsys):
    code, _, err = run(
        capsys,
        "limits",
        "--family",
        LEFT_REGULAR,
        "--rows",
        "0:1",
        "--condition",
        "1",
        "--q-grid",
        "4,8",
    )
    assert code == 2


def test_infeasible_brute_family(capsys):
    tensor = json.dumps(
        {
            "kind": "tensor",
            "left": {"kind": "example1", "group": "cyclic:2", "multiplicities": [1, 1]},
            "right": {"kind": "example1", "group": "cyclic:2", "multiplicities": [1, 1]},
        }
    )
    code, _, err = run(
        capsys, "moments", "--family", tensor, "--rows", "0:1", "--q", "9"
    )
    assert code == 3
    assert "infeasible" in err


def test_sample_deterministic_outputs(tmp_path, capsys):
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    for out in (out_a, out_b):
        code = main(
            [
                "sample",
                "--family",
                LEFT_REGULAR,
                "--q",
                "30",
                "--n-samples",
                "60",
                "--seed",
                "5",
                "--stats",
                "R:0:3;R:1:2",
                "--out",
                str(out),
            ]
        )
        assert code == 0
    capsys.readouterr()
    assert out_a.read_bytes() == out_b.read_bytes()
    summary_a = json.loads((tmp_path / "a.csv.summary.json").read_text())
    summary_b = json.loads((tmp_path / "b.csv.summary.json").read_text())
    assert summary_a == summary_b
    assert summary_a["n_samples"] == 60
    assert summary_a["insufficient_data"] is True
    assert {e["name"] for e in summary_a["statistics"]} == {"R[0,3]", "R[1,2]"}
    assert "covariance_abs_error" in summary_a
    lines = out_a.read_text().strip().splitlines()
    assert lines[1] == "sample,statistic,raw,centered_scaled"
    assert len(lines) == 2 + 60 * 2


def test_sample_empty_batch(tmp_path, capsys):
    out = tmp_path / "empty.csv"
    code = main(
        [
            "sample",
            "--family",
            LEFT_REGULAR,
            "--q",
            "10",
            "--n-samples",
            "0",
            "--out",
            str(out),
        ]
    )
    capsys.readouterr()
    assert code == 0
    assert out.read_text().strip().splitlines() == [
        "# schema_version=1",
        "sample,statistic,raw,centered_scaled",
    ]
    summary = json.loads((tmp_path / "empty.csv.summary.json").read_text())
    assert summary["n_samples"] == 0
    assert summary["insufficient_data"] is True


def test_sample_rejects_bad_stats(capsys):
    base = ["sample", "--family", LEFT_REGULAR, "--q", "10", "--n-samples", "2"]
    assert main(base + ["--stats", "R:0:1"]) == 2
    assert main(base + ["--stats", "sigma:0:2"]) == 2
    assert main(["sample", "--family", LEFT_REGULAR, "--n-samples", "2"]) == 2
    capsys.readouterr()


def test_sample_non_samplable_family(capsys):
    fam = '{"kind":"irreducible","group":"cyclic:2","weights":["1/2","1/2"]}'
    code, _, err = run(capsys, "sample", "--family", fam, "--q", "10")
    assert code == 3


def test_verify_scopes_pass(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "structure-constants", "--bound", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and not doc["failures"]

    code, out, _ = run(capsys, "verify", "--scope", "lemma", "--bound", "2")
    assert code == 0
    assert json.loads(out)["passed"]

    code, out, _ = run(capsys, "verify", "--scope", "characters")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"]
    assert any(c["check"] == "wreath-orthogonality" for c in doc["checks"])


def test_verify_corrupted_table_fails(capsys, tmp_path):
    doc = character_table_to_json(cyclic_group(2))
    doc["character_table"]["irreps"][1]["values"][1] = 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(
        capsys, "verify", "--scope", "lemma", "--group", str(path), "--bound", "1"
    )
    assert code == 1
    report = json.loads(out)
    assert not report["passed"]
    assert report["failures"]


def test_config_supplies_and_flags_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "command": "moments",
                "family": json.loads(LEFT_REGULAR),
                "rows": "0:1",
                "q_grid": [4, 6],
                "format": "csv",
            }
        )
    )
    code, out, _ = run(capsys, "moments", "--config", str(cfg))
    assert code == 0
    assert out.strip().splitlines()[2:] == ["4,2,2.0", "6,3,3.0"]

    code, out, _ = run(capsys, "moments", "--config", str(cfg), "--q-grid", "8")
    assert code == 0
    assert out.strip().splitlines()[2:] == ["8,4,4.0"]


def test_config_validation(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"command": "moments", "familyy": "x"}))
    assert main(["moments", "--config", str(bad)]) == 2
    mismatched = tmp_path / "mismatch.json"
    mismatched.write_text(json.dumps({"command": "limits"}))
    assert main(["moments", "--config", str(mismatched)]) == 2
    capsys.readouterr()


def test_report_aggregates(capsys):
    code, out, _ = run(
        capsys, "report", "--family", LEFT_REGULAR, "--q-grid", "6,10,14"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["all_pass"] is True
    assert len(doc["reports"]) == 9
    assert doc["limits"]["cov"] is not None
