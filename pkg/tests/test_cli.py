import json

import pytest

from satake.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_tensor_golden_dual_sl2(capsys):
    code, out, _ = run(capsys, "tensor", "--datum", "PGL2", "1", "1")
    assert code == 0
    assert out == '{"0":1,"2":1}\n'


def test_tensor_dual_pgl2(capsys):
    code, out, _ = run(capsys, "tensor", "--datum", "SL2", "1", "1")
    assert code == 0
    assert out == '{"0":1,"1":1,"2":1}\n'


def test_tensor_rank2(capsys):
    code, out, _ = run(capsys, "tensor", "--datum", "SL3", "1,0", "0,1")
    assert code == 0
    assert json.loads(out) == {"0,0": 1, "1,1": 1}


def test_weights_table(capsys):
    code, out, _ = run(capsys, "weights", "--datum", "PGL2", "2")
    assert code == 0
    assert json.loads(out) == {"-2": 1, "0": 1, "2": 1}


def test_predict_golden(capsys):
    code, out, _ = run(capsys, "predict", "--datum", "PGL2", "2", "0", "2")
    assert code == 0
    assert json.loads(out) == {"vanishes": False, "k": 2, "dim": 1, "frob": 2}


def test_predict_rejects_bad_hypothesis(capsys):
    code, _, err = run(capsys, "predict", "--datum", "PGL2", "2", "1", "-2")
    assert code == 2
    assert "not dominant" in err


def test_satake_golden(capsys):
    code, out, _ = run(capsys, "satake", "--datum", "PGL2", "2")
    assert code == 0
    assert json.loads(out) == {
        "basis": "C",
        "terms": [
            {"coeff": {"v": {"-2": 1}}, "coweight": [0]},
            {"coeff": {"v": {"-2": 1}}, "coweight": [2]},
        ],
    }


def test_satake_pretty_mentions_convention(capsys):
    code, out, _ = run(capsys, "satake", "--datum", "PGL2", "2", "--format", "pretty")
    assert code == 0
    assert "(q = v^2)" in out


def test_hecke_mul(capsys):
    code, out, _ = run(capsys, "hecke-mul", "--datum", "SL3", "1,0", "0,1")
    assert code == 0
    data = json.loads(out)
    assert data["basis"] == "A"
    assert [term["coweight"] for term in data["terms"]] == [[0, 0], [1, 1]]


def test_strata(capsys):
    code, out, _ = run(capsys, "strata", "--datum", "SL3", "1")
    assert code == 0
    assert json.loads(out) == [
        {"codim": 0, "gamma": [0, 0]},
        {"codim": 2, "gamma": [-2, 1]},
        {"codim": 2, "gamma": [1, -2]},
    ]


def test_whittaker_eval_csv(capsys):
    code, out, _ = run(capsys, "whittaker-eval", "--datum", "PGL2", "--gamma", "2/1", "--cutoff", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "lambda,numerator,denominator,v_power"
    assert lines[1] == "0,1,1,0"
    assert lines[2] == "1,5,2,-1"
    assert lines[3] == "2,21,4,-2"


def test_whittaker_eval_rank2_quotes_coordinates(capsys):
    code, out, _ = run(
        capsys, "whittaker-eval", "--datum", "SL3", "--gamma", "2/1,3/1", "--cutoff", "2"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == '"0,0",1,1,0'
    # trace of the dual fundamental at (2,3): 3 + 2/3 + 1/2 = 25/6
    assert '"1,0",25,6,-2' in lines


def test_whittaker_eval_with_q_value(capsys):
    code, out, _ = run(
        capsys, "whittaker-eval", "--datum", "PGL2", "--gamma", "2/1", "--cutoff", "2", "--q", "9"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "0,1,1,0"
    assert lines[2] == "1,5,6,0"  # (2 + 1/2) / 3
    assert lines[3] == "2,7,12,0"  # (21/4) / 9


def test_whittaker_eval_rejects_non_square_q(capsys):
    code, _, err = run(capsys, "whittaker-eval", "--datum", "PGL2", "--gamma", "2", "--q", "3")
    assert code == 2
    assert "square" in err


def test_verify_eq2_pass(capsys):
    code, out, _ = run(capsys, "verify-eq2", "--datum", "PGL2", "2", "3")
    assert code == 0
    assert out == "PASS 18/18\n"


def test_verify_eq2_json_report(capsys):
    code, out, _ = run(capsys, "verify-eq2", "--datum", "PGL2", "1", "3", "--format", "json")
    assert code == 0
    records = json.loads(out)
    assert all(record["pass"] for record in records)
    assert records[0].keys() == {"lambda", "mu", "nu", "q", "lhs", "rhs", "pass"}


def test_verify_eq2_rejects_composite_field_size(capsys):
    code, _, err = run(capsys, "verify-eq2", "--datum", "PGL2", "2", "4")
    assert code == 2
    assert "prime" in err


def test_verify_eq2_rejects_wrong_datum(capsys):
    code, _, err = run(capsys, "verify-eq2", "--datum", "SL3", "2", "3")
    assert code == 2


def test_verify_cs_pass(capsys):
    code, out, _ = run(capsys, "verify-cs", "--datum", "PGL2", "6", "--gammas", "2")
    assert code == 0
    assert "basis-compatibility: PASS" in out
    assert "module-axiom: PASS" in out
    assert "eigenfunction: PASS" in out


def test_verify_cs_json(capsys):
    code, out, _ = run(capsys, "verify-cs", "--datum", "SL3", "4", "--gammas", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True


def test_unknown_datum_is_usage_error(capsys):
    code, _, err = run(capsys, "tensor", "--datum", "NOPE", "1", "1")
    assert code == 2
    assert "unknown datum" in err


def test_unknown_subcommand_is_usage_error(capsys):
    code = main(["frobnicate"])
    capsys.readouterr()
    assert code == 2


def test_coweight_length_mismatch(capsys):
    code, _, err = run(capsys, "tensor", "--datum", "SL3", "1", "1")
    assert code == 2
    assert "coordinates" in err


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "satake", "--datum", "SL3", "2,1")
    _, second, _ = run(capsys, "satake", "--datum", "SL3", "2,1")
    assert first == second
    _, third, _ = run(capsys, "verify-eq2", "--datum", "PGL2", "3", "3", "5", "--format", "json")
    _, fourth, _ = run(capsys, "verify-eq2", "--datum", "PGL2", "3", "3", "5", "--format", "json")
    assert third == fourth


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "result.json"
    code, out, _ = run(capsys, "tensor", "--datum", "PGL2", "1", "1", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text() == '{"0":1,"2":1}\n'


def test_explicit_datum_file(tmp_path, capsys):
    datum_file = tmp_path / "datum.json"
    datum_file.write_text(json.dumps({"cartan": [[2]], "coroots": [[2]], "roots": [[1]]}))
    code, out, _ = run(capsys, "tensor", "--datum", str(datum_file), "1", "1")
    assert code == 0
    assert out == '{"0":1,"2":1}\n'


def test_jobs_flag_runs_parallel_battery(capsys):
    code, out, _ = run(capsys, "verify-eq2", "--datum", "PGL2", "2", "3", "--jobs", "2")
    assert code == 0
    assert out.startswith("PASS")


def test_internal_invariant_violation_is_exit_3(capsys, monkeypatch):
    from satake import rep_ring

    def broken(self, lam, mu):
        raise AssertionError("negative tensor multiplicity")

    monkeypatch.setattr(rep_ring.RepRing, "tensor_decompose", broken)
    code, _, err = run(capsys, "tensor", "--datum", "PGL2", "1", "1")
    assert code == 3
    assert "internal invariant" in err
