import json
import subprocess
import sys

from recoverrep.cli import COMMANDS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip().startswith("{") else out), err


def test_recover_sym_example(capsys):
    code, rep, _ = run(capsys, "recover-sym", "--k", "2", "--n", "2", "--weights", "1 2\\n1 0\\n1 -2")
    assert code == 0
    coords = sorted(w["coords"][0] for w in rep["result"]["recovered"]["weights"])
    assert coords == [-1, 1]
    assert rep["checks"] and all(c["passed"] for c in rep["checks"])
    assert rep["config"]["params"]["k"] == 2


def test_recover_tensor(capsys):
    code, rep, _ = run(capsys, "recover-tensor", "--k", "2", "--weights", "1 2\n2 0\n1 -2")
    assert code == 0 and rep["result"]["recovered_text"] == "1 1\n1 -1"


def test_heisenberg_example(capsys):
    code, rep, _ = run(capsys, "heisenberg", "--n", "3", "--a", "1", "--b", "2")
    res = rep["result"]
    assert code == 0
    assert res["kth_power_equal"] and res["k"] == 3 and not res["kth_power_equal_k1"]
    assert res["twist_search"] is None and res["linear_characters"] == 9
    assert res["multiplicity_one"] and res["fixed_sets_equal"]
    assert res["order"] == 27 and res["classes"] == 11


def test_density_example(capsys):
    code, rep, _ = run(capsys, "density", "--group", "sym:3", "--g0", "alt", "--rep1", "std", "--rep2", "triv+sign")
    res = rep["result"]
    assert code == 0
    assert res["lambda"] == "1/2" and res["agreement_density"] == "2/3"
    assert res["mean_sq_char_diff"] == "3" and res["upper_bound"] == "8" and res["upper_ok"]


def test_density_irreducible_pair(capsys):
    code, rep, _ = run(capsys, "density", "--group", "heisenberg:3", "--g0", "center", "--rep1", "heis:1",
                       "--rep2", "heis:2", "--samples", "0")
    assert code == 0 and rep["result"]["lower_ok"] is True and rep["result"]["mean_sq_char_diff"] == "2"
    code, rep, _ = run(capsys, "density", "--group", "quaternion", "--g0", "trivial", "--rep1", "irr:1",
                       "--rep2", "irr:2", "--samples", "0")
    assert code == 0 and rep["result"]["lower_bound_applies"]


def test_reports_are_byte_identical(capsys):
    argv = ["density", "--group", "dihedral:4", "--g0", "center", "--rep1", "lin:1+lin:2", "--rep2", "irr:4",
            "--seed", "7", "--samples", "5000"]
    main(argv)
    a = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == a
    assert json.loads(a)["wall_time_ms"] is None


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("RECOVERREP_SEED", "11")
    _, rep, _ = run(capsys, "density", "--group", "sym:3", "--g0", "alt", "--rep1", "std", "--rep2", "std")
    assert rep["config"]["seed"] == 11
    _, rep, _ = run(capsys, "density", "--group", "sym:3", "--g0", "alt", "--rep1", "std", "--rep2", "std",
                    "--seed", "4")
    assert rep["config"]["seed"] == 4
    monkeypatch.setenv("RECOVERREP_SEED", "x")
    code, _, err = run(capsys, "heisenberg")
    assert code == 3 and "RECOVERREP_SEED" in err


def test_domain_errors_carry_their_name(capsys):
    cases = [
        (["recover-sym", "--k", "2", "--weights", "1 3\n1 1"], "NotASymPower"),
        (["recover-sym", "--k", "2", "--n", "2", "--weights", "1 3\n1 1\n1 0"], "NotDivisible"),
        (["recover-tensor", "--k", "2", "--weights", "1 1\n1 0"], "NotATensorPower"),
        (["heisenberg", "--n", "4"], "BadParameters"),
        (["clifford", "--group", "sym:3", "--rep", "std", "--normal", "0,1"], "NotNormal"),
        (["cocycle", "--group", "heisenberg:3", "--rep1", "heis:1", "--rep2", "heis:2", "--normal", "gen:A,C"],
         "NotEqualOnSubgroup"),
        (["lattice-lift", "--restriction", "[[1]]", "--extension", "[[2]]"], "NotFreeQuotient"),
        (["twist-search", "--group", "sym:3", "--rep1", "std", "--rep2", "triv"], "DimMismatch"),
        (["ext-search", "--weights", "1 1\n1 -1", "--k", "3"], "KTooLarge"),
        (["twist-search", "--group", "sym:7", "--rep1", "triv", "--rep2", "triv"], "GroupTooLarge"),
    ]
    for argv, name in cases:
        code, rep, _ = run(capsys, *argv)
        assert code == 2, argv
        assert rep["error"]["name"] == name
        assert rep["checks"] and not rep["checks"][0]["passed"]


def test_bad_input_exit_3(capsys):
    for argv in (
        ["recover-sym", "--k", "2", "--weights", "1 x"],
        ["recover-sym", "--weights", "1 2"],
        ["recover-sym", "--k", "2", "--weights", "1 2", "--bogus", "1"],
        ["nonsense"],
        ["density", "--group", "sym:3", "--g0", "0,1,2", "--rep1", "std", "--rep2", "std"],
        ["twist-search", "--group", "sym:3", "--rep1", "wat", "--rep2", "std"],
        ["lattice-saturate", "--basis", "[[1, 2"],
        ["twist-search", "--group", "nosuch:3", "--rep1", "triv", "--rep2", "triv"],
    ):
        code, out, err = run(capsys, *argv)
        assert code == 3, argv
        assert out == "" and err.count("\n") == 1 and err.startswith("recoverrep: error:")


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"group": "sym:3", "g0": "alt", "rep1": "std", "rep2": "triv+sign", "seed": 3,
                               "samples": 100}))
    code, rep, _ = run(capsys, "density", "--config", str(cfg))
    assert code == 0 and rep["config"]["seed"] == 3 and rep["config"]["params"]["samples"] == 100
    code, rep, _ = run(capsys, "density", "--config", str(cfg), "--samples", "50")
    assert rep["config"]["params"]["samples"] == 50
    cfg.write_text(json.dumps({"group": "sym:3", "colour": "red"}))
    code, _, err = run(capsys, "density", "--config", str(cfg))
    assert code == 3 and "colour" in err


def test_group_and_rep_files(tmp_path, capsys):
    from recoverrep.finchar.groups import cyclic_group

    g = tmp_path / "c3.json"
    g.write_text(json.dumps(cyclic_group(3).to_json()))
    r = tmp_path / "rep.json"
    r.write_text(json.dumps({"conductor": 3, "generators": [[["z^1"]]]}))
    code, rep, _ = run(capsys, "twist-search", "--group", f"@{g}", "--rep1", "triv", "--rep2", f"@{r}")
    assert code == 0 and rep["result"]["witness"] is not None
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"conductor": 3, "generators": [[["z^1", "0"]]]}))
    code, _, _ = run(capsys, "twist-search", "--group", f"@{g}", "--rep1", "triv", "--rep2", f"@{bad}")
    assert code == 3


def test_lattice_commands(capsys):
    code, rep, _ = run(capsys, "lattice-saturate", "--basis", '[["2","4"]]')
    assert code == 0 and rep["result"]["saturation"]["basis"] == [["1", "2"]] and rep["result"]["index"] == "2"
    code, rep, _ = run(capsys, "lattice-saturate", "--basis", '{"ambient_rank": 2, "basis": [["2","0"],["0","3"]]}')
    assert rep["result"]["saturation"]["basis"] == [["1", "0"], ["0", "1"]]
    code, rep, _ = run(capsys, "lattice-lift", "--restriction", "[[1, 0]]",
                       "--extension", "[[1, 0], [0, 1], [0, 0]]", "--center", "[[5]]")
    assert code == 0 and rep["result"]["lift"]["matrix"] == [["1", "0", "5"]]


def test_liealg_commands(capsys):
    code, rep, _ = run(capsys, "factorize", "--algebra", "C2", "--bound", "2")
    assert code == 0 and rep["result"]["counterexamples"] == []
    code, rep, _ = run(capsys, "adjoint-fibre", "--algebra", "C2", "--hw", "1,0", "--bound", "2")
    assert code == 0 and rep["result"]["fibre"] == [[1, 0]]
    code, rep, _ = run(capsys, "adjoint-fibre", "--product-example")
    assert code == 0 and rep["result"]["ad_equal"]
    code, rep, _ = run(capsys, "ext-search", "--algebra", "A2", "--bound", "2", "--k", "3")
    assert [c["members"] for c in rep["result"]["collisions"]] == [[[0, 1], [1, 0]], [[0, 2], [2, 0]]]


def test_clifford_asai_cocycle(capsys):
    code, rep, _ = run(capsys, "clifford", "--group", "heisenberg:3", "--rep", "heis:1", "--normal", "gen:A,C")
    assert code == 0 and rep["result"]["multiplicity_one"]
    code, rep, _ = run(capsys, "asai", "--group", "heisenberg:3", "--normal", "gen:A,C", "--rep", "lin:5",
                       "--seed", "2")
    assert code == 0 and rep["result"]["index"] == 3
    code, rep, _ = run(capsys, "asai", "--group", "sym:3", "--normal", "alt", "--rep", "lin:1", "--lifts", "0")
    assert code == 3
    code, rep, _ = run(capsys, "cocycle", "--group", "heisenberg:3", "--rep1", "heis:1", "--rep2", "heis:1",
                       "--rep2-diag", "1,2,3", "--normal", "gen:A,C")
    assert code == 0 and rep["result"]["all_diagonal"] and not rep["result"]["all_scalar"]


def test_selftest_filter_and_negative_control(capsys):
    code, rep, _ = run(capsys, "selftest", "--filter", "weights")
    assert code == 0 and [c["number"] for c in rep["result"]["criteria"]] == [1, 4]
    code, rep, _ = run(capsys, "selftest", "--filter", "lattice", "--corrupt", "lattice")
    assert code == 1
    assert rep["checks"] == [{"name": "9:lattice-suite", "passed": False, "details": None}]


def test_text_format_and_output_file(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert main(["heisenberg", "--format", "text", "--output", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("command: heisenberg") and "[PASS] irreducible" in text
    assert capsys.readouterr().out == ""


def test_command_set():
    assert set(COMMANDS) == {
        "recover-sym", "recover-tensor", "ext-search", "factorize", "adjoint-fibre", "twist-search", "heisenberg",
        "clifford", "asai", "cocycle", "density", "lattice-saturate", "lattice-lift", "selftest",
    }


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "recoverrep", "heisenberg", "--n", "3"], capture_output=True,
                          text=True, timeout=120)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["kth_power_equal"]
