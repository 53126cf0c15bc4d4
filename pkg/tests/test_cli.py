import json

import pytest
from pytest import fixture

from main import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, main

CODING = {"f": [5, 3], "count": 6, "horizon": 12}
RULES = [{"from": [], "to": 1}, {"from": [1], "to": 2}, {"from": [2, 3], "to": 4}]


@fixture
def run(app_home, capsys):
    """Run one command on a document; returns (exit code, stdout document, last stderr line)"""
    counter = iter(range(1000))

    def invoke(command, doc=None, *flags):
        argv = command.split() + list(flags)
        if doc is not None:
            path = app_home / f"input-{next(counter)}.json"
            path.write_text(json.dumps(doc), encoding="utf-8")
            argv += ["-i", str(path)]
        code = main(argv)
        captured = capsys.readouterr()
        out = json.loads(captured.out) if captured.out.strip() else None
        err_lines = captured.err.strip().splitlines()
        err = json.loads(err_lines[-1]) if err_lines and err_lines[-1].startswith("{") else None
        return code, out, err

    return invoke


def test_greedy_and_its_verification(run):
    code, out, _ = run("family greedy", {"family": CODING, "property": "F", "start": 3})
    assert code == EXIT_OK
    assert out["indices"] == [3, 5] and out["exhausted"] is True
    assert out["artifact"]["command"] == "family greedy"

    code, checked, _ = run("verify oracle", out)
    assert code == EXIT_OK
    assert checked["command"] == "family greedy"
    assert checked["verified"] is True and checked["maximal"] is True
    assert checked["artifact"]["command"] == "verify oracle"


def test_tampered_artifact_fails_verification(run):
    _, out, _ = run("family greedy", {"family": CODING, "property": "F", "start": 3})
    out["indices"] = [3]
    code, _, err = run("verify oracle", out)
    assert code == EXIT_DOMAIN
    assert err["error"] == "OracleMismatch"


def test_schema_violation_is_a_usage_error(run):
    code, out, err = run("family greedy", {"family": CODING, "property": "X1"})
    assert code == EXIT_USAGE
    assert out is None
    assert err["error"] == "SchemaViolation"


def test_unreadable_input_is_a_usage_error(run, app_home):
    code, _, err = run("family greedy", None, "-i", str(app_home / "missing.json"))
    assert code == EXIT_USAGE and err["error"] == "SchemaViolation"


def test_domain_errors_exit_with_one(run):
    doc = {"family": {"f": [], "count": 3, "horizon": 8}, "subfamily": [0], "property": "F"}
    code, out, err = run("family decode-range", doc)
    assert code == EXIT_DOMAIN
    assert out is None
    assert err["error"] == "DegenerateMaximalFamily"


def test_members_past_the_horizon_are_rejected(run):
    doc = {"family": {"horizon": 4, "members": [[1, 3], [3, 7]]}, "property": "F"}
    code, out, err = run("family greedy", doc)
    assert code == EXIT_DOMAIN
    assert out is None
    assert err["error"] == "BadInput" and "[7]" in err["message"]


def test_decode_range(run):
    doc = {"family": CODING, "subfamily": [3, 5], "property": "F"}
    code, out, _ = run("family decode-range", doc)
    assert code == EXIT_OK
    assert out["decoded"] == [3, 5]
    code, checked, _ = run("verify oracle", out)
    assert code == EXIT_OK and checked["range_matches"] and checked["maximal"]


def test_schema_flag(run):
    code, out, _ = run("family greedy", None, "--schema")
    assert code == EXIT_OK
    assert out["required"] == ["family", "property"]


def test_unknown_command_exits_through_argparse(run):
    with pytest.raises(SystemExit) as info:
        run("family nope")
    assert info.value.code == 2


def test_tree_pipeline(run):
    trees = {"depth": 2, "trees": [[], [[[], []], [[], []]]]}
    code, enc, _ = run("nce tree-encode", trees)
    assert code == EXIT_OK
    max_doc = {key: enc[key] for key in ("rules", "predicate", "universe", "A")}
    code, extension, _ = run("nce max", {**max_doc, "mode": "exact"})
    assert code == EXIT_OK
    code, paths, _ = run("nce decode-paths", {**trees, "B": extension["extension"]})
    assert code == EXIT_OK
    assert paths["paths"] == [1]


def test_ce_max_round_trip(run):
    doc = {"rules": RULES, "predicate": {"kind": "avoid", "set": [4]},
           "universe": 6, "A": list(range(6)), "C": [1, 2]}
    code, out, _ = run("closure ce-max", doc)
    assert code == EXIT_OK
    assert out["extension"] == [0, 1, 2, 5]
    code, checked, _ = run("verify oracle", out)
    assert code == EXIT_OK and checked["maximal"] is True


def test_unclosed_seed_is_a_domain_error(run):
    doc = {"rules": RULES, "predicate": {"kind": "true"}, "universe": 6, "A": list(range(6))}
    code, _, err = run("closure ce-max", doc)
    assert code == EXIT_DOMAIN and err["error"] == "BadSeed"


def test_transcript_flag_writes_jsonl(run, app_home):
    path = app_home / "runs" / "permit.jsonl"
    doc = {"family": {"horizon": 4, "members": [[0, 1], [1], [2], [1, 2]]}}
    code, out, _ = run("construct permit", doc, "--stages", "20", "--transcript", str(path))
    assert code == EXIT_OK
    assert out["violations"] == []
    events = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
    assert events
    assert all("event" in e and "stage" in e for e in events)


def test_settings_file_and_flags(run, app_home):
    (app_home / "settings.json").write_text(json.dumps({"horizon": 10}), encoding="utf-8")
    _, out, _ = run("family encode-range", {"f": [1], "count": 3})
    assert out["family"]["horizon"] == 10
    assert out["artifact"]["options"]["horizon"] == 10
    _, out, _ = run("family encode-range", {"f": [1], "count": 3}, "--horizon", "12")
    assert out["family"]["horizon"] == 12


def test_tilde_verification_recomputes_the_transform(run):
    doc = {"family": {"horizon": 5, "members": [[1, 2], [1, 3], [1, 4]]}, "n": 2, "stages": 3}
    code, out, _ = run("family tilde", doc)
    assert code == EXIT_OK
    assert out["family"] == {"horizon": 6, "members": [[0, 1], [1, 2], [1, 4]]}

    code, checked, _ = run("verify oracle", out)
    assert code == EXIT_OK and checked["recomputed"] is True

    out["family"]["members"][2] = [4]
    code, _, err = run("verify oracle", out)
    assert code == EXIT_DOMAIN
    assert err["error"] == "OracleMismatch" and "recomputed" in err["message"]


def test_batch_verification(run):
    _, greedy, _ = run("family greedy", {"family": CODING, "property": "F", "start": 3})
    _, closure, _ = run("closure cl", {"rules": RULES, "X": [3]})
    code, out, _ = run("verify oracle", {"artifacts": [greedy, closure]}, "--jobs", "2")
    assert code == EXIT_OK
    assert out["verified"] is True
    assert [r["command"] for r in out["results"]] == ["family greedy", "closure cl"]
    assert out["summary"]["done"] == 2


def test_batch_with_a_failure(run):
    _, greedy, _ = run("family greedy", {"family": CODING, "property": "F", "start": 3})
    broken = json.loads(json.dumps(greedy))
    broken["indices"] = [3]
    code, out, _ = run("verify oracle", {"artifacts": [greedy, broken]})
    assert code == EXIT_DOMAIN
    assert [r["verified"] for r in out["results"]] == [True, False]
    assert "OracleMismatch" in out["results"][1]["message"]


def test_log_file_is_written(run, app_home):
    run("family greedy", {"family": CODING, "property": "F", "start": 3})
    assert "Running family greedy" in (app_home / "choicelab.log").read_text(encoding="utf-8")
