import json
import logging

import pytest

from core.instances import make_rng, random_family, random_poset, random_tree
from utils.json_io import coding_prefix, parse_family, parse_trees, write_jsonl
from utils.logger import app_dir, setup_logger
from utils.schemas import SCHEMAS, SchemaViolation, schema_for, validate_document
from utils.settings import DEFAULT_SETTINGS, apply_overrides, load_settings


def test_app_dir_follows_the_environment(app_home):
    assert app_dir() == app_home


def test_setup_logger_writes_the_log_file(tmp_path):
    logger = setup_logger(log_dir=tmp_path / "logs")
    logger.info("hello from the test")
    text = (tmp_path / "logs" / "choicelab.log").read_text(encoding="utf-8")
    assert "ChoiceLab - INFO - hello from the test" in text
    console = [h for h in logger.handlers if not isinstance(h, logging.FileHandler)]
    assert [h.level for h in console] == [logging.WARNING]
    assert len(setup_logger(verbose=True, log_dir=tmp_path).handlers) == 2


def test_settings_defaults_and_merge(app_home, logger):
    assert load_settings(logger) == DEFAULT_SETTINGS
    (app_home / "settings.json").write_text(
        json.dumps({"stages": 7, "nce": {"exact_limit": 12}}), encoding="utf-8")
    settings = load_settings(logger)
    assert settings["stages"] == 7
    assert settings["nce"] == {"exact_limit": 12, "backtrack_limit": 10000}
    assert DEFAULT_SETTINGS["nce"]["exact_limit"] == 22


def test_unreadable_settings_are_ignored(app_home, logger):
    (app_home / "settings.json").write_text("{not json", encoding="utf-8")
    assert load_settings(logger) == DEFAULT_SETTINGS


def test_overrides_skip_missing_flags(logger, app_home):
    settings = apply_overrides(load_settings(logger), horizon=9, stages=None, colour="blue")
    assert settings["horizon"] == 9
    assert settings["stages"] == DEFAULT_SETTINGS["stages"]
    assert "colour" not in settings


def test_every_command_has_a_schema():
    groups = {command.split(" ", 1)[0] for command in SCHEMAS}
    assert groups == {"family", "poset", "fcp", "closure", "nce", "construct", "verify"}
    with pytest.raises(SchemaViolation):
        schema_for("family shuffle")


def test_schema_errors_name_the_path():
    validate_document("family greedy", {"family": {"horizon": 4, "members": [[1]]}, "property": "D2"})
    with pytest.raises(SchemaViolation) as info:
        validate_document("closure cl", {"rules": [{"from": [0], "to": -1}], "X": []})
    assert "rules/0/to" in info.value.message
    with pytest.raises(SchemaViolation):
        validate_document("nce max", {"rules": [], "predicate": {"kind": "true"},
                                      "universe": 3, "A": [], "mode": "lucky"})
    with pytest.raises(SchemaViolation):
        validate_document("family encode-range", {"f": [1, 1], "count": 2})


def test_field_parsers(tmp_path):
    coded = {"f": [2], "count": 3, "horizon": 6}
    assert parse_family(coded)[2].as_set() == {1, 3, 4, 5}
    assert coding_prefix(coded) == [2]
    assert coding_prefix({"horizon": 2, "members": []}) is None
    trees = parse_trees({"depth": 1, "trees": [[], [[]]]})
    assert [t.has_full_depth_node() for t in trees] == [False, True]
    path = write_jsonl(["{}", "{}"], tmp_path / "deep" / "x.jsonl")
    assert path.read_text(encoding="utf-8") == "{}\n{}\n"


def test_generators_are_seeded():
    first, second = make_rng(3), make_rng(3)
    assert random_family(first, 5, 16) == random_family(second, 5, 16)
    assert random_poset(first, 6) == random_poset(second, 6)
    assert random_tree(first, 3, 2) == random_tree(second, 3, 2)
    assert len(random_family(make_rng(0), 4, 8, density=0.0)) == 4
    assert random_family(make_rng(0), 4, 8, density=0.0).is_nontrivial()
