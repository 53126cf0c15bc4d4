import logging

from pytest import fixture

from core.families import range_coding_family


@fixture
def logger():
    return logging.getLogger("ChoiceLab.test")


@fixture
def app_home(tmp_path, monkeypatch):
    monkeypatch.setenv("CHOICELAB_HOME", str(tmp_path))
    return tmp_path


@fixture
def coding_family():
    """f = [5, 3] over six members, horizon 12"""
    return range_coding_family([5, 3], 6, 12)
