"""
Settings - Default experiment settings and their overrides
"""

import copy
import json
from pathlib import Path
from typing import Optional

from utils.logger import app_dir

DEFAULT_SETTINGS = {
    'horizon': 64,
    'stages': 100,
    'steps': 20,
    'seed': 0,
    'jobs': 1,
    'adversary': {
        'follower_cap': None,
        'max_string_length': None,
        'requirements': None,
    },
    'nce': {
        'exact_limit': 22,
        'backtrack_limit': 10000,
    },
    'fcp': {
        'check_limit': 20,
    },
    'tilde': {
        'max_indices': 16,
    },
}

OVERRIDABLE = ('horizon', 'stages', 'steps', 'seed', 'jobs')


def _merge(base: dict, extra: dict) -> dict:
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        else:
            base[key] = value
    return base


def load_settings(logger, settings_dir: Optional[Path] = None) -> dict:
    """
    Defaults, deep-merged with settings.json from the application directory when present

    Args:
        logger: Application logger
        settings_dir: Directory holding settings.json

    Returns:
        A fresh settings dict
    """
    settings = copy.deepcopy(DEFAULT_SETTINGS)
    path = Path(settings_dir or app_dir()) / 'settings.json'
    if not path.exists():
        return settings
    try:
        with open(path, 'r', encoding='utf-8') as fh:
            _merge(settings, json.load(fh))
        logger.info(f"Loaded settings from {path}")
    except (OSError, json.JSONDecodeError) as e:
        logger.warning(f"Ignoring unreadable settings file {path}: {e}")
    return settings


def apply_overrides(settings: dict, **flags) -> dict:
    """Command-line flags win over the settings file; None means 'not given'"""
    for key in OVERRIDABLE:
        if flags.get(key) is not None:
            settings[key] = flags[key]
    return settings
