"""
Logger utility for ChoiceLab
"""

import logging
import os
import sys
from pathlib import Path
from typing import Optional


def app_dir() -> Path:
    """Application directory: CHOICELAB_HOME, else AppData on Windows, else ~/.ChoiceLab"""
    override = os.getenv('CHOICELAB_HOME')
    if override:
        return Path(override)
    if os.name == 'nt':
        return Path(os.getenv('APPDATA')) / 'ChoiceLab'
    return Path.home() / '.ChoiceLab'


def setup_logger(verbose: bool = False, log_dir: Optional[Path] = None):
    """
    Setup application logger with file handler

    Args:
        verbose: Show INFO messages on the console
        log_dir: Directory for choicelab.log (defaults to the application directory)

    Returns:
        The configured 'ChoiceLab' logger
    """
    log_dir = Path(log_dir) if log_dir else app_dir()
    log_dir.mkdir(parents=True, exist_ok=True)
    log_file = log_dir / 'choicelab.log'

    logger = logging.getLogger('ChoiceLab')
    logger.setLevel(logging.DEBUG)
    logger.handlers.clear()

    file_handler = logging.FileHandler(log_file, encoding='utf-8')
    file_handler.setLevel(logging.DEBUG)

    # stdout carries JSON documents
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.INFO if verbose else logging.WARNING)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    file_handler.setFormatter(formatter)
    console_handler.setFormatter(formatter)

    logger.addHandler(file_handler)
    logger.addHandler(console_handler)

    logger.debug(f"Logger initialized. Log file: {log_file}")
    return logger
