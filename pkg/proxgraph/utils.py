"""
Utility functions for proxgraph: logging, configuration and rational codecs.
"""

import copy
import logging
import math
import os
import re
from fractions import Fraction

import yaml

from .errors import ParseError

LOGGER_NAME = 'proxgraph'

DEFAULT_CONFIG = {
    'project': {'name': 'proxgraph', 'version': '1.0.0'},
    'paths': {
        'output_dir': 'output',
        'logs_dir': 'output/logs',
        'fixtures_dir': 'fixtures',
        'sweep_config': 'config/sweep_config.yaml',
    },
    'logging': {
        'level': 'INFO',
        'format': "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        'file': 'proxgraph.log',
        'console': True,
    },
    'isomorphism': {'max_vertices': 12},
    'oracle': {'n_jobs': 1, 'chunk_size': 4096},
    'sweep': {'n_jobs': 1, 'seed': 20240101, 'max_part_size': 3, 'write_csv': False, 'progress': False},
}

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')


def setup_logging(log_dir=None, level='INFO', format_str=None, file_name='proxgraph.log', console=True):
    """
    Setup logging configuration for proxgraph.

    Args:
        log_dir (str): Directory to store log files; None disables the file handler
        level (str): Logging level (DEBUG, INFO, WARNING, ERROR)
        format_str (str): Log format string
        file_name (str): Name of the log file
        console (bool): Whether to output to the console (standard error)

    Returns:
        logging.Logger: Configured logger instance
    """
    if format_str is None:
        format_str = DEFAULT_CONFIG['logging']['format']

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(getattr(logging, level.upper()))
    logger.handlers.clear()
    formatter = logging.Formatter(format_str)

    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(os.path.join(log_dir, file_name))
        file_handler.setLevel(getattr(logging, level.upper()))
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    if console:
        # StreamHandler defaults to stderr; stdout is reserved for JSON output.
        console_handler = logging.StreamHandler()
        console_handler.setLevel(getattr(logging, level.upper()))
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    return logger


def validate_config(config):
    """Validate the proxgraph configuration."""
    required_sections = ['project', 'paths', 'logging']
    for section in required_sections:
        if section not in config:
            raise ValueError(f"Missing required configuration section: {section}")
    paths = config['paths']
    for path_key in ['output_dir', 'logs_dir']:
        if path_key not in paths:
            raise ValueError(f"Missing required path configuration: {path_key}")
    if 'level' in config.get('logging', {}):
        level = config['logging']['level'].upper()
        if level not in ['DEBUG', 'INFO', 'WARNING', 'ERROR']:
            raise ValueError(f"Invalid logging level: {level}")
    max_vertices = config.get('isomorphism', {}).get('max_vertices', 12)
    if not isinstance(max_vertices, int) or max_vertices < 1:
        raise ValueError(f"Invalid isomorphism.max_vertices: {max_vertices}")


def load_yaml_config(config_path):
    """Load YAML configuration file."""
    try:
        with open(config_path, 'r') as f:
            return yaml.safe_load(f) or {}
    except Exception as e:
        raise ValueError(f"Error loading configuration file {config_path}: {e}")


def merge_config(overrides, base=None):
    """Deep-merge ``overrides`` into a copy of ``base`` (DEFAULT_CONFIG by default)."""
    merged = copy.deepcopy(DEFAULT_CONFIG if base is None else base)
    for key, value in (overrides or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(value, merged[key])
        else:
            merged[key] = value
    return merged


def create_directories(directory_paths):
    """Create directories if they don't exist."""
    for path in directory_paths:
        os.makedirs(path, exist_ok=True)


def get_file_list(directory, file_patterns=None):
    """Get list of files from directory matching patterns."""
    if not os.path.exists(directory):
        return []
    files = []
    for file in os.listdir(directory):
        file_path = os.path.join(directory, file)
        if os.path.isfile(file_path):
            if file_patterns is None or any(file.endswith(p) for p in file_patterns):
                files.append(file_path)
    return sorted(files)


def parse_rational(text):
    """
    Parse an exact rational from an integer literal or a ``p/q`` string.

    Unnormalized fractions such as ``"4/6"`` are accepted and reduced.

    Raises:
        ParseError: if the text is not an integer or ``p/q`` with q > 0
    """
    if isinstance(text, bool):
        raise ParseError(f"Not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ParseError(f"Rationals must be strings, got {type(text).__name__}: {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ParseError(f"Not a rational: {text!r}")
    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
        raise ParseError(f"Zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value):
    """Render a rational as ``"n"`` or ``"p/q"`` in lowest terms."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def common_denominator(values):
    """Least common multiple of the denominators of ``values``."""
    return math.lcm(*(Fraction(v).denominator for v in values)) if values else 1
