"""
Configuration handling for hpforge
Loads hpforge_config.yml and applies the HPFORGE_WORKERS override
"""

import copy
import logging
import os
from functools import lru_cache

import yaml

from utils.constants import CONFIG_FILE, DEFAULT_CONFIG, WORKERS_ENV

logger = logging.getLogger(__name__)

CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), CONFIG_FILE)


def _merge(target, overrides):
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(target.get(key), dict):
            _merge(target[key], value)
        else:
            target[key] = value


def load_config(path=CONFIG_PATH):
    """Load configuration from the YAML file, falling back to built-in defaults

    Args:
        path (str): Path of the YAML file

    Returns:
        dict: Complete configuration
    """
    config = copy.deepcopy(DEFAULT_CONFIG)
    try:
        with open(path, 'r', encoding='utf-8') as file:
            loaded = yaml.safe_load(file) or {}
        _merge(config, loaded)
    except FileNotFoundError:
        logger.warning("Configuration file (%s) not found, using defaults", path)
    except yaml.YAMLError as e:
        logger.error("Could not parse %s: %s; using defaults", path, e)

    env_workers = os.environ.get(WORKERS_ENV)
    if env_workers:
        try:
            config['workers'] = int(env_workers)
        except ValueError:
            logger.warning("Ignoring %s=%r, not an integer", WORKERS_ENV, env_workers)
    return config


@lru_cache(maxsize=1)
def get_config():
    return load_config()


def resolve_workers(workers=None):
    """Worker count from an explicit value, else HPFORGE_WORKERS / config"""
    if workers is None:
        workers = get_config()['workers']
    return max(1, int(workers))


def budget(name):
    return get_config()['budgets'][name]
