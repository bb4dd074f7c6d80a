"""Optional ``key = value`` config file.

Looked up as ``cgeckit.conf`` in $CGECKIT_CONFIG_DIR, else in
~/.config/cgeckit. Command-line flags win over file values.
"""

import configparser
import os
from pathlib import Path

from .core import CgecError

FILENAME = "cgeckit.conf"
ENV_VAR = "CGECKIT_CONFIG_DIR"

KEYS = {
    "alpha1": float,
    "alpha2": float,
    "beta": float,
    "threads": int,
    "lexicon": str,
    "dialect": str,
    "granularity": str,
}


class ConfigError(CgecError):
    kind = "config"


def config_path(env=None):
    env = os.environ if env is None else env
    base = env.get(ENV_VAR)
    if base:
        return Path(base) / FILENAME
    return Path.home() / ".config" / "cgeckit" / FILENAME


def parse_config(text, source="config"):
    cp = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    try:
        cp.read_string("[cgeckit]\n" + text, source=source)
    except configparser.Error as e:
        raise ConfigError(f"{source}: {e}") from None
    out = {}
    for key, val in cp["cgeckit"].items():
        if key not in KEYS:
            raise ConfigError(f"{source}: unknown key {key!r}")
        try:
            out[key] = KEYS[key](val)
        except ValueError:
            raise ConfigError(f"{source}: bad value {val!r} for {key}") from None
    return out


def load_config(path=None):
    path = Path(path) if path else config_path()
    if not path.is_file():
        return {}
    return parse_config(path.read_text(encoding="utf-8"), str(path))
