"""JSON configuration ingestion for the CLI and the verification suite.

Braid-family config::

    {"N": 4, "mode": "real" | "unitary",
     "parameters": [{"i": 1, "j": 2, "epsilon": "+", "value": 0.7}, ...],
     "symmetry_overrides": [{"i": 1, "j": 3, "epsilon": "+", "value": 1.0}]}

Parameter keys are restricted to canonical representatives (i, j up to
ceil(N/2)); values are numbers or exact-rational strings like "1/3".
``symmetry_overrides`` is optional and patches raw grid entries *after*
mirror-symmetry expansion; it exists to express deliberate constraint
violations for negative-control runs and voids all symmetry guarantees.

Reference-family config::

    {"reference": true, "n": 2}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

from .braid import ParameterSet, make_parameters
from .errors import ConfigError


@dataclass(frozen=True)
class ReferenceConfig:
    n: int


Config = Union[ParameterSet, ReferenceConfig]


def parse_config(obj: object) -> Config:
    """Validate a decoded JSON object into a ParameterSet or ReferenceConfig."""
    if not isinstance(obj, dict):
        raise ConfigError(f"config must be a JSON object, got {type(obj).__name__}")
    if obj.get("reference"):
        try:
            n = int(obj["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError("reference config requires an integer 'n'") from exc
        if n < 1:
            raise ConfigError(f"reference half-dimension must be >= 1, got {n}")
        return ReferenceConfig(n=n)
    try:
        dim = int(obj["N"])
        mode = obj["mode"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"config requires integer 'N' and 'mode': {exc}") from exc
    values = {}
    for entry in _entry_list(obj.get("parameters", []), "parameters"):
        key, value = _parse_entry(entry)
        if key in values:
            raise ConfigError(f"duplicate parameter class {entry}")
        values[key] = value
    overrides = []
    for entry in _entry_list(obj.get("symmetry_overrides", []), "symmetry_overrides"):
        key, value = _parse_entry(entry)
        overrides.append((key[0], key[1], key[2], _to_float(value)))
    return make_parameters(dim, mode, values, overrides=tuple(overrides))


def _to_float(value: object) -> float:
    if isinstance(value, str):
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"cannot parse rational value {value!r}") from exc
    return float(value)  # type: ignore[arg-type]


def _entry_list(raw: object, field_name: str) -> list:
    if not isinstance(raw, list):
        raise ConfigError(f"'{field_name}' must be a list")
    return raw


def _parse_entry(entry: object) -> tuple[tuple[int, int, int], object]:
    if not isinstance(entry, dict):
        raise ConfigError(f"parameter entry must be an object, got {entry!r}")
    try:
        i = int(entry["i"])
        j = int(entry["j"])
        epsilon = entry["epsilon"]
        value = entry["value"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed parameter entry {entry!r}: {exc}") from exc
    if epsilon not in ("+", "-"):
        raise ConfigError(f"epsilon must be '+' or '-', got {epsilon!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ConfigError(f"parameter value must be a number or 'p/q', got {value!r}")
    return (i, j, +1 if epsilon == "+" else -1), value


def load_config(path: str | Path) -> Config:
    """Read and parse a config file; all failures become ConfigError."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(obj)
