"""Run configuration: defaults, optional YAML file, then command-line overrides."""

import math
import os
import re
from dataclasses import asdict, dataclass, fields
from typing import Optional

import yaml

from ..errors import InvalidParameterError, ParseError

CONFIG_ENV = "ARITHDYN_CONFIG"
FORMATS = ("table", "json", "csv")


@dataclass
class RunConfig:
    n_max: int = 5
    height_bound: float = math.log(3)
    period_bound: int = 2
    tail_window: Optional[int] = None
    prime_count: int = 3
    samples_per_prime: int = 20
    seed: int = 0
    term_count_cap: int = 10 ** 6
    coordinate_digit_cap: int = 10 ** 6
    format: str = "table"

    def __post_init__(self):
        self.validate()

    def validate(self):
        for name in ("n_max", "period_bound", "prime_count", "samples_per_prime",
                     "term_count_cap", "coordinate_digit_cap"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise InvalidParameterError(f"{name} must be a positive integer, got {v!r}")
        if self.tail_window is not None and self.tail_window < 1:
            raise InvalidParameterError("tail_window must be positive")
        if self.height_bound < 0:
            raise InvalidParameterError("height_bound must be >= 0")
        if self.format not in FORMATS:
            raise InvalidParameterError(f"format must be one of {FORMATS}")

    def as_dict(self):
        return asdict(self)


_LOG_RE = re.compile(r"^\s*log\s*\(?\s*([0-9]+(?:\.[0-9]*)?)\s*\)?\s*$")


def parse_height_bound(text):
    """``"log(100)"``, ``"log 100"`` or a plain float."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _LOG_RE.match(str(text))
    try:
        return math.log(float(m.group(1))) if m else float(text)
    except ValueError:
        raise InvalidParameterError(f"bad height bound {text!r}") from None


def load_config(path=None, overrides=None) -> RunConfig:
    """Defaults < file (explicit path, else ``$ARITHDYN_CONFIG``) < overrides."""
    values = {}
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                data = yaml.safe_load(fh) or {}
        except OSError as exc:
            raise InvalidParameterError(f"cannot read config {path}: {exc}") from None
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            raise ParseError(f"{path}: invalid YAML", mark and mark.line + 1,
                             mark and mark.column + 1) from None
        known = {f.name for f in fields(RunConfig)}
        bad = set(data) - known
        if bad:
            raise InvalidParameterError(f"{path}: unknown config keys {sorted(bad)}")
        values.update(data)
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    if "height_bound" in values:
        values["height_bound"] = parse_height_bound(values["height_bound"])
    return RunConfig(**values)
