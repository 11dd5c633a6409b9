"""Runtime configuration: degree bound, series precision, check seeds.

Values come from (in increasing precedence) the defaults below, a config
file of `key=value` lines named by the CHOWCALC_CONFIG environment variable
or passed explicitly, and direct keyword overrides.  The seed is recorded in
every probabilistic check report so runs are reproducible.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

ENV_VAR = "CHOWCALC_CONFIG"


@dataclass(frozen=True)
class Config:
    max_degree: int = 6
    series_precision: int = 30
    rng_seed: int = 1789


def load_config(path: Optional[str] = None, **overrides) -> Config:
    cfg = Config()
    file_path = path or os.environ.get(ENV_VAR)
    if file_path:
        values = {}
        for raw in Path(file_path).read_text().splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config lines must be key=value: {line!r}")
            key, _, val = line.partition("=")
            values[key.strip()] = int(val.strip())
        unknown = set(values) - {"max_degree", "series_precision", "rng_seed"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = replace(cfg, **values)
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg


def default_config() -> Config:
    return load_config()
