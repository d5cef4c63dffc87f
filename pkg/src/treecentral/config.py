"""Run configuration shared by the library entry points and the CLI."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace

ENV_PREFIX = "TREECENTRAL_"
OUTPUT_FORMATS = ("json", "csv", "dot", "text")
MAX_BRUTE_CAP = 24


@dataclass(frozen=True)
class Config:
    zero_tol: float = 1e-9
    perron_tol: float = 1e-13
    tie_tol: float = 1e-9
    brute_cap: int = 14
    output_format: str = "json"

    def __post_init__(self):
        for name in ("zero_tol", "perron_tol", "tie_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if not 1 <= self.brute_cap <= MAX_BRUTE_CAP:
            raise ValueError(f"brute_cap must be in 1..{MAX_BRUTE_CAP}, got {self.brute_cap}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {OUTPUT_FORMATS}")

    @classmethod
    def from_env(cls, environ=None, **overrides) -> "Config":
        """Defaults, then ``TREECENTRAL_<FIELD>`` variables, then ``overrides``."""
        environ = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is not None:
                values[f.name] = _cast(f.name, raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return replace(cls(), **values)

    def as_dict(self) -> dict:
        return asdict(self)


def _cast(name: str, raw: str):
    if name == "brute_cap":
        return int(raw)
    if name == "output_format":
        return raw
    return float(raw)


DEFAULT = Config()
