"""Flat key-value configuration for the CLI.

Format: one `key = value` per line, `#` starts a comment anywhere,
blank lines ignored, unknown keys rejected.  Flags override config
values; the only environment variable honored is ZETALAB_CONFIG, which
names the config file when --config is absent.  Thread counts and
artifact bound constants live here so runs are reproducible from
(flags, config) alone, never from ambient machine state.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from typing import Optional

from .errors import DomainError, ParseError
from .quadrature import QuadratureSettings
from .zeta import EvalSettings

ENV_VAR = "ZETALAB_CONFIG"


@dataclass(frozen=True)
class Config:
    """Effective settings: precision, quadrature, resources, and the
    artifact residual-bound constants (defaults 10 and 50; these are
    configuration, not theorems)."""

    euler_maclaurin_terms: Optional[int] = None  # None means the auto rule
    bernoulli_order: int = 12
    target_abs_error: float = 1e-12
    points_per_panel: int = 16
    width_scale: float = 1.0
    threads: int = 1
    output_dir: str = "."
    divisor_table_size: int = 100_000
    afe_residual_limit: float = 10.0
    afe2_ratio_limit: float = 50.0
    smooth_residual_limit: float = 10.0

    def __post_init__(self):
        if self.euler_maclaurin_terms is not None and self.euler_maclaurin_terms < 2:
            raise DomainError("euler_maclaurin_terms must be >= 2 or auto")
        if self.bernoulli_order < 1:
            raise DomainError("bernoulli_order must be >= 1")
        if not self.target_abs_error > 0:
            raise DomainError("target_abs_error must be > 0")
        if self.points_per_panel < 2:
            raise DomainError("points_per_panel must be >= 2")
        if not (0 < self.width_scale <= 1):
            raise DomainError("width_scale must lie in (0, 1]")
        if self.threads < 1:
            raise DomainError("threads must be >= 1")
        if self.divisor_table_size < 1:
            raise DomainError("divisor_table_size must be >= 1")
        if self.afe_residual_limit <= 0 or self.afe2_ratio_limit <= 0:
            raise DomainError("residual limits must be > 0")
        if self.smooth_residual_limit <= 0:
            raise DomainError("residual limits must be > 0")

    def eval_settings(self) -> EvalSettings:
        return EvalSettings(
            euler_maclaurin_terms=self.euler_maclaurin_terms,
            bernoulli_order=self.bernoulli_order,
            target_abs_error=self.target_abs_error,
        )

    def quadrature_settings(self) -> QuadratureSettings:
        return QuadratureSettings(
            points_per_panel=self.points_per_panel,
            width_scale=self.width_scale,
            threads=self.threads,
        )


_INT_KEYS = {"bernoulli_order", "points_per_panel", "threads", "divisor_table_size"}
_FLOAT_KEYS = {
    "target_abs_error",
    "width_scale",
    "afe_residual_limit",
    "afe2_ratio_limit",
    "smooth_residual_limit",
}
_STR_KEYS = {"output_dir"}
_ALL_KEYS = (
    {"euler_maclaurin_terms"} | _INT_KEYS | _FLOAT_KEYS | _STR_KEYS
)


def parse_config(text: str) -> Config:
    """Parse config text; ParseError positions are 1-based line numbers."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _ALL_KEYS:
            raise ParseError(f"unknown config key {key!r}", lineno)
        if key in values:
            raise ParseError(f"duplicate config key {key!r}", lineno)
        try:
            if key == "euler_maclaurin_terms":
                values[key] = None if value == "auto" else int(value)
            elif key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            else:
                values[key] = value
        except ValueError:
            raise ParseError(f"bad value for {key}: {value!r}", lineno) from None
    return Config(**values)


def dump_config(config: Config) -> str:
    """Render the effective config in parseable form (round-trips)."""
    lines = []
    for f in fields(Config):
        value = getattr(config, f.name)
        if f.name == "euler_maclaurin_terms" and value is None:
            value = "auto"
        elif isinstance(value, float):
            value = f"{value:.15g}"
        lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"


def load_config(path: Optional[str] = None) -> Config:
    """Read config from path, else from $ZETALAB_CONFIG, else defaults."""
    if path is None:
        path = os.environ.get(ENV_VAR)
    if path is None:
        return Config()
    if not os.path.exists(path):
        raise ParseError(f"config file not found: {path}", 0)
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def override(config: Config, **changes) -> Config:
    """Apply flag overrides; None values mean 'not given'."""
    effective = {k: v for k, v in changes.items() if v is not None}
    return replace(config, **effective) if effective else config
