"""Run configuration shared by the library front ends and the CLI.

Values are resolved in fixed precedence order: built-in defaults, then a
config file, then ``CEPDIST_*`` environment variables, then explicit
overrides (CLI flags). The file format is one ``key = value`` pair per
line, with ``#`` starting a comment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from typing import Mapping

from .errors import ConfigError

ENV_PREFIX = "CEPDIST_"
SPECTRUM_METHODS = ("welch", "periodogram")
OUTPUT_FORMATS = ("json", "csv")
LINKAGES = ("average", "single", "complete")


@dataclass(frozen=True)
class RunConfig:
    """Knobs for estimation, truncation, classification, and reporting.

    ``window_len`` and ``fft_length`` may be None, meaning: derive them
    from the signal length (largest power-of-two window at most an eighth
    of the signal, FFT length the next power of two covering both the
    window and twice the cepstrum order).
    """

    method: str = "welch"
    window_len: int | None = None
    overlap: float = 0.5
    fft_length: int | None = None
    K: int = 256
    K_test: int = 20
    tol_model: float = 1e-3
    tol_estimated: float = 5e-2
    hankel_rows: int = 150
    vandermonde_cols: int = 400
    seed: int = 44
    damping: float = 0.995
    output_format: str = "json"

    def validate(self) -> "RunConfig":
        if self.method not in SPECTRUM_METHODS:
            raise ConfigError(f"method must be one of {SPECTRUM_METHODS}, got {self.method!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}"
            )
        if self.window_len is not None and self.window_len < 8:
            raise ConfigError(f"window_len must be at least 8, got {self.window_len}")
        if not (0.0 <= self.overlap < 1.0):
            raise ConfigError(f"overlap must lie in [0, 1), got {self.overlap}")
        if self.fft_length is not None and (
            self.fft_length < 2 or self.fft_length & (self.fft_length - 1)
        ):
            raise ConfigError(f"fft_length must be a power of two, got {self.fft_length}")
        for name in ("K", "K_test", "hankel_rows", "vandermonde_cols"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be a positive integer, got {getattr(self, name)}")
        if self.K_test > self.K:
            raise ConfigError(f"K_test ({self.K_test}) cannot exceed K ({self.K})")
        for name in ("tol_model", "tol_estimated"):
            if not (0.0 < getattr(self, name) < 1.0):
                raise ConfigError(f"{name} must lie in (0, 1), got {getattr(self, name)}")
        if not (0.0 < self.damping < 1.0):
            raise ConfigError(f"damping must lie in (0, 1), got {self.damping}")
        return self


_OPTIONAL_INT_FIELDS = {"window_len", "fft_length"}
_INT_FIELDS = {"K", "K_test", "hankel_rows", "vandermonde_cols", "seed"}
_FLOAT_FIELDS = {"overlap", "tol_model", "tol_estimated", "damping"}
_STR_FIELDS = {"method", "output_format"}
CONFIG_KEYS = tuple(f.name for f in fields(RunConfig))


def parse_config_value(key: str, text: str):
    """Parse the string form of one configuration value to its typed form."""
    if key not in CONFIG_KEYS:
        raise ConfigError(f"unknown configuration key {key!r}")
    raw = text.strip()
    if key in _OPTIONAL_INT_FIELDS:
        if raw.lower() in ("none", "auto", ""):
            return None
        key_kind = int
    elif key in _INT_FIELDS:
        key_kind = int
    elif key in _FLOAT_FIELDS:
        key_kind = float
    else:
        return raw
    try:
        if key_kind is int:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"value {raw!r} for key {key!r} is not a valid {key_kind.__name__}") from exc


def _parse_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {stripped!r}")
        key, _, text = stripped.partition("=")
        key = key.strip()
        try:
            values[key] = parse_config_value(key, text)
        except ConfigError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
    return values


def load_config(
    path: str | None = None,
    env: Mapping[str, str] | None = None,
    overrides: Mapping[str, object] | None = None,
) -> RunConfig:
    """Resolve a RunConfig from defaults, file, environment, and overrides."""
    values: dict = {}
    if path is not None:
        values.update(_parse_config_file(path))
    env = os.environ if env is None else env
    for key in CONFIG_KEYS:
        env_name = ENV_PREFIX + key.upper()
        if env_name in env:
            values[key] = parse_config_value(key, env[env_name])
    if overrides:
        for key, value in overrides.items():
            if key not in CONFIG_KEYS:
                raise ConfigError(f"unknown configuration key {key!r}")
            values[key] = parse_config_value(key, value) if isinstance(value, str) else value
    return RunConfig(**values).validate()
