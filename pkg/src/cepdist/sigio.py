"""File formats: signal CSV, model JSON, and deterministic report JSON.

Signals travel as CSV with a header, either ``t,value`` for one signal or
``t,u,y`` for an input/output pair; the time column must be uniformly
spaced. Models travel as JSON, either state-space ``{"A","B","C","D"}`` or
root form ``{"poles","zeros","gain"}`` where each root is a real number or
a ``[re, im]`` pair. Report JSON is canonical: sorted keys, two-space
indent, trailing newline, no timestamps, NaN encoded as null.
"""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .errors import CepdistError, ValidationError
from .lti import Signal, StateSpaceModel, ZeroPoleGain

# Relative jitter allowed in the time column before it counts as non-uniform.
TIME_JITTER_RTOL = 1e-6


def _parse_float(text: str, where: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise ValidationError(f"{where}: {text!r} is not a number") from exc


def _sample_period(times: list[float], path: str) -> float:
    if len(times) < 2:
        return 1.0
    dt = times[1] - times[0]
    if dt <= 0.0:
        raise ValidationError(f"{path}: time column must be strictly increasing")
    for idx in range(1, len(times)):
        step = times[idx] - times[idx - 1]
        if abs(step - dt) > TIME_JITTER_RTOL * max(abs(dt), 1e-12):
            raise ValidationError(
                f"{path}: row {idx + 2}: non-uniform time step {step} (expected {dt})"
            )
    return dt


def read_signal_csv(path: str) -> tuple[str, Signal | tuple[Signal, Signal]]:
    """Read a signal file; returns ("single", Signal) or ("pair", (u, y)).

    A header row is expected but a purely numeric first row is accepted as
    data, with columns interpreted positionally.
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = [row for row in csv.reader(fh) if row and any(cell.strip() for cell in row)]
    except OSError as exc:
        raise ValidationError(f"cannot read signal file {path}: {exc}") from exc
    if not rows:
        raise ValidationError(f"{path}: file contains no data")

    def _numeric_row(row: list[str]) -> bool:
        try:
            for cell in row:
                float(cell)
        except ValueError:
            return False
        return True

    start = 0 if _numeric_row(rows[0]) else 1
    if start == 1 and len(rows) == 1:
        raise ValidationError(f"{path}: file contains a header but no data")
    width = len(rows[start])
    if width not in (2, 3):
        raise ValidationError(f"{path}: expected 2 (t,value) or 3 (t,u,y) columns, got {width}")
    columns: list[list[float]] = [[] for _ in range(width)]
    for offset, row in enumerate(rows[start:], start=start + 1):
        if len(row) != width:
            raise ValidationError(f"{path}: row {offset}: expected {width} cells, got {len(row)}")
        for cidx, cell in enumerate(row):
            columns[cidx].append(_parse_float(cell.strip(), f"{path}: row {offset}"))
    period = _sample_period(columns[0], path)
    if width == 2:
        return "single", Signal(np.asarray(columns[1]), period)
    return "pair", (Signal(np.asarray(columns[1]), period), Signal(np.asarray(columns[2]), period))


def format_signal_csv(signal: Signal) -> str:
    out = io.StringIO()
    out.write("t,value\n")
    for idx, value in enumerate(signal.samples):
        out.write(f"{idx * signal.sample_period:.12g},{value:.17g}\n")
    return out.getvalue()


def format_pair_csv(input_signal: Signal, output_signal: Signal) -> str:
    if len(input_signal) != len(output_signal):
        raise ValidationError("input and output lengths differ")
    out = io.StringIO()
    out.write("t,u,y\n")
    dt = input_signal.sample_period
    for idx in range(len(input_signal)):
        out.write(
            f"{idx * dt:.12g},{input_signal.samples[idx]:.17g},{output_signal.samples[idx]:.17g}\n"
        )
    return out.getvalue()


def format_cepstrum_csv(cepstrum) -> str:
    """Lag/value rows; complex cepstra list negative lags first."""
    out = io.StringIO()
    out.write("k,value\n")
    if cepstrum.kind == "complex":
        for k in range(-cepstrum.order, cepstrum.order + 1):
            out.write(f"{k},{cepstrum.coefficient(k):.17g}\n")
    else:
        for k in range(0, cepstrum.order + 1):
            out.write(f"{k},{cepstrum.coefficient(k):.17g}\n")
    return out.getvalue()


def format_matrix_csv(ids: tuple[str, ...], values: np.ndarray) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", *ids])
    for idx, name in enumerate(ids):
        row = [name]
        for value in values[idx]:
            row.append("" if math.isnan(value) else f"{value:.17g}")
        writer.writerow(row)
    return out.getvalue()


def _parse_root(entry, where: str) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        re, im = entry
        if isinstance(re, (int, float)) and isinstance(im, (int, float)):
            return complex(re, im)
    raise ValidationError(f"{where}: roots must be numbers or [re, im] pairs, got {entry!r}")


def read_model_json(path: str) -> StateSpaceModel | ZeroPoleGain:
    """Read a model file in state-space or root form."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read model file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: model file must hold a JSON object")
    state_keys = {"A", "B", "C", "D"}
    root_keys = {"poles", "zeros", "gain"}
    try:
        if state_keys <= set(data):
            a = np.asarray(data["A"], dtype=float)
            if a.size == 0:
                a = np.zeros((0, 0))
            return StateSpaceModel(
                a,
                np.asarray(data["B"], dtype=float),
                np.asarray(data["C"], dtype=float),
                float(data["D"]),
            )
        if root_keys <= set(data):
            poles = [_parse_root(r, path) for r in data["poles"]]
            zeros = [_parse_root(r, path) for r in data["zeros"]]
            return ZeroPoleGain.from_roots(poles, zeros, float(data["gain"]))
    except CepdistError as exc:
        raise type(exc)(f"{path}: {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: malformed model: {exc}") from exc
    raise ValidationError(
        f"{path}: model needs keys A,B,C,D (state space) or poles,zeros,gain (root form)"
    )


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return None if math.isnan(value) else value
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if obj is None or isinstance(obj, str):
        return obj
    raise ValidationError(f"cannot serialize {type(obj).__name__} into a report")


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed indent, trailing newline."""
    return json.dumps(_plain(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"
