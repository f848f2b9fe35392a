"""Discrete-time SISO linear models, signals, and simulation.

Two model forms are supported. ``StateSpaceModel`` holds the usual
(A, B, C, D) quadruple. ``ZeroPoleGain`` holds roots partitioned by
magnitude, with the transfer function read as

    H(z) = gain * prod(1 - zero_i / z) / prod(1 - pole_i / z)

so a system with fewer zeros than poles in polynomial form is represented
here with explicit roots at the origin. Roots on (or numerically near) the
unit circle are rejected everywhere: the log-spectrum methods this package
is built on are undefined for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    NonSimpleRoot,
    NotInvertible,
    SimulationOverflow,
    UnitCircleRoot,
    ValidationError,
)

# Roots closer than this to |z| = 1 are treated as on the unit circle.
EPS_CIRCLE = 1e-6
# Feedthrough terms smaller than this count as zero (model not invertible).
TAU_D = 1e-12
# Roots closer together than this count as a repeated root.
TAU_MULT = 1e-8
# Scale of the demo white-noise signal; chosen to match the root-mean-square
# amplitude of a unit sinusoid so all three demo signals have comparable power.
NOISE_SCALE = 2.0 ** -0.5


def _to_vector(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class Signal:
    """A finite, uniformly sampled scalar signal."""

    samples: np.ndarray
    sample_period: float = 1.0

    def __post_init__(self) -> None:
        arr = _to_vector(self.samples, "samples")
        if arr.size == 0:
            raise ValidationError("signal must contain at least one sample")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("signal samples must be finite")
        if not (float(self.sample_period) > 0.0):
            raise ValidationError(f"sample_period must be positive, got {self.sample_period}")
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "sample_period", float(self.sample_period))

    def __len__(self) -> int:
        return int(self.samples.size)


@dataclass(frozen=True)
class StateSpaceModel:
    """State-space quadruple x(t+1) = A x(t) + B u(t), y(t) = C x(t) + D u(t)."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: float

    def __post_init__(self) -> None:
        a = np.asarray(self.A, dtype=float)
        b = _to_vector(self.B, "B")
        c = _to_vector(self.C, "C")
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"A must be square, got shape {a.shape}")
        n = a.shape[0]
        if b.size != n or c.size != n:
            raise DimensionMismatch(
                f"B and C must have length {n} to match A, got {b.size} and {c.size}"
            )
        d = float(self.D)
        for name, arr in (("A", a), ("B", b), ("C", c)):
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"{name} must contain only finite entries")
        if not np.isfinite(d):
            raise ValidationError("D must be finite")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "C", c)
        object.__setattr__(self, "D", d)

    @property
    def order(self) -> int:
        return int(self.A.shape[0])

    @property
    def is_invertible(self) -> bool:
        return abs(self.D) > TAU_D


def _check_off_circle(roots: Sequence[complex], what: str) -> None:
    for r in roots:
        if abs(abs(r) - 1.0) <= EPS_CIRCLE:
            raise UnitCircleRoot(f"{what} {r} lies within {EPS_CIRCLE} of the unit circle")


def _check_simple(roots: Sequence[complex], what: str) -> None:
    rs = list(roots)
    for i in range(len(rs)):
        for k in range(i + 1, len(rs)):
            if abs(rs[i] - rs[k]) <= TAU_MULT:
                raise NonSimpleRoot(f"repeated {what} near {rs[i]} (separation <= {TAU_MULT})")


def _check_conjugate_closed(roots: Sequence[complex], what: str) -> None:
    # Real-coefficient systems only: complex roots must appear in conjugate pairs.
    pending = [r for r in roots if abs(r.imag) > TAU_MULT]
    while pending:
        r = pending.pop()
        for k, s in enumerate(pending):
            if abs(s - np.conj(r)) <= TAU_MULT * max(1.0, abs(r)):
                pending.pop(k)
                break
        else:
            raise ValidationError(f"{what} {r} has no conjugate partner")


@dataclass(frozen=True)
class ZeroPoleGain:
    """Roots of a rational transfer function, partitioned by magnitude.

    ``stable_poles`` and ``min_zeros`` lie strictly inside the unit circle,
    ``unstable_poles`` and ``max_zeros`` strictly outside. The gain is the
    real leading coefficient of the product form (see module docstring).
    """

    stable_poles: tuple[complex, ...] = ()
    unstable_poles: tuple[complex, ...] = ()
    min_zeros: tuple[complex, ...] = ()
    max_zeros: tuple[complex, ...] = ()
    gain: float = 1.0

    def __post_init__(self) -> None:
        cleaned = {}
        for name in ("stable_poles", "unstable_poles", "min_zeros", "max_zeros"):
            vals = tuple(complex(v) for v in getattr(self, name))
            if not all(np.isfinite(v.real) and np.isfinite(v.imag) for v in vals):
                raise ValidationError(f"{name} must contain only finite roots")
            cleaned[name] = vals
        g = complex(self.gain)
        if abs(g.imag) > TAU_MULT * max(1.0, abs(g)):
            raise ValidationError(f"gain must be real, got {g}")
        if abs(g.real) <= TAU_D:
            raise ValidationError("gain must be nonzero")
        _check_off_circle(cleaned["stable_poles"] + cleaned["unstable_poles"], "pole")
        _check_off_circle(cleaned["min_zeros"] + cleaned["max_zeros"], "zero")
        for name in ("stable_poles", "min_zeros"):
            for r in cleaned[name]:
                if abs(r) >= 1.0:
                    raise ValidationError(f"{name} entry {r} is not inside the unit circle")
        for name in ("unstable_poles", "max_zeros"):
            for r in cleaned[name]:
                if abs(r) <= 1.0:
                    raise ValidationError(f"{name} entry {r} is not outside the unit circle")
        _check_simple(cleaned["stable_poles"] + cleaned["unstable_poles"], "pole")
        _check_simple(cleaned["min_zeros"] + cleaned["max_zeros"], "zero")
        _check_conjugate_closed(cleaned["stable_poles"] + cleaned["unstable_poles"], "pole")
        _check_conjugate_closed(cleaned["min_zeros"] + cleaned["max_zeros"], "zero")
        for name, vals in cleaned.items():
            object.__setattr__(self, name, vals)
        object.__setattr__(self, "gain", float(g.real))

    @classmethod
    def from_roots(cls, poles: Sequence[complex], zeros: Sequence[complex], gain: float = 1.0) -> "ZeroPoleGain":
        """Build from unpartitioned root lists, splitting by magnitude."""
        poles = [complex(p) for p in poles]
        zeros = [complex(z) for z in zeros]
        _check_off_circle(poles, "pole")
        _check_off_circle(zeros, "zero")
        return cls(
            stable_poles=tuple(p for p in poles if abs(p) < 1.0),
            unstable_poles=tuple(p for p in poles if abs(p) > 1.0),
            min_zeros=tuple(z for z in zeros if abs(z) < 1.0),
            max_zeros=tuple(z for z in zeros if abs(z) > 1.0),
            gain=gain,
        )

    @property
    def poles(self) -> tuple[complex, ...]:
        return self.stable_poles + self.unstable_poles

    @property
    def zeros(self) -> tuple[complex, ...]:
        return self.min_zeros + self.max_zeros

    @property
    def is_minimum_phase(self) -> bool:
        return not self.unstable_poles and not self.max_zeros

    @property
    def is_maximum_phase(self) -> bool:
        return not self.stable_poles and not self.min_zeros

    def folded_poles(self) -> tuple[complex, ...]:
        """All poles reflected into the unit disc (r outside maps to 1/conj(r))."""
        return self.stable_poles + tuple(1.0 / np.conj(p) for p in self.unstable_poles)

    def folded_zeros(self) -> tuple[complex, ...]:
        """All zeros reflected into the unit disc."""
        return self.min_zeros + tuple(1.0 / np.conj(z) for z in self.max_zeros)

    def folded_radius(self) -> float:
        """Largest folded root magnitude; bounds the cepstral decay rate."""
        folded = self.folded_poles() + self.folded_zeros()
        return max((abs(r) for r in folded), default=0.0)


def simulate(model: StateSpaceModel, input_signal: Signal, initial_state=None) -> Signal:
    """Run the state recursion over an input signal.

    The state starts at zero unless ``initial_state`` is given. Raises
    ``SimulationOverflow`` if the output leaves the finite range, which is
    the typical outcome for unstable models driven long enough.
    """
    u = input_signal.samples
    n = model.order
    if initial_state is None:
        x = np.zeros(n)
    else:
        x = _to_vector(initial_state, "initial_state").copy()
        if x.size != n:
            raise DimensionMismatch(f"initial_state must have length {n}, got {x.size}")
    a, b, c, d = model.A, model.B, model.C, model.D
    y = np.empty(len(u))
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(len(u)):
            y[k] = c @ x + d * u[k]
            x = a @ x + b * u[k]
    if not np.all(np.isfinite(y)):
        raise SimulationOverflow("simulation output left the finite range")
    return Signal(y, input_signal.sample_period)


def invert(model: StateSpaceModel) -> StateSpaceModel:
    """Return the state-space model of the inverse system (swap input and output)."""
    if not model.is_invertible:
        raise NotInvertible(f"|D| = {abs(model.D)} is below {TAU_D}; system has no inverse")
    d = model.D
    return StateSpaceModel(
        A=model.A - np.outer(model.B, model.C) / d,
        B=model.B / d,
        C=-model.C / d,
        D=1.0 / d,
    )


def roots_from_state_space(model: StateSpaceModel) -> ZeroPoleGain:
    """Poles, zeros, and gain of an invertible state-space model.

    Poles are the eigenvalues of A; zeros are the eigenvalues of the inverse
    system's A matrix. Both counts equal the model order, with zeros at the
    origin standing in for excess poles.
    """
    if not model.is_invertible:
        raise NotInvertible(f"|D| = {abs(model.D)} is below {TAU_D}; zeros are undefined")
    poles = np.linalg.eigvals(model.A) if model.order else np.array([], dtype=complex)
    if model.order:
        zeros = np.linalg.eigvals(model.A - np.outer(model.B, model.C) / model.D)
    else:
        zeros = np.array([], dtype=complex)
    return ZeroPoleGain.from_roots(poles, zeros, gain=model.D)


def state_space_from_roots(zpk: ZeroPoleGain) -> StateSpaceModel:
    """Controllable canonical realization of a root-form model."""
    poles = zpk.poles
    zeros = zpk.zeros
    p, q = len(poles), len(zeros)
    if q > p:
        raise ValidationError(
            f"cannot realize {q} zeros with only {p} poles; add poles or drop zeros"
        )
    a_coeffs = np.real(np.atleast_1d(np.poly(poles)))
    b_coeffs = zpk.gain * np.real(np.atleast_1d(np.poly(zeros)))
    b_coeffs = np.concatenate([b_coeffs, np.zeros(p - q)])
    n = p
    if n == 0:
        return StateSpaceModel(np.zeros((0, 0)), np.zeros(0), np.zeros(0), zpk.gain)
    a_mat = np.zeros((n, n))
    a_mat[0, :] = -a_coeffs[1:]
    if n > 1:
        a_mat[1:, :-1] = np.eye(n - 1)
    b_vec = np.zeros(n)
    b_vec[0] = 1.0
    d = b_coeffs[0]
    c_vec = b_coeffs[1:] - d * a_coeffs[1:]
    return StateSpaceModel(a_mat, b_vec, c_vec, d)


def spectral_radius(model: StateSpaceModel) -> float:
    if model.order == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(model.A))))


def frequency_response(zpk: ZeroPoleGain, grid: np.ndarray) -> np.ndarray:
    """Evaluate H on the unit circle at angular frequencies in [0, 2*pi)."""
    w = _to_vector(grid, "grid")
    if np.any(w < 0.0) or np.any(w >= 2.0 * np.pi):
        raise ValidationError("frequency grid points must lie in [0, 2*pi)")
    zinv = np.exp(-1j * w)
    num = np.full(w.shape, zpk.gain, dtype=complex)
    for z in zpk.zeros:
        num *= 1.0 - z * zinv
    den = np.ones(w.shape, dtype=complex)
    for p in zpk.poles:
        den *= 1.0 - p * zinv
    return num / den


def frequency_response_state_space(model: StateSpaceModel, grid: np.ndarray) -> np.ndarray:
    """Evaluate D + C (zI - A)^(-1) B on the unit circle."""
    w = _to_vector(grid, "grid")
    if np.any(w < 0.0) or np.any(w >= 2.0 * np.pi):
        raise ValidationError("frequency grid points must lie in [0, 2*pi)")
    n = model.order
    out = np.empty(w.size, dtype=complex)
    eye = np.eye(n)
    for k, wk in enumerate(w):
        z = np.exp(1j * wk)
        if n:
            out[k] = model.D + model.C @ np.linalg.solve(z * eye - model.A, model.B)
        else:
            out[k] = model.D
    return out


def example_systems() -> dict[str, ZeroPoleGain]:
    """Three third-order demo systems: one of each phase type.

    The maximum phase and mixed entries are built by inverting roots of the
    minimum phase one; an inverted origin zero is approximated by a very
    large real zero.
    """
    far = 1e15
    minimum = ZeroPoleGain.from_roots(
        poles=[0.9, 0.7, 0.4], zeros=[0.8, 0.6, 0.0], gain=1.0
    )
    maximum = ZeroPoleGain.from_roots(
        poles=[1 / 0.9, 1 / 0.7, 1 / 0.4], zeros=[1 / 0.8, 1 / 0.6, far], gain=1.0
    )
    mixed = ZeroPoleGain.from_roots(
        poles=[0.9, 0.7, 1 / 0.4], zeros=[1 / 0.8, 0.6, 0.0], gain=1.0
    )
    return {"minimum_phase": minimum, "maximum_phase": maximum, "mixed": mixed}


def make_example_signals(damping: float, seed: int) -> tuple[Signal, Signal, Signal]:
    """The three demo signals: damped sine, damped cosine, damped white noise.

    All share a 0.01 s sample period, an 11 s duration, a 10 rad/s carrier
    for the two sinusoids, and the same exponential envelope. Pointwise
    measures see the sine and cosine as far apart (quadrature) while the
    noise sits between them; dynamics-aware measures group the sinusoids.
    """
    if not (0.0 < damping <= 1.0):
        raise ValidationError(f"damping must be in (0, 1], got {damping}")
    dt = 0.01
    t = np.arange(1101) * dt
    envelope = float(damping) ** np.arange(t.size)
    rng = np.random.default_rng(seed)
    sine = Signal(envelope * np.sin(10.0 * t), dt)
    cosine = Signal(envelope * np.cos(10.0 * t), dt)
    noise = Signal(envelope * NOISE_SCALE * rng.standard_normal(t.size), dt)
    return sine, cosine, noise
