"""Distances between signals and systems.

The central quantity is the weighted cepstral distance: the sum over lags
k >= 1 of k times the squared difference of power cepstra. For rational
systems it has closed forms in the roots, it equals the same distance of
the cascade of one system with the other's inverse, and for minimum phase
models it coincides with the squared Hilbert-Schmidt norm of the Hankel
operator built from the log-transfer coefficients. Those identities are
what the verification front end checks numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    KindMismatch,
    LengthMismatch,
    NotMinimumPhaseStable,
    ValidationError,
)
from .lti import TAU_MULT, Signal, ZeroPoleGain
from .spectral import CepstrumSequence

# Cap for the decay-rate estimate used in tail bounds of estimated cepstra.
RHO_CAP = 0.999


@dataclass(frozen=True)
class WeightedCepstralResult:
    """A weighted cepstral distance (or norm) with its truncation bound.

    ``value`` is the truncated sum; ``tail_bound`` bounds the mass beyond
    lag ``order`` when root metadata is available, and is a decay-fit
    estimate (not a guarantee) otherwise.
    """

    value: float
    order: int
    tail_bound: float


def _power_lags(c: CepstrumSequence) -> np.ndarray:
    if c.kind == "power":
        return c.positive
    # A complex cepstrum folds to the power one by adding the two halves.
    return c.positive + c.negative


def _geometric_tail(amplitude: float, radius: float, order: int) -> float:
    if radius <= 0.0:
        return 0.0
    radius = min(radius, RHO_CAP)
    return amplitude**2 * radius ** (2 * (order + 1)) / ((order + 1) * (1.0 - radius**2))


def _tail_bound(delta: np.ndarray, c1: CepstrumSequence, c2: CepstrumSequence | None) -> float:
    order = delta.size
    radii = [c.root_radius for c in (c1, c2) if c is not None]
    counts = [c.root_count for c in (c1, c2) if c is not None]
    if all(r is not None for r in radii) and all(n is not None for n in counts):
        return _geometric_tail(float(sum(counts)), max(radii), order)
    # No model metadata: fit |delta_K| ~ M rho^K / K and bound the same way.
    last = abs(float(delta[-1])) * order
    if last == 0.0:
        return 0.0
    rho = min(last ** (1.0 / order), RHO_CAP)
    k = np.arange(1, order + 1)
    with np.errstate(over="ignore"):
        amp = float(np.max(np.abs(delta) * k / rho**k))
    return _geometric_tail(amp, rho, order)


def weighted_cepstral_distance(
    c1: CepstrumSequence, c2: CepstrumSequence
) -> WeightedCepstralResult:
    """Sum over k of k * (c1(k) - c2(k))^2 on power cepstra.

    Complex cepstra are folded to power form first. When the stored orders
    differ the comparison runs at the common truncation, the smaller of the
    two. Zeroth coefficients never contribute.
    """
    if c1.kind != c2.kind:
        raise KindMismatch(f"cannot mix cepstrum kinds {c1.kind!r} and {c2.kind!r}")
    order = min(c1.order, c2.order)
    delta = _power_lags(c1)[:order] - _power_lags(c2)[:order]
    k = np.arange(1, delta.size + 1)
    value = float(np.sum(k * delta**2))
    return WeightedCepstralResult(value, delta.size, _tail_bound(delta, c1, c2))


def weighted_cepstral_norm(c: CepstrumSequence) -> WeightedCepstralResult:
    """Weighted cepstral distance from the all-pass class: sum of k * c(k)^2."""
    lags = _power_lags(c)
    k = np.arange(1, lags.size + 1)
    value = float(np.sum(k * lags**2))
    return WeightedCepstralResult(value, lags.size, _tail_bound(lags, c, None))


def _closed_form_core(poles: tuple[complex, ...], zeros: tuple[complex, ...]) -> float:
    p = np.asarray(poles, dtype=complex)
    z = np.asarray(zeros, dtype=complex)
    for arr, what in ((p, "pole"), (z, "zero")):
        if arr.size and np.max(np.abs(arr)) >= 1.0:
            raise ValidationError(f"closed forms need folded {what}s strictly inside the circle")
    total = 0.0
    if p.size and z.size:
        total += 2.0 * float(np.sum(np.log(np.abs(1.0 - np.outer(p, np.conj(z))))))
    if p.size:
        total -= float(np.sum(np.log(np.abs(1.0 - np.outer(p, np.conj(p))))))
    if z.size:
        total -= float(np.sum(np.log(np.abs(1.0 - np.outer(z, np.conj(z))))))
    return total


def closed_form_norm_min_phase(zpk: ZeroPoleGain) -> float:
    """Weighted cepstral norm of a stable minimum phase model, from its roots."""
    if not zpk.is_minimum_phase:
        raise NotMinimumPhaseStable(
            "closed_form_norm_min_phase needs all roots inside the unit circle"
        )
    return _closed_form_core(zpk.stable_poles, zpk.min_zeros)


def closed_form_norm_max_phase(zpk: ZeroPoleGain) -> float:
    """Weighted cepstral norm of a purely maximum phase model, from its roots.

    Equals the norm of the minimum phase model with all roots reflected
    inside the circle; the weighted distance cannot tell the two apart.
    """
    if not zpk.is_maximum_phase:
        raise ValidationError(
            "closed_form_norm_max_phase needs all roots outside the unit circle"
        )
    return _closed_form_core(zpk.folded_poles(), zpk.folded_zeros())


def closed_form_norm_mixed(zpk: ZeroPoleGain) -> float:
    """Weighted cepstral norm of any off-circle rational model.

    Works through the reflected root sets, so it reduces to the other two
    closed forms when the model is purely one phase type.
    """
    return _closed_form_core(zpk.folded_poles(), zpk.folded_zeros())


def cascade(first: ZeroPoleGain, second: ZeroPoleGain) -> ZeroPoleGain:
    """Root form of first composed with the inverse of second.

    Poles of the result are first's poles plus second's zeros, zeros are
    first's zeros plus second's poles, and coincident pole/zero pairs
    cancel. The weighted cepstral distance between two systems equals the
    weighted cepstral norm of their cascade.
    """
    poles = list(first.poles) + list(second.zeros)
    zeros = list(first.zeros) + list(second.poles)
    kept_poles = []
    for pole in poles:
        for idx, zero in enumerate(zeros):
            if abs(pole - zero) <= TAU_MULT:
                zeros.pop(idx)
                break
        else:
            kept_poles.append(pole)
    return ZeroPoleGain.from_roots(kept_poles, zeros, first.gain / second.gain)


def hs_hankel_norm(cepstrum: CepstrumSequence, m: int) -> float:
    """Squared Frobenius norm of the m x m Hankel matrix of c(1..2m-1).

    Entry (i, j) is c(i + j + 1). A lag k <= m appears in exactly k of the
    entries, so for quickly decaying cepstra the value matches the weighted
    cepstral norm truncated at lag m; the lags beyond m carry reduced weight
    and contribute only tail mass.
    """
    if cepstrum.kind != "power":
        raise KindMismatch("the Hankel norm route is defined on power cepstra")
    if m < 1:
        raise ValidationError(f"m must be positive, got {m}")
    if 2 * m > cepstrum.order:
        raise ValidationError(
            f"an {m} x {m} Hankel block needs lags up to {2 * m - 1}; "
            f"store at least {2 * m} coefficients (got {cepstrum.order})"
        )
    coeffs = cepstrum.positive
    idx = np.arange(m)
    hankel = coeffs[idx[:, None] + idx[None, :]]
    return float(np.sum(hankel**2))


def euclidean_distance(s1: Signal, s2: Signal) -> float:
    """Plain pointwise L2 distance between equal-length signals."""
    if len(s1) != len(s2):
        raise LengthMismatch(f"signal lengths differ: {len(s1)} vs {len(s2)}")
    return float(np.linalg.norm(s1.samples - s2.samples))


def cosine_similarity(s1: Signal, s2: Signal) -> float:
    """Inner product of the signals normalized by their L2 norms."""
    if len(s1) != len(s2):
        raise LengthMismatch(f"signal lengths differ: {len(s1)} vs {len(s2)}")
    n1 = float(np.linalg.norm(s1.samples))
    n2 = float(np.linalg.norm(s2.samples))
    if n1 == 0.0 or n2 == 0.0:
        raise ValidationError("cosine similarity is undefined for an all-zero signal")
    return float(s1.samples @ s2.samples / (n1 * n2))


class SignalStats(NamedTuple):
    median: float
    mean: float
    std: float


def signal_statistics(signal: Signal) -> SignalStats:
    """Median, mean, and population standard deviation of the samples."""
    x = signal.samples
    return SignalStats(float(np.median(x)), float(np.mean(x)), float(np.std(x)))
