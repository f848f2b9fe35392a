"""Subspace-angle route to the weighted cepstral norm.

The norm of a stable minimum phase model equals minus the log of the
product of squared cosines of the principal angles between the ranges of
two Vandermonde matrices, one built on the poles and one on the zeros, in
the limit of infinitely many rows. The same angles can be reached from
input/output data alone: Hankel matrices of the output with the input's
row space projected out (and vice versa, which is the inverse system's
Hankel picture) span the corresponding ranges. Maximum phase models go
through the same computation on reflected roots.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ConvergenceNotReached,
    DimensionMismatch,
    InsufficientData,
    MixedPhaseUnsupported,
    RankDeficient,
    ValidationError,
)
from .lti import TAU_MULT, Signal, ZeroPoleGain
from .metrics import cascade, closed_form_norm_mixed

# Relative singular-value cutoff when extracting a basis from data Hankels.
HANKEL_RANK_RTOL = 1e-8
# Relative cutoff under which matrix columns count as dependent.
TAU_RANK = 1e-10
# Doubling the Vandermonde depth must move the norm less than this.
TAU_CONV = 1e-10


@dataclass(frozen=True)
class HankelMatrix:
    """Block of delayed copies of a signal, scaled by 1/sqrt(columns)."""

    entries: np.ndarray
    rows: int
    cols: int


@dataclass(frozen=True)
class PrincipalAngleSet:
    """Principal angles (ascending) between two subspaces, with cosines."""

    angles: tuple[float, ...]
    cosines: tuple[float, ...]

    @property
    def cos_squared(self) -> tuple[float, ...]:
        return tuple(c * c for c in self.cosines)


def build_hankel(signal: Signal, rows: int, cols: int | None = None) -> HankelMatrix:
    """Hankel matrix with entries x(r + c) for r < rows, c < cols."""
    x = signal.samples
    n = x.size
    if rows < 1:
        raise ValidationError(f"rows must be positive, got {rows}")
    if cols is None:
        cols = n - rows + 1
    if cols < 1 or rows + cols - 1 > n:
        raise InsufficientData(
            f"a {rows} x {cols} Hankel block needs {rows + cols - 1} samples, got {n}"
        )
    idx = np.arange(rows)[:, None] + np.arange(cols)[None, :]
    return HankelMatrix(x[idx] / np.sqrt(cols), rows, cols)


def project_complement(matrix: np.ndarray, onto: np.ndarray) -> np.ndarray:
    """Project the columns of ``matrix`` onto the orthogonal complement of
    the column space of ``onto``."""
    a = np.asarray(matrix, dtype=float)
    b = np.asarray(onto, dtype=float)
    if a.ndim != 2 or b.ndim != 2:
        raise DimensionMismatch("project_complement needs two-dimensional arrays")
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(
            f"row counts differ: {a.shape[0]} vs {b.shape[0]}; columns live in different spaces"
        )
    basis = _column_basis(b, HANKEL_RANK_RTOL)
    if basis.shape[1] == 0:
        return a.copy()
    return a - basis @ (basis.T @ a)


def _column_basis(matrix: np.ndarray, rtol: float) -> np.ndarray:
    u, s, _ = np.linalg.svd(matrix, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return u[:, :0]
    return u[:, s > rtol * s[0]]


def vandermonde_range(roots: Sequence[complex], depth: int) -> np.ndarray:
    """Matrix whose columns are (1, r, r^2, ..., r^(depth-1)) per root.

    Roots must lie strictly inside the unit circle (reflect first) and be
    pairwise distinct, otherwise the range is rank deficient.
    """
    rs = tuple(complex(r) for r in roots)
    for r in rs:
        if abs(r) >= 1.0:
            raise ValidationError(f"root {r} must lie strictly inside the unit circle")
    for i in range(len(rs)):
        for j in range(i + 1, len(rs)):
            if abs(rs[i] - rs[j]) <= TAU_MULT:
                raise RankDeficient(f"repeated root near {rs[i]} makes the range rank deficient")
    if depth < max(1, len(rs)):
        raise RankDeficient(f"depth {depth} cannot carry {len(rs)} independent columns")
    if not rs:
        return np.zeros((depth, 0), dtype=complex)
    base = np.asarray(rs, dtype=complex)
    return base[None, :] ** np.arange(depth)[:, None]


def principal_angles(a: np.ndarray, b: np.ndarray) -> PrincipalAngleSet:
    """Principal angles between the column spaces of two full-rank matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise DimensionMismatch("principal_angles needs two-dimensional arrays")
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"ambient dimensions differ: {a.shape[0]} vs {b.shape[0]}")
    if a.shape[1] == 0 or b.shape[1] == 0:
        return PrincipalAngleSet((), ())
    for m, name in ((a, "first"), (b, "second")):
        s = np.linalg.svd(m, compute_uv=False)
        if s[-1] <= TAU_RANK * s[0]:
            raise RankDeficient(f"{name} matrix is numerically rank deficient")
    qa = np.linalg.qr(a)[0]
    qb = np.linalg.qr(b)[0]
    cosines = np.clip(np.linalg.svd(qa.conj().T @ qb, compute_uv=False), 0.0, 1.0)
    angles = np.arccos(cosines)
    return PrincipalAngleSet(tuple(float(t) for t in angles), tuple(float(c) for c in cosines))


def principal_angles_eigen(a: np.ndarray, b: np.ndarray) -> PrincipalAngleSet:
    """Same angles as ``principal_angles``, via the Gram-matrix pencil.

    The symmetric generalized eigenvalue problem on the blocks A^H B and
    diag(A^H A, B^H B) has eigenvalues +-cos(theta) padded with zeros. It
    avoids orthonormalizing the inputs, at the cost of squaring their
    conditioning, and is kept as an independent cross-check of the QR/SVD
    route.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise DimensionMismatch("principal_angles_eigen needs two-dimensional arrays")
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"ambient dimensions differ: {a.shape[0]} vs {b.shape[0]}")
    na, nb = a.shape[1], b.shape[1]
    if na == 0 or nb == 0:
        return PrincipalAngleSet((), ())
    for m, name in ((a, "first"), (b, "second")):
        s = np.linalg.svd(m, compute_uv=False)
        if s[-1] <= TAU_RANK * s[0]:
            raise RankDeficient(f"{name} matrix is numerically rank deficient")
    cross = np.zeros((na + nb, na + nb), dtype=complex)
    cross[:na, na:] = a.conj().T @ b
    cross[na:, :na] = cross[:na, na:].conj().T
    gram = np.zeros_like(cross)
    gram[:na, :na] = a.conj().T @ a
    gram[na:, na:] = b.conj().T @ b
    chol = np.linalg.cholesky(gram)
    half = np.linalg.solve(chol, cross)
    sym = np.linalg.solve(chol, half.conj().T).conj().T
    eigenvalues = np.linalg.eigvalsh(sym)
    cosines = np.clip(np.sort(eigenvalues)[::-1][: min(na, nb)], 0.0, 1.0)
    angles = np.arccos(cosines)
    return PrincipalAngleSet(tuple(float(t) for t in angles), tuple(float(c) for c in cosines))


def _norm_from_cosines(angle_set: PrincipalAngleSet) -> float:
    total = 0.0
    for c2 in angle_set.cos_squared:
        if c2 <= 0.0:
            return float("inf")
        total -= float(np.log(c2))
    return total


def _model_angle_norm(poles: tuple[complex, ...], zeros: tuple[complex, ...], depth: int) -> float:
    vp = vandermonde_range(poles, depth)
    vz = vandermonde_range(zeros, depth)
    return _norm_from_cosines(principal_angles(vp, vz))


def angle_convergence_bound(radius: float, count: int, depth: int) -> float:
    """Decay scale of the angle-product norm in the Vandermonde depth.

    Proportional to radius^(2 depth); used by tests to check that doubling
    the depth moves the norm by no more than a modest multiple of this.
    """
    if radius <= 0.0:
        return 0.0
    if radius >= 1.0:
        raise ValidationError(f"radius must be below one, got {radius}")
    return count**2 * radius ** (2 * depth) / (1.0 - radius**2) ** 2


def subspace_norm_from_model(zpk: ZeroPoleGain, depth: int = 400) -> float:
    """Model norm from principal angles between pole and zero Vandermonde ranges.

    Only purely minimum phase or purely maximum phase models are accepted;
    reflected roots are used in the maximum phase case. A single missing
    root on one side is balanced with a root at the origin (the convention
    that equalizes pole and zero counts of invertible realizations); any
    other imbalance, or an empty side, falls back to the closed form. The
    result is cross-checked at twice the depth.
    """
    if not (zpk.is_minimum_phase or zpk.is_maximum_phase):
        raise MixedPhaseUnsupported(
            "the angle route needs a purely minimum or maximum phase model; "
            "mixed models only have the series and closed-form routes"
        )
    if depth < 1:
        raise ValidationError(f"depth must be positive, got {depth}")
    poles = list(zpk.folded_poles())
    zeros = list(zpk.folded_zeros())
    if not poles and not zeros:
        # A bare gain: both ranges are trivial and the norm is exactly zero.
        return 0.0

    def _pad(side: list[complex]) -> bool:
        if any(abs(r) <= TAU_MULT for r in side):
            return False
        side.append(0.0)
        return True

    gap = len(poles) - len(zeros)
    balanced = True
    if gap == 1:
        balanced = _pad(zeros)
    elif gap == -1:
        balanced = _pad(poles)
    elif gap != 0:
        balanced = False
    if not balanced or not poles or not zeros:
        warnings.warn(
            "pole/zero counts cannot be balanced for the angle route; "
            "returning the closed-form value",
            stacklevel=2,
        )
        return closed_form_norm_mixed(zpk)
    value = _model_angle_norm(tuple(poles), tuple(zeros), depth)
    check = _model_angle_norm(tuple(poles), tuple(zeros), 2 * depth)
    if abs(value - check) > TAU_CONV:
        raise ConvergenceNotReached(
            f"norm moved by {abs(value - check):.3e} when doubling the depth from {depth}; "
            "increase the depth"
        )
    return value


def subspace_distance_between_models(
    first: ZeroPoleGain, second: ZeroPoleGain, depth: int = 400
) -> float:
    """Subspace-angle distance between two models.

    The angle norm of the cascade of the first model with the second one's
    inverse; identical models cancel completely and give zero. The cascade
    must come out purely minimum or maximum phase for the angle route to
    apply.
    """
    return subspace_norm_from_model(cascade(first, second), depth)


def projected_bases(
    input_signal: Signal, output_signal: Signal, rows: int, cols: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of the output-after-input and input-after-output
    projected Hankel column spaces.

    The first basis spans the columns of the output Hankel matrix after the
    input Hankel row space is projected out of its rows: for noise-free
    data this is the extended observability range of the generating system.
    The second swaps the roles and yields the inverse system's range.
    """
    if len(input_signal) != len(output_signal):
        raise ValidationError(
            f"input and output lengths differ: {len(input_signal)} vs {len(output_signal)}"
        )
    uh = build_hankel(input_signal, rows, cols).entries
    yh = build_hankel(output_signal, rows, cols).entries
    y_proj = project_complement(yh.T, uh.T).T
    u_proj = project_complement(uh.T, yh.T).T
    return (
        _column_basis(y_proj, HANKEL_RANK_RTOL),
        _column_basis(u_proj, HANKEL_RANK_RTOL),
    )


def subspace_norm_from_data(
    input_signal: Signal, output_signal: Signal, rows: int = 150, cols: int | None = None
) -> float:
    """Model norm estimated from one input/output record.

    Principal angles between the two projected Hankel ranges play the role
    the pole and zero Vandermonde ranges play for a known model. An
    identity-like record (output basis empty after projection) has norm 0.
    """
    basis_y, basis_u = projected_bases(input_signal, output_signal, rows, cols)
    return _norm_from_cosines(principal_angles(basis_y, basis_u))


def subspace_distance_from_bases(
    bases_a: tuple[np.ndarray, np.ndarray], bases_b: tuple[np.ndarray, np.ndarray]
) -> float:
    """Subspace distance from two precomputed (output, input) projected bases."""
    ya, ua = bases_a
    yb, ub = bases_b
    if ya.shape[0] != yb.shape[0]:
        raise DimensionMismatch("the two records must use the same Hankel row count")
    span_one = _column_basis(np.hstack([ya, ub]), HANKEL_RANK_RTOL)
    span_two = _column_basis(np.hstack([ua, yb]), HANKEL_RANK_RTOL)
    return _norm_from_cosines(principal_angles(span_one, span_two))


def subspace_distance_from_data(
    pair_a: tuple[Signal, Signal],
    pair_b: tuple[Signal, Signal],
    rows: int = 150,
    cols: int | None = None,
) -> float:
    """Subspace distance between the systems behind two input/output records.

    Combines each record's own projected output range with the other
    record's projected input range, and measures the angles between the two
    combined spans; for records of the same system the spans coincide.
    """
    bases_a = projected_bases(pair_a[0], pair_a[1], rows, cols)
    bases_b = projected_bases(pair_b[0], pair_b[1], rows, cols)
    return subspace_distance_from_bases(bases_a, bases_b)
