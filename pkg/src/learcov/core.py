"""Core types and matrix builders for the LEAR correlation family.

The linear exponent autoregressive (LEAR) model assigns measurements j and k
on the same subject, separated by distance d = |t_j - t_k|, the correlation

    rho_l ** (d_min + delta * (d - d_min) / (d_max - d_min))

where d_min and d_max are the smallest and largest distances pooled over all
subjects. The exponent interpolates linearly between d_min (at d = d_min) and
d_min + delta (at d = d_max), so delta controls how fast correlation decays
relative to the continuous-time AR(1) structure rho_l ** d:

    delta = 0                 compound symmetry, every off-diagonal rho_l ** d_min
    delta = d_max - d_min     AR(1), entry rho_l ** d
    delta -> infinity         MA(1)-like, only d = d_min entries survive

The companion ARMA(1,1) covariance uses measurement positions rather than
distances: entry (j, k) is sigma2 * tau * rho_a ** (|j - k| - 1) off the
diagonal and sigma2 on it.

Matrices returned here are dense, freshly allocated numpy arrays; callers may
mutate them freely. Positive definiteness is never silently repaired: a
Cholesky attempt either succeeds or raises NotPositiveDefinite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateGrid,
    InvalidGrid,
    InvalidParams,
    InvalidSize,
    NotPositiveDefinite,
)

__all__ = [
    "MeasurementGrid",
    "LearParams",
    "Arma11Params",
    "build_grid",
    "lear_correlation",
    "lear_covariance",
    "arma11_covariance",
    "cholesky_lower",
    "validate_lear_values",
    "validate_arma11_values",
]


@dataclass(frozen=True)
class MeasurementGrid:
    """Per-subject measurement times plus pooled distance extremes.

    ``subject_times`` holds one strictly increasing float vector per subject.
    ``d_min`` and ``d_max`` are the smallest and largest within-subject
    pairwise distances pooled over every subject (possibly widened by an
    explicit override at construction). ``spacing`` is populated by
    ``reparam.normalize_grid`` and records the common gap of the original
    grid; it is None for grids built directly from data.

    Use :func:`build_grid` to construct instances; it performs validation.
    """

    subject_times: tuple[np.ndarray, ...]
    d_min: float
    d_max: float
    spacing: float | None = None

    def __post_init__(self) -> None:
        for t in self.subject_times:
            t.setflags(write=False)

    @property
    def n_subjects(self) -> int:
        return len(self.subject_times)

    def n_measurements(self, subject_index: int) -> int:
        return len(self.subject_times[subject_index])


def build_grid(
    times_per_subject,
    d_min: float | None = None,
    d_max: float | None = None,
) -> MeasurementGrid:
    """Validate per-subject time vectors and pool the distance extremes.

    Args:
        times_per_subject: iterable of per-subject sequences of measurement
            times. Each must be finite and strictly increasing.
        d_min, d_max: optional overrides for the pooled extremes, for designs
            where the distance range is fixed a priori. An override must
            bracket the observed extremes (d_min at or below the observed
            minimum, d_max at or above the observed maximum) and be positive.

    Raises:
        InvalidGrid: empty input, non-finite or non-increasing times, or an
            override that fails its constraints.
        DegenerateGrid: no subject has two or more measurements, so no
            distance exists.
    """
    vectors = []
    for i, seq in enumerate(times_per_subject):
        t = np.asarray(seq, dtype=float)
        if t.ndim != 1 or t.size == 0:
            raise InvalidGrid(f"subject {i}: times must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(t)):
            raise InvalidGrid(f"subject {i}: times must be finite")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise InvalidGrid(f"subject {i}: times must be strictly increasing")
        vectors.append(t.copy())
    if not vectors:
        raise InvalidGrid("grid needs at least one subject")

    observed_min = math.inf
    observed_max = -math.inf
    for t in vectors:
        if t.size < 2:
            continue
        observed_min = min(observed_min, float(np.min(np.diff(t))))
        observed_max = max(observed_max, float(t[-1] - t[0]))
    if not math.isfinite(observed_min):
        raise DegenerateGrid("no subject has two measurements; no distance is defined")

    if d_min is None:
        d_min = observed_min
    elif not (0.0 < d_min <= observed_min):
        raise InvalidGrid(
            f"d_min override {d_min!r} must be positive and at most the "
            f"observed minimum distance {observed_min!r}"
        )
    if d_max is None:
        d_max = observed_max
    elif d_max < observed_max:
        raise InvalidGrid(
            f"d_max override {d_max!r} must be at least the observed "
            f"maximum distance {observed_max!r}"
        )
    return MeasurementGrid(tuple(vectors), float(d_min), float(d_max))


def validate_lear_values(sigma2: float, rho_l: float, delta: float) -> list[str]:
    """Return the list of constraint violations, empty when all hold."""
    violations = []
    if not (math.isfinite(sigma2) and sigma2 > 0.0):
        violations.append(f"sigma2 must be finite and positive (got {sigma2!r})")
    if not (math.isfinite(rho_l) and 0.0 <= rho_l < 1.0):
        violations.append(f"rho_l must satisfy 0 <= rho_l < 1 (got {rho_l!r})")
    if not (math.isfinite(delta) and delta >= 0.0):
        violations.append(f"delta must be finite and nonnegative (got {delta!r})")
    return violations


def validate_arma11_values(sigma2: float, tau: float, rho_a: float) -> list[str]:
    """Return constraint violations for the (wider) ARMA(1,1) space.

    Negative tau or rho_a values are representable so that fitting can search
    the full box, but such points lie outside the image of the LEAR map; see
    ``reparam.arma_to_lear``.
    """
    violations = []
    if not (math.isfinite(sigma2) and sigma2 > 0.0):
        violations.append(f"sigma2 must be finite and positive (got {sigma2!r})")
    if not (math.isfinite(tau) and -1.0 < tau < 1.0):
        violations.append(f"tau must satisfy -1 < tau < 1 (got {tau!r})")
    if not (math.isfinite(rho_a) and -1.0 <= rho_a <= 1.0):
        violations.append(f"rho_a must satisfy -1 <= rho_a <= 1 (got {rho_a!r})")
    return violations


@dataclass(frozen=True)
class LearParams:
    """Equal-variance LEAR parameters (sigma2, rho_l, delta).

    Constraints: sigma2 > 0, 0 <= rho_l < 1, delta >= 0. Negative delta
    would make correlation grow with distance; it is excluded.
    """

    sigma2: float
    rho_l: float
    delta: float

    def __post_init__(self) -> None:
        for name in ("sigma2", "rho_l", "delta"):
            try:
                object.__setattr__(self, name, float(getattr(self, name)))
            except (TypeError, ValueError):
                raise InvalidParams(f"{name} must be a real number") from None
        violations = validate_lear_values(self.sigma2, self.rho_l, self.delta)
        if violations:
            raise InvalidParams("; ".join(violations))


@dataclass(frozen=True)
class Arma11Params:
    """Equal-variance ARMA(1,1) parameters (sigma2, tau, rho_a).

    The image of the LEAR map has 0 <= tau < 1 and 0 < rho_a <= 1; the wider
    box (-1, 1) x [-1, 1] is accepted so general ARMA fits are representable.
    """

    sigma2: float
    tau: float
    rho_a: float

    def __post_init__(self) -> None:
        for name in ("sigma2", "tau", "rho_a"):
            try:
                object.__setattr__(self, name, float(getattr(self, name)))
            except (TypeError, ValueError):
                raise InvalidParams(f"{name} must be a real number") from None
        violations = validate_arma11_values(self.sigma2, self.tau, self.rho_a)
        if violations:
            raise InvalidParams("; ".join(violations))

    @property
    def in_lear_image(self) -> bool:
        # tau == 0 is the identity matrix; rho_a is then a convention.
        return self.tau == 0.0 or (0.0 <= self.tau and 0.0 < self.rho_a <= 1.0)


def _lear_corr(
    rho_l: float, delta: float, times: np.ndarray, d_min: float, d_max: float
) -> np.ndarray:
    """Unit-diagonal LEAR correlation matrix from raw values (no validation)."""
    t = np.asarray(times, dtype=float)
    p = t.size
    d = np.abs(t[:, None] - t[None, :])
    # Diagonal distances are patched to d_min so the exponent stays benign
    # there; the diagonal is overwritten with 1 afterwards.
    np.fill_diagonal(d, d_min)
    if d_max > d_min:
        exponent = d_min + delta * (d - d_min) / (d_max - d_min)
    else:
        # Zero range: every distance equals d_min and delta has no effect.
        exponent = np.full((p, p), d_min)
    if rho_l > 0.0:
        corr = np.power(rho_l, exponent)
    else:
        corr = np.zeros((p, p))
    np.fill_diagonal(corr, 1.0)
    return corr


def _arma11_corr(tau: float, rho_a: float, p: int) -> np.ndarray:
    """Unit-diagonal ARMA(1,1) correlation matrix from raw values."""
    lag = np.abs(np.arange(p)[:, None] - np.arange(p)[None, :])
    np.fill_diagonal(lag, 1)
    # Integer exponents keep negative rho_a well defined.
    corr = tau * np.power(float(rho_a), lag - 1)
    np.fill_diagonal(corr, 1.0)
    return corr


def lear_correlation(
    params: LearParams, grid: MeasurementGrid, subject_index: int = 0
) -> np.ndarray:
    """LEAR correlation matrix for one subject of the grid.

    Entry (j, k) is rho_l ** (d_min + delta * (d - d_min) / (d_max - d_min))
    with d = |t_j - t_k|, and 1 on the diagonal. When d_max equals d_min the
    interpolation fraction is taken as zero, so every off-diagonal entry is
    rho_l ** d_min and delta is inert.
    """
    if not (0 <= subject_index < grid.n_subjects):
        raise InvalidSize(
            f"subject_index {subject_index} out of range for "
            f"{grid.n_subjects} subjects"
        )
    times = grid.subject_times[subject_index]
    return _lear_corr(params.rho_l, params.delta, times, grid.d_min, grid.d_max)


def lear_covariance(
    params: LearParams, grid: MeasurementGrid, subject_index: int = 0
) -> np.ndarray:
    """Equal-variance LEAR covariance: sigma2 times the correlation matrix."""
    return params.sigma2 * lear_correlation(params, grid, subject_index)


def arma11_covariance(params: Arma11Params, p: int) -> np.ndarray:
    """ARMA(1,1) covariance for p measurements indexed by position.

    Entry (j, k) is sigma2 * tau * rho_a ** (|j - k| - 1) for j != k and
    sigma2 on the diagonal. Positions, not times, define the lag, so this
    structure is meaningful when measurements sit on a unit-spaced grid.
    """
    if not isinstance(p, int) or isinstance(p, bool) or p < 1:
        raise InvalidSize(f"matrix size must be a positive integer (got {p!r})")
    return params.sigma2 * _arma11_corr(params.tau, params.rho_a, p)


def cholesky_lower(matrix: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor, raising NotPositiveDefinite on failure.

    No regularization is applied: a failed factorization means the input is
    not positive definite at working precision, which signals out-of-space
    parameters or a bug rather than something to paper over.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidSize(f"expected a square matrix, got shape {a.shape}")
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"Cholesky factorization failed: {exc}") from exc
