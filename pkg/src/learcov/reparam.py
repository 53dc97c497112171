"""Exact maps between LEAR and ARMA(1,1) parameterizations.

The two structures coincide on grids in canonical form: a single common gap
between consecutive measurements for every subject, integer distances after
dividing by that gap, and a unit minimum distance. On such grids, with
R = d_max - d_min and delta_d = delta / R,

    tau   = rho_l
    rho_a = rho_l ** delta_d

reproduces the LEAR covariance entry for entry exactly, and the inverse is

    rho_l = tau
    delta = R * ln(rho_a) / ln(tau).

Both maps measure distances in spacing units (the canonical form). A grid
with common gap h is first normalized, which rescales distances by 1/h; the
returned parameters describe correlations at integer lags on that normalized
grid. Fitted values on differently scaled grids are therefore not directly
comparable; use :func:`correlation_at_distance` to read off correlations on
the original scale instead of comparing raw parameters.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .core import Arma11Params, LearParams, MeasurementGrid, build_grid
from .errors import (
    DegenerateRange,
    InvalidParams,
    NotSpecialCase,
    OutsideLearImage,
    Unidentifiable,
    UnidentifiableWarning,
)

__all__ = [
    "SpecialCaseReport",
    "check_special_case",
    "normalize_grid",
    "map_lear_to_arma11",
    "map_arma11_to_lear",
    "lear_to_arma",
    "arma_to_lear",
    "correlation_at_distance",
]

#: Relative tolerance for judging equal spacing and integer distances.
DEFAULT_REL_TOL = 1e-9


@dataclass(frozen=True)
class SpecialCaseReport:
    """Eligibility flags for the ARMA(1,1) reparameterization.

    ``spacing`` is the common consecutive gap h when one exists, else None.
    ``integer_distances`` and ``dmin_is_one`` are judged after dividing by h
    when spacing exists, otherwise on the raw distances. ``eligible`` is the
    conjunction of the three flags.
    """

    equally_spaced: bool
    integer_distances: bool
    dmin_is_one: bool
    spacing: float | None
    eligible: bool


def _pairwise_distances(grid: MeasurementGrid):
    for t in grid.subject_times:
        if t.size < 2:
            continue
        d = np.abs(t[:, None] - t[None, :])
        yield d[np.triu_indices(t.size, k=1)]


def check_special_case(
    grid: MeasurementGrid, rel_tol: float = DEFAULT_REL_TOL
) -> SpecialCaseReport:
    """Report whether the grid admits the exact ARMA(1,1) reparameterization."""
    gaps = np.concatenate(
        [np.diff(t) for t in grid.subject_times if t.size > 1]
    )
    h = float(gaps[0])
    equally_spaced = bool(np.all(np.abs(gaps - h) <= rel_tol * abs(h)))

    scale = h if equally_spaced else 1.0
    integer_distances = True
    for d in _pairwise_distances(grid):
        s = d / scale
        if not np.all(np.abs(s - np.round(s)) <= rel_tol * np.maximum(1.0, np.abs(s))):
            integer_distances = False
            break
    scaled_dmin = grid.d_min / scale
    dmin_is_one = abs(scaled_dmin - 1.0) <= rel_tol

    return SpecialCaseReport(
        equally_spaced=equally_spaced,
        integer_distances=integer_distances,
        dmin_is_one=dmin_is_one,
        spacing=h if equally_spaced else None,
        eligible=equally_spaced and integer_distances and dmin_is_one,
    )


def normalize_grid(
    grid: MeasurementGrid, rel_tol: float = DEFAULT_REL_TOL
) -> MeasurementGrid:
    """Rescale an equally spaced grid to exact unit gaps.

    Each subject's times become consecutive integers anchored at
    round(t_0 / h), which preserves every within-subject distance (now an
    exact integer count of gaps) while dropping sub-gap offsets that no
    distance depends on. The common gap is recorded on the result's
    ``spacing`` field.

    Raises NotSpecialCase when the grid has no common gap.
    """
    report = check_special_case(grid, rel_tol)
    if not report.equally_spaced:
        raise NotSpecialCase("consecutive gaps differ; no common spacing exists")
    h = report.spacing
    new_times = []
    for t in grid.subject_times:
        anchor = float(np.round(t[0] / h))
        new_times.append(anchor + np.arange(t.size, dtype=float))
    normalized = build_grid(new_times)
    return replace(normalized, spacing=h)


def _canonical_range(grid: MeasurementGrid) -> float:
    """Distance range of the grid in spacing units, validated for the maps."""
    report = check_special_case(grid)
    if not report.eligible:
        raise NotSpecialCase(
            "grid is not reducible to unit-spaced integer distances: "
            f"equally_spaced={report.equally_spaced}, "
            f"integer_distances={report.integer_distances}, "
            f"dmin_is_one={report.dmin_is_one}"
        )
    normalized = normalize_grid(grid)
    return normalized.d_max - normalized.d_min


def map_lear_to_arma11(rho_l: float, delta: float, d_range: float) -> tuple[float, float]:
    """Forward map on raw values: (rho_l, delta) to (tau, rho_a).

    ``d_range`` is d_max - d_min in spacing units and must be positive.
    """
    if not (math.isfinite(d_range) and d_range > 0.0):
        raise DegenerateRange(
            f"distance range must be positive (got {d_range!r}); "
            "delta_d = delta / range is undefined"
        )
    violations = [
        v for v in (
            None if 0.0 <= rho_l < 1.0 else f"rho_l out of [0, 1) (got {rho_l!r})",
            None if delta >= 0.0 else f"delta negative (got {delta!r})",
        ) if v
    ]
    if violations:
        raise InvalidParams("; ".join(violations))
    if rho_l == 0.0:
        warnings.warn(
            "rho_l = 0 gives the identity correlation; rho_a is unidentifiable "
            "and returned as 0 by convention",
            UnidentifiableWarning,
            stacklevel=2,
        )
        return 0.0, 0.0
    return rho_l, rho_l ** (delta / d_range)


def map_arma11_to_lear(tau: float, rho_a: float, d_range: float) -> tuple[float, float]:
    """Inverse map on raw values: (tau, rho_a) to (rho_l, delta)."""
    if not (math.isfinite(d_range) and d_range > 0.0):
        raise DegenerateRange(
            f"distance range must be positive (got {d_range!r})"
        )
    if tau == 0.0:
        raise Unidentifiable(
            "tau = 0 gives the identity correlation; rho_l is 0 but delta "
            "is unidentifiable"
        )
    if not (0.0 < tau < 1.0) or not (0.0 < rho_a <= 1.0):
        raise OutsideLearImage(
            f"(tau={tau!r}, rho_a={rho_a!r}) is outside the image "
            "0 < tau < 1, 0 < rho_a <= 1 of the forward map"
        )
    return tau, d_range * math.log(rho_a) / math.log(tau)


def lear_to_arma(params: LearParams, grid: MeasurementGrid) -> Arma11Params:
    """Map LEAR parameters to the ARMA(1,1) parameters with equal covariance.

    The grid must be eligible (see :func:`check_special_case`); parameters
    are interpreted on its normalized form, where the returned parameters
    satisfy arma11_covariance == lear_covariance entry for entry.
    """
    d_range = _canonical_range(grid)
    tau, rho_a = map_lear_to_arma11(params.rho_l, params.delta, d_range)
    return Arma11Params(params.sigma2, tau, rho_a)


def arma_to_lear(params: Arma11Params, grid: MeasurementGrid) -> LearParams:
    """Inverse of :func:`lear_to_arma` on the same grid."""
    d_range = _canonical_range(grid)
    rho_l, delta = map_arma11_to_lear(params.tau, params.rho_a, d_range)
    return LearParams(params.sigma2, rho_l, delta)


def correlation_at_distance(
    params: LearParams, grid: MeasurementGrid, distance: float
) -> float:
    """Model correlation at a separation given on the grid's original scale.

    For a normalized grid the recorded spacing converts the requested
    distance into spacing units first, so parameters fitted after
    normalization can be read out against original-scale separations.
    The distance must be at least one minimum distance; below that the
    exponent is extrapolated outside the model's domain.
    """
    h = grid.spacing if grid.spacing is not None else 1.0
    d = distance / h
    if not (math.isfinite(d) and d >= grid.d_min):
        raise InvalidParams(
            f"distance {distance!r} is below the minimum distance "
            f"{grid.d_min * h!r} on the original scale"
        )
    r = grid.d_max - grid.d_min
    fraction = (d - grid.d_min) / r if r > 0 else 0.0
    if params.rho_l == 0.0:
        return 0.0
    return params.rho_l ** (grid.d_min + params.delta * fraction)
