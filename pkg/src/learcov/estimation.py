"""Profile likelihood estimation for LEAR and ARMA(1,1) covariance models.

Model: y_i = X_i beta + e_i with e_i ~ N(0, sigma2 * Gamma_i(theta)), subjects
independent, Gamma_i a unit-diagonal correlation matrix built either from the
LEAR structure (theta = (rho_l, delta), distances from the measurement grid)
or from the ARMA(1,1) structure (theta = (tau, rho_a), integer position lags).

For fixed theta both beta and sigma2 profile out in closed form:

    beta_hat   = (sum_i X_i' G_i^-1 X_i)^-1 sum_i X_i' G_i^-1 y_i
    sigma2_hat = sum_i r_i' G_i^-1 r_i / M,   r_i = y_i - X_i beta_hat

with M = sum_i p_i for ML and M - q for REML. The REML objective additionally
subtracts 0.5 * log det(sum_i X_i' (sigma2_hat G_i)^-1 X_i). Every solve goes
through a Cholesky factor of G_i; log determinants come from the factor's
diagonal. Failure to factor raises NotPositiveDefinite rather than being
repaired.

Numerical policy: subjects sharing a time pattern share one factorization,
and all cross-subject reductions use exactly rounded summation (math.fsum),
so results are bit-identical under any reordering of the subjects.

Optimization is a coarse grid scan over the (rho-type, second-parameter) box
followed by Nelder-Mead refinement on transformed coordinates (logit for
rho-type parameters, log for delta). The refined point is only accepted if it
does not fall below the best grid point, so the scan provides a floor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular
from scipy.optimize import minimize
from scipy.special import expit, logit

from .core import (
    Arma11Params,
    LearParams,
    MeasurementGrid,
    _arma11_corr,
    _lear_corr,
    arma11_covariance,
    build_grid,
    lear_covariance,
    validate_arma11_values,
    validate_lear_values,
)
from .errors import (
    DegenerateGrid,
    DegenerateRange,
    FitFailed,
    InvalidGrid,
    InvalidParams,
    InvalidSize,
    NotPositiveDefinite,
    NotSpecialCase,
    OutsideLearImage,
    RankDeficient,
    SingularFit,
    Unidentifiable,
)
from . import reparam

__all__ = [
    "SubjectData",
    "RepeatedMeasuresData",
    "ProfileEstimates",
    "profile_estimates",
    "profile_loglik",
    "FitOptions",
    "FitResult",
    "fit",
    "ComparisonReport",
    "compare_parameterizations",
]

PARAMETERIZATIONS = ("lear", "arma11")
CRITERIA = ("ml", "reml")


@dataclass(frozen=True)
class SubjectData:
    """One subject's measurement times, responses, and design rows."""

    times: np.ndarray
    y: np.ndarray
    X: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float)
        y = np.asarray(self.y, dtype=float)
        X = np.asarray(self.X, dtype=float)
        if t.ndim != 1 or t.size == 0:
            raise InvalidGrid("times must be a nonempty 1-d array")
        if not np.all(np.isfinite(t)):
            raise InvalidGrid("times must be finite")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise InvalidGrid("times must be strictly increasing")
        if y.shape != t.shape:
            raise InvalidSize(f"y has shape {y.shape}, expected {t.shape}")
        if X.ndim != 2 or X.shape[0] != t.size:
            raise InvalidSize(f"X has shape {X.shape}, expected ({t.size}, q)")
        if not (np.all(np.isfinite(y)) and np.all(np.isfinite(X))):
            raise InvalidSize("y and X must be finite")
        for name, arr in (("times", t), ("y", y), ("X", X)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def p(self) -> int:
        return self.times.size


@dataclass(frozen=True)
class RepeatedMeasuresData:
    """Independent subjects with a common fixed-effects design width.

    The stacked design matrix must have full column rank q. Subjects may have
    different numbers of measurements; missing visits simply shorten a
    subject's vectors (no imputation happens anywhere).
    """

    subjects: tuple[SubjectData, ...]

    def __post_init__(self) -> None:
        if not self.subjects:
            raise InvalidSize("data needs at least one subject")
        object.__setattr__(self, "subjects", tuple(self.subjects))
        q = self.subjects[0].X.shape[1]
        if q == 0:
            raise InvalidSize("design matrix needs at least one column")
        for i, s in enumerate(self.subjects):
            if s.X.shape[1] != q:
                raise InvalidSize(
                    f"subject {i} has {s.X.shape[1]} design columns, expected {q}"
                )
        stacked = np.vstack([s.X for s in self.subjects])
        if np.linalg.matrix_rank(stacked) < q:
            raise RankDeficient(
                f"stacked design matrix has rank below its {q} columns"
            )
        if any(s.p > 1 for s in self.subjects):
            g = build_grid([s.times for s in self.subjects])
        else:
            g = None
        object.__setattr__(self, "_grid", g)

    @property
    def grid(self) -> MeasurementGrid:
        if self._grid is None:
            raise DegenerateGrid(
                "every subject has a single measurement; no distance is defined"
            )
        return self._grid

    @property
    def n_subjects(self) -> int:
        return len(self.subjects)

    @property
    def n_obs(self) -> int:
        return sum(s.p for s in self.subjects)

    @property
    def q(self) -> int:
        return self.subjects[0].X.shape[1]

    def with_subject_times(self, new_times) -> "RepeatedMeasuresData":
        """Copy of the data with replaced measurement times, y and X intact."""
        new_times = tuple(new_times)
        if len(new_times) != self.n_subjects:
            raise InvalidSize("need one time vector per subject")
        return RepeatedMeasuresData(
            tuple(
                SubjectData(t, s.y, s.X)
                for s, t in zip(self.subjects, new_times)
            )
        )


# --------------------------------------------------------------------------
# profile likelihood


class _Prepared:
    """Per-dataset workspace: subjects grouped by identical time pattern.

    For each pattern the per-subject [X | y] blocks are packed side by side
    into one matrix so a single triangular solve whitens the whole group.
    """

    def __init__(self, data: RepeatedMeasuresData):
        order: list[bytes] = []
        groups: dict[bytes, list[int]] = {}
        for idx, s in enumerate(data.subjects):
            key = s.times.tobytes()
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append(idx)
        self.q = data.q
        self.n = data.n_subjects
        self.M = data.n_obs
        self.patterns = []
        q = self.q
        for key in order:
            idxs = groups[key]
            p = data.subjects[idxs[0]].p
            block = np.empty((p, len(idxs) * (q + 1)))
            for j, idx in enumerate(idxs):
                s = data.subjects[idx]
                block[:, j * (q + 1): j * (q + 1) + q] = s.X
                block[:, j * (q + 1) + q] = s.y
            self.patterns.append(
                (data.subjects[idxs[0]].times, np.asarray(idxs), block, p, len(idxs))
            )
        if any(s.p > 1 for s in data.subjects):
            g = data.grid
            self.d_min, self.d_max = g.d_min, g.d_max
        else:
            # Never consulted: every pattern is a single measurement.
            self.d_min = self.d_max = 1.0


def _fsum(values: np.ndarray) -> float:
    return math.fsum(values.tolist())


def _profile_parts(prep: _Prepared, corr_builder, criterion: str):
    """Profiled log-likelihood plus the profiled beta_hat and sigma2_hat."""
    n, q, M = prep.n, prep.q, prep.M
    if criterion == "reml" and M <= q:
        raise InvalidSize(
            f"REML needs more observations ({M}) than design columns ({q})"
        )
    logdet_s = np.empty(n)
    xtx_s = np.empty((n, q, q))
    xty_s = np.empty((n, q))
    whitened = []
    for times, idxs, block, p, m in prep.patterns:
        corr = corr_builder(times, p)
        try:
            L = np.linalg.cholesky(corr)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefinite(
                f"correlation matrix for a {p}-measurement pattern is not "
                f"positive definite"
            ) from exc
        logdet = 2.0 * math.fsum(map(math.log, np.diag(L)))
        W = solve_triangular(L, block, lower=True, check_finite=False)
        W3 = W.reshape(p, m, q + 1)
        Xw = W3[:, :, :q]
        yw = W3[:, :, q]
        logdet_s[idxs] = logdet
        xtx_s[idxs] = np.einsum("pma,pmb->mab", Xw, Xw)
        xty_s[idxs] = np.einsum("pma,pm->ma", Xw, yw)
        whitened.append((idxs, Xw, yw))

    # Exactly rounded cross-subject sums: results do not depend on the order
    # subjects were supplied in.
    A = np.array([[_fsum(xtx_s[:, a, b]) for b in range(q)] for a in range(q)])
    bvec = np.array([_fsum(xty_s[:, a]) for a in range(q)])
    try:
        La = np.linalg.cholesky(A)
    except np.linalg.LinAlgError as exc:
        raise RankDeficient(
            "whitened normal equations are singular; the design is rank "
            "deficient under this correlation"
        ) from exc
    beta = solve_triangular(
        La.T, solve_triangular(La, bvec, lower=True, check_finite=False),
        lower=False, check_finite=False,
    )

    quad_s = np.empty(n)
    for idxs, Xw, yw in whitened:
        resid = yw - np.einsum("pma,a->pm", Xw, beta)
        quad_s[idxs] = np.einsum("pm,pm->m", resid, resid)
    quad = _fsum(quad_s)
    sum_logdet = _fsum(logdet_s)

    denom = M if criterion == "ml" else M - q
    sigma2 = quad / denom
    if sigma2 <= 0.0:
        raise SingularFit("residual quadratic form is zero; sigma2_hat = 0")
    if criterion == "ml":
        loglik = -0.5 * (M * math.log(2.0 * math.pi * sigma2) + sum_logdet + M)
    else:
        adjustment = 2.0 * math.fsum(map(math.log, np.diag(La))) - q * math.log(sigma2)
        loglik = -0.5 * (
            M * math.log(2.0 * math.pi * sigma2)
            + sum_logdet
            + (M - q)
            + adjustment
        )
    return loglik, beta, sigma2


def _corr_builder(parameterization: str, a: float, b: float, prep: _Prepared):
    if parameterization == "lear":
        d_min, d_max = prep.d_min, prep.d_max
        return lambda times, p: _lear_corr(a, b, times, d_min, d_max)
    return lambda times, p: _arma11_corr(a, b, p)


@dataclass(frozen=True)
class ProfileEstimates:
    """Log-likelihood and the profiled-out nuisance optima at fixed theta."""

    loglik: float
    beta_hat: np.ndarray
    sigma2_hat: float


def profile_estimates(
    data: RepeatedMeasuresData,
    corr_params,
    criterion: str = "ml",
    parameterization: str = "lear",
) -> ProfileEstimates:
    """Profiled Gaussian log-likelihood at fixed correlation parameters.

    Args:
        data: subjects to evaluate.
        corr_params: pair (rho_l, delta) or (tau, rho_a) depending on
            ``parameterization``.
        criterion: "ml" or "reml".
        parameterization: "lear" (distance based) or "arma11" (position
            based; sensible on unit-spaced grids).

    beta and sigma2 are profiled out at their closed-form optima, so the
    log-likelihood is a function of the correlation parameters alone.
    """
    if criterion not in CRITERIA:
        raise InvalidParams(f"criterion must be one of {CRITERIA} (got {criterion!r})")
    if parameterization not in PARAMETERIZATIONS:
        raise InvalidParams(
            f"parameterization must be one of {PARAMETERIZATIONS} "
            f"(got {parameterization!r})"
        )
    a, b = (float(v) for v in corr_params)
    if parameterization == "lear":
        violations = validate_lear_values(1.0, a, b)
    else:
        violations = validate_arma11_values(1.0, a, b)
    if violations:
        raise InvalidParams("; ".join(violations))
    prep = _Prepared(data)
    loglik, beta, sigma2 = _profile_parts(
        prep, _corr_builder(parameterization, a, b, prep), criterion
    )
    return ProfileEstimates(loglik, beta, sigma2)


def profile_loglik(
    data: RepeatedMeasuresData,
    corr_params,
    criterion: str = "ml",
    parameterization: str = "lear",
) -> float:
    """Value-only convenience wrapper around :func:`profile_estimates`."""
    return profile_estimates(data, corr_params, criterion, parameterization).loglik


# --------------------------------------------------------------------------
# fitting


@dataclass(frozen=True)
class FitOptions:
    """Knobs for the grid scan and the Nelder-Mead refinement.

    ``rho_cap`` bounds rho-type parameters away from 1. ``delta_cap_factor``
    times the distance range caps delta; the likelihood flattens as delta
    grows, so the cap ends the search and is reported through boundary flags
    instead of being treated as an interior optimum. ``allow_negative``
    widens the ARMA(1,1) box to (-rho_cap, rho_cap) for both parameters and
    is ignored for the LEAR parameterization. ``boundary_tol`` is relative to
    each box width.
    """

    grid_points: int = 21
    rho_cap: float = 0.99
    delta_cap_factor: float = 5.0
    max_iterations: int = 400
    tolerance: float = 1e-10
    allow_negative: bool = False
    boundary_tol: float = 1e-6

    def __post_init__(self) -> None:
        problems = []
        if self.grid_points < 2:
            problems.append("grid_points must be at least 2")
        if not (0.0 < self.rho_cap < 1.0):
            problems.append("rho_cap must be in (0, 1)")
        if not (self.delta_cap_factor > 0.0):
            problems.append("delta_cap_factor must be positive")
        if self.max_iterations < 1:
            problems.append("max_iterations must be at least 1")
        if not (self.tolerance > 0.0):
            problems.append("tolerance must be positive")
        if not (0.0 < self.boundary_tol < 0.5):
            problems.append("boundary_tol must be in (0, 0.5)")
        if problems:
            raise InvalidParams("; ".join(problems))


@dataclass(frozen=True)
class FitResult:
    """Outcome of a covariance model fit.

    ``boundary_flags`` uses rho_* for the first box dimension (rho_l or tau)
    and delta_* for the second (delta or rho_a). ``converged`` reflects the
    Nelder-Mead refinement; when the refinement cannot improve on the grid
    scan the scan's best point is returned and the flag still reports the
    refinement's status. ``scan_max_loglik`` is the grid-scan floor, so
    ``max_loglik >= scan_max_loglik`` always holds.
    """

    parameterization: str
    criterion: str
    estimates: LearParams | Arma11Params
    beta_hat: np.ndarray
    max_loglik: float
    converged: bool
    iterations: int
    boundary_flags: frozenset[str]
    scan_max_loglik: float
    n_scan_failures: int

    def to_dict(self) -> dict:
        est = self.estimates
        if isinstance(est, LearParams):
            est_d = {"sigma2": est.sigma2, "rho_l": est.rho_l, "delta": est.delta}
        else:
            est_d = {"sigma2": est.sigma2, "tau": est.tau, "rho_a": est.rho_a}
        return {
            "parameterization": self.parameterization,
            "criterion": self.criterion,
            "estimates": est_d,
            "beta_hat": [float(v) for v in self.beta_hat],
            "max_loglik": self.max_loglik,
            "converged": self.converged,
            "iterations": self.iterations,
            "boundary_flags": sorted(self.boundary_flags),
            "scan_max_loglik": self.scan_max_loglik,
            "n_scan_failures": self.n_scan_failures,
        }


def _scan(axis1, axis2, loglik_at):
    """Grid scan; ties broken by the smaller second then first parameter."""
    best = None
    failures = 0
    for a in axis1:
        for b in axis2:
            try:
                ll = loglik_at(float(a), float(b))
            except (NotPositiveDefinite, SingularFit):
                failures += 1
                continue
            key = (ll, -float(b), -float(a))
            if best is None or key > best:
                best = key
    return best, failures


def fit(
    data: RepeatedMeasuresData,
    parameterization: str = "lear",
    criterion: str = "ml",
    options: FitOptions | None = None,
) -> FitResult:
    """Maximize the profiled log-likelihood over the correlation parameters.

    The LEAR parameterization works on any grid. The ARMA(1,1)
    parameterization requires an eligible grid (common gap, integer
    distances, unit minimum; see reparam.check_special_case) because its
    lags are measurement positions.

    Raises:
        DegenerateRange: the pooled distance range is zero, leaving the
            second correlation parameter with nothing to act on.
        NotSpecialCase: ARMA(1,1) requested on an ineligible grid.
        FitFailed: every grid point failed to evaluate.
    """
    if criterion not in CRITERIA:
        raise InvalidParams(f"criterion must be one of {CRITERIA} (got {criterion!r})")
    if parameterization not in PARAMETERIZATIONS:
        raise InvalidParams(
            f"parameterization must be one of {PARAMETERIZATIONS} "
            f"(got {parameterization!r})"
        )
    opts = options or FitOptions()
    grid = data.grid
    d_range = grid.d_max - grid.d_min
    if d_range <= 0.0:
        which = "delta" if parameterization == "lear" else "rho_a"
        raise DegenerateRange(
            f"all pairwise distances are equal, so {which} is unidentifiable; "
            "refusing to estimate it"
        )
    if parameterization == "arma11":
        report = reparam.check_special_case(grid)
        if not report.eligible:
            raise NotSpecialCase(
                "ARMA(1,1) fitting needs a grid reducible to unit-spaced "
                "integer distances"
            )

    prep = _Prepared(data)

    def loglik_at(a: float, b: float) -> float:
        return _profile_parts(
            prep, _corr_builder(parameterization, a, b, prep), criterion
        )[0]

    widen = opts.allow_negative and parameterization == "arma11"
    lo1 = -opts.rho_cap if widen else 0.0
    if parameterization == "lear":
        lo2, cap2 = 0.0, opts.delta_cap_factor * d_range
    else:
        lo2, cap2 = (-opts.rho_cap if widen else 0.0), opts.rho_cap
    axis1 = np.linspace(lo1, opts.rho_cap, opts.grid_points)
    axis2 = np.linspace(lo2, cap2, opts.grid_points)

    best, n_failures = _scan(axis1, axis2, loglik_at)
    if best is None:
        raise FitFailed(
            f"all {opts.grid_points ** 2} grid points failed "
            f"(not positive definite or singular)"
        )
    scan_ll, scan_b, scan_a = best[0], -best[1], -best[2]

    # Transform to unconstrained coordinates so the simplex stays interior:
    # scaled logit for rho-type parameters, log for delta. The delta cap is
    # enforced by clamping inside the objective.
    margin = 1e-8

    def to_box1(u: float) -> float:
        return lo1 + (opts.rho_cap - lo1) * expit(u)

    def from_box1(v: float) -> float:
        width = opts.rho_cap - lo1
        v = min(max(v, lo1 + margin * width), opts.rho_cap - margin * width)
        return float(logit((v - lo1) / width))

    if parameterization == "lear":
        log_cap2 = math.log(cap2)

        def to_box2(u: float) -> float:
            return cap2 if u >= log_cap2 else math.exp(u)

        def from_box2(v: float) -> float:
            return math.log(min(max(v, cap2 * margin), cap2))
    else:
        def to_box2(u: float) -> float:
            return lo2 + (cap2 - lo2) * expit(u)

        def from_box2(v: float) -> float:
            width = cap2 - lo2
            v = min(max(v, lo2 + margin * width), cap2 - margin * width)
            return float(logit((v - lo2) / width))

    def negative(u) -> float:
        a = to_box1(u[0])
        b = to_box2(u[1])
        try:
            return -loglik_at(a, b)
        except (NotPositiveDefinite, SingularFit):
            return math.inf

    start = np.array([from_box1(scan_a), from_box2(scan_b)])
    result = minimize(
        negative,
        start,
        method="Nelder-Mead",
        options={
            "maxiter": opts.max_iterations,
            "xatol": 1e-8,
            "fatol": opts.tolerance,
        },
    )
    refined_a = to_box1(result.x[0])
    refined_b = to_box2(result.x[1])
    try:
        refined_ll = loglik_at(refined_a, refined_b)
    except (NotPositiveDefinite, SingularFit):
        refined_ll = -math.inf

    # The refinement never wins with a worse value than the scan floor.
    if refined_ll >= scan_ll:
        final_a, final_b = refined_a, refined_b
    else:
        final_a, final_b = scan_a, scan_b
    final_ll, beta_hat, sigma2_hat = _profile_parts(
        prep, _corr_builder(parameterization, final_a, final_b, prep), criterion
    )

    flags = set()
    tol1 = opts.boundary_tol * (opts.rho_cap - lo1)
    tol2 = opts.boundary_tol * (cap2 - lo2)
    if final_a <= lo1 + tol1:
        flags.add("rho_at_lower")
    if final_a >= opts.rho_cap - tol1:
        flags.add("rho_at_upper_cap")
    if final_b <= lo2 + tol2:
        flags.add("delta_at_lower")
    if final_b >= cap2 - tol2:
        flags.add("delta_at_upper_cap")

    if parameterization == "lear":
        estimates = LearParams(sigma2_hat, final_a, final_b)
    else:
        estimates = Arma11Params(sigma2_hat, final_a, final_b)
    return FitResult(
        parameterization=parameterization,
        criterion=criterion,
        estimates=estimates,
        beta_hat=beta_hat,
        max_loglik=final_ll,
        converged=bool(result.success),
        iterations=int(result.nit),
        boundary_flags=frozenset(flags),
        scan_max_loglik=scan_ll,
        n_scan_failures=n_failures,
    )


# --------------------------------------------------------------------------
# dual-parameterization comparison


@dataclass(frozen=True)
class ComparisonReport:
    """Both fits on the same data plus an agreement summary.

    Fitting happens on the normalized (unit gap) grid so the LEAR parameters
    are in spacing units, comparable with the position-based ARMA(1,1) ones.
    The implied covariance matrices are evaluated for ``reference_subject``
    (the first subject with the most measurements). Optimizer outcomes can
    differ between parameterizations; this report surfaces both honestly
    rather than assuming they agree.
    """

    criterion: str
    spacing: float
    lear: FitResult
    arma11: FitResult
    loglik_difference: float
    reference_subject: int
    lear_covariance: np.ndarray
    arma11_covariance: np.ndarray
    max_covariance_difference: float
    arma_mapped_to_lear: LearParams | None
    mapping_note: str | None

    def to_dict(self) -> dict:
        mapped = None
        if self.arma_mapped_to_lear is not None:
            m = self.arma_mapped_to_lear
            mapped = {"sigma2": m.sigma2, "rho_l": m.rho_l, "delta": m.delta}
        return {
            "criterion": self.criterion,
            "spacing": self.spacing,
            "lear": self.lear.to_dict(),
            "arma11": self.arma11.to_dict(),
            "loglik_difference": self.loglik_difference,
            "reference_subject": self.reference_subject,
            "lear_covariance": self.lear_covariance.tolist(),
            "arma11_covariance": self.arma11_covariance.tolist(),
            "max_covariance_difference": self.max_covariance_difference,
            "arma_mapped_to_lear": mapped,
            "mapping_note": self.mapping_note,
        }


def compare_parameterizations(
    data: RepeatedMeasuresData,
    criterion: str = "ml",
    options: FitOptions | None = None,
) -> ComparisonReport:
    """Fit both parameterizations on eligible data and report agreement.

    The two likelihood surfaces describe the same model family, but the
    optimizer may end up at different points, so equality of the estimated
    covariances is checked, not assumed.
    """
    report = reparam.check_special_case(data.grid)
    if not report.eligible:
        raise NotSpecialCase(
            "comparison needs a grid reducible to unit-spaced integer distances"
        )
    normalized = reparam.normalize_grid(data.grid)
    data_n = data.with_subject_times(normalized.subject_times)

    lear_fit = fit(data_n, "lear", criterion, options)
    arma_fit = fit(data_n, "arma11", criterion, options)

    sizes = [s.p for s in data_n.subjects]
    reference = int(np.argmax(sizes))
    p_ref = sizes[reference]
    cov_lear = lear_covariance(lear_fit.estimates, data_n.grid, reference)
    cov_arma = arma11_covariance(arma_fit.estimates, p_ref)
    max_diff = float(np.max(np.abs(cov_lear - cov_arma)))

    mapped = None
    note = None
    try:
        mapped = reparam.arma_to_lear(arma_fit.estimates, data_n.grid)
    except (OutsideLearImage, Unidentifiable, DegenerateRange) as exc:
        note = f"{type(exc).token}: {exc}"

    return ComparisonReport(
        criterion=criterion,
        spacing=float(report.spacing),
        lear=lear_fit,
        arma11=arma_fit,
        loglik_difference=abs(lear_fit.max_loglik - arma_fit.max_loglik),
        reference_subject=reference,
        lear_covariance=cov_lear,
        arma11_covariance=cov_arma,
        max_covariance_difference=max_diff,
        arma_mapped_to_lear=mapped,
        mapping_note=note,
    )
