"""Deterministic Gaussian repeated-measures simulation.

Each subject's response is y_i = X_i beta + L_i z_i with L_i the lower
Cholesky factor of the subject's covariance matrix and z_i independent
standard normals.

Reproducibility contract: subject i's normals come from a Philox4x64-10
counter generator keyed by the two 64-bit words (seed, i). Each raw 64-bit
word w becomes the uniform ((w >> 11) + 0.5) * 2**-53, strictly inside
(0, 1), which is then mapped through the standard normal inverse CDF. The
stream therefore depends only on (seed, subject index), never on how many
subjects exist or in what order they are generated, so identical specs give
bit-identical datasets on any platform and at any thread count.

Set LEARCOV_THREADS to simulate subjects in parallel; the default is
sequential.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .core import (
    Arma11Params,
    LearParams,
    arma11_covariance,
    build_grid,
    cholesky_lower,
    lear_covariance,
)
from .errors import InvalidGrid, InvalidParams, InvalidSize
from .estimation import RepeatedMeasuresData, SubjectData

__all__ = ["SimSpec", "simulate", "standard_normals"]

DESIGN_RULES = ("intercept", "intercept-time")
THREADS_ENV_VAR = "LEARCOV_THREADS"


def standard_normals(seed: int, subject_index: int, n: int) -> np.ndarray:
    """Subject's standard normal draws; see the module reproducibility note."""
    key = np.array([seed, subject_index], dtype=np.uint64)
    raw = np.random.Philox(key=key).random_raw(n)
    u = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0 ** -53
    return ndtri(u)


def _validate_template(t, index: int) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidGrid(f"time template {index} must be a nonempty 1-d array")
    if not np.all(np.isfinite(arr)):
        raise InvalidGrid(f"time template {index} contains non-finite values")
    if arr.size > 1 and not np.all(np.diff(arr) > 0):
        raise InvalidGrid(f"time template {index} must be strictly increasing")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SimSpec:
    """What to simulate.

    ``times`` holds one or more time templates; subject i uses template
    i mod len(times), so unbalanced designs cycle through the templates.
    ``design`` is "intercept", "intercept-time", or a sequence of explicit
    design matrices aligned with the templates. ``covariance`` decides the
    generating structure: LearParams builds distance-based matrices on the
    pooled grid of the realized subjects; Arma11Params builds position-based
    matrices.
    """

    n_subjects: int
    times: tuple
    beta: np.ndarray
    covariance: LearParams | Arma11Params
    seed: int
    design: str | tuple = "intercept"

    def __post_init__(self) -> None:
        if not isinstance(self.n_subjects, (int, np.integer)) or isinstance(
            self.n_subjects, bool
        ):
            raise InvalidSize("n_subjects must be an integer")
        if self.n_subjects < 1:
            raise InvalidSize("n_subjects must be at least 1")
        raw_times = self.times
        if isinstance(raw_times, np.ndarray) and raw_times.ndim == 1:
            raw_times = (raw_times,)
        try:
            templates = tuple(
                _validate_template(t, i) for i, t in enumerate(raw_times)
            )
        except TypeError as exc:
            raise InvalidGrid("times must be a sequence of time templates") from exc
        if not templates:
            raise InvalidGrid("need at least one time template")
        object.__setattr__(self, "times", templates)
        beta = np.asarray(self.beta, dtype=float)
        if beta.ndim != 1 or beta.size == 0 or not np.all(np.isfinite(beta)):
            raise InvalidSize("beta must be a nonempty finite 1-d array")
        beta.setflags(write=False)
        object.__setattr__(self, "beta", beta)
        if not isinstance(self.covariance, (LearParams, Arma11Params)):
            raise InvalidParams(
                "covariance must be a LearParams or Arma11Params instance"
            )
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise InvalidParams("seed must be an integer")
        if not (0 <= int(self.seed) < 2 ** 64):
            raise InvalidParams("seed must lie in [0, 2**64)")
        object.__setattr__(self, "seed", int(self.seed))
        design = self.design
        if isinstance(design, str):
            if design not in DESIGN_RULES:
                raise InvalidParams(
                    f"design must be one of {DESIGN_RULES} or explicit matrices "
                    f"(got {design!r})"
                )
            q = 1 if design == "intercept" else 2
        else:
            mats = tuple(np.asarray(m, dtype=float) for m in design)
            if len(mats) != len(templates):
                raise InvalidSize(
                    f"got {len(mats)} design matrices for {len(templates)} "
                    f"time templates"
                )
            q = None
            for i, (m, t) in enumerate(zip(mats, templates)):
                if m.ndim != 2 or m.shape[0] != t.size:
                    raise InvalidSize(
                        f"design matrix {i} has shape {m.shape}, expected "
                        f"({t.size}, q)"
                    )
                if not np.all(np.isfinite(m)):
                    raise InvalidSize(f"design matrix {i} contains non-finite values")
                if q is None:
                    q = m.shape[1]
                elif m.shape[1] != q:
                    raise InvalidSize("design matrices must share a column count")
                m.setflags(write=False)
            if q == 0:
                raise InvalidSize("design matrices need at least one column")
            object.__setattr__(self, "design", mats)
        if beta.size != q:
            raise InvalidSize(
                f"beta has length {beta.size} but the design has {q} columns"
            )

    def design_matrix(self, template_index: int) -> np.ndarray:
        t = self.times[template_index]
        if self.design == "intercept":
            return np.ones((t.size, 1))
        if self.design == "intercept-time":
            return np.column_stack([np.ones(t.size), t])
        return self.design[template_index]


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        count = int(raw)
    except ValueError:
        raise InvalidParams(
            f"{THREADS_ENV_VAR} must be a positive integer (got {raw!r})"
        ) from None
    if count < 1:
        raise InvalidParams(
            f"{THREADS_ENV_VAR} must be a positive integer (got {raw!r})"
        )
    return count


def simulate(spec: SimSpec) -> RepeatedMeasuresData:
    """Draw a dataset from ``spec``; same spec, same bytes, every time."""
    n_templates = len(spec.times)
    subject_template = [i % n_templates for i in range(spec.n_subjects)]
    subject_times = [spec.times[k] for k in subject_template]

    used = sorted(set(subject_template))
    factors: dict[int, np.ndarray] = {}
    if isinstance(spec.covariance, LearParams):
        grid = build_grid([spec.times[k] for k in used])
        for pos, k in enumerate(used):
            factors[k] = cholesky_lower(lear_covariance(spec.covariance, grid, pos))
    else:
        for k in used:
            factors[k] = cholesky_lower(
                arma11_covariance(spec.covariance, spec.times[k].size)
            )
    designs = {k: spec.design_matrix(k) for k in used}

    def draw(i: int) -> SubjectData:
        k = subject_template[i]
        t = spec.times[k]
        X = designs[k]
        z = standard_normals(spec.seed, i, t.size)
        y = X @ spec.beta + factors[k] @ z
        return SubjectData(t, y, X)

    threads = _thread_count()
    if threads == 1:
        subjects = [draw(i) for i in range(spec.n_subjects)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            subjects = list(pool.map(draw, range(spec.n_subjects)))
    return RepeatedMeasuresData(tuple(subjects))
