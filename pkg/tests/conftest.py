"""Shared fixtures, naive reference implementations, and the acceptance log.

The naive builders below recompute matrices entry by entry with explicit
loops so vectorized production code is checked against something written a
different way.
"""
from __future__ import annotations

import numpy as np

import learcov as lc

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


def record_criterion(number: int, name: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"[criterion {number}] {status} {name}: {detail}")
    assert ok, f"criterion {number} ({name}): {detail}"


def naive_lear_matrix(sigma2, rho_l, delta, times, d_min, d_max) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    p = times.size
    out = np.empty((p, p))
    for j in range(p):
        for k in range(p):
            if j == k:
                out[j, k] = sigma2
                continue
            d = abs(times[j] - times[k])
            if d_max > d_min:
                expo = d_min + delta * (d - d_min) / (d_max - d_min)
            else:
                expo = d_min
            out[j, k] = sigma2 * rho_l ** expo
    return out


def naive_arma11_matrix(sigma2, tau, rho_a, p: int) -> np.ndarray:
    out = np.empty((p, p))
    for j in range(p):
        for k in range(p):
            if j == k:
                out[j, k] = sigma2
            else:
                out[j, k] = sigma2 * tau * rho_a ** (abs(j - k) - 1)
    return out


def simulated_dataset(
    n_subjects: int,
    times,
    seed: int,
    sigma2: float = 1.0,
    rho_l: float = 0.5,
    delta: float = 3.0,
    beta=(1.0,),
    design: str = "intercept",
) -> lc.RepeatedMeasuresData:
    spec = lc.SimSpec(
        n_subjects=n_subjects,
        times=(np.asarray(times, dtype=float),),
        beta=np.asarray(beta, dtype=float),
        covariance=lc.LearParams(sigma2, rho_l, delta),
        seed=seed,
        design=design,
    )
    return lc.simulate(spec)
