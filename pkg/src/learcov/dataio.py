"""Long-format CSV ingest/emit and the JSON simulation-spec loader.

Long format: one row per measurement, UTF-8, header row required, RFC-4180
quoting. Default column names are "subject", "time", "y"; extra columns are
ignored unless explicitly named as design covariates. Subjects keep their
order of first appearance and rows are sorted by time within subject, so a
shuffled file ingests to the same dataset.
"""
from __future__ import annotations

import csv
import json
import math

import numpy as np

from .core import Arma11Params, LearParams
from .errors import (
    DegenerateGrid,
    DuplicateMeasurement,
    InvalidParams,
    ParseError,
)
from .estimation import RepeatedMeasuresData, SubjectData
from .sim import DESIGN_RULES, SimSpec

__all__ = [
    "read_long_csv",
    "write_long_csv",
    "load_sim_spec",
    "sim_spec_to_dict",
    "SIM_SPEC_SCHEMA_VERSION",
]

SIM_SPEC_SCHEMA_VERSION = 1


def _parse_number(text: str, row: int, column: str) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise ParseError(
            f"row {row}: cannot parse {column}={text!r} as a number"
        ) from None
    if not math.isfinite(value):
        raise ParseError(f"row {row}: {column}={text!r} is not finite")
    return value


def _design_columns(design) -> tuple[str, list[str]]:
    if isinstance(design, str):
        if design not in DESIGN_RULES:
            raise InvalidParams(
                f"design must be one of {DESIGN_RULES} or a sequence of "
                f"covariate column names (got {design!r})"
            )
        return design, []
    names = [str(c) for c in design]
    if not names:
        raise InvalidParams("covariate design needs at least one column name")
    return "covariates", names


def read_long_csv(
    path,
    subject_col: str = "subject",
    time_col: str = "time",
    y_col: str = "y",
    design="intercept",
) -> RepeatedMeasuresData:
    """Read a long-format CSV into per-subject vectors and design matrices.

    ``design`` selects the fixed-effects matrix: "intercept" gives a single
    constant column, "intercept-time" adds the measurement time, and a
    sequence of column names uses those columns verbatim (include your own
    constant column if you want one).

    Raises:
        ParseError: missing header/columns, short rows, or non-numeric
            values, all reported with their row number (header is row 1).
        DuplicateMeasurement: repeated (subject, time) pair.
        DegenerateGrid: fewer than two measurements in the whole file.
    """
    rule, covariate_cols = _design_columns(design)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file: a header row is required") from None
        positions = {}
        for name in [subject_col, time_col, y_col, *covariate_cols]:
            if name not in header:
                raise ParseError(f"missing required column {name!r} in header")
            positions[name] = header.index(name)
        needed = max(positions.values()) + 1

        order: list[str] = []
        rows_by_subject: dict[str, list[tuple]] = {}
        seen: set[tuple[str, float]] = set()
        n_rows = 0
        for row_num, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < needed:
                raise ParseError(
                    f"row {row_num}: expected at least {needed} fields, "
                    f"got {len(row)}"
                )
            sid = row[positions[subject_col]]
            t = _parse_number(row[positions[time_col]], row_num, time_col)
            yv = _parse_number(row[positions[y_col]], row_num, y_col)
            covs = tuple(
                _parse_number(row[positions[c]], row_num, c)
                for c in covariate_cols
            )
            if (sid, t) in seen:
                raise DuplicateMeasurement(
                    f"row {row_num}: duplicate measurement for subject "
                    f"{sid!r} at time {t!r}"
                )
            seen.add((sid, t))
            if sid not in rows_by_subject:
                rows_by_subject[sid] = []
                order.append(sid)
            rows_by_subject[sid].append((t, yv, covs))
            n_rows += 1

    if n_rows == 0:
        raise ParseError("no data rows after the header")
    if n_rows == 1:
        raise DegenerateGrid(
            "a single measurement defines no distances; need at least two rows"
        )

    subjects = []
    for sid in order:
        rows = sorted(rows_by_subject[sid], key=lambda r: r[0])
        t = np.array([r[0] for r in rows])
        y = np.array([r[1] for r in rows])
        if rule == "intercept":
            X = np.ones((t.size, 1))
        elif rule == "intercept-time":
            X = np.column_stack([np.ones(t.size), t])
        else:
            X = np.array([r[2] for r in rows])
        subjects.append(SubjectData(t, y, X))
    return RepeatedMeasuresData(tuple(subjects))


def write_long_csv(path, data: RepeatedMeasuresData, subject_ids=None) -> None:
    """Write subject, time, y columns with 17-significant-digit numbers.

    Design matrices are not written; they are reconstructed at ingest time
    via the design rule. Default subject ids are "s1", "s2", ...
    """
    if subject_ids is None:
        subject_ids = [f"s{i + 1}" for i in range(data.n_subjects)]
    else:
        subject_ids = [str(s) for s in subject_ids]
        if len(subject_ids) != data.n_subjects:
            raise InvalidParams(
                f"got {len(subject_ids)} subject ids for {data.n_subjects} subjects"
            )
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["subject", "time", "y"])
        for sid, subject in zip(subject_ids, data.subjects):
            for t, yv in zip(subject.times, subject.y):
                writer.writerow([sid, format(t, ".17g"), format(yv, ".17g")])


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise ParseError(f"{context}: missing required field {key!r}")
    return mapping[key]


def load_sim_spec(path) -> SimSpec:
    """Load a SimSpec from JSON.

    Expected shape (schema_version 1):

        {"schema_version": 1, "n_subjects": 100, "times": [[1, 2, 3]],
         "beta": [1.0], "design": "intercept", "seed": 42,
         "covariance": {"parameterization": "lear", "sigma2": 1.0,
                        "rho_l": 0.5, "delta": 1.0}}

    "times" may be a single template or a list of templates; "design" is
    optional and defaults to "intercept". Unknown fields are rejected so
    typos fail loudly instead of silently using defaults.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in simulation spec: {exc}") from None
    if not isinstance(raw, dict):
        raise ParseError("simulation spec must be a JSON object")
    version = _require(raw, "schema_version", "simulation spec")
    if version != SIM_SPEC_SCHEMA_VERSION:
        raise ParseError(
            f"unsupported schema_version {version!r}; this reader handles "
            f"{SIM_SPEC_SCHEMA_VERSION}"
        )
    allowed = {
        "schema_version", "n_subjects", "times", "beta", "design",
        "covariance", "seed",
    }
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ParseError(f"unknown simulation spec fields: {', '.join(unknown)}")

    cov_raw = _require(raw, "covariance", "simulation spec")
    if not isinstance(cov_raw, dict):
        raise ParseError("covariance must be a JSON object")
    kind = _require(cov_raw, "parameterization", "covariance")
    cov_fields = {
        "lear": ("sigma2", "rho_l", "delta"),
        "arma11": ("sigma2", "tau", "rho_a"),
    }
    if kind not in cov_fields:
        raise ParseError(
            f"covariance parameterization must be 'lear' or 'arma11' (got {kind!r})"
        )
    extra = sorted(set(cov_raw) - {"parameterization", *cov_fields[kind]})
    if extra:
        raise ParseError(f"unknown covariance fields: {', '.join(extra)}")
    values = [_require(cov_raw, f, "covariance") for f in cov_fields[kind]]
    for name, v in zip(cov_fields[kind], values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"covariance field {name!r} must be a number")
    cov = (LearParams if kind == "lear" else Arma11Params)(*map(float, values))

    times = _require(raw, "times", "simulation spec")
    if isinstance(times, list) and times and not isinstance(times[0], list):
        times = [times]
    design = raw.get("design", "intercept")
    if not isinstance(design, str):
        raise ParseError("design must be a string rule in simulation specs")
    return SimSpec(
        n_subjects=_require(raw, "n_subjects", "simulation spec"),
        times=tuple(np.asarray(t, dtype=float) for t in times),
        beta=np.asarray(_require(raw, "beta", "simulation spec"), dtype=float),
        covariance=cov,
        seed=_require(raw, "seed", "simulation spec"),
        design=design,
    )


def sim_spec_to_dict(spec: SimSpec) -> dict:
    """Inverse of load_sim_spec for round-tripping specs to JSON."""
    cov = spec.covariance
    if isinstance(cov, LearParams):
        cov_d = {
            "parameterization": "lear",
            "sigma2": cov.sigma2, "rho_l": cov.rho_l, "delta": cov.delta,
        }
    else:
        cov_d = {
            "parameterization": "arma11",
            "sigma2": cov.sigma2, "tau": cov.tau, "rho_a": cov.rho_a,
        }
    if not isinstance(spec.design, str):
        raise InvalidParams("explicit design matrices do not round-trip to JSON")
    return {
        "schema_version": SIM_SPEC_SCHEMA_VERSION,
        "n_subjects": spec.n_subjects,
        "times": [list(map(float, t)) for t in spec.times],
        "beta": [float(b) for b in spec.beta],
        "design": spec.design,
        "seed": spec.seed,
        "covariance": cov_d,
    }
