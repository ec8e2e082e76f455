"""Empirical moments over twist families and their comparison with the main term."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import lvalue, mainterm, specfun
from .arith import TwistFamily
from .config import RunConfig
from .eigenform import EigenformTable, load_table
from .errors import DomainError, IntegrityError

CSV_COLUMNS = ("X", "family_size", "S_emp", "S_main", "ratio", "c3_fit", "audit_max_rel_err")


class Session:
    """Shared read-only state: eigenvalue table, main-term evaluator, coefficients."""

    def __init__(self, config: RunConfig | None = None, table: EigenformTable | None = None):
        self.config = config or RunConfig()
        self._table = table

    @property
    def table(self) -> EigenformTable:
        if self._table is None:
            self._table = load_table(self.config.weight, self.config.table_limit, self.config.cache())
        return self._table

    @cached_property
    def evaluator(self) -> mainterm.MainTermEvaluator:
        return mainterm.MainTermEvaluator(self.table, self.config.prime_cutoff, self.config.smoothing)

    @cached_property
    def coefficients(self) -> mainterm.TheoremCoefficients:
        return mainterm.theorem_coefficients(self.evaluator)


# --- per-member work ---------------------------------------------------------------

_WORKER_TABLE: EigenformTable | None = None


def _init_worker(weight: int, limit: int, cache_dir: str | None) -> None:
    global _WORKER_TABLE
    _WORKER_TABLE = load_table(weight, limit, cache_dir)


def _derivatives(table, ds, eps, kernel, grid_points) -> np.ndarray:
    return np.array([lvalue.derivative_central(table, d, eps, kernel, grid_points).value for d in ds])


def _derivatives_worker(args) -> np.ndarray:
    return _derivatives(_WORKER_TABLE, *args)


def _chunks(seq, size):
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def compute_derivatives(session: Session, ds: list[int]) -> np.ndarray:
    """L'(1/2) for every d; fixed chunks so the result does not depend on scheduling."""
    cfg = session.config
    chunks = _chunks(ds, cfg.chunk_size)
    args = [(c, cfg.target_eps, cfg.kernel, cfg.grid_points) for c in chunks]
    if cfg.workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(cfg.workers, initializer=_init_worker,
                                 initargs=(cfg.weight, cfg.table_limit, cfg.cache())) as pool:
            parts = list(pool.map(_derivatives_worker, args))
    else:
        parts = [_derivatives(session.table, *a) for a in args]
    return np.concatenate(parts) if parts else np.zeros(0)


def audit_indices(n: int, fraction: float) -> list[int]:
    """Evenly spaced members (always at least one) for the contour audit."""
    if n == 0 or fraction <= 0:
        return []
    step = max(1, round(1.0 / fraction))
    return list(range(0, n, step))


# --- moments -----------------------------------------------------------------------


@dataclass
class MomentRow:
    X: float
    family_size: int
    S_emp: float
    S_main: float
    ratio: float
    c3_fit: float | None = None
    audit_max_rel_err: float = 0.0
    audited: list[int] = field(default_factory=list)

    def csv_fields(self) -> list[str]:
        c3 = "" if self.c3_fit is None else repr(float(self.c3_fit))
        return [repr(float(self.X)), str(self.family_size), repr(float(self.S_emp)), repr(float(self.S_main)),
                repr(float(self.ratio)), c3, repr(float(self.audit_max_rel_err))]


def empirical_moment(session: Session, X: float) -> MomentRow:
    """sum* over odd square-free d of L'(1/2, f x chi_8d)^2 Phi(8d/X)."""
    if X < 100:
        raise DomainError("empirical moments need X >= 100")
    cfg = session.config
    family = TwistFamily.for_scale(X, specfun.PHI_SUPPORT)
    ds = family.ds
    weights = np.asarray(specfun.phi(8.0 * np.asarray(ds, dtype=float) / X))
    derivs = compute_derivatives(session, ds)
    worst = 0.0
    audited = []
    for i in audit_indices(len(ds), cfg.audit_fraction):
        ref = lvalue.derivative_contour(session.table, family.members[i], cfg.contour_c, cfg.target_eps).value
        err = abs(derivs[i] - ref) / max(1.0, abs(ref))
        audited.append(ds[i])
        worst = max(worst, float(err))
        if err > cfg.audit_tol:
            raise IntegrityError(f"audit at d={ds[i]}: series {derivs[i]!r} vs contour {ref!r} (rel {err:.2e})")
    terms = derivs * derivs * weights
    parts = [math.fsum(c) for c in _chunks(terms, cfg.chunk_size)]
    S = math.fsum(parts)
    main = mainterm.main_prediction(session.coefficients, X)
    return MomentRow(float(X), len(ds), S, main, S / main, None, worst, audited)


@dataclass
class ShiftedMomentRow:
    X: float
    alpha: float
    beta: float
    family_size: int
    LHS: float
    RHS: float
    ratio: float


def shifted_lhs(session: Session, X: float, alpha: float, beta: float) -> tuple[float, int]:
    cfg = session.config
    family = TwistFamily.for_scale(X, specfun.PHI_SUPPORT)
    terms = []
    for m in family.members:
        w = float(specfun.phi(8.0 * m.d / X))
        la = lvalue.completed_lambda(session.table, m, alpha, cfg.target_eps).value
        lb = lvalue.completed_lambda(session.table, m, beta, cfg.target_eps).value
        terms.append(la * lb * w / (8 * m.d / (2 * math.pi)))
    return math.fsum(terms), len(family)


def shifted_empirical_moment(session: Session, X: float, alpha: float, beta: float) -> ShiftedMomentRow:
    if alpha == 0 or beta == 0 or abs(alpha) > 0.05 or abs(beta) > 0.05 or abs(alpha) == abs(beta):
        raise DomainError("need 0 < |alpha|, |beta| <= 0.05 and alpha != +-beta")
    lhs, size = shifted_lhs(session, X, alpha, beta)
    rhs = mainterm.shifted_main_combination(session.evaluator, alpha, beta, X)
    return ShiftedMomentRow(float(X), float(alpha), float(beta), size, lhs, rhs, lhs / rhs)


# --- sweep and report ------------------------------------------------------------


def fit_log_polynomial(X, S) -> np.ndarray | None:
    """Least-squares coefficients of S/X on (log^3 X, log^2 X, log X, 1); None below 4 points."""
    X = np.asarray(X, dtype=float)
    if X.size < 4:
        return None
    L = np.log(X)
    A = np.stack([L**3, L**2, L, np.ones_like(L)], axis=1)
    coef, *_ = np.linalg.lstsq(A, np.asarray(S, dtype=float) / X, rcond=None)
    return coef


def trend_steps(rows: list[MomentRow]) -> list[bool]:
    """For each consecutive pair: did |ratio - 1| not increase?"""
    dev = [abs(r.ratio - 1.0) for r in rows]
    return [b <= a for a, b in zip(dev, dev[1:])]


@dataclass
class SweepReport:
    rows: list[MomentRow]
    fit: list[float] | None
    notice: str
    coefficients: dict
    trend: list[bool]

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow(r.csv_fields())
        return buf.getvalue()

    def json_text(self) -> str:
        payload = {
            "columns": list(CSV_COLUMNS),
            "rows": [asdict(r) for r in self.rows],
            "fit": None if self.fit is None else dict(zip(("log3", "log2", "log1", "const"), self.fit)),
            "notice": self.notice,
            "coefficients": self.coefficients,
            "trend_non_increasing": self.trend,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def sweep(session: Session, X_list, progress=None) -> SweepReport:
    X_list = [float(x) for x in X_list]
    if X_list != sorted(X_list):
        raise DomainError("X values must be ascending")
    rows = []
    for X in X_list:
        row = empirical_moment(session, X)
        rows.append(row)
        if progress:
            progress(row)
    fit = fit_log_polynomial([r.X for r in rows], [r.S_emp for r in rows])
    notice = "" if fit is not None else "fewer than 4 X values: log-polynomial fit skipped"
    if fit is not None:
        for r in rows:
            r.c3_fit = float(fit[0])
    c = session.coefficients
    coeffs = {"c3": c.c3, "c2": c.c2, "c1": c.c1, "c0": c.c0, "c3_closed_form": c.c3_closed_form}
    return SweepReport(rows, None if fit is None else [float(v) for v in fit], notice, coeffs, trend_steps(rows))


def write_report(report: SweepReport, csv_path: str | Path, json_path: str | Path | None = None,
                 figure_dir: str | Path | None = None) -> list[Path]:
    csv_path = Path(csv_path)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    csv_path.write_text(report.csv_text())
    written = [csv_path]
    json_path = Path(json_path) if json_path else csv_path.with_suffix(".json")
    json_path.write_text(report.json_text())
    written.append(json_path)
    if figure_dir is not None:
        from .plotting import moment_figures

        written += moment_figures(report, Path(figure_dir), stem=csv_path.stem)
    return written


def geometric_steps(xmin: float, xmax: float, steps: int) -> list[float]:
    if steps < 2:
        return [float(xmin)]
    return [float(round(v)) for v in np.geomspace(xmin, xmax, steps)]
