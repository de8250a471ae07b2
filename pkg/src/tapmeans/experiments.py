"""Experiment drivers: identity suite, rate fits, brackets, reports.

Every driver takes an :class:`ExperimentConfig`, resolves the catalog
entry and modulus it names, and returns a report object that knows how to
render itself as a CSV table, a JSON document, or a console summary.
Identical config and seed produce byte-identical CSV output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .catalog import CatalogEntry, catalog_entry
from .fourier import series_norm, series_sub, synthesize
from .kfunctional import RATIO_FLOOR, k_bracket
from .moduli import (
    ModulusFunction,
    check_almost_decreasing,
    check_doubling,
    check_zygmund,
    check_zygmund_n,
    rate_envelope,
)
from .operators import (
    butzer_sunouchi,
    integral_representation_residual,
    leis_transform,
    poisson_mean,
    poisson_radial_norm,
    radial_derivative,
    smoothing_bound_constant,
    taylor_abel_poisson,
    taylor_form_values,
)

__all__ = [
    "ConfigError",
    "VerdictError",
    "ExperimentConfig",
    "CheckResult",
    "IdentityReport",
    "RateReport",
    "InverseReport",
    "ComparisonReport",
    "KBracketReport",
    "ModuliReport",
    "fit_rate",
    "geometric_rho_grid",
    "run_identity_suite",
    "run_direct_experiment",
    "run_inverse_experiment",
    "run_saturation_experiment",
    "run_comparison_experiment",
    "run_kfun_experiment",
    "run_moduli_check",
    "write_report",
    "plot_report",
]

#: errors below this are treated as exactly zero (fixed-point detection)
ZERO_ERROR = 1e-13

EXPONENT_TOL = 0.15
SATURATION_TOL = 0.10


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


class VerdictError(RuntimeError):
    """An enforced check failed while running (CLI exit code 1)."""


def geometric_rho_grid(start: float = 0.9, stop: float = 0.999, count: int = 12) -> np.ndarray:
    """rho values whose gaps 1-rho are log-spaced, sorted by 1-rho descending."""
    if not (0.0 <= start < stop < 1.0):
        raise ConfigError(f"need 0 <= start < stop < 1, got start={start} stop={stop}")
    if count < 2:
        raise ConfigError(f"need at least 2 grid points, got {count}")
    gaps = np.geomspace(1.0 - start, 1.0 - stop, count)
    return 1.0 - gaps


_CONFIG_KEYS = {
    "function", "p", "r", "n", "omega", "rho_grid", "grid_points",
    "seed", "jobs", "band",
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one experiment run."""

    function: str = "geometric:q=0.5"
    p: float = 2.0
    r: int = 1
    n: int = 1
    omega: dict | None = None
    rho_grid: tuple = ()
    grid_points: int | None = None
    seed: int = 0
    jobs: int = 1
    band: float = 20.0

    def __post_init__(self):
        p = self.p
        if isinstance(p, str):
            if p.lower() not in {"inf", "infinity"}:
                raise ConfigError(f"p must be a number >= 1 or 'inf', got {p!r}")
            p = math.inf
        p = float(p)
        if math.isnan(p) or p < 1:
            raise ConfigError(f"p must satisfy 1 <= p <= inf, got {p}")
        object.__setattr__(self, "p", p)
        if int(self.r) != self.r or self.r < 1:
            raise ConfigError(f"r must be an integer >= 1, got {self.r}")
        if int(self.n) != self.n or self.n < 1:
            raise ConfigError(f"n must be an integer >= 1, got {self.n}")
        if self.n > self.r:
            raise ConfigError(f"need n <= r, got n={self.n}, r={self.r}")
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "n", int(self.n))
        grid = self.rho_grid
        if isinstance(grid, dict):
            grid = geometric_rho_grid(
                float(grid.get("start", 0.9)),
                float(grid.get("stop", 0.999)),
                int(grid.get("count", 12)),
            )
        elif not len(grid):
            grid = geometric_rho_grid()
        grid = tuple(float(v) for v in grid)
        if any(not (0.0 <= v < 1.0) for v in grid):
            raise ConfigError("every rho must lie in [0, 1)")
        object.__setattr__(self, "rho_grid", grid)
        if self.grid_points is not None and self.grid_points < 1:
            raise ConfigError(f"grid_points must be >= 1, got {self.grid_points}")
        if int(self.jobs) != self.jobs or self.jobs < 1:
            raise ConfigError(f"jobs must be an integer >= 1, got {self.jobs}")
        object.__setattr__(self, "jobs", int(self.jobs))
        if int(self.seed) != self.seed:
            raise ConfigError(f"seed must be an integer, got {self.seed}")
        object.__setattr__(self, "seed", int(self.seed))
        if not self.band > 1.0:
            raise ConfigError(f"band must exceed 1, got {self.band}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json_file(cls, path: str) -> "ExperimentConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        return cls.from_dict(data)

    def entry(self) -> CatalogEntry:
        try:
            return catalog_entry(self.function, seed=self.seed)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def modulus(self) -> ModulusFunction:
        """Configured modulus, defaulting to t^alpha from entry metadata."""
        if self.omega is not None:
            try:
                return ModulusFunction.from_dict(self.omega)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        alpha = self.entry().smoothness.get("lip_alpha")
        if alpha is None:
            raise ConfigError(
                f"config names no omega and entry {self.function!r} declares no "
                "smoothness exponent"
            )
        return ModulusFunction.power(alpha)


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    """Stable shortest-round-trip float formatting for CSV."""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _ratio(a: float, b: float) -> float:
    return a / max(b, RATIO_FLOOR)


def _parallel_map(fn, items, jobs: int) -> list:
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    passed: bool


class _ReportBase:
    kind = "report"
    csv_header: list[str] = []

    def csv_rows(self) -> list[list]:
        raise NotImplementedError

    def to_jsonable(self) -> dict:
        raise NotImplementedError

    def summary_lines(self) -> list[str]:
        raise NotImplementedError

    @property
    def passed(self) -> bool:
        raise NotImplementedError

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.csv_header)
        for row in self.csv_rows():
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()


@dataclass
class IdentityReport(_ReportBase):
    functions: list[str]
    checks: list[CheckResult]
    kind = "identities"
    csv_header = ["check", "deviation", "tolerance", "status"]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def csv_rows(self):
        return [
            [c.name, c.deviation, c.tolerance, "pass" if c.passed else "FAIL"]
            for c in self.checks
        ]

    def to_jsonable(self):
        return {
            "kind": self.kind,
            "functions": self.functions,
            "checks": [
                {
                    "name": c.name,
                    "deviation": c.deviation,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                }
                for c in self.checks
            ],
            "passed": self.passed,
        }

    def summary_lines(self):
        lines = [f"identity suite over {len(self.functions)} entries"]
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            lines.append(
                f"  [{status}] {c.name}: deviation {c.deviation:.3e} "
                f"(tolerance {c.tolerance:.1e})"
            )
        return lines


@dataclass
class RateReport(_ReportBase):
    function: str
    p: float
    r: int
    n: int
    rhos: list[float]
    errors: list[float]
    envelope: list[float]
    fitted_exponent: float
    fit_residual: float
    expected_exponent: float | None
    band: float
    band_observed: float
    verdict: bool
    notes: list[str] = field(default_factory=list)
    kind: str = "rate"
    csv_header = ["rho", "one_minus_rho", "error", "envelope", "ratio"]

    @property
    def passed(self) -> bool:
        return self.verdict

    def csv_rows(self):
        rows = []
        for rho, err, env in zip(self.rhos, self.errors, self.envelope):
            rows.append([rho, 1.0 - rho, err, env, _ratio(err, env)])
        return rows

    def to_jsonable(self):
        return {
            "kind": self.kind,
            "function": self.function,
            "p": self.p,
            "r": self.r,
            "n": self.n,
            "rho": list(self.rhos),
            "error": list(self.errors),
            "envelope": list(self.envelope),
            "fitted_exponent": self.fitted_exponent,
            "fit_residual": self.fit_residual,
            "expected_exponent": self.expected_exponent,
            "band": self.band,
            "band_observed": self.band_observed,
            "verdict": self.verdict,
            "notes": self.notes,
        }

    def summary_lines(self):
        status = "pass" if self.verdict else "FAIL"
        lines = [
            f"{self.kind} experiment on {self.function} "
            f"(p={self.p:g}, r={self.r}, n={self.n}): {status}",
            f"  fitted exponent {self.fitted_exponent:.4f}"
            + (
                f" (expected {self.expected_exponent:.4f})"
                if self.expected_exponent is not None
                else ""
            ),
            f"  envelope ratio spread {self.band_observed:.3f} (allowed {self.band:g})",
        ]
        lines += [f"  note: {n}" for n in self.notes]
        return lines


@dataclass
class InverseReport(_ReportBase):
    function: str
    p: float
    r: int
    n: int
    rhos: list[float]
    m_values: list[float]
    m_ratios: list[float]
    k_uppers: list[float]
    k_ratios: list[float]
    band: float
    m_band_observed: float
    k_band_observed: float
    verdict: bool
    notes: list[str] = field(default_factory=list)
    kind = "inverse"
    csv_header = [
        "rho", "one_minus_rho", "radial_norm", "radial_ratio",
        "k_upper", "k_ratio",
    ]

    @property
    def passed(self) -> bool:
        return self.verdict

    def csv_rows(self):
        rows = []
        for rho, mv, mr, ku, kr in zip(
            self.rhos, self.m_values, self.m_ratios, self.k_uppers, self.k_ratios
        ):
            rows.append([rho, 1.0 - rho, mv, mr, ku, kr])
        return rows

    def to_jsonable(self):
        return {
            "kind": self.kind,
            "function": self.function,
            "p": self.p,
            "r": self.r,
            "n": self.n,
            "rho": list(self.rhos),
            "radial_norm": list(self.m_values),
            "radial_ratio": list(self.m_ratios),
            "k_upper": list(self.k_uppers),
            "k_ratio": list(self.k_ratios),
            "band": self.band,
            "radial_band_observed": self.m_band_observed,
            "k_band_observed": self.k_band_observed,
            "verdict": self.verdict,
            "notes": self.notes,
        }

    def summary_lines(self):
        status = "pass" if self.verdict else "FAIL"
        lines = [
            f"inverse experiment on {self.function} "
            f"(p={self.p:g}, r={self.r}, n={self.n}): {status}",
            f"  radial-norm ratio spread {self.m_band_observed:.3f} "
            f"(allowed {self.band:g})",
            f"  K-upper ratio spread {self.k_band_observed:.3f} "
            f"(allowed {self.band:g})",
        ]
        lines += [f"  note: {n}" for n in self.notes]
        return lines


@dataclass
class ComparisonReport(_ReportBase):
    function: str
    p: float
    r: int
    rhos: list[float]
    boundary_errors: list[float]
    semigroup_errors: list[float]
    boundary_exponent: float
    semigroup_exponent: float
    verdict: bool
    notes: list[str] = field(default_factory=list)
    kind = "compare"
    csv_header = [
        "rho", "one_minus_rho", "minus_log_rho",
        "error_boundary_taylor", "error_semigroup",
    ]

    @property
    def passed(self) -> bool:
        return self.verdict

    def csv_rows(self):
        rows = []
        for rho, eb, es in zip(self.rhos, self.boundary_errors, self.semigroup_errors):
            rows.append([rho, 1.0 - rho, -math.log(rho), eb, es])
        return rows

    def to_jsonable(self):
        return {
            "kind": self.kind,
            "function": self.function,
            "p": self.p,
            "r": self.r,
            "rho": list(self.rhos),
            "error_boundary_taylor": list(self.boundary_errors),
            "error_semigroup": list(self.semigroup_errors),
            "boundary_exponent": self.boundary_exponent,
            "semigroup_exponent": self.semigroup_exponent,
            "expected_exponent": self.r,
            "verdict": self.verdict,
            "notes": self.notes,
        }

    def summary_lines(self):
        status = "pass" if self.verdict else "FAIL"
        return [
            f"comparison experiment on {self.function} (p={self.p:g}, r={self.r}): {status}",
            f"  boundary-Taylor exponent vs (1-rho): {self.boundary_exponent:.4f} "
            f"(expected {self.r})",
            f"  semigroup exponent vs (-ln rho): {self.semigroup_exponent:.4f} "
            f"(expected {self.r})",
        ] + [f"  note: {n}" for n in self.notes]


@dataclass
class KBracketReport(_ReportBase):
    function: str
    p: float
    n: int
    deltas: list[float]
    lowers: list[float]
    uppers: list[float]
    sources: list[str]
    verdict: bool
    notes: list[str] = field(default_factory=list)
    kind = "kfun"
    csv_header = ["delta", "lower", "upper", "source"]

    @property
    def passed(self) -> bool:
        return self.verdict

    def csv_rows(self):
        return [
            [d, lo, up, src]
            for d, lo, up, src in zip(self.deltas, self.lowers, self.uppers, self.sources)
        ]

    def to_jsonable(self):
        return {
            "kind": self.kind,
            "function": self.function,
            "p": self.p,
            "n": self.n,
            "delta": list(self.deltas),
            "lower": list(self.lowers),
            "upper": list(self.uppers),
            "source": list(self.sources),
            "verdict": self.verdict,
            "notes": self.notes,
        }

    def summary_lines(self):
        status = "pass" if self.verdict else "FAIL"
        lines = [f"K-functional brackets for {self.function} (p={self.p:g}, n={self.n}): {status}"]
        for d, lo, up, src in zip(self.deltas, self.lowers, self.uppers, self.sources):
            lines.append(f"  delta={d:.6g}: [{lo:.6e}, {up:.6e}] via {src}")
        lines += [f"  note: {n}" for n in self.notes]
        return lines


@dataclass
class ModuliReport(_ReportBase):
    omega: str
    conditions: list
    kind = "moduli-check"
    csv_header = ["condition", "sup_ratio", "limit_ratio", "verdict"]

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.conditions)

    def csv_rows(self):
        return [
            [c.condition, c.sup_ratio, c.limit_ratio, "holds" if c.holds else "fails"]
            for c in self.conditions
        ]

    def to_jsonable(self):
        return {
            "kind": self.kind,
            "omega": self.omega,
            "conditions": [
                {
                    "condition": c.condition,
                    "sup_ratio": c.sup_ratio,
                    "limit_ratio": c.limit_ratio,
                    "holds": c.holds,
                    "detail": c.detail,
                }
                for c in self.conditions
            ],
            "passed": self.passed,
        }

    def summary_lines(self):
        return [f"modulus {self.omega}"] + [f"  {c}" for c in self.conditions]


# ---------------------------------------------------------------------------
# fitting
# ---------------------------------------------------------------------------

def fit_rate(pairs) -> tuple[float, float]:
    """Least-squares slope of ln(error) against ln(scale).

    Parameters
    ----------
    pairs : sequence of (scale, error)
        At least 4 pairs; scales and errors must be positive.

    Returns
    -------
    (exponent, residual) : the fitted slope and the RMS of the log-space
    fit residuals.
    """
    arr = np.asarray(list(pairs), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 4:
        raise ValueError(f"rate fit needs at least 4 (scale, error) pairs, got {arr.shape}")
    if np.any(arr <= 0.0):
        raise ValueError("rate fit needs positive scales and errors (log-log fit)")
    x = np.log(arr[:, 0])
    y = np.log(arr[:, 1])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return float(slope), resid


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------

def _binomial_normalization_deviation(k_max: int, rhos) -> float:
    """Max deviation of sum_j C(k,j)(1-rho)^j rho^(k-j) from 1, k <= k_max."""
    worst = 0.0
    for rho in rhos:
        for k in range(k_max + 1):
            if rho in (0.0, 1.0):
                total = 1.0  # single surviving term, C(k,k) or C(k,0)
            else:
                term = rho**k
                total = term
                ratio = (1.0 - rho) / rho
                for j in range(1, k + 1):
                    term *= (k - j + 1) / j * ratio
                    total += term
            worst = max(worst, abs(total - 1.0))
    return worst


_IDENTITY_RS = (1, 2, 3, 4, 5)
_IDENTITY_RHOS = (0.1, 0.5, 0.9, 0.99)
_RESIDUAL_RS = (1, 2, 3)
_RESIDUAL_RHOS = (0.5, 0.8, 0.95)
_BOUND_RHOS = (0.5, 0.9, 0.99)


def run_identity_suite(config: ExperimentConfig, entries=None) -> IdentityReport:
    """Structural identity checks; all must pass before rate fits are trusted.

    Checks: binomial normalization of the multiplier, the Taylor-form
    identity, the boundary-layer integral representation, coincidence of
    the order-1 mean with the Poisson mean, commutativity in rho, and the
    order-r derivative bound with its explicit constant.
    """
    if entries is None:
        from .catalog import standard_catalog

        if config.function in ("", "all"):
            entries = standard_catalog(seed=config.seed)
        else:
            entries = [config.entry()]
    checks: list[CheckResult] = []

    dev = _binomial_normalization_deviation(200, (0.0, 0.1, 0.5, 0.9, 0.99, 1.0))
    checks.append(CheckResult("multiplier-normalization", dev, 1e-12, dev <= 1e-12))

    dev_taylor = 0.0
    dev_poisson = 0.0
    dev_commute = 0.0
    dev_residual = 0.0
    bound_margin = 0.0
    for entry in entries:
        f = entry.series
        n_grid = max(2 * f.degree + 2, 64)
        for r in _IDENTITY_RS:
            for rho in _IDENTITY_RHOS:
                direct = synthesize(taylor_abel_poisson(f, rho, r), n_grid)
                taylor = taylor_form_values(f, rho, r, n_grid)
                dev_taylor = max(
                    dev_taylor, float(np.max(np.abs(direct.samples - taylor.samples)))
                )
        for rho in _IDENTITY_RHOS:
            a1 = taylor_abel_poisson(f, rho, 1)
            pm = poisson_mean(f, rho)
            dev_poisson = max(dev_poisson, float(np.max(np.abs(a1.coeffs - pm.coeffs))))
        for r in _RESIDUAL_RS:
            for rho in _RESIDUAL_RHOS:
                dev_residual = max(
                    dev_residual,
                    integral_representation_residual(f, rho, r, config.p),
                )
        for r in (1, 2, 3):
            for rho1, rho2 in ((0.3, 0.8), (0.5, 0.99)):
                ab = taylor_abel_poisson(taylor_abel_poisson(f, rho1, r), rho2, r)
                ba = taylor_abel_poisson(taylor_abel_poisson(f, rho2, r), rho1, r)
                dev_commute = max(dev_commute, float(np.max(np.abs(ab.coeffs - ba.coeffs))))
        norm_f = series_norm(f, config.p)
        for r in (1, 2, 3):
            c_r = smoothing_bound_constant(r)
            for rho in _BOUND_RHOS:
                lhs = series_norm(
                    radial_derivative(taylor_abel_poisson(f, rho, r), r), config.p
                )
                bound_margin = max(
                    bound_margin, lhs * (1.0 - rho) ** r / (c_r * max(norm_f, RATIO_FLOOR))
                )

    checks.append(CheckResult("taylor-form", dev_taylor, 1e-10, dev_taylor <= 1e-10))
    checks.append(
        CheckResult("integral-representation", dev_residual, 1e-8, dev_residual <= 1e-8)
    )
    checks.append(
        CheckResult("poisson-coincidence", dev_poisson, 1e-12, dev_poisson <= 1e-12)
    )
    checks.append(CheckResult("commutativity", dev_commute, 1e-12, dev_commute <= 1e-12))
    checks.append(
        CheckResult("derivative-bound", bound_margin, 1.0, bound_margin <= 1.0)
    )
    return IdentityReport(functions=[e.name for e in entries], checks=checks)


def _identity_gate(entry: CatalogEntry, r: int):
    """Fast subset of the identity suite run before any rate experiment."""
    f = entry.series
    n_grid = max(2 * f.degree + 2, 64)
    for rho in (0.5, 0.99):
        direct = synthesize(taylor_abel_poisson(f, rho, r), n_grid)
        taylor = taylor_form_values(f, rho, r, n_grid)
        if float(np.max(np.abs(direct.samples - taylor.samples))) > 1e-10:
            raise VerdictError(f"identity gate failed: taylor-form at rho={rho}")
        a1 = taylor_abel_poisson(f, rho, 1)
        pm = poisson_mean(f, rho)
        if float(np.max(np.abs(a1.coeffs - pm.coeffs))) > 1e-12:
            raise VerdictError(f"identity gate failed: poisson-coincidence at rho={rho}")


# ---------------------------------------------------------------------------
# rate experiments
# ---------------------------------------------------------------------------

def _smoothing_errors(entry: CatalogEntry, config: ExperimentConfig) -> list[float]:
    f = entry.series

    def one(rho: float) -> float:
        err = series_sub(f, taylor_abel_poisson(f, rho, config.r))
        return series_norm(err, config.p, n_points=config.grid_points)

    return _parallel_map(one, config.rho_grid, config.jobs)


def run_direct_experiment(config: ExperimentConfig) -> RateReport:
    """Smoothing error against the envelope (1-rho)^(r-n) * omega(1-rho).

    Verdict: the error/envelope ratio spread stays within ``band`` and,
    for power moduli, the fitted exponent is within 0.15 of r - n + alpha.
    """
    entry = config.entry()
    omega = config.modulus()
    _identity_gate(entry, config.r)
    errors = _smoothing_errors(entry, config)
    rhos = list(config.rho_grid)
    envelope = [rate_envelope(omega, config.r, config.n, rho) for rho in rhos]
    notes = []
    if entry.tail_bound > 0:
        notes.append(f"truncation tail bound {entry.tail_bound:.3e}")

    if max(errors) <= ZERO_ERROR:
        notes.append(
            "trivial case: the entry is a fixed point of the smoothing mean; "
            "errors are identically zero and no rate is fitted"
        )
        return RateReport(
            kind="direct", function=entry.name, p=config.p, r=config.r, n=config.n,
            rhos=rhos, errors=errors, envelope=envelope,
            fitted_exponent=math.nan, fit_residual=math.nan,
            expected_exponent=None, band=config.band, band_observed=math.nan,
            verdict=True, notes=notes,
        )

    exponent, resid = fit_rate([(1.0 - rho, e) for rho, e in zip(rhos, errors)])
    ratios = [_ratio(e, env) for e, env in zip(errors, envelope)]
    band_observed = max(ratios) / max(min(ratios), RATIO_FLOOR)
    expected = None
    if omega.kind == "power":
        expected = config.r - config.n + omega.alpha
    verdict = band_observed <= config.band and (
        expected is None or abs(exponent - expected) <= EXPONENT_TOL
    )
    return RateReport(
        kind="direct", function=entry.name, p=config.p, r=config.r, n=config.n,
        rhos=rhos, errors=errors, envelope=envelope,
        fitted_exponent=exponent, fit_residual=resid, expected_exponent=expected,
        band=config.band, band_observed=band_observed, verdict=verdict, notes=notes,
    )


def run_saturation_experiment(config: ExperimentConfig) -> RateReport:
    """Fitted decay exponent of the smoothing error; must not beat order r.

    Entries that the mean fixes exactly (degree < r) are flagged as the
    trivial case.  The envelope column is (1-rho)^r.
    """
    entry = config.entry()
    _identity_gate(entry, config.r)
    errors = _smoothing_errors(entry, config)
    rhos = list(config.rho_grid)
    envelope = [(1.0 - rho) ** config.r for rho in rhos]
    notes = []
    if max(errors) <= ZERO_ERROR:
        notes.append(
            "trivial case: polynomial of degree below r is reproduced exactly; "
            "no saturation rate to fit"
        )
        return RateReport(
            kind="saturation", function=entry.name, p=config.p, r=config.r, n=config.n,
            rhos=rhos, errors=errors, envelope=envelope,
            fitted_exponent=math.nan, fit_residual=math.nan,
            expected_exponent=float(config.r), band=config.band,
            band_observed=math.nan, verdict=True, notes=notes,
        )
    exponent, resid = fit_rate([(1.0 - rho, e) for rho, e in zip(rhos, errors)])
    ratios = [_ratio(e, env) for e, env in zip(errors, envelope)]
    band_observed = max(ratios) / max(min(ratios), RATIO_FLOOR)
    verdict = exponent <= config.r + SATURATION_TOL
    if abs(exponent - config.r) <= SATURATION_TOL:
        notes.append("attains the saturation order")
    return RateReport(
        kind="saturation", function=entry.name, p=config.p, r=config.r, n=config.n,
        rhos=rhos, errors=errors, envelope=envelope,
        fitted_exponent=exponent, fit_residual=resid,
        expected_exponent=float(config.r), band=config.band,
        band_observed=band_observed, verdict=verdict, notes=notes,
    )


def run_inverse_experiment(config: ExperimentConfig) -> InverseReport:
    """Boundedness consequences of a decay rate, gated on the tail condition.

    Checks that (i) the radial-derivative norm of the Poisson mean obeys
    M * (1-rho)^n / omega(1-rho) within the band, and (ii) the K-bracket
    upper bound for the order-(r-n) radial derivative tracks omega(delta)
    within the band.
    """
    entry = config.entry()
    omega = config.modulus()
    head = check_zygmund(omega)
    if not head.holds:
        raise ConfigError(
            f"condition Z fails for omega = {omega.describe()}; "
            "the inverse machinery requires it"
        )
    tail = check_zygmund_n(omega, config.n)
    if not tail.holds:
        raise ConfigError(
            f"condition Z_{config.n} fails for omega = {omega.describe()}; "
            "the inverse machinery requires it"
        )
    _identity_gate(entry, config.r)
    f = entry.series
    rhos = list(config.rho_grid)

    def m_value(rho: float) -> float:
        return poisson_radial_norm(f, rho, config.r, config.p, n_points=config.grid_points)

    m_values = _parallel_map(m_value, rhos, config.jobs)
    m_ratios = [
        _ratio(mv * (1.0 - rho) ** config.n, omega(1.0 - rho))
        for mv, rho in zip(m_values, rhos)
    ]

    g = radial_derivative(f, config.r - config.n)

    def upper(rho: float) -> float:
        bracket = k_bracket(
            g, 1.0 - rho, config.n, config.p,
            n_points=config.grid_points, descent_mode_limit=0,
        )
        return bracket.upper

    k_uppers = _parallel_map(upper, rhos, config.jobs)
    k_ratios = [_ratio(ku, omega(1.0 - rho)) for ku, rho in zip(k_uppers, rhos)]

    m_band = max(m_ratios) / max(min(m_ratios), RATIO_FLOOR)
    k_band = max(k_ratios) / max(min(k_ratios), RATIO_FLOOR)
    verdict = m_band <= config.band and k_band <= config.band
    notes = [
        "finite-degree truncations possess radial derivatives of every order, "
        "so membership conclusions are vacuous here; only the quantitative "
        "rate consequences are tested",
    ]
    if entry.tail_bound > 0:
        notes.append(f"truncation tail bound {entry.tail_bound:.3e}")
    return InverseReport(
        function=entry.name, p=config.p, r=config.r, n=config.n, rhos=rhos,
        m_values=m_values, m_ratios=m_ratios, k_uppers=k_uppers, k_ratios=k_ratios,
        band=config.band, m_band_observed=m_band, k_band_observed=k_band,
        verdict=verdict, notes=notes,
    )


def run_comparison_experiment(config: ExperimentConfig) -> ComparisonReport:
    """Rates of the two boundary-expansion transforms approximating f(rho, .).

    The order-r boundary Taylor transform is fitted against (1-rho), the
    order-r semigroup transform against (-ln rho); on analytic entries
    both exponents should match r.
    """
    entry = config.entry()
    _identity_gate(entry, config.r)
    f = entry.series
    rhos = list(config.rho_grid)

    def one(rho: float) -> tuple[float, float]:
        target = poisson_mean(f, rho)
        e_l = series_norm(
            series_sub(target, leis_transform(f, rho, config.r)),
            config.p, n_points=config.grid_points,
        )
        e_b = series_norm(
            series_sub(target, butzer_sunouchi(f, rho, config.r)),
            config.p, n_points=config.grid_points,
        )
        return e_l, e_b

    results = _parallel_map(one, rhos, config.jobs)
    boundary = [a for a, _ in results]
    semigroup = [b for _, b in results]
    exp_l, _ = fit_rate([(1.0 - rho, e) for rho, e in zip(rhos, boundary)])
    exp_b, _ = fit_rate([(-math.log(rho), e) for rho, e in zip(rhos, semigroup)])
    verdict = (
        abs(exp_l - config.r) <= EXPONENT_TOL and abs(exp_b - config.r) <= EXPONENT_TOL
    )
    return ComparisonReport(
        function=entry.name, p=config.p, r=config.r, rhos=rhos,
        boundary_errors=boundary, semigroup_errors=semigroup,
        boundary_exponent=exp_l, semigroup_exponent=exp_b, verdict=verdict,
    )


def run_kfun_experiment(config: ExperimentConfig) -> KBracketReport:
    """K-functional brackets over delta = 1 - rho for the configured entry."""
    entry = config.entry()
    f = entry.series
    deltas = [1.0 - rho for rho in config.rho_grid]
    lowers, uppers, sources = [], [], []
    notes = []

    def one(delta: float):
        return k_bracket(f, delta, config.n, config.p, n_points=config.grid_points)

    brackets = _parallel_map(one, deltas, config.jobs)
    ok = True
    for bracket in brackets:
        lowers.append(bracket.lower)
        uppers.append(bracket.upper)
        sources.append(bracket.upper_witness.get("source", "?"))
        if bracket.lower > bracket.upper:
            ok = False
        if not bracket.lower_available:
            notes.append(
                f"delta={bracket.delta:g} exceeds 1/2: lower bound unavailable, 0 reported"
            )
    return KBracketReport(
        function=entry.name, p=config.p, n=config.n, deltas=deltas,
        lowers=lowers, uppers=uppers, sources=sources, verdict=ok, notes=notes,
    )


def run_moduli_check(config: ExperimentConfig) -> ModuliReport:
    """All four growth/integral condition checks for the configured modulus."""
    omega = config.modulus()
    conditions = [
        check_zygmund(omega),
        check_zygmund_n(omega, config.n),
        check_almost_decreasing(omega, config.n),
        check_doubling(omega),
    ]
    return ModuliReport(omega=omega.describe(), conditions=conditions)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def write_report(report: _ReportBase, path: str, fmt: str = "csv"):
    """Write the report as CSV or JSON; CSV bytes are deterministic."""
    if fmt == "csv":
        payload = report.to_csv()
    elif fmt == "json":
        payload = json.dumps(report.to_jsonable(), indent=2, default=str) + "\n"
    else:
        raise ConfigError(f"unknown output format {fmt!r}")
    with open(path, "w", newline="") as fh:
        fh.write(payload)


def plot_report(report: _ReportBase, path: str):
    """Log-log plot of the report's primary curves (SVG/PNG by extension)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    if isinstance(report, RateReport):
        h = [1.0 - rho for rho in report.rhos]
        ax.loglog(h, report.errors, "o-", label="error")
        ax.loglog(h, report.envelope, "--", label="envelope")
        ax.set_xlabel("1 - rho")
        ax.set_ylabel(f"L_{report.p:g} error")
        ax.set_title(f"{report.kind}: {report.function}")
    elif isinstance(report, InverseReport):
        h = [1.0 - rho for rho in report.rhos]
        ax.loglog(h, report.m_ratios, "o-", label="radial-norm ratio")
        ax.loglog(h, report.k_ratios, "s-", label="K-upper ratio")
        ax.set_xlabel("1 - rho")
        ax.set_ylabel("ratio to omega envelope")
        ax.set_title(f"inverse: {report.function}")
    elif isinstance(report, ComparisonReport):
        h = [1.0 - rho for rho in report.rhos]
        ax.loglog(h, report.boundary_errors, "o-", label="boundary Taylor")
        ax.loglog(h, report.semigroup_errors, "s-", label="semigroup")
        ax.set_xlabel("1 - rho")
        ax.set_ylabel(f"L_{report.p:g} error")
        ax.set_title(f"comparison: {report.function}")
    elif isinstance(report, KBracketReport):
        ax.loglog(report.deltas, report.uppers, "s-", label="upper")
        positive = [(d, lo) for d, lo in zip(report.deltas, report.lowers) if lo > 0]
        if positive:
            ax.loglog(*zip(*positive), "o-", label="lower")
        ax.set_xlabel("delta")
        ax.set_ylabel("K bracket")
        ax.set_title(f"K-functional: {report.function}")
    else:
        raise ConfigError(f"{report.kind} reports have no plot form")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
