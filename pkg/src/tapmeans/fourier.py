"""Core representation of 2*pi-periodic functions.

A function is held either as a two-sided Fourier series with complex
coefficients c_k, k = -K..K (:class:`FourierSeries`), or as samples on the
uniform grid x_j = 2*pi*j/N (:class:`GridSignal`).  All norms use the
normalized measure dx/(2*pi), so the constant function 1 has unit L_p norm
for every p in [1, inf].

Values are immutable after construction; every operation returns a new
object.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

#: tolerance for the real-valuedness check c_{-k} == conj(c_k)
REAL_TOL = 1e-12

__all__ = [
    "TWO_PI",
    "REAL_TOL",
    "FourierSeries",
    "GridSignal",
    "grid",
    "default_grid_size",
    "from_modes",
    "analyze",
    "synthesize",
    "lp_norm",
    "series_norm",
    "coefficient_l2",
    "conjugate",
    "derivative",
    "pad_to_degree",
    "series_add",
    "series_sub",
    "series_scale",
    "trim",
    "series_to_dict",
    "series_from_dict",
]


def grid(n_points: int) -> np.ndarray:
    """Uniform periodic grid x_j = 2*pi*j/N, j = 0..N-1."""
    if n_points < 1:
        raise ValueError(f"grid needs at least one point, got {n_points}")
    return TWO_PI * np.arange(n_points) / n_points


def default_grid_size(degree: int) -> int:
    """Quadrature grid size used when the caller does not fix one."""
    return 8 * max(degree, 0) + 64


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class GridSignal:
    """Samples s_j of a periodic function on the grid x_j = 2*pi*j/N.

    Samples may be complex; norm computations use their modulus.
    """

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("samples must be a nonempty one-dimensional array")
        dtype = complex if np.iscomplexobj(arr) else float
        object.__setattr__(self, "samples", _frozen_array(arr, dtype))

    @property
    def n_points(self) -> int:
        return self.samples.size

    @property
    def x(self) -> np.ndarray:
        """Grid abscissas matching the samples."""
        return grid(self.samples.size)


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Two-sided coefficient vector c_k, k = -degree..degree.

    Parameters
    ----------
    coeffs : array_like
        Complex coefficients in wavenumber order -K..K (odd length).
    real_valued : bool, optional
        If True, assert the Hermitian symmetry c_{-k} == conj(c_k) within
        ``REAL_TOL`` at construction and record the flag.
    """

    coeffs: np.ndarray
    real_valued: bool = False

    def __post_init__(self):
        arr = np.asarray(self.coeffs)
        if arr.ndim != 1 or arr.size % 2 != 1:
            raise ValueError(
                f"coefficients must form an odd-length 1-d array, got shape {arr.shape}"
            )
        arr = _frozen_array(arr, complex)
        object.__setattr__(self, "coeffs", arr)
        if self.real_valued:
            dev = _hermitian_deviation(arr)
            if dev > REAL_TOL:
                raise ValueError(
                    f"series marked real_valued violates c_-k == conj(c_k) by {dev:.3e}"
                )

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    def wavenumbers(self) -> np.ndarray:
        k = self.degree
        return np.arange(-k, k + 1)

    def coeff(self, k: int) -> complex:
        """Coefficient c_k; zero for |k| beyond the stored degree."""
        if abs(k) > self.degree:
            return 0.0 + 0.0j
        return complex(self.coeffs[k + self.degree])

    @property
    def mean(self) -> complex:
        return complex(self.coeffs[self.degree])

    def is_real(self, tol: float = REAL_TOL) -> bool:
        return _hermitian_deviation(self.coeffs) <= tol


def _hermitian_deviation(coeffs: np.ndarray) -> float:
    return float(np.max(np.abs(coeffs - np.conj(coeffs[::-1]))))


def from_modes(modes: dict, degree: int | None = None, real_valued: bool = False) -> FourierSeries:
    """Build a series from a sparse {wavenumber: coefficient} mapping."""
    if degree is None:
        degree = max((abs(int(k)) for k in modes), default=0)
    coeffs = np.zeros(2 * degree + 1, dtype=complex)
    for k, c in modes.items():
        k = int(k)
        if abs(k) > degree:
            raise ValueError(f"mode {k} exceeds requested degree {degree}")
        coeffs[k + degree] = c
    return FourierSeries(coeffs, real_valued=real_valued)


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def analyze(signal: GridSignal, degree: int, trim_threshold: float | None = None) -> FourierSeries:
    """Fourier coefficients c_k = (1/N) sum_j s_j exp(-i k x_j), k = -K..K.

    Exact for trigonometric polynomials of degree <= K sampled with
    N >= 2K+1 points; with fewer effective samples the usual aliasing
    c_k <- sum over k' = k mod N applies.

    Parameters
    ----------
    signal : GridSignal
    degree : int
        Output degree K; requires 2K+1 <= N.
    trim_threshold : float, optional
        If given, trailing modes with |c_k| <= threshold are dropped from
        both ends.  Default None: no trimming.
    """
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    n = signal.n_points
    if 2 * degree + 1 > n:
        raise ValueError(
            f"need at least 2*degree+1 = {2 * degree + 1} samples, got {n}"
        )
    spectrum = np.fft.fft(signal.samples) / n
    ks = np.arange(-degree, degree + 1)
    series = FourierSeries(spectrum[ks % n])
    if trim_threshold is not None:
        series = trim(series, trim_threshold)
    return series


def synthesize(series: FourierSeries, n_points: int) -> GridSignal:
    """Samples s_j = sum_k c_k exp(i k x_j) on the uniform N-point grid.

    Valid for any N >= 1; wavenumbers fold modulo N, which reproduces the
    exact point values of the series on the coarse grid.
    """
    if n_points < 1:
        raise ValueError(f"n_points must be >= 1, got {n_points}")
    bins = np.zeros(n_points, dtype=complex)
    np.add.at(bins, series.wavenumbers() % n_points, series.coeffs)
    return GridSignal(np.fft.ifft(bins) * n_points)


def trim(series: FourierSeries, threshold: float = 0.0) -> FourierSeries:
    """Drop outer modes with |c_k| <= threshold from both ends.

    The mean coefficient is always kept, so the result has degree >= 0.
    """
    if threshold < 0:
        raise ValueError("trim threshold must be >= 0")
    mags = np.abs(series.coeffs)
    k_max = 0
    for k in range(series.degree, 0, -1):
        if mags[k + series.degree] > threshold or mags[-k + series.degree] > threshold:
            k_max = k
            break
    mid = series.degree
    return FourierSeries(
        series.coeffs[mid - k_max : mid + k_max + 1], real_valued=series.real_valued
    )


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def _validate_p(p) -> float:
    if not isinstance(p, numbers.Real):
        raise ValueError(f"p must be a real number or inf, got {p!r}")
    p = float(p)
    if math.isnan(p) or p < 1:
        raise ValueError(f"p must satisfy 1 <= p <= inf, got {p}")
    return p


def lp_norm(signal: GridSignal, p) -> float:
    """Discrete L_p norm on the grid.

    Finite p: ((1/N) sum |s_j|^p)^(1/p), the rectangle rule for the
    normalized integral.  p = inf: the grid maximum of |s_j| (a lower
    bound for the true sup; see `series_norm` for refinement).
    """
    p = _validate_p(p)
    mags = np.abs(signal.samples)
    if math.isinf(p):
        return float(np.max(mags))
    return float(np.mean(mags**p) ** (1.0 / p))


def series_norm(
    series: FourierSeries,
    p,
    n_points: int | None = None,
    sup_tol: float = 1e-6,
    max_points: int = 2**20,
) -> float:
    """L_p norm of the function represented by the series.

    Finite p uses the rectangle rule on ``n_points`` samples (default
    ``default_grid_size(degree)``, exact for p = 2 whenever
    n_points >= 2*degree+1).  For p = inf with ``n_points`` unspecified the
    grid is doubled until the maximum changes by less than ``sup_tol`` or
    the grid exceeds ``max_points``.
    """
    p = _validate_p(p)
    if n_points is not None:
        return lp_norm(synthesize(series, n_points), p)
    n = default_grid_size(series.degree)
    if not math.isinf(p):
        return lp_norm(synthesize(series, n), p)
    value = lp_norm(synthesize(series, n), math.inf)
    while 2 * n <= max_points:
        n *= 2
        refined = lp_norm(synthesize(series, n), math.inf)
        if abs(refined - value) < sup_tol:
            return refined
        value = refined
    return value


def coefficient_l2(series: FourierSeries) -> float:
    """L_2 norm via Parseval: sqrt(sum |c_k|^2)."""
    return float(np.sqrt(np.sum(np.abs(series.coeffs) ** 2)))


# ---------------------------------------------------------------------------
# coefficient-wise operations
# ---------------------------------------------------------------------------

def conjugate(series: FourierSeries) -> FourierSeries:
    """Harmonic conjugate: c_k -> -i*sgn(k)*c_k (mean maps to zero)."""
    mult = -1j * np.sign(series.wavenumbers())
    return FourierSeries(series.coeffs * mult, real_valued=series.real_valued)


def derivative(series: FourierSeries, order: int = 1) -> FourierSeries:
    """Classical derivative of the given order: c_k -> (i*k)^order * c_k."""
    if order < 0:
        raise ValueError(f"derivative order must be >= 0, got {order}")
    mult = (1j * series.wavenumbers().astype(float)) ** order
    return FourierSeries(series.coeffs * mult, real_valued=series.real_valued)


def pad_to_degree(series: FourierSeries, degree: int) -> FourierSeries:
    """Zero-extend the coefficient vector to the requested degree."""
    if degree < series.degree:
        raise ValueError(
            f"cannot pad degree {series.degree} series down to {degree}; use trim"
        )
    extra = degree - series.degree
    coeffs = np.concatenate(
        [np.zeros(extra, dtype=complex), series.coeffs, np.zeros(extra, dtype=complex)]
    )
    return FourierSeries(coeffs, real_valued=series.real_valued)


def _aligned(a: FourierSeries, b: FourierSeries):
    deg = max(a.degree, b.degree)
    return pad_to_degree(a, deg), pad_to_degree(b, deg)


def series_add(a: FourierSeries, b: FourierSeries) -> FourierSeries:
    a, b = _aligned(a, b)
    return FourierSeries(a.coeffs + b.coeffs, real_valued=a.real_valued and b.real_valued)


def series_sub(a: FourierSeries, b: FourierSeries) -> FourierSeries:
    a, b = _aligned(a, b)
    return FourierSeries(a.coeffs - b.coeffs, real_valued=a.real_valued and b.real_valued)


def series_scale(series: FourierSeries, factor: complex) -> FourierSeries:
    real = series.real_valued and isinstance(factor, numbers.Real)
    return FourierSeries(series.coeffs * factor, real_valued=real)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def series_to_dict(series: FourierSeries) -> dict:
    """JSON-ready form {"degree": K, "re": [...], "im": [...]}, k = -K..K."""
    return {
        "degree": series.degree,
        "re": [float(v) for v in series.coeffs.real],
        "im": [float(v) for v in series.coeffs.imag],
    }


def series_from_dict(data: dict) -> FourierSeries:
    try:
        degree = int(data["degree"])
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed series dictionary: {exc}") from exc
    if re.shape != (2 * degree + 1,) or im.shape != (2 * degree + 1,):
        raise ValueError(
            f"series of degree {degree} needs {2 * degree + 1} re/im entries, "
            f"got {re.size}/{im.size}"
        )
    return FourierSeries(re + 1j * im)
