"""Test-function catalog with declared smoothness metadata.

Entries are truncated Fourier series together with the facts experiments
need: a bound on the discarded tail and a declared smoothness class.  The
string grammar understood by :func:`catalog_entry`:

* ``trigpoly:cos=M``      cos(M x)
* ``trigpoly:mode=M``     the single complex mode e^{iMx}
* ``trigpoly:random=D``   seeded random real-valued polynomial of degree D
* ``geometric:q=Q[,K=N]`` coefficients q^|k| truncated at degree K (default 60)
* ``weierstrass:alpha=A,J=N``  sum of 2^(-alpha j) cos(2^j x), j = 0..N
* ``smoothed:m=M,base=<entry>`` coefficientwise right-inverse of the
  order-M radial derivative applied to the base entry
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fourier import FourierSeries, GridSignal, from_modes, grid
from .operators import falling_factorial

__all__ = [
    "CatalogEntry",
    "make_trig_poly",
    "make_cosine",
    "make_mode",
    "make_random_real_poly",
    "make_geometric",
    "make_weierstrass",
    "make_smoothed",
    "geometric_poisson_values",
    "catalog_entry",
    "standard_catalog",
]

MAX_DEGREE = 4096


@dataclass(frozen=True)
class CatalogEntry:
    """A named truncated series plus the metadata experiments rely on."""

    name: str
    series: FourierSeries
    tail_bound: float = 0.0
    smoothness: dict = field(default_factory=dict)
    notes: str = ""

    @property
    def degree(self) -> int:
        return self.series.degree


def _check_degree(degree: int):
    if degree > MAX_DEGREE:
        raise ValueError(f"degree {degree} exceeds the desk-scale cap {MAX_DEGREE}")


def make_trig_poly(series: FourierSeries, name: str, smoothness: dict | None = None) -> CatalogEntry:
    """Wrap an explicit finite series; the tail bound is exactly zero."""
    _check_degree(series.degree)
    meta = {"class": "trigpoly", "degree": series.degree}
    if smoothness:
        meta.update(smoothness)
    return CatalogEntry(name=name, series=series, tail_bound=0.0, smoothness=meta)


def make_cosine(m: int) -> CatalogEntry:
    if m < 0:
        raise ValueError(f"cosine frequency must be >= 0, got {m}")
    series = from_modes({m: 0.5, -m: 0.5} if m else {0: 1.0}, real_valued=True)
    return make_trig_poly(series, f"trigpoly:cos={m}")


def make_mode(m: int) -> CatalogEntry:
    """Single complex exponential e^{imx}; unit L_p norm for every p."""
    series = from_modes({m: 1.0})
    return make_trig_poly(series, f"trigpoly:mode={m}")


def make_random_real_poly(degree: int, seed: int = 0) -> CatalogEntry:
    """Random real-valued polynomial; coefficients ~ U(-1,1) + iU(-1,1)."""
    _check_degree(degree)
    rng = np.random.default_rng(seed)
    coeffs = np.zeros(2 * degree + 1, dtype=complex)
    coeffs[degree] = rng.uniform(-1.0, 1.0)
    for k in range(1, degree + 1):
        c = rng.uniform(-1.0, 1.0) + 1j * rng.uniform(-1.0, 1.0)
        coeffs[degree + k] = c
        coeffs[degree - k] = np.conj(c)
    entry = make_trig_poly(
        FourierSeries(coeffs, real_valued=True), f"trigpoly:random={degree}"
    )
    return CatalogEntry(
        name=entry.name,
        series=entry.series,
        tail_bound=0.0,
        smoothness=entry.smoothness,
        notes=f"seed={seed}",
    )


def make_geometric(q: float, degree: int = 60) -> CatalogEntry:
    """Coefficients q^|k|, 0 < q < 1, truncated at the given degree.

    The untruncated function is the Poisson kernel at radius q, with the
    closed form (1 - q^2) / (1 - 2 q cos x + q^2); the discarded tail is
    bounded by 2 q^(K+1) / (1 - q) in every L_p.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"geometric ratio must lie in (0, 1), got {q}")
    _check_degree(degree)
    ks = np.abs(np.arange(-degree, degree + 1)).astype(float)
    series = FourierSeries(q**ks + 0j, real_valued=True)
    tail = 2.0 * q ** (degree + 1) / (1.0 - q)
    return CatalogEntry(
        name=f"geometric:q={q:g}",
        series=series,
        tail_bound=tail,
        smoothness={"class": "analytic", "q": q},
    )


def geometric_poisson_values(q: float, rho: float, n_points: int) -> GridSignal:
    """Closed-form Poisson mean of the full geometric series.

    sum_k (q rho)^|k| e^{ikx} = (1 - a^2) / (1 - 2 a cos x + a^2), a = q*rho.
    rho = 1 gives the function itself.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"geometric ratio must lie in (0, 1), got {q}")
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    a = q * rho
    x = grid(n_points)
    return GridSignal((1.0 - a * a) / (1.0 - 2.0 * a * np.cos(x) + a * a))


def make_weierstrass(alpha: float, levels: int) -> CatalogEntry:
    """Lacunary cosine sum: f(x) = sum_{j=0}^{J} 2^(-alpha j) cos(2^j x).

    Holder-continuous of exact order alpha for 0 < alpha < 1; degree 2^J.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if levels < 4:
        raise ValueError(f"need at least 4 lacunary levels, got {levels}")
    degree = 2**levels
    _check_degree(degree)
    modes = {}
    for j in range(levels + 1):
        k = 2**j
        amp = 0.5 * 2.0 ** (-alpha * j)
        modes[k] = amp
        modes[-k] = amp
    series = from_modes(modes, degree=degree, real_valued=True)
    return CatalogEntry(
        name=f"weierstrass:alpha={alpha:g},J={levels}",
        series=series,
        tail_bound=0.0,
        smoothness={"class": "lacunary", "lip_alpha": alpha, "levels": levels},
    )


def make_smoothed(entry: CatalogEntry, m: int) -> CatalogEntry:
    """Coefficientwise right-inverse of the order-m radial derivative.

    g_k = f_k * (|k|-m)!/|k|! for |k| >= max(m, 1); modes 0 < |k| < m are
    dropped; the mean is preserved.  The order-m radial derivative of the
    result reproduces the base entry on |k| >= m exactly.  m = 0 returns
    the entry unchanged.
    """
    if m < 0:
        raise ValueError(f"smoothing order must be >= 0, got {m}")
    if m == 0:
        return entry
    series = entry.series
    ks = np.abs(series.wavenumbers())
    factors = np.zeros(ks.shape)
    live = ks >= max(m, 1)
    factors[live] = 1.0 / falling_factorial(ks[live], m)
    factors[ks == 0] = 1.0
    smooth = FourierSeries(series.coeffs * factors, real_valued=series.real_valued)
    meta = dict(entry.smoothness)
    meta["smoothed_order"] = m + meta.get("smoothed_order", 0)
    return CatalogEntry(
        name=f"smoothed:m={m},base={entry.name}",
        series=smooth,
        tail_bound=entry.tail_bound,
        smoothness=meta,
        notes=entry.notes,
    )


# ---------------------------------------------------------------------------
# string addressing
# ---------------------------------------------------------------------------

def _parse_params(text: str) -> dict:
    params = {}
    if not text:
        return params
    for chunk in text.split(","):
        key, sep, value = chunk.partition("=")
        if not sep or not key:
            raise ValueError(f"malformed catalog parameter {chunk!r}")
        params[key.strip()] = value.strip()
    return params


def catalog_entry(name: str, seed: int = 0) -> CatalogEntry:
    """Resolve a catalog name string (see module docstring for the grammar)."""
    kind, _, rest = name.partition(":")
    try:
        if kind == "trigpoly":
            params = _parse_params(rest)
            if "cos" in params:
                return make_cosine(int(params["cos"]))
            if "mode" in params:
                return make_mode(int(params["mode"]))
            if "random" in params:
                return make_random_real_poly(int(params["random"]), seed=seed)
            raise ValueError("trigpoly needs one of cos=, mode=, random=")
        if kind == "geometric":
            params = _parse_params(rest)
            return make_geometric(
                float(params["q"]), degree=int(params.get("K", 60))
            )
        if kind == "weierstrass":
            params = _parse_params(rest)
            return make_weierstrass(float(params["alpha"]), int(params["J"]))
        if kind == "smoothed":
            head, sep, base = rest.partition("base=")
            if not sep:
                raise ValueError("smoothed needs base=<entry name>")
            params = _parse_params(head.rstrip(","))
            return make_smoothed(catalog_entry(base, seed=seed), int(params["m"]))
    except KeyError as exc:
        raise ValueError(f"catalog name {name!r} is missing parameter {exc}") from exc
    raise ValueError(f"unknown catalog entry {name!r}")


def standard_catalog(seed: int = 0) -> list[CatalogEntry]:
    """Default battery used by the identity suite."""
    weier = make_weierstrass(0.5, 7)
    return [
        make_cosine(1),
        make_cosine(3),
        make_random_real_poly(10, seed=seed),
        make_geometric(0.5),
        weier,
        make_smoothed(weier, 1),
    ]
