"""Majorant functions ("moduli") and their integral growth conditions.

A modulus is a continuous nondecreasing function omega on [0, 1] with
omega(0) = 0 and omega(t) > 0 for t > 0.  Rate statements in the package
are phrased against the envelope (1-rho)^(r-n) * omega(1-rho); whether a
given omega is admissible for the direct or inverse machinery is decided
by two singular-integral conditions:

* the averaged-smallness condition ("Z"):    int_0^d omega(t)/t dt = O(omega(d))
* the order-n tail condition ("Z_n"):  int_d^1 omega(t)/t^(n+1) dt = O(omega(d)/d^n)

Big-O statements are operationalized as sup-ratios over a dyadic probe
grid, declared to hold when the ratios stay finite and stable under probe
refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ModulusFunction",
    "ConditionReport",
    "check_zygmund",
    "check_zygmund_n",
    "check_almost_decreasing",
    "check_doubling",
    "rate_envelope",
]

_PROBE_VALIDATION_DEPTH = 40
_MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class ModulusFunction:
    """Majorant omega(t) on [0, 1].

    kind "power":    omega(t) = t^alpha, alpha > 0.
    kind "powerlog": omega(t) = t^alpha * ln(e/t)^beta with omega(0) = 0;
                     requires alpha > 0, or alpha = 0 with beta < 0.
    kind "table":    monotone piecewise-linear interpolation of (t_i, w_i)
                     with t_0 = 0, w_0 = 0, t_last = 1; no extrapolation.

    Instances are callable and vectorized; evaluation outside [0, 1]
    raises ValueError.
    """

    kind: str
    alpha: float = 0.0
    beta: float = 0.0
    table_t: np.ndarray | None = field(default=None, repr=False)
    table_w: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind == "power":
            if not self.alpha > 0:
                raise ValueError(f"power modulus needs alpha > 0, got {self.alpha}")
        elif self.kind == "powerlog":
            ok = self.alpha > 0 or (self.alpha == 0 and self.beta < 0)
            if not ok:
                raise ValueError(
                    "powerlog modulus needs alpha > 0, or alpha = 0 with beta < 0; "
                    f"got alpha={self.alpha}, beta={self.beta}"
                )
        elif self.kind == "table":
            t = np.asarray(self.table_t, dtype=float)
            w = np.asarray(self.table_w, dtype=float)
            if t.ndim != 1 or t.shape != w.shape or t.size < 2:
                raise ValueError("table modulus needs matching 1-d t/w arrays, size >= 2")
            if t[0] != 0.0 or t[-1] != 1.0 or np.any(np.diff(t) <= 0):
                raise ValueError("table abscissas must increase strictly from 0 to 1")
            if w[0] != 0.0:
                raise ValueError("table modulus must have w(0) = 0")
            if np.any(np.diff(w) < 0) or np.any(w[1:] <= 0):
                raise ValueError("table values must be nondecreasing and positive for t > 0")
            object.__setattr__(self, "table_t", _frozen(t))
            object.__setattr__(self, "table_w", _frozen(w))
        else:
            raise ValueError(f"unknown modulus kind {self.kind!r}")
        self._validate_probes()

    # -- constructors ------------------------------------------------------

    @classmethod
    def power(cls, alpha: float) -> "ModulusFunction":
        return cls(kind="power", alpha=float(alpha))

    @classmethod
    def power_log(cls, alpha: float, beta: float) -> "ModulusFunction":
        return cls(kind="powerlog", alpha=float(alpha), beta=float(beta))

    @classmethod
    def from_table(cls, t, w) -> "ModulusFunction":
        return cls(kind="table", table_t=np.asarray(t, float), table_w=np.asarray(w, float))

    @classmethod
    def from_dict(cls, data: dict) -> "ModulusFunction":
        try:
            kind = data["kind"]
            if kind == "power":
                return cls.power(data["alpha"])
            if kind == "powerlog":
                return cls.power_log(data["alpha"], data["beta"])
            if kind == "table":
                return cls.from_table(data["t"], data["w"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed modulus dictionary: {exc}") from exc
        raise ValueError(f"unknown modulus kind {kind!r}")

    def to_dict(self) -> dict:
        if self.kind == "power":
            return {"kind": "power", "alpha": self.alpha}
        if self.kind == "powerlog":
            return {"kind": "powerlog", "alpha": self.alpha, "beta": self.beta}
        return {
            "kind": "table",
            "t": [float(v) for v in self.table_t],
            "w": [float(v) for v in self.table_w],
        }

    def describe(self) -> str:
        if self.kind == "power":
            return f"t^{self.alpha:g}"
        if self.kind == "powerlog":
            return f"t^{self.alpha:g} * ln(e/t)^{self.beta:g}"
        return f"table[{self.table_t.size} nodes]"

    # -- evaluation --------------------------------------------------------

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("modulus evaluated outside its domain [0, 1]")
        if self.kind == "table":
            out = np.interp(arr, self.table_t, self.table_w)
        else:
            out = np.zeros_like(arr)
            pos = arr > 0.0
            tp = arr[pos]
            if self.kind == "power":
                out[pos] = tp**self.alpha
            else:
                # ln(e/t) written as 1 - ln t so e/t cannot overflow
                out[pos] = tp**self.alpha * (1.0 - np.log(tp)) ** self.beta
        return float(out) if np.isscalar(t) or arr.ndim == 0 else out

    def _validate_probes(self):
        """Monotone, positive, vanishing at 0: checked on dyadic probes."""
        probes = 2.0 ** -np.arange(_PROBE_VALIDATION_DEPTH + 1)
        vals = self(probes)
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0.0):
            raise ValueError("modulus must be finite and positive on (0, 1]")
        scale = vals[0]
        if np.any(np.diff(vals) > _MONOTONE_SLACK * max(scale, 1.0)):
            raise ValueError("modulus must be nondecreasing on (0, 1]")
        if self(0.0) != 0.0:
            raise ValueError("modulus must vanish at 0")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


# ---------------------------------------------------------------------------
# condition checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one integral/growth condition check."""

    condition: str
    sup_ratio: float
    limit_ratio: float
    holds: bool
    probe_grid: str
    detail: str = ""

    def __str__(self):
        verdict = "holds" if self.holds else "fails"
        return (
            f"{self.condition}: {verdict} (sup ratio {self.sup_ratio:.6g}, "
            f"limit {self.limit_ratio:.6g}; {self.probe_grid})"
        )


_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss(n: int):
    if n not in _GAUSS_CACHE:
        _GAUSS_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GAUSS_CACHE[n]


def _slice_integral(w: ModulusFunction, lo: float, hi: float, power: float, nodes: int = 24) -> float:
    """int_lo^hi omega(t) * t^power dt by fixed-order Gauss-Legendre."""
    x, gw = _gauss(nodes)
    t = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    return float(0.5 * (hi - lo) * np.sum(gw * w(t) * t**power))


def _singular_head_integral(
    w: ModulusFunction, delta: float, max_slices: int, rel_tol: float
) -> float | None:
    """int_0^delta omega(t)/t dt over dyadic slices; None when divergent."""
    total = 0.0
    hi = delta
    for i in range(max_slices):
        if hi <= 1e-300:  # cannot resolve further; treat as non-convergent
            return None
        lo = hi / 2.0
        part = _slice_integral(w, lo, hi, -1.0)
        total += part
        if i >= 4 and part <= rel_tol * total:
            return total
        hi = lo
    return None


def _tail_integral(w: ModulusFunction, delta: float, n: int) -> float:
    """int_delta^1 omega(t)/t^(n+1) dt over dyadic slices (always finite)."""
    total = 0.0
    lo = delta
    while lo < 1.0:
        hi = min(2.0 * lo, 1.0)
        total += _slice_integral(w, lo, hi, -(n + 1.0))
        lo = hi
    return total


def _aitken_limit(r_half: float, r_full: float) -> float:
    """Extrapolated limit assuming ratios approach it geometrically.

    Exact for r_j = L (1 - q^j) sampled at j and 2j; returns inf when the
    sequence shows no contraction (divergence).
    """
    denom = 2.0 * r_half - r_full
    if denom <= 0.0:
        return math.inf
    return r_half * r_half / denom

_STABILITY_GROWTH = 1.05


def _verdict(ratios: np.ndarray, depth: int) -> tuple[float, float, bool, str]:
    """Sup ratio, extrapolated limit, and the refinement-stability verdict.

    Holds when the dyadic sup grows by < 5% under probe doubling, or when
    the extrapolated limits from the probe pairs (depth/4, depth/2) and
    (depth/2, depth) are finite and agree within 5%.
    """
    if not np.all(np.isfinite(ratios)):
        return math.inf, math.inf, False, "integral diverges"
    sup_full = float(np.max(ratios))
    sup_half = float(np.max(ratios[: depth // 2 + 1]))
    sup_stable = sup_full <= _STABILITY_GROWTH * sup_half
    q2, q4 = depth // 2, depth // 4
    lim_b = _aitken_limit(ratios[q2], ratios[depth])
    lim_a = _aitken_limit(ratios[q4], ratios[2 * q4])
    limit_stable = (
        math.isfinite(lim_a)
        and math.isfinite(lim_b)
        and lim_b > 0
        and abs(lim_b - lim_a) <= 0.05 * lim_b
    )
    limit = lim_b if math.isfinite(lim_b) else sup_full
    detail = []
    if sup_stable:
        detail.append("sup stable under probe doubling")
    if limit_stable:
        detail.append("extrapolated limit stable")
    return sup_full, limit, sup_stable or limit_stable, "; ".join(detail)


def check_zygmund(
    w: ModulusFunction,
    depth: int = 30,
    max_slices: int = 4000,
    rel_tol: float = 1e-10,
) -> ConditionReport:
    """Averaged-smallness condition: int_0^d omega(t)/t dt = O(omega(d)).

    Ratios are probed at d = 2^-j, j = 0..depth.  For omega(t) = t^alpha
    the ratio is identically 1/alpha.
    """
    probe_desc = f"dyadic probes 2^-j, j=0..{depth}"
    ratios = np.empty(depth + 1)
    for j in range(depth + 1):
        delta = 2.0**-j
        integral = _singular_head_integral(w, delta, max_slices, rel_tol)
        if integral is None:
            return ConditionReport(
                condition="Z",
                sup_ratio=math.inf,
                limit_ratio=math.inf,
                holds=False,
                probe_grid=probe_desc,
                detail=f"head integral fails to converge at delta=2^-{j}",
            )
        ratios[j] = integral / w(delta)
    sup, limit, holds, detail = _verdict(ratios, depth)
    return ConditionReport("Z", sup, limit, holds, probe_desc, detail)


def check_zygmund_n(w: ModulusFunction, n: int, depth: int = 30) -> ConditionReport:
    """Order-n tail condition: int_d^1 omega(t)/t^(n+1) dt = O(omega(d)/d^n).

    For omega(t) = t^alpha with alpha < n the ratio tends to 1/(n-alpha);
    at alpha = n it grows like ln(1/d) and the verdict fails.
    """
    if n < 1:
        raise ValueError(f"order n must be >= 1, got {n}")
    probe_desc = f"dyadic probes 2^-j, j=0..{depth}"
    ratios = np.empty(depth + 1)
    # j = 0 gives an empty integration range; start the sup at j = 1
    ratios[0] = 0.0
    for j in range(1, depth + 1):
        delta = 2.0**-j
        integral = _tail_integral(w, delta, n)
        ratios[j] = integral * delta**n / w(delta)
    sup, limit, holds, detail = _verdict(ratios, depth)
    return ConditionReport(f"Z_{n}", sup, limit, holds, probe_desc, detail)


def check_almost_decreasing(w: ModulusFunction, n: int, depth: int = 30) -> ConditionReport:
    """Almost-decrease of omega(t)/t^n: ratio at t over ratio at s <= C for s <= t.

    The reported constant is the dyadic sup of v_j / v_i over i > j where
    v_j = omega(2^-j) * 2^(j n); C = 1 means genuinely nonincreasing.
    """
    if n < 1:
        raise ValueError(f"order n must be >= 1, got {n}")
    probe_desc = f"dyadic probes 2^-j, j=0..{depth}"

    def constant(j_max: int) -> float:
        js = np.arange(j_max + 1)
        v = np.array([w(2.0**-j) * 2.0 ** (j * n) for j in js])
        suffix_min = np.minimum.accumulate(v[::-1])[::-1]
        return float(np.max(v[:-1] / suffix_min[1:])) if j_max >= 1 else 1.0

    c_half = constant(depth // 2)
    c_full = constant(depth)
    holds = c_full <= _STABILITY_GROWTH * c_half
    c_full = max(c_full, 1.0)
    return ConditionReport(
        condition=f"almost-decreasing (order {n})",
        sup_ratio=c_full,
        limit_ratio=c_full,
        holds=holds,
        probe_grid=probe_desc,
        detail="" if holds else "constant grows under probe refinement",
    )


def check_doubling(w: ModulusFunction, depth: int = 30) -> ConditionReport:
    """Doubling constant sup omega(2t)/omega(t) over dyadic t <= 1/2."""
    probe_desc = f"dyadic probes 2^-j, j=1..{depth}"

    def constant(j_max: int) -> float:
        ts = 2.0 ** -np.arange(1, j_max + 1)
        return float(np.max(w(2.0 * ts) / w(ts)))

    c_half = constant(max(depth // 2, 2))
    c_full = constant(depth)
    holds = math.isfinite(c_full) and c_full <= _STABILITY_GROWTH * c_half
    return ConditionReport(
        condition="doubling",
        sup_ratio=c_full,
        limit_ratio=c_full,
        holds=holds,
        probe_grid=probe_desc,
        detail="" if holds else "doubling constant unstable under probe refinement",
    )


def rate_envelope(w: ModulusFunction, r: int, n: int, rho) -> np.ndarray | float:
    """Envelope (1-rho)^(r-n) * omega(1-rho) used by the rate experiments.

    Requires 1 <= n <= r and rho in [0, 1).
    """
    if n < 1 or n > r:
        raise ValueError(f"orders must satisfy 1 <= n <= r, got n={n}, r={r}")
    arr = np.asarray(rho, dtype=float)
    if np.any(arr < 0.0) or np.any(arr >= 1.0):
        raise ValueError("rho must lie in [0, 1)")
    h = 1.0 - arr
    out = h ** (r - n) * w(h)
    return float(out) if np.isscalar(rho) or arr.ndim == 0 else out
