"""Proximate growth scales and coefficient-side growth estimation.

A proximate order is a slowly varying refinement rho(r) of a constant growth
order rho: rho(r) -> rho and rho'(r)*r*ln(r) -> 0.  We work with its
normalisation, the strictly increasing bijection t(r) = r^rho(r) of (0, inf)
onto itself, its inverse phi, and the gauge sequence

    G_q = phi(q)^q / (e*rho)^(q/rho),

which is supermultiplicative and controls extremal coefficient decay.

Only three parametric families are supported; each admits a verified
monotone normalisation.  Arbitrary user scales are deliberately excluded:
the whole calculus rests on monotonicity of t.

All quantities of factorial scale (G_q, K_q, coefficient norms at large
degree) are carried as natural logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp

from .errors import InvariantViolationError, UndefinedOrderError
from .multiindex import MultiIndex, ln_c_nm, mi_abs
from .series import MonogenicSeries, series_eval
from .sampling import sphere_points

FAMILIES = ("constant", "logshift", "loglog")

_LN_R_MIN = math.log(1e-8)


@dataclass(frozen=True)
class ProximateOrder:
    """One of the supported growth-scale families.

    constant:  rho(r) = rho                      t(r) = r^rho
    logshift:  rho(r) = rho + a/ln(r)            t(r) = e^a * r^rho
    loglog:    rho(r) = rho + a*ln(ln r)/ln(r)   t(r) = r^rho * (ln r)^a  (large r)

    The loglog family is only monotone for large r; below the cutover radius
    the scale is replaced by the power law matching value and slope there
    (a C1 join), pinned to t(0+) = 0.  For constant and logshift the raw
    scale is already a monotone bijection and the cap is the identity.
    """

    family: str
    rho: float
    a: float = 0.0
    # cutover: ln r1 of the power-law cap; -inf when no cap is needed
    ln_cutover: float = field(init=False)
    _cap_slope: float = field(init=False)
    _cap_ln_t1: float = field(init=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown proximate-order family {self.family!r}")
        if not self.rho > 0:
            raise ValueError(f"order must be positive, got {self.rho}")
        if self.family == "loglog":
            ln_r1 = max(2.0, 2.0 * abs(self.a) / self.rho)
            slope = self.rho + self.a / ln_r1
            ln_t1 = self.rho * ln_r1 + self.a * math.log(ln_r1)
        else:
            ln_r1, slope, ln_t1 = -math.inf, self.rho, -math.inf
        object.__setattr__(self, "ln_cutover", ln_r1)
        object.__setattr__(self, "_cap_slope", slope)
        object.__setattr__(self, "_cap_ln_t1", ln_t1)

    # -- the normalised scale t(r) = r^rho^(r), in log coordinates ---------

    def ln_scale_at_ln_r(self, ln_r):
        """ln t at ln r; accepts scalars or numpy arrays."""
        ln_r = np.asarray(ln_r, dtype=float)
        if self.family == "constant":
            out = self.rho * ln_r
        elif self.family == "logshift":
            out = self.a + self.rho * ln_r
        else:
            safe = np.maximum(ln_r, self.ln_cutover)
            raw = self.rho * safe + self.a * np.log(safe)
            cap = self._cap_ln_t1 + self._cap_slope * (ln_r - self.ln_cutover)
            out = np.where(ln_r >= self.ln_cutover, raw, cap)
        return out if out.ndim else float(out)

    def log_slope_at_ln_r(self, ln_r):
        """d ln t / d ln r; positive everywhere (strict monotonicity)."""
        ln_r = np.asarray(ln_r, dtype=float)
        if self.family in ("constant", "logshift"):
            out = np.full_like(ln_r, self.rho)
        else:
            safe = np.maximum(ln_r, self.ln_cutover)
            out = np.where(ln_r >= self.ln_cutover, self.rho + self.a / safe, self._cap_slope)
        return out if out.ndim else float(out)

    def scale(self, r: float) -> float:
        """t(r) = r^rho^(r); strictly increasing from (0,inf) onto (0,inf)."""
        if r <= 0:
            raise ValueError("scale is defined for r > 0")
        return math.exp(self.ln_scale_at_ln_r(math.log(r)))

    def exponent(self, r: float) -> float:
        """The normalised exponent at r, i.e. ln t(r) / ln r.

        Singular at r = 1 for scales with t(1) != 1 (any representation
        r^exponent forces value 1 there); raises in that case.
        """
        if r <= 0:
            raise ValueError("exponent is defined for r > 0")
        ln_r = math.log(r)
        if abs(ln_r) < 1e-300:
            if self.family == "constant":
                return self.rho
            raise ValueError("exponent representation is singular at r = 1")
        return self.ln_scale_at_ln_r(ln_r) / ln_r

    def raw_exponent(self, r: float) -> float:
        """The family formula before normalisation (reference only)."""
        ln_r = math.log(r)
        if self.family == "constant":
            return self.rho
        if self.family == "logshift":
            return self.rho + self.a / ln_r
        return self.rho + self.a * math.log(ln_r) / ln_r

    def decay_at_ln_r(self, ln_r: float) -> float:
        """rho'(r) * r * ln(r) of the raw family; tends to 0 as r grows."""
        if self.family == "constant":
            return 0.0
        if self.family == "logshift":
            return -self.a / ln_r
        return self.a * (1.0 - math.log(ln_r)) / ln_r

    # -- inverse phi --------------------------------------------------------

    def ln_phi_at_ln_t(self, ln_t: float) -> float:
        """ln of the inverse: the unique ln r with ln t(r) = ln_t."""
        if self.family == "constant":
            return ln_t / self.rho
        if self.family == "logshift":
            return (ln_t - self.a) / self.rho
        if ln_t <= self._cap_ln_t1:
            return self.ln_cutover + (ln_t - self._cap_ln_t1) / self._cap_slope
        lo = self.ln_cutover
        hi = max(lo + 1.0, (ln_t - self.a * math.log(lo)) / self.rho + 1.0)
        for _ in range(200):
            if self.ln_scale_at_ln_r(hi) >= ln_t:
                break
            hi = lo + 2.0 * (hi - lo)
        else:
            raise InvariantViolationError("failed to bracket the scale inverse")
        func = lambda L: self.ln_scale_at_ln_r(L) - ln_t
        if func(lo) > 0 or func(hi) < 0:
            raise InvariantViolationError("scale is not monotone on the bracket")
        return float(brentq(func, lo, hi, xtol=1e-13, rtol=8.9e-16))

    def phi(self, t: float) -> float:
        """Inverse of the normalised scale: phi(t(r)) = r."""
        if t <= 0:
            raise ValueError("phi is defined for t > 0")
        return math.exp(self.ln_phi_at_ln_t(math.log(t)))

    # -- the gauge sequence -------------------------------------------------

    def ln_gq(self, q: int) -> float:
        """ln G_q = q*ln(phi(q)) - (q/rho)(1 + ln rho); G_0 = 1 by convention."""
        if q < 0:
            raise ValueError("q must be >= 0")
        if q == 0:
            return 0.0
        ln_phi_q = self.ln_phi_at_ln_t(math.log(q))
        return q * ln_phi_q - (q / self.rho) * (1.0 + math.log(self.rho))

    def gq(self, q: int) -> float:
        return math.exp(self.ln_gq(q))

    # -- peaks of r^q * exp(-sigma*t(r)) -------------------------------------

    def ln_weight_peak(self, q: float, sigma: float) -> tuple[float, float]:
        """(ln r*, peak value) of q*ln r - sigma*t(r) over r > 0.

        For q = 0 the sup is 0, approached as r -> 0.  The objective's
        stationarity condition sigma * t(r) * dlnt/dlnr = q has a unique
        root because both factors increase.
        """
        if sigma <= 0:
            raise ValueError("sigma must be positive")
        if q == 0:
            return _LN_R_MIN, 0.0
        target = math.log(q / sigma)

        def excess(L):
            return self.ln_scale_at_ln_r(L) + math.log(self.log_slope_at_ln_r(L)) - target

        lo, hi = -5.0, 5.0
        for _ in range(300):
            if excess(lo) < 0:
                break
            lo -= 5.0
        for _ in range(300):
            if excess(hi) > 0:
                break
            hi += 5.0
        L_star = float(brentq(excess, lo, hi, xtol=1e-12, rtol=8.9e-16))
        value = q * L_star - sigma * math.exp(self.ln_scale_at_ln_r(L_star))
        return L_star, value

    def to_dict(self) -> dict:
        return {"family": self.family, "rho": self.rho, "a": self.a}

    @classmethod
    def from_dict(cls, data: Mapping) -> "ProximateOrder":
        return cls(str(data["family"]), float(data["rho"]), float(data.get("a", 0.0)))

    @classmethod
    def parse(cls, spec: str) -> "ProximateOrder":
        """Parse 'family:rho' or 'family:rho:a' (the CLI --po format)."""
        parts = spec.split(":")
        if len(parts) not in (2, 3):
            raise ValueError(f"expected family:rho[:a], got {spec!r}")
        a = float(parts[2]) if len(parts) == 3 else 0.0
        return cls(parts[0], float(parts[1]), a)


def constant_order(rho: float) -> ProximateOrder:
    return ProximateOrder("constant", rho)


# ---------------------------------------------------------------------------
# Weighted sup norms of truncated series
# ---------------------------------------------------------------------------


def _degree_log_norms(f: MonogenicSeries) -> tuple[np.ndarray, np.ndarray]:
    table = f.degree_norms()
    qs = np.array(sorted(q for q, v in table.items() if v > 0.0), dtype=float)
    lnA = np.array([math.log(table[int(q)]) for q in qs])
    return qs, lnA


def weighted_norm_ln(
    f: MonogenicSeries,
    po: ProximateOrder,
    sigma: float,
    samples: int = 32,
    seed: int = 0,
    cells: int = 20000,
) -> tuple[float, float]:
    """Natural-log bracket of sup_x norm(f(x)) * exp(-sigma * t(norm(x))).

    Upper bound: per-degree peak bounds (sum over degrees of the sup of each
    triangle-inequality term) intersected with a cell envelope on a window
    covering every per-degree peak -- on each cell the envelope multiplies
    the increasing factor at the right edge by the decreasing weight at the
    left edge, so the bound is rigorous for the coefficient-envelope
    functional.  Lower bound: sampled max modulus at candidate radii near the
    peak (axis directions always included); 0 samples keeps axis points only.
    """
    qs, lnA = _degree_log_norms(f)
    if len(qs) == 0:
        return -math.inf, -math.inf
    if len(qs) == 1 and qs[0] == 0:
        # constant series: the sup is the constant's norm, approached as r -> 0
        return float(lnA[0]), float(lnA[0])
    peak_pairs = [po.ln_weight_peak(float(q), sigma) for q in qs]
    peaks = np.array([p[0] for p in peak_pairs])
    term_sups = lnA + np.array([p[1] for p in peak_pairs])
    upper_sum_form = float(logsumexp(term_sups))

    lo = min(peaks.min() - 1.0, _LN_R_MIN)
    hi = peaks.max() + 1.0
    grid = np.linspace(lo, hi, cells + 1)
    ln_t = po.ln_scale_at_ln_r(grid)
    # ln U at every grid point: logsumexp over degrees of lnA + q*ln r
    powers = lnA[None, :] + qs[None, :] * grid[:, None]
    ln_u = logsumexp(powers, axis=1)
    cell_env = ln_u[1:] - sigma * np.exp(ln_t[:-1])
    # every per-degree term rises toward its peak and falls past it, so left
    # of the window everything is below U at the left edge (weight <= 1) and
    # right of it everything is below the last edge value
    right_edge = float(ln_u[-1] - sigma * math.exp(ln_t[-1]))
    upper_env = max(float(cell_env.max()), right_edge, float(ln_u[0]))
    ln_upper = min(upper_sum_form, upper_env)

    grid_vals = ln_u - sigma * np.exp(ln_t)
    best = int(np.argmax(grid_vals))
    candidates = {grid[best]}
    candidates.update(peaks.tolist())
    ln_lower = -math.inf
    for L in candidates:
        r = math.exp(L)
        sampled = 0.0
        for x in sphere_points(f.n, r, max(samples, 1), seed=seed):
            sampled = max(sampled, series_eval(f, x).norm())
        if sampled > 0.0:
            value = math.log(sampled) - sigma * math.exp(po.ln_scale_at_ln_r(L))
            ln_lower = max(ln_lower, value)
    return ln_lower, ln_upper


def weighted_norm(
    f: MonogenicSeries,
    po: ProximateOrder,
    sigma: float,
    samples: int = 32,
    seed: int = 0,
) -> tuple[float, float]:
    """Linear-scale version of weighted_norm_ln; overflows to inf if needed."""
    ln_lo, ln_hi = weighted_norm_ln(f, po, sigma, samples=samples, seed=seed)
    to_lin = lambda v: 0.0 if v == -math.inf else (math.exp(v) if v < 700 else math.inf)
    return to_lin(ln_lo), to_lin(ln_hi)


def k_q(
    f: MonogenicSeries, q: int, samples: int = 256, seed: int = 0
) -> tuple[float, float]:
    """Bracket of the unit-ball sup of the degree-q homogeneous part.

    Lower: sampled max on the unit sphere (the part is homogeneous, so the
    ball sup sits on the boundary), axis points included.  Upper: sum of
    coefficient norms, since each basis polynomial has unit-ball sup <= 1.
    """
    part = f.homogeneous_part(q)
    if part.is_zero():
        return 0.0, 0.0
    upper = sum(a.norm() for a in part.coeffs.values())
    if q == 0:
        value = part.coeff((0,) * f.n).norm()
        return value, upper
    lower = 0.0
    for x in sphere_points(f.n, 1.0, max(samples, 1), seed=seed):
        lower = max(lower, series_eval(part, x).norm())
    return lower, upper


# ---------------------------------------------------------------------------
# Log-domain coefficient data
# ---------------------------------------------------------------------------


def log_coeff_norms(f: MonogenicSeries) -> dict[MultiIndex, float]:
    """ln of each nonzero coefficient norm."""
    out = {}
    for m, a in f.coeffs.items():
        norm = a.norm()
        if norm > 0:
            out[m] = math.log(norm)
    return out


def log_kq_upper(log_norms: Mapping[MultiIndex, float]) -> dict[int, float]:
    """Per-degree ln of the coefficient-norm sums (upper bounds for K_q)."""
    buckets: dict[int, list[float]] = {}
    for m, v in log_norms.items():
        buckets.setdefault(mi_abs(m), []).append(v)
    return {q: float(logsumexp(vals)) for q, vals in buckets.items()}


def log_kq_lower_from_norms(
    log_norms: Mapping[MultiIndex, float], n: int
) -> dict[int, float]:
    """Per-degree max of ln(norm(a_m)/c(n,m)), a K_q lower bound by the
    coefficient inequality norm(a_m) <= c(n,m) * K_q."""
    out: dict[int, float] = {}
    for m, v in log_norms.items():
        q = mi_abs(m)
        cand = v - ln_c_nm(n, m)
        if q not in out or cand > out[q]:
            out[q] = cand
    return out


def axis_log_norms(
    n: int, rho: float, sigma: float, q_lo: int, q_hi: int
) -> dict[MultiIndex, float]:
    """Synthetic family supported on the first axis with order rho, type sigma:
    scalar coefficients norm (e*rho*sigma/q)^(q/rho) at m = (q, 0, ..., 0)."""
    out = {}
    for q in range(max(q_lo, 1), q_hi + 1):
        m = (q,) + (0,) * (n - 1)
        out[m] = (q / rho) * (1.0 + math.log(rho * sigma) - math.log(q))
    return out


# ---------------------------------------------------------------------------
# Order / type estimators (finite-window surrogates of limit superiors)
# ---------------------------------------------------------------------------


def _window_indices(
    log_norms: Mapping[MultiIndex, float], window: tuple[int, int]
) -> list[MultiIndex]:
    q_lo, q_hi = window
    picked = [m for m in log_norms if q_lo <= mi_abs(m) <= q_hi]
    if not picked:
        raise UndefinedOrderError(
            f"no nonzero coefficients with degree in [{q_lo}, {q_hi}]"
        )
    return picked


def order_from_coeffs(
    log_norms: Mapping[MultiIndex, float], window: tuple[int, int], n: int
) -> float:
    """Growth order from coefficients: the finite-window max of

        |m| ln|m| / ( ln c(n,m) - ln norm(a_m) ).

    The ratio converges like 1/ln q, so small windows carry a systematic
    bias of that size; the window is the caller's statement of scale.
    """
    best = -math.inf
    for m in _window_indices(log_norms, window):
        q = mi_abs(m)
        if q == 0:
            continue
        denom = ln_c_nm(n, m) - log_norms[m]
        ratio = math.inf if denom <= 0 else q * math.log(q) / denom
        best = max(best, ratio)
    if best == -math.inf:
        raise UndefinedOrderError("window contains only the constant term")
    return best


def type_from_coeffs(
    log_norms: Mapping[MultiIndex, float], rho: float, window: tuple[int, int]
) -> float:
    """Growth type for a known order: (1/(e*rho)) * max |m| * norm(a_m)^(rho/|m|).

    A window holding only the constant term gives type 0 (bounded function)."""
    if rho <= 0:
        raise ValueError("order must be positive")
    best = -math.inf
    for m in _window_indices(log_norms, window):
        q = mi_abs(m)
        if q == 0:
            continue
        best = max(best, math.log(q) + (rho / q) * log_norms[m])
    if best == -math.inf:
        return 0.0
    return math.exp(best) / (math.e * rho)


def type_from_kq(
    log_kq: Mapping[int, float], po: ProximateOrder, window: tuple[int, int]
) -> float:
    """Type from unit-ball peaks of homogeneous parts:

        (1/rho) ln sigma = max_q [ (1/q) ln K_q + ln phi(q) ] - 1/rho - ln(rho)/rho.
    """
    q_lo, q_hi = window
    rho = po.rho
    best = -math.inf
    for q, ln_kq_val in log_kq.items():
        if q_lo <= q <= q_hi and q >= 1 and ln_kq_val > -math.inf:
            best = max(best, ln_kq_val / q + po.ln_phi_at_ln_t(math.log(q)))
    if best == -math.inf:
        raise UndefinedOrderError(f"no positive K_q in window [{q_lo}, {q_hi}]")
    return math.exp(rho * best - 1.0 - math.log(rho))


@dataclass
class MembershipReport:
    """Finite-window surrogate of the coefficient membership criterion."""

    window: tuple[int, int]
    kq_value: float
    coeff_value: float | None = None
    dimension_slack: float | None = None

    @property
    def value(self) -> float:
        return self.kq_value


def membership_limsup(
    log_kq: Mapping[int, float],
    po: ProximateOrder,
    window: tuple[int, int],
    log_norms: Mapping[MultiIndex, float] | None = None,
    n: int | None = None,
) -> MembershipReport:
    """max over the window of (K_q G_q)^(rho/q): the weighted space a function
    enters is read off from whether this stays <= sigma.

    When coefficient data is supplied the per-degree variant
    (max_m norm(a_m) G_q)^(rho/q) is also reported together with the n^rho
    slack that relates the two criteria.
    """
    q_lo, q_hi = window
    rho = po.rho
    best = -math.inf
    for q, ln_kq_val in log_kq.items():
        if q_lo <= q <= q_hi and q >= 1 and ln_kq_val > -math.inf:
            best = max(best, (rho / q) * (ln_kq_val + po.ln_gq(q)))
    kq_value = 0.0 if best == -math.inf else math.exp(best)
    report = MembershipReport(window=window, kq_value=kq_value)
    if log_norms is not None and n is not None:
        per_q: dict[int, float] = {}
        for m, v in log_norms.items():
            q = mi_abs(m)
            if q_lo <= q <= q_hi and q >= 1:
                per_q[q] = max(per_q.get(q, -math.inf), v)
        cbest = -math.inf
        for q, ln_max in per_q.items():
            cbest = max(cbest, (rho / q) * (ln_max + po.ln_gq(q)))
        report.coeff_value = 0.0 if cbest == -math.inf else math.exp(cbest)
        report.dimension_slack = float(n) ** rho
    return report


# ---------------------------------------------------------------------------
# Growth reports
# ---------------------------------------------------------------------------

GROWTH_CSV_COLUMNS = ("q", "ln_Kq_lower", "ln_Kq_upper", "ln_Gq", "kq_rhs", "membership_value")


@dataclass
class GrowthReport:
    """Per-degree growth diagnostics plus window estimates.

    kq_rhs is the per-degree type read off the K_q formula (upper K_q
    consumed); membership_value is the per-degree (K_q G_q)^(rho/q).
    """

    po: ProximateOrder
    window: tuple[int, int]
    qs: list[int]
    ln_kq_lower: list[float]
    ln_kq_upper: list[float]
    ln_gq: list[float]
    kq_rhs: list[float]
    membership_value: list[float]
    order_estimate: float | None
    type_estimate_coeffs: float | None
    type_estimate_kq: float
    sigma_test: float | None = None
    member_verdict: bool | None = None

    def rows(self) -> list[tuple]:
        return [
            (
                self.qs[i],
                self.ln_kq_lower[i],
                self.ln_kq_upper[i],
                self.ln_gq[i],
                self.kq_rhs[i],
                self.membership_value[i],
            )
            for i in range(len(self.qs))
        ]

    def to_csv(self) -> str:
        lines = [",".join(GROWTH_CSV_COLUMNS)]
        for row in self.rows():
            lines.append(
                ",".join([str(row[0])] + [format(v, ".17g") for v in row[1:]])
            )
        return "\n".join(lines) + "\n"


def growth_report(
    po: ProximateOrder,
    window: tuple[int, int],
    n: int,
    log_norms: Mapping[MultiIndex, float] | None = None,
    log_kq_bounds: Mapping[int, tuple[float, float]] | None = None,
    sigma_test: float | None = None,
) -> GrowthReport:
    """Assemble per-degree diagnostics from coefficient norms and/or K_q data.

    With only coefficient norms, K_q is bracketed by the coefficient
    inequalities (max norm/c below, norm sum above).
    """
    if log_norms is None and log_kq_bounds is None:
        raise ValueError("need coefficient norms or K_q data")
    bounds: dict[int, tuple[float, float]] = {}
    if log_kq_bounds is not None:
        bounds.update({int(q): (float(v[0]), float(v[1])) for q, v in log_kq_bounds.items()})
    elif log_norms is not None:
        lower = log_kq_lower_from_norms(log_norms, n)
        upper = log_kq_upper(log_norms)
        bounds = {q: (lower[q], upper[q]) for q in upper}
    q_lo, q_hi = window
    qs = sorted(q for q in bounds if q_lo <= q <= q_hi and q >= 1)
    if not qs:
        raise UndefinedOrderError(f"no degrees with data in window [{q_lo}, {q_hi}]")
    rho = po.rho
    ln_gq = [po.ln_gq(q) for q in qs]
    kq_rhs = []
    member = []
    for i, q in enumerate(qs):
        ln_up = bounds[q][1]
        bracket = ln_up / q + po.ln_phi_at_ln_t(math.log(q))
        kq_rhs.append(math.exp(rho * bracket - 1.0 - math.log(rho)))
        member.append(math.exp((rho / q) * (ln_up + ln_gq[i])))
    order_est = None
    type_coeffs = None
    if log_norms is not None:
        try:
            order_est = order_from_coeffs(log_norms, window, n)
            type_coeffs = type_from_coeffs(log_norms, rho, window)
        except UndefinedOrderError:
            pass
    type_kq = type_from_kq({q: bounds[q][1] for q in qs}, po, window)
    report = GrowthReport(
        po=po,
        window=window,
        qs=qs,
        ln_kq_lower=[bounds[q][0] for q in qs],
        ln_kq_upper=[bounds[q][1] for q in qs],
        ln_gq=ln_gq,
        kq_rhs=kq_rhs,
        membership_value=member,
        order_estimate=order_est,
        type_estimate_coeffs=type_coeffs,
        type_estimate_kq=type_kq,
        sigma_test=sigma_test,
    )
    if sigma_test is not None:
        report.member_verdict = max(member) <= sigma_test * (1.0 + 1e-9)
    return report
