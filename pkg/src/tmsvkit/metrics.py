"""EPR correlation, collective quadrature variances, and sum squeezing.

All quantities reduce to the expectation values provided by
:mod:`tmsvkit.moments`.  The EPR correlation deliberately evaluates the full
defining expression including the first-moment products (which vanish for
these states) instead of hard-coding zeros, so the identity
``epr == 4 * var_p`` doubles as a consistency check of the moment engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BracketError
from .moments import ResourceSpec, ladder_expectation, resource_expectations
from .states import entropy

__all__ = [
    "MetricsReport",
    "SumSqueezeQuery",
    "epr_correlation",
    "quadrature_variances",
    "sum_squeezing",
    "sum_squeezing_from_terms",
    "sum_squeezing_optimal",
    "optimize_sum_squeezing",
    "solve_r_for_epr",
    "solve_r_for_entropy",
    "metrics_report",
    "VACUUM_QUADRATURE_VARIANCE",
]

# (Delta X)^2 of each collective quadrature in the vacuum; values below it
# witness squeezing.
VACUUM_QUADRATURE_VARIANCE = 0.5


@dataclass(frozen=True)
class SumSqueezeQuery:
    """Quadrature angle phi in [0, pi) for the two-mode sum quadrature."""

    phi: float

    def __post_init__(self):
        if not (0.0 <= self.phi < math.pi):
            raise ValueError(f"phi must lie in [0, pi), got {self.phi}")


@dataclass(frozen=True)
class MetricsReport:
    """The full metrics bundle for one resource state."""

    epr: float
    var_x: float
    var_p: float
    sum_squeeze_opt: float
    phi_opt: float
    entropy_bits: float


def _first_moments(spec: ResourceSpec):
    """(<a>, <a^dag>, <b>, <b^dag>); identically zero by the delta selection
    rule, but computed rather than assumed."""
    mean_a = ladder_expectation(spec, 1, 0, 0, 0)
    mean_adag = ladder_expectation(spec, 0, 1, 0, 0)
    mean_b = ladder_expectation(spec, 0, 0, 1, 0)
    mean_bdag = ladder_expectation(spec, 0, 0, 0, 1)
    return mean_a, mean_adag, mean_b, mean_bdag


def epr_correlation(spec: ResourceSpec) -> float:
    """Total variance of the relative-position / total-momentum pair.

    Values below 2 witness entanglement; 0 is the ideal limit.
    """
    e = resource_expectations(spec)
    a, adag, b, bdag = _first_moments(spec)
    return 2.0 * (e.n_a + e.n_b - e.ab - e.adag_bdag + 1.0) - 2.0 * (a - bdag) * (adag - b)


def quadrature_variances(spec: ResourceSpec) -> tuple[float, float]:
    """((Delta X)^2, (Delta P)^2) of the collective quadratures.

    Squeezing in a direction means the variance is below
    :data:`VACUUM_QUADRATURE_VARIANCE`.
    """
    e = resource_expectations(spec)
    var_x = (e.n_a + e.n_b + 2.0 * e.ab + 1.0) / 2.0
    var_p = (e.n_a + e.n_b - 2.0 * e.ab + 1.0) / 2.0
    return var_x, var_p


def _sum_squeeze_terms(spec: ResourceSpec):
    e = resource_expectations(spec)
    return e.na_nb, e.a2b2, e.ab, e.n_a + e.n_b + 1.0


def sum_squeezing_from_terms(na_nb: float, a2b2: float, ab: float, denom: float, phi: float) -> float:
    """Degree of sum squeezing at angle phi from precomputed real moments."""
    return (
        2.0 * na_nb
        + 2.0 * a2b2 * math.cos(2.0 * phi)
        - 4.0 * (ab * math.cos(phi)) ** 2
    ) / denom


def sum_squeezing(spec: ResourceSpec, query: SumSqueezeQuery) -> float:
    """Degree of sum squeezing S(phi); negative values (>= -1) are nonclassical."""
    na_nb, a2b2, ab, denom = _sum_squeeze_terms(spec)
    return sum_squeezing_from_terms(na_nb, a2b2, ab, denom, query.phi)


def optimize_sum_squeezing(s_of_phi, phi_tol: float = 1e-8) -> tuple[float, float]:
    """Minimize a sum-squeezing profile over [0, pi).

    A 64-point coarse scan locates the basin; golden-section refines the
    angle to ``phi_tol``.  The refined minimum is compared against the scan
    minimum so a hypothetical multi-basin profile cannot pass silently.
    """
    n_scan = 64
    phis = [math.pi * i / n_scan for i in range(n_scan)]
    values = [s_of_phi(p) for p in phis]
    i_best = min(range(n_scan), key=values.__getitem__)
    step = math.pi / n_scan
    lo, hi = phis[i_best] - step, phis[i_best] + step

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = s_of_phi(c), s_of_phi(d)
    while b - a > phi_tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = s_of_phi(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = s_of_phi(d)
    phi_star = ((a + b) / 2.0) % math.pi
    s_star = s_of_phi(phi_star)
    if s_star > values[i_best] + 1e-12:
        # single-minimum assumption violated; trust the scan point
        phi_star, s_star = phis[i_best], values[i_best]
    return phi_star, s_star


def sum_squeezing_optimal(spec: ResourceSpec) -> tuple[float, float]:
    """(phi*, S(phi*)) minimizing the sum-squeezing degree over [0, pi)."""
    na_nb, a2b2, ab, denom = _sum_squeeze_terms(spec)
    return optimize_sum_squeezing(
        lambda phi: sum_squeezing_from_terms(na_nb, a2b2, ab, denom, phi)
    )


def _bisect(f, target: float, lo: float, hi: float, residual_tol: float, max_iter: int = 300) -> float:
    f_lo = f(lo) - target
    f_hi = f(hi) - target
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise BracketError(
            f"target {target} not bracketed on [{lo}, {hi}] (endpoint values "
            f"{f_lo + target:.6g}, {f_hi + target:.6g})"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid) - target
        if abs(f_mid) < residual_tol:
            return mid
        if f_lo * f_mid <= 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo <= 0.0:
            break
    return 0.5 * (lo + hi)


def solve_r_for_epr(spec_shape: tuple, target: float, lo: float = 1e-6, hi: float = 6.0) -> float:
    """Invert the (strictly decreasing) EPR correlation for the squeezing r.

    ``spec_shape`` is (kind, k, l).  Bisection on [lo, hi] until the EPR
    residual is below 1e-10.
    """
    kind, k, l = spec_shape
    hi = min(hi, 5.0)  # stay inside the supported envelope
    return _bisect(
        lambda r: epr_correlation(ResourceSpec(kind, k, l, r)), target, lo, hi, 1e-10
    )


def solve_r_for_entropy(spec_shape: tuple, target: float, lo: float = 1e-6, hi: float = 3.0) -> float:
    """Invert the (strictly increasing) entanglement entropy for r.

    The default upper bracket stays at r = 3 (about 8.4 bits for the plain
    squeezed vacuum): beyond that the weight series needs so many terms
    that the entropy evaluation itself refuses.
    """
    kind, k, l = spec_shape
    hi = min(hi, 3.0)
    return _bisect(
        lambda r: entropy(ResourceSpec(kind, k, l, r)), target, lo, hi, 1e-10
    )


def metrics_report(spec: ResourceSpec) -> MetricsReport:
    """All metrics of one state, with the uncertainty product asserted."""
    epr = epr_correlation(spec)
    var_x, var_p = quadrature_variances(spec)
    phi_opt, s_opt = sum_squeezing_optimal(spec)
    ent = entropy(spec)
    assert var_x * var_p >= 0.25 - 1e-12, "uncertainty relation violated"
    return MetricsReport(
        epr=epr,
        var_x=var_x,
        var_p=var_p,
        sum_squeeze_opt=s_opt,
        phi_opt=phi_opt,
        entropy_bits=ent,
    )
