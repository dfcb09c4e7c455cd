"""Closed-form ladder-operator moments of the two-mode squeezed vacuum and
the derived expectation values of photon-subtracted / photon-added states.

The central objects are the two families of squeezed-vacuum moments

* antinormal order, ``<a^p a^dag^q b^h b^dag^j>`` (:func:`moment_antinormal`),
* normal order, ``<a^dag^q a^p b^dag^j b^h>`` (:func:`moment_normal`),

both finite single sums over ``m`` with a Kronecker delta that kills every
query with ``p + j != q + h``.  Setting p=q=k and h=j=l yields the
normalization factors of the photon-added (antinormal family) and
photon-subtracted (normal family) states, which also admit Jacobi-polynomial
closed forms used by :func:`normalization`.

All term accumulation happens in log domain; public functions return floats,
and the ``*_logreal`` internals are available where the caller divides
normalizations out of much larger quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateStateError, EnvelopeError
from .special import LogReal, jacobi_logreal, log_factorial

__all__ = [
    "KIND_SUBTRACT",
    "KIND_ADD",
    "ResourceSpec",
    "MomentQuery",
    "ExpectationSet",
    "moment_antinormal",
    "moment_normal",
    "normalization",
    "resource_expectations",
    "ladder_expectation",
]

KIND_SUBTRACT = "subtract"
KIND_ADD = "add"
_KINDS = (KIND_SUBTRACT, KIND_ADD)

MAX_PHOTON_OPS = 30
MAX_SQUEEZING = 5.0
MAX_EXPONENT = 64


@dataclass(frozen=True)
class ResourceSpec:
    """A photon-subtracted or photon-added two-mode squeezed vacuum state.

    Parameters
    ----------
    kind : str
        ``"subtract"`` or ``"add"``.
    k, l : int
        Number of photon operations on mode A and mode B.
    r : float
        Two-mode squeezing parameter (dimensionless).

    The supported envelope is k, l <= 30 and r <= 5.  Subtraction with
    k + l > 0 requires r > 0: the normalization carries sinh^{2 min(k,l)} r
    and vanishes at r = 0, so the state does not exist there.
    """

    kind: str
    k: int
    l: int
    r: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise EnvelopeError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.k < 0 or self.l < 0 or self.k != int(self.k) or self.l != int(self.l):
            raise EnvelopeError(f"photon counts must be nonnegative integers, got k={self.k}, l={self.l}")
        if self.k > MAX_PHOTON_OPS or self.l > MAX_PHOTON_OPS:
            raise EnvelopeError(f"photon counts are supported up to {MAX_PHOTON_OPS}, got k={self.k}, l={self.l}")
        if self.r < 0:
            raise EnvelopeError(f"squeezing parameter must be nonnegative, got r={self.r}")
        if self.r > MAX_SQUEEZING:
            raise EnvelopeError(f"squeezing parameter is supported up to {MAX_SQUEEZING}, got r={self.r}")
        if self.kind == KIND_SUBTRACT and self.k + self.l > 0 and self.r == 0:
            raise DegenerateStateError(
                "photon subtraction from the r = 0 vacuum leaves a zero-norm state"
            )

    @property
    def is_tmsv(self) -> bool:
        return self.k == 0 and self.l == 0


@dataclass(frozen=True)
class MomentQuery:
    """Operator exponents (p, q, h, j) selecting a four-operator moment."""

    p: int
    q: int
    h: int
    j: int

    def __post_init__(self):
        for name in ("p", "q", "h", "j"):
            v = getattr(self, name)
            if v < 0 or v != int(v):
                raise EnvelopeError(f"exponent {name} must be a nonnegative integer, got {v}")
            if v > MAX_EXPONENT:
                raise EnvelopeError(f"exponent {name} exceeds the supported bound {MAX_EXPONENT}")


@dataclass(frozen=True)
class ExpectationSet:
    """The expectation values the metrics and squeezing formulas consume.

    All six are real for these states; ``adag_bdag`` equals ``ab`` (the
    states carry no phase between the pair-correlated components).
    """

    n_a: float
    n_b: float
    ab: float
    a2b2: float
    na_nb: float
    adag_bdag: float


def _moment_logreal(p: int, q: int, h: int, j: int, r: float, normal: bool) -> LogReal:
    """Shared single-sum evaluator for both moment families.

    The families differ only in the squared-hyperbolic base attached to the
    exponent p+h-2m: sinh^2 r for normal order, cosh^2 r for antinormal.
    Terms are nonnegative, so plain log-domain accumulation is exact up to
    float rounding.
    """
    if p + j != q + h:
        return LogReal.zero()
    base_sq = math.sinh(r) ** 2 if normal else math.cosh(r) ** 2
    half_sinh2r = math.sinh(2.0 * r) / 2.0
    lfac = log_factorial(p) + log_factorial(q) + log_factorial(h) + log_factorial(j)
    total = LogReal.zero()
    for m in range(max(0, h - j), min(p, h) + 1):
        lterm = (
            lfac
            - log_factorial(m)
            - log_factorial(p - m)
            - log_factorial(h - m)
            - log_factorial(j - h + m)
        )
        e1 = p + h - 2 * m
        e2 = j - h + 2 * m
        # 0**0 := 1; a zero base with positive exponent kills the term.
        if base_sq == 0.0 and e1 > 0:
            continue
        if half_sinh2r == 0.0 and e2 > 0:
            continue
        if e1 > 0:
            lterm += e1 * math.log(base_sq)
        if e2 > 0:
            lterm += e2 * math.log(half_sinh2r)
        total = total + LogReal.from_log(lterm)
    return total


def moment_antinormal(query: MomentQuery, r: float) -> float:
    """Squeezed-vacuum expectation of a^p a^dag^q b^h b^dag^j.

    Returns exactly 0 when p + j != q + h (the delta selection rule);
    otherwise the finite sum over contractions, accumulated in log domain.
    """
    _check_r(r)
    return _moment_logreal(query.p, query.q, query.h, query.j, r, normal=False).to_float()


def moment_normal(query: MomentQuery, r: float) -> float:
    """Squeezed-vacuum expectation of a^dag^q a^p b^dag^j b^h."""
    _check_r(r)
    return _moment_logreal(query.p, query.q, query.h, query.j, r, normal=True).to_float()


def _check_r(r: float):
    if r < 0:
        raise EnvelopeError(f"squeezing parameter must be nonnegative, got r={r}")
    if r > MAX_SQUEEZING:
        raise EnvelopeError(f"squeezing parameter is supported up to {MAX_SQUEEZING}, got r={r}")


def normalization_logreal(spec: ResourceSpec) -> LogReal:
    """Normalization factor via the Jacobi closed form, in log domain.

    Assumes nothing about the ordering of (k, l): the two modes of the
    squeezed vacuum are exchange-symmetric, so (k, l) is swapped to k >= l
    before applying the closed form.
    """
    k, l = (spec.k, spec.l) if spec.k >= spec.l else (spec.l, spec.k)
    x = math.cosh(2.0 * spec.r)
    lead = LogReal.from_log(log_factorial(k) + log_factorial(l))
    if spec.kind == KIND_SUBTRACT:
        if k + l > 0 and spec.r == 0:
            raise DegenerateStateError(
                "photon subtraction from the r = 0 vacuum leaves a zero-norm state"
            )
        hyp = LogReal.from_log(2.0 * k * math.log(math.sinh(spec.r))) if k > 0 else LogReal.one()
        poly = jacobi_logreal(l, k - l, 0, x)
    else:
        hyp = LogReal.from_log(2.0 * k * math.log(math.cosh(spec.r))) if k > 0 else LogReal.one()
        poly = jacobi_logreal(l, 0, k - l, x)
    return lead * hyp * poly


def normalization(spec: ResourceSpec) -> float:
    """Normalization factor of the subtracted (N_{k,l}) or added (C_{k,l}) state."""
    return normalization_logreal(spec).to_float()


def _state_moment_logreal(spec: ResourceSpec, p: int, q: int, h: int, j: int) -> LogReal:
    """Squeezed-vacuum moment with the state's own photon operations folded in.

    For subtraction the sandwiched product a^dag^k (a^dag^q a^p) a^k is the
    plain concatenation a^dag^{q+k} a^{p+k} (and likewise on mode B), so any
    normally ordered moment of the state is a shifted normal moment of the
    squeezed vacuum; the added state works the same way in antinormal order.
    """
    normal = spec.kind == KIND_SUBTRACT
    return _moment_logreal(p + spec.k, q + spec.k, h + spec.l, j + spec.l, spec.r, normal=normal)


def ladder_expectation(spec: ResourceSpec, p: int, q: int, h: int, j: int) -> float:
    """Expectation of an ordered ladder monomial in the resource state.

    For subtract-kind states this is <a^dag^q a^p b^dag^j b^h>; for add-kind
    states <a^p a^dag^q b^h b^dag^j> (each kind's natural ordering, in which
    the photon operations concatenate with the queried operators).  First
    moments and pair correlators are ordering-independent, which is what the
    metrics layer uses this for.
    """
    if max(p, q, h, j) + max(spec.k, spec.l) > MAX_EXPONENT:
        raise EnvelopeError("combined operator exponent exceeds the supported bound")
    num = _state_moment_logreal(spec, p, q, h, j)
    den = normalization_logreal(spec)
    return (num / den).to_float()


def resource_expectations(spec: ResourceSpec) -> ExpectationSet:
    """The six expectation values of the resource state used downstream.

    Each is a ratio of shifted squeezed-vacuum moments to the state's
    normalization, assembled in log domain so that large factors cancel
    before exponentiation.  For the added state the number operators pick up
    the antinormal-to-normal corrections (aa^dag = a^dag a + 1).
    """
    den = normalization_logreal(spec)

    def ratio(p, q, h, j):
        return (_state_moment_logreal(spec, p, q, h, j) / den).to_float()

    ab = ratio(1, 0, 1, 0)
    a2b2 = ratio(2, 0, 2, 0)
    if spec.kind == KIND_SUBTRACT:
        n_a = ratio(1, 1, 0, 0)
        n_b = ratio(0, 0, 1, 1)
        na_nb = ratio(1, 1, 1, 1)
    else:
        n_a = ratio(1, 1, 0, 0) - 1.0
        n_b = ratio(0, 0, 1, 1) - 1.0
        # <n_a n_b> = (C_{k+1,l+1} - C_{k+1,l} - C_{k,l+1})/C_{k,l} + 1; the
        # numerator cancels heavily near r = 0, so combine as LogReals first.
        num = (
            _state_moment_logreal(spec, 1, 1, 1, 1)
            - _state_moment_logreal(spec, 1, 1, 0, 0)
            - _state_moment_logreal(spec, 0, 0, 1, 1)
        )
        na_nb = (num / den).to_float() + 1.0
    return ExpectationSet(n_a=n_a, n_b=n_b, ab=ab, a2b2=a2b2, na_nb=na_nb, adag_bdag=ab)
