"""Mixed partial derivatives of exp(quadratic + linear form) at the origin.

Several quantities in this package are defined as high-order derivatives

    d^{o0+o1+o2+o3} / dx0^{o0} dx1^{o1} dx2^{o2} dx3^{o3}  exp(Q(x) + L(x)) |_{x=0}

of the exponential of a quadratic-plus-linear form in four formal variables.
Rather than differentiating symbolically, the coefficient of the target
monomial x0^{o0} x1^{o1} x2^{o2} x3^{o3} is read off a truncated polynomial
expansion of the exponential: with per-variable degree caps equal to the
requested orders, summing form^m / m! for m up to the total order is exact
(higher powers of the form cannot reach the capped target monomial, and the
form has no constant term).  Multiplying the coefficient by the factorials
of the orders gives the derivative.

A second, structurally independent backend (:func:`wick_extract`) evaluates
the same derivative by enumerating pairings of derivative slots against the
quadratic coefficients and singletons against the linear ones, and exists
purely as a cross-check witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EnvelopeError
from .special import LogReal

__all__ = [
    "Poly4",
    "ExponentForm",
    "extract_coefficient",
    "extract_coefficient_logreal",
    "wick_extract",
]

N_VARS = 4
MAX_ORDER = 30
MAX_WICK_SLOTS = 16

# Upper-triangle index pairs in a fixed documented order.
QUAD_PAIRS = tuple((i, j) for i in range(N_VARS) for j in range(i, N_VARS))


@dataclass(frozen=True)
class ExponentForm:
    """A quadratic-plus-linear exponent in four formal variables.

    ``quad[(i, j)]`` with i <= j is the coefficient of x_i x_j (so the
    diagonal entry multiplies x_i^2 once, not twice); ``lin[i]`` is the
    coefficient of x_i.  The constant term is implicitly zero; overall
    constant factors belong outside the engine.
    """

    quad: tuple = field(default=())  # ((i, j, coeff), ...) with i <= j
    lin: tuple = field(default=(0.0, 0.0, 0.0, 0.0))

    @staticmethod
    def build(quad: dict | None = None, lin=(0.0, 0.0, 0.0, 0.0)) -> "ExponentForm":
        """Construct from a {(i, j): coeff} dict (i <= j) and a linear 4-vector."""
        items = []
        for (i, j), c in sorted((quad or {}).items()):
            if not (0 <= i <= j < N_VARS):
                raise EnvelopeError(f"quadratic index pair {(i, j)} out of range")
            if c != 0.0:
                items.append((i, j, float(c)))
        lin = tuple(float(v) for v in lin)
        if len(lin) != N_VARS:
            raise EnvelopeError("linear part must have exactly four coefficients")
        return ExponentForm(quad=tuple(items), lin=lin)

    def pair_matrix(self) -> np.ndarray:
        """Symmetric matrix g with g[i][j] = d^2(form)/dx_i dx_j at 0."""
        g = np.zeros((N_VARS, N_VARS))
        for i, j, c in self.quad:
            if i == j:
                g[i, i] += 2.0 * c
            else:
                g[i, j] += c
                g[j, i] += c
        return g

    def monomials(self):
        """All nonzero monomials as (exponent-tuple, coefficient) pairs."""
        out = []
        for i, j, c in self.quad:
            e = [0] * N_VARS
            e[i] += 1
            e[j] += 1
            out.append((tuple(e), c))
        for i, c in enumerate(self.lin):
            if c != 0.0:
                e = [0] * N_VARS
                e[i] = 1
                out.append((tuple(e), c))
        return out

    def scaled(self, sigma: float) -> "ExponentForm":
        """The form under x -> x / sqrt(sigma): quadratics divide by sigma,
        linears by sqrt(sigma)."""
        quad = tuple((i, j, c / sigma) for i, j, c in self.quad)
        lin = tuple(c / math.sqrt(sigma) for c in self.lin)
        return ExponentForm(quad=quad, lin=lin)


class Poly4:
    """Dense polynomial in four variables with per-variable degree caps.

    Multiplication truncates: monomials exceeding any cap are discarded,
    which is sound for coefficient extraction because the exponent form has
    no negative-degree terms, so discarded monomials can never feed back
    into the capped target coefficient.  Instances are treated as immutable
    after construction.
    """

    __slots__ = ("caps", "coeffs")

    def __init__(self, caps, coeffs=None):
        self.caps = tuple(int(c) for c in caps)
        if len(self.caps) != N_VARS or any(c < 0 for c in self.caps):
            raise EnvelopeError(f"Poly4 needs four nonnegative caps, got {caps}")
        shape = tuple(c + 1 for c in self.caps)
        if coeffs is None:
            coeffs = np.zeros(shape)
        else:
            coeffs = np.asarray(coeffs, dtype=float)
            if coeffs.shape != shape:
                raise EnvelopeError(f"coefficient array shape {coeffs.shape} != caps+1 {shape}")
        coeffs.flags.writeable = False
        self.coeffs = coeffs

    @staticmethod
    def one(caps) -> "Poly4":
        p = Poly4(caps)
        c = np.array(p.coeffs)
        c[(0,) * N_VARS] = 1.0
        return Poly4(caps, c)

    @staticmethod
    def from_form(form: ExponentForm, caps) -> "Poly4":
        p = Poly4(caps)
        c = np.array(p.coeffs)
        for e, v in form.monomials():
            if all(e[i] <= p.caps[i] for i in range(N_VARS)):
                c[e] += v
        return Poly4(caps, c)

    def coefficient(self, exponents) -> float:
        return float(self.coeffs[tuple(exponents)])

    def _mul_sparse(self, monos) -> "Poly4":
        """Multiply by a short monomial list, truncating at the caps."""
        shape = self.coeffs.shape
        out = np.zeros(shape)
        for e, v in monos:
            if v == 0.0 or any(e[i] > self.caps[i] for i in range(N_VARS)):
                continue
            src = self.coeffs[
                : shape[0] - e[0], : shape[1] - e[1], : shape[2] - e[2], : shape[3] - e[3]
            ]
            out[e[0]:, e[1]:, e[2]:, e[3]:] += v * src
        return Poly4(self.caps, out)

    def __mul__(self, other: "Poly4") -> "Poly4":
        if self.caps != other.caps:
            raise EnvelopeError("Poly4 multiplication requires matching caps")
        monos = [
            (tuple(idx), other.coeffs[tuple(idx)])
            for idx in np.argwhere(other.coeffs != 0.0)
        ]
        return self._mul_sparse(monos)

    def exp_of_form(self, form: ExponentForm, max_total_degree: int) -> "Poly4":
        """Truncated exp(form) via Horner accumulation of sum_m form^m / m!.

        Each factor of the form raises the total degree by at least one, so
        max_total_degree = sum(caps) terms suffice for exactness at the caps.
        """
        monos = form.monomials()
        acc = Poly4.one(self.caps)
        for m in range(max_total_degree, 0, -1):
            scaled = [(e, v / m) for e, v in monos]
            acc = acc._mul_sparse(scaled)
            c = np.array(acc.coeffs)
            c[(0,) * N_VARS] += 1.0
            acc = Poly4(self.caps, c)
        return acc


def _check_orders(orders):
    if len(orders) != N_VARS:
        raise EnvelopeError(f"orders must have four entries, got {orders}")
    for o in orders:
        if o < 0 or o != int(o):
            raise EnvelopeError(f"orders must be nonnegative integers, got {orders}")
        if o > MAX_ORDER:
            raise EnvelopeError(f"order {o} exceeds the supported cap {MAX_ORDER}")
    return tuple(int(o) for o in orders)


def extract_coefficient(form: ExponentForm, orders) -> float:
    """The mixed partial derivative of exp(form) at the origin.

    Equivalently orders[0]! * orders[1]! * orders[2]! * orders[3]! times the
    coefficient of the monomial x^orders in exp(form).  Exact up to float
    rounding; there is no truncation error by construction.
    """
    orders = _check_orders(orders)
    poly = Poly4(orders).exp_of_form(form, sum(orders))
    coeff = poly.coefficient(orders)
    for o in orders:
        coeff *= math.factorial(o)
    return coeff


def extract_coefficient_logreal(form: ExponentForm, orders) -> LogReal:
    """Log-domain variant of :func:`extract_coefficient`.

    Rescales the variables so the largest form coefficient becomes O(1)
    before expanding, then restores the scale in log domain.  Callers that
    divide the result by very large normalization factors use this to stay
    inside double range end to end.
    """
    orders = _check_orders(orders)
    sigma = max(
        [abs(c) for _, _, c in form.quad] + [c * c for c in form.lin] + [1.0]
    )
    raw = extract_coefficient(form.scaled(sigma), orders)
    if raw == 0.0:
        return LogReal.zero()
    return LogReal.from_log(
        math.log(abs(raw)) + 0.5 * sum(orders) * math.log(sigma),
        1 if raw > 0 else -1,
    )


def wick_extract(form: ExponentForm, orders) -> float:
    """Same derivative as :func:`extract_coefficient`, by pairing enumeration.

    The derivative slots (orders[i] copies of variable i) are partitioned
    into pairs, weighted by the second derivatives of the form, and
    singletons, weighted by the first derivatives; only size-1 and size-2
    blocks appear because the form's third derivatives vanish.  The
    recursion is memoized on remaining slot counts.  Kept deliberately
    independent of the polynomial engine; used as a second witness in tests.
    """
    orders = _check_orders(orders)
    if sum(orders) > MAX_WICK_SLOTS:
        raise EnvelopeError(
            f"wick_extract enumerates pairings and refuses totals above {MAX_WICK_SLOTS}"
        )
    g = form.pair_matrix()
    lin = form.lin
    cache: dict[tuple, float] = {}

    def recurse(counts: tuple) -> float:
        if not any(counts):
            return 1.0
        if counts in cache:
            return cache[counts]
        u = next(i for i, c in enumerate(counts) if c > 0)
        rest = list(counts)
        rest[u] -= 1
        total = lin[u] * recurse(tuple(rest)) if lin[u] != 0.0 else 0.0
        for v in range(N_VARS):
            partners = rest[v]
            if partners <= 0 or g[u, v] == 0.0:
                continue
            rest2 = list(rest)
            rest2[v] -= 1
            total += partners * g[u, v] * recurse(tuple(rest2))
        cache[counts] = total
        return total

    return recurse(orders)
