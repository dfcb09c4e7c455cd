"""Ideal unit-gain continuous-variable teleportation fidelities.

Three evaluation routes coexist deliberately:

* closed forms (Jacobi polynomial for the subtracted resource, a factorial
  ratio for the added one, Legendre for one-mode operations),
* the generating-function engine, which evaluates the derivative
  representation of the overlap integral and is the normative path for
  squeezed inputs at general (k, l) where no closed form exists,
* plane-integral quadrature over the truncated Fock state (in
  :mod:`tmsvkit.oracle`), the independent witness.

The expressions depend on the coherent amplitude of a coherent input not at
all, so ``beta`` is carried only for the quadrature witness to verify that
independence numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EnvelopeError
from .gfn import ExponentForm, extract_coefficient_logreal
from .moments import KIND_ADD, KIND_SUBTRACT, ResourceSpec, normalization_logreal
from .special import LogReal, jacobi_logreal, legendre, log_factorial

__all__ = [
    "InputState",
    "FidelityResult",
    "coherent_input",
    "squeezed_input",
    "fidelity_coherent",
    "fidelity_squeezed",
    "fidelity_one_mode",
    "fidelity_quadrature",
    "tmsv_squeezed_fidelity",
    "fidelity_exponent_form",
    "parametric_curve",
]

MAX_INPUT_SQUEEZING = 3.0

METHOD_CLOSED_FORM = "closed_form"
METHOD_GFN = "gfn"
METHOD_QUADRATURE = "quadrature"


@dataclass(frozen=True)
class InputState:
    """Teleportation input: a coherent state or a squeezed vacuum.

    ``beta`` documents the coherent amplitude (the fidelity is independent
    of it); ``epsilon`` is the single-mode squeezing parameter, ignored for
    coherent inputs.
    """

    kind: str
    beta: complex = 0j
    epsilon: float = 0.0

    def __post_init__(self):
        if self.kind not in ("coherent", "squeezed"):
            raise EnvelopeError(f"input kind must be 'coherent' or 'squeezed', got {self.kind!r}")
        if self.epsilon < 0:
            raise EnvelopeError(f"input squeezing must be nonnegative, got {self.epsilon}")
        if self.epsilon > MAX_INPUT_SQUEEZING:
            raise EnvelopeError(
                f"input squeezing is supported up to {MAX_INPUT_SQUEEZING}, got {self.epsilon}"
            )


def coherent_input(beta: complex = 0j) -> InputState:
    return InputState("coherent", beta=beta)


def squeezed_input(epsilon: float) -> InputState:
    return InputState("squeezed", epsilon=epsilon)


@dataclass(frozen=True)
class FidelityResult:
    """A fidelity value together with the route that produced it."""

    value: float
    method: str


def _denominator(r: float, epsilon: float) -> float:
    """The common Gaussian denominator 2 e^{-2r} cosh(2 eps) + e^{-4r} + 1."""
    em2r = math.exp(-2.0 * r)
    return 2.0 * em2r * math.cosh(2.0 * epsilon) + em2r * em2r + 1.0


def tmsv_squeezed_fidelity(r: float, epsilon: float) -> float:
    """Fidelity of teleporting a squeezed vacuum with the plain squeezed
    vacuum resource; reduces to 1/(e^{-2r}+1) at epsilon = 0."""
    return 1.0 / math.sqrt(_denominator(r, epsilon))


def fidelity_exponent_form(kind: str, r: float, epsilon: float) -> ExponentForm:
    """The four-variable exponent whose (k, k, l, l) derivative gives the
    squeezed-input fidelity (up to the F0/normalization prefactor).

    Variables are ordered (0, 1, 2, 3) = (f, s, t, tau): one
    derivative-per-photon-operation slot pair per mode.  Subtract and add
    kinds share the structure; they differ by sinh^2 r vs cosh^2 r in the
    pair block and by (e^{-2r} -+ 1)^2 in the input-coupling blocks.
    """
    em2r = math.exp(-2.0 * r)
    d = _denominator(r, epsilon)
    sig = -1.0 if kind == KIND_SUBTRACT else 1.0
    w = math.sinh(r) ** 2 if kind == KIND_SUBTRACT else math.cosh(r) ** 2
    half_sinh2r = math.sinh(2.0 * r) / 2.0
    a = (em2r + sig) ** 2 * (em2r + math.cosh(2.0 * epsilon)) / (4.0 * d)
    b = (em2r + sig) ** 2 * math.sinh(2.0 * epsilon) / (8.0 * d)
    # (fs + t tau) w + (ft + s tau) sinh(2r)/2 + (f - tau)(t - s) a
    #   + ((f - tau)^2 + (t - s)^2) b, expanded onto the ten monomials
    return ExponentForm.build(
        {
            (0, 0): b,
            (1, 1): b,
            (2, 2): b,
            (3, 3): b,
            (0, 1): w - a,
            (0, 2): half_sinh2r + a,
            (0, 3): -2.0 * b,
            (1, 2): -2.0 * b,
            (1, 3): half_sinh2r + a,
            (2, 3): w - a,
        }
    )


def fidelity_coherent(spec: ResourceSpec) -> FidelityResult:
    """Closed-form fidelity for a coherent-state input.

    Subtract kind: Jacobi-polynomial form; add kind: factorial-ratio form.
    Both reduce to (1/(e^{-2r}+1))^{k+1} for one-mode operations, and to the
    classical bound 1/2 at r = 0 for the plain resource.
    """
    k, l = (spec.k, spec.l) if spec.k >= spec.l else (spec.l, spec.k)
    r = spec.r
    em2r = math.exp(-2.0 * r)
    norm = normalization_logreal(spec)
    if spec.kind == KIND_SUBTRACT:
        e2r = math.exp(2.0 * r)
        y = (e2r * e2r + 2.0 * e2r + 5.0) / (4.0 * e2r + 4.0)
        lead = LogReal.from_log(
            k * math.log(2.0)
            + log_factorial(k)
            + log_factorial(l)
            - math.log(em2r + 1.0)
        )
        if l > 0:
            lead = lead * LogReal.from_log(l * math.log((e2r - 1.0) ** 2 / (4.0 * e2r + 4.0)))
        value = (lead * jacobi_logreal(k, l - k, 0, y) / norm).to_float()
    else:
        lead = LogReal.from_log(
            log_factorial(k + l)
            + (k + l) * math.log((math.exp(2.0 * r) + 1.0) / 4.0)
            - math.log(em2r + 1.0)
        )
        value = (lead / norm).to_float()
    return FidelityResult(value=value, method=METHOD_CLOSED_FORM)


def fidelity_squeezed(spec: ResourceSpec, input_state: InputState) -> FidelityResult:
    """Squeezed-vacuum-input fidelity via the generating-function engine.

    This is the normative route for general (k, l); at epsilon = 0 it
    reproduces the coherent closed forms to full precision.
    """
    if input_state.kind != "squeezed":
        raise EnvelopeError("fidelity_squeezed expects a squeezed-vacuum input state")
    eps = input_state.epsilon
    form = fidelity_exponent_form(spec.kind, spec.r, eps)
    deriv = extract_coefficient_logreal(form, (spec.k, spec.k, spec.l, spec.l))
    f0 = LogReal.from_log(-0.5 * math.log(_denominator(spec.r, eps)))
    value = (f0 * deriv / normalization_logreal(spec)).to_float()
    return FidelityResult(value=value, method=METHOD_GFN)


def fidelity_one_mode(k: int, r: float, epsilon: float = 0.0) -> float:
    """Legendre closed form for k photon operations on a single mode.

    Valid for either subtraction or addition (the two are equivalent for
    one-mode operations).  At epsilon = 0 it collapses to
    (1/(e^{-2r}+1))^{k+1}.
    """
    if k < 0:
        raise EnvelopeError(f"photon count must be nonnegative, got {k}")
    d = _denominator(r, epsilon)
    f0 = 1.0 / math.sqrt(d)
    x = (math.exp(-2.0 * r) * math.cosh(2.0 * epsilon) + 1.0) / math.sqrt(d)
    return f0 ** (k + 1) * legendre(k, x)


def fidelity_quadrature(
    spec: ResourceSpec,
    input_state: InputState,
    tail_tol: float = 1e-12,
    nodes: int = 160,
) -> FidelityResult:
    """Plane-integral fidelity over the truncated Fock resource state.

    The independent witness for every closed form: tensor Gauss-Legendre
    quadrature of the characteristic-function overlap, with the grid doubled
    once as a convergence check.  Never touches the polynomial engine or the
    Jacobi forms.
    """
    from .oracle import quadrature_fidelity  # deferred: oracle pulls in numba

    value = quadrature_fidelity(spec, input_state, tail_tol=tail_tol, nodes=nodes)
    return FidelityResult(value=value, method=METHOD_QUADRATURE)


X_AXIS_R = "r"
X_AXIS_EPR = "epr"
X_AXIS_ENTROPY = "entropy"


def parametric_curve(spec_shape: tuple, input_state: InputState, x_axis: str, grid) -> list:
    """Fidelity along a grid of squeezing, EPR-correlation, or entropy values.

    For the EPR and entropy axes each grid value is inverted to the
    squeezing parameter by bisection before the fidelity is evaluated.
    Returns (x, fidelity) pairs in grid order.
    """
    from .metrics import solve_r_for_epr, solve_r_for_entropy

    kind, k, l = spec_shape
    points = []
    for x in grid:
        if x_axis == X_AXIS_R:
            r = float(x)
        elif x_axis == X_AXIS_EPR:
            r = solve_r_for_epr(spec_shape, float(x))
        elif x_axis == X_AXIS_ENTROPY:
            r = solve_r_for_entropy(spec_shape, float(x))
        else:
            raise EnvelopeError(f"unknown x axis {x_axis!r}")
        spec = ResourceSpec(kind, k, l, r)
        if input_state.kind == "coherent":
            f = fidelity_coherent(spec).value
        else:
            f = fidelity_squeezed(spec, input_state).value
        points.append((float(x), f))
    return points
