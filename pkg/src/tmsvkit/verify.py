"""Self-verification suite: exact identities and closed-form-vs-oracle
equivalences, runnable from the CLI.

Each check yields a :class:`CheckResult` with the measured deviation and its
tolerance; the CLI turns any failure into a nonzero exit status.  An
optional tolerance override replaces every check's tolerance (useful for
demonstrating what double precision can and cannot do).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gfn, metrics, moments, oracle, states, teleport
from .moments import KIND_ADD, KIND_SUBTRACT, MomentQuery, ResourceSpec

__all__ = ["CheckResult", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


def run_checks(tolerance_override: float | None = None) -> list[CheckResult]:
    results = []

    def record(name, deviation, tol):
        tol = tolerance_override if tolerance_override is not None else tol
        results.append(CheckResult(name, float(deviation), tol))

    # symmetric-operation identity: N_{k,k} tanh^{-2k} r = C_{k,k}
    dev = 0.0
    for k in range(1, 7):
        for r in (0.1, 0.5, 1.0, 2.0):
            lhs = moments.moment_normal(MomentQuery(k, k, k, k), r) * math.tanh(r) ** (-2 * k)
            rhs = moments.moment_antinormal(MomentQuery(k, k, k, k), r)
            dev = max(dev, _rel(lhs, rhs))
    record("symmetric-normalization identity (k<=6)", dev, 1e-10)

    # EPR correlation is exactly four times the collective-P variance
    dev = 0.0
    for kind in (KIND_SUBTRACT, KIND_ADD):
        for k in range(4):
            for l in range(4):
                for r in (0.1, 0.5, 1.0, 1.5, 2.0):
                    spec = ResourceSpec(kind, k, l, r)
                    dev = max(
                        dev,
                        _rel(
                            metrics.epr_correlation(spec),
                            4.0 * metrics.quadrature_variances(spec)[1],
                        ),
                    )
    record("epr equals 4 var(P)", dev, 1e-12)

    # one-mode closed form (2k+2) e^{-2r} vs the general ratio path
    dev = 0.0
    for kind in (KIND_SUBTRACT, KIND_ADD):
        for k in range(6):
            for r in (0.2, 0.8, 1.5):
                spec = ResourceSpec(kind, k, 0, r)
                dev = max(dev, _rel(metrics.epr_correlation(spec), (2 * k + 2) * math.exp(-2 * r)))
    record("one-mode epr closed form (k<=5)", dev, 1e-10)

    # symmetric add/subtract states share the Schmidt spectrum
    dev = 0.0
    for k in range(1, 5):
        for r in (0.2, 0.8, 1.5):
            e_ps = states.entropy(ResourceSpec(KIND_SUBTRACT, k, k, r))
            e_pa = states.entropy(ResourceSpec(KIND_ADD, k, k, r))
            dev = max(dev, abs(e_ps - e_pa))
    record("symmetric add/subtract entropy equality", dev, 1e-9)

    # adding k photons to mode A == subtracting k from mode B
    dev = 0.0
    for k in range(1, 4):
        for r in (0.3, 0.9):
            wa = states.schmidt(states.build_state(ResourceSpec(KIND_ADD, k, 0, r))).weights
            ws = states.schmidt(states.build_state(ResourceSpec(KIND_SUBTRACT, 0, k, r))).weights
            n = min(len(wa), len(ws))
            dev = max(dev, float(np.max(np.abs(wa[:n] - ws[:n]))))
    record("one-mode add/subtract Schmidt equivalence", dev, 1e-10)

    # squeezed-input engine reduces to the coherent closed forms at eps = 0
    dev = 0.0
    for kind in (KIND_SUBTRACT, KIND_ADD):
        for k in range(4):
            for l in range(4):
                for r in (0.2, 0.8):
                    spec = ResourceSpec(kind, k, l, r)
                    f_cf = teleport.fidelity_coherent(spec).value
                    f_gf = teleport.fidelity_squeezed(spec, teleport.squeezed_input(0.0)).value
                    dev = max(dev, _rel(f_cf, f_gf))
    record("eps->0 reduction of squeezed fidelity", dev, 1e-10)

    # one-mode Legendre form vs the engine
    dev = 0.0
    for k in range(4):
        for r in (0.3, 0.9):
            for eps in (0.0, 0.5):
                f_lp = teleport.fidelity_one_mode(k, r, eps)
                spec = ResourceSpec(KIND_SUBTRACT, k, 0, r)
                f_gf = teleport.fidelity_squeezed(spec, teleport.squeezed_input(eps)).value
                dev = max(dev, _rel(f_lp, f_gf))
    record("one-mode Legendre fidelity vs engine", dev, 1e-9)

    # polynomial engine vs pairing enumeration on the moment forms
    dev = 0.0
    for r in (0.2, 0.8):
        for normal in (True, False):
            w = math.sinh(r) ** 2 if normal else math.cosh(r) ** 2
            form = gfn.ExponentForm.build(
                {(0, 1): w, (2, 3): w, (0, 2): math.sinh(2 * r) / 2, (1, 3): math.sinh(2 * r) / 2}
            )
            for orders in ((1, 1, 0, 0), (2, 2, 1, 1), (1, 1, 2, 2)):
                dev = max(
                    dev,
                    _rel(gfn.extract_coefficient(form, orders), gfn.wick_extract(form, orders)),
                )
    record("derivative engine vs pairing backend", dev, 1e-10)

    # delta selection: off-diagonal queries vanish identically
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(200):
        p, q, h, j = (int(v) for v in rng.integers(0, 5, size=4))
        if p + j == q + h:
            q = q + 1 if q < 5 else q - 1
            if p + j == q + h:
                continue
        worst = max(
            worst,
            abs(moments.moment_normal(MomentQuery(p, q, h, j), 0.7)),
            abs(moments.moment_antinormal(MomentQuery(p, q, h, j), 0.7)),
        )
    record("delta selection rule", worst, 0.0)

    # brute-force oracle equivalence on a small grid; the oracle states are
    # built tighter than the quadrature default so truncation error stays
    # well below the comparison tolerance
    dev_m = 0.0
    dev_metrics = 0.0
    for kind in (KIND_SUBTRACT, KIND_ADD):
        for (k, l) in ((0, 0), (1, 0), (1, 1), (2, 1)):
            for r in (0.2, 0.8):
                spec = ResourceSpec(kind, k, l, r)
                st = oracle.oracle_state(spec, tail_tol=1e-14)
                e_cf = moments.resource_expectations(spec)
                ev = oracle._oracle_expectations(st)
                for name, closed in (
                    ("n_a", e_cf.n_a),
                    ("n_b", e_cf.n_b),
                    ("ab", e_cf.ab),
                    ("a2b2", e_cf.a2b2),
                    ("na_nb", e_cf.na_nb),
                ):
                    dev_m = max(dev_m, _rel(ev[name], closed))
                rep_o = oracle.oracle_metrics(st)
                rep_c = metrics.metrics_report(spec)
                dev_metrics = max(dev_metrics, _rel(rep_o.epr, rep_c.epr))
                dev_metrics = max(dev_metrics, _rel(rep_o.var_p, rep_c.var_p))
                dev_metrics = max(
                    dev_metrics, _rel(rep_o.sum_squeeze_opt, rep_c.sum_squeeze_opt)
                )
                dev_metrics = max(dev_metrics, abs(rep_o.entropy_bits - rep_c.entropy_bits))
    record("oracle equivalence: expectations", dev_m, 1e-8)
    record("oracle equivalence: metrics", dev_metrics, 1e-8)

    # quadrature witness on a small sample
    dev = 0.0
    for kind in (KIND_SUBTRACT, KIND_ADD):
        spec = ResourceSpec(kind, 1, 1, 0.5)
        f_quad = teleport.fidelity_quadrature(spec, teleport.coherent_input()).value
        f_cf = teleport.fidelity_coherent(spec).value
        dev = max(dev, abs(f_quad - f_cf))
    record("oracle equivalence: quadrature fidelity", dev, 1e-6)

    return results
