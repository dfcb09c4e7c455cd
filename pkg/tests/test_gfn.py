"""Derivative-extraction engine: trivial cases, backend equivalence, and
reproduction of the closed-form moment families."""

import math

import numpy as np
import pytest

from tmsvkit import ExponentForm, MomentQuery, Poly4, extract_coefficient, wick_extract
from tmsvkit import moment_antinormal, moment_normal
from tmsvkit.errors import EnvelopeError
from tmsvkit.gfn import extract_coefficient_logreal

# variable layout used throughout: (0, 1, 2, 3) = (f, s, t, tau)


def moment_form(r, normal):
    w = math.sinh(r) ** 2 if normal else math.cosh(r) ** 2
    sh = math.sinh(2 * r) / 2
    return ExponentForm.build({(0, 1): w, (2, 3): w, (0, 2): sh, (1, 3): sh})


def random_form(rng):
    quad = {
        (i, j): float(rng.uniform(-2, 2))
        for i in range(4)
        for j in range(i, 4)
        if rng.random() < 0.7
    }
    lin = [float(rng.uniform(-2, 2)) if rng.random() < 0.5 else 0.0 for _ in range(4)]
    return ExponentForm.build(quad, lin)


class TestTrivialCases:
    def test_single_cross_term(self):
        form = ExponentForm.build({(0, 1): 1.7})
        assert extract_coefficient(form, (1, 1, 0, 0)) == pytest.approx(1.7, rel=1e-15)
        assert wick_extract(form, (1, 1, 0, 0)) == pytest.approx(1.7, rel=1e-15)

    def test_unreachable_monomial(self):
        form = ExponentForm.build({(0, 2): 2.5})  # only f t present
        assert extract_coefficient(form, (1, 1, 0, 0)) == 0.0
        assert wick_extract(form, (1, 1, 0, 0)) == 0.0

    def test_linear_singletons(self):
        form = ExponentForm.build({}, lin=(0.3, -1.2, 0.0, 0.0))
        assert wick_extract(form, (1, 1, 0, 0)) == pytest.approx(0.3 * -1.2, rel=1e-15)
        assert extract_coefficient(form, (1, 1, 0, 0)) == pytest.approx(0.3 * -1.2, rel=1e-15)

    def test_zero_orders_give_one(self):
        form = ExponentForm.build({(0, 0): 0.4})
        assert extract_coefficient(form, (0, 0, 0, 0)) == 1.0
        assert wick_extract(form, (0, 0, 0, 0)) == 1.0


class TestMomentReproduction:
    @pytest.mark.parametrize("r", [0.2, 0.8])
    def test_equal_order_moments(self, r):
        for normal, closed in ((True, moment_normal), (False, moment_antinormal)):
            form = moment_form(r, normal)
            for p in range(5):
                for h in range(5):
                    engine = extract_coefficient(form, (p, p, h, h))
                    ref = closed(MomentQuery(p, p, h, h), r)
                    assert engine == pytest.approx(ref, rel=1e-12, abs=1e-13)

    @pytest.mark.parametrize("r", [0.2, 0.8])
    def test_general_order_moments(self, r):
        # caps follow the orders, so mixed (p, q, h, j) works the same way
        for normal, closed in ((True, moment_normal), (False, moment_antinormal)):
            form = moment_form(r, normal)
            for orders in ((2, 1, 2, 1), (3, 1, 2, 0), (1, 2, 3, 2), (2, 2, 1, 1)):
                engine = extract_coefficient(form, orders)
                ref = closed(MomentQuery(*orders), r)
                assert engine == pytest.approx(ref, rel=1e-12, abs=1e-13)

    def test_specific_antinormal_pair(self):
        form = moment_form(0.5, normal=False)
        assert extract_coefficient(form, (1, 1, 0, 0)) == pytest.approx(
            math.cosh(0.5) ** 2, rel=1e-13
        )


class TestBackendEquivalence:
    def test_random_forms(self):
        rng = np.random.default_rng(1234)
        done = 0
        while done < 200:
            form = random_form(rng)
            orders = tuple(int(v) for v in rng.integers(0, 3, size=4))
            if sum(orders) > 8 or sum(orders) == 0:
                continue
            a = extract_coefficient(form, orders)
            b = wick_extract(form, orders)
            assert a == pytest.approx(b, rel=1e-10, abs=1e-12)
            done += 1

    def test_wick_refuses_large_totals(self):
        form = ExponentForm.build({(0, 1): 1.0})
        with pytest.raises(EnvelopeError):
            wick_extract(form, (5, 5, 4, 4))

    def test_engine_accepts_beyond_wick_guard(self):
        # the polynomial engine has no combinatorial blowup
        form = moment_form(0.4, normal=True)
        value = extract_coefficient(form, (5, 5, 4, 4))
        assert value == pytest.approx(moment_normal(MomentQuery(5, 5, 4, 4), 0.4), rel=1e-11)

    def test_linear_scaling_property(self):
        # with no quadratic coupling to f, the order-1 derivative in f is
        # linear in the f coefficient
        rng = np.random.default_rng(7)
        quad = {(1, 2): 0.8, (2, 3): -0.4, (1, 1): 0.3}
        for _ in range(10):
            a = float(rng.uniform(-2, 2))
            lam = float(rng.uniform(0.1, 3.0))
            base = ExponentForm.build(quad, lin=(a, 0.5, 0.0, 0.1))
            scaled = ExponentForm.build(quad, lin=(lam * a, 0.5, 0.0, 0.1))
            orders = (1, 2, 1, 0)
            v1 = extract_coefficient(base, orders)
            v2 = extract_coefficient(scaled, orders)
            assert v2 == pytest.approx(lam * v1, rel=1e-11, abs=1e-13)


class TestEngineBounds:
    def test_order_cap(self):
        form = ExponentForm.build({(0, 1): 1.0})
        with pytest.raises(EnvelopeError):
            extract_coefficient(form, (31, 0, 0, 0))

    def test_logreal_variant_matches(self):
        form = moment_form(0.9, normal=False)
        for orders in ((2, 2, 1, 1), (3, 3, 3, 3)):
            plain = extract_coefficient(form, orders)
            logged = extract_coefficient_logreal(form, orders).to_float()
            assert logged == pytest.approx(plain, rel=1e-12)


class TestPoly4:
    def test_truncating_multiplication(self):
        # x0 * x0 overflows a cap of 1 and is discarded
        f = Poly4.from_form(ExponentForm.build({}, lin=(1.0, 0.0, 0.0, 0.0)), (1, 0, 0, 0))
        prod = f * f
        assert np.all(prod.coeffs == 0.0)

    def test_one_is_multiplicative_identity(self):
        caps = (2, 2, 1, 1)
        form = ExponentForm.build({(0, 1): 0.5, (2, 3): -1.0})
        p = Poly4.from_form(form, caps)
        q = p * Poly4.one(caps)
        assert np.allclose(q.coeffs, p.coeffs)

    def test_immutable_coefficients(self):
        p = Poly4.one((1, 1, 1, 1))
        with pytest.raises(ValueError):
            p.coeffs[0, 0, 0, 0] = 2.0

    def test_cap_mismatch_rejected(self):
        with pytest.raises(EnvelopeError):
            Poly4.one((1, 1, 1, 1)) * Poly4.one((2, 1, 1, 1))
