"""Teleportation fidelities: closed forms, engine route, quadrature witness."""

import math

import pytest

from tmsvkit import (
    ResourceSpec,
    coherent_input,
    fidelity_coherent,
    fidelity_one_mode,
    fidelity_quadrature,
    fidelity_squeezed,
    parametric_curve,
    squeezed_input,
    tmsv_squeezed_fidelity,
)
from tmsvkit.errors import EnvelopeError
from tmsvkit.teleport import InputState


def one_mode_coherent(k, r):
    return (1.0 / (math.exp(-2 * r) + 1.0)) ** (k + 1)


class TestCoherentClosedForm:
    def test_classical_bound_at_zero_squeezing(self):
        for kind in ("subtract", "add"):
            res = fidelity_coherent(ResourceSpec(kind, 0, 0, 0.0))
            assert res.value == pytest.approx(0.5, abs=1e-12)
            assert res.method == "closed_form"

    def test_tmsv_simple_point(self):
        # e^{-2r} = 1/2 gives exactly 2/3
        r = math.log(2) / 2
        assert fidelity_coherent(ResourceSpec("subtract", 0, 0, r)).value == pytest.approx(
            2 / 3, rel=1e-12
        )

    def test_reference_values(self):
        assert fidelity_coherent(ResourceSpec("subtract", 1, 1, 0.1798)).value == pytest.approx(
            0.6637, abs=1e-3
        )
        assert fidelity_coherent(ResourceSpec("subtract", 2, 0, 0.8959)).value == pytest.approx(
            0.6300, abs=1e-3
        )

    def test_one_mode_reduction(self):
        for kind in ("subtract", "add"):
            for k in range(4):
                for r in (0.3, 0.9):
                    got = fidelity_coherent(ResourceSpec(kind, k, 0, r)).value
                    assert got == pytest.approx(one_mode_coherent(k, r), rel=1e-11)

    def test_mode_exchange_symmetry(self):
        for kind in ("subtract", "add"):
            a = fidelity_coherent(ResourceSpec(kind, 2, 1, 0.6)).value
            b = fidelity_coherent(ResourceSpec(kind, 1, 2, 0.6)).value
            assert a == pytest.approx(b, rel=1e-13)

    def test_subtraction_beats_plain_resource(self):
        for k in (1, 2, 3):
            for r in (0.1, 0.4, 0.8, 1.4):
                f_ps = fidelity_coherent(ResourceSpec("subtract", k, k, r)).value
                f_0 = fidelity_coherent(ResourceSpec("subtract", 0, 0, r)).value
                f_pa = fidelity_coherent(ResourceSpec("add", k, k, r)).value
                assert f_ps > f_0 > f_pa
                assert f_ps > 0.5

    def test_symmetric_optimality_sample(self):
        f22 = fidelity_coherent(ResourceSpec("subtract", 2, 2, 0.5)).value
        f21 = fidelity_coherent(ResourceSpec("subtract", 2, 1, 0.5)).value
        f20 = fidelity_coherent(ResourceSpec("subtract", 2, 0, 0.5)).value
        assert f22 > f21 > f20


class TestSqueezedInput:
    def test_tmsv_denominator_form(self):
        for r, eps in ((0.3, 0.2), (0.9, 0.6)):
            got = fidelity_squeezed(ResourceSpec("subtract", 0, 0, r), squeezed_input(eps)).value
            assert got == pytest.approx(tmsv_squeezed_fidelity(r, eps), rel=1e-12)

    def test_epsilon_zero_reduces_to_coherent(self):
        for kind in ("subtract", "add"):
            for k in range(4):
                for l in range(4):
                    for r in (0.2, 0.8):
                        if kind == "subtract" and k + l > 0 and r == 0:
                            continue
                        spec = ResourceSpec(kind, k, l, r)
                        f_eng = fidelity_squeezed(spec, squeezed_input(0.0)).value
                        f_cf = fidelity_coherent(spec).value
                        assert f_eng == pytest.approx(f_cf, rel=1e-10)

    def test_one_mode_closed_form_vs_engine(self):
        got = fidelity_squeezed(ResourceSpec("subtract", 1, 0, 0.5), squeezed_input(0.4)).value
        assert got == pytest.approx(fidelity_one_mode(1, 0.5, 0.4), rel=1e-11)

    def test_pa_crossover_exists_at_large_squeezing(self):
        # with a squeezed input, symmetric addition eventually beats the
        # plain resource
        eps = 0.6
        wins = []
        for r in (1.5, 1.75, 2.0, 2.25, 2.5):
            f_pa = fidelity_squeezed(ResourceSpec("add", 1, 1, r), squeezed_input(eps)).value
            wins.append(f_pa > tmsv_squeezed_fidelity(r, eps))
        assert any(wins)

    def test_requires_squeezed_kind(self):
        with pytest.raises(EnvelopeError):
            fidelity_squeezed(ResourceSpec("add", 1, 1, 0.5), coherent_input())

    def test_epsilon_envelope(self):
        with pytest.raises(EnvelopeError):
            squeezed_input(3.5)
        with pytest.raises(EnvelopeError):
            InputState("thermal")


class TestOneModeLegendre:
    def test_base_case(self):
        for r in (0.3, 1.0):
            assert fidelity_one_mode(0, r, 0.0) == pytest.approx(
                1 / (math.exp(-2 * r) + 1), rel=1e-13
            )

    def test_coherent_limit(self):
        assert fidelity_one_mode(2, 0.5, 0.0) == pytest.approx(
            one_mode_coherent(2, 0.5), rel=1e-12
        )

    def test_engine_agreement(self):
        spec = ResourceSpec("subtract", 1, 0, 0.8)
        engine = fidelity_squeezed(spec, squeezed_input(0.6)).value
        assert fidelity_one_mode(1, 0.8, 0.6) == pytest.approx(engine, rel=1e-11)

    def test_one_mode_operations_hurt(self):
        for r, eps in ((0.5, 0.3), (1.0, 0.8)):
            values = [fidelity_one_mode(k, r, eps) for k in range(4)]
            assert all(a > b for a, b in zip(values, values[1:]))


class TestQuadratureWitness:
    def test_tmsv_coherent(self):
        res = fidelity_quadrature(ResourceSpec("subtract", 0, 0, 0.5), coherent_input())
        assert res.method == "quadrature"
        assert res.value == pytest.approx(1 / (math.exp(-1) + 1), abs=1e-6)

    def test_added_coherent_closed_form(self):
        spec = ResourceSpec("add", 2, 2, 0.5)
        got = fidelity_quadrature(spec, coherent_input()).value
        assert got == pytest.approx(fidelity_coherent(spec).value, abs=1e-6)

    def test_squeezed_dual_path(self):
        spec = ResourceSpec("subtract", 1, 1, 0.5)
        got = fidelity_quadrature(spec, squeezed_input(0.3)).value
        ref = fidelity_squeezed(spec, squeezed_input(0.3)).value
        assert got == pytest.approx(ref, abs=1e-6)

    def test_amplitude_independence(self):
        spec = ResourceSpec("subtract", 1, 1, 0.5)
        f0 = fidelity_quadrature(spec, coherent_input(0j)).value
        f1 = fidelity_quadrature(spec, coherent_input(1 + 2j)).value
        assert f0 == pytest.approx(f1, abs=1e-6)

    def test_one_mode_triangle(self):
        # Legendre form, engine, and quadrature pairwise within 1e-6
        for k in range(4):
            for r in (0.3, 0.8, 1.3):
                for eps in (0.2, 0.5, 0.8):
                    spec = ResourceSpec("subtract", k, 0, r)
                    f_leg = fidelity_one_mode(k, r, eps)
                    f_eng = fidelity_squeezed(spec, squeezed_input(eps)).value
                    f_quad = fidelity_quadrature(spec, squeezed_input(eps)).value
                    assert f_leg == pytest.approx(f_eng, abs=1e-6)
                    assert f_eng == pytest.approx(f_quad, abs=1e-6)
                    assert f_quad == pytest.approx(f_leg, abs=1e-6)


class TestParametricCurve:
    def test_epr_axis_exact_chain(self):
        pts = parametric_curve(("subtract", 0, 0), coherent_input(), "epr", [1.0])
        assert pts[0][0] == 1.0
        assert pts[0][1] == pytest.approx(2 / 3, abs=1e-9)

    def test_r_axis_reference(self):
        pts = parametric_curve(("subtract", 1, 1), coherent_input(), "r", [0.1798])
        assert pts[0][1] == pytest.approx(0.6637, abs=1e-3)

    def test_epr_axis_reference(self):
        pts = parametric_curve(("subtract", 2, 2), coherent_input(), "epr", [1.0])
        assert pts[0][1] == pytest.approx(0.6632, abs=1e-3)

    def test_entropy_axis(self):
        pts = parametric_curve(("subtract", 0, 0), coherent_input(), "entropy", [1.0])
        from tmsvkit import solve_r_for_entropy

        r = solve_r_for_entropy(("subtract", 0, 0), 1.0)
        assert pts[0][1] == pytest.approx(
            fidelity_coherent(ResourceSpec("subtract", 0, 0, r)).value, rel=1e-9
        )

    def test_squeezed_input_curve(self):
        pts = parametric_curve(("add", 1, 1), squeezed_input(0.3), "r", [0.4, 0.8])
        spec = ResourceSpec("add", 1, 1, 0.8)
        assert pts[1][1] == pytest.approx(
            fidelity_squeezed(spec, squeezed_input(0.3)).value, rel=1e-12
        )

    def test_unknown_axis(self):
        with pytest.raises(EnvelopeError):
            parametric_curve(("subtract", 0, 0), coherent_input(), "volume", [1.0])
