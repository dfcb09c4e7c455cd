"""Closed-form moments against a direct Fock-sum oracle and exact identities."""

import math

import numpy as np
import pytest

from tmsvkit import (
    MomentQuery,
    ResourceSpec,
    moment_antinormal,
    moment_normal,
    normalization,
    resource_expectations,
)
from tmsvkit.errors import DegenerateStateError, EnvelopeError


def fock_moment(p, q, h, j, r, normal, cutoff=250):
    """Squeezed-vacuum moment summed directly over the Fock ladder.

    The state is sech(r) sum_n tanh(r)^n |n, n>.  For the normal-ordered
    product a^dag^q a^p b^dag^j b^h the |n, n> component maps to
    |n - p + q, n - h + j>, so only bra components with matching indices
    contribute; the antinormal case raises first.  Pure test oracle, no
    shared code with the package.
    """
    t = math.tanh(r)
    amp = [1.0 / math.cosh(r) * t**n for n in range(cutoff)]

    def ln_ff(a, b):
        # ln( a! / b! ) for a >= b
        return math.lgamma(a + 1) - math.lgamma(b + 1)

    total = 0.0
    for n in range(cutoff):
        if normal:
            if n < p or n < h:
                continue
            na, nb = n - p + q, n - h + j
            if na >= cutoff or nb >= cutoff or na != nb:
                continue
            w = 0.5 * (ln_ff(n, n - p) + ln_ff(na, n - p) + ln_ff(n, n - h) + ln_ff(nb, n - h))
            total += amp[n] * amp[na] * math.exp(w)
        else:
            na, nb = n + q - p, n + j - h
            if n + q >= cutoff or n + j >= cutoff or na != nb or na < 0:
                continue
            w = 0.5 * (ln_ff(n + q, n) + ln_ff(n + q, na) + ln_ff(n + j, n) + ln_ff(n + j, nb))
            total += amp[n] * amp[na] * math.exp(w)
    return total


class TestMomentFamilies:
    def test_trace_is_one(self):
        assert moment_antinormal(MomentQuery(0, 0, 0, 0), 0.7) == 1.0
        assert moment_normal(MomentQuery(0, 0, 0, 0), 0.7) == 1.0

    def test_delta_kills_single_operator(self):
        assert moment_antinormal(MomentQuery(1, 0, 0, 0), 0.5) == 0.0

    def test_antinormal_pair(self):
        # <a a^dag> = cosh^2 r
        assert moment_antinormal(MomentQuery(1, 1, 0, 0), 0.5) == pytest.approx(
            math.cosh(0.5) ** 2, rel=1e-14
        )
        assert moment_antinormal(MomentQuery(1, 1, 0, 0), 0.5) == pytest.approx(
            fock_moment(1, 1, 0, 0, 0.5, normal=False), rel=1e-12
        )

    def test_normal_pair(self):
        # <a^dag a> = sinh^2 r
        assert moment_normal(MomentQuery(1, 1, 0, 0), 0.5) == pytest.approx(
            math.sinh(0.5) ** 2, rel=1e-14
        )

    def test_normal_cross(self):
        assert moment_normal(MomentQuery(1, 1, 1, 1), 0.5) == pytest.approx(
            fock_moment(1, 1, 1, 1, 0.5, normal=True), rel=1e-12
        )

    @pytest.mark.parametrize("normal", [True, False])
    def test_fock_oracle_grid(self, normal):
        fn = moment_normal if normal else moment_antinormal
        for p, q, h, j in [(2, 1, 2, 1), (3, 1, 2, 0), (2, 2, 2, 2), (0, 2, 4, 2), (4, 4, 0, 0)]:
            for r in (0.2, 0.8):
                ours = fn(MomentQuery(p, q, h, j), r)
                ref = fock_moment(p, q, h, j, r, normal=normal)
                assert ours == pytest.approx(ref, rel=1e-11, abs=1e-13)

    def test_delta_selection_random(self):
        rng = np.random.default_rng(42)
        checked = 0
        while checked < 1000:
            p, q, h, j = (int(v) for v in rng.integers(0, 8, size=4))
            if p + j == q + h:
                continue
            qy = MomentQuery(p, q, h, j)
            assert moment_normal(qy, 0.9) == 0.0
            assert moment_antinormal(qy, 0.9) == 0.0
            checked += 1

    def test_exponent_bound(self):
        with pytest.raises(EnvelopeError):
            MomentQuery(65, 0, 0, 0)

    def test_r_envelope(self):
        with pytest.raises(EnvelopeError):
            moment_normal(MomentQuery(1, 1, 0, 0), 5.5)


class TestSymmetricIdentity:
    def test_normal_matches_antinormal_after_rescale(self):
        for k in range(1, 7):
            for r in (0.1, 0.5, 1.0, 2.0):
                lhs = moment_normal(MomentQuery(k, k, k, k), r) * math.tanh(r) ** (-2 * k)
                rhs = moment_antinormal(MomentQuery(k, k, k, k), r)
                assert lhs == pytest.approx(rhs, rel=1e-10)


class TestNormalization:
    def test_one_mode_added(self):
        spec = ResourceSpec("add", 1, 0, 0.5)
        assert normalization(spec) == pytest.approx(math.cosh(0.5) ** 2, rel=1e-13)

    def test_tmsv_is_unit(self):
        assert normalization(ResourceSpec("subtract", 0, 0, 0.7)) == pytest.approx(1.0, rel=1e-14)

    def test_consistency_with_moment(self):
        spec = ResourceSpec("subtract", 2, 2, 0.5)
        assert normalization(spec) == pytest.approx(
            moment_normal(MomentQuery(2, 2, 2, 2), 0.5), rel=1e-12
        )

    @pytest.mark.parametrize("kind", ["subtract", "add"])
    def test_mode_exchange(self, kind):
        for k, l in ((2, 0), (3, 1), (1, 2)):
            for r in (0.3, 1.1):
                a = normalization(ResourceSpec(kind, k, l, r))
                b = normalization(ResourceSpec(kind, l, k, r))
                assert a == pytest.approx(b, rel=1e-12)

    def test_degenerate_subtraction_rejected(self):
        with pytest.raises(DegenerateStateError):
            ResourceSpec("subtract", 1, 1, 0.0)

    def test_envelope(self):
        with pytest.raises(EnvelopeError):
            ResourceSpec("subtract", 31, 0, 0.5)
        with pytest.raises(EnvelopeError):
            ResourceSpec("add", 1, 1, 5.5)
        with pytest.raises(EnvelopeError):
            ResourceSpec("both", 1, 1, 0.5)


class TestResourceExpectations:
    def test_tmsv_photon_number(self):
        e = resource_expectations(ResourceSpec("subtract", 0, 0, 0.8))
        assert e.n_a == pytest.approx(math.sinh(0.8) ** 2, rel=1e-13)
        assert e.n_b == pytest.approx(math.sinh(0.8) ** 2, rel=1e-13)

    def test_subtracted_number_is_moment_ratio(self):
        e = resource_expectations(ResourceSpec("subtract", 1, 1, 0.5))
        num = moment_normal(MomentQuery(2, 2, 1, 1), 0.5)
        den = moment_normal(MomentQuery(1, 1, 1, 1), 0.5)
        assert e.n_a == pytest.approx(num / den, rel=1e-12)

    def test_added_number_closed_form(self):
        e = resource_expectations(ResourceSpec("add", 1, 0, 0.5))
        assert e.n_a == pytest.approx(2.0 * math.cosh(0.5) ** 2 - 1.0, rel=1e-12)

    def test_pair_correlator_symmetry(self):
        e = resource_expectations(ResourceSpec("add", 2, 1, 0.9))
        assert e.adag_bdag == e.ab

    def test_vacuum_added_state(self):
        # r = 0 photon-added state |k, l> has simple occupation numbers
        e = resource_expectations(ResourceSpec("add", 2, 1, 0.0))
        assert e.n_a == pytest.approx(2.0, abs=1e-12)
        assert e.n_b == pytest.approx(1.0, abs=1e-12)
        assert e.ab == pytest.approx(0.0, abs=1e-12)
        assert e.na_nb == pytest.approx(2.0, abs=1e-12)
