import math

import numpy as np
import pytest
from scipy.stats import kstest

from stable_info.gridded import GridSpec
from stable_info.specfun import gamma_fn
from stable_info.stable import (
    ReferenceStable,
    StableParams,
    cf_sas,
    default_grid,
    logpdf_sas,
    pdf_grid_sas,
    reference_entropy,
    reference_gamma,
    sample_sas,
    sas_density,
    tail_constant_k1,
)


def cauchy_pdf(x, gamma):
    return gamma / (math.pi * (x**2 + gamma**2))


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            StableParams(alpha=0.0)
        with pytest.raises(ValueError):
            StableParams(alpha=2.5)
        with pytest.raises(ValueError):
            StableParams(alpha=1.5, beta=2.0)
        with pytest.raises(ValueError):
            StableParams(alpha=1.5, gamma=-1.0)

    def test_symmetric_constructor(self):
        p = StableParams.symmetric(1.3, 0.7)
        assert p.beta == 0.0 and p.delta == 0.0
        assert p.alpha == 1.3 and p.gamma == 0.7


class TestCharacteristicFunction:
    def test_gaussian_case(self):
        p = StableParams(alpha=2.0, gamma=1.0)
        # exp(-gamma^2 w^2): variance 2 gamma^2
        assert cf_sas(p, 1.5) == pytest.approx(math.exp(-(1.5**2)), rel=1e-14)

    def test_shift(self):
        p = StableParams(alpha=1.5, gamma=1.0, delta=2.0)
        val = cf_sas(p, 0.7)
        assert abs(val) == pytest.approx(math.exp(-(0.7**1.5)), rel=1e-14)
        assert math.atan2(val.imag, val.real) == pytest.approx(2.0 * 0.7, rel=1e-12)

    def test_vectorized(self):
        p = StableParams(alpha=1.0, gamma=2.0)
        w = np.array([-1.0, 0.0, 1.0])
        out = cf_sas(p, w)
        assert out.shape == (3,)
        assert out[1] == 1.0


class TestTailConstant:
    def test_printed_formula(self):
        # k1 = 2^a sin(pi a/2)/(pi a/2) G((2+a)/2) G((d+a)/2) / G(d/2)
        a, d = 1.3, 3
        half = math.pi * a / 2.0
        expect = (
            2.0**a
            * math.sin(half)
            / half
            * gamma_fn((2.0 + a) / 2.0)
            * gamma_fn((d + a) / 2.0)
            / gamma_fn(d / 2.0)
        )
        assert tail_constant_k1(a, d) == pytest.approx(expect, rel=1e-14)

    def test_cauchy_d1(self):
        # at alpha=1, d=1 the formula collapses to 2 * (2/pi) * G(1.5) / G(0.5)
        val = tail_constant_k1(1.0, 1)
        expect = 2.0 * (2.0 / math.pi) * gamma_fn(1.5) * gamma_fn(1.0) / gamma_fn(0.5)
        assert val == pytest.approx(expect, rel=1e-13)

    def test_domain(self):
        with pytest.raises(ValueError):
            tail_constant_k1(2.0, 1)
        with pytest.raises(ValueError):
            tail_constant_k1(1.5, 0)


class TestDensity:
    def test_cauchy_pointwise(self):
        f = sas_density(1.0, 1.0)
        xs = np.array([0.0, 0.5, 1.0, 3.0, 10.0, 50.0])
        for x in xs:
            assert f.pdf(x) == pytest.approx(cauchy_pdf(x, 1.0), rel=1e-6, abs=1e-10)

    def test_gaussian_pointwise(self):
        f = sas_density(2.0, 1.0)
        for x in (0.0, 1.0, 2.5):
            expect = math.exp(-(x**2) / 4.0) / math.sqrt(4.0 * math.pi)
            assert f.pdf(x) == pytest.approx(expect, rel=1e-8)

    def test_mass_is_one(self):
        for a in (0.6, 1.0, 1.4, 1.9, 2.0):
            f = sas_density(a, 1.0)
            assert f.total_mass() == pytest.approx(1.0, abs=1e-9)

    def test_symmetry(self):
        f = sas_density(1.4, 1.0)
        v = f.values
        assert np.allclose(v[1:], v[1:][::-1], rtol=1e-9, atol=1e-12)

    def test_tail_handoff_continuity(self):
        # log-density must be continuous across the grid/tail boundary
        for a in (0.8, 1.2, 1.7):
            f = sas_density(a, 1.0)
            r = f.accurate_radius
            eps = 1e-6 * r
            inside = float(f.logpdf(r - eps))
            outside = float(f.logpdf(r + eps))
            assert inside == pytest.approx(outside, abs=1e-4)

    def test_grid_too_coarse_raises(self):
        # refinement is capped; a scale far below the spacing still fails
        with pytest.raises(ValueError):
            pdf_grid_sas(1.5, 1e-4, GridSpec(n=2**12, half_extent=500.0))

    def test_small_alpha_warns(self):
        with pytest.warns(UserWarning):
            with pytest.raises(ValueError):
                pdf_grid_sas(0.25, 1.0, default_grid(0.25, 1.0))


class TestLogpdf:
    def test_alpha2_closed_form(self):
        # N(0, 2 gamma^2)
        g = 0.8
        var = 2.0 * g**2
        for x in (0.0, 1.0, 30.0, 1e4):
            expect = -0.5 * math.log(2.0 * math.pi * var) - x**2 / (2.0 * var)
            assert logpdf_sas(2.0, g, x) == pytest.approx(expect, rel=1e-12)

    def test_cauchy_far_tail(self):
        # far outside any grid, the asymptotic series must take over
        x = 1e6
        assert logpdf_sas(1.0, 1.0, x) == pytest.approx(
            math.log(cauchy_pdf(x, 1.0)), rel=1e-9
        )

    def test_vector_input(self):
        out = logpdf_sas(1.5, 1.0, np.array([-1.0, 0.0, 1.0]))
        assert out.shape == (3,)
        assert out[0] == pytest.approx(out[2], rel=1e-9)


class TestSampling:
    def test_deterministic(self):
        a = sample_sas(1.5, 1.0, 1000, seed=42)
        b = sample_sas(1.5, 1.0, 1000, seed=42)
        assert np.array_equal(a, b)

    def test_gaussian_variance(self):
        s = sample_sas(2.0, 1.0, 200_000, seed=1)
        # S(2, 1) has variance 2
        assert float(np.var(s)) == pytest.approx(2.0, rel=0.02)

    def test_cauchy_ks(self):
        s = sample_sas(1.0, 1.0, 50_000, seed=2)
        stat = kstest(s, "cauchy")
        assert stat.pvalue > 1e-3

    @pytest.mark.parametrize("alpha", [0.8, 1.3, 1.7])
    def test_ks_against_grid_cdf(self, alpha):
        # independent check: CMS samples against the FFT-inverted density
        f = sas_density(alpha, 1.0)
        xs = f.x
        cdf_vals = np.cumsum(f.values) * f.h
        cdf_vals += f.tail.mass_beyond(f.half_extent) / 2.0 if f.tail else 0.0
        cdf_vals = np.clip(cdf_vals, 0.0, 1.0)
        s = sample_sas(alpha, 1.0, 20_000, seed=3)
        s = s[np.abs(s) < f.half_extent * 0.9]
        stat = kstest(s, lambda q: np.interp(q, xs, cdf_vals))
        assert stat.pvalue > 1e-3


class TestReference:
    def test_gamma_ref(self):
        assert reference_gamma(2.0) == pytest.approx(math.sqrt(0.5), rel=1e-14)
        assert reference_gamma(1.0) == 1.0

    def test_entropy_gaussian(self):
        assert reference_entropy(2.0) == pytest.approx(
            0.5 * math.log(2.0 * math.pi * math.e), rel=1e-14
        )

    def test_entropy_cauchy(self):
        assert reference_entropy(1.0) == pytest.approx(math.log(4.0 * math.pi), rel=1e-14)

    def test_entropy_near_closed_forms(self):
        # the numeric route must agree with the closed forms it brackets
        for a, closed in ((2.0, 0.5 * math.log(2.0 * math.pi * math.e)),):
            num = ReferenceStable(a).density().entropy()
            assert num == pytest.approx(closed, abs=2e-5)

    def test_cauchy_entropy_numeric(self):
        # h(Cauchy(gamma)) = ln(4 pi gamma); gamma_ref = 1 at alpha = 1
        num = sas_density(1.0, 1.0).entropy()
        assert num == pytest.approx(math.log(4.0 * math.pi), abs=1e-5)

    def test_reference_logpdf(self):
        ref = ReferenceStable(1.0)
        assert ref.logpdf(0.0) == pytest.approx(math.log(1.0 / math.pi), abs=1e-7)
