import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from scipy import special as sps

from halfhartley.errors import DomainError
from halfhartley import specfun as sf

# inverse Mellin of Gamma(s)/cos(pi s/2) at x=1, frozen from the
# critical-line quadrature oracle; equals (2/pi) L(1)
LOMMEL_HALF_AT_1 = 0.39562711831892246
K0_AT_1 = 0.42102443824070833


class TestGammaCritical:
    def test_at_zero(self):
        assert sf.gamma_critical(0.0) == pytest.approx(math.sqrt(math.pi), abs=1e-13)

    def test_magnitude_identity(self):
        # |Gamma(1/2+i tau)|^2 = pi/cosh(pi tau), checked against mpmath
        for tau in (0.5, 1.0, 2.0):
            g = sf.gamma_critical(tau)
            assert abs(g) ** 2 == pytest.approx(math.pi / math.cosh(math.pi * tau),
                                                rel=1e-12)
            ref = complex(mp.gamma(mp.mpc(0.5, tau)))
            assert g == pytest.approx(ref, rel=1e-12)

    def test_magnitude_at_one(self):
        assert abs(sf.gamma_critical(1.0)) == pytest.approx(
            math.sqrt(math.pi / math.cosh(math.pi)), rel=1e-12)

    def test_conjugate_symmetry_grid(self):
        tau = np.linspace(-10, 10, 100)
        vals = sf.gamma_critical(tau)
        flipped = sf.gamma_critical(-tau)
        assert np.max(np.abs(flipped - np.conj(vals))) < 1e-12

    def test_cosh_identity_grid(self):
        tau = np.linspace(-10, 10, 100)
        vals = sf.gamma_critical(tau)
        lhs = np.abs(vals) ** 2 * np.cosh(math.pi * tau)
        assert np.max(np.abs(lhs - math.pi)) / math.pi < 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.gamma_critical(201.0)
        with pytest.raises(DomainError):
            sf.gamma_critical(float("nan"))

    def test_large_tau_against_mpmath(self):
        for tau in (50.0, 120.0, 199.0):
            ref = complex(mp.gamma(mp.mpc(0.5, tau)))
            assert sf.gamma_critical(tau) == pytest.approx(ref, rel=1e-11)


class TestDigamma:
    def test_base(self):
        base = -sf.EULER_GAMMA - 2 * math.log(2)
        assert base == pytest.approx(-1.9635100260214235, abs=1e-12)
        assert float(mp.digamma(mp.mpf(0.5))) == pytest.approx(base, abs=1e-14)

    def test_k0(self):
        assert sf.digamma_neg_half(0) == pytest.approx(0.036489973978576521, abs=1e-12)

    def test_against_series_oracle(self):
        for k in range(6):
            ref = float(mp.digamma(mp.mpf(-0.5) - 2 * k))
            assert sf.digamma_neg_half(k) == pytest.approx(ref, rel=1e-12)

    def test_recurrence_consistency(self):
        # psi(x) = psi(x+2) - 1/(x+1) - 1/x: stepping k-1 -> k subtracts the
        # two intermediate recurrence increments
        for k in range(1, 6):
            x = -0.5 - 2 * k
            inc = -(1.0 / x + 1.0 / (x + 1))
            got = sf.digamma_neg_half(k) - sf.digamma_neg_half(k - 1)
            assert got == pytest.approx(inc, rel=1e-10)


class TestFresnel:
    def test_zero(self):
        assert sf.fresnel_pair(0.0) == (0.0, 0.0)

    def test_against_scipy(self):
        x = np.concatenate([np.linspace(1e-3, 4, 60), np.linspace(4.01, 400, 80)])
        S, C = sf.fresnel_pair(x)
        S_ref, C_ref = sps.fresnel(np.sqrt(2 * x / math.pi))
        assert np.max(np.abs(S - S_ref)) < 1e-12
        assert np.max(np.abs(C - C_ref)) < 1e-12

    def test_limits(self):
        S, C = sf.fresnel_pair(1e8)
        assert S == pytest.approx(0.5, abs=1e-4)
        assert C == pytest.approx(0.5, abs=1e-4)

    def test_small_argument_leading_order(self):
        x = 1e-4
        S, _ = sf.fresnel_pair(x)
        lead = math.sqrt(2 / math.pi) * x ** 1.5 / 3
        assert S == pytest.approx(lead, rel=1e-4)

    def test_monotone_bounded(self):
        x = np.linspace(0, 50, 500)
        S, C = sf.fresnel_pair(x)
        assert np.all(S >= 0) and np.all(C >= 0)
        far = x >= 25
        assert np.all(np.abs(S[far] - 0.5) < 0.13)
        assert np.all(np.abs(C[far] - 0.5) < 0.13)

    def test_phase_remainder(self):
        x = np.concatenate([np.linspace(0.01, 4, 40), np.linspace(4.5, 300, 60)])
        S, C = sps.fresnel(np.sqrt(2 * x / math.pi))
        ref = (C - 0.5) * np.cos(x) + (S - 0.5) * np.sin(x)
        got = sf.fresnel_phase_remainder(x)
        assert np.max(np.abs(got - ref)) < 1e-12

    def test_phase_remainder_asymptote(self):
        x = 1e6
        ref = -math.sqrt(2 / math.pi) / (4 * x ** 1.5)
        assert sf.fresnel_phase_remainder(x) == pytest.approx(ref, rel=1e-3)

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.fresnel_pair(-1.0)


class TestBesselK0:
    def test_at_one(self):
        assert sf.bessel_k0(1.0) == pytest.approx(K0_AT_1, abs=1e-12)

    def test_against_scipy(self):
        x = np.concatenate([np.geomspace(1e-4, 2, 50), np.linspace(2.01, 60, 60)])
        assert np.max(np.abs(sf.bessel_k0(x) - sps.k0(x)) / sps.k0(x)) < 1e-12

    def test_small_argument_expansion(self):
        x = 1e-3
        assert abs(sf.bessel_k0(x) + math.log(x / 2) + sf.EULER_GAMMA) < 1e-5

    def test_monotone(self):
        assert sf.bessel_k0(2.0) < sf.bessel_k0(1.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.bessel_k0(0.0)


class TestLommel:
    def test_limit_at_zero(self):
        # L(0) = int_0^inf K0 = pi/2
        assert sf.lommel_kernel(1e-8) == pytest.approx(math.pi / 2, abs=1e-6)

    def test_strict_upper_bound(self):
        for x in (0.5, 1.0, 2.0):
            assert sf.lommel_kernel(x) < math.pi / 2

    def test_spectral_cross_check(self):
        # kernel of the sine-cosine composite at x=1 equals the inverse
        # Mellin transform of Gamma(s)/cos(pi s/2) at x=1
        assert sf.lommel_half_scaled(1.0) == pytest.approx(LOMMEL_HALF_AT_1, abs=1e-6)

    def test_strictly_decreasing(self):
        x = np.geomspace(0.01, 100, 50)
        vals = np.array([sf.lommel_kernel(v) for v in x])
        assert np.all(np.diff(vals) < 0)

    def test_asymptotic_matches_quadrature(self):
        # both evaluation regimes at the same point, above the switch
        from halfhartley.quadrature import Exponential, integrate_semiinf
        x = 31.0
        quad = integrate_semiinf(
            lambda y: y * sf.bessel_k0(y) / np.sqrt(y * y + x * x),
            Exponential(1.0), sf._LOMMEL_CFG).value
        assert sf.lommel_kernel(x) == pytest.approx(quad, rel=1e-9)

    def test_threehalf_accessor(self):
        x = 2.0
        ref = (2 / math.pi) * sf.lommel_kernel(1 / x) / x ** 2
        assert sf.lommel_threehalf_scaled(x) == pytest.approx(ref, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.lommel_kernel(-1.0)


class TestPochhammer:
    def test_small_values(self):
        assert sf.pochhammer_3half(0) == 1.0
        assert sf.pochhammer_3half(1) == pytest.approx(15 / 4, rel=1e-14)
        assert sf.pochhammer_3half(2) == pytest.approx(945 / 16, rel=1e-14)

    def test_recurrence_exact_rational(self):
        p = Fraction(1)
        for k in range(10):
            ratio = (Fraction(3, 2) + 2 * k) * (Fraction(5, 2) + 2 * k)
            p_next = p * ratio
            got = sf.pochhammer_3half(k + 1) / sf.pochhammer_3half(k)
            assert got == pytest.approx(float(ratio), rel=1e-12)
            p = p_next

    def test_log_form(self):
        logmag, sign = sf.pochhammer_3half_log(120)
        assert sign == 1.0
        ref = float(mp.log(mp.rf(mp.mpf(1.5), 240)))
        assert logmag == pytest.approx(ref, rel=1e-12)

    def test_overflow_to_inf(self):
        assert sf.pochhammer_3half(150) == math.inf
