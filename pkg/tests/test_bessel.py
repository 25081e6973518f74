import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scatter1d.bessel import (TOL_ZERO, W_MAX, ZeroKind, bessel_j,
                              bessel_j_derivative, evaluate,
                              identity_residuals, imaginary_zeros,
                              in_hurwitz_band, real_zeros, relative_floor)
from scatter1d.errors import AccuracyError, DomainError

mp.mp.dps = 40


def mp_j(nu: float, w: complex) -> complex:
    # mpf(float) converts exactly; parsing repr() would shift near-pole
    # orders by ~1e-16, which changes J by percent amounts there
    return complex(mp.besselj(mp.mpf(float(nu)), mp.mpc(w)))


class TestValues:
    def test_at_origin(self):
        assert bessel_j(0.0, 0j) == 1.0
        assert bessel_j(2.0, 0j) == 0.0
        assert bessel_j(-3.0, 0j) == 0.0
        with pytest.raises(DomainError):
            bessel_j(-0.5, 0j)

    def test_near_imaginary_zero_of_hurwitz_order(self):
        # 0.157236i is (to six digits) an imaginary zero of J_{-1.0062}
        assert abs(bessel_j(-1.0062, 0.157236j)) < 1e-5

    def test_frozen_high_precision_point(self):
        # 40-digit series evaluation of J_{3/2}(2)
        ref = 0.4912937786871623450
        val = bessel_j(1.5, 2.0 + 0j, tol=1e-12)
        assert abs(val - ref) <= 1e-12 * abs(ref)
        assert abs(val.imag) == 0.0

    @pytest.mark.parametrize("nu", [-7.5, -2.3, -1.0, 0.0, 0.5, 1.0, 3.25, 9.0])
    @pytest.mark.parametrize("r", [0.3, 2.0, 9.5, 14.0, 27.0])
    @pytest.mark.parametrize("phase", [0.0, 0.8, math.pi / 2, 2.7, math.pi, -1.2])
    def test_against_independent_series_oracle(self, nu, r, phase):
        w = r * cmath.exp(1j * phase)
        tol = max(1e-12, 2.0 * relative_floor(w))
        val = bessel_j(nu, w, tol)
        ref = mp_j(nu, w)
        scale = max(abs(ref), abs(mp_j(nu + 1.0, w)))
        assert abs(val - ref) <= 50.0 * tol * scale

    @pytest.mark.parametrize("nu", [-1.9999999999999982, -8.999999999999998,
                                    -9.999999999999998, -3.0000000000000004])
    def test_orders_a_few_ulps_from_negative_integers(self, nu):
        # regression: the series must not stop in the term valley before the
        # reciprocal-Gamma pole, and sin(pi nu) needs exact mod-1 reduction
        for w in (1j, 0.8 + 0.3j, 3.0 + 0j):
            ref = mp_j(nu, w)
            assert abs(bessel_j(nu, w) - ref) <= 1e-12 * max(abs(ref), 1e-30)

    def test_continuous_across_integer_order(self):
        for w in (0.7 + 0.2j, 5.0 - 1.0j, 15.5 + 0.5j):
            mid = bessel_j(2.0, w)
            lo = bessel_j(2.0 - 1e-9, w)
            hi = bessel_j(2.0 + 1e-9, w)
            scale = max(abs(mid), 1.0)
            assert abs(lo - mid) < 1e-6 * scale
            assert abs(hi - mid) < 1e-6 * scale

    def test_domain_and_accuracy_errors(self):
        with pytest.raises(DomainError):
            bessel_j(0.0, complex(W_MAX + 5.0))
        with pytest.raises(DomainError):
            bessel_j(float("nan"), 1.0 + 0j)
        with pytest.raises(DomainError):
            bessel_j(0.0, 1.0, tol=-1.0)
        with pytest.raises(AccuracyError):
            bessel_j(0.0, 20.0 + 0j, tol=1e-18)


class TestDerivative:
    def test_order_zero_is_minus_j1(self):
        for x in (1e-3, 0.3, 2.5):
            lhs = bessel_j_derivative(0.0, complex(x))
            rhs = -bessel_j(1.0, complex(x))
            assert abs(lhs - rhs) <= 1e-12

    def test_finite_difference(self):
        h = 1e-5
        fd = (bessel_j(1.0, 1.0 + h) - bessel_j(1.0, 1.0 - h)) / (2 * h)
        assert abs(bessel_j_derivative(1.0, 1.0 + 0j) - fd) < 1e-8

    def test_simple_zero_has_nonzero_derivative(self):
        nu = 3.0062
        z = real_zeros(nu, 1)[0]
        assert abs(bessel_j_derivative(nu, z.location)) > 1e-3

    def test_at_origin(self):
        assert bessel_j_derivative(0.0, 0j) == 0.0
        assert bessel_j_derivative(1.0, 0j) == 0.5
        with pytest.raises(DomainError):
            bessel_j_derivative(2.0, 0j)

    def test_evaluate_bundle(self):
        ev = evaluate(0.5, 1.0 + 1.0j)
        assert ev.order == 0.5 and ev.argument == 1.0 + 1.0j
        assert abs(ev.derivative
                   - (bessel_j(-0.5, 1 + 1j) - 0.5 / (1 + 1j) * ev.value)) == 0.0


class TestRealZeros:
    def test_j0_first_zeros(self):
        zs = real_zeros(0.0, 3)
        assert abs(zs[0].location.real - 2.404825557695773) < 1e-6
        assert abs(zs[1].location.real - 5.520078110286311) < 1e-8
        assert [z.index for z in zs] == [1, 2, 3]

    def test_j2_first_zero(self):
        z = real_zeros(2.0, 1)[0]
        assert abs(z.location.real - 5.135622301840683) < 1e-8
        assert z.kind is ZeroKind.REAL_AXIS

    @pytest.mark.parametrize("nu", [-1.5, -0.5, 0.0, 0.3, 1.0, 2.0062, 4.5])
    def test_zero_invariants(self, nu):
        zs = real_zeros(nu, 6)
        locs = [z.location.real for z in zs]
        assert locs == sorted(locs)
        for z in zs:
            assert abs(bessel_j(nu, z.location)) <= TOL_ZERO
            assert abs(bessel_j_derivative(nu, z.location)) > 1e-6

    @pytest.mark.parametrize("nu", [0.5, 1.3, 2.5, 4.0, -2.5])
    def test_adjacent_orders_never_share_zeros(self, nu):
        for z in real_zeros(nu - 1.0, 10):
            assert abs(bessel_j(nu + 1.0, z.location)) > 1e-6

    def test_count_validation(self):
        with pytest.raises(DomainError):
            real_zeros(0.0, 0)


class TestImaginaryZeros:
    def test_hurwitz_band_predicate(self):
        assert in_hurwitz_band(-1.0062)
        assert in_hurwitz_band(-1.5)
        assert in_hurwitz_band(-3.5)
        assert not in_hurwitz_band(0.5)
        assert not in_hurwitz_band(-0.5)
        assert not in_hurwitz_band(-2.5)
        assert not in_hurwitz_band(-2.0)

    def test_published_pair(self):
        pair = imaginary_zeros(-1.0062)
        assert pair is not None
        plus, minus = pair
        assert abs(plus.location - 0.157236j) < 1e-5
        assert minus.location == -plus.location
        assert plus.kind is ZeroKind.IMAGINARY_AXIS
        assert abs(bessel_j(-1.0062, plus.location)) <= TOL_ZERO
        assert abs(bessel_j_derivative(-1.0062, plus.location)) > 1e-6

    def test_outside_band_is_empty(self):
        assert imaginary_zeros(0.5) is None
        assert imaginary_zeros(-2.5) is None
        assert imaginary_zeros(-3.0) is None

    def test_against_dense_scan_oracle(self):
        # independent check: high-precision scan of |J_{-1.5}(iy)| on a grid,
        # then bisection on the scaled profile computed with mpmath
        nu = -1.5
        pair = imaginary_zeros(nu)
        assert pair is not None

        def profile(y):
            return float((mp.besselj(nu, 1j * mp.mpf(y)) / (1j * mp.mpf(y) / 2) ** nu).real)

        ys = [0.01 * 1.2 ** j for j in range(60) if 0.01 * 1.2 ** j < 5.0]
        bracket = None
        for lo, hi in zip(ys, ys[1:]):
            if profile(lo) * profile(hi) < 0:
                bracket = (lo, hi)
                break
        assert bracket is not None
        lo, hi = bracket
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if profile(lo) * profile(mid) <= 0:
                hi = mid
            else:
                lo = mid
        assert abs(pair[0].location.imag - 0.5 * (lo + hi)) < 1e-9


class TestIdentities:
    def test_all_residuals_small_at_moderate_argument(self):
        res = identity_residuals(0.3, 1.7 + 0j)
        assert res.continuation < 1e-12
        assert res.cross_sum < 1e-12
        assert res.cross_diff < 1e-12
        assert res.recurrence < 1e-12

    def test_half_integer_closed_forms_oracle(self):
        # J_{1/2}, J_{-1/2}, J_{3/2}, J_{-3/2} have explicit sin/cos forms;
        # evaluate the product identity from them directly.
        w = 2.0
        c = math.sqrt(2.0 / (math.pi * w))
        j_half = c * math.sin(w)
        j_mhalf = c * math.cos(w)
        j_3half = c * (math.sin(w) / w - math.cos(w))
        j_m3half = c * (-math.cos(w) / w - math.sin(w))
        explicit = j_3half * j_mhalf + j_half * j_m3half + 2 * math.sin(math.pi * 0.5) / (math.pi * w)
        assert abs(explicit) < 1e-12
        assert identity_residuals(0.5, complex(w)).cross_sum < 1e-12

    def test_reflection_phase_at_quarter_order(self):
        res = identity_residuals(0.25, 1.3 + 0j)
        assert res.continuation < 1e-12

    def test_requires_nonzero_argument(self):
        with pytest.raises(DomainError):
            identity_residuals(0.3, 0j)


coords = st.floats(min_value=-8.0, max_value=8.0, allow_nan=False)


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(nu=st.floats(min_value=-8, max_value=8), re=coords, im=coords)
    def test_conjugation_symmetry(self, nu, re, im):
        w = complex(re, im)
        if abs(w) < 1e-3:
            return
        a = bessel_j(nu, w.conjugate())
        b = bessel_j(nu, w).conjugate()
        assert abs(a - b) <= 1e-12 * max(abs(b), 1.0)

    @settings(max_examples=60, deadline=None)
    @given(ell=st.integers(min_value=0, max_value=8), re=coords, im=coords)
    def test_integer_reflection(self, ell, re, im):
        w = complex(re, im)
        if abs(w) < 1e-6:
            return
        assert abs(bessel_j(float(-ell), w) - (-1.0) ** ell * bessel_j(float(ell), w)) \
            <= 1e-12 * max(abs(bessel_j(float(ell), w)), 1.0)

    @settings(max_examples=60, deadline=None)
    @given(nu=st.floats(min_value=-9, max_value=9), re=coords, im=coords)
    def test_recurrence_residual(self, nu, re, im):
        w = complex(re, im)
        if abs(w) < 1e-3:
            return
        jm = bessel_j(nu - 1.0, w)
        j0 = bessel_j(nu, w)
        jp = bessel_j(nu + 1.0, w)
        scale = max(abs(jm), abs(j0), abs(jp), 1.0)
        assert abs(w * jp - 2.0 * nu * j0 + w * jm) <= 1e-10 * scale
