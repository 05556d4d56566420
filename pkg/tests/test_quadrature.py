import pytest
from mpmath import mp, mpc, mpf

from errors import NearPoleError, NonRemovableSingularityError, ToleranceNotMetError
from kernels import KernelKind, kernel
from quadrature import (
    CotKind,
    ExpSum,
    IntegrandSpec,
    SmoothRemainder,
    expm1_integral,
    integrate,
    legendre_moments,
    pole_integral,
    singular_points,
)
from settings import DEFAULT_SETTINGS

DPS = 40


def _spec(numerator, cot_kind, scale, power=0, prefactor=1):
    return IntegrandSpec(numerator, cot_kind, scale, kernel(KernelKind.MONOMIAL, power), prefactor, label="test")


def test_singular_points_trig():
    with mp.workdps(DPS):
        spec = _spec(ExpSum.sin(2 * mp.pi), CotKind.TRIG_COT, 2 * mp.pi)
        assert singular_points(spec) == [0, mpf(1) / 2, 1]
        spec = _spec(ExpSum.sin(mp.pi), CotKind.TRIG_COT, mp.pi / 3)
        assert singular_points(spec) == [0]


def test_singular_points_hyper_real_scale():
    with mp.workdps(DPS):
        spec = _spec(ExpSum.exp(2) - ExpSum.exp(0), CotKind.HYPER_COTH, 1)
        assert singular_points(spec) == [0]


def test_near_pole_rejected():
    with mp.workdps(DPS):
        # cot(πu/1.0005) の極 u = 1.0005
        spec = _spec(ExpSum.sin(mp.pi), CotKind.TRIG_COT, mp.pi / mpf("1.0005"))
        with pytest.raises(NearPoleError):
            singular_points(spec, delta_pole=1e-3)
        # coth(πiu) の極 u = 1 は区間上
        spec = _spec(ExpSum.exp(mpc(0, 2 * mp.pi)) - ExpSum.exp(0), CotKind.HYPER_COTH, mpc(0, mp.pi))
        with pytest.raises(NearPoleError):
            singular_points(spec)


def test_zero_numerator():
    with mp.workdps(DPS):
        spec = _spec(ExpSum.sin(mp.pi) - ExpSum.sin(mp.pi), CotKind.TRIG_COT, mp.pi)
    result = integrate(spec, 1e-20)
    assert result.value == 0
    assert result.abs_error_estimate == 0
    assert result.panels == 0


def test_removable_trig_singularities():
    # ∫ (1-u) sin(πu) cot(πu) du = ∫ (1-u) cos(πu) du = 2/π^2
    with mp.workdps(DPS):
        spec = _spec(ExpSum.sin(mp.pi), CotKind.TRIG_COT, mp.pi, power=1)
        expected = 2 / mp.pi**2
    result = integrate(spec, 1e-25)
    assert abs(result.value - expected) < 1e-24
    assert result.abs_error_estimate <= 1e-25
    assert result.singular_points == (0.0, 1.0)


def test_hyperbolic_with_prefactor():
    # 3 ∫ (e^{2u} - 1) coth(u) du = 3 ∫ (e^{2u} + 1) du = 3 (e^2 + 1)/2
    with mp.workdps(DPS):
        spec = _spec(ExpSum.exp(2) - ExpSum.exp(0), CotKind.HYPER_COTH, 1, prefactor=3)
        expected = 3 * (mp.e**2 + 1) / 2
    result = integrate(spec, 1e-25)
    assert abs(result.value - expected) < 1e-24


def test_non_removable_singularity():
    with mp.workdps(DPS):
        spec = _spec(ExpSum.exp(0), CotKind.TRIG_COT, mp.pi)
    with pytest.raises(NonRemovableSingularityError):
        integrate(spec, 1e-12)


def test_tolerance_not_met_carries_best_estimate():
    # cot(πu/1.003) の極 u = 1.003 が区間の外すぐ近くにあり、少ないパネルでは収束しない
    with mp.workdps(DPS):
        spec = _spec(ExpSum.sin(mp.pi / 2), CotKind.TRIG_COT, mp.pi / mpf("1.003"))
    with pytest.raises(ToleranceNotMetError) as excinfo:
        integrate(spec, 1e-20, DEFAULT_SETTINGS.replace(panel_budget=3))
    best = excinfo.value.best
    assert best.panels == 3
    assert best.abs_error_estimate > 1e-20
    converged = integrate(spec, 1e-20)
    assert abs(best.value - converged.value) < 1e-3


def test_invalid_tolerance():
    with mp.workdps(DPS):
        spec = _spec(ExpSum.sin(mp.pi), CotKind.TRIG_COT, mp.pi)
    with pytest.raises(ValueError):
        integrate(spec, 0)


def test_deterministic_and_budget_stable():
    with mp.workdps(DPS):
        spec = _spec(ExpSum.sin(6 * mp.pi) - ExpSum.sin(2 * mp.pi), CotKind.TRIG_COT, 2 * mp.pi, power=2)
    first = integrate(spec, 1e-20)
    second = integrate(spec, 1e-20)
    assert first.value == second.value
    larger = integrate(spec, 1e-20, DEFAULT_SETTINGS.replace(panel_budget=2 * DEFAULT_SETTINGS.panel_budget))
    assert abs(larger.value - first.value) <= max(first.abs_error_estimate, 1e-30)


@pytest.mark.parametrize("freq", [200, 10**9])
@pytest.mark.parametrize("power", [0, 1, 2])
def test_fast_oscillation_independent_of_frequency(freq, power):
    # sin(2πMu) cot(πu) = 1 + 2 sum_{j<M} cos 2πju + cos 2πMu
    with mp.workdps(DPS):
        spec = _spec(ExpSum.sin(2 * mp.pi * freq), CotKind.TRIG_COT, mp.pi, power=power)
        tail = (mp.zeta(2) - mp.psi(1, freq)) / mp.pi**2 + 1 / (2 * mp.pi**2 * mpf(freq) ** 2)
        expected = [mpf(1), mpf(1) / 2, mpf(1) / 3 + tail][power]
    result = integrate(spec, 1e-25, DEFAULT_SETTINGS.replace(panel_budget=32))
    assert abs(result.value - expected) < 1e-24
    assert result.panels <= 16


def test_panel_count_does_not_grow_with_frequency():
    with mp.workdps(DPS):
        slow = _spec(ExpSum.sin(2 * mp.pi * 101), CotKind.TRIG_COT, mp.pi, power=2)
        fast = _spec(ExpSum.sin(2 * mp.pi * (10**9 + 1)), CotKind.TRIG_COT, mp.pi, power=2)
    assert integrate(fast, 1e-25).panels <= integrate(slow, 1e-25).panels


@pytest.mark.parametrize("z", [mpf("0.5"), mpf(-7), mpc(3, 4), mpc(0, 40), mpc(-2, -25)])
def test_legendre_moments_match_quadrature(z):
    with mp.workdps(DPS):
        moments = legendre_moments(z, 6)
        for j, moment in enumerate(moments):
            expected = mp.quad(lambda x, j=j: mp.exp(z * x) * mp.legendre(j, x), mp.linspace(-1, 1, 9))
            assert abs(moment - expected) < 1e-25 * max(abs(expected), 1)


def test_legendre_moments_high_frequency():
    with mp.workdps(DPS):
        z = mpc(0, 10**9)
        moments = legendre_moments(z, 48)
        first = 2 * mp.sinh(z) / z
        second = 2 * mp.cosh(z) / z - 2 * mp.sinh(z) / z**2
        assert abs(moments[0] - first) < 1e-25 * abs(first)
        assert abs(moments[1] - second) < 1e-25 * abs(second)
        assert legendre_moments(0, 3) == [2, 0, 0]


def test_legendre_moments_invalid_count():
    with pytest.raises(ValueError):
        legendre_moments(1, 0)


@pytest.mark.parametrize("w", [0, mpf("0.5"), mpc(1, -1), mpf(5), mpf(-3), mpc(2, 3), mpc(0, -10), mpf(30)])
def test_expm1_integral_matches_quadrature(w):
    with mp.workdps(DPS):
        expected = mp.quad(lambda t: mp.expm1(w * t) / t, [0, 1])
        assert abs(expm1_integral(w) - expected) < 1e-25 * max(abs(expected), 1)


def test_expm1_integral_on_imaginary_axis():
    # F(iy) = Ci(y) - γ - log y + i Si(y)
    with mp.workdps(DPS):
        y = mpf(10) ** 6
        expected = mp.ci(y) - mp.euler - mp.log(y) + mpc(0, 1) * mp.si(y)
        assert abs(expm1_integral(mpc(0, y)) - expected) < 1e-25


def test_pole_integral_at_endpoints():
    # ∫ sin(πu)/u du = Si(π)、u = 1 では符号が逆になる
    with mp.workdps(DPS):
        terms = ExpSum.sin(mp.pi).terms
        assert abs(pole_integral(terms, 0) - mp.si(mp.pi)) < 1e-30
        assert abs(pole_integral(terms, 1) + mp.si(mp.pi)) < 1e-30


def _guarded_spec():
    return IntegrandSpec(
        ExpSum.sin(4 * mp.pi) - ExpSum.sin(2 * mp.pi),
        CotKind.TRIG_COT,
        2 * mp.pi,
        kernel(KernelKind.SINE_EVEN, 2),
        1,
        label="test",
    )


def test_guard_series_agrees_with_direct_evaluation():
    with mp.workdps(DPS):
        spec = _guarded_spec()
        points = singular_points(spec)
        assert points == [0, mpf(1) / 2, 1]
        guarded = SmoothRemainder(spec, points, 1e-6)
        direct = SmoothRemainder(spec, points, 1e-8)
        for s in points:
            u = s + mpf("5e-7") if s < 1 else s - mpf("5e-7")
            assert abs(guarded(u) - direct(u)) < 1e-20


def test_guard_bounded_near_singular_points():
    with mp.workdps(DPS):
        spec = _guarded_spec()
        points = singular_points(spec)
        remainder = SmoothRemainder(spec, points, DEFAULT_SETTINGS.eps_switch)
        half_eps = mpf(DEFAULT_SETTINGS.eps_switch) / 2
        for s in points:
            limit = remainder(s)
            assert mp.isfinite(limit)
            for u in (s - half_eps, s + half_eps):
                if 0 <= u <= 1:
                    assert abs(remainder(u)) <= 2 * abs(limit) + 1e-4


@pytest.mark.parametrize(
    ("pole", "cot_kind", "rejected"),
    [
        (mpf("1.0005"), CotKind.TRIG_COT, True),
        (mpf("1.002"), CotKind.TRIG_COT, False),
        (mpc("0.5", "0.0005"), CotKind.HYPER_COTH, True),
        (mpc("1", "0.0007"), CotKind.HYPER_COTH, True),
        (mpc("0.5", "0.002"), CotKind.HYPER_COTH, False),
    ],
)
def test_poles_within_delta_rejected(pole, cot_kind, rejected):
    # cot(cu) の極は u = jπ/c、coth(cu) の極は u = ijπ/c
    with mp.workdps(DPS):
        scale = mp.pi / pole if cot_kind is CotKind.TRIG_COT else mpc(0, 1) * mp.pi / pole
        spec = _spec(ExpSum.sin(mp.pi), cot_kind, scale)
        if rejected:
            with pytest.raises(NearPoleError):
                singular_points(spec, DEFAULT_SETTINGS.delta_pole)
        else:
            assert singular_points(spec, DEFAULT_SETTINGS.delta_pole) == [0]


@pytest.mark.parametrize(
    ("numerator", "cot_kind", "scale", "power"),
    [
        (lambda: ExpSum.sin(6 * mp.pi) - ExpSum.sin(2 * mp.pi), CotKind.TRIG_COT, lambda: 2 * mp.pi, 2),
        (lambda: ExpSum.cos(2 * mp.pi * 37) - ExpSum.cos(0), CotKind.TRIG_COT, lambda: mp.pi, 3),
        (lambda: ExpSum.exp(2) - ExpSum.exp(0), CotKind.HYPER_COTH, lambda: 1, 1),
        (lambda: ExpSum.sin(mp.pi * 3), CotKind.TRIG_COT, lambda: mp.pi * 3, 0),
    ],
)
def test_tightening_tolerance_is_stable(numerator, cot_kind, scale, power):
    tol = 1e-20
    with mp.workdps(DPS):
        spec = _spec(numerator(), cot_kind, scale(), power=power)
    loose = integrate(spec, tol)
    tight = integrate(spec, tol / 10)
    assert abs(loose.value - tight.value) <= 10 * tol
