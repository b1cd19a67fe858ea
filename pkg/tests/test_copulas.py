import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sci_integrate

from copulakit.copulas import (
    CopulaFamily,
    CopulaKind,
    JointModel,
    archimedean_cdf,
    check_copula_axioms,
    copula_cdf,
    copula_density,
    copula_log_density,
    frechet_bounds_check,
    hoeffding_covariance,
    inverse_power_generator,
    joint_cdf,
    neg_log_power_generator,
    parse_copula,
    quadrant_dependence,
)
from copulakit.errors import DomainError, NoDensityError
from copulakit.margins import Margin, margin_cdf
from copulakit.sampling import RandomSource, sample_joint

SWEEP = (
    [CopulaFamily.independence(), CopulaFamily.frechet_lower(), CopulaFamily.frechet_upper()]
    + [CopulaFamily.clayton(t) for t in (0.5, 1.0, 2.88, 10.0)]
    + [CopulaFamily.gumbel(t) for t in (1.0, 1.5, 2.44, 5.0)]
    + [CopulaFamily.gaussian(r) for r in (-0.9, 0.0, 0.5, 0.8)]
)
WITH_DENSITY = [c for c in SWEEP if c.kind in (CopulaKind.CLAYTON, CopulaKind.GUMBEL, CopulaKind.GAUSSIAN)]


def central_mixed(c, u, v, h):
    return (copula_cdf(c, u + h, v + h) - copula_cdf(c, u + h, v - h)
            - copula_cdf(c, u - h, v + h) + copula_cdf(c, u - h, v - h)) / (4 * h * h)


def mixed_difference(c, u, v, h=1e-4):
    """Central mixed difference with one Richardson step (error O(h^4))."""
    return (4 * central_mixed(c, u, v, h / 2) - central_mixed(c, u, v, h)) / 3


class TestCdf:
    def test_examples(self):
        assert copula_cdf(CopulaFamily.independence(), 0.3, 0.5) == pytest.approx(0.15, abs=1e-16)
        assert copula_cdf(CopulaFamily.clayton(1.0), 0.5, 0.5) == pytest.approx(1 / 3, abs=1e-15)
        assert copula_cdf(CopulaFamily.frechet_lower(), 0.3, 0.4) == 0.0
        assert copula_cdf(CopulaFamily.frechet_upper(), 0.3, 0.4) == 0.3
        sheppard = 0.25 + math.asin(0.8) / (2 * math.pi)
        assert abs(copula_cdf(CopulaFamily.gaussian(0.8), 0.5, 0.5) - sheppard) < 1e-7

    def test_gumbel_closed_form(self):
        theta, u, v = 2.44, 0.3, 0.7
        expected = math.exp(-(((-math.log(u)) ** theta + (-math.log(v)) ** theta) ** (1 / theta)))
        assert copula_cdf(CopulaFamily.gumbel(theta), u, v) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("c", SWEEP, ids=str)
    def test_boundary_values_exact(self, c):
        t = np.linspace(0, 1, 11)
        np.testing.assert_array_equal(copula_cdf(c, t, 0.0), 0.0)
        np.testing.assert_array_equal(copula_cdf(c, 0.0, t), 0.0)
        np.testing.assert_array_equal(copula_cdf(c, t, 1.0), t)
        np.testing.assert_array_equal(copula_cdf(c, 1.0, t), t)

    @pytest.mark.parametrize("c", SWEEP, ids=str)
    def test_symmetric(self, c):
        t = np.linspace(0.01, 0.99, 15)
        U, V = np.meshgrid(t, t)
        np.testing.assert_allclose(copula_cdf(c, U, V), copula_cdf(c, V, U), atol=1e-15)

    def test_scalar_and_array(self):
        c = CopulaFamily.clayton(2.0)
        assert isinstance(copula_cdf(c, 0.2, 0.4), float)
        assert copula_cdf(c, np.array([0.2, 0.3]), 0.4).shape == (2,)

    @pytest.mark.parametrize("u", [-0.1, 1.1, float("nan")])
    def test_outside_square(self, u):
        with pytest.raises(DomainError):
            copula_cdf(CopulaFamily.clayton(1.0), u, 0.5)

    def test_tiny_arguments_no_overflow(self):
        c = CopulaFamily.clayton(10.0)
        with np.errstate(over="raise", invalid="raise", divide="raise"):
            val = copula_cdf(c, 1e-300, 1e-300)
        assert val == pytest.approx(2 ** (-0.1) * 1e-300, rel=1e-10)
        g = CopulaFamily.gumbel(5.0)
        assert 0 < copula_cdf(g, 1e-12, 1e-12) <= 1e-12

    def test_gaussian_limits(self):
        t = np.linspace(0, 1, 21)
        U, V = np.meshgrid(t, t)
        rho = 0.9999
        gap = np.abs(copula_cdf(CopulaFamily.gaussian(rho), U, V) - np.minimum(U, V))
        # On the diagonal M - C peaks at the median, where it equals acos(rho)/(2 pi) ~ 2.25e-3.
        assert gap.max() == pytest.approx(math.acos(rho) / (2 * math.pi), rel=1e-9)
        assert gap[U != V].max() < 1e-3
        near_pi = copula_cdf(CopulaFamily.gaussian(1e-9), U, V)
        assert np.max(np.abs(near_pi - U * V)) < 1e-9
        gap_w = np.abs(copula_cdf(CopulaFamily.gaussian(-rho), U, V) - np.maximum(U + V - 1, 0))
        assert gap_w.max() == pytest.approx(math.acos(rho) / (2 * math.pi), rel=1e-9)
        assert gap_w[np.abs(U + V - 1) > 1e-9].max() < 1e-3

    def test_gumbel_one_is_independence(self):
        t = np.linspace(0, 1, 21)
        U, V = np.meshgrid(t, t)
        np.testing.assert_allclose(copula_cdf(CopulaFamily.gumbel(1.0), U, V), U * V, atol=1e-15)


class TestParameters:
    @pytest.mark.parametrize("ctor,value", [
        (CopulaFamily.clayton, 0.0), (CopulaFamily.clayton, -0.5), (CopulaFamily.gumbel, 0.99),
        (CopulaFamily.gaussian, 1.0), (CopulaFamily.gaussian, -1.0), (CopulaFamily.clayton, float("nan")),
        (CopulaFamily.gumbel, float("inf")),
    ])
    def test_domain(self, ctor, value):
        with pytest.raises(DomainError):
            ctor(value)

    @pytest.mark.parametrize("text,expected", [
        ("indep", CopulaFamily.independence()),
        ("W", CopulaFamily.frechet_lower()),
        ("m", CopulaFamily.frechet_upper()),
        ("clayton:2.88", CopulaFamily.clayton(2.88)),
        ("gumbel:2.44", CopulaFamily.gumbel(2.44)),
        ("gauss:-0.3", CopulaFamily.gaussian(-0.3)),
    ])
    def test_parse(self, text, expected):
        assert parse_copula(text) == expected

    @pytest.mark.parametrize("text", ["", "clayton", "clayton:0", "gumbel:0.5", "gauss:1", "frank:2", "indep:1",
                                      "clayton:x"])
    def test_parse_rejects(self, text):
        with pytest.raises(DomainError):
            parse_copula(text)

    @pytest.mark.parametrize("c", SWEEP, ids=str)
    def test_str_round_trip(self, c):
        assert parse_copula(str(c)) == c


class TestDensity:
    def test_examples(self):
        assert copula_density(CopulaFamily.independence(), 0.3, 0.8) == 1.0
        assert copula_density(CopulaFamily.gaussian(0.0), 0.3, 0.8) == pytest.approx(1.0, abs=1e-15)
        c = CopulaFamily.clayton(2.0)
        assert abs(copula_density(c, 0.5, 0.5) - mixed_difference(c, 0.5, 0.5)) < 1e-5

    def test_clayton_single_point(self):
        assert copula_log_density(CopulaFamily.clayton(1.0), 0.5, 0.5) == pytest.approx(math.log(32 / 27),
                                                                                        abs=1e-14)

    @pytest.mark.parametrize("c", WITH_DENSITY, ids=str)
    def test_finite_difference(self, c):
        t = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
        U, V = np.meshgrid(t, t)
        dens = copula_density(c, U, V)
        fd = mixed_difference(c, U, V)
        assert np.max(np.abs(dens - fd)) < 1e-5 * max(1.0, np.max(dens))

    @pytest.mark.parametrize("c", [c for c in WITH_DENSITY if c.parameter not in (10.0, 5.0)], ids=str)
    def test_finite_difference_absolute(self, c):
        t = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
        U, V = np.meshgrid(t, t)
        assert np.max(np.abs(copula_density(c, U, V) - mixed_difference(c, U, V))) < 1e-5

    @pytest.mark.parametrize("c", [CopulaFamily.clayton(2.88), CopulaFamily.gumbel(2.44),
                                   CopulaFamily.gaussian(0.8), CopulaFamily.clayton(0.5),
                                   CopulaFamily.gaussian(-0.5)], ids=str)
    def test_normalised(self, c):
        f = lambda v, u: copula_density(c, u, v)
        eps = 1e-12
        total, _ = sci_integrate.dblquad(f, eps, 1 - eps, eps, 1 - eps, epsabs=1e-10, epsrel=1e-10)
        assert abs(total - 1.0) < 1e-6

    @pytest.mark.parametrize("c", [CopulaFamily.frechet_lower(), CopulaFamily.frechet_upper()], ids=str)
    def test_no_density(self, c):
        with pytest.raises(NoDensityError):
            copula_density(c, 0.5, 0.5)

    @pytest.mark.parametrize("u,v", [(0.0, 0.5), (0.5, 1.0), (1.2, 0.5)])
    def test_boundary(self, u, v):
        with pytest.raises(DomainError):
            copula_density(CopulaFamily.clayton(2.0), u, v)

    @settings(max_examples=80, deadline=None)
    @given(st.floats(1e-6, 1 - 1e-6), st.floats(1e-6, 1 - 1e-6), st.sampled_from(WITH_DENSITY))
    def test_positive_and_finite(self, u, v, c):
        d = copula_density(c, u, v)
        assert d > 0 and math.isfinite(d)
        assert copula_log_density(c, u, v) == pytest.approx(math.log(d), abs=1e-12)


class TestArchimedean:
    def test_examples(self):
        assert archimedean_cdf(inverse_power_generator(2.0), 0.5, 0.5) == pytest.approx(7 ** -0.5, abs=1e-15)
        assert abs(7 ** -0.5 - 0.377964) < 1e-6
        assert archimedean_cdf(neg_log_power_generator(1.0), 0.3, 0.6) == pytest.approx(0.18, abs=1e-15)
        g = neg_log_power_generator(2.44)
        assert abs(archimedean_cdf(g, 0.5, 0.5) - copula_cdf(CopulaFamily.gumbel(2.44), 0.5, 0.5)) < 1e-12

    @pytest.mark.parametrize("theta", [0.5, 1.0, 2.88, 10.0])
    def test_clayton_reconstruction(self, theta):
        t = np.linspace(0, 1, 51)[1:]
        U, V = np.meshgrid(t, t)
        err = np.abs(archimedean_cdf(inverse_power_generator(theta), U, V)
                     - copula_cdf(CopulaFamily.clayton(theta), U, V))
        assert err.max() < 1e-12

    @pytest.mark.parametrize("theta", [1.0, 1.5, 2.44, 5.0])
    def test_gumbel_reconstruction(self, theta):
        t = np.linspace(0, 1, 51)[1:]
        U, V = np.meshgrid(t, t)
        err = np.abs(archimedean_cdf(neg_log_power_generator(theta), U, V)
                     - copula_cdf(CopulaFamily.gumbel(theta), U, V))
        assert err.max() < 1e-12

    @pytest.mark.parametrize("g", [inverse_power_generator(0.5), inverse_power_generator(2.0),
                                   neg_log_power_generator(1.0), neg_log_power_generator(3.0)],
                             ids=lambda g: g.name)
    def test_generator_invariants(self, g):
        t = np.linspace(0.01, 1.0, 400)
        phi = g.phi(t)
        assert g.phi(1.0) == 0.0
        assert np.all(np.diff(phi) < 0)
        assert np.all(np.diff(phi, 2) >= -1e-9)
        np.testing.assert_allclose(g.phi_inverse(phi), t, atol=1e-10)
        h = 1e-6
        tt = t[1:-1]
        fd = (g.phi(tt + h) - g.phi(tt - h)) / (2 * h)
        np.testing.assert_allclose(g.phi_derivative(tt), fd, rtol=1e-5)

    def test_zero_argument_rejected(self):
        with pytest.raises(DomainError):
            archimedean_cdf(inverse_power_generator(2.0), 0.0, 0.5)


class TestAxioms:
    @pytest.mark.parametrize("c", SWEEP, ids=str)
    def test_axioms_hold(self, c):
        report = check_copula_axioms(c, 51)
        assert report.passed, report

    @pytest.mark.parametrize("c", SWEEP, ids=str)
    def test_frechet_sandwich(self, c):
        assert frechet_bounds_check(c, 101) <= 1e-12

    def test_examples(self):
        report = check_copula_axioms(CopulaFamily.independence(), 21)
        assert report.passed and report.worst_rectangle_mass >= 0
        assert check_copula_axioms(CopulaFamily.clayton(2.88), 51).passed
        assert frechet_bounds_check(CopulaFamily.frechet_upper(), 101) == 0.0
        assert frechet_bounds_check(CopulaFamily.frechet_lower(), 101) == 0.0

    def test_corrupted_function_fails_margins(self):
        report = check_copula_axioms(lambda u, v: u + v - u * v, 21)
        assert not report.uniform_margins
        assert not report.passed

    def test_non_two_increasing_detected(self):
        # grounded, uniform margins, but puts negative mass in the middle
        bump = lambda u, v: u * v - 0.2 * np.sin(np.pi * u) * np.sin(np.pi * v) * u * v
        report = check_copula_axioms(bump, 21)
        assert report.grounded and report.uniform_margins
        assert not report.two_increasing

    def test_grid_size(self):
        with pytest.raises(DomainError):
            check_copula_axioms(CopulaFamily.independence(), 1)


class TestQuadrant:
    def test_examples(self):
        q = quadrant_dependence(CopulaFamily.independence())
        assert q.kind == "PQD" and abs(q.min_gap) <= 1e-15
        assert quadrant_dependence(CopulaFamily.clayton(2.0)).kind == "PQD"
        assert quadrant_dependence(CopulaFamily.frechet_lower()).kind == "NQD"

    @pytest.mark.parametrize("theta", [0.5, 1.0, 2.88, 10.0])
    def test_clayton_pqd(self, theta):
        q = quadrant_dependence(CopulaFamily.clayton(theta), 101)
        assert q.kind == "PQD" and q.min_gap >= -1e-12

    def test_negative_gaussian_nqd(self):
        assert quadrant_dependence(CopulaFamily.gaussian(-0.5)).kind == "NQD"

    def test_neither(self):
        f = lambda u, v: u * v + 0.1 * u * v * (1 - u) * (1 - v) * (1 - 2 * u)
        assert quadrant_dependence(f).kind == "Neither"


class TestJoint:
    def test_examples(self):
        e = Margin.exponential(1.0)
        ln2 = math.log(2)
        assert joint_cdf(JointModel(CopulaFamily.independence(), e, e), ln2, ln2) == pytest.approx(0.25, abs=1e-15)
        assert joint_cdf(JointModel(CopulaFamily.clayton(1.0), e, e), ln2, ln2) == pytest.approx(1 / 3, abs=1e-15)

    @pytest.mark.parametrize("c", SWEEP, ids=str)
    def test_margin_limits(self, c):
        mx, my = Margin.exponential(2.0), Margin.std_normal()
        j = JointModel(c, mx, my)
        x = np.linspace(0.01, 3, 25)
        y = np.linspace(-3, 3, 25)
        np.testing.assert_allclose(joint_cdf(j, x, 1e6), margin_cdf(mx, x), atol=1e-10)
        np.testing.assert_allclose(joint_cdf(j, 1e6, y), margin_cdf(my, y), atol=1e-10)
        np.testing.assert_array_equal(joint_cdf(j, x, -1e6), 0.0)


class TestHoeffding:
    def test_independence_zero(self):
        j = JointModel(CopulaFamily.independence(), Margin.exponential(1.0), Margin.lognormal(1.0))
        assert abs(hoeffding_covariance(j)) < 1e-8

    def test_upper_bound_uniforms(self):
        j = JointModel(CopulaFamily.frechet_upper(), Margin.uniform(), Margin.uniform())
        assert abs(hoeffding_covariance(j) - 1 / 12) < 1e-6

    def test_lower_bound_uniforms(self):
        j = JointModel(CopulaFamily.frechet_lower(), Margin.uniform(), Margin.uniform())
        assert abs(hoeffding_covariance(j) + 1 / 12) < 1e-6

    def test_gaussian_normals_is_rho(self):
        j = JointModel(CopulaFamily.gaussian(0.5), Margin.std_normal(), Margin.std_normal())
        assert abs(hoeffding_covariance(j) - 0.5) < 1e-7

    @pytest.mark.slow
    def test_clayton_exponential_monte_carlo(self):
        j = JointModel(CopulaFamily.clayton(2.0), Margin.exponential(1.0), Margin.exponential(1.0))
        cov = hoeffding_covariance(j)
        assert cov > 0.05
        xy = sample_joint(RandomSource(7), j, 1_000_000)
        dx = xy[:, 0] - xy[:, 0].mean()
        dy = xy[:, 1] - xy[:, 1].mean()
        prod = dx * dy
        mc = prod.mean()
        se = prod.std(ddof=1) / math.sqrt(len(prod))
        assert abs(cov - mc) < 3 * se
