import math
import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "src")))

from rectprod import (
    ChainSpec,
    PlanarSample,
    RadialSample,
    SampleSource,
    angle_uniformity,
    ecdf,
    gof_report,
    h_transform,
    ks_one_sample,
    ks_two_sample,
    log_a_n,
    make_rng,
    preset,
    ring_coverage,
    tnlimit_diagnostic,
    wasserstein1,
)
from rectprod.empirics import law_cdf, linear_transform, support_ring
from rectprod.errors import DomainError, EmptySample
from rectprod.limit_law import type2, type3


def radial(*values):
    return RadialSample(radii=np.asarray(values, dtype=float), source=SampleSource.EIGEN)


def planar(radii, angles=None):
    radii = np.asarray(radii, dtype=float)
    angles = np.zeros_like(radii) if angles is None else np.asarray(angles, dtype=float)
    return PlanarSample(radii=radii, angles=angles)


def uniform_cdf(x):
    return min(max(x, 0.0), 1.0)


class TransformTests(unittest.TestCase):
    def setUp(self):
        self.spec = ChainSpec(n=2, m=2, dims=(2, 4, 2), gamma=2)

    def test_fixed_point(self):
        spec = ChainSpec(n=3, m=2, dims=(3, 5, 3), gamma=4)
        r = h_transform([spec.gamma * log_a_n(spec) / 2.0], spec)
        self.assertAlmostEqual(float(r.radii[0]), 1.0, places=12)

    def test_small_chain_value(self):
        r = h_transform([math.log(math.sqrt(8.0))], self.spec)
        self.assertAlmostEqual(float(r.radii[0]), 1.0, places=12)

    def test_zero_modulus(self):
        r = h_transform([-math.inf], self.spec)
        self.assertEqual(float(r.radii[0]), 0.0)

    def test_monotone(self):
        r = h_transform(np.linspace(-5.0, 5.0, 50), ChainSpec(n=2, m=2, dims=(2, 4, 2), gamma=3)).radii
        self.assertTrue(np.all(np.diff(r) > 0.0))

    def test_linear_transform_uses_gamma_two(self):
        spec = ChainSpec(n=2, m=2, dims=(2, 4, 2), gamma=7)
        logs = [0.1, 1.3]
        np.testing.assert_array_equal(linear_transform(logs, spec).radii, h_transform(logs, self.spec).radii)

    def test_source_tag(self):
        self.assertEqual(h_transform([0.0], self.spec, SampleSource.ORACLE).source, SampleSource.ORACLE)


class EcdfTests(unittest.TestCase):
    def test_values(self):
        self.assertEqual(ecdf(radial(0.25, 0.75), 0.5), 0.5)
        self.assertEqual(ecdf(radial(0.25, 0.75), 0.1), 0.0)
        self.assertEqual(ecdf(radial(0.25, 0.75), 0.75), 1.0)
        self.assertAlmostEqual(ecdf(radial(0.3, 0.3, 0.9), 0.3), 2.0 / 3.0)

    def test_empty(self):
        with self.assertRaises(EmptySample):
            ecdf(radial(), 0.5)


class KolmogorovSmirnovTests(unittest.TestCase):
    def test_one_sample_uniform(self):
        self.assertAlmostEqual(ks_one_sample(radial(0.25, 0.75), uniform_cdf), 0.25, places=12)

    def test_stratified_sample(self):
        n = 200
        sample = radial(*((np.arange(1, n + 1) - 0.5) / n))
        self.assertLessEqual(ks_one_sample(sample, uniform_cdf), 0.5 / n + 1e-12)

    def test_against_own_ecdf(self):
        sample = radial(0.1, 0.4, 0.4, 0.8)
        self.assertEqual(ks_one_sample(sample, lambda x: ecdf(sample, x)), 0.0)

    def test_against_law(self):
        n = 100
        sample = radial(*((np.arange(1, n + 1) - 0.5) / n))
        self.assertLessEqual(ks_one_sample(sample, law_cdf(preset("example1"))), 0.5 / n + 1e-9)

    def test_two_sample(self):
        self.assertEqual(ks_two_sample(radial(0.2, 0.5), radial(0.2, 0.5)), 0.0)
        self.assertEqual(ks_two_sample(radial(0.1), radial(0.9)), 1.0)
        self.assertAlmostEqual(ks_two_sample(radial(0.1, 0.2), radial(0.1, 0.3)), 0.5)

    def test_two_sample_empty(self):
        with self.assertRaises(EmptySample):
            ks_two_sample(radial(), radial(0.5))


class WassersteinTests(unittest.TestCase):
    def test_sample_coupling(self):
        self.assertEqual(wasserstein1(radial(0.3, 0.6), radial(0.6, 0.3)), 0.0)
        self.assertEqual(wasserstein1(radial(0.0), radial(1.0)), 1.0)
        self.assertAlmostEqual(wasserstein1(radial(0.0, 1.0), radial(0.5, 0.5)), 0.5)

    def test_unequal_sizes(self):
        self.assertAlmostEqual(wasserstein1(radial(0.0, 1.0), radial(0.5)), 0.5)

    def test_against_law_quantiles(self):
        n = 50
        sample = radial(*((np.arange(1, n + 1) - 0.5) / n))
        self.assertAlmostEqual(wasserstein1(sample, preset("example1")), 0.0, places=12)
        self.assertAlmostEqual(wasserstein1(radial(0.5, 0.5), type2()), 0.5)

    def test_against_cdf(self):
        uniform_on_two = lambda x: min(max(x / 2.0, 0.0), 1.0)
        self.assertAlmostEqual(wasserstein1(radial(0.5, 1.5), uniform_on_two), 0.0, places=12)
        self.assertAlmostEqual(wasserstein1(radial(0.0, 1.0), uniform_on_two), 0.5, places=12)
        self.assertAlmostEqual(wasserstein1(radial(0.25, 0.75), lambda x: min(max(x, 0.0), 1.0)), 0.0, places=12)

    def test_cdf_and_law_agree(self):
        law = preset("example2", {"alpha": 2})
        sample = radial(0.75, 0.8, 0.9, 0.95)
        self.assertAlmostEqual(
            wasserstein1(sample, law_cdf(law)), wasserstein1(sample, law), places=9
        )


class PlanarTests(unittest.TestCase):
    def test_stratified_angles(self):
        n = 64
        angles = 2.0 * math.pi * (np.arange(1, n + 1) - 0.5) / n
        self.assertLessEqual(angle_uniformity(planar(np.ones(n), angles)), 0.5 / n + 1e-12)

    def test_degenerate_angles(self):
        self.assertAlmostEqual(angle_uniformity(planar(np.ones(10))), 1.0)

    def test_uniform_draws(self):
        angles = make_rng(31).uniform(0.0, 2.0 * math.pi, 10000)
        self.assertLess(angle_uniformity(planar(np.ones(10000), angles)), 0.02)

    def test_empty(self):
        with self.assertRaises(EmptySample):
            angle_uniformity(planar([]))

    def test_ring_coverage(self):
        self.assertEqual(ring_coverage(planar(np.ones(5)), math.sqrt(0.5), 1.0, 0.0), 1.0)
        self.assertEqual(ring_coverage(planar(np.zeros(5)), 0.7, 1.0, 0.05), 0.0)
        self.assertEqual(ring_coverage(planar([0.6, 0.8, 1.0, 1.2]), 0.7071, 1.0, 0.05), 0.5)

    def test_ring_bounds(self):
        with self.assertRaises(DomainError):
            ring_coverage(planar([0.5]), 0.9, 0.5)

    def test_support_ring(self):
        inner, outer = support_ring(preset("example2", {"alpha": 2}))
        self.assertAlmostEqual(inner, math.sqrt(0.5))
        self.assertEqual(outer, 1.0)
        self.assertEqual(support_ring(type2()), (1.0, 1.0))
        self.assertEqual(support_ring(type3()), (0.0, 0.0))
        self.assertEqual(support_ring(None), (0.0, 1.0))


class TnLimitTests(unittest.TestCase):
    def setUp(self):
        self.spec = ChainSpec(n=200, m=5, dims=(200,) * 6, gamma=5)

    def test_square_chain_concentrates(self):
        summary = tnlimit_diagnostic(self.spec, 0.5, 1000, make_rng(3))
        self.assertEqual(summary.j, 100)
        self.assertLess(abs(summary.mean), 0.05)
        self.assertLess(summary.std, 0.05)

    def test_at_one(self):
        summary = tnlimit_diagnostic(self.spec, 1.0, 1000, make_rng(3))
        self.assertEqual(summary.j, 200)
        self.assertLess(abs(summary.mean), 0.01)

    def test_deterministic(self):
        a = tnlimit_diagnostic(self.spec, 0.25, 200, make_rng(4))
        b = tnlimit_diagnostic(self.spec, 0.25, 200, make_rng(4))
        self.assertEqual(a, b)

    def test_domain(self):
        with self.assertRaises(DomainError):
            tnlimit_diagnostic(self.spec, 0.0, 1000, make_rng(1))
        with self.assertRaises(DomainError):
            tnlimit_diagnostic(self.spec, 1.5, 1000, make_rng(1))
        with self.assertRaises(DomainError):
            tnlimit_diagnostic(self.spec, 0.5, 50, make_rng(1))


class GofReportTests(unittest.TestCase):
    def test_report_fields(self):
        n = 100
        radii = (np.arange(1, n + 1) - 0.5) / n
        angles = 2.0 * math.pi * radii
        report = gof_report(radial(*radii), planar(radii, angles), preset("example1"), n=n, m=3, seed=9)
        self.assertEqual((report.n, report.m, report.seed, report.trials), (n, 3, 9, 1))
        self.assertEqual(report.ring_coverage, 1.0)
        self.assertLessEqual(report.ks_radial, 0.5 / n + 1e-9)
        self.assertLessEqual(report.angle_ks, 0.5 / n + 1e-12)
        self.assertIsNone(report.ks_two_sample)
        self.assertEqual(report.law, "example1")

    def test_report_without_law(self):
        report = gof_report(radial(0.5), planar([0.5]), None, n=1, m=1, seed=0, oracle=radial(0.5))
        self.assertIsNone(report.ks_radial)
        self.assertEqual(report.ks_two_sample, 0.0)


if __name__ == "__main__":
    unittest.main()
