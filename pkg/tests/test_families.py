import os
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "src")))

from rectprod import family, lambda_k
from rectprod.errors import BadParameter, UnknownFamily
from rectprod.families import FAMILIES, gamma_rule, m_rule


class GammaRuleTests(unittest.TestCase):
    def test_named_rules(self):
        spec = family("square", {"m": 4}).at(3)
        self.assertEqual(gamma_rule("m")(spec), 4.0)
        self.assertEqual(gamma_rule("2m")(spec), 8.0)
        self.assertEqual(gamma_rule("m2")(spec), 16.0)
        self.assertEqual(gamma_rule("one")(spec), 1.0)
        self.assertEqual(gamma_rule("two")(spec), 2.0)
        self.assertEqual(gamma_rule("lambda1")(spec), lambda_k(spec, 1))

    def test_numeric_rule(self):
        spec = family("square", {"m": 2}).at(3)
        self.assertEqual(gamma_rule("2.5")(spec), 2.5)

    def test_bad_rules(self):
        with self.assertRaises(BadParameter):
            gamma_rule("cubic")
        with self.assertRaises(BadParameter):
            gamma_rule("-1")


class ChainLengthRuleTests(unittest.TestCase):
    def test_rules(self):
        self.assertEqual(m_rule("n")(7), 7)
        self.assertEqual(m_rule("sqrt")(10), 4)
        self.assertEqual(m_rule("const:5")(100), 5)
        self.assertEqual(m_rule(3.0)(100), 3)

    def test_bad_rules(self):
        with self.assertRaises(BadParameter):
            m_rule("often")
        with self.assertRaises(BadParameter):
            m_rule(0)


class FamilyTests(unittest.TestCase):
    def test_square_family(self):
        spec = family("square").at(3)
        self.assertEqual(spec.dims, (3, 3, 3, 3))
        self.assertEqual(spec.gamma, 3.0)
        self.assertTrue(spec.is_square)

    def test_example2_family(self):
        spec = family("example2", {"alpha": 2, "m": "const:3"}).at(10)
        self.assertEqual(spec.dims, (10, 20, 20, 10))
        self.assertEqual(spec.gamma, 6.0)

    def test_example2_single_factor(self):
        spec = family("example2", {"alpha": 2, "m": 1}).at(10)
        self.assertEqual(spec.dims, (10, 10))

    def test_example2_rejects_small_alpha(self):
        with self.assertRaises(BadParameter):
            family("example2", {"alpha": 0.5})

    def test_example3a_family(self):
        spec = family("example3a").at(9)
        self.assertEqual(spec.m, 9)
        self.assertEqual(spec.dims[1], 27)
        self.assertAlmostEqual(spec.gamma, lambda_k(spec, 1))

    def test_example3b_family(self):
        spec = family("example3b", {"gamma": 1}).at(16)
        self.assertEqual(spec.m, 20)
        self.assertEqual(spec.dims[1], 256)
        self.assertEqual(spec.gamma, 2.0)

    def test_fixed_m_family(self):
        spec = family("fixed_m", {"alphas": [0.5, 0.0]}).at(10)
        self.assertEqual(spec.dims, (10, 20, 100, 10))
        with self.assertRaises(BadParameter):
            family("fixed_m", {"alphas": [2.0]})

    def test_gamma_rule_override(self):
        spec = family("square", {"m": 2}).at(5, gamma_rule("m2"))
        self.assertEqual(spec.gamma, 4.0)

    def test_unknown_family(self):
        with self.assertRaises(UnknownFamily):
            family("triangle")
        with self.assertRaises(KeyError):
            family("triangle")

    def test_every_family_builds_valid_chains(self):
        for name in FAMILIES:
            for n in (1, 4, 25):
                spec = family(name).at(n)
                self.assertEqual(spec.n, n)
                self.assertEqual(len(spec.dims), spec.m + 1)


if __name__ == "__main__":
    unittest.main()
