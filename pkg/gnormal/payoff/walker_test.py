# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import unittest

import numpy as np

from gnormal.payoff import ast
from gnormal.payoff import parser
from gnormal.payoff import walker


class TestEvaluator(unittest.TestCase):

    def test_vectorized(self):
        tree = parser.parse('2*x+1')
        self.assertEqual(walker.evaluate(tree, np.array([0.0, 1.0])).tolist(),
                         [1.0, 3.0])

    def test_constant_broadcasts(self):
        result = walker.evaluate(parser.parse('5'), np.zeros(3))
        self.assertEqual(result.tolist(), [5.0, 5.0, 5.0])

    def test_functions(self):
        x = np.linspace(-1.0, 1.0, 5)
        np.testing.assert_allclose(
            walker.evaluate(parser.parse('sin(x) + cos(x) * exp(x)'), x),
            np.sin(x) + np.cos(x) * np.exp(x), rtol=1e-15)

    def test_division_by_zero_is_not_raised(self):
        result = walker.evaluate(parser.parse('1/x'), np.array([0.0]))
        self.assertTrue(np.isinf(result[0]))

    def test_unknown_node(self):
        self.assertRaises(walker.TreeWalkError, walker.evaluate, ast.ASTNode(),
                          0.0)


class TestDifferentiator(unittest.TestCase):

    def _check(self, text, expected, times=2):
        x = np.linspace(-2.0, 2.0, 9)
        tree = walker.differentiate(parser.parse(text), times)
        np.testing.assert_allclose(walker.evaluate(tree, x), expected(x),
                                   rtol=1e-12, atol=1e-12)

    def test_polynomials(self):
        self._check('x^3', lambda x: 6.0 * x)
        self._check('-x^2', lambda x: np.full_like(x, -2.0))
        self._check('3*x^4 - x + 7', lambda x: 36.0 * x * x)

    def test_sin3x(self):
        self._check('sin(3*x)', lambda x: -9.0 * np.sin(3.0 * x))

    def test_chain_and_product(self):
        self._check('x*exp(x)', lambda x: (x + 2.0) * np.exp(x))
        self._check('cos(x^2)', lambda x: (-2.0 * np.sin(x * x) -
                                          4.0 * x * x * np.cos(x * x)))

    def test_quotient(self):
        x = np.array([1.0, 2.0, 3.0])
        tree = walker.differentiate(parser.parse('1/x'), 2)
        np.testing.assert_allclose(walker.evaluate(tree, x), 2.0 / x**3,
                                   rtol=1e-12)

    def test_constants_fold(self):
        tree = walker.differentiate(parser.parse('x^2'), 2)
        self.assertTrue(ast.is_literal(tree, 2.0))
        self.assertTrue(ast.is_literal(walker.differentiate(
            parser.parse('5'), 1), 0.0))


class TestTextPrinter(unittest.TestCase):

    def test_reparses_to_same_tree(self):
        for text in ('-x^2', '2*x+1', 'sin(3*x)', '(1+x)^-2', 'x-(1-x)',
                     '-(-x)^3', 'exp(-x/2)'):
            tree = parser.parse(text)
            self.assertEqual(parser.parse(walker.flatten_tree(tree)), tree,
                             text)

    def test_canonical_text(self):
        self.assertEqual(walker.flatten_tree(parser.parse('x^2')), 'x^2')
        self.assertEqual(walker.flatten_tree(parser.parse('2 *x')), '(2 * x)')

    def test_negative_literal(self):
        self.assertEqual(walker.flatten_tree(walker.make_literal(-2.0)),
                         '(-2)')


if __name__ == '__main__':
    unittest.main()
