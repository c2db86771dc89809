# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import math
import unittest

import numpy as np

from gnormal import errors
from gnormal import grid
from gnormal.payoff import payoff
from gnormal.scheme import auxiliary
from gnormal.scheme import backward


class BaseTest(unittest.TestCase):

    def setUp(self):
        self.params = grid.GParams(0.04, 1.0, 1.0)

    def _grid(self, n_steps, ratio=1.1, strict=False):
        return grid.build_grid(self.params, n_steps, ratio, strict)


class TestCurvature(BaseTest):

    def test_shapes(self):
        g = self._grid(10)
        sol = backward.solve_backward(g, payoff.builtin_payoff('sin3x'))
        curvature = auxiliary.curvature_from_solution(sol)
        self.assertEqual(curvature.v.level(0).size, 0)
        self.assertEqual(curvature.v.level(1).size, 1)
        self.assertEqual(curvature.w.level(10).size, 19)

    def test_sign_coherence(self):
        g = self._grid(100)
        sol = backward.solve_backward(g, payoff.builtin_payoff('sin3x'))
        curvature = auxiliary.curvature_from_solution(sol)
        for v, w in zip(curvature.v, curvature.w):
            self.assertTrue(np.all(v * w >= 0.0))

    def test_flux_matches_controls(self):
        g = self._grid(50)
        sol = backward.solve_backward(g, payoff.builtin_payoff('cube'))
        curvature = auxiliary.curvature_from_solution(sol)
        for n in range(1, 51):
            np.testing.assert_array_equal(curvature.variances.level(n),
                                          sol.controls.level(n - 1))


class TestWScheme(BaseTest):

    def test_constant_flux_square(self):
        flux = auxiliary.solve_w_scheme(self._grid(100),
                                        payoff.builtin_payoff('square'))
        for n in range(1, 101):
            np.testing.assert_allclose(flux.level(n), 2.0, rtol=1e-14)
        self.assertEqual(flux.level(0).size, 0)

    def test_constant_flux_neg_square(self):
        flux = auxiliary.solve_w_scheme(self._grid(100),
                                        payoff.builtin_payoff('neg_square'))
        for n in range(1, 101):
            np.testing.assert_allclose(flux.level(n), -0.08, rtol=1e-14)
            self.assertTrue(np.all(flux.variances.level(n) == 0.04))

    def test_terminal_modes(self):
        g = self._grid(20)
        phi = payoff.builtin_payoff('sin3x')
        analytic = auxiliary.solve_w_scheme(g, phi)
        discrete = auxiliary.solve_w_scheme(g, phi,
                                            terminal=auxiliary.DISCRETE_TERMINAL)
        self.assertEqual(analytic.terminal, auxiliary.ANALYTIC_TERMINAL)
        x = g.nodes(19)
        d2 = phi.evaluate_d2(x)
        np.testing.assert_allclose(
            analytic.level(20), np.where(d2 > 1e-6, 1.0, 0.04) * d2)
        self.assertFalse(np.array_equal(analytic.level(20),
                                        discrete.level(20)))
        self.assertRaises(errors.InvalidParam, auxiliary.solve_w_scheme, g, phi,
                          terminal='exact')

    def test_short_levels(self):
        g = self._grid(5)
        w, variances = auxiliary.w_step([1.0], [1.0], g)
        self.assertEqual(w.size, 0)
        self.assertEqual(variances.size, 0)


class TestEquivalence(BaseTest):

    def test_discrete_terminal_reproduces_tree(self):
        g = self._grid(200)
        for spec in ('square', 'sin3x', 'cube'):
            phi = payoff.builtin_payoff(spec)
            sol = backward.solve_backward(g, phi)
            flux = auxiliary.solve_w_scheme(g, phi,
                                            terminal=auxiliary.DISCRETE_TERMINAL)
            report = auxiliary.control_convergence_report(sol, flux)
            self.assertLessEqual(report.max_relative_discrepancy, 1e-10, spec)
            self.assertEqual(report.control_mismatches, 0, spec)
            self.assertEqual(report.terminal, auxiliary.DISCRETE_TERMINAL)

    def test_central_region_absolute(self):
        g = self._grid(200)
        phi = payoff.builtin_payoff('sin3x')
        sol = backward.solve_backward(g, phi)
        flux = auxiliary.solve_w_scheme(g, phi,
                                        terminal=auxiliary.DISCRETE_TERMINAL)
        report = auxiliary.control_convergence_report(sol, flux)
        self.assertLessEqual(report.max_w_discrepancy, 1e-10 * report.scale)

    def test_analytic_terminal_is_close(self):
        g = self._grid(200)
        phi = payoff.builtin_payoff('sin3x')
        sol = backward.solve_backward(g, phi)
        report = auxiliary.control_convergence_report(
            sol, auxiliary.solve_w_scheme(g, phi))
        self.assertLess(report.max_w_discrepancy, 0.5 * report.scale)
        self.assertGreater(report.max_w_discrepancy, 0.0)
        self.assertEqual(sorted(report.as_dict()),
                         ['control_mismatches', 'max_relative_discrepancy',
                          'max_v_discrepancy', 'max_w_discrepancy', 'scale',
                          'terminal'])

    def test_grid_mismatch(self):
        phi = payoff.builtin_payoff('sin3x')
        sol = backward.solve_backward(self._grid(20), phi)
        flux = auxiliary.solve_w_scheme(self._grid(30), phi)
        self.assertRaises(errors.GridMismatch,
                          auxiliary.control_convergence_report, sol, flux)


class TestMonotone(BaseTest):

    def test_randomized_ordered_pairs(self):
        g = self._grid(100, ratio=math.sqrt(2.0), strict=True)
        rng = np.random.default_rng(31337)
        violations = 0
        for _ in range(1000):
            size = 2 * int(rng.integers(1, 8)) + 1
            lower = rng.normal(scale=rng.uniform(0.01, 10.0), size=size)
            gap = rng.uniform(0.0, 1.0, size) * rng.integers(0, 2, size)
            upper = lower + gap
            low_out, _ = auxiliary.w_step(lower, self.params.variance(lower),
                                          g, 0.0)
            high_out, _ = auxiliary.w_step(upper, self.params.variance(upper),
                                           g, 0.0)
            scale = 1e-12 * max(1.0, float(np.max(np.abs(upper))) / 0.04)
            violations += int(np.count_nonzero(high_out < low_out - scale))
        self.assertEqual(violations, 0)


if __name__ == '__main__':
    unittest.main()
