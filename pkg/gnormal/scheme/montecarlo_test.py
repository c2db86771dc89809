# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import unittest

import numpy as np

from gnormal import errors
from gnormal import grid
from gnormal.payoff import payoff
from gnormal.scheme import backward
from gnormal.scheme import forward
from gnormal.scheme import montecarlo


class BaseTest(unittest.TestCase):

    def setUp(self):
        params = grid.GParams(0.04, 1.0, 1.0)
        self.sol = backward.solve_backward(grid.build_grid(params, 100),
                                           payoff.builtin_payoff('sin3x'))
        self.dist = forward.propagate(self.sol)


class TestSampling(BaseTest):

    def test_total_variation(self):
        samples = montecarlo.sample_paths(self.sol, 500000, 42)
        self.assertEqual(samples.n_samples, 500000)
        self.assertAlmostEqual(float(np.sum(samples.histogram)), 1.0,
                               delta=1e-12)
        self.assertLessEqual(montecarlo.total_variation(samples, self.dist),
                             0.02)
        self.assertLess(montecarlo.check_empirical_mean(samples, self.dist),
                        montecarlo.MEAN_Z_LIMIT)

    def test_deterministic(self):
        a = montecarlo.sample_paths(self.sol, 20000, 7, block_size=4096)
        b = montecarlo.sample_paths(self.sol, 20000, 7, block_size=4096)
        np.testing.assert_array_equal(a.terminal_indices, b.terminal_indices)
        c = montecarlo.sample_paths(self.sol, 20000, 8, block_size=4096)
        self.assertFalse(np.array_equal(a.terminal_indices,
                                        c.terminal_indices))

    def test_workers_do_not_change_result(self):
        serial = montecarlo.sample_paths(self.sol, 30000, 3, block_size=4096)
        pooled = montecarlo.sample_paths(self.sol, 30000, 3, block_size=4096,
                                         max_workers=4)
        np.testing.assert_array_equal(serial.histogram, pooled.histogram)

    def test_prefix_stable(self):
        # the first block does not depend on how many paths follow it
        short = montecarlo.sample_paths(self.sol, 1000, 5, block_size=1000)
        long = montecarlo.sample_paths(self.sol, 3000, 5, block_size=1000)
        np.testing.assert_array_equal(short.terminal_indices,
                                      long.terminal_indices[:1000])

    def test_single_sample(self):
        samples = montecarlo.sample_paths(self.sol, 1, 42)
        self.assertEqual(np.count_nonzero(samples.histogram), 1)
        self.assertEqual(float(np.max(samples.histogram)), 1.0)
        self.assertEqual(len(montecarlo.histogram_csv(samples)), 1)

    def test_bad_count(self):
        self.assertRaises(errors.InvalidParam, montecarlo.sample_paths,
                          self.sol, 0, 42)


class TestHistogram(BaseTest):

    def test_rows(self):
        samples = montecarlo.sample_paths(self.sol, 5000, 11)
        table = montecarlo.histogram_csv(samples)
        self.assertEqual(table.header,
                         ('x', 'empirical_mass', 'empirical_density'))
        self.assertTrue(np.all(table.mass > 0))
        self.assertTrue(np.all(np.diff(table.x) > 0))
        self.assertAlmostEqual(float(np.sum(table.mass)), 1.0, delta=1e-12)

    def test_mismatched_distribution(self):
        samples = montecarlo.sample_paths(self.sol, 10, 1)
        params = grid.GParams(0.04, 1.0, 1.0)
        other = forward.propagate(backward.solve_backward(
            grid.build_grid(params, 10), payoff.builtin_payoff('sin3x')))
        self.assertRaises(errors.GridMismatch, montecarlo.total_variation,
                          samples, other)


if __name__ == '__main__':
    unittest.main()
