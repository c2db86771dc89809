# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import unittest

import numpy as np

from gnormal import errors
from gnormal import lattice


class TestLattice(unittest.TestCase):

    def setUp(self):
        self.lattice = lattice.Lattice([[1.0], [2.0, 3.0, 4.0],
                                        [5.0, 6.0, 7.0, 8.0, 9.0]])

    def test_signed_indexing(self):
        self.assertEqual(self.lattice.at(0, 0), 1.0)
        self.assertEqual(self.lattice.at(1, -1), 2.0)
        self.assertEqual(self.lattice.at(2, 2), 9.0)
        self.assertEqual(self.lattice.half_width(2), 2)

    def test_out_of_lattice(self):
        self.assertRaises(errors.IndexOutOfLattice, self.lattice.at, 1, 2)
        self.assertRaises(errors.IndexOutOfLattice, self.lattice.level, 3)
        self.assertRaises(IndexError, self.lattice.level, -1)

    def test_levels_are_read_only(self):
        level = self.lattice.level(1)
        self.assertRaises(ValueError, level.__setitem__, 0, 0.0)

    def test_source_is_copied(self):
        source = np.array([1.0, 2.0, 3.0])
        lat = lattice.Lattice([source])
        source[0] = 10.0
        self.assertEqual(lat.at(0, -1), 1.0)

    def test_even_level_rejected(self):
        self.assertRaises(ValueError, lattice.Lattice, [[1.0, 2.0]])

    def test_empty_level(self):
        lat = lattice.Lattice([[], [4.0]])
        self.assertEqual(lat.level(0).size, 0)
        self.assertEqual(lat.half_width(0), -1)
        self.assertEqual(lat.max_abs(), 4.0)

    def test_summaries(self):
        self.assertEqual(self.lattice.total_size(), 9)
        self.assertTrue(self.lattice.all_finite())
        self.assertFalse(lattice.Lattice([[np.nan]]).all_finite())


if __name__ == '__main__':
    unittest.main()
