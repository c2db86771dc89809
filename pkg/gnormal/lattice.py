# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import numpy as np

from gnormal import errors


def _freeze(values):
    array = np.array(values, dtype=np.float64)
    if array.ndim != 1 or (array.size and array.size % 2 == 0):
        raise ValueError('lattice levels must be odd-length vectors, got %s' %
                         (array.shape,))
    array.flags.writeable = False
    return array


class Lattice(object):
    """Per-level node values on a symmetric stencil.

    Level n is a vector centered on node i=0: an entry count of 2k+1 covers
    i = -k..k. The backward value lattice uses k = n (the triangle), the
    curvature lattices k = n - 1 and an empty level 0.
    """

    def __init__(self, levels):
        self._levels = tuple(_freeze(level) for level in levels)

    def __len__(self):
        return len(self._levels)

    def __iter__(self):
        return iter(self._levels)

    def __getitem__(self, n):
        return self._levels[n]

    def level(self, n):
        if not 0 <= n < len(self._levels):
            raise errors.IndexOutOfLattice('level %d outside 0..%d' %
                                           (n, len(self._levels) - 1))
        return self._levels[n]

    def half_width(self, n):
        return (self.level(n).size - 1) // 2

    def at(self, n, i):
        k = self.half_width(n)
        if abs(i) > k:
            raise errors.IndexOutOfLattice(
                'node %d outside level %d (|i| <= %d)' % (i, n, k))
        return float(self._levels[n][i + k])

    def total_size(self):
        return sum(level.size for level in self._levels)

    def max_abs(self):
        return max([float(np.max(np.abs(level)))
                    for level in self._levels if level.size] or [0.0])

    def all_finite(self):
        return all(np.all(np.isfinite(level)) for level in self._levels)
