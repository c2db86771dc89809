# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

from concurrent import futures
import logging
import math
import time

import numpy as np

from gnormal import errors
from gnormal.scheme import forward

# paths are drawn in fixed blocks, each with its own generator keyed by
# (seed, block index); how blocks are spread over workers does not change
# a single bit of the result
BLOCK_SIZE = 1 << 16

# empirical means further than this many standard errors are reported
MEAN_Z_LIMIT = 5.0

_SEED_MASK = (1 << 64) - 1


class SampleSet(object):

    def __init__(self, terminal_indices, n_samples, seed, histogram, grid):
        self.terminal_indices = terminal_indices
        self.n_samples = n_samples
        self.seed = seed
        # empirical mass per terminal node i = -N..N
        self.histogram = histogram
        self.grid = grid

    @property
    def x(self):
        return self.grid.nodes(self.grid.n_steps)


class HistogramTable(forward.DensityTable):
    header = ('x', 'empirical_mass', 'empirical_density')


def block_generator(seed, block):
    sequence = np.random.SeedSequence(int(seed) & _SEED_MASK,
                                      spawn_key=(block,))
    return np.random.Generator(np.random.Philox(sequence))


def _simulate_block(q_levels, seed, block, size):
    rng = block_generator(seed, block)
    state = np.zeros(size, dtype=np.int64)
    for n, q in enumerate(q_levels):
        u = rng.random(size)
        weights = q[state + n]
        # one uniform per step split as down | stay | up
        state += np.where(u < weights, -1, np.where(u < 1.0 - weights, 0, 1))
    return state


def sample_paths(sol, n_samples, seed, block_size=BLOCK_SIZE,
                 max_workers=None):
    """Simulates n_samples independent chains from x=0 under the controls."""
    if isinstance(n_samples, bool) or int(n_samples) != n_samples or \
            n_samples < 1:
        raise errors.InvalidParam('n_samples must be >= 1, got %r' %
                                  (n_samples,))
    n_samples = int(n_samples)
    grid = sol.grid
    start = time.time()
    q_levels = [forward.transition_weights(level, grid)
                for level in sol.controls]
    blocks = [(b, min(block_size, n_samples - b * block_size))
              for b in range(int(math.ceil(n_samples / float(block_size))))]
    if max_workers and max_workers > 1:
        with futures.ThreadPoolExecutor(max_workers=max_workers) as pool:
            parts = list(pool.map(
                lambda item: _simulate_block(q_levels, seed, *item), blocks))
    else:
        parts = [_simulate_block(q_levels, seed, b, size)
                 for b, size in blocks]
    terminal = np.concatenate(parts)
    counts = np.bincount(terminal + grid.n_steps,
                         minlength=2 * grid.n_steps + 1)
    histogram = counts / float(n_samples)
    logging.info('sampled %d paths over %d steps in %.3fs', n_samples,
                 grid.n_steps, time.time() - start)
    return SampleSet(terminal, n_samples, seed, histogram, grid)


def histogram_csv(sample_set):
    """Rows for the nodes that received at least one sample."""
    occupied = sample_set.histogram > 0
    return HistogramTable(sample_set.x[occupied],
                          sample_set.histogram[occupied], sample_set.grid.h)


def total_variation(sample_set, dist):
    """sum_i |empirical_i - p_i| over the terminal nodes."""
    if dist.masses.size != sample_set.histogram.size:
        raise errors.GridMismatch('histogram and distribution sizes differ')
    return float(np.sum(np.abs(sample_set.histogram - dist.masses)))


def check_empirical_mean(sample_set, dist):
    """Returns the z-score of the empirical mean against the exact mean."""
    mean, _, variance = forward.moments(dist)
    empirical = float(np.dot(sample_set.histogram, sample_set.x))
    error = abs(empirical - mean)
    standard_error = math.sqrt(max(variance, 0.0) / sample_set.n_samples)
    if standard_error == 0.0:
        z = 0.0 if error == 0.0 else float('inf')
    else:
        z = error / standard_error
    if z >= MEAN_Z_LIMIT:
        logging.warning('empirical mean %.6g is %.1f standard errors from '
                        '%.6g', empirical, z, mean)
    return z
