# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

"""Brute-force oracles for the trinomial chain on very small trees."""

import itertools

import numpy as np

# 3**8 paths is as far as enumeration stays instant
MAX_ENUMERATION_STEPS = 8


def _check_small(n_steps):
    if n_steps > MAX_ENUMERATION_STEPS:
        raise ValueError('refusing to enumerate 3**%d paths' % n_steps)


def enumerate_terminal_law(grid, control):
    """Terminal masses of the chain started at 0, one path at a time.

    Args:
      grid: Grid with a small n_steps.
      control: callable (n, i) -> variance used on the move out of (n, i).

    Returns:
      array of 2N+1 masses for nodes -N..N.
    """
    n_steps = grid.n_steps
    _check_small(n_steps)
    masses = np.zeros(2 * n_steps + 1)
    scale = grid.dt / (2.0 * grid.h * grid.h)
    for moves in itertools.product((-1, 0, 1), repeat=n_steps):
        i, weight = 0, 1.0
        for n, move in enumerate(moves):
            q = control(n, i) * scale
            weight *= (1.0 - 2.0 * q) if move == 0 else q
            i += move
        masses[i + n_steps] += weight
    return masses


def enumerate_expectation(grid, payoff, control):
    law = enumerate_terminal_law(grid, control)
    return float(np.dot(law, payoff.evaluate(grid.nodes(grid.n_steps))))


def sup_over_controls(grid, payoff):
    """max over both variances at every node, by recursion over the tree.

    Each node picks whichever of sigma_lo_sq or sigma_hi_sq gives the
    larger continuation value, with no reference to curvature.
    """
    n_steps = grid.n_steps
    _check_small(n_steps)
    lo, hi = grid.params.sigma_lo_sq, grid.params.sigma_hi_sq
    scale = grid.dt / (2.0 * grid.h * grid.h)
    phi = payoff.evaluate(grid.nodes(n_steps))

    def value(n, i):
        if n == n_steps:
            return float(phi[i + n_steps])
        down, stay, up = value(n + 1, i - 1), value(n + 1, i), value(n + 1,
                                                                     i + 1)
        best = None
        for variance in (lo, hi):
            q = variance * scale
            candidate = q * down + (1.0 - 2.0 * q) * stay + q * up
            if best is None or candidate > best:
                best = candidate
        return best

    return value(0, 0)


def lattice_control(controls):
    """Adapts a controls Lattice to the (n, i) callable form."""
    return lambda n, i: controls.at(n, i)
