# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import logging

import numpy as np

from gnormal import errors
from gnormal import lattice
from gnormal.scheme import backward

# total mass may drift from 1 by roundoff only
MASS_TOLERANCE = 1e-12


class DiscreteDistribution(object):
    """Masses p_i on nodes i = -level..level, summing to one."""

    def __init__(self, level, masses, grid, history=None):
        self.level = level
        self.masses = masses
        self.grid = grid
        # Lattice of every level's masses when propagate kept them
        self.history = history

    @property
    def x(self):
        return self.grid.nodes(self.level)


class DensityTable(object):
    """Rows (x_i, p_i, p_i / h) sorted by x."""

    header = ('x', 'mass', 'density')

    def __init__(self, x, mass, h):
        self.x = np.asarray(x, dtype=np.float64)
        self.mass = np.asarray(mass, dtype=np.float64)
        self.h = h
        self.density = self.mass / h

    def __len__(self):
        return self.x.size

    def rows(self):
        return zip(self.x.tolist(), self.mass.tolist(),
                   self.density.tolist())


def transition_weights(controls, grid):
    """q = sigma^2 dt / (2 h^2), the probability of each one-node move."""
    return np.asarray(controls) * grid.dt / (2.0 * grid.h * grid.h)


def forward_step(masses, q):
    """Pushes level n-1 masses through the rows leaving each node.

    Every node i of the new level sums its inflow in the fixed order left
    neighbour, itself, right neighbour.
    """
    size = masses.size + 2
    moved = q * masses
    from_left = np.zeros(size)
    from_left[2:] = moved
    stayed = np.zeros(size)
    stayed[1:-1] = (1.0 - 2.0 * q) * masses
    from_right = np.zeros(size)
    from_right[:-2] = moved
    return (from_left + stayed) + from_right


def propagate(sol, keep_history=False):
    """Propagates the point mass at x=0 forward under the stored controls."""
    grid = sol.grid
    masses = np.ones(1)
    history = [masses] if keep_history else None
    for n in range(1, grid.n_steps + 1):
        q = transition_weights(sol.controls.level(n - 1), grid)
        masses = forward_step(masses, q)
        if not np.all(np.isfinite(masses)):
            raise errors.NonFiniteValue('mass became non-finite at level %d'
                                        % n)
        if np.any(masses < 0.0):
            raise errors.NegativeMass('negative mass %r at level %d' %
                                      (float(np.min(masses)), n))
        drift = abs(float(np.sum(masses)) - 1.0)
        if drift > MASS_TOLERANCE:
            logging.warning('mass drift %.3g at level %d', drift, n)
        if keep_history:
            history.append(masses)
    if keep_history:
        history = lattice.Lattice(history)
    masses.flags.writeable = False
    return DiscreteDistribution(grid.n_steps, masses, grid, history=history)


def expectation_forward(dist, payoff):
    phi = np.asarray(payoff.evaluate(dist.x), dtype=np.float64)
    return float(np.dot(dist.masses, phi))


def density(dist):
    return DensityTable(dist.x, dist.masses, dist.grid.h)


def moments(dist):
    """(mean, second moment, variance) of the distribution."""
    x = dist.x
    mean = float(np.dot(dist.masses, x))
    second = float(np.dot(dist.masses, x * x))
    return mean, second, second - mean * mean


def _as_space_time(testfn):
    if hasattr(testfn, 'evaluate'):
        return lambda t, x: testfn.evaluate(x)
    return testfn


def weak_form_terms(history, sol, testfn):
    """The two halves of the discrete weak formulation of the forward chain.

    Returns:
      (boundary, interior, scale) where boundary is
      sum_i [p_i^0 phi_i^0 - p_i^N phi_i^N] h, interior is
      sum_{n,i} p_i^n [delta_t phi + sigma^2/2 delta_h^2 phi^{n+1}] h dt and
      scale is the sum of the absolute values of every term.
    """
    if isinstance(history, DiscreteDistribution):
        history = history.history
    if history is None:
        raise errors.HistoryMissing('propagate with keep_history=True to '
                                    'check the weak form')
    grid = sol.grid
    if len(history) != grid.n_steps + 1:
        raise errors.GridMismatch('history has %d levels, grid has %d' %
                                  (len(history), grid.n_steps + 1))
    phi = _as_space_time(testfn)
    h, dt = grid.h, grid.dt

    def sample(n, half_width):
        return np.asarray(phi(grid.level_time(n), grid.nodes(half_width)),
                          dtype=np.float64) + np.zeros(2 * half_width + 1)

    first = history.level(0) * sample(0, 0)
    last = history.level(grid.n_steps) * sample(grid.n_steps, grid.n_steps)
    boundary = (float(np.sum(first)) - float(np.sum(last))) * h
    scale = (float(np.sum(np.abs(first))) + float(np.sum(np.abs(last)))) * h

    interior = 0.0
    current = sample(0, 0)
    for n in range(grid.n_steps):
        # current is phi^n on |i| <= n, following phi^{n+1} on |i| <= n + 1
        following = sample(n + 1, n + 1)
        integrand = ((following[1:-1] - current) / dt +
                     0.5 * sol.controls.level(n) *
                     backward.second_difference(following, h))
        terms = history.level(n) * integrand * (h * dt)
        interior += float(np.sum(terms))
        scale += float(np.sum(np.abs(terms)))
        current = following
    return boundary, interior, scale


def weak_form_residual(history, sol, testfn):
    boundary, interior, _ = weak_form_terms(history, sol, testfn)
    return abs(boundary + interior)


def bump_test_function(center=0.0, radius=1.5, time_slope=0.5):
    """A smooth compactly supported test function phi(t, x).

    phi(t, x) = (1 + time_slope t) exp(1 - 1 / (1 - s^2)) with
    s = (x - center) / radius inside the support and zero outside, so the
    peak value at t = 0 is 1.
    """

    def bump(t, x):
        s = (np.asarray(x, dtype=np.float64) - center) / radius
        inside = np.abs(s) < 1.0
        safe = np.where(inside, 1.0 - s * s, 1.0)
        return (1.0 + time_slope * t) * np.where(inside,
                                                 np.exp(1.0 - 1.0 / safe), 0.0)

    return bump
