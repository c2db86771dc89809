# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import logging
import time

import numpy as np

from gnormal import errors
from gnormal import lattice

DEFAULT_TOL = 1e-6

DIFFERENCE_FORM = 'difference'
PROBABILITY_FORM = 'probability'
FORMS = (DIFFERENCE_FORM, PROBABILITY_FORM)


class BackwardSolution(object):
    """Value lattice U, control lattice sigma^2 and the root U_0^0.

    controls[n] holds the variance chosen at decision node (n, i) from the
    level n+1 curvature, so it has N levels against the N+1 of values.
    """

    def __init__(self, values, controls, grid, tol, payoff=None):
        self.values = values
        self.controls = controls
        self.grid = grid
        self.tol = tol
        self.payoff = payoff
        self.root = values.at(0, 0)


def second_difference(values, h):
    """delta_h^2 on the interior of a level vector (two entries shorter)."""
    return (values[2:] - 2.0 * values[1:-1] + values[:-2]) / (h * h)


def backward_step(values_next, grid, tol=DEFAULT_TOL, form=DIFFERENCE_FORM):
    """One step of the backward tree from level n+1 to level n.

    Args:
      values_next: level n+1 values, any odd length >= 3.
      grid: Grid providing dt, h and the variance interval.
      tol: switching tolerance; curvature <= tol selects sigma_lo_sq.
      form: 'difference' (U + dt/2 sigma^2 D) or 'probability'
        (P U_{i-1} + P0 U_i + P U_{i+1}).

    Returns:
      (values, variances), both two entries shorter than values_next.
    """
    u = np.asarray(values_next, dtype=np.float64)
    curvature = second_difference(u, grid.h)
    variances = grid.params.variance(curvature, tol)
    if form == DIFFERENCE_FORM:
        values = u[1:-1] + (0.5 * grid.dt) * variances * curvature
    elif form == PROBABILITY_FORM:
        p = variances * grid.dt / (2.0 * grid.h * grid.h)
        # fixed left, center, right summation order
        values = p * u[:-2] + (1.0 - 2.0 * p) * u[1:-1] + p * u[2:]
    else:
        raise errors.InvalidParam('unknown scheme form %r; expected one of %s'
                                  % (form, ', '.join(FORMS)))
    return values, variances


def _check_level(values, n, bound, what='U'):
    if not np.all(np.isfinite(values)):
        raise errors.NonFiniteValue('%s became non-finite at level %d' %
                                    (what, n))
    peak = float(np.max(np.abs(values)))
    if peak > bound + 1e-12 * max(1.0, bound):
        raise errors.StabilityViolation(
            'max |%s^%d| = %r exceeds max |phi| = %r' % (what, n, peak, bound))


def solve_backward(grid, payoff, tol=DEFAULT_TOL, form=DIFFERENCE_FORM):
    """Runs the backward trinomial tree from U^N = phi down to the root."""
    if tol < 0:
        raise errors.InvalidParam('tol must be >= 0, got %r' % (tol,))
    grid.check_cfl()
    start = time.time()
    n_steps = grid.n_steps
    terminal = np.asarray(payoff.evaluate(grid.nodes(n_steps)),
                          dtype=np.float64)
    if not np.all(np.isfinite(terminal)):
        raise errors.NonFiniteValue('terminal payoff is not finite')
    bound = float(np.max(np.abs(terminal)))

    values = [None] * (n_steps + 1)
    controls = [None] * n_steps
    values[n_steps] = terminal
    for n in range(n_steps - 1, -1, -1):
        values[n], controls[n] = backward_step(values[n + 1], grid, tol, form)
        _check_level(values[n], n, bound)

    solution = BackwardSolution(lattice.Lattice(values),
                                lattice.Lattice(controls), grid, tol,
                                payoff=payoff)
    logging.info('backward N=%d root=%.17g in %.3fs', n_steps, solution.root,
                 time.time() - start)
    return solution


def expectation(sol):
    return sol.root


def control_at(sol, n, i):
    if not 0 <= n < sol.grid.n_steps:
        raise errors.IndexOutOfLattice('control level %d outside 0..%d' %
                                       (n, sol.grid.n_steps - 1))
    return sol.controls.at(n, i)


def linear_expectation(grid, payoff, controls):
    """Expectation of phi under a fixed, not optimized, control.

    Args:
      controls: a single variance or a Lattice shaped like
        BackwardSolution.controls; every entry must lie in the interval.
    """
    lo, hi = grid.params.sigma_lo_sq, grid.params.sigma_hi_sq
    n_steps = grid.n_steps
    u = np.asarray(payoff.evaluate(grid.nodes(n_steps)), dtype=np.float64)
    for n in range(n_steps - 1, -1, -1):
        if isinstance(controls, lattice.Lattice):
            variances = controls.level(n)
        else:
            variances = np.full(2 * n + 1, float(controls))
        if np.any(variances < lo) or np.any(variances > hi):
            raise errors.InvalidParam('control outside [%r, %r] at level %d'
                                      % (lo, hi, n))
        u = u[1:-1] + (0.5 * grid.dt) * variances * second_difference(u,
                                                                      grid.h)
    return float(u[0])
