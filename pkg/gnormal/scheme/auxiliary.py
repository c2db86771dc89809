# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import logging

import numpy as np

from gnormal import errors
from gnormal import lattice
from gnormal.scheme import backward

ANALYTIC_TERMINAL = 'analytic'
DISCRETE_TERMINAL = 'discrete'
TERMINALS = (ANALYTIC_TERMINAL, DISCRETE_TERMINAL)

_EMPTY = np.zeros(0)


class CurvatureLattice(object):
    """V = delta_h^2 U and W = sigma^2(V) V.

    Level n holds |i| <= n - 1; level 0 is empty.
    """

    def __init__(self, v, w, variances):
        self.v = v
        self.w = w
        self.variances = variances


class FluxLattice(lattice.Lattice):
    """W levels from the w-scheme, with the variance sigma^2(W) per node."""

    def __init__(self, levels, variances, grid, terminal):
        lattice.Lattice.__init__(self, levels)
        self.variances = lattice.Lattice(variances)
        self.grid = grid
        self.terminal = terminal


def curvature_from_solution(sol):
    h = sol.grid.h
    params = sol.grid.params
    v_levels, w_levels, var_levels = [], [], []
    for values in sol.values:
        if values.size < 3:
            v_levels.append(_EMPTY)
            w_levels.append(_EMPTY)
            var_levels.append(_EMPTY)
            continue
        v = backward.second_difference(values, h)
        variances = params.variance(v, sol.tol)
        v_levels.append(v)
        w_levels.append(variances * v)
        var_levels.append(variances)
    return CurvatureLattice(lattice.Lattice(v_levels),
                            lattice.Lattice(w_levels),
                            lattice.Lattice(var_levels))


def w_step(w_next, var_next, grid, tol=backward.DEFAULT_TOL):
    """One backward step of the flux scheme.

    The bracket B = W/sigma^2(W) + dt/2 delta_h^2 W is the curvature at the
    new level; its sign picks the new variance, and W = sigma^2(B) B.

    Returns:
      (w, variances), two entries shorter than w_next.
    """
    w_next = np.asarray(w_next, dtype=np.float64)
    if w_next.size < 3:
        return _EMPTY, _EMPTY
    v_next = w_next / np.asarray(var_next, dtype=np.float64)
    bracket = v_next[1:-1] + (0.5 * grid.dt) * backward.second_difference(
        w_next, grid.h)
    variances = grid.params.variance(bracket, tol)
    return variances * bracket, variances


def solve_w_scheme(grid, payoff, tol=backward.DEFAULT_TOL,
                   terminal=ANALYTIC_TERMINAL):
    """Runs the explicit flux scheme backward from its terminal condition.

    Args:
      terminal: 'analytic' starts from sigma^2(phi'') phi''; 'discrete'
        starts from the second difference of phi, which reproduces the flux
        of the backward tree node for node.

    Returns:
      FluxLattice; level n holds |i| <= n - 1.
    """
    grid.check_cfl()
    n_steps = grid.n_steps
    if terminal == ANALYTIC_TERMINAL:
        v = np.asarray(payoff.evaluate_d2(grid.nodes(n_steps - 1)),
                       dtype=np.float64)
    elif terminal == DISCRETE_TERMINAL:
        phi = np.asarray(payoff.evaluate(grid.nodes(n_steps)),
                         dtype=np.float64)
        v = backward.second_difference(phi, grid.h)
    else:
        raise errors.InvalidParam('unknown terminal %r; expected one of %s' %
                                  (terminal, ', '.join(TERMINALS)))
    variances = grid.params.variance(v, tol)
    w = variances * v

    w_levels = [None] * (n_steps + 1)
    var_levels = [None] * (n_steps + 1)
    w_levels[n_steps], var_levels[n_steps] = w, variances
    bound = float(np.max(np.abs(w))) if w.size else 0.0
    slack = 1e-12 * max(1.0, bound) + grid.params.sigma_hi_sq * tol
    for n in range(n_steps - 1, -1, -1):
        w, variances = w_step(w, variances, grid, tol)
        if not np.all(np.isfinite(w)):
            raise errors.NonFiniteValue('W became non-finite at level %d' % n)
        if w.size and float(np.max(np.abs(w))) > bound + slack:
            logging.warning('w-scheme stability bound exceeded at level %d: '
                            '%r > %r', n, float(np.max(np.abs(w))), bound)
        w_levels[n], var_levels[n] = w, variances
    return FluxLattice(w_levels, var_levels, grid, terminal)


class ControlReport(object):

    def __init__(self, max_w_discrepancy, max_v_discrepancy, scale,
                 control_mismatches, terminal, max_relative_discrepancy=0.0):
        self.max_w_discrepancy = max_w_discrepancy
        # |W_tree - W_scheme| over the magnitude of the terms the second
        # difference of U combines at that node
        self.max_relative_discrepancy = max_relative_discrepancy
        self.max_v_discrepancy = max_v_discrepancy
        # max |W| from the backward tree, the magnitude the discrepancies
        # should be read against
        self.scale = scale
        self.control_mismatches = control_mismatches
        self.terminal = terminal

    def as_dict(self):
        return {
            'max_w_discrepancy': self.max_w_discrepancy,
            'max_relative_discrepancy': self.max_relative_discrepancy,
            'max_v_discrepancy': self.max_v_discrepancy,
            'scale': self.scale,
            'control_mismatches': self.control_mismatches,
            'terminal': self.terminal,
        }


def control_convergence_report(sol, wlat):
    """Compares the flux scheme against the flux implied by the tree."""
    if not sol.grid.same_mesh(wlat.grid) or len(wlat) != len(sol.values):
        raise errors.GridMismatch('flux lattice and solution use different '
                                  'grids')
    curvature = curvature_from_solution(sol)
    params, h = sol.grid.params, sol.grid.h
    max_w = max_v = scale = max_rel = 0.0
    mismatches = 0
    for n in range(1, len(wlat)):
        w_tree = curvature.w.level(n)
        w_scheme = wlat.level(n)
        if w_tree.size != w_scheme.size:
            raise errors.GridMismatch('level %d sizes differ: %d vs %d' %
                                      (n, w_tree.size, w_scheme.size))
        if not w_tree.size:
            continue
        v_implied = w_scheme / wlat.variances.level(n)
        max_w = max(max_w, float(np.max(np.abs(w_tree - w_scheme))))
        max_v = max(max_v, float(np.max(np.abs(curvature.v.level(n) -
                                               v_implied))))
        scale = max(scale, float(np.max(np.abs(w_tree))))
        u = np.abs(sol.values.level(n))
        local = np.abs(w_tree) + params.sigma_hi_sq * (
            u[:-2] + 2.0 * u[1:-1] + u[2:]) / (h * h)
        diff = np.abs(w_tree - w_scheme)
        max_rel = max(max_rel, float(np.max(
            np.divide(diff, local, out=np.zeros_like(diff), where=local > 0))))
        # W at level n carries the control decided at node (n - 1, i)
        mismatches += int(np.count_nonzero(
            wlat.variances.level(n) != sol.controls.level(n - 1)))
    return ControlReport(max_w, max_v, scale, mismatches, wlat.terminal,
                         max_relative_discrepancy=max_rel)
