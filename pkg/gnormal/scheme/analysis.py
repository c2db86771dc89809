# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

from concurrent import futures
import dataclasses
import logging
import math
import typing

import numpy as np

from gnormal import errors
from gnormal import grid as grid_module
from gnormal.scheme import auxiliary
from gnormal.scheme import backward
from gnormal.scheme import forward

DEFAULT_DENSITY_WINDOW = (-3.0, 3.0)
DEFAULT_CURVATURE_WINDOW = (-2.0, 2.0)
DEFAULT_T_EVAL = 0.5

COARSE_QUADRATURE = 'coarse'
REFERENCE_QUADRATURE = 'reference'
QUADRATURES = (COARSE_QUADRATURE, REFERENCE_QUADRATURE)

# W from the flux scheme, or sigma^2(V) V from the backward tree
SCHEME_FLUX = 'scheme'
TREE_FLUX = 'tree'
FLUXES = (SCHEME_FLUX, TREE_FLUX)

# errors this small are roundoff; a rate between them means nothing
RATE_ERROR_FLOOR = 1e-14


@dataclasses.dataclass(frozen=True)
class RefinementRow(object):
    n_steps: int
    h: float
    error: float
    rate: typing.Optional[float] = None

    header = ('N', 'h', 'error', 'rate')

    def as_tuple(self):
        return (self.n_steps, self.h, self.error, self.rate)


@dataclasses.dataclass(frozen=True)
class CurvatureRow(object):
    n_steps: int
    h: float
    error_v: float
    error_w: float
    rate_v: typing.Optional[float] = None
    rate_w: typing.Optional[float] = None

    header = ('N', 'err_V', 'order_V', 'err_W', 'order_W')

    def as_tuple(self):
        return (self.n_steps, self.error_v, self.rate_v, self.error_w,
                self.rate_w)


def _check_window(window):
    lo, hi = window
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise errors.InvalidParam('window must be an interval lo < hi, got %r'
                                  % (window,))
    return float(lo), float(hi)


def _window_nodes(x, reference_x, window):
    lo, hi = _check_window(window)
    if reference_x.size == 0 or lo < reference_x[0] or hi > reference_x[-1]:
        raise errors.WindowOutOfRange(
            'window [%g, %g] is not inside the reference span' % (lo, hi))
    mask = (x >= lo) & (x <= hi)
    if not np.any(mask):
        raise errors.WindowOutOfRange('no nodes inside window [%g, %g]' %
                                      (lo, hi))
    return mask


def l2_density_error(coarse, reference, window=DEFAULT_DENSITY_WINDOW,
                     quadrature=COARSE_QUADRATURE):
    """Discrete L2 distance between two density tables over a window.

    Args:
      quadrature: 'coarse' interpolates the reference density at the coarse
        nodes and weights by the coarse spacing; 'reference' interpolates the
        coarse density at the reference nodes and weights by the reference
        spacing.
    """
    _check_choice(quadrature, QUADRATURES, 'quadrature')
    mask = _window_nodes(coarse.x, reference.x, window)
    if quadrature == COARSE_QUADRATURE:
        x = coarse.x[mask]
        diff = coarse.density[mask] - np.interp(x, reference.x,
                                                reference.density)
        return math.sqrt(float(np.sum(diff * diff)) * coarse.h)
    fine = _window_nodes(reference.x, coarse.x, window)
    x = reference.x[fine]
    diff = np.interp(x, coarse.x, coarse.density) - reference.density[fine]
    return math.sqrt(float(np.sum(diff * diff)) * reference.h)


def linf_error(x, values, reference_x, reference_values, window):
    mask = _window_nodes(x, reference_x, window)
    diff = values[mask] - np.interp(x[mask], reference_x, reference_values)
    return float(np.max(np.abs(diff)))


def convergence_rate(err_coarse, h_coarse, err_fine, h_fine):
    """log(err_coarse / err_fine) / log(h_coarse / h_fine)."""
    for name, value in (('err_coarse', err_coarse), ('h_coarse', h_coarse),
                        ('err_fine', err_fine), ('h_fine', h_fine)):
        if not (math.isfinite(value) and value > 0):
            raise errors.InvalidParam('%s must be positive, got %r' %
                                      (name, value))
    if h_coarse == h_fine:
        raise errors.InvalidParam('rate needs two different spacings, got '
                                  'h=%r twice' % (h_coarse,))
    return math.log(err_coarse / err_fine) / math.log(h_coarse / h_fine)


def _rate(prev_error, prev_h, error, h):
    if prev_error < RATE_ERROR_FLOOR or error < RATE_ERROR_FLOOR:
        return None
    return convergence_rate(prev_error, prev_h, error, h)


def _check_counts(n_list, n_ref):
    n_list = sorted(set(int(n) for n in n_list))
    if not n_list:
        raise errors.InvalidParam('n_list must not be empty')
    if n_list[0] < 1:
        raise errors.InvalidParam('step counts must be >= 1, got %r' %
                                  (n_list[0],))
    if n_ref <= n_list[-1]:
        raise errors.InvalidParam('n_ref=%r must exceed max(n_list)=%r' %
                                  (n_ref, n_list[-1]))
    return n_list


def _map(func, items, max_workers):
    if max_workers and max_workers > 1:
        with futures.ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def _check_choice(value, choices, what):
    if value not in choices:
        raise errors.InvalidParam('unknown %s %r; expected one of %s' %
                                  (what, value, ', '.join(choices)))


def _density_table(params, payoff, n_steps, ratio, tol):
    grid = grid_module.build_grid(params, n_steps, ratio)
    sol = backward.solve_backward(grid, payoff, tol)
    return grid, forward.density(forward.propagate(sol))


def refine_study_density(params, payoff, n_list, n_ref, ratio=1.1,
                         window=DEFAULT_DENSITY_WINDOW,
                         tol=backward.DEFAULT_TOL, max_workers=None,
                         quadrature=REFERENCE_QUADRATURE):
    """L2 density errors of each N in n_list against the n_ref run.

    The integral is taken on the reference nodes unless quadrature is
    'coarse'.

    Returns:
      RefinementRows sorted by N; every row after the first carries the
      empirical rate against its predecessor.
    """
    n_list = _check_counts(n_list, n_ref)
    _check_window(window)
    _check_choice(quadrature, QUADRATURES, 'quadrature')
    runs = _map(lambda n: _density_table(params, payoff, n, ratio, tol),
                n_list + [n_ref], max_workers)
    reference = runs[-1][1]
    rows = []
    for n_steps, (grid, table) in zip(n_list, runs[:-1]):
        error = l2_density_error(table, reference, window, quadrature)
        rate = None
        if rows:
            rate = _rate(rows[-1].error, rows[-1].h, error, grid.h)
        rows.append(RefinementRow(n_steps, grid.h, error, rate))
        logging.info('density study N=%d h=%.6f error=%.4e rate=%s', n_steps,
                     grid.h, error, rate)
    return rows


def _curvature_level(params, payoff, n_steps, ratio, tol, t_eval, flux):
    grid = grid_module.build_grid(params, n_steps, ratio)
    sol = backward.solve_backward(grid, payoff, tol)
    n = grid.nearest_level(t_eval)
    values = sol.values.level(n)
    if values.size < 3:
        v = values[:0]
    else:
        v = backward.second_difference(values, grid.h)
    if flux == TREE_FLUX:
        w = params.variance(v, tol) * v
    else:
        w = auxiliary.solve_w_scheme(grid, payoff, tol).level(n)
    return grid, grid.nodes(sol.values.half_width(n) - 1), v, w


def refine_study_curvature(params, payoff, n_list, n_ref, ratio=1.1,
                           t_eval=DEFAULT_T_EVAL,
                           window=DEFAULT_CURVATURE_WINDOW,
                           tol=backward.DEFAULT_TOL, max_workers=None,
                           flux=SCHEME_FLUX):
    """Max-norm errors of V and W at the level nearest t_eval.

    V is the second difference of the backward tree. W comes from the flux
    scheme started from the analytic terminal condition, or with
    flux='tree' from sigma^2(V) V on the tree itself. Both are compared
    against the n_ref run, linearly interpolated onto the coarse nodes.
    """
    n_list = _check_counts(n_list, n_ref)
    _check_window(window)
    _check_choice(flux, FLUXES, 'flux')
    if not (0.0 < t_eval <= params.horizon):
        raise errors.InvalidParam('t_eval must lie in (0, %r], got %r' %
                                  (params.horizon, t_eval))
    runs = _map(
        lambda n: _curvature_level(params, payoff, n, ratio, tol, t_eval,
                                   flux),
        n_list + [n_ref], max_workers)
    _, ref_x, ref_v, ref_w = runs[-1]
    rows = []
    for n_steps, (grid, x, v, w) in zip(n_list, runs[:-1]):
        error_v = linf_error(x, v, ref_x, ref_v, window)
        error_w = linf_error(x, w, ref_x, ref_w, window)
        rate_v = rate_w = None
        if rows:
            prev = rows[-1]
            rate_v = _rate(prev.error_v, prev.h, error_v, grid.h)
            rate_w = _rate(prev.error_w, prev.h, error_w, grid.h)
        rows.append(CurvatureRow(n_steps, grid.h, error_v, error_w, rate_v,
                                 rate_w))
        logging.info('curvature study N=%d err_V=%.4e err_W=%.4e', n_steps,
                     error_v, error_w)
    return rows
