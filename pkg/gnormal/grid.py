# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import dataclasses
import logging
import math

import numpy as np

from gnormal import errors

# cfl bounds: the transition rows stay nonnegative up to 1, the w-scheme is
# only proven monotone up to 1/2
CFL_BOUND = 1.0
STRICT_CFL_BOUND = 0.5

# relative slack so ratio=1 or ratio=sqrt(2) are not rejected on roundoff
_CFL_SLACK = 1e-12


@dataclasses.dataclass(frozen=True)
class GParams(object):
    """The uncertainty interval [sigma_lo_sq, sigma_hi_sq] and the horizon."""
    sigma_lo_sq: float
    sigma_hi_sq: float
    horizon: float = 1.0

    def __post_init__(self):
        for name in ('sigma_lo_sq', 'sigma_hi_sq', 'horizon'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise errors.InvalidParam('%s must be positive, got %r' %
                                          (name, value))
        if self.sigma_lo_sq > self.sigma_hi_sq:
            raise errors.InvalidParam(
                'sigma_lo_sq=%r exceeds sigma_hi_sq=%r' %
                (self.sigma_lo_sq, self.sigma_hi_sq))

    def variance(self, curvature, tol=0.0):
        """Bang-bang variance: sigma_hi_sq where curvature > tol, else lo."""
        return np.where(np.asarray(curvature) > tol, self.sigma_hi_sq,
                        self.sigma_lo_sq)


@dataclasses.dataclass(frozen=True)
class Grid(object):
    params: GParams
    n_steps: int
    dt: float
    h: float
    ratio: float
    cfl: float
    strict: bool = False

    @property
    def cfl_bound(self):
        if self.strict:
            return STRICT_CFL_BOUND
        return CFL_BOUND

    def check_cfl(self, bound=None):
        if bound is None:
            bound = self.cfl_bound
        if self.cfl > bound * (1.0 + _CFL_SLACK):
            raise errors.CflViolation(self.cfl, bound)

    def nodes(self, half_width):
        """Positions x_i = i*h for i = -half_width..half_width."""
        if half_width < 0:
            return np.zeros(0)
        return np.arange(-half_width, half_width + 1) * self.h

    def level_time(self, n):
        return n * self.dt

    def nearest_level(self, t):
        n = int(round(t / self.dt))
        return min(max(n, 0), self.n_steps)

    def same_mesh(self, other):
        return (self.params == other.params and
                self.n_steps == other.n_steps and self.h == other.h and
                self.dt == other.dt)


def build_grid(params, n_steps, ratio=1.1, strict=False):
    """Builds the parabolic mesh h = sqrt(sigma_hi_sq * dt) * ratio.

    Args:
      params: GParams.
      n_steps: number of time steps N >= 1.
      ratio: mesh ratio; cfl = 1 / ratio**2.
      strict: enforce cfl <= 1/2 instead of cfl <= 1.

    Returns:
      Grid.
    """
    if isinstance(n_steps, bool) or int(n_steps) != n_steps or n_steps < 1:
        raise errors.InvalidParam('n_steps must be an integer >= 1, got %r' %
                                  (n_steps,))
    if not (math.isfinite(ratio) and ratio > 0):
        raise errors.InvalidParam('ratio must be positive, got %r' % (ratio,))
    n_steps = int(n_steps)
    dt = params.horizon / n_steps
    h = math.sqrt(params.sigma_hi_sq * dt) * ratio
    cfl = params.sigma_hi_sq * dt / (h * h)
    grid = Grid(params=params, n_steps=n_steps, dt=dt, h=h, ratio=ratio,
                cfl=cfl, strict=bool(strict))
    grid.check_cfl()
    logging.info('grid N=%d dt=%.6g h=%.6g cfl=%.6g', n_steps, dt, h, cfl)
    return grid
