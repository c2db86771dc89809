# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import copy
import optparse
import os

from gnormal import errors
from gnormal import grid
from gnormal.scheme import analysis
from gnormal.scheme import backward

CSV_FORMAT = 'csv'
JSON_FORMAT = 'json'
OUTPUT_FORMATS = (CSV_FORMAT, JSON_FORMAT)

DENSITY_MODE = 'density'
CURVATURE_MODE = 'curvature'
STUDY_MODES = (DENSITY_MODE, CURVATURE_MODE)


class RunOptions(object):

    def __init__(self, **kargs):
        # builtin name (square, neg_square, sin3x, cube) or an expression in x
        self.payoff_spec = 'sin3x'

        # the variance interval and horizon of the experiments
        self.sigma_lo_sq = 0.04
        self.sigma_hi_sq = 1.0
        self.horizon = 1.0

        self.n_steps = 800
        # h = sqrt(sigma_hi_sq * dt) * ratio, so cfl = 1 / ratio**2
        self.ratio = 1.1
        # curvature at or below tol selects sigma_lo_sq
        self.tol = backward.DEFAULT_TOL
        # enforce cfl <= 1/2, under which the flux scheme is monotone
        self.strict_cfl = False

        self.seed = 42
        self.samples = 500000

        # where density errors are measured
        self.window = analysis.DEFAULT_DENSITY_WINDOW
        self.output_format = CSV_FORMAT

        # refinement studies
        self.mode = DENSITY_MODE
        self.n_list = (100, 200, 400, 800)
        self.n_ref = 3200
        self.t_eval = analysis.DEFAULT_T_EVAL
        # density errors integrate on the reference nodes by default
        self.quadrature = analysis.REFERENCE_QUADRATURE
        self.curvature_window = analysis.DEFAULT_CURVATURE_WINDOW
        self.flux = analysis.SCHEME_FLUX
        self.max_workers = None

        self.output_file = None
        self.verbose = False

        self.__dict__.update(kargs)

    def update(self, **kargs):
        self.__dict__.update(kargs)

    def to_params(self):
        return grid.GParams(float(self.sigma_lo_sq), float(self.sigma_hi_sq),
                            float(self.horizon))

    def build_grid(self, n_steps=None):
        if n_steps is None:
            n_steps = self.n_steps
        return grid.build_grid(self.to_params(), n_steps, float(self.ratio),
                               strict=self.strict_cfl)

    def validate(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise errors.InvalidParam('output format %r; expected one of %s' %
                                      (self.output_format,
                                       ', '.join(OUTPUT_FORMATS)))
        if self.mode not in STUDY_MODES:
            raise errors.InvalidParam('study mode %r; expected one of %s' %
                                      (self.mode, ', '.join(STUDY_MODES)))
        if self.quadrature not in analysis.QUADRATURES:
            raise errors.InvalidParam('quadrature %r; expected one of %s' %
                                      (self.quadrature,
                                       ', '.join(analysis.QUADRATURES)))
        if self.flux not in analysis.FLUXES:
            raise errors.InvalidParam('flux %r; expected one of %s' %
                                      (self.flux, ', '.join(analysis.FLUXES)))
        if self.tol < 0:
            raise errors.InvalidParam('tol must be >= 0, got %r' % (self.tol,))
        if self.samples < 1:
            raise errors.InvalidParam('samples must be >= 1, got %r' %
                                      (self.samples,))
        self.to_params()


default_options = RunOptions()

strict_options = copy.copy(default_options)
strict_options.strict_cfl = True
strict_options.ratio = 1.5

options_map = {
    'default': default_options,
    'strict': strict_options,
}


def parse_interval(text):
    try:
        lo, hi = [float(part) for part in text.split(',')]
    except ValueError:
        raise errors.InvalidParam('expected an interval "lo,hi", got %r' %
                                  (text,))
    if not lo < hi:
        raise errors.InvalidParam('interval %r is empty' % (text,))
    return (lo, hi)


def parse_counts(text):
    try:
        counts = tuple(int(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise errors.InvalidParam('expected step counts like "100,200", got %r'
                                  % (text,))
    if not counts or min(counts) < 1:
        raise errors.InvalidParam('step counts must be >= 1, got %r' % (text,))
    return counts


def _store_parsed(parse):

    def callback(option, opt_str, value, parser):
        try:
            setattr(parser.values, option.dest, parse(value))
        except errors.InvalidParam as e:
            raise optparse.OptionValueError('%s: %s' % (opt_str, e))

    return callback


def validate_path(option, opt_str, path, parser):
    path = os.path.abspath(os.path.expanduser(path))
    setattr(parser.values, option.dest, path)


def add_common_options(op):
    op.add_option('--preset',
                  default='default',
                  choices=sorted(options_map),
                  help='named configuration the other flags override')
    op.add_option('--payoff',
                  dest='payoff_spec',
                  default=None,
                  help='builtin payoff name or an expression in x')
    op.add_option('--sigma-lo-sq', type='float', default=None)
    op.add_option('--sigma-hi-sq', type='float', default=None)
    op.add_option('--horizon', type='float', default=None)
    op.add_option('-N', '--steps', dest='n_steps', type='int', default=None)
    op.add_option('--ratio',
                  type='float',
                  default=None,
                  help='mesh ratio h / sqrt(sigma_hi_sq * dt)')
    op.add_option('--tol',
                  type='float',
                  default=None,
                  help='curvature switching tolerance')
    op.add_option('--strict-cfl',
                  action='store_true',
                  default=None,
                  help='require cfl <= 1/2')
    op.add_option('--seed', type='int', default=None)
    op.add_option('--samples', type='int', default=None)
    op.add_option('--window',
                  type='str',
                  default=None,
                  action='callback',
                  callback=_store_parsed(parse_interval),
                  help='density error window "lo,hi"')
    op.add_option('--format',
                  dest='output_format',
                  choices=OUTPUT_FORMATS,
                  default=None)
    op.add_option('--mode', choices=STUDY_MODES, default=None)
    op.add_option('--n-list',
                  type='str',
                  default=None,
                  action='callback',
                  callback=_store_parsed(parse_counts),
                  help='coarse step counts, e.g. 100,200,400,800')
    op.add_option('--n-ref', type='int', default=None)
    op.add_option('--quadrature',
                  choices=analysis.QUADRATURES,
                  default=None,
                  help='nodes the density L2 error is summed on')
    op.add_option('--t-eval', type='float', default=None)
    op.add_option('--curvature-window',
                  type='str',
                  default=None,
                  action='callback',
                  callback=_store_parsed(parse_interval))
    op.add_option('--flux',
                  choices=analysis.FLUXES,
                  default=None,
                  help='W from the flux scheme or from the backward tree')
    op.add_option('-j', '--max-workers', type='int', default=None)
    op.add_option('-o',
                  '--output-file',
                  default=None,
                  action='callback',
                  callback=validate_path,
                  type='str',
                  nargs=1)
    op.add_option('-v', '--verbose', action='store_true', default=None)
    op.add_option('--debug', action='store_true', default=False)
    op.add_option('--stack-traces',
                  action='store_true',
                  default=False,
                  help='raise errors instead of printing them')
