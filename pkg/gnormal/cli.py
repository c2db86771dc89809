# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import copy
import logging
import optparse
import os.path
import sys

from gnormal import errors
from gnormal import grid as grid_module
from gnormal import options
from gnormal import text
from gnormal.payoff import payoff as payoff_module
from gnormal.scheme import analysis
from gnormal.scheme import auxiliary
from gnormal.scheme import backward
from gnormal.scheme import forward
from gnormal.scheme import montecarlo

COMMANDS = ('value', 'density', 'sample', 'converge', 'wstudy')

USAGE = '%%prog {%s} [options]' % ','.join(COMMANDS)


class Runner(object):
    setting_names = [
        'curvature_window',
        'flux',
        'horizon',
        'max_workers',
        'mode',
        'n_list',
        'n_ref',
        'n_steps',
        'output_file',
        'output_format',
        'payoff_spec',
        'quadrature',
        'ratio',
        'samples',
        'seed',
        'sigma_hi_sq',
        'sigma_lo_sq',
        'strict_cfl',
        't_eval',
        'tol',
        'verbose',
        'window',
    ]

    @classmethod
    def args_from_optparse(cls, options):
        # unset flags are None so the preset's value survives
        settings = {}
        for name in cls.setting_names:
            value = getattr(options, name, None)
            if value is not None:
                settings[name] = value
        return settings

    def __init__(self, run_options, stack_traces=False, stdout=None):
        self.options = run_options
        self.stack_traces = stack_traces
        self.stdout = stdout or sys.stdout

    def print_stderr_message(self, message, is_error=False, is_warning=False):
        if is_warning:
            # Print out WARNING in magenta.
            sys.stderr.write('\033[1;35mWARNING:\033[1;m ')
        elif is_error:
            # Print out ERROR in red.
            sys.stderr.write('\033[1;31mERROR:\033[1;m ')
        else:
            sys.stderr.write('\033[1;32mINFO:\033[1;m ')
        sys.stderr.write(message)
        sys.stderr.write('\n')

    def error(self, err):
        if self.stack_traces:
            raise err
        self.print_stderr_message(str(err), is_error=True)
        sys.exit(err.exit_code)

    def run(self, command):
        if command not in COMMANDS:
            self.error(errors.InvalidParam('unknown command %r; expected one '
                                           'of %s' % (command,
                                                      ', '.join(COMMANDS))))
        try:
            self.options.validate()
            getattr(self, 'cmd_' + command)()
        except errors.GNormalError as e:
            self.error(e)
        return 0

    # shared pipeline pieces

    def _payoff(self):
        return payoff_module.load_payoff(self.options.payoff_spec)

    def _solve(self, payoff):
        grid = self.options.build_grid()
        return backward.solve_backward(grid, payoff, self.options.tol)

    def _report(self, sol, payoff):
        grid = sol.grid
        return {
            'expectation': sol.root,
            'n_steps': grid.n_steps,
            'h': grid.h,
            'dt': grid.dt,
            'cfl': grid.cfl,
            'payoff': payoff.description,
            'sigma_lo_sq': grid.params.sigma_lo_sq,
            'sigma_hi_sq': grid.params.sigma_hi_sq,
            'horizon': grid.params.horizon,
        }

    def _output_path(self, default_stem):
        if self.options.output_file:
            return self.options.output_file
        return os.path.abspath('%s.%s' % (default_stem,
                                          self.options.output_format))

    def _write_table(self, path, header, rows):
        if self.options.output_format == options.JSON_FORMAT:
            body = text.table_json(header, rows)
        else:
            body = text.csv_text(header, rows)
        text.write_text(path, body)
        logging.info('wrote %s', path)

    def _write_sidecar(self, table_path, report):
        path = os.path.splitext(table_path)[0] + '.meta.json'
        text.write_text(path, text.canonical_json(report))
        logging.info('wrote %s', path)
        return path

    def _emit(self, report):
        body = text.canonical_json(report)
        if self.options.output_file:
            text.write_text(self.options.output_file, body)
        else:
            self.stdout.write(body)

    def _dual(self, payoff, keep_history=False):
        sol = self._solve(payoff)
        dist = forward.propagate(sol, keep_history=keep_history)
        report = self._report(sol, payoff)
        report['duality_gap'] = abs(forward.expectation_forward(dist, payoff) -
                                    sol.root)
        return sol, dist, report

    # commands

    def cmd_value(self):
        payoff = self._payoff()
        sol = self._solve(payoff)
        self._emit(self._report(sol, payoff))

    def cmd_density(self):
        payoff = self._payoff()
        _, dist, report = self._dual(payoff)
        table = forward.density(dist)
        path = self._output_path('density')
        self._write_table(path, table.header, table.rows())
        self._write_sidecar(path, report)

    def cmd_sample(self):
        payoff = self._payoff()
        sol, dist, report = self._dual(payoff)
        samples = montecarlo.sample_paths(sol, self.options.samples,
                                          self.options.seed,
                                          max_workers=self.options.max_workers)
        table = montecarlo.histogram_csv(samples)
        report['seed'] = self.options.seed
        report['samples'] = self.options.samples
        report['tv_distance'] = montecarlo.total_variation(samples, dist)
        report['mean_z_score'] = montecarlo.check_empirical_mean(samples, dist)
        path = self._output_path('histogram')
        self._write_table(path, table.header, table.rows())
        self._write_sidecar(path, report)

    def cmd_converge(self):
        opts = self.options
        payoff = self._payoff()
        # cfl depends on the ratio only, so one grid checks every N
        opts.build_grid()
        if opts.mode == options.DENSITY_MODE:
            rows = analysis.refine_study_density(
                opts.to_params(), payoff, opts.n_list, opts.n_ref, opts.ratio,
                opts.window, opts.tol, max_workers=opts.max_workers,
                quadrature=opts.quadrature)
            header = analysis.RefinementRow.header
        else:
            rows = analysis.refine_study_curvature(
                opts.to_params(), payoff, opts.n_list, opts.n_ref, opts.ratio,
                opts.t_eval, opts.curvature_window, opts.tol,
                max_workers=opts.max_workers, flux=opts.flux)
            header = analysis.CurvatureRow.header
        path = self._output_path('%s_study' % opts.mode)
        self._write_table(path, header, [row.as_tuple() for row in rows])

    def cmd_wstudy(self):
        payoff = self._payoff()
        sol = self._solve(payoff)
        grid = sol.grid
        if grid.cfl > grid_module.STRICT_CFL_BOUND:
            logging.warning('cfl %.4g > 1/2: the flux scheme is not known to '
                            'be monotone here', grid.cfl)
        report = self._report(sol, payoff)
        for terminal in auxiliary.TERMINALS:
            flux = auxiliary.solve_w_scheme(grid, payoff, self.options.tol,
                                            terminal=terminal)
            report[terminal] = auxiliary.control_convergence_report(
                sol, flux).as_dict()
        self._emit(report)


def configure_logging(verbose=False, debug=False):
    level = logging.WARNING
    if debug:
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    option_parser = optparse.OptionParser(usage=USAGE)
    options.add_common_options(option_parser)
    (cli_options, args) = option_parser.parse_args(argv)
    if len(args) != 1:
        option_parser.error('expected exactly one command out of %s' %
                            ', '.join(COMMANDS))
    configure_logging(cli_options.verbose, cli_options.debug)

    run_options = copy.copy(options.options_map[cli_options.preset])
    run_options.update(**Runner.args_from_optparse(cli_options))
    runner = Runner(run_options, stack_traces=cli_options.stack_traces)
    return runner.run(args[0])
