# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import numpy as np

from gnormal import errors
from gnormal.payoff import parser
from gnormal.payoff import walker

BUILTIN = 'builtin'
EXPRESSION = 'expression'

ANALYTIC = 'analytic'
AUTOMATIC = 'automatic-second-derivative'


def _square(x):
    return x * x


def _square_d2(x):
    return np.full_like(x, 2.0)


def _neg_square(x):
    return -(x * x)


def _neg_square_d2(x):
    return np.full_like(x, -2.0)


def _sin3x(x):
    return np.sin(3.0 * x)


def _sin3x_d2(x):
    return -9.0 * np.sin(3.0 * x)


def _cube(x):
    return x * x * x


def _cube_d2(x):
    return 6.0 * x


# name -> (phi, phi'', equivalent expression text)
_BUILTINS = {
    'square': (_square, _square_d2, 'x^2'),
    'neg_square': (_neg_square, _neg_square_d2, '-x^2'),
    'sin3x': (_sin3x, _sin3x_d2, 'sin(3*x)'),
    'cube': (_cube, _cube_d2, 'x^3'),
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin_expression(name):
    try:
        return _BUILTINS[name][2]
    except KeyError:
        raise errors.UnknownBuiltin('unknown builtin payoff %r; expected one '
                                    'of %s' % (name, ', '.join(BUILTIN_NAMES)))


class Payoff(object):
    """A twice differentiable measurement phi with its second derivative.

    Evaluation is vectorized over numpy arrays and raises DomainError when a
    value comes out non-finite.
    """

    def __init__(self, kind, name, func, func_d2, d2_source, tree=None):
        self.kind = kind
        self.name = name
        self.d2_source = d2_source
        self.tree = tree
        self._func = func
        self._func_d2 = func_d2

    def __repr__(self):
        return 'Payoff(%s %r)' % (self.kind, self.name)

    def _checked(self, func, x, what):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(all='ignore'):
            result = np.asarray(func(x), dtype=np.float64)
        if not np.all(np.isfinite(result)):
            bad = x[~np.isfinite(result)] if x.ndim else x
            raise errors.DomainError('%s of %s is not finite at x=%s' %
                                     (what, self.name, np.ravel(bad)[:3]))
        if result.ndim == 0:
            return float(result)
        return result

    def evaluate(self, x):
        return self._checked(self._func, x, 'phi')

    def evaluate_d2(self, x):
        return self._checked(self._func_d2, x, "phi''")

    __call__ = evaluate

    @property
    def description(self):
        if self.kind == BUILTIN:
            return self.name
        return walker.flatten_tree(self.tree)


def builtin_payoff(name):
    if name not in _BUILTINS:
        builtin_expression(name)
    func, func_d2, _ = _BUILTINS[name]
    return Payoff(BUILTIN, name, func, func_d2, ANALYTIC)


def parse_payoff(text):
    """Parses an expression in x; phi'' comes from differentiating the AST."""
    tree = parser.parse(text)
    tree_d2 = walker.differentiate(tree, times=2)
    return Payoff(EXPRESSION, text, lambda x: walker.evaluate(tree, x),
                  lambda x: walker.evaluate(tree_d2, x), AUTOMATIC, tree=tree)


def load_payoff(spec):
    """A builtin name or, failing that, an expression."""
    if spec in _BUILTINS:
        return builtin_payoff(spec)
    return parse_payoff(spec)
