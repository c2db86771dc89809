# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.


class GNormalError(Exception):
    pass


# bad input of any kind - the cli maps these to exit code 2
class ConfigError(GNormalError):
    exit_code = 2


# the numbers went wrong - the cli maps these to exit code 3
class NumericalError(GNormalError):
    exit_code = 3


class InvalidParam(ConfigError):
    pass


class CflViolation(ConfigError):

    def __init__(self, cfl, bound):
        ConfigError.__init__(self, 'CFL violated: %.3f > %g' % (cfl, bound))
        self.cfl = cfl
        self.bound = bound


class ParseError(ConfigError):

    def __init__(self, pos, expected, text=None):
        self.pos = pos
        self.expected = tuple(sorted(expected))
        self.text = text
        ConfigError.__init__(self, 'parse error at offset %d: expected one of %s'
                             % (pos, ', '.join(self.expected)))


class UnknownBuiltin(ConfigError):
    pass


class WindowOutOfRange(ConfigError):
    pass


class GridMismatch(ConfigError):
    pass


class IndexOutOfLattice(ConfigError, IndexError):
    pass


class HistoryMissing(ConfigError):
    pass


class NonFiniteValue(NumericalError):
    pass


class NegativeMass(NumericalError):
    pass


# raised lazily when a parsed payoff cannot be evaluated, e.g. 1/x at 0
class DomainError(NumericalError, ArithmeticError):
    pass


class StabilityViolation(NumericalError):
    pass
