# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import collections
import re

from gnormal import errors
from gnormal.payoff import ast

Token = collections.namedtuple('Token', 'pos end kind text')

END = 'end of input'
NUMBER = 'number'
IDENTIFIER = 'x'

# PayoffScanner uses the order of the match, not the length of the match to
# determine what token to return, so numbers come before the single character
# operators and the words come last.
_PATTERNS = [
    (NUMBER, re.compile(r'(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?')),
    ('+', re.compile(r'\+')),
    ('-', re.compile(r'-')),
    ('*', re.compile(r'\*')),
    ('/', re.compile(r'/')),
    ('^', re.compile(r'\^')),
    ('(', re.compile(r'\(')),
    (')', re.compile(r'\)')),
    ('word', re.compile(r'[A-Za-z_]\w*')),
]
_WHITESPACE = re.compile(r'\s*')

ALL_KINDS = frozenset([NUMBER, IDENTIFIER, '+', '-', '*', '/', '^', '(', ')',
                       END] + list(ast.FUNCTION_NAMES))


def byte_offset(text, pos):
    return len(text[:pos].encode('utf8'))


class PayoffScanner(object):

    def __init__(self, text):
        self.input = text
        self.pos = 0
        self.tokens = []

    def token(self, i):
        """Get the i'th token, scanning forward as needed."""
        while i >= len(self.tokens):
            if self.tokens and self.tokens[-1].kind == END:
                return self.tokens[-1]
            self.scan()
        return self.tokens[i]

    def scan(self):
        _input = self.input
        _pos = _WHITESPACE.match(_input, self.pos).end()
        if _pos >= len(_input):
            self.pos = _pos
            self.tokens.append(Token(_pos, _pos, END, ''))
            return
        for kind, regexp in _PATTERNS:
            m = regexp.match(_input, _pos)
            if m:
                break
        else:
            raise errors.ParseError(byte_offset(_input, _pos), ALL_KINDS,
                                    _input)
        text = m.group(0)
        if kind == 'word':
            if text == IDENTIFIER:
                kind = IDENTIFIER
            elif text in ast.FUNCTION_NAMES:
                kind = text
            else:
                raise errors.ParseError(
                    byte_offset(_input, _pos),
                    (IDENTIFIER,) + ast.FUNCTION_NAMES, _input)
        self.pos = m.end()
        self.tokens.append(Token(_pos, self.pos, kind, text))
