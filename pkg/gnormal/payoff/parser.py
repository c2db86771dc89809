# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import math

from gnormal import errors
from gnormal.payoff import ast
from gnormal.payoff import scanner

# tokens that may start an operand
_OPERAND_START = frozenset([scanner.NUMBER, scanner.IDENTIFIER, '(', '-'] +
                           list(ast.FUNCTION_NAMES))


class PayoffParser(object):
    """Recursive descent over the payoff grammar.

      expr  := term (('+'|'-') term)*
      term  := unary (('*'|'/') unary)*
      unary := '-' unary | power
      power := atom ('^' ['-'] integer)?
      atom  := number | 'x' | fn '(' expr ')' | '(' expr ')'

    '^' binds tighter than a leading minus, so "-x^2" is -(x^2).
    """

    def __init__(self, payoff_scanner):
        self._scanner = payoff_scanner
        self._i = 0

    def _peek(self):
        return self._scanner.token(self._i)

    def _next(self):
        token = self._peek()
        self._i += 1
        return token

    def _fail(self, token, expected):
        raise errors.ParseError(
            scanner.byte_offset(self._scanner.input, token.pos), expected,
            self._scanner.input)

    def _expect(self, kind):
        token = self._peek()
        if token.kind != kind:
            self._fail(token, [kind])
        return self._next()

    def goal(self):
        node = self.expr()
        token = self._peek()
        if token.kind != scanner.END:
            self._fail(token, ['+', '-', '*', '/', '^', scanner.END])
        return node

    def expr(self):
        node = self.term()
        while self._peek().kind in ('+', '-'):
            token = self._next()
            node = ast.BinOpNode(token.kind, node, self.term(), pos=token.pos)
        return node

    def term(self):
        node = self.unary()
        while self._peek().kind in ('*', '/'):
            token = self._next()
            node = ast.BinOpNode(token.kind, node, self.unary(), pos=token.pos)
        return node

    def unary(self):
        token = self._peek()
        if token.kind == '-':
            self._next()
            return ast.NegateNode(self.unary(), pos=token.pos)
        return self.power()

    def power(self):
        node = self.atom()
        token = self._peek()
        if token.kind != '^':
            return node
        self._next()
        sign = 1
        if self._peek().kind == '-':
            self._next()
            sign = -1
        number = self._peek()
        if number.kind != scanner.NUMBER or not number.text.isdigit():
            self._fail(number, ['integer'])
        self._next()
        return ast.PowerNode(node, sign * int(number.text), pos=token.pos)

    def atom(self):
        token = self._peek()
        if token.kind == scanner.NUMBER:
            self._next()
            value = float(token.text)
            if not math.isfinite(value):
                self._fail(token, ['finite number'])
            return ast.LiteralNode(value, pos=token.pos)
        if token.kind == scanner.IDENTIFIER:
            self._next()
            return ast.IdentifierNode(token.text, pos=token.pos)
        if token.kind in ast.FUNCTION_NAMES:
            self._next()
            self._expect('(')
            argument = self.expr()
            self._expect(')')
            return ast.CallFunctionNode(token.kind, argument, pos=token.pos)
        if token.kind == '(':
            self._next()
            node = self.expr()
            self._expect(')')
            return node
        self._fail(token, _OPERAND_START)


# @return abstract syntax tree rooted on an expression node
def parse(src_text):
    if not src_text or not src_text.strip():
        raise errors.ParseError(0, _OPERAND_START, src_text)
    payoff_parser = PayoffParser(scanner.PayoffScanner(src_text))
    return payoff_parser.goal()
