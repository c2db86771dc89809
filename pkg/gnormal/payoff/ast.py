# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

FUNCTION_NAMES = ('sin', 'cos', 'exp')
BINARY_OPERATORS = ('+', '-', '*', '/')


class ASTNode(object):

    def __init__(self, name='', pos=None):
        self.name = name
        self.value = None
        # Position in the payoff text (measured in bytes).
        self.pos = pos

    def __str__(self):
        if self.value is not None:
            return '%s %s %r' % (self.__class__.__name__, self.name, self.value)
        return '%s %s' % (self.__class__.__name__, self.name)

    def __repr__(self):
        return self.__str__()

    # positions are ignored: two parses of equivalent text compare equal
    def __eq__(self, node):
        return bool(type(self) == type(node) and self.name == node.name and
                    self.value == node.value and
                    self.getChildNodes() == node.getChildNodes())

    def __ne__(self, node):
        return not self.__eq__(node)

    def __hash__(self):
        return hash('%s%s%s%s' % (type(self), self.name, self.value,
                                  hash(tuple(self.getChildNodes()))))

    def getChildNodes(self):
        return []


class LiteralNode(ASTNode):

    def __init__(self, value, pos=None):
        ASTNode.__init__(self, pos=pos)
        self.value = float(value)

    def __str__(self):
        return '%s value:%r' % (self.__class__.__name__, self.value)


class IdentifierNode(ASTNode):
    """The measurement variable; 'x' is the only identifier."""

    def __init__(self, name='x', pos=None):
        ASTNode.__init__(self, name, pos=pos)


class NegateNode(ASTNode):

    def __init__(self, expression, pos=None):
        ASTNode.__init__(self, pos=pos)
        self.expression = expression

    def getChildNodes(self):
        return [self.expression]

    def __str__(self):
        return '%s (-%s)' % (self.__class__.__name__, self.expression)


class BinOpNode(ASTNode):

    def __init__(self, operator, left, right, pos=None):
        ASTNode.__init__(self, pos=pos)
        if operator not in BINARY_OPERATORS:
            raise ValueError('unknown operator %r' % operator)
        self.operator = operator
        self.left = left
        self.right = right

    def getChildNodes(self):
        return [self.left, self.right]

    def __str__(self):
        return '%s (%s %s %s)' % (self.__class__.__name__, self.left,
                                  self.operator, self.right)

    def __eq__(self, node):
        return bool(type(self) == type(node) and self.operator == node.operator
                    and self.left == node.left and self.right == node.right)

    def __hash__(self):
        return hash('%s%s%s%s' % (type(self), self.operator, hash(self.left),
                                  hash(self.right)))


class PowerNode(ASTNode):
    """expression ^ exponent, where the exponent is an integer constant."""

    def __init__(self, expression, exponent, pos=None):
        ASTNode.__init__(self, pos=pos)
        if int(exponent) != exponent:
            raise ValueError('exponent must be an integer, got %r' % exponent)
        self.expression = expression
        self.value = int(exponent)

    @property
    def exponent(self):
        return self.value

    def getChildNodes(self):
        return [self.expression]

    def __str__(self):
        return '%s (%s ^ %d)' % (self.__class__.__name__, self.expression,
                                 self.value)


class CallFunctionNode(ASTNode):

    def __init__(self, name, expression, pos=None):
        ASTNode.__init__(self, name, pos=pos)
        if name not in FUNCTION_NAMES:
            raise ValueError('unknown function %r' % name)
        self.expression = expression

    def getChildNodes(self):
        return [self.expression]

    def __str__(self):
        return '%s %s(%s)' % (self.__class__.__name__, self.name,
                              self.expression)


def is_literal(node, value=None):
    if type(node) is not LiteralNode:
        return False
    return value is None or node.value == value
