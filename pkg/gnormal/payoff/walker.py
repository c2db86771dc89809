# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import numpy as np

from gnormal.payoff import ast


class TreeWalkError(Exception):
    pass


_FUNCTIONS = {
    'sin': np.sin,
    'cos': np.cos,
    'exp': np.exp,
}


# perform a post-order traversal of the AST, dispatching on the node class
class TreeVisitor(object):

    def __init__(self, root):
        self.root = root

    def walk(self, node=None):
        if node is None:
            node = self.root
        method_name = 'visitAST%s' % node.__class__.__name__
        return getattr(self, method_name, self.visitDefault)(node)

    def visitDefault(self, node):
        raise TreeWalkError("can't visit node: %s" % node)


class Evaluator(TreeVisitor):
    """Evaluates the tree at x; x may be a scalar or a numpy array.

    Floating point exceptions are silenced here; callers check the result for
    non-finite entries.
    """

    def __init__(self, root, x):
        TreeVisitor.__init__(self, root)
        self.x = np.asarray(x, dtype=np.float64)

    def evaluate(self):
        with np.errstate(all='ignore'):
            result = self.walk()
        return np.broadcast_to(result, self.x.shape) + 0.0

    def visitASTLiteralNode(self, node):
        return node.value

    def visitASTIdentifierNode(self, node):
        return self.x

    def visitASTNegateNode(self, node):
        return -self.walk(node.expression)

    def visitASTBinOpNode(self, node):
        left = self.walk(node.left)
        right = self.walk(node.right)
        if node.operator == '+':
            return left + right
        elif node.operator == '-':
            return left - right
        elif node.operator == '*':
            return left * right
        return np.true_divide(left, right)

    def visitASTPowerNode(self, node):
        base = np.asarray(self.walk(node.expression), dtype=np.float64)
        return np.power(base, float(node.exponent))

    def visitASTCallFunctionNode(self, node):
        return _FUNCTIONS[node.name](self.walk(node.expression))


# constructors that fold constants as they build, so repeated
# differentiation does not grow the tree with 0* and 1* terms
def make_literal(value):
    return ast.LiteralNode(value)


def make_negate(node):
    if ast.is_literal(node):
        return make_literal(-node.value)
    if type(node) is ast.NegateNode:
        return node.expression
    return ast.NegateNode(node)


def make_add(left, right):
    if ast.is_literal(left) and ast.is_literal(right):
        return make_literal(left.value + right.value)
    if ast.is_literal(left, 0.0):
        return right
    if ast.is_literal(right, 0.0):
        return left
    return ast.BinOpNode('+', left, right)


def make_sub(left, right):
    if ast.is_literal(left) and ast.is_literal(right):
        return make_literal(left.value - right.value)
    if ast.is_literal(right, 0.0):
        return left
    if ast.is_literal(left, 0.0):
        return make_negate(right)
    return ast.BinOpNode('-', left, right)


def make_mul(left, right):
    if ast.is_literal(left) and ast.is_literal(right):
        return make_literal(left.value * right.value)
    if ast.is_literal(right):
        left, right = right, left
    if ast.is_literal(left, 0.0):
        return make_literal(0.0)
    if ast.is_literal(left, 1.0):
        return right
    if ast.is_literal(left, -1.0):
        return make_negate(right)
    if (ast.is_literal(left) and type(right) is ast.BinOpNode and
            right.operator == '*' and ast.is_literal(right.left)):
        return make_mul(make_literal(left.value * right.left.value),
                        right.right)
    return ast.BinOpNode('*', left, right)


def make_div(left, right):
    if ast.is_literal(left, 0.0):
        return make_literal(0.0)
    if ast.is_literal(right, 1.0):
        return left
    return ast.BinOpNode('/', left, right)


def make_power(node, exponent):
    if exponent == 0:
        return make_literal(1.0)
    if exponent == 1:
        return node
    if ast.is_literal(node) and exponent > 0:
        return make_literal(node.value**exponent)
    return ast.PowerNode(node, exponent)


class Differentiator(TreeVisitor):
    """Builds the tree of d/dx of the visited expression."""

    def derivative(self):
        return self.walk()

    def visitASTLiteralNode(self, node):
        return make_literal(0.0)

    def visitASTIdentifierNode(self, node):
        return make_literal(1.0)

    def visitASTNegateNode(self, node):
        return make_negate(self.walk(node.expression))

    def visitASTBinOpNode(self, node):
        u, v = node.left, node.right
        du, dv = self.walk(u), self.walk(v)
        if node.operator == '+':
            return make_add(du, dv)
        elif node.operator == '-':
            return make_sub(du, dv)
        elif node.operator == '*':
            return make_add(make_mul(du, v), make_mul(u, dv))
        # (u'v - uv') / v^2
        return make_div(make_sub(make_mul(du, v), make_mul(u, dv)),
                        make_power(v, 2))

    def visitASTPowerNode(self, node):
        k = node.exponent
        if k == 0:
            return make_literal(0.0)
        du = self.walk(node.expression)
        return make_mul(make_literal(float(k)),
                        make_mul(make_power(node.expression, k - 1), du))

    def visitASTCallFunctionNode(self, node):
        u = node.expression
        du = self.walk(u)
        if node.name == 'sin':
            outer = ast.CallFunctionNode('cos', u)
        elif node.name == 'cos':
            outer = make_negate(ast.CallFunctionNode('sin', u))
        else:
            outer = ast.CallFunctionNode('exp', u)
        return make_mul(outer, du)


def _format_number(value):
    text = '%.17g' % value
    if value < 0:
        return '(%s)' % text
    return text


class TextPrinter(TreeVisitor):
    """Prints the tree back as text the parser accepts."""

    def visitASTLiteralNode(self, node):
        return _format_number(node.value)

    def visitASTIdentifierNode(self, node):
        return node.name

    def visitASTNegateNode(self, node):
        return '-%s' % self.walk(node.expression)

    def visitASTBinOpNode(self, node):
        return '(%s %s %s)' % (self.walk(node.left), node.operator,
                               self.walk(node.right))

    def visitASTPowerNode(self, node):
        base = self.walk(node.expression)
        if type(node.expression) in (ast.NegateNode, ast.PowerNode):
            base = '(%s)' % base
        return '%s^%d' % (base, node.exponent)

    def visitASTCallFunctionNode(self, node):
        return '%s(%s)' % (node.name, self.walk(node.expression))


def evaluate(root, x):
    return Evaluator(root, x).evaluate()


def differentiate(root, times=1):
    for _ in range(times):
        root = Differentiator(root).derivative()
    return root


def flatten_tree(root):
    return TextPrinter(root).walk()
