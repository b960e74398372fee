"""A tiny arithmetic expression language for warp profiles and conformal factors.

Grammar (infix, case-sensitive identifiers)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-" factor | power
    power  := atom ("^" factor)?              # right-associative
    atom   := NUMBER | NAME | NAME "(" expr ("," expr)* ")" | "(" expr ")"

Functions: ``exp``, ``sin``, ``cos``, ``sqrt``, ``log`` (one argument) and
``pow`` (two arguments).  ``pi`` is predefined.  Any other name is a free
variable bound at evaluation time; evaluation works on floats and on jets,
so expression-defined fields plug straight into the derivative engines.

No ``eval`` is involved; the parser is a small recursive descent over an
explicit token stream.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from . import jets
from .errors import ExpressionError
from .fields import ScalarField

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^,]))")

_FUNCTIONS = {
    "exp": (1, jets.exp),
    "sin": (1, jets.sin),
    "cos": (1, jets.cos),
    "sqrt": (1, jets.sqrt),
    "log": (1, jets.log),
    "pow": (2, lambda a, b: a ** b),
}

_CONSTANTS = {"pi": math.pi}


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ExpressionError(f"unexpected character {text[pos]!r}", pos)
        number, name, symbol = m.groups()
        if number is not None:
            tokens.append(("num", float(number), m.start(1)))
        elif name is not None:
            tokens.append(("name", name, m.start(2)))
        else:
            tokens.append(("sym", symbol, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def next(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, symbol):
        kind, val, pos = self.next()
        if kind != "sym" or val != symbol:
            raise ExpressionError(f"expected {symbol!r}", pos)

    def parse(self):
        node = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ExpressionError("trailing input", pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[:2] in (("sym", "+"), ("sym", "-")):
            op = self.next()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[:2] in (("sym", "*"), ("sym", "/")):
            op = self.next()[1]
            node = ("mul" if op == "*" else "div", node, self.factor())
        return node

    def factor(self):
        if self.peek()[:2] == ("sym", "-"):
            self.next()
            return ("neg", self.factor())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[:2] == ("sym", "^"):
            self.next()
            node = ("pow", node, self.factor())
        return node

    def atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            return ("const", val)
        if kind == "name":
            if self.peek()[:2] == ("sym", "("):
                if val not in _FUNCTIONS:
                    raise ExpressionError(f"unknown function {val!r}", pos)
                self.next()
                args = [self.expr()]
                while self.peek()[:2] == ("sym", ","):
                    self.next()
                    args.append(self.expr())
                self.expect(")")
                arity = _FUNCTIONS[val][0]
                if len(args) != arity:
                    raise ExpressionError(f"{val} takes {arity} argument(s)", pos)
                return ("call", val, args)
            if val in _CONSTANTS:
                return ("const", _CONSTANTS[val])
            return ("var", val)
        if kind == "sym" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ExpressionError("expected a number, name or parenthesis", pos)


def _free_variables(node, out):
    tag = node[0]
    if tag == "var":
        out.add(node[1])
    elif tag == "call":
        for arg in node[2]:
            _free_variables(arg, out)
    elif tag in ("add", "sub", "mul", "div", "pow"):
        _free_variables(node[1], out)
        _free_variables(node[2], out)
    elif tag == "neg":
        _free_variables(node[1], out)


def _evaluate(node, env):
    tag = node[0]
    if tag == "const":
        return node[1]
    if tag == "var":
        try:
            return env[node[1]]
        except KeyError:
            raise ExpressionError(f"unbound variable {node[1]!r}") from None
    if tag == "neg":
        return -_evaluate(node[1], env)
    a = _evaluate(node[1], env)
    if tag == "call":
        fn = _FUNCTIONS[node[1]][1]
        args = [_evaluate(arg, env) for arg in node[2]]
        return fn(*args)
    b = _evaluate(node[2], env)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    if tag == "div":
        return a / b
    if tag == "pow":
        return a ** b
    raise ExpressionError(f"corrupt expression node {tag!r}")


@dataclass(frozen=True)
class Expression:
    """A parsed expression: callable on an environment dict."""

    source: str
    node: tuple
    variables: frozenset

    def __call__(self, env):
        return _evaluate(self.node, env)


def parse_expression(text: str) -> Expression:
    node = _Parser(text).parse()
    names = set()
    _free_variables(node, names)
    return Expression(text, node, frozenset(names))


def expression_field(text: str, coord_names, params=None) -> ScalarField:
    """Compile an expression over named chart coordinates into a ScalarField.

    ``params`` supplies extra constant bindings (scenario parameters).  Names
    that are neither coordinates nor parameters raise ExpressionError.
    """
    expr = parse_expression(text)
    coord_names = tuple(coord_names)
    params = dict(params or {})
    unknown = expr.variables - set(coord_names) - set(params)
    if unknown:
        raise ExpressionError(
            f"unbound name(s) {sorted(unknown)} in {text!r}; "
            f"coordinates are {list(coord_names)}")

    def fn(*coords):
        env = dict(params)
        env.update(zip(coord_names, coords))
        return expr(env)

    return ScalarField(len(coord_names), fn, name=text)
