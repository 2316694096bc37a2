"""A small expression language for immersion components.

Grammar (``^`` is right-associative and binds tighter than unary minus)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := number | name | name '(' expr ')' | '(' expr ')'

Names resolve at parse time against the declared variables, the declared
constants and the builtin constant ``pi``. There is no implicit
multiplication: ``2u`` is a syntax error.
"""

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import DomainError, ExprSyntaxError, UnknownName

FUNCTIONS = ("sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "log", "sqrt", "abs")
BUILTIN_CONSTANTS = {"pi": math.pi}
MAX_DEPTH = 100


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Constant:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"


Expr = Union[Number, Variable, Constant, Neg, Binary, Call]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _byte_offset(text, pos):
    return len(text[:pos].encode("utf-8"))


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), _byte_offset(text, pos)))
        pos = m.end()
    tokens.append(("end", "", _byte_offset(text, len(text))))
    return tokens


class _Parser:
    def __init__(self, text, variables, constants):
        self.tokens = tokenize(text)
        self.i = 0
        self.variables = set(variables)
        self.constants = set(constants) | set(BUILTIN_CONSTANTS)
        self.depth = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def accept(self, value):
        if self.tok[0] == "op" and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            got = self.tok[1] or "end of input"
            raise ExprSyntaxError(f"expected {value!r}, got {got!r}", self.tok[2])

    def descend(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ExprSyntaxError("expression nested too deeply", self.tok[2])

    def parse(self):
        node = self.expr()
        if self.tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self.tok[1]
            self.i += 1
            node = Binary(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok[0] == "op" and self.tok[1] in "*/":
            op = self.tok[1]
            self.i += 1
            node = Binary(op, node, self.factor())
        return node

    def factor(self):
        self.descend()
        try:
            if self.accept("-"):
                return Neg(self.factor())
            return self.power()
        finally:
            self.depth -= 1

    def power(self):
        base = self.atom()
        if self.accept("^"):
            return Binary("^", base, self.factor())
        return base

    def atom(self):
        kind, text, offset = self.tok
        if kind == "number":
            self.i += 1
            value = float(text)
            if math.isinf(value):
                raise ExprSyntaxError(f"number {text!r} out of range", offset)
            return Number(value)
        if kind == "name":
            self.i += 1
            if self.tok[0] == "op" and self.tok[1] == "(":
                if text not in FUNCTIONS:
                    raise UnknownName(text, offset)
                self.i += 1
                self.descend()
                arg = self.expr()
                self.depth -= 1
                self.expect(")")
                return Call(text, arg)
            if text in FUNCTIONS:
                raise ExprSyntaxError(f"function {text!r} needs an argument", self.tok[2])
            if text in self.variables:
                return Variable(text)
            if text in self.constants:
                return Constant(text)
            raise UnknownName(text, offset)
        if self.accept("("):
            self.descend()
            node = self.expr()
            self.depth -= 1
            self.expect(")")
            return node
        raise ExprSyntaxError(f"unexpected {text or 'end of input'!r}", offset)


def parse(text: str, variables: Iterable[str] = (), constants: Iterable[str] = ()) -> Expr:
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    clash = set(variables) & set(constants)
    if clash:
        raise ExprSyntaxError(f"names declared as both variable and constant: {sorted(clash)}", 0)
    return _Parser(text, variables, constants).parse()


def _sqrt(x):
    if x < 0:
        raise DomainError(f"sqrt of negative value {x!r}")
    return math.sqrt(x)


def _log(x):
    if x <= 0:
        raise DomainError(f"log of non-positive value {x!r}")
    return math.log(x)


_FUNCS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "exp": math.exp,
    "log": _log,
    "sqrt": _sqrt,
    "abs": abs,
}


def _power(a, b):
    if a == 0 and b < 0:
        raise DomainError("zero raised to a negative power")
    if a < 0 and b != int(b):
        raise DomainError(f"negative base {a!r} with non-integer exponent {b!r}")
    return math.pow(a, b)


def evaluate(ast: Expr, env: Mapping[str, float]) -> float:
    """Evaluate ``ast`` in IEEE double precision."""
    try:
        return _eval(ast, env)
    except OverflowError as exc:
        raise DomainError(f"overflow: {exc}") from exc


def _eval(node, env):
    if isinstance(node, Number):
        return node.value
    if isinstance(node, Variable):
        return float(env[node.name])
    if isinstance(node, Constant):
        if node.name in env:
            return float(env[node.name])
        return BUILTIN_CONSTANTS[node.name]
    if isinstance(node, Neg):
        return -_eval(node.operand, env)
    if isinstance(node, Call):
        x = _eval(node.arg, env)
        try:
            return _FUNCS[node.fn](x)
        except ValueError as exc:
            raise DomainError(f"{node.fn}({x!r}): {exc}") from exc
    a = _eval(node.left, env)
    b = _eval(node.right, env)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        if b == 0:
            raise DomainError("division by zero")
        return a / b
    return _power(a, b)


def names(ast: Expr):
    """The set of variable and constant names referenced by ``ast``."""
    if isinstance(ast, (Variable, Constant)):
        return {ast.name}
    if isinstance(ast, Neg):
        return names(ast.operand)
    if isinstance(ast, Call):
        return names(ast.arg)
    if isinstance(ast, Binary):
        return names(ast.left) | names(ast.right)
    return set()


def to_text(ast: Expr) -> str:
    """Fully parenthesized source text that parses back to ``ast``."""
    if isinstance(ast, Number):
        return repr(ast.value)
    if isinstance(ast, (Variable, Constant)):
        return ast.name
    if isinstance(ast, Neg):
        return f"(-{to_text(ast.operand)})"
    if isinstance(ast, Call):
        return f"{ast.fn}({to_text(ast.arg)})"
    return f"({to_text(ast.left)} {ast.op} {to_text(ast.right)})"


def compile_expr(text: str, variables, constants):
    """Parse ``text`` and return ``(ast, f)`` where ``f(env)`` evaluates it."""
    ast = parse(text, variables, constants)
    return ast, lambda env: evaluate(ast, env)
