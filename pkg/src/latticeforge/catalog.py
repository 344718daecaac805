"""Named lattices and a small expression language.

Grammar (whitespace insignificant)::

    expr := term ("+" term)*
    term := [count "*"] atom ["(" integer ")"]
    atom := name | "(" expr ")"

Names: ``An`` (n >= 1), ``Dn`` (n >= 4), ``E6``, ``E7``, ``E8``, ``U``,
``<k>`` (rank one, k nonzero), ``Ip,q`` (odd diagonal diag(1^p, -1^q)), plus
the aliases ``K3`` and ``Lambda0``.

Gram conventions: A_n uses +1 on the off-diagonal (so A2 = [[2,1],[1,2]]);
D_n and E_n use the Cartan sign -1.  All root lattices are positive definite.
"""

import re
from dataclasses import dataclass

from .errors import BadParameter, ExpressionSyntaxError, UnknownName, ZeroScale
from .lattice import direct_sum, rescale, validate

K3_LATTICE = "2*E8 + 3*U"
CUBIC_PRIMITIVE = "A2 + 2*E8 + 2*U"
ALIASES = {"K3": K3_LATTICE, "Lambda0": CUBIC_PRIMITIVE}


def _chain_gram(n, edges, off):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    for i, j in edges:
        g[i][j] = g[j][i] = off
    return g


def root_lattice(family, n):
    if family == "A":
        if n < 1:
            raise BadParameter(f"A{n}: need n >= 1")
        return validate(_chain_gram(n, [(i, i + 1) for i in range(n - 1)], 1))
    if family == "D":
        if n < 4:
            raise BadParameter(f"D{n}: need n >= 4")
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return validate(_chain_gram(n, edges, -1))
    if family == "E":
        if n not in (6, 7, 8):
            raise BadParameter(f"E{n}: only E6, E7, E8")
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
        return validate(_chain_gram(n, edges, -1))
    raise UnknownName(f"unknown root family {family!r}")


_NAME = re.compile(r"(?:<\s*(-?\d+)\s*>)|(?:I(\d+),(\d+))|(?:([A-Za-z][A-Za-z]*)(\d*))")


@dataclass(frozen=True)
class Named:
    name: str
    parameter: tuple = ()

    def text(self):
        if self.name == "<>":
            return f"<{self.parameter[0]}>"
        if self.name == "I":
            return f"I{self.parameter[0]},{self.parameter[1]}"
        return self.name + "".join(str(p) for p in self.parameter)


@dataclass(frozen=True)
class Scale:
    expr: object
    factor: int


@dataclass(frozen=True)
class Repeat:
    count: int
    expr: object


@dataclass(frozen=True)
class Sum:
    terms: tuple


def _named_lattice(node):
    name, par = node.name, node.parameter
    if name in ("A", "D", "E"):
        return root_lattice(name, par[0])
    if name == "U":
        return validate([[0, 1], [1, 0]])
    if name == "<>":
        if par[0] == 0:
            raise BadParameter("<0> is degenerate")
        return validate([[par[0]]])
    if name == "I":
        p, q = par
        return validate([[(1 if i < p else -1) if i == j else 0 for j in range(p + q)]
                         for i in range(p + q)])
    if name in ALIASES:
        return evaluate(parse(ALIASES[name]))
    raise UnknownName(f"unknown lattice name {node.text()!r}")


def _parse_name(text):
    m = _NAME.fullmatch(text.strip())
    if not m:
        raise UnknownName(f"unknown lattice name {text!r}")
    if m.group(1) is not None:
        return Named("<>", (int(m.group(1)),))
    if m.group(2) is not None:
        return Named("I", (int(m.group(2)), int(m.group(3))))
    fam, num = m.group(4), m.group(5)
    if fam in ("A", "D", "E") and num:
        return Named(fam, (int(num),))
    if not num and (fam == "U" or fam in ALIASES):
        return Named(fam)
    if fam in ("A", "D", "E"):
        raise BadParameter(f"{fam} needs a rank parameter")
    if fam == "Lambda" and num == "0":
        return Named("Lambda0")
    if fam == "K" and num == "3":
        return Named("K3")
    raise UnknownName(f"unknown lattice name {text!r}")


def named(name):
    """Standard Gram matrix for a catalog name such as ``"E8"`` or ``"I21,2"``."""
    return _named_lattice(_parse_name(name))


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<angle><\s*-?\d+\s*>)|(?P<name>I\d+,\d+|[A-Za-z][A-Za-z0-9]*)"
                    r"|(?P<op>[+*()]))")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            found = "end of input" if tok[0] is None else repr(tok[1])
            raise ExpressionSyntaxError(f"expected {want}, found {found}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        terms = [self.term()]
        while self.peek()[1] == "+":
            self.take()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        count = None
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            count = int(val)
            if count < 0:
                raise ExpressionSyntaxError("repeat count must be non-negative", pos)
            self.take("op", "*")
        node = self.atom()
        if self.peek()[1] == "(":
            self.take()
            kind, val, pos = self.take("int")
            factor = int(val)
            if factor == 0:
                raise ZeroScale(f"zero scale factor at position {pos}", position=pos)
            self.take("op", ")")
            node = Scale(node, factor)
        return node if count is None else Repeat(count, node)

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "(":
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        if kind == "name" or kind == "angle":
            self.take()
            return _parse_name(val)
        self.take("name")  # raises with position


def parse(text):
    """Parse an expression such as ``"3*D4 + 2*U"`` into an AST."""
    p = _Parser(text)
    if not p.tokens:
        raise ExpressionSyntaxError("empty expression", 0)
    node = p.expr()
    if p.i != len(p.tokens):
        tok = p.peek()
        raise ExpressionSyntaxError(f"unexpected {tok[1]!r}", tok[2])
    return node


def evaluate(node):
    if isinstance(node, Named):
        return _named_lattice(node)
    if isinstance(node, Scale):
        return rescale(evaluate(node.expr), node.factor)
    if isinstance(node, Repeat):
        inner = evaluate(node.expr)
        return direct_sum(*([inner] * node.count))
    if isinstance(node, Sum):
        return direct_sum(*(evaluate(t) for t in node.terms))
    raise TypeError(f"not an expression node: {node!r}")


def to_text(node):
    """Canonical printer; ``parse(to_text(ast)) == ast``."""
    if isinstance(node, Named):
        return node.text()
    if isinstance(node, Scale):
        inner = to_text(node.expr)
        if not isinstance(node.expr, Named):
            inner = f"({inner})"
        return f"{inner}({node.factor})"
    if isinstance(node, Repeat):
        inner = to_text(node.expr)
        if isinstance(node.expr, (Sum, Repeat)):
            inner = f"({inner})"
        return f"{node.count}*{inner}"
    if isinstance(node, Sum):
        return " + ".join(f"({to_text(t)})" if isinstance(t, Sum) else to_text(t) for t in node.terms)
    raise TypeError(f"not an expression node: {node!r}")


def lattice(text):
    """Parse and evaluate in one step."""
    return evaluate(parse(text))


# Fixture set used across the test-suite and the CLI self-checks.
CATALOG = (
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8",
    "D4", "D5", "D6", "D7", "D8",
    "E6", "E7", "E8",
    "U", "U(2)", "U(3)", "A1(-1)", "A2(-1)", "D4(-1)", "E7(-1)", "E8(-1)",
    "E6(2)", "E8(2)", "D4(2)", "A2(2)",
    "<2>", "<4>", "<6>", "<-2>", "<-6>", "<1>", "<-1>",
    "I21,2", "I1,1",
    "A1 + A1(-1)", "2*A1", "A1 + E7", "D4 + D4", "E8 + U", "U + U(2)",
    "3*D4 + 2*U", "A2 + 2*E8 + 2*U", "D4 + E8 + U(2) + U", "D4 + E8 + 2*U(2)",
    "2*E8 + 3*U", "E6(2) + 3*D4 + 2*U", "U(2) + E8(2)",
)
