"""Expression language for scalar functions of t used by the CLI.

Grammar (precedence low to high; ^ is right-associative and binds tighter
than unary minus):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | NUMBER 'i' | 'pi' | 'i' | 't' | NAME '(' expr ')' | '(' expr ')'

Numbers are ordinary floating literals; the suffix form `1i`, `2.5i` gives
imaginary literals.  Known function names: abs exp sin cos tan tanh sqrt log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError

FUNCTIONS = ("abs", "exp", "sin", "cos", "tan", "tanh", "sqrt", "log")

_NUMPY_FUNCS = {
    "abs": np.abs,
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "tanh": np.tanh,
    "sqrt": np.sqrt,
    "log": np.log,
}


@dataclass(frozen=True)
class Const:
    value: complex


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str  # '-' or a function name
    arg: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # + - * / ^
    lhs: "Expr"
    rhs: "Expr"


Expr = Const | Var | Unary | Binary


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # 'num' 'imag' 'ident' 'op' 'lparen' 'rparen' 'end'
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    toks = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and src[i + 1].isdigit()):
            j = i
            while j < n and src[j].isdigit():
                j += 1
            if j < n and src[j] == ".":
                j += 1
                while j < n and src[j].isdigit():
                    j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    j = k
                    while j < n and src[j].isdigit():
                        j += 1
            if j < n and src[j] == "i" and not (j + 1 < n and src[j + 1].isalnum()):
                toks.append(_Token("imag", src[i:j], i))
                j += 1
            else:
                toks.append(_Token("num", src[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Token("ident", src[i:j], i))
            i = j
            continue
        if ch in "+-*/^":
            toks.append(_Token("op", ch, i))
            i += 1
            continue
        if ch == "(":
            toks.append(_Token("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            toks.append(_Token("rparen", ch, i))
            i += 1
            continue
        if ch == ",":
            toks.append(_Token("comma", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at offset {i}", i,
                         expected="a number, name, operator, or parenthesis")
    toks.append(_Token("end", "", n))
    return toks


# ---------------------------------------------------------------------------
# recursive-descent parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def advance(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str):
        tok = self.peek()
        what = f"{tok.text!r}" if tok.kind != "end" else "end of input"
        raise ParseError(
            f"syntax error at offset {tok.pos}: got {what}, expected {expected}",
            tok.pos, expected=expected)

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek().kind != "end":
            self.fail("an operator or end of input")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            e = Binary(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            e = Binary(op, e, self.factor())
        return e

    def factor(self) -> Expr:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.advance()
            return Unary("-", self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            return Binary("^", base, self.factor())
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Const(complex(float(tok.text), 0.0))
        if tok.kind == "imag":
            self.advance()
            return Const(complex(0.0, float(tok.text)))
        if tok.kind == "lparen":
            self.advance()
            e = self.expr()
            if self.peek().kind != "rparen":
                self.fail("')'")
            self.advance()
            return e
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name == "t":
                return Var()
            if name == "pi":
                return Const(complex(math.pi, 0.0))
            if name == "i":
                return Const(1j)
            if name in FUNCTIONS:
                if self.peek().kind != "lparen":
                    self.fail(f"'(' after function {name!r}")
                self.advance()
                arg = self.expr()
                if self.peek().kind == "comma":
                    raise ParseError(
                        f"function {name!r} takes one argument "
                        f"(offset {self.peek().pos})", self.peek().pos,
                        expected="')'")
                if self.peek().kind != "rparen":
                    self.fail("')'")
                self.advance()
                return Unary(name, arg)
            raise ParseError(
                f"unknown identifier {name!r} at offset {tok.pos}", tok.pos,
                expected="t, pi, i, or a function name")
        self.fail("a number, 't', 'pi', 'i', a function call, or '('")


def parse_expr(src: str) -> Expr:
    """Parse the expression language; raises ParseError with a byte offset."""
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# printing and evaluation
# ---------------------------------------------------------------------------

def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}[e.op]
    if isinstance(e, Unary) and e.op == "-":
        return 3
    return 5


def format_expr(e: Expr) -> str:
    """Print an AST so that parsing the result reproduces it structurally."""
    if isinstance(e, Const):
        # the parser only produces nonnegative literals (signs come out as
        # unary minus), so repr round-trips structurally
        v = e.value
        if v.imag == 0.0:
            return repr(v.real)
        return f"{v.imag!r}i"
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Unary):
        if e.op == "-":
            inner = format_expr(e.arg)
            if _prec(e.arg) < 3:
                inner = f"({inner})"
            return f"-{inner}"
        return f"{e.op}({format_expr(e.arg)})"
    lhs, rhs = format_expr(e.lhs), format_expr(e.rhs)
    p = _prec(e)
    if e.op == "^":
        # right-associative; exponent may be any factor
        if _prec(e.lhs) <= p:
            lhs = f"({lhs})"
        if _prec(e.rhs) < 3:
            rhs = f"({rhs})"
    else:
        if _prec(e.lhs) < p:
            lhs = f"({lhs})"
        if _prec(e.rhs) <= p:
            rhs = f"({rhs})"
    return f"{lhs}{e.op}{rhs}"


def eval_expr(e: Expr, t):
    """Evaluate at scalar or array t; always computes in complex arithmetic."""
    tv = np.asarray(t, dtype=complex)
    with np.errstate(all="ignore"):
        out = _eval(e, tv)
    return out


def _eval(e: Expr, tv):
    if isinstance(e, Const):
        return np.full(tv.shape, e.value, dtype=complex)
    if isinstance(e, Var):
        return tv
    if isinstance(e, Unary):
        v = _eval(e.arg, tv)
        if e.op == "-":
            return -v
        return _NUMPY_FUNCS[e.op](v)
    a, b = _eval(e.lhs, tv), _eval(e.rhs, tv)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if e.op == "/":
        return a / b
    return a ** b


def contains_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Unary):
        return contains_var(e.arg)
    if isinstance(e, Binary):
        return contains_var(e.lhs) or contains_var(e.rhs)
    return False


def as_callable(e: Expr):
    """Wrap the AST as a numpy-vectorized function of real t."""
    return lambda t: eval_expr(e, t)
