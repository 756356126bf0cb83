"""Answer grammar.

parse_answer tries, in priority order: signed integers, fractions p/q, mixed
numbers "w p/q", decimals, scientific notation ("a x 10^b" or "aEb"),
unit-suffixed quantities, yes/no, polynomial and radical expressions, and
finally short alphabetic labels (Choice). The first matching rule wins.

Expression variables are single letters. Runs of letters are only split into
a product for x/y/z (so "30xy" parses but "Tom" falls through to Choice);
"sqrt" and "abs" are function names.
"""

from __future__ import annotations

import re

from . import symbolic
from .answers import canonicalize
from .errors import DomainError, ParseError
from .symbolic import Abs, Add, Div, Lit, Mul, Pow, Sqrt, Var
from .values import Boolean, Choice, FixedDecimal, Quantity, Rational, SciNotation

_INT_RE = re.compile(r"[+-]?(?:\d{1,3}(?:,\d{3})+|\d+)")
_DEC_RE = re.compile(r"[+-]?(?:\d{1,3}(?:,\d{3})+|\d*)\.\d+")
_FRAC_RE = re.compile(r"([+-]?\d+)\s*/\s*(\d+)")
_MIXED_RE = re.compile(r"([+-]?\d+)[ ]+(\d+)\s*/\s*(\d+)")
_SCI_RE = re.compile(
    r"([+-]?(?:\d+\.\d+|\d+|\.\d+))\s*"
    r"(?:[x×*]\s*10\s*\^\s*\(?\s*([+-]?\d+)\s*\)?|[eE]([+-]?\d+))"
)
_BOOL_RE = re.compile(r"(yes|no|true|false)[.!]?$", re.IGNORECASE)
_CHOICE_RE = re.compile(r"[A-Za-z][A-Za-z '-]{0,40}$")
_UNIT_RE = re.compile(r"°\s?[A-Za-z]+|[A-Za-z]+(?:\^?[23])?(?:[ ]+[A-Za-z]+)?")

# Single letters that read as units rather than variables.
_SINGLE_LETTER_UNITS = {"m", "g", "s", "L", "h"}

_SPLITTABLE_VARS = {"x", "y", "z"}
_FUNCTIONS = {"sqrt", "abs"}


def _strip_commas(text):
    return text.replace(",", "")


def _parse_int(text):
    return Rational(int(_strip_commas(text)))


def _parse_decimal(text):
    return FixedDecimal.from_string(_strip_commas(text))


def _parse_sci(m):
    coeff_text = m.group(1)
    exp_text = m.group(2) if m.group(2) is not None else m.group(3)
    if "." in coeff_text:
        coeff = FixedDecimal.from_string(coeff_text)
    else:
        coeff = FixedDecimal(int(coeff_text), 0)
    return SciNotation(coeff, int(exp_text))


def _number_prefix(text):
    """Parse a leading numeric literal; returns (value, end offset) or None."""
    m = _SCI_RE.match(text)
    if m:
        return _parse_sci(m), m.end()
    m = _MIXED_RE.match(text)
    if m:
        whole = int(m.group(1))
        if int(m.group(3)) == 0:
            raise ParseError("zero denominator", m.start(3))
        frac = Rational(int(m.group(2)), int(m.group(3)))
        sign = -1 if m.group(1).lstrip("+").startswith("-") else 1
        value = Rational(abs(whole)) + frac
        return (value if sign > 0 else -value), m.end()
    m = _DEC_RE.match(text)
    if m:
        return _parse_decimal(m.group(0)), m.end()
    m = _FRAC_RE.match(text)
    if m:
        if int(m.group(2)) == 0:
            raise ParseError("zero denominator", m.start(2))
        return Rational(int(m.group(1)), int(m.group(2))), m.end()
    m = _INT_RE.match(text)
    if m:
        return _parse_int(m.group(0)), m.end()
    return None


def parse_answer(text):
    if not isinstance(text, str):
        raise ParseError("not a string", 0)
    s = text.strip()
    if not s:
        raise ParseError("empty answer", 0)

    if _INT_RE.fullmatch(s):
        return _parse_int(s)
    m = _MIXED_RE.fullmatch(s)
    if m:
        value, _ = _number_prefix(s)
        return value
    m = _FRAC_RE.fullmatch(s)
    if m:
        if int(m.group(2)) == 0:
            raise ParseError("zero denominator", m.start(2))
        return Rational(int(m.group(1)), int(m.group(2)))
    if _DEC_RE.fullmatch(s):
        return _parse_decimal(s)
    m = _SCI_RE.fullmatch(s)
    if m:
        return _parse_sci(m)

    quantity = _try_quantity(s)
    if quantity is not None:
        return quantity

    m = _BOOL_RE.fullmatch(s)
    if m:
        return Boolean(m.group(1).lower() in ("yes", "true"))

    expr_error = None
    try:
        expr = _parse_expression(s)
    except ParseError as exc:
        expr = None
        expr_error = exc
    if expr is not None:
        return canonicalize(expr)

    if _CHOICE_RE.fullmatch(s):
        return Choice(s)

    raise ParseError(f"no grammar rule applies to {s!r}", getattr(expr_error, "position", 0))


def _try_quantity(s):
    if s.startswith("$"):
        rest = s[1:].strip()
        try:
            prefix = _number_prefix(rest)
        except ParseError:
            return None
        if prefix is not None and prefix[1] == len(rest):
            return Quantity(prefix[0], "$")
        return None
    try:
        prefix = _number_prefix(s)
    except ParseError:
        return None
    if prefix is None:
        return None
    value, end = prefix
    rest = s[end:].strip()
    if not rest:
        return None
    m = _UNIT_RE.fullmatch(rest)
    if not m:
        return None
    unit = m.group(0)
    first = re.match(r"°?\s?[A-Za-z]+", unit).group(0).lstrip("° ")
    # x, y, z (and runs of them) are algebra letters, never units.
    if all(ch in "xyz" for ch in first.casefold()):
        return None
    if ("^" in unit or unit[-1].isdigit()) and len(first) == 1 and first not in _SINGLE_LETTER_UNITS:
        return None
    if len(unit) == 1 and unit not in _SINGLE_LETTER_UNITS:
        return None
    # Require whitespace before bare single-letter units so "3g" stays algebra.
    if len(unit) == 1 and not s[end].isspace():
        return None
    return Quantity(value, unit)


# Expression tokenizer and parser.

_TOKEN_OPS = set("+-*/^()|")


def _tokenize(s):
    tokens = []
    i = 0
    n = len(s)
    while i < n:
        c = s[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and s[i + 1].isdigit()):
            m = re.match(r"\d+\.\d+|\d+|\.\d+", s[i:])
            tokens.append(("num", m.group(0), i))
            i += m.end()
            continue
        if c.isalpha():
            m = re.match(r"[A-Za-z]+", s[i:])
            run = m.group(0)
            if run in _FUNCTIONS:
                tokens.append(("func", run, i))
            elif len(run) == 1:
                tokens.append(("var", run, i))
            elif all(ch in _SPLITTABLE_VARS for ch in run):
                for k, ch in enumerate(run):
                    tokens.append(("var", ch, i + k))
            else:
                raise ParseError(f"unknown identifier {run!r}", i)
            i += m.end()
            continue
        if c == "×":
            tokens.append(("op", "*", i))
            i += 1
            continue
        if c == "÷":
            tokens.append(("op", "/", i))
            i += 1
            continue
        if c in _TOKEN_OPS:
            tokens.append(("op", c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    return tokens


class _ExprParser:
    def __init__(self, tokens, length):
        self.tokens = tokens
        self.length = length
        self.i = 0
        self.abs_depth = 0

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("eof", "", self.length)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, value, pos = self.next()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self):
        expr = self.expr()
        kind, _, pos = self.peek()
        if kind != "eof":
            raise ParseError("trailing input", pos)
        return expr

    def expr(self):
        left = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in ("+", "-"):
                self.next()
                right = self.term()
                if value == "-":
                    right = Mul(Lit(-1), right)
                left = Add(left, right)
            else:
                return left

    def _starts_atom(self):
        kind, value, _ = self.peek()
        if kind in ("num", "var", "func"):
            return True
        if kind == "op" and value == "(":
            return True
        if kind == "op" and value == "|" and self.abs_depth == 0:
            return True
        return False

    def term(self):
        left = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.next()
                left = Mul(left, self.unary())
            elif kind == "op" and value == "/":
                self.next()
                left = Div(left, self.unary())
            elif self._starts_atom():
                left = Mul(left, self.unary())
            else:
                return left

    def unary(self):
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.next()
            return Mul(Lit(-1), self.unary())
        if kind == "op" and value == "+":
            self.next()
            return self.unary()
        return self.postfix()

    def postfix(self):
        expr = self.atom()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "^":
                self.next()
                expr = Pow(expr, self._exponent())
            else:
                return expr

    def _exponent(self):
        kind, value, pos = self.next()
        if kind == "op" and value == "(":
            inner = self._exponent()
            self.expect_op(")")
            return inner
        if kind == "op" and value == "-":
            return -self._exponent()
        if kind == "num" and "." not in value:
            return int(value)
        raise ParseError("expected an integer exponent", pos)

    def atom(self):
        kind, value, pos = self.next()
        if kind == "num":
            if "." in value:
                dec = FixedDecimal.from_string(value)
                return Lit(dec.to_rational())
            return Lit(int(value))
        if kind == "var":
            return Var(value)
        if kind == "func":
            self.expect_op("(")
            inner = self.expr()
            self.expect_op(")")
            return Sqrt(inner) if value == "sqrt" else Abs(inner)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "op" and value == "|":
            self.abs_depth += 1
            inner = self.expr()
            self.abs_depth -= 1
            self.expect_op("|")
            return Abs(inner)
        raise ParseError(f"unexpected token {value!r}", pos)


def _parse_expression(s):
    tokens = _tokenize(s)
    if not tokens:
        raise ParseError("empty expression", 0)
    try:
        return _ExprParser(tokens, len(s)).parse()
    except DomainError as exc:
        raise ParseError(str(exc), 0)
