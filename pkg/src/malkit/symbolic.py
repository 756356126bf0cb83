"""Symbolic expressions over rationals: +, -, *, /, integer powers, sqrt, abs.

Canonicalization folds constants, flattens and sorts commutative operands, and
combines like terms, but does not expand products. Polynomial equality is
decided separately by expanding to a coefficient vector (poly()); expressions
that are not polynomial compare structurally after folding.
"""

from __future__ import annotations

import math
from decimal import Decimal

from .errors import DomainError
from .values import Rational

_MAX_POLY_EXP = 16


class SymbolicExpr:
    """Base class for expression nodes."""

    __slots__ = ()

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return f"{type(self).__name__}({render(self)!r})"


class Lit(SymbolicExpr):
    __slots__ = ("value",)

    def __init__(self, value):
        if isinstance(value, int):
            value = Rational(value)
        if not isinstance(value, Rational):
            raise TypeError("Lit takes a Rational or int")
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def _key(self):
        return self.value


class Var(SymbolicExpr):
    __slots__ = ("name",)

    def __init__(self, name):
        if not isinstance(name, str) or not name:
            raise TypeError("Var takes a non-empty name")
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def _key(self):
        return self.name


class _Nary(SymbolicExpr):
    __slots__ = ("terms",)

    def __init__(self, *terms):
        if len(terms) < 2:
            raise TypeError(f"{type(self).__name__} needs at least two operands")
        object.__setattr__(self, "terms", tuple(terms))

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def _key(self):
        return self.terms


class Add(_Nary):
    __slots__ = ()


class Mul(_Nary):
    __slots__ = ()


class Pow(SymbolicExpr):
    __slots__ = ("base", "exp")

    def __init__(self, base, exp):
        if not isinstance(exp, int):
            raise TypeError("Pow exponent must be an int")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def _key(self):
        return (self.base, self.exp)


class Div(SymbolicExpr):
    __slots__ = ("num", "den")

    def __init__(self, num, den):
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def _key(self):
        return (self.num, self.den)


class Sqrt(SymbolicExpr):
    __slots__ = ("arg",)

    def __init__(self, arg):
        object.__setattr__(self, "arg", arg)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def _key(self):
        return self.arg


class Abs(SymbolicExpr):
    __slots__ = ("arg",)

    def __init__(self, arg):
        object.__setattr__(self, "arg", arg)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def _key(self):
        return self.arg


def is_constant(expr):
    if isinstance(expr, Var):
        return False
    if isinstance(expr, Lit):
        return True
    if isinstance(expr, (Add, Mul)):
        return all(is_constant(t) for t in expr.terms)
    if isinstance(expr, Pow):
        return is_constant(expr.base)
    if isinstance(expr, Div):
        return is_constant(expr.num) and is_constant(expr.den)
    if isinstance(expr, (Sqrt, Abs)):
        return is_constant(expr.arg)
    raise TypeError(f"not an expression: {expr!r}")


def _rational_sqrt(r):
    """Exact square root of a non-negative Rational, or None if irrational."""
    if r.num < 0:
        raise DomainError("negative radicand")
    sn = math.isqrt(r.num)
    sd = math.isqrt(r.den)
    if sn * sn == r.num and sd * sd == r.den:
        return Rational(sn, sd)
    return None


def evaluate(expr, env=None):
    """Evaluate to an exact Rational, or raise DomainError."""
    env = env or {}
    if isinstance(expr, Lit):
        return expr.value
    if isinstance(expr, Var):
        if expr.name not in env:
            raise DomainError(f"unbound variable {expr.name}")
        v = env[expr.name]
        return Rational(v) if isinstance(v, int) else v
    if isinstance(expr, Add):
        total = Rational(0)
        for t in expr.terms:
            total = total + evaluate(t, env)
        return total
    if isinstance(expr, Mul):
        total = Rational(1)
        for t in expr.terms:
            total = total * evaluate(t, env)
        return total
    if isinstance(expr, Pow):
        return evaluate(expr.base, env) ** expr.exp
    if isinstance(expr, Div):
        return evaluate(expr.num, env) / evaluate(expr.den, env)
    if isinstance(expr, Sqrt):
        root = _rational_sqrt(evaluate(expr.arg, env))
        if root is None:
            raise DomainError("irrational square root")
        return root
    if isinstance(expr, Abs):
        return abs(evaluate(expr.arg, env))
    raise TypeError(f"not an expression: {expr!r}")


def to_decimal(expr, env=None):
    """Approximate with Decimal arithmetic at the caller's context precision."""
    env = env or {}
    if isinstance(expr, Lit):
        return expr.value.to_decimal()
    if isinstance(expr, Var):
        if expr.name not in env:
            raise DomainError(f"unbound variable {expr.name}")
        v = env[expr.name]
        return (Rational(v) if isinstance(v, int) else v).to_decimal()
    if isinstance(expr, Add):
        total = Decimal(0)
        for t in expr.terms:
            total += to_decimal(t, env)
        return total
    if isinstance(expr, Mul):
        total = Decimal(1)
        for t in expr.terms:
            total *= to_decimal(t, env)
        return total
    if isinstance(expr, Pow):
        return to_decimal(expr.base, env) ** expr.exp
    if isinstance(expr, Div):
        den = to_decimal(expr.den, env)
        if den == 0:
            raise DomainError("division by zero")
        return to_decimal(expr.num, env) / den
    if isinstance(expr, Sqrt):
        arg = to_decimal(expr.arg, env)
        if arg < 0:
            raise DomainError("negative radicand")
        return arg.sqrt()
    if isinstance(expr, Abs):
        return abs(to_decimal(expr.arg, env))
    raise TypeError(f"not an expression: {expr!r}")


def poly(expr):
    """Expand into {monomial: coefficient} or None when not polynomial.

    A monomial is a sorted tuple of (variable, exponent) pairs; () is the
    constant term.
    """
    if isinstance(expr, Lit):
        return {(): expr.value}
    if isinstance(expr, Var):
        return {((expr.name, 1),): Rational(1)}
    if isinstance(expr, Add):
        total = {}
        for t in expr.terms:
            p = poly(t)
            if p is None:
                return None
            for mono, coeff in p.items():
                total[mono] = total.get(mono, Rational(0)) + coeff
        return {m: c for m, c in total.items() if c != Rational(0)} or {(): Rational(0)}
    if isinstance(expr, Mul):
        total = {(): Rational(1)}
        for t in expr.terms:
            p = poly(t)
            if p is None:
                return None
            total = _poly_mul(total, p)
        return total
    if isinstance(expr, Pow):
        base = poly(expr.base)
        if base is None:
            return None
        if expr.exp < 0 or expr.exp > _MAX_POLY_EXP:
            if set(base) == {()}:
                return {(): base[()] ** expr.exp}
            return None
        result = {(): Rational(1)}
        for _ in range(expr.exp):
            result = _poly_mul(result, base)
        return result
    if isinstance(expr, Div):
        den = poly(expr.den)
        if den is None or set(den) != {()} or den[()] == Rational(0):
            return None
        num = poly(expr.num)
        if num is None:
            return None
        inv = Rational(den[()].den, den[()].num)
        return {m: c * inv for m, c in num.items()}
    if isinstance(expr, Sqrt):
        arg = poly(expr.arg)
        if arg is None or set(arg) != {()}:
            return None
        root = _rational_sqrt(arg[()])
        return None if root is None else {(): root}
    if isinstance(expr, Abs):
        arg = poly(expr.arg)
        if arg is None or set(arg) != {()}:
            return None
        return {(): abs(arg[()])}
    raise TypeError(f"not an expression: {expr!r}")


def _poly_mul(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            powers = dict(ma)
            for var, exp in mb:
                powers[var] = powers.get(var, 0) + exp
            mono = tuple(sorted((v, e) for v, e in powers.items() if e != 0))
            coeff = ca * cb
            out[mono] = out.get(mono, Rational(0)) + coeff
    return {m: c for m, c in out.items() if c != Rational(0)} or {(): Rational(0)}


def canonical(expr):
    """Fold constants, flatten, combine like terms, and sort operands."""
    if isinstance(expr, (Lit, Var)):
        return expr
    if isinstance(expr, Add):
        return _canonical_add([canonical(t) for t in expr.terms])
    if isinstance(expr, Mul):
        return _canonical_mul([canonical(t) for t in expr.terms])
    if isinstance(expr, Pow):
        base = canonical(expr.base)
        if expr.exp == 0:
            return Lit(1)
        if expr.exp == 1:
            return base
        if isinstance(base, Lit):
            if base.value == Rational(0) and expr.exp < 0:
                return Pow(base, expr.exp)
            return Lit(base.value**expr.exp)
        return Pow(base, expr.exp)
    if isinstance(expr, Div):
        num = canonical(expr.num)
        den = canonical(expr.den)
        if isinstance(den, Lit) and den.value != Rational(0):
            inv = Rational(den.value.den, den.value.num)
            return _canonical_mul([Lit(inv), num])
        return Div(num, den)
    if isinstance(expr, Sqrt):
        arg = canonical(expr.arg)
        if isinstance(arg, Lit) and arg.value.num >= 0:
            root = _rational_sqrt(arg.value)
            if root is not None:
                return Lit(root)
        return Sqrt(arg)
    if isinstance(expr, Abs):
        arg = canonical(expr.arg)
        if isinstance(arg, Lit):
            return Lit(abs(arg.value))
        return Abs(arg)
    raise TypeError(f"not an expression: {expr!r}")


def _split_coefficient(term):
    """term -> (Rational coefficient, non-Lit core or None)."""
    if isinstance(term, Lit):
        return term.value, None
    if isinstance(term, Mul):
        coeff = Rational(1)
        rest = []
        for f in term.terms:
            if isinstance(f, Lit):
                coeff = coeff * f.value
            else:
                rest.append(f)
        if not rest:
            return coeff, None
        core = rest[0] if len(rest) == 1 else Mul(*rest)
        return coeff, core
    return Rational(1), term


def _term_sort_key(coeff, core):
    if core is None:
        return (1, 0, "")
    p = poly(core)
    degree = 0
    if p is not None:
        degree = max((sum(e for _, e in mono) for mono in p), default=0)
    return (0, -degree, render(core))


def _canonical_add(terms):
    flat = []
    for t in terms:
        if isinstance(t, Add):
            flat.extend(t.terms)
        else:
            flat.append(t)
    by_core = {}
    const = Rational(0)
    for t in flat:
        coeff, core = _split_coefficient(t)
        if core is None:
            const = const + coeff
            continue
        key = render(core)
        if key in by_core:
            old_coeff, _ = by_core[key]
            by_core[key] = (old_coeff + coeff, core)
        else:
            by_core[key] = (coeff, core)
    parts = []
    for coeff, core in by_core.values():
        if coeff == Rational(0):
            continue
        if coeff == Rational(1):
            parts.append((coeff, core, core))
        else:
            parts.append((coeff, core, _canonical_mul([Lit(coeff), core])))
    parts.sort(key=lambda item: _term_sort_key(item[0], item[1]))
    out = [term for _, _, term in parts]
    if const != Rational(0) or not out:
        out.append(Lit(const))
    if len(out) == 1:
        return out[0]
    return Add(*out)


def _canonical_mul(factors):
    flat = []
    for f in factors:
        if isinstance(f, Mul):
            flat.extend(f.terms)
        else:
            flat.append(f)
    coeff = Rational(1)
    by_base = {}
    order = []
    for f in flat:
        if isinstance(f, Lit):
            coeff = coeff * f.value
            continue
        base, exp = (f.base, f.exp) if isinstance(f, Pow) else (f, 1)
        key = render(base)
        if key in by_base:
            old_base, old_exp = by_base[key]
            by_base[key] = (old_base, old_exp + exp)
        else:
            by_base[key] = (base, exp)
            order.append(key)
    if coeff == Rational(0):
        return Lit(0)
    rest = []
    for key in sorted(order):
        base, exp = by_base[key]
        if exp == 0:
            continue
        rest.append(base if exp == 1 else Pow(base, exp))
    if not rest:
        return Lit(coeff)
    if coeff == Rational(1) and len(rest) == 1:
        return rest[0]
    out = rest if coeff == Rational(1) else [Lit(coeff)] + rest
    if len(out) == 1:
        return out[0]
    return Mul(*out)


def _is_negative_term(term):
    coeff, _ = _split_coefficient(term)
    return coeff < Rational(0)


def _negate(term):
    coeff, core = _split_coefficient(term)
    if core is None:
        return Lit(-coeff)
    if coeff == Rational(-1):
        return core
    return Mul(Lit(-coeff), core)


def render(expr):
    """ASCII rendering: sqrt(x), |x|, ^ for powers, juxtaposed coefficients."""
    if isinstance(expr, Lit):
        return str(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Add):
        out = render(expr.terms[0])
        for t in expr.terms[1:]:
            if _is_negative_term(t):
                out += " - " + render(_negate(t))
            else:
                out += " + " + render(t)
        return out
    if isinstance(expr, Mul):
        return _render_mul(expr)
    if isinstance(expr, Pow):
        base = render(expr.base)
        if not _is_atom(expr.base):
            base = f"({base})"
        return f"{base}^{expr.exp}"
    if isinstance(expr, Div):
        num = render(expr.num)
        den = render(expr.den)
        if isinstance(expr.num, (Add, Mul, Div)):
            num = f"({num})"
        if not _is_atom(expr.den):
            den = f"({den})"
        return f"{num}/{den}"
    if isinstance(expr, Sqrt):
        return f"sqrt({render(expr.arg)})"
    if isinstance(expr, Abs):
        inner = render(expr.arg)
        # Nested bars would be ambiguous to read back.
        if "|" in inner:
            return f"abs({inner})"
        return f"|{inner}|"
    raise TypeError(f"not an expression: {expr!r}")


def _is_atom(expr):
    if isinstance(expr, (Var, Sqrt, Abs)):
        return True
    if isinstance(expr, Lit):
        return expr.value.den == 1 and expr.value.num >= 0
    return False


def _render_mul(expr):
    coeff, core = _split_coefficient(expr)
    factors = []
    if core is None:
        return str(coeff)
    if isinstance(core, Mul):
        factors = list(core.terms)
    else:
        factors = [core]
    rendered = []
    for f in factors:
        r = render(f)
        if isinstance(f, (Add, Div, Mul)):
            r = f"({r})"
        rendered.append(r)
    body = "".join(rendered)
    if coeff == Rational(1):
        return body
    if coeff == Rational(-1):
        return "-" + body
    if coeff.den == 1:
        return f"{coeff}{body}"
    return f"({coeff}){body}"


def canonical_key(expr):
    """Equality key: polynomial coefficient vector when expandable, else the canonical rendering."""
    c = canonical(expr)
    p = poly(c)
    if p is not None:
        return ("poly", frozenset((m, (c2.num, c2.den)) for m, c2 in p.items()))
    return ("struct", render(c))
