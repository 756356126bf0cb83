"""Operations over the full Answer union.

An Answer is one of: Rational, FixedDecimal, SciNotation, SymbolicExpr,
Quantity, Choice, Boolean. JSON form is {"kind": ..., "value": ...} with an
optional "unit" carrying a Quantity's unit.
"""

from __future__ import annotations

from decimal import Decimal, localcontext

from . import symbolic
from .errors import DomainError
from .symbolic import SymbolicExpr
from .values import Boolean, Choice, FixedDecimal, Quantity, Rational, SciNotation

ANSWER_TYPES = (Rational, FixedDecimal, SciNotation, SymbolicExpr, Quantity, Choice, Boolean)


def canonicalize(answer):
    """Map an Answer to its canonical representative. Idempotent.

    FixedDecimal keeps its scale: the digit string is part of the value.
    Constant-foldable expressions collapse to Rational.
    """
    if isinstance(answer, Rational):
        return answer
    if isinstance(answer, FixedDecimal):
        return answer
    if isinstance(answer, SciNotation):
        return answer.canonical()
    if isinstance(answer, SymbolicExpr):
        expr = symbolic.canonical(answer)
        if isinstance(expr, symbolic.Lit):
            return expr.value
        return expr
    if isinstance(answer, Quantity):
        return Quantity(canonicalize(answer.value), answer.unit.strip())
    if isinstance(answer, Choice):
        return Choice(answer.label.strip())
    if isinstance(answer, Boolean):
        return answer
    raise TypeError(f"not an Answer: {answer!r}")


def render(answer):
    """The canonical rendering string for an Answer."""
    if isinstance(answer, Rational):
        return str(answer)
    if isinstance(answer, FixedDecimal):
        return str(answer)
    if isinstance(answer, SciNotation):
        return str(answer)
    if isinstance(answer, SymbolicExpr):
        return symbolic.render(answer)
    if isinstance(answer, Quantity):
        return f"{render(answer.value)} {answer.unit}"
    if isinstance(answer, Choice):
        return answer.label
    if isinstance(answer, Boolean):
        return "yes" if answer.value else "no"
    raise TypeError(f"not an Answer: {answer!r}")


_KINDS = {
    Rational: "rational",
    FixedDecimal: "decimal",
    SciNotation: "scientific",
    Boolean: "boolean",
    Choice: "choice",
}


def to_json(answer):
    answer = canonicalize(answer)
    unit = None
    if isinstance(answer, Quantity):
        unit = answer.unit
        answer = answer.value
    if isinstance(answer, SymbolicExpr):
        kind = "expression"
    else:
        kind = _KINDS[type(answer)]
    obj = {"kind": kind, "value": render(answer)}
    if unit is not None:
        obj["unit"] = unit
    return obj


def from_json(obj):
    from .parsing import parse_answer

    kind = obj["kind"]
    text = obj["value"]
    if kind == "choice":
        value = Choice(text)
    elif kind == "boolean":
        value = Boolean(text.strip().lower() in ("yes", "true"))
    else:
        value = parse_answer(text)
        if isinstance(value, Quantity):
            value = value.value
    if obj.get("unit"):
        return Quantity(value, obj["unit"])
    return value


def exact_value(answer):
    """Exact Rational value, or None when the answer is irrational or non-numeric."""
    if isinstance(answer, Rational):
        return answer
    if isinstance(answer, FixedDecimal):
        return answer.to_rational()
    if isinstance(answer, SciNotation):
        return answer.to_rational()
    if isinstance(answer, SymbolicExpr):
        if not symbolic.is_constant(answer):
            return None
        try:
            return symbolic.evaluate(answer)
        except DomainError:
            return None
    return None


def approx_decimal(answer, prec=50):
    """High-precision Decimal approximation for numeric answers, else None."""
    with localcontext() as ctx:
        ctx.prec = prec
        if isinstance(answer, Rational):
            return answer.to_decimal()
        if isinstance(answer, FixedDecimal):
            return answer.to_rational().to_decimal()
        if isinstance(answer, SciNotation):
            return answer.to_rational().to_decimal()
        if isinstance(answer, SymbolicExpr):
            if not symbolic.is_constant(answer):
                return None
            try:
                return symbolic.to_decimal(answer)
            except DomainError:
                return None
    return None


def displayed_precision(answer):
    """Decimal places shown by the canonical rendering, or None when exact/symbolic."""
    if isinstance(answer, Rational):
        return 0 if answer.is_integer() else None
    if isinstance(answer, FixedDecimal):
        return answer.scale
    if isinstance(answer, SciNotation):
        canon = answer.canonical()
        return max(canon.coefficient.scale - canon.exponent, 0)
    return None


def is_numeric(answer):
    return approx_decimal(answer, prec=28) is not None


def decimal_or_rational(num, den):
    """Quotient as a trimmed FixedDecimal when it terminates, else a Rational.

    Mirrors how worked solutions print division results: 6/4 shows as 1.5 but
    2/3 stays a fraction.
    """
    r = Rational(num, den) if isinstance(num, int) else num / den
    d = r.den
    scale = 0
    while d % 2 == 0:
        d //= 2
        scale += 1
    fives = 0
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return r
    scale = max(scale, fives)
    if scale == 0:
        return r
    if scale > 6:
        return r
    return FixedDecimal(r.num * 10**scale // r.den, scale).trimmed()
