"""Answer equivalence policy.

Two answers match when their canonical forms are equal, or when both are
numeric and agree after rounding to the coarser displayed decimal precision
(never fewer than policy.min_places), or when their absolute difference is
within policy.abs_tol. The relation is reflexive and symmetric but, because
of the tolerance, deliberately not transitive.

Units: compared case-insensitively with plural and abbreviation folding when
both sides carry one; a missing unit on either side is ignored.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

from . import symbolic
from .answers import approx_decimal, canonicalize, exact_value
from .symbolic import SymbolicExpr, Var
from .values import Boolean, Choice, Quantity

_PREC = 50


class MatchPolicy:
    __slots__ = ("abs_tol", "min_places")

    def __init__(self, abs_tol=Decimal("0.001"), min_places=2):
        self.abs_tol = Decimal(abs_tol)
        self.min_places = min_places


DEFAULT_POLICY = MatchPolicy()

_UNIT_ALIASES = {
    "m": "meter",
    "meter": "meter",
    "metre": "meter",
    "cm": "centimeter",
    "centimeter": "centimeter",
    "mm": "millimeter",
    "millimeter": "millimeter",
    "km": "kilometer",
    "kilometer": "kilometer",
    "kilometre": "kilometer",
    "ft": "foot",
    "foot": "foot",
    "feet": "foot",
    "in": "inch",
    "inch": "inch",
    "inches": "inch",
    "mi": "mile",
    "mile": "mile",
    "yd": "yard",
    "yard": "yard",
    "s": "second",
    "sec": "second",
    "second": "second",
    "min": "minute",
    "minute": "minute",
    "h": "hour",
    "hr": "hour",
    "hour": "hour",
    "g": "gram",
    "gram": "gram",
    "kg": "kilogram",
    "kilogram": "kilogram",
    "lb": "pound",
    "lbs": "pound",
    "pound": "pound",
    "oz": "ounce",
    "ounce": "ounce",
    "l": "liter",
    "liter": "liter",
    "litre": "liter",
    "$": "dollar",
    "dollar": "dollar",
    "buck": "dollar",
    "usd": "dollar",
    "°f": "degree f",
    "° f": "degree f",
    "f": "degree f",
    "degree f": "degree f",
    "degrees f": "degree f",
    "fahrenheit": "degree f",
    "°c": "degree c",
    "° c": "degree c",
    "degree c": "degree c",
    "degrees c": "degree c",
    "celsius": "degree c",
    "block": "block",
    "gb": "gigabyte",
    "gigabyte": "gigabyte",
    "cm^2": "square centimeter",
    "cm2": "square centimeter",
    "square centimeter": "square centimeter",
    "m^2": "square meter",
    "m2": "square meter",
    "square meter": "square meter",
    "ft^2": "square foot",
    "ft2": "square foot",
    "sq ft": "square foot",
    "square foot": "square foot",
    "square feet": "square foot",
}


def normalize_unit(unit):
    u = " ".join(unit.strip().casefold().split())
    u = u.rstrip(".")
    if u in _UNIT_ALIASES:
        return _UNIT_ALIASES[u]
    if u.endswith("s") and u[:-1] in _UNIT_ALIASES:
        return _UNIT_ALIASES[u[:-1]]
    if u.endswith("s") and len(u) > 2:
        return u[:-1]
    return u


def units_compatible(u1, u2):
    return normalize_unit(u1) == normalize_unit(u2)


_TRUE_LABELS = {"yes", "y", "true"}
_FALSE_LABELS = {"no", "n", "false"}


def _clean_label(label):
    return " ".join(label.strip().rstrip(".!").casefold().split())


def answers_match(predicted, expected, policy=DEFAULT_POLICY):
    """True when predicted should be graded as equal to expected."""
    if predicted is None or expected is None:
        return False
    a = canonicalize(predicted)
    b = canonicalize(expected)

    if isinstance(a, Quantity) and isinstance(b, Quantity):
        if not units_compatible(a.unit, b.unit):
            return False
        a, b = a.value, b.value
    elif isinstance(a, Quantity):
        a = a.value
    elif isinstance(b, Quantity):
        b = b.value

    if isinstance(a, Boolean) or isinstance(b, Boolean):
        return _bool_match(a, b)
    if isinstance(a, Choice) or isinstance(b, Choice):
        return _choice_match(a, b)

    da = approx_decimal(a, prec=_PREC)
    db = approx_decimal(b, prec=_PREC)
    if da is not None and db is not None:
        ea = exact_value(a)
        eb = exact_value(b)
        if ea is not None and eb is not None and ea == eb:
            return True
        if (
            ea is None
            and eb is None
            and isinstance(a, SymbolicExpr)
            and isinstance(b, SymbolicExpr)
            and symbolic.canonical_key(a) == symbolic.canonical_key(b)
        ):
            return True
        places = _coarser_places(a, b, policy)
        quantum = Decimal(1).scaleb(-places)
        if da.quantize(quantum, rounding=ROUND_HALF_UP) == db.quantize(quantum, rounding=ROUND_HALF_UP):
            return True
        return abs(da - db) <= policy.abs_tol

    if isinstance(a, SymbolicExpr) and isinstance(b, SymbolicExpr):
        return symbolic.canonical_key(a) == symbolic.canonical_key(b)
    return False


def _coarser_places(a, b, policy):
    from .answers import displayed_precision

    pa = displayed_precision(a)
    pb = displayed_precision(b)
    shown = [p for p in (pa, pb) if p is not None]
    if not shown:
        return policy.min_places
    return max(min(shown), policy.min_places)


def _bool_match(a, b):
    if isinstance(a, Boolean) and isinstance(b, Boolean):
        return a.value == b.value
    boolean, other = (a, b) if isinstance(a, Boolean) else (b, a)
    if isinstance(other, Choice):
        label = _clean_label(other.label)
        if label in _TRUE_LABELS:
            return boolean.value
        if label in _FALSE_LABELS:
            return not boolean.value
    return False


def _choice_match(a, b):
    if isinstance(a, Choice) and isinstance(b, Choice):
        return _clean_label(a.label) == _clean_label(b.label)
    choice, other = (a, b) if isinstance(a, Choice) else (b, a)
    # A bare letter parses as a variable; let it stand in for a choice label.
    if isinstance(other, Var):
        return _clean_label(choice.label) == other.name.casefold()
    return False
