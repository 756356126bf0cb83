"""Scalar answer values.

All values are immutable after construction. FixedDecimal keeps its scale
(trailing zeros included) because several malrules read the literal digit
string, not just the numeric value.
"""

from __future__ import annotations

import math
from decimal import Decimal

from .errors import DomainError


class Rational:
    """Reduced fraction. Sign lives on the numerator, denominator > 0."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if not isinstance(num, int) or not isinstance(den, int):
            raise TypeError("Rational takes integers")
        if den == 0:
            raise DomainError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        self.num = num
        self.den = den

    def __setattr__(self, name, value):
        if name in ("num", "den") and hasattr(self, "den"):
            raise AttributeError("Rational is immutable")
        super().__setattr__(name, value)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Rational):
            return other
        if isinstance(other, int):
            return Rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Rational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Rational(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Rational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num == 0:
            raise DomainError("division by zero")
        return Rational(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exp):
        if not isinstance(exp, int):
            return NotImplemented
        if exp >= 0:
            return Rational(self.num**exp, self.den**exp)
        if self.num == 0:
            raise DomainError("zero to a negative power")
        return Rational(self.den**-exp, self.num**-exp)

    def __neg__(self):
        return Rational(-self.num, self.den)

    def __abs__(self):
        return Rational(abs(self.num), self.den)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den < o.num * self.den

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den <= o.num * self.den

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __hash__(self):
        return hash((self.num, self.den))

    def is_integer(self):
        return self.den == 1

    def to_decimal(self):
        # Precision comes from the caller's decimal context.
        return Decimal(self.num) / Decimal(self.den)

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"Rational({self.num}, {self.den})"


class FixedDecimal:
    """Fixed-point decimal: mantissa * 10^-scale. Scale (and trailing zeros) is preserved."""

    __slots__ = ("mantissa", "scale")

    def __init__(self, mantissa, scale):
        if not isinstance(mantissa, int) or not isinstance(scale, int) or scale < 0:
            raise TypeError("FixedDecimal takes an integer mantissa and a non-negative scale")
        self.mantissa = mantissa
        self.scale = scale

    def __setattr__(self, name, value):
        if name in ("mantissa", "scale") and hasattr(self, "scale"):
            raise AttributeError("FixedDecimal is immutable")
        super().__setattr__(name, value)

    @classmethod
    def from_string(cls, text):
        text = text.strip()
        sign = 1
        if text.startswith(("-", "+")):
            sign = -1 if text[0] == "-" else 1
            text = text[1:]
        if "." in text:
            whole, frac = text.split(".", 1)
        else:
            whole, frac = text, ""
        if not (whole + frac).isdigit() or not (whole or frac):
            raise DomainError(f"not a decimal literal: {text!r}")
        mantissa = int((whole or "0") + frac) * sign
        return cls(mantissa, len(frac))

    def to_rational(self):
        return Rational(self.mantissa, 10**self.scale)

    def trimmed(self):
        """Drop trailing zeros. Used for derived arithmetic results, never for literals."""
        man, scale = self.mantissa, self.scale
        while scale > 0 and man % 10 == 0:
            man //= 10
            scale -= 1
        return FixedDecimal(man, scale)

    def __add__(self, other):
        if not isinstance(other, FixedDecimal):
            return NotImplemented
        s = max(self.scale, other.scale)
        a = self.mantissa * 10 ** (s - self.scale)
        b = other.mantissa * 10 ** (s - other.scale)
        return FixedDecimal(a + b, s)

    def __sub__(self, other):
        if not isinstance(other, FixedDecimal):
            return NotImplemented
        s = max(self.scale, other.scale)
        a = self.mantissa * 10 ** (s - self.scale)
        b = other.mantissa * 10 ** (s - other.scale)
        return FixedDecimal(a - b, s)

    def __mul__(self, other):
        if not isinstance(other, FixedDecimal):
            return NotImplemented
        return FixedDecimal(self.mantissa * other.mantissa, self.scale + other.scale)

    def __neg__(self):
        return FixedDecimal(-self.mantissa, self.scale)

    def __abs__(self):
        return FixedDecimal(abs(self.mantissa), self.scale)

    def __eq__(self, other):
        # Literal equality: 0.50 and 0.5 are distinct literals. Compare values via to_rational().
        if not isinstance(other, FixedDecimal):
            return NotImplemented
        return self.mantissa == other.mantissa and self.scale == other.scale

    def __lt__(self, other):
        if not isinstance(other, FixedDecimal):
            return NotImplemented
        return self.to_rational() < other.to_rational()

    def __le__(self, other):
        if not isinstance(other, FixedDecimal):
            return NotImplemented
        return self.to_rational() <= other.to_rational()

    def __hash__(self):
        return hash((FixedDecimal, self.mantissa, self.scale))

    def __str__(self):
        digits = str(abs(self.mantissa)).zfill(self.scale + 1)
        sign = "-" if self.mantissa < 0 else ""
        if self.scale == 0:
            return sign + digits
        return f"{sign}{digits[:-self.scale]}.{digits[-self.scale:]}"

    def __repr__(self):
        return f"FixedDecimal({self.mantissa}, {self.scale})"


class SciNotation:
    """coefficient x 10^exponent with a FixedDecimal coefficient."""

    __slots__ = ("coefficient", "exponent")

    def __init__(self, coefficient, exponent):
        if not isinstance(coefficient, FixedDecimal) or not isinstance(exponent, int):
            raise TypeError("SciNotation takes a FixedDecimal coefficient and an integer exponent")
        self.coefficient = coefficient
        self.exponent = exponent

    def __setattr__(self, name, value):
        if name in ("coefficient", "exponent") and hasattr(self, "exponent"):
            raise AttributeError("SciNotation is immutable")
        super().__setattr__(name, value)

    def to_rational(self):
        base = self.coefficient.to_rational()
        if self.exponent >= 0:
            return base * Rational(10**self.exponent)
        return base / Rational(10**-self.exponent)

    def canonical(self):
        """Shift so 1 <= |coefficient| < 10 and drop coefficient trailing zeros."""
        coeff = self.coefficient.trimmed()
        if coeff.mantissa == 0:
            return SciNotation(FixedDecimal(0, 0), 0)
        digits = len(str(abs(coeff.mantissa)))
        shift = (digits - 1) - coeff.scale
        new_coeff = FixedDecimal(coeff.mantissa, digits - 1)
        return SciNotation(new_coeff.trimmed(), self.exponent + shift)

    def __eq__(self, other):
        if not isinstance(other, SciNotation):
            return NotImplemented
        return self.coefficient == other.coefficient and self.exponent == other.exponent

    def __hash__(self):
        return hash((SciNotation, self.coefficient, self.exponent))

    def __str__(self):
        return f"{self.coefficient} x 10^{self.exponent}"

    def __repr__(self):
        return f"SciNotation({self.coefficient!r}, {self.exponent})"


class Quantity:
    """A numeric value tagged with a unit string."""

    __slots__ = ("value", "unit")

    def __init__(self, value, unit):
        if not isinstance(unit, str) or not unit.strip():
            raise TypeError("Quantity needs a non-empty unit")
        self.value = value
        self.unit = unit

    def __setattr__(self, name, value):
        if name in ("value", "unit") and hasattr(self, "unit"):
            raise AttributeError("Quantity is immutable")
        super().__setattr__(name, value)

    def __eq__(self, other):
        if not isinstance(other, Quantity):
            return NotImplemented
        return self.value == other.value and self.unit == other.unit

    def __hash__(self):
        return hash((Quantity, self.value, self.unit))

    def __repr__(self):
        return f"Quantity({self.value!r}, {self.unit!r})"


class Choice:
    """A label answer: a multiple-choice option, a name, 'none', 'prime', ..."""

    __slots__ = ("label",)

    def __init__(self, label):
        if not isinstance(label, str) or not label.strip():
            raise TypeError("Choice needs a non-empty label")
        self.label = label

    def __setattr__(self, name, value):
        if name == "label" and hasattr(self, "label"):
            raise AttributeError("Choice is immutable")
        super().__setattr__(name, value)

    def __eq__(self, other):
        if not isinstance(other, Choice):
            return NotImplemented
        return self.label == other.label

    def __hash__(self):
        return hash((Choice, self.label))

    def __repr__(self):
        return f"Choice({self.label!r})"


class Boolean:
    __slots__ = ("value",)

    def __init__(self, value):
        if not isinstance(value, bool):
            raise TypeError("Boolean takes a bool")
        self.value = value

    def __setattr__(self, name, value):
        if name == "value" and hasattr(self, "value"):
            raise AttributeError("Boolean is immutable")
        super().__setattr__(name, value)

    def __eq__(self, other):
        if not isinstance(other, Boolean):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash((Boolean, self.value))

    def __repr__(self):
        return f"Boolean({self.value})"
