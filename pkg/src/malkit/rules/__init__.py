"""Executable malrule definitions.

Each module encodes one misconception as a pair of procedures (correct and
buggy) over two templates, with traces worded like student work. `build(meta)`
returns the MalruleDef; metadata normally comes from the bundled catalog.
"""

from . import (
    absolute_value,
    algebra,
    decimals,
    division,
    exponents,
    factoring,
    fractions,
    functions,
    geometry,
    linear_equations,
    order_of_operations,
    radicals,
    scientific_notation,
    statistics,
    subtraction,
)

SEED_MODULES = (
    absolute_value,
    algebra,
    decimals,
    division,
    exponents,
    factoring,
    fractions,
    functions,
    geometry,
    linear_equations,
    order_of_operations,
    radicals,
    scientific_notation,
    statistics,
    subtraction,
)

SEED_MALRULES = tuple(m.MALRULE for m in SEED_MODULES)
