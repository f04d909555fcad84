"""Exact arithmetic in the semiartinian regular algebras B(alpha, n)."""

import json

from ._core import (
    Algebra,
    Element,
    LoewyError,
    baer_socle_inclusion,
    search_mult_basis,
    selftest,
)

__all__ = [
    "Algebra",
    "Element",
    "LoewyError",
    "baer_socle_inclusion",
    "dimension_sequence",
    "search_mult_basis",
    "selftest",
]


def dimension_sequence(algebra):
    return json.loads(algebra.dimension_sequence())
