"""Finite rational linear combinations over a hashable basis."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping

from .textfmt import format_linear


class Linear:
    """Immutable-by-convention ``{basis: Fraction}`` with zero terms dropped.

    Subclasses set ``fmt`` to render one basis element.
    """

    __slots__ = ("terms",)

    @staticmethod
    def fmt(b) -> str:
        return str(b)

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for b, c in items:
            acc[b] += Fraction(c)
        self.terms = {b: c for b, c in acc.items() if c}

    @classmethod
    def of(cls, b, coeff=1):
        return cls({b: coeff})

    def _new(self, terms):
        return type(self)(terms)

    def __add__(self, other):
        return self._new(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        c = Fraction(c)
        return self._new({b: a * c for b, a in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Linear) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __str__(self) -> str:
        return format_linear(self.terms.items(), type(self).fmt)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"
