"""Sparse exact Gaussian elimination over the rationals.

Vectors are dicts ``{basis_key: Fraction}``.  By default the pivot of a
vector is the key seen first overall, so keys need not be comparable; pass
``pivot_key`` to pivot on the largest key under that ordering instead.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping


class Echelon:
    """Incrementally maintained echelon basis of a span."""

    def __init__(self, pivot_key: Callable | None = None):
        self.rows: dict[Hashable, dict] = {}
        self._seen: dict[Hashable, int] = {}
        self._key = pivot_key or self._seen.__getitem__

    def _pivot(self, v: Mapping):
        return max(v, key=self._key)

    def reduce(self, vec: Mapping) -> dict:
        v = {}
        for k, c in vec.items():
            if c:
                self._seen.setdefault(k, len(self._seen))
                v[k] = Fraction(c)
        while v:
            p = self._pivot(v)
            row = self.rows.get(p)
            if row is None:
                return v
            c = v[p]
            for k, a in row.items():
                nv = v.get(k, 0) - c * a
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = self._pivot(v)
        inv = 1 / v[p]
        self.rows[p] = {k: a * inv for k, a in v.items()}
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def reduced_rows(self) -> dict:
        """Rows with every non-pivot entry free of other pivots (reduced echelon form)."""
        out = {}
        for p in sorted(self.rows, key=self._key):
            row = self.rows[p]
            tail = {k: c for k, c in row.items() if k != p}
            red = self._reduce_by(tail, out)
            red[p] = Fraction(1)
            out[p] = red
        return out

    def _reduce_by(self, v: dict, rows: dict) -> dict:
        v = dict(v)
        while True:
            hits = [k for k in v if k in rows]
            if not hits:
                return v
            p = max(hits, key=self._key)
            c = v[p]
            for k, a in rows[p].items():
                nv = v.get(k, 0) - c * a
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors: Iterable[Mapping]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank
