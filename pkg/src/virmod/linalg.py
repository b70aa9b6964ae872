"""Incremental row echelon form over Q for sparse vectors {column: Fraction}."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable


class Echelon:
    """Maintains an echelon basis; ``order`` ranks columns (smaller = pivot first).

    Rows are kept with pivot coefficient 1. Vectors are dicts {column: value}.
    """

    def __init__(self, order: Callable[[Hashable], object] = lambda c: c):
        self.order = order
        self.rows: dict[Hashable, dict] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _pivot(self, v: dict):
        return min(v, key=self.order)

    def reduce(self, v: dict) -> dict:
        v = {k: c for k, c in v.items() if c}
        while v:
            p = self._pivot(v)
            row = self.rows.get(p)
            if row is None:
                return v
            f = v[p]
            for k, c in row.items():
                x = v.get(k, 0) - f * c
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)
        return v

    def add(self, v: dict) -> dict | None:
        """Insert v; returns the new (normalized) row or None if v was dependent."""
        v = self.reduce(v)
        if not v:
            return None
        p = self._pivot(v)
        inv = 1 / Fraction(v[p])
        row = {k: c * inv for k, c in v.items()}
        self.rows[p] = row
        return row

    def pivots(self):
        return list(self.rows)


def rank(vectors) -> int:
    e = Echelon(order=repr)
    for v in vectors:
        e.add(dict(v))
    return e.rank
