"""Exact linear algebra over the rationals: echelon forms of vectors and of series."""
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence

from .series import Series


class SeriesBasis:
    """Echelon basis of a space of series modulo t**window, indexed by order.

    Each stored series has leading coefficient 1, so the set of orders of the
    space is exactly `orders()`. A payload can ride along with every element
    (anything with `scale` and `-`), recording how it was produced.
    """

    def __init__(self, window: int):
        self.window = window
        self._elements: dict[int, tuple[Series, Any]] = {}

    def __contains__(self, order: int) -> bool:
        return order in self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def orders(self) -> list[int]:
        return sorted(self._elements)

    def items(self) -> Iterator[tuple[int, Series, Any]]:
        for order in sorted(self._elements):
            series, payload = self._elements[order]
            yield order, series, payload

    def reduce(self, s: Series, payload: Any = None) -> tuple[Series, Any]:
        s = s.truncate(self.window)
        while not s.is_zero():
            order = s.order()
            if order not in self._elements:
                break
            c = s.coeffs[order]
            pivot, pivot_payload = self._elements[order]
            s = s - pivot.scale(c)
            if payload is not None:
                payload = payload - pivot_payload.scale(c)
        return s, payload

    def insert(self, s: Series, payload: Any = None) -> Optional[int]:
        """Add s to the span; returns the new order or None if s was already in it."""
        s, payload = self.reduce(s, payload)
        if s.is_zero():
            return None
        order = s.order()
        inverse = 1 / s.coeffs[order]
        self._elements[order] = (
            s.scale(inverse),
            None if payload is None else payload.scale(inverse),
        )
        return order


def row_echelon(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(a) for a in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inverse = 1 / m[r][c]
        m[r] = [a * inverse for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows * v = 0}."""
    echelon, pivots = row_echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(echelon, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis
