"""Exact truncated power series in t and polynomials in (x, y) over the rationals."""
import logging
from collections import defaultdict
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Optional, Union

import sympy

from .errors import InsufficientTruncation, NotMonic, NotPrimitive, OrderUnknown

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]
XPoly = dict[int, Fraction]


class Series:
    """Power series in t known modulo t**trunc, stored sparsely.

    Coefficients of exponent >= trunc are unknown, not zero.
    """

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs: Union[Mapping[int, Number], Iterable] = (), trunc: int = 0):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self.trunc = trunc
        self.coeffs: dict[int, Fraction] = {
            int(e): Fraction(c) for e, c in items if c != 0 and 0 <= e < trunc
        }

    @classmethod
    def zero(cls, trunc: int) -> "Series":
        return cls({}, trunc)

    @classmethod
    def one(cls, trunc: int) -> "Series":
        return cls({0: 1}, trunc)

    @classmethod
    def monomial(cls, exponent: int, coeff: Number, trunc: int) -> "Series":
        return cls({exponent: coeff}, trunc)

    def is_zero(self) -> bool:
        return not self.coeffs

    def order(self) -> int:
        if not self.coeffs:
            raise OrderUnknown(f"series is zero up to t^{self.trunc}")
        return min(self.coeffs)

    def leading_coeff(self) -> Fraction:
        return self.coeffs[self.order()]

    def coefficient(self, exponent: int) -> Fraction:
        if exponent >= self.trunc:
            raise InsufficientTruncation(f"t^{exponent} is beyond t^{self.trunc}")
        return self.coeffs.get(exponent, Fraction(0))

    def _order_floor(self) -> int:
        return min(self.coeffs) if self.coeffs else self.trunc

    def truncate(self, trunc: int) -> "Series":
        return Series(self.coeffs, min(trunc, self.trunc))

    def scale(self, c: Number) -> "Series":
        return Series({e: a * c for e, a in self.coeffs.items()}, self.trunc)

    def shift(self, k: int) -> "Series":
        """Multiply by t**k."""
        return Series({e + k: a for e, a in self.coeffs.items()}, self.trunc + k)

    def derivative(self) -> "Series":
        return Series(
            {e - 1: e * a for e, a in self.coeffs.items() if e > 0},
            max(self.trunc - 1, 0),
        )

    def __neg__(self) -> "Series":
        return self.scale(-1)

    def __add__(self, other: "Series") -> "Series":
        trunc = min(self.trunc, other.trunc)
        acc = defaultdict(Fraction)
        for e, a in self.coeffs.items():
            acc[e] += a
        for e, a in other.coeffs.items():
            acc[e] += a
        return Series(acc, trunc)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: Union["Series", Number]) -> "Series":
        if not isinstance(other, Series):
            return self.scale(other)
        trunc = min(
            self.trunc + other._order_floor(), other.trunc + self._order_floor()
        )
        acc = defaultdict(Fraction)
        right = sorted(other.coeffs.items())
        for ea, ca in self.coeffs.items():
            for eb, cb in right:
                e = ea + eb
                if e >= trunc:
                    break
                acc[e] += ca * cb
        return Series(acc, trunc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Series":
        result = Series.one(self.trunc)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})t^{e}" for e, c in sorted(self.coeffs.items()))
        return f"Series({terms or '0'}, O(t^{self.trunc}))"

    def to_record(self) -> dict:
        return {
            "terms": [[e, c.numerator, c.denominator] for e, c in sorted(self.coeffs.items())],
            "trunc": self.trunc,
        }


# polynomials in x, used as coefficients of y
def _xadd(a: XPoly, b: XPoly, sign: int = 1) -> XPoly:
    acc = dict(a)
    for i, c in b.items():
        value = acc.get(i, 0) + sign * c
        if value:
            acc[i] = value
        else:
            acc.pop(i, None)
    return acc


def _xmul(a: XPoly, b: XPoly, limit: Optional[int] = None) -> XPoly:
    acc = defaultdict(Fraction)
    for i, ca in a.items():
        for j, cb in b.items():
            if limit is None or i + j < limit:
                acc[i + j] += ca * cb
    return {i: c for i, c in acc.items() if c}


class Poly:
    """Element of Q[x][y], optionally known only modulo x**x_trunc."""

    __slots__ = ("coeffs", "x_trunc")

    def __init__(self, coeffs: Union[Mapping, Iterable] = (), x_trunc: Optional[int] = None):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self.x_trunc = x_trunc
        self.coeffs: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in items:
            if c != 0 and (x_trunc is None or i < x_trunc):
                self.coeffs[(int(i), int(j))] = Fraction(c)

    @classmethod
    def x(cls) -> "Poly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "Poly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: Number = 1) -> "Poly":
        return cls({(i, j): c})

    @classmethod
    def from_rows(cls, rows: Mapping[int, XPoly], x_trunc: Optional[int] = None) -> "Poly":
        return cls(
            {(i, j): c for j, row in rows.items() for i, c in row.items()}, x_trunc
        )

    def rows(self) -> dict[int, XPoly]:
        out: dict[int, XPoly] = defaultdict(dict)
        for (i, j), c in self.coeffs.items():
            out[j][i] = c
        return dict(out)

    def coeff_y(self, j: int) -> XPoly:
        return {i: c for (i, jj), c in self.coeffs.items() if jj == j}

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def y_degree(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    @property
    def x_degree(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    def _join_trunc(self, other: "Poly") -> Optional[int]:
        truncs = [t for t in (self.x_trunc, other.x_trunc) if t is not None]
        return min(truncs) if truncs else None

    def truncate_x(self, x_trunc: int) -> "Poly":
        if self.x_trunc is not None:
            x_trunc = min(x_trunc, self.x_trunc)
        return Poly(self.coeffs, x_trunc)

    def scale(self, c: Number) -> "Poly":
        return Poly({k: a * c for k, a in self.coeffs.items()}, self.x_trunc)

    def __neg__(self) -> "Poly":
        return self.scale(-1)

    def __add__(self, other: "Poly") -> "Poly":
        acc = defaultdict(Fraction, self.coeffs)
        for k, a in other.coeffs.items():
            acc[k] += a
        return Poly(acc, self._join_trunc(other))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: Union["Poly", Number]) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        x_trunc = self._join_trunc(other)
        acc = defaultdict(Fraction)
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                if x_trunc is None or i1 + i2 < x_trunc:
                    acc[(i1 + i2, j1 + j2)] += a * b
        return Poly(acc, x_trunc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def diff_x(self) -> "Poly":
        return Poly(
            {(i - 1, j): i * c for (i, j), c in self.coeffs.items() if i > 0},
            None if self.x_trunc is None else self.x_trunc - 1,
        )

    def diff_y(self) -> "Poly":
        return Poly(
            {(i, j - 1): j * c for (i, j), c in self.coeffs.items() if j > 0},
            self.x_trunc,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.x_trunc == other.x_trunc

    def __hash__(self) -> int:
        return hash((frozenset(self.coeffs.items()), self.x_trunc))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (-kv[0][1], kv[0][0])):
            monomial = "*".join(
                p for p in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if p
            )
            if not monomial:
                parts.append(str(c))
            elif c == 1:
                parts.append(monomial)
            elif c == -1:
                parts.append("-" + monomial)
            else:
                parts.append(f"{c}*{monomial}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_record(self) -> list[list[int]]:
        return [
            [i, j, c.numerator, c.denominator]
            for (i, j), c in sorted(self.coeffs.items())
        ]

    @classmethod
    def from_record(cls, record: Iterable[Iterable[int]]) -> "Poly":
        return cls({(i, j): Fraction(num, den) for i, j, num, den in record})


def substitute(
    h: Poly, x_of_t: Series, y_of_t: Series, window: Optional[int] = None
) -> Series:
    """Pullback h(x(t), y(t)), exact below the propagated truncation."""
    trunc = min(x_of_t.trunc, y_of_t.trunc)
    if h.x_trunc is not None and not x_of_t.is_zero():
        trunc = min(trunc, h.x_trunc * x_of_t.order())
    if window is not None:
        if window > trunc:
            raise InsufficientTruncation(
                f"window t^{window} exceeds what the inputs support (t^{trunc})"
            )
        trunc = window
    x_of_t, y_of_t = x_of_t.truncate(trunc), y_of_t.truncate(trunc)

    x_powers = [Series.one(trunc)]

    def x_power(i: int) -> Series:
        while len(x_powers) <= i:
            x_powers.append((x_powers[-1] * x_of_t).truncate(trunc))
        return x_powers[i]

    rows = h.rows()
    acc = Series.zero(trunc)
    for j in range(h.y_degree, -1, -1):
        acc = (acc * y_of_t).truncate(trunc)
        for i, c in rows.get(j, {}).items():
            acc = acc + x_power(i).scale(c)
    return acc


def implicitize(n: int, phi: Union[Series, Mapping[int, Number]]) -> Poly:
    """Weierstrass polynomial of the branch (t**n, phi(t)).

    This is the resultant in t of t**n - x and y - phi(t), made monic in y.
    phi is first reduced modulo t**n - x, so the Sylvester matrix has size
    at most 2n - 1 whatever the length of phi.
    """
    terms = phi.coeffs if isinstance(phi, Series) else {
        e: Fraction(c) for e, c in phi.items() if c != 0
    }
    support_gcd = n
    for e in terms:
        support_gcd = gcd(support_gcd, e)
    if support_gcd != 1:
        raise NotPrimitive(f"gcd of {n} and the support of phi is {support_gcd}")

    t, x, y = sympy.symbols("t x y")
    reduced = sum(
        (sympy.Rational(c.numerator, c.denominator) * x ** (e // n) * t ** (e % n)
         for e, c in terms.items()),
        sympy.Integer(0),
    )
    res = sympy.Poly(sympy.resultant(t**n - x, y - reduced, t), y, x).monic()
    f = Poly({(i, j): Fraction(int(c.p), int(c.q)) for (j, i), c in res.terms()})
    logger.debug("implicitized branch of degree %d into %d terms", n, len(f.coeffs))
    return f


def weierstrass_divide(h: Poly, f: Poly) -> tuple[Poly, Poly]:
    """Long division in y by a monic f: h = q*f + r with deg_y r < deg_y f."""
    n = f.y_degree
    if n < 0 or f.coeff_y(n) != {0: Fraction(1)}:
        raise NotMonic(f"{f} is not monic in y")
    x_trunc = h._join_trunc(f)
    f_rows = f.rows()
    rows = h.rows()
    quotient: dict[int, XPoly] = {}
    for d in range(h.y_degree, n - 1, -1):
        lead = rows.pop(d, {})
        if not lead:
            continue
        quotient[d - n] = lead
        for j, coeff in f_rows.items():
            if j == n:
                continue
            rows[d - n + j] = _xadd(rows.get(d - n + j, {}), _xmul(lead, coeff, x_trunc), -1)
    return Poly.from_rows(quotient, x_trunc), Poly.from_rows(rows, x_trunc)
