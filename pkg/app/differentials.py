"""Values of differential forms on a branch.

Forms are written omega = A dx + B dy throughout and the pairing with f is
P_f(omega) = A f_y - B f_x. Statements written for omega = A dx - B dy
translate by B -> -B.
"""
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .branch import PuiseuxBranch, Value, pullback, semiroot_branch, valuation
from .errors import (
    DeltaInSemigroup,
    DeltaNotValue,
    InsufficientTruncation,
    JetCutoffExceeded,
    NotInEPart,
    NotLogarithmic,
    TorsionOrTruncation,
    WindowTooLarge,
)
from .linalg import SeriesBasis, nullspace
from .semigroup import NumericalSemigroup
from .series import Poly, Series, weierstrass_divide

logger = logging.getLogger(__name__)

MAX_JET_CUTOFF = 4096


@dataclass(frozen=True)
class DifferentialForm:
    A: Poly
    B: Poly

    @classmethod
    def exact(cls, h: Poly) -> "DifferentialForm":
        return cls(h.diff_x(), h.diff_y())

    @classmethod
    def dx(cls) -> "DifferentialForm":
        return cls(Poly.const(1), Poly())

    @classmethod
    def dy(cls) -> "DifferentialForm":
        return cls(Poly(), Poly.const(1))

    def scale(self, c) -> "DifferentialForm":
        return DifferentialForm(self.A.scale(c), self.B.scale(c))

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        return DifferentialForm(self.A + other.A, self.B + other.B)

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return DifferentialForm(self.A - other.A, self.B - other.B)

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.B.is_zero()

    def in_e_part(self, n: int) -> bool:
        """Degree pattern of E(f) for deg_y f = n."""
        return self.A.y_degree < n and self.B.y_degree < n - 1

    def to_record(self) -> dict:
        return {"A": self.A.to_record(), "B": self.B.to_record()}


@dataclass(frozen=True)
class ValueSet:
    """Lambda below `guarantee`: Gamma minus 0, the extra gap values, and everything above."""

    semigroup: NumericalSemigroup
    extra: tuple[int, ...]
    guarantee: int

    def __contains__(self, value: int) -> bool:
        if value <= 0:
            return False
        return value >= self.guarantee or value in self.extra or value in self.semigroup

    @property
    def tau(self) -> int:
        return self.semigroup.conductor - len(self.extra)

    def to_record(self) -> dict:
        return {
            "semigroup": list(self.semigroup.generators),
            "lambda_minus_gamma": list(self.extra),
            "tau": self.tau,
            "mu": self.semigroup.conductor,
        }


@dataclass(frozen=True)
class ValueWindow:
    """A set of integer values decided on [low, high]."""

    values: tuple[int, ...]
    low: int
    high: int


@dataclass(frozen=True)
class ThetaTable:
    values: dict[int, int]
    first: tuple[int, ...]
    second: tuple[int, ...]


@dataclass(frozen=True)
class Bm1Witness:
    nu_b: int
    nu_m: int
    k: Optional[int]
    observed_lead: Fraction
    expected_lead: Optional[Fraction]
    order_law: bool
    lead_law: bool


def _differential_seeds(branch: PuiseuxBranch, window: int) -> tuple[Series, Series]:
    """Upsilon(dx) = n t**n and Upsilon(dy) = t phi'(t)."""
    u1 = Series.monomial(branch.n, branch.n, window)
    u2 = branch.y_series.derivative().shift(1).truncate(window)
    return u1, u2


def _closure(seeds: Iterable[Series], multipliers: Sequence[Series], window: int) -> SeriesBasis:
    """Echelon basis modulo t**window of the module spanned by `seeds` over Q[[multipliers]]."""
    basis = SeriesBasis(window)
    queue = deque(s.truncate(window) for s in seeds)
    while queue:
        s = queue.popleft()
        if basis.insert(s) is None:
            continue
        for m in multipliers:
            queue.append((s * m).truncate(window))
    logger.debug("closure below t^%d has %d orders", window, len(basis))
    return basis


def _coordinate_series(branch: PuiseuxBranch, window: int) -> list[Series]:
    return [Series.monomial(branch.n, 1, window), branch.y_series.truncate(window)]


def upsilon(branch: PuiseuxBranch, form: DifferentialForm) -> Series:
    u1, u2 = _differential_seeds(branch, branch.trunc)
    a = pullback(branch, form.A)
    b = pullback(branch, form.B)
    return (a * u1 + b * u2).truncate(branch.trunc)


def form_value(branch: PuiseuxBranch, form: DifferentialForm) -> Value:
    image = upsilon(branch, form)
    if image.is_zero():
        raise TorsionOrTruncation(
            f"Upsilon of the form vanishes up to t^{image.trunc}"
        )
    order = image.order()
    return Value(order, image.coeffs[order])


def pf_pairing(f: Poly, form: DifferentialForm) -> Poly:
    return form.A * f.diff_y() - form.B * f.diff_x()


def is_logarithmic(f: Poly, form: DifferentialForm) -> tuple[bool, Optional[Poly]]:
    cofactor, remainder = weierstrass_divide(pf_pairing(f, form), f)
    if remainder.is_zero():
        return True, cofactor
    return False, None


def log_form_search(branch: PuiseuxBranch, window: Optional[int] = None) -> list[DifferentialForm]:
    """Logarithmic forms of E(f), echelonized by nu(B).

    Such forms vanish on the branch, so nu(B) stands in for a value; a form
    is kept when its cofactor order nu(M) = nu(B) - v_0 is at most `window`.
    """
    semigroup = branch.semigroup
    limit = semigroup.conductor + max(semigroup.generators)
    window = limit if window is None else window
    if window > limit:
        raise WindowTooLarge(f"window {window} exceeds mu + v_g = {limit}")
    f = branch.weierstrass
    n = f.y_degree
    if n < 2:
        return []

    def reduced_multiples(g: Poly, count: int) -> list[Poly]:
        out, current = [], g
        for _ in range(count):
            current = weierstrass_divide(current, f)[1]
            out.append(current)
            current = current * Poly.y()
        return out

    fy_multiples = reduced_multiples(f.diff_y(), n)
    fx_multiples = reduced_multiples(f.diff_x(), n - 1)

    x_degree = window // n + 1
    unknowns: list[tuple[DifferentialForm, Poly]] = []
    for i in range(x_degree + 1):
        shift = Poly.monomial(i, 0)
        for j in range(n):
            unknowns.append(
                (DifferentialForm(Poly.monomial(i, j), Poly()), shift * fy_multiples[j])
            )
        for j in range(n - 1):
            unknowns.append(
                (DifferentialForm(Poly(), Poly.monomial(i, j)), -(shift * fx_multiples[j]))
            )

    monomials = sorted({key for _, image in unknowns for key in image.coeffs})
    matrix = [
        [image.coeffs.get(key, Fraction(0)) for _, image in unknowns] for key in monomials
    ]
    kernel = nullspace(matrix, len(unknowns)) if monomials else [
        [Fraction(int(i == j)) for j in range(len(unknowns))] for i in range(len(unknowns))
    ]

    basis = SeriesBasis(branch.trunc)
    dropped = 0
    for vector in kernel:
        form = DifferentialForm(Poly(), Poly())
        for c, (monomial, _) in zip(vector, unknowns):
            if c:
                form = form + monomial.scale(c)
        if basis.insert(pullback(branch, form.B), form) is None:
            dropped += 1
    if dropped:
        logger.debug("log_form_search dropped %d forms dependent in nu(B)", dropped)
    v0 = semigroup.multiplicity
    return [form for order, _, form in basis.items() if order - v0 <= window]


def lambda_set(branch: PuiseuxBranch) -> ValueSet:
    semigroup = branch.semigroup
    mu = semigroup.conductor
    if semigroup.is_trivial:
        return ValueSet(semigroup, (), 0)
    if branch.trunc < mu:
        raise InsufficientTruncation(f"truncation {branch.trunc} is below mu = {mu}")
    basis = _closure(_differential_seeds(branch, mu), _coordinate_series(branch, mu), mu)
    extra = tuple(order for order in basis.orders() if order not in semigroup)
    return ValueSet(semigroup, extra, mu)


def delta_set(values: ValueSet) -> ValueWindow:
    mu = values.semigroup.conductor
    found = tuple(d for d in range(-mu, mu + 1) if d != 0 and -d not in values)
    return ValueWindow(found, -mu, mu)


def jacobian_values(branch: PuiseuxBranch) -> ValueWindow:
    semigroup = branch.semigroup
    mu = semigroup.conductor
    window = min(2 * mu + 1, branch.trunc)
    if window <= mu - 1 + semigroup.multiplicity:
        raise InsufficientTruncation(
            f"truncation {branch.trunc} cannot see nu(f_y) = {mu - 1 + semigroup.multiplicity}"
        )
    f = branch.weierstrass
    seeds = [pullback(branch, f.diff_x(), window), pullback(branch, f.diff_y(), window)]
    basis = _closure(seeds, _coordinate_series(branch, window), window)
    values = tuple(o for o in basis.orders() if o >= mu - 1)
    return ValueWindow(values, mu - 1, window - 1)


def tjurina(branch: PuiseuxBranch) -> int:
    return lambda_set(branch).tau


# x-adic jets: dense coefficient lists of length cutoff
def _jet(row: dict[int, Fraction], cutoff: int) -> list[Fraction]:
    out = [Fraction(0)] * cutoff
    for i, c in row.items():
        if i < cutoff:
            out[i] = c
    return out


def _jet_valuation(a: Sequence[Fraction]) -> int:
    return next((i for i, c in enumerate(a) if c != 0), len(a))


def _jet_mul(a: Sequence[Fraction], b: Sequence[Fraction], cutoff: int) -> list[Fraction]:
    out = [Fraction(0)] * cutoff
    for i, ca in enumerate(a):
        if ca == 0 or i >= cutoff:
            continue
        for j in range(min(len(b), cutoff - i)):
            if b[j]:
                out[i + j] += ca * b[j]
    return out


def _jet_inverse(u: Sequence[Fraction], cutoff: int) -> list[Fraction]:
    inverse = [Fraction(0)] * cutoff
    inverse[0] = 1 / u[0]
    for k in range(1, cutoff):
        acc = sum((u[i] * inverse[k - i] for i in range(1, min(k, len(u) - 1) + 1)), Fraction(0))
        inverse[k] = -acc * inverse[0]
    return inverse


def _tjurina_at_cutoff(f: Poly, cutoff: int) -> int:
    n = f.y_degree
    generators = []
    for g in (f.diff_x(), f.diff_y()):
        current = g
        for _ in range(n):
            current = weierstrass_divide(current, f)[1]
            generators.append(current)
            current = current * Poly.y()
    rows = [[_jet(gen.coeff_y(c), cutoff) for c in range(n)] for gen in generators]

    columns = list(range(n))
    tau = 0
    while columns:
        best = None
        for r, row in enumerate(rows):
            for c in columns:
                v = _jet_valuation(row[c])
                if v < cutoff and (best is None or v < best[0]):
                    best = (v, r, c)
        if best is None:
            raise JetCutoffExceeded(f"module is not of full rank modulo x^{cutoff}")
        v, r, c = best
        pivot = rows.pop(r)
        unit_inverse = _jet_inverse(pivot[c][v:], cutoff - v)
        for row in rows:
            if _jet_valuation(row[c]) >= cutoff:
                continue
            q = _jet_mul(row[c][v:], unit_inverse, cutoff - v)
            for c2 in columns:
                product = _jet_mul(q, pivot[c2], cutoff)
                row[c2] = [a - b for a, b in zip(row[c2], product)]
        columns.remove(c)
        tau += v
    return tau


def tjurina_oracle(f: Poly, cutoff: Optional[int] = None) -> int:
    """dim Q[[x, y]]/(f, f_x, f_y) by elimination on x-adic jets.

    The quotient by f is free over Q[[x]] on 1, y, ..., y^(n-1); tau is the sum
    of the pivot valuations of the submodule spanned by y^j f_x and y^j f_y.
    Without a cutoff the jet order doubles until the elimination has full rank.
    """
    if cutoff is not None:
        return _tjurina_at_cutoff(f, cutoff)
    cutoff = 16
    while True:
        try:
            return _tjurina_at_cutoff(f, cutoff)
        except JetCutoffExceeded:
            if cutoff >= MAX_JET_CUTOFF:
                raise
            cutoff *= 2
            logger.debug("raising jet cutoff to %d", cutoff)


def theta(branch: PuiseuxBranch, delta: int) -> int:
    """Largest nu(B) over forms A dx + B dy of value delta."""
    semigroup = branch.semigroup
    if delta >= 0 and delta in semigroup:
        raise DeltaInSemigroup(f"{delta} lies in {semigroup}")
    if delta < 0:
        raise DeltaNotValue(f"{delta} is negative")
    window = delta + 1
    if branch.trunc < window:
        raise InsufficientTruncation(f"truncation {branch.trunc} cannot see t^{delta}")

    ring = _closure([Series.one(window)], _coordinate_series(branch, window), window)
    u1, u2 = _differential_seeds(branch, window)
    space = SeriesBasis(window)
    for _, element, _ in ring.items():
        space.insert(element * u1)
    bound = delta - semigroup.generators[1]
    for gamma, element, _ in reversed(list(ring.items())):
        space.insert(element * u2)
        if delta in space:
            if gamma > bound:
                logger.warning("theta(%d) = %d exceeds the bound %d", delta, gamma, bound)
            return gamma
    raise DeltaNotValue(f"{delta} is not the value of any form")


def theta_table(branch_k: PuiseuxBranch, parent: NumericalSemigroup, k: int) -> ThetaTable:
    values = {d: theta(branch_k, d) for d in lambda_set(branch_k).extra}
    e_k, beta = parent.gcd_chain[k], parent.char_exponents[k + 1]
    first = tuple(d for d in sorted(values) if e_k * (d - values[d]) < beta)
    second = tuple(d for d in sorted(values) if e_k * (d - values[d]) > beta)
    return ThetaTable(values, first, second)


def rho_value(parent: NumericalSemigroup, k: int, delta: int, theta_value: int) -> int:
    e_k, beta = parent.gcd_chain[k], parent.char_exponents[k + 1]
    spread = e_k * (delta - theta_value)
    if spread == beta:
        raise ValueError(f"e_k (delta - theta) = beta_{k + 1} = {beta} cannot happen")
    return e_k * delta if spread < beta else beta + e_k * theta_value


def rho(branch: PuiseuxBranch, k: int, delta: int) -> int:
    branch_k = semiroot_branch(branch, k)
    return rho_value(branch.semigroup, k, delta, theta(branch_k, delta))


def weierstrass_form_decompose(
    f: Poly, form: DifferentialForm
) -> tuple[DifferentialForm, tuple[Poly, Poly]]:
    """omega = (A1 dx + B1 dy) + (Q df + P f dx) with deg_y A1 < n, deg_y B1 < n - 1."""
    n = f.y_degree
    fy, fx = f.diff_y(), f.diff_x()
    scaled_q, b1 = weierstrass_divide(form.B, fy.scale(Fraction(1, n)))
    q = scaled_q.scale(Fraction(1, n))
    p, a1 = weierstrass_divide(form.A - q * fx, f)
    return DifferentialForm(a1, b1), (q, p)


def bm1_check(branch: PuiseuxBranch, form: DifferentialForm) -> Bm1Witness:
    f = branch.weierstrass
    n = f.y_degree
    if not form.in_e_part(n):
        raise NotInEPart("the form does not have the degree pattern of E(f)")
    logarithmic, cofactor = is_logarithmic(f, form)
    if not logarithmic:
        raise NotLogarithmic("P_f(omega) is not divisible by f")

    semigroup = branch.semigroup
    v, e = semigroup.generators, semigroup.gcd_chain
    b = valuation(branch, form.B)
    m = valuation(branch, cofactor)
    spread = b.order - (semigroup.conductor - 1 + v[0])
    levels = [i for i, e_i in enumerate(e) if spread % e_i != 0]
    k = max(levels) if levels else None
    # B enters the leading law with the sign of omega = A dx - B dy
    expected = None if k is None else Fraction(e[k] * v[k + 1], n) * -b.coeff
    return Bm1Witness(
        nu_b=b.order,
        nu_m=m.order,
        k=k,
        observed_lead=m.coeff,
        expected_lead=expected,
        order_law=b.order == m.order + v[0],
        lead_law=expected is not None and expected == m.coeff,
    )


def log_cofactor_values(
    branch: PuiseuxBranch, forms: Optional[Sequence[DifferentialForm]] = None
) -> list[int]:
    """nu(M) - (mu - 1) for the cofactors M of logarithmic forms."""
    f = branch.weierstrass
    forms = log_form_search(branch) if forms is None else forms
    mu = branch.semigroup.conductor
    values = []
    for form in forms:
        _, cofactor = is_logarithmic(f, form)
        if cofactor is not None:
            values.append(valuation(branch, cofactor).order - (mu - 1))
    return sorted(set(values))
