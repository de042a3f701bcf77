import logging
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Mapping, NamedTuple, Optional, Sequence, Union

from . import config
from .errors import InputError, SupportViolation, ValueAboveTruncation
from .semigroup import (
    NumericalSemigroup,
    semigroup_from_char,
    semiroot_semigroup,
    trivial_semigroup,
)
from .series import Poly, Series, implicitize, substitute, weierstrass_divide

logger = logging.getLogger(__name__)

COEFFICIENT_POOL = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(1, 2),
    Fraction(3),
    Fraction(-1, 3),
)


class Value(NamedTuple):
    order: int
    coeff: Fraction


@dataclass(frozen=True)
class PuiseuxBranch:
    """The branch (t**n, phi(t)) in normal form; phi is known below t**trunc."""

    n: int
    phi: Series
    semigroup: NumericalSemigroup
    trunc: int

    @property
    def x_series(self) -> Series:
        return Series.monomial(self.n, 1, self.trunc)

    @property
    def y_series(self) -> Series:
        return self.phi.truncate(self.trunc)

    @cached_property
    def weierstrass(self) -> Poly:
        return implicitize(self.n, self.phi)

    @property
    def milnor(self) -> int:
        return self.semigroup.conductor

    def with_trunc(self, trunc: int) -> "PuiseuxBranch":
        return with_trunc(self, trunc)


@dataclass(frozen=True)
class SemirootSystem:
    polys: tuple[Poly, ...]
    parent: PuiseuxBranch


def default_trunc(semigroup: NumericalSemigroup) -> int:
    return config.TRUNC_FACTOR * (semigroup.conductor + 2 * max(semigroup.generators))


def with_trunc(branch: PuiseuxBranch, trunc: int) -> PuiseuxBranch:
    return replace(branch, phi=Series(branch.phi.coeffs, trunc), trunc=trunc)


def allowed_exponents(semigroup: NumericalSemigroup, upto: int) -> list[int]:
    """Exponents i < upto that may carry a coefficient in normal form."""
    beta, e = semigroup.char_exponents, semigroup.gcd_chain
    allowed = []
    for i in range(beta[1], upto):
        level = max(k for k in range(len(beta)) if beta[k] <= i)
        if i % e[level] == 0:
            allowed.append(i)
    return allowed


def check_support(semigroup: NumericalSemigroup, coeffs: Mapping[int, Fraction]) -> None:
    beta = semigroup.char_exponents
    support = {i for i, c in coeffs.items() if c != 0}
    allowed = set(allowed_exponents(semigroup, max(support, default=0) + 1))
    forbidden = sorted(support - allowed)
    if forbidden:
        raise SupportViolation(f"exponents {forbidden} are not allowed for {semigroup}")
    missing = [b for b in beta[1:] if b not in support]
    if missing:
        raise SupportViolation(f"characteristic exponents {missing} need nonzero coefficients")


def generic_coefficients(
    semigroup: NumericalSemigroup, seed: Union[int, str], upto: Optional[int] = None
) -> dict[int, Fraction]:
    """Pool draws for every allowed exponent below `upto` (default: the conductor)."""
    rng = random.Random(seed)
    upto = semigroup.conductor if upto is None else upto
    upto = max(upto, semigroup.char_exponents[-1] + 1)
    return {i: rng.choice(COEFFICIENT_POOL) for i in allowed_exponents(semigroup, upto)}


def make_branch(
    beta: Sequence[int],
    coeffs: Optional[Mapping[int, Union[int, Fraction]]] = None,
    *,
    seed: Optional[Union[int, str]] = None,
    trunc: Optional[int] = None,
) -> PuiseuxBranch:
    if (coeffs is None) == (seed is None):
        raise InputError("give exactly one of explicit coefficients or a seed")
    semigroup = semigroup_from_char(beta)
    if coeffs is None:
        coeffs = generic_coefficients(semigroup, seed)
    coeffs = {int(i): Fraction(c) for i, c in coeffs.items() if c != 0}
    check_support(semigroup, coeffs)
    if trunc is None:
        trunc = max(default_trunc(semigroup), max(coeffs) + 1)
    branch = PuiseuxBranch(semigroup.multiplicity, Series(coeffs, trunc), semigroup, trunc)
    logger.debug("built branch of class %s with %d terms", semigroup, len(coeffs))
    return branch


def smooth_branch(trunc: int = 1) -> PuiseuxBranch:
    """The branch (t, 0): the 0-semiroot of every branch in normal form."""
    return PuiseuxBranch(1, Series.zero(trunc), trivial_semigroup(), trunc)


def pullback(branch: PuiseuxBranch, h: Poly, window: Optional[int] = None) -> Series:
    return substitute(h, branch.x_series, branch.y_series, window)


def valuation(branch: PuiseuxBranch, h: Poly) -> Value:
    image = pullback(branch, h)
    if image.is_zero():
        raise ValueAboveTruncation(
            f"{h} vanishes up to t^{image.trunc} on the branch"
        )
    order = image.order()
    return Value(order, image.coeffs[order])


def semiroot_branch(branch: PuiseuxBranch, k: int) -> PuiseuxBranch:
    """The k-semiroot as a branch: phi cut below beta_{k+1}, exponents divided by e_k."""
    g = branch.semigroup.genus
    if not 0 <= k <= g:
        raise InputError(f"k = {k} outside [0, {g}]")
    if k == g:
        return branch
    semigroup = semiroot_semigroup(branch.semigroup, k)
    e_k = branch.semigroup.gcd_chain[k]
    cut = branch.semigroup.char_exponents[k + 1]
    psi = {i // e_k: c for i, c in branch.phi.coeffs.items() if i < cut}
    trunc = max(branch.trunc // e_k, default_trunc(semigroup), 1)
    if k == 0:
        return smooth_branch(trunc)
    return PuiseuxBranch(branch.n // e_k, Series(psi, trunc), semigroup, trunc)


def semiroot(branch: PuiseuxBranch, k: int) -> Poly:
    return semiroot_branch(branch, k).weierstrass


def semiroot_system(branch: PuiseuxBranch) -> SemirootSystem:
    polys = tuple(semiroot(branch, k) for k in range(branch.semigroup.genus + 1))
    return SemirootSystem(polys, branch)


def adic_expansion(h: Poly, system: SemirootSystem) -> dict[tuple[int, ...], Poly]:
    """Coefficients b_alpha in Q[x] with h = sum b_alpha f_0**a_0 ... f_g**a_g."""
    expansion: dict[tuple[int, ...], Poly] = {}

    def expand(poly: Poly, level: int, suffix: tuple[int, ...]) -> None:
        if level < 0:
            if not poly.is_zero():
                expansion[suffix] = poly
            return
        digit, rest = 0, poly
        while not rest.is_zero():
            rest, remainder = weierstrass_divide(rest, system.polys[level])
            expand(remainder, level - 1, (digit,) + suffix)
            digit += 1

    expand(h, len(system.polys) - 1, ())
    return expansion


def reconstruct(expansion: Mapping[tuple[int, ...], Poly], system: SemirootSystem) -> Poly:
    total = Poly()
    for alpha, b in expansion.items():
        term = b
        for f, a in zip(system.polys, alpha):
            term = term * f**a
        total = total + term
    return total
