import logging
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd
from typing import Iterator, Sequence

from .errors import InputError, NonPrimitive, NotCharSequence, NotPlaneBranchSemigroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NumericalSemigroup:
    """Value semigroup of a plane branch together with its structure constants.

    `quotients[i - 1]` is n_i, `gcd_chain[i]` is e_i. The trivial semigroup
    (all of N, the semigroup of a smooth branch) has generators (1,), no
    quotients and conductor 0.
    """

    generators: tuple[int, ...]
    char_exponents: tuple[int, ...]
    gcd_chain: tuple[int, ...]
    quotients: tuple[int, ...]
    conductor: int

    @property
    def genus(self) -> int:
        return len(self.quotients)

    @property
    def is_trivial(self) -> bool:
        return self.genus == 0

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    @cached_property
    def gaps(self) -> tuple[int, ...]:
        bound = self.conductor + max(self.generators)
        member = sieve(self.generators, bound)
        return tuple(r for r in range(self.conductor) if not member[r])

    def __contains__(self, r: int) -> bool:
        return contains(self, r)

    def __str__(self) -> str:
        return "<" + ",".join(str(v) for v in self.generators) + ">"


@dataclass(frozen=True)
class StandardRepresentation:
    s: tuple[int, ...]

    @property
    def is_member(self) -> bool:
        return self.s[0] >= 0


def sieve(generators: Sequence[int], bound: int) -> list[bool]:
    """Membership table of the monoid spanned by `generators` on [0, bound)."""
    member = [False] * bound
    if bound > 0:
        member[0] = True
    for r in range(1, bound):
        member[r] = any(r >= v and member[r - v] for v in generators)
    return member


def trivial_semigroup() -> NumericalSemigroup:
    return NumericalSemigroup((1,), (1,), (1,), (), 0)


def semigroup_from_char(beta: Sequence[int]) -> NumericalSemigroup:
    beta = tuple(int(b) for b in beta)
    if len(beta) < 2:
        raise NotCharSequence("a characteristic sequence needs at least two terms")
    if any(b <= a for a, b in zip(beta, beta[1:])):
        raise NotCharSequence(f"{beta} is not strictly increasing")
    if beta[0] < 2:
        raise NotCharSequence(f"multiplicity {beta[0]} must be at least 2")
    if reduce(gcd, beta) != 1:
        raise NonPrimitive(f"gcd of {beta} is {reduce(gcd, beta)}, expected 1")

    e = [beta[0]]
    for b in beta[1:]:
        following = gcd(e[-1], b)
        if following == e[-1]:
            raise NotCharSequence(f"{b} is divisible by e = {e[-1]} in {beta}")
        e.append(following)

    quotients = tuple(e[i - 1] // e[i] for i in range(1, len(e)))
    v = [beta[0], beta[1]]
    for i in range(1, len(beta) - 1):
        v.append(quotients[i - 1] * v[i] + beta[i + 1] - beta[i])
    conductor = quotients[-1] * v[-1] - beta[-1] - v[0] + 1
    return NumericalSemigroup(tuple(v), beta, tuple(e), quotients, conductor)


def char_from_semigroup(v: Sequence[int]) -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    if len(v) < 2 or v[0] < 2 or any(b <= a for a, b in zip(v, v[1:])):
        raise NotPlaneBranchSemigroup(f"{v} is not an increasing generator list")

    e = [v[0]]
    for x in v[1:]:
        following = gcd(e[-1], x)
        if following == e[-1]:
            raise NotPlaneBranchSemigroup(f"{x} is redundant in {v}")
        e.append(following)
    if e[-1] != 1:
        raise NotPlaneBranchSemigroup(f"{v} has gcd {e[-1]}")

    beta = [v[0], v[1]]
    for i in range(1, len(v) - 1):
        n_i = e[i - 1] // e[i]
        if v[i + 1] <= n_i * v[i]:
            raise NotPlaneBranchSemigroup(
                f"v_{i + 1} = {v[i + 1]} must exceed n_{i} v_{i} = {n_i * v[i]}"
            )
        beta.append(v[i + 1] - n_i * v[i] + beta[i])

    try:
        semigroup = semigroup_from_char(beta)
    except (NonPrimitive, NotCharSequence) as exc:
        raise NotPlaneBranchSemigroup(str(exc)) from exc
    if semigroup.generators != v:
        raise NotPlaneBranchSemigroup(f"{v} does not round-trip through {beta}")
    return tuple(beta)


def semigroup_from_generators(v: Sequence[int]) -> NumericalSemigroup:
    return semigroup_from_char(char_from_semigroup(v))


def milnor(semigroup: NumericalSemigroup) -> int:
    v, n = semigroup.generators, semigroup.quotients
    return sum((n[i - 1] - 1) * v[i] for i in range(1, len(v))) - v[0] + 1


def gaps(semigroup: NumericalSemigroup) -> tuple[int, ...]:
    return semigroup.gaps


def standard_form(r: int, semigroup: NumericalSemigroup) -> StandardRepresentation:
    v, e, n = semigroup.generators, semigroup.gcd_chain, semigroup.quotients
    s = [0] * len(v)
    rest = r
    for i in range(len(v) - 1, 0, -1):
        # rest is a multiple of e_i here; pick s_i so that e_{i-1} divides what is left
        unit = pow((v[i] // e[i]) % n[i - 1], -1, n[i - 1])
        s[i] = (rest // e[i]) * unit % n[i - 1]
        rest -= s[i] * v[i]
    s[0] = rest // v[0]
    return StandardRepresentation(tuple(s))


def contains(semigroup: NumericalSemigroup, r: int) -> bool:
    return standard_form(r, semigroup).is_member


def semiroot_semigroup(semigroup: NumericalSemigroup, k: int) -> NumericalSemigroup:
    if not 0 <= k <= semigroup.genus:
        raise InputError(f"k = {k} outside [0, {semigroup.genus}]")
    if k == 0:
        return trivial_semigroup()
    e_k = semigroup.gcd_chain[k]
    return semigroup_from_char([b // e_k for b in semigroup.char_exponents[: k + 1]])


def unit_root_sum(semigroup: NumericalSemigroup, j: int, alpha: int) -> int:
    """Sum of eta**alpha over the e_j-th roots of unity that are not e_{j+1}-th roots."""
    if not 0 <= j < semigroup.genus:
        raise InputError(f"level {j} outside [0, {semigroup.genus})")
    e = semigroup.gcd_chain

    def full(level: int) -> int:
        return e[level] if alpha % e[level] == 0 else 0

    return full(j) - full(j + 1)


def luengo_pfister_correction(semigroup: NumericalSemigroup) -> int:
    if semigroup.genus != 2 or semigroup.quotients[-1] != 2:
        raise InputError(f"{semigroup} is not a genus 2 class with n_2 = 2")
    v = semigroup.generators
    return (v[0] // 2 - 1) * (v[1] // 2 - 1)


def char_sequences(beta0_max: int, beta_max: int) -> Iterator[tuple[int, ...]]:
    """Every valid characteristic sequence with beta_0 <= beta0_max, beta_g <= beta_max."""

    def extend(prefix: tuple[int, ...], e: int) -> Iterator[tuple[int, ...]]:
        for b in range(prefix[-1] + 1, beta_max + 1):
            following = gcd(e, b)
            if following == e:
                continue
            if following == 1:
                yield prefix + (b,)
            else:
                yield from extend(prefix + (b,), following)

    for beta0 in range(2, beta0_max + 1):
        yield from extend((beta0,), beta0)
