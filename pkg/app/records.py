from fractions import Fraction

from . import schemas
from .branch import PuiseuxBranch, make_branch, semiroot
from .differentials import lambda_set, tjurina_oracle
from .errors import SupportViolation
from .semigroup import NumericalSemigroup, milnor, standard_form
from .series import Poly


def semigroup_record(semigroup: NumericalSemigroup) -> schemas.SemigroupRecord:
    return schemas.SemigroupRecord(
        generators=list(semigroup.generators),
        char_exponents=list(semigroup.char_exponents),
        conductor=semigroup.conductor,
    )


def semigroup_info(semigroup: NumericalSemigroup) -> schemas.SemigroupInfo:
    return schemas.SemigroupInfo(
        **semigroup_record(semigroup).model_dump(),
        gcd_chain=list(semigroup.gcd_chain),
        quotients=list(semigroup.quotients),
        milnor=milnor(semigroup),
        gaps=list(semigroup.gaps),
    )


def standard_form_record(r: int, semigroup: NumericalSemigroup) -> schemas.StandardFormRecord:
    representation = standard_form(r, semigroup)
    return schemas.StandardFormRecord(
        value=r, s=list(representation.s), member=representation.is_member
    )


def poly_record(poly: Poly) -> schemas.PolyRecord:
    return schemas.PolyRecord(terms=poly.to_record(), text=repr(poly))


def branch_record(branch: PuiseuxBranch) -> schemas.BranchRecord:
    return schemas.BranchRecord(
        n=branch.n,
        phi=[[e, c.numerator, c.denominator] for e, c in sorted(branch.phi.coeffs.items())],
        char=list(branch.semigroup.char_exponents),
        trunc=branch.trunc,
    )


def branch_from_record(record: schemas.BranchRecord) -> PuiseuxBranch:
    coeffs = {e: Fraction(num, den) for e, num, den in record.phi}
    branch = make_branch(record.char, coeffs, trunc=max(record.trunc, max(coeffs, default=0) + 1))
    if branch.n != record.n:
        raise SupportViolation(f"n = {record.n} does not match beta_0 = {branch.n}")
    return branch


def branch_from_create(request: schemas.BranchCreate) -> PuiseuxBranch:
    if request.coeffs is not None:
        coeffs = {e: schemas.parse_rational(text) for e, text in request.coeffs.items()}
        return make_branch(request.char, coeffs, trunc=request.trunc)
    return make_branch(request.char, seed=request.seed, trunc=request.trunc)


def invariants_record(branch: PuiseuxBranch) -> schemas.InvariantsRecord:
    values = lambda_set(branch)
    mu = branch.semigroup.conductor
    return schemas.InvariantsRecord(
        semigroup=semigroup_record(branch.semigroup),
        mu=mu,
        lambda_minus_gamma=list(values.extra),
        tau=values.tau,
        tau_oracle=tjurina_oracle(branch.weierstrass, cutoff=mu + 2),
        semiroots=[poly_record(semiroot(branch, k)) for k in range(branch.semigroup.genus + 1)],
    )
