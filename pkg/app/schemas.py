from datetime import datetime
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Status(str, Enum):
    VERIFIED = "verified"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


def parse_rational(text: str) -> Fraction:
    """'3', '-1/3' or '2/4' as an exact rational."""
    text = text.strip()
    if not text:
        raise ValueError("empty coefficient")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{text!r} is not a rational number")


# SEMIGROUP
class SemigroupRecord(BaseModel):
    generators: list[int]
    char_exponents: list[int]
    conductor: int


class SemigroupQuery(BaseModel):
    generators: Optional[list[int]] = Field(default=None)
    char_exponents: Optional[list[int]] = Field(default=None)

    @model_validator(mode="after")
    def check_exactly_one(self):
        if (self.generators is None) == (self.char_exponents is None):
            raise ValueError("give either generators or char_exponents")
        return self


class SemigroupInfo(SemigroupRecord):
    gcd_chain: list[int]
    quotients: list[int]
    milnor: int
    gaps: list[int]


class StandardFormRecord(BaseModel):
    value: int
    s: list[int]
    member: bool


# BRANCH
class BranchRecord(BaseModel):
    n: int
    phi: list[list[int]]
    char: list[int]
    trunc: int

    @field_validator("phi")
    def check_terms(cls, terms):
        for term in terms:
            if len(term) != 3 or term[2] == 0:
                raise ValueError("phi terms are [exponent, numerator, denominator]")
        return terms


class BranchCreate(BaseModel):
    char: list[int]
    coeffs: Optional[dict[int, str]] = Field(default=None)
    seed: Optional[int] = Field(default=None)
    trunc: Optional[int] = Field(default=None)

    @field_validator("coeffs")
    def check_coeffs(cls, coeffs):
        if coeffs is not None:
            for text in coeffs.values():
                parse_rational(text)
        return coeffs

    @model_validator(mode="after")
    def check_choice(self):
        if (self.coeffs is None) == (self.seed is None):
            raise ValueError("give either coeffs or seed")
        return self


class PolyRecord(BaseModel):
    terms: list[list[int]]
    text: str

    @field_validator("terms")
    def check_terms(cls, terms):
        for term in terms:
            if len(term) != 4 or term[3] == 0:
                raise ValueError("terms are [x exponent, y exponent, numerator, denominator]")
        return terms


class ValueSetRecord(BaseModel):
    semigroup: list[int]
    lambda_minus_gamma: list[int]
    tau: int
    mu: int


class InvariantsRecord(BaseModel):
    semigroup: SemigroupRecord
    mu: int
    lambda_minus_gamma: list[int]
    tau: int
    tau_oracle: int
    semiroots: list[PolyRecord]


# VERIFICATION
class VerificationReport(BaseModel):
    theorem: str
    descriptor: str
    status: Status
    witness: dict[str, Any] = Field(default_factory=dict)


class SampleRecord(BaseModel):
    index: int
    lambda_minus_gamma: list[int]
    tau: Optional[int] = Field(default=None)
    tau_oracle: Optional[int] = Field(default=None)
    statuses: dict[str, Status]


class SweepCreate(BaseModel):
    generators: list[int]
    samples: int = Field(default=20, ge=1, le=1000)
    seed: int = Field(default=0)


class SweepOutcome(BaseModel):
    lambda_minus_gamma: list[int]
    tau: int
    count: int

    model_config = ConfigDict(from_attributes=True)

    @field_validator("lambda_minus_gamma", mode="before")
    def split_stored(cls, value):
        if isinstance(value, str):
            return [int(v) for v in value.split(",") if v]
        return value


class SweepReport(BaseModel):
    generators: list[int]
    samples: int
    seed: int
    status: Status
    outcomes: list[SweepOutcome]
    details: list[SampleRecord] = Field(default_factory=list)
    violations: list[VerificationReport] = Field(default_factory=list)


class Sweep(BaseModel):
    id: int
    generators: list[int]
    samples: int
    seed: int
    status: Status
    created_at: datetime
    outcomes: list[SweepOutcome]

    model_config = ConfigDict(from_attributes=True)

    @field_validator("generators", mode="before")
    def split_generators(cls, value):
        if isinstance(value, str):
            return [int(v) for v in value.split(",")]
        return value
