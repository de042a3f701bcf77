from fastapi import APIRouter, HTTPException
from .. import records, schemas
from ..errors import BranchInvariantsError
from ..semigroup import semigroup_from_char, semigroup_from_generators

router = APIRouter()


def _parse_generators(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise HTTPException(status_code=400, detail=f"{text!r} is not a comma list of integers")


@router.post(
    "/semigroup",
    response_model=schemas.SemigroupInfo,
    tags=["Semigroup"],
    description="Structure constants, Milnor number and gaps of a plane branch semigroup.",
)
async def semigroup_info_route(query: schemas.SemigroupQuery):
    try:
        if query.generators is not None:
            semigroup = semigroup_from_generators(query.generators)
        else:
            semigroup = semigroup_from_char(query.char_exponents)
    except BranchInvariantsError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return records.semigroup_info(semigroup)


@router.get(
    "/semigroup/{generators}/standard-form/{r}",
    response_model=schemas.StandardFormRecord,
    tags=["Semigroup"],
    description="Standard representation of r in the semigroup given by comma separated generators.",
)
async def standard_form_route(generators: str, r: int):
    try:
        semigroup = semigroup_from_generators(_parse_generators(generators))
    except BranchInvariantsError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return records.standard_form_record(r, semigroup)
