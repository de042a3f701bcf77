from fastapi import APIRouter, HTTPException
from .. import records, schemas
from ..errors import BranchInvariantsError

router = APIRouter()


@router.post(
    "/branch",
    response_model=schemas.BranchRecord,
    tags=["Branch"],
    description="Builds a branch in normal form from explicit coefficients or a seed.",
)
async def create_branch_route(request: schemas.BranchCreate):
    try:
        branch = records.branch_from_create(request)
    except BranchInvariantsError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return records.branch_record(branch)


@router.post(
    "/branch/invariants",
    response_model=schemas.InvariantsRecord,
    tags=["Branch"],
    description="Milnor and Tjurina numbers, extra differential values and semiroots of a branch.",
)
def branch_invariants_route(record: schemas.BranchRecord):
    try:
        return records.invariants_record(records.branch_from_record(record))
    except BranchInvariantsError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
