from fastapi import APIRouter, Depends, HTTPException
from sqlalchemy.orm import Session
from ..dependencies import get_db
from .. import crud, records, schemas
from ..errors import BranchInvariantsError
from ..semigroup import semigroup_from_generators
from ..theorems import class_sweep, verify_all

router = APIRouter()


@router.post(
    "/verify",
    response_model=list[schemas.VerificationReport],
    tags=["Verify"],
    description="Runs every applicable check on a branch.",
)
def verify_route(record: schemas.BranchRecord):
    try:
        return verify_all(records.branch_from_record(record))
    except BranchInvariantsError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@router.post(
    "/sweep",
    response_model=schemas.Sweep,
    tags=["Verify"],
    description="Samples seeded branches of a class, checks them and stores the outcome table.",
)
def create_sweep_route(request: schemas.SweepCreate, db: Session = Depends(get_db)):
    try:
        semigroup = semigroup_from_generators(request.generators)
        report = class_sweep(semigroup, request.samples, request.seed)
    except BranchInvariantsError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return crud.create_sweep(db, report)


@router.get(
    "/sweeps",
    response_model=list[schemas.Sweep],
    tags=["Verify"],
    description="Returns stored sweeps.",
)
async def read_sweeps_route(skip: int = 0, limit: int = 100, db: Session = Depends(get_db)):
    return crud.read_sweeps(db, skip, limit)


@router.get(
    "/sweep/{id}",
    response_model=schemas.Sweep,
    tags=["Verify"],
    description="Returns a stored sweep by its id.",
)
async def read_sweep_route(id: int, db: Session = Depends(get_db)):
    return crud.read_sweep(db, id)
