from sqlalchemy.orm import Session
from fastapi import HTTPException
from . import models, schemas


def _join(values) -> str:
    return ",".join(str(v) for v in values)


# SWEEP
def create_sweep(db: Session, report: schemas.SweepReport):
    new_run = models.SweepRun(
        generators=_join(report.generators),
        samples=report.samples,
        seed=report.seed,
        status=report.status.value,
    )
    db.add(new_run)
    db.flush()
    for outcome in report.outcomes:
        db.add(
            models.SweepOutcome(
                run_id=new_run.id,
                lambda_minus_gamma=_join(outcome.lambda_minus_gamma),
                tau=outcome.tau,
                count=outcome.count,
            )
        )
    db.commit()
    db.refresh(new_run)
    return new_run


def read_sweep(db: Session, id: int):
    run = db.query(models.SweepRun).filter(models.SweepRun.id == id).first()
    if run is None:
        raise HTTPException(status_code=404, detail="Sweep not found")
    return run


def read_sweeps(db: Session, skip: int, limit: int):
    return (
        db.query(models.SweepRun)
        .order_by(models.SweepRun.id)
        .offset(skip)
        .limit(limit)
        .all()
    )
