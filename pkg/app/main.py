import logging
from fastapi import FastAPI
from . import config, models
from .database import engine
from .routers import branch, semigroup, verify

logging.basicConfig(level=config.LOG_LEVEL)
models.Base.metadata.create_all(bind=engine)


app = FastAPI(title="Plane branch invariants")

app.include_router(semigroup.router)
app.include_router(branch.router)
app.include_router(verify.router)
