from contextlib import contextmanager
from .database import SessionLocal


@contextmanager
def open_db():
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()


def get_db():
    with open_db() as db:
        yield db
