import os
from sqlalchemy import create_engine
from sqlalchemy.orm import declarative_base, sessionmaker
from . import config

SQLALCHEMY_DATABASE_URL = config.DATABASE_URL
if SQLALCHEMY_DATABASE_URL.startswith("sqlite:///./"):
    os.makedirs(os.path.dirname(SQLALCHEMY_DATABASE_URL[len("sqlite:///"):]), exist_ok=True)

engine = create_engine(
    SQLALCHEMY_DATABASE_URL, connect_args={"check_same_thread": False}
)

SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)

Base = declarative_base()
