import os
import tempfile

_scratch = tempfile.mkdtemp(prefix="branchinv-")
os.environ.setdefault("BRANCHINV_DATABASE_URL", f"sqlite:///{_scratch}/app.db")
os.environ.setdefault("BRANCHINV_SWEEP_WORKERS", "1")

import pytest
from fastapi.testclient import TestClient
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker

from app import models
from app.branch import make_branch
from app.dependencies import get_db
from app.main import app


@pytest.fixture
def cusp():
    return make_branch((2, 3), {3: 1})


@pytest.fixture
def example_branch():
    """(t^6, t^9 + t^10), the generic member of <6,9,19>."""
    return make_branch((6, 9, 10), {9: 1, 10: 1})


@pytest.fixture
def ng2_branch():
    """(t^4, t^6 + t^7) in <4,6,13>."""
    return make_branch((4, 6, 7), {6: 1, 7: 1})


@pytest.fixture
def quartic_branch():
    """(t^4, t^5 + t^7) in <4,5>."""
    return make_branch((4, 5), {5: 1, 7: 1})


@pytest.fixture
def octic_branch():
    """(t^8, t^10 + t^14 + t^15) in <8,10,45>; its 1-semiroot is (u^4, u^5 + u^7)."""
    return make_branch((8, 10, 15), {10: 1, 14: 1, 15: 1})


@pytest.fixture
def client(tmp_path):
    engine = create_engine(
        f"sqlite:///{tmp_path / 'test.db'}", connect_args={"check_same_thread": False}
    )
    TestingSession = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    models.Base.metadata.create_all(bind=engine)

    def override_get_db():
        db = TestingSession()
        try:
            yield db
        finally:
            db.close()

    app.dependency_overrides[get_db] = override_get_db
    with TestClient(app) as test_client:
        yield test_client
    app.dependency_overrides.clear()
