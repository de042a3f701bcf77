from datetime import datetime
from sqlalchemy import Column, DateTime, ForeignKey, Integer, String
from sqlalchemy.orm import relationship
from .database import Base


class SweepRun(Base):
    __tablename__ = "sweep_run"
    id = Column(Integer, primary_key=True, index=True, autoincrement=True)
    generators = Column(String, nullable=False)  # "6,9,19"
    samples = Column(Integer, nullable=False)
    seed = Column(Integer, nullable=False)
    status = Column(String, nullable=False)
    created_at = Column(DateTime, nullable=False, default=datetime.utcnow)

    outcomes = relationship(
        "SweepOutcome",
        back_populates="run",
        cascade="all, delete-orphan",
        order_by="SweepOutcome.id",
    )

    def __repr__(self):
        return f"SweepRun(id={self.id}, generators={self.generators}, samples={self.samples})"


class SweepOutcome(Base):
    __tablename__ = "sweep_outcome"
    id = Column(Integer, primary_key=True, index=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey("sweep_run.id"), nullable=False, index=True)
    lambda_minus_gamma = Column(String, nullable=False)  # comma list, may be empty
    tau = Column(Integer, nullable=False)
    count = Column(Integer, nullable=False)

    run = relationship("SweepRun", back_populates="outcomes")
