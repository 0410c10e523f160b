"""Numeric thresholds shared by every module."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.settings import TOL_CONSISTENCY, TOL_EXACT, TOL_NEAR_ORTH, TOL_RANK


class Tolerances(BaseModel):
    """Thresholds for exact identities, consistency, rank cutoffs and near-orthogonality."""

    model_config = ConfigDict(frozen=True)

    exact: float = Field(default=TOL_EXACT, gt=0, description="Equalities that hold exactly in exact arithmetic")
    consistency: float = Field(default=TOL_CONSISTENCY, gt=0, description="Largest overlap still counted as consistent")
    rank: float = Field(default=TOL_RANK, gt=0, description="Singular-value cutoff for rank decisions")
    near_orth: float = Field(default=TOL_NEAR_ORTH, gt=0, description="Overlap below which frames count as almost orthogonal")

    @model_validator(mode="after")
    def _ordered(self) -> "Tolerances":
        if not (self.rank <= self.exact <= self.consistency):
            raise ValueError("tolerances must satisfy rank <= exact <= consistency")
        return self

    def override(self, **changes) -> "Tolerances":
        """Return a copy with some thresholds replaced (validated again)."""
        return Tolerances(**{**self.model_dump(), **changes})


DEFAULT_TOLERANCES = Tolerances()
