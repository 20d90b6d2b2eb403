# polytransform/config.py

from pydantic import BaseModel, ConfigDict, Field


class NumericConfig(BaseModel):
    """Every tolerance and default the library relies on, in one place."""
    model_config = ConfigDict(frozen=True)

    dedup_rel_tol: float = Field(1e-9, description="Two images r(a), r(b) are equal when |r(a)-r(b)| <= tol * (1 + max|r(alpha)|).")
    rank_rel_tol: float = Field(1e-9, description="Singular values above tol * sigma_max count toward numerical rank.")
    condition_warning: float = Field(1e8, description="Base-change matrices above this condition number attach a warning.")
    trivial_entry_tol: float = Field(1e-12, description="Entries this close to 0 or +-1 are not charged a multiplication.")
    distinct_rel_tol: float = Field(1e-12, description="Sample points closer than tol * max|alpha| are rejected as duplicates.")
    verify_tol: float = 1e-10
    derive_tol: float = 1e-9
    leaf_threshold: int = Field(2, ge=1)


DEFAULT_CONFIG = NumericConfig()
