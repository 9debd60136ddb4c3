"""
Models for graded centralizer computations.
"""
from typing import List, Optional

from pydantic import BaseModel, Field, validator


class CentralizerReport(BaseModel):
    """Centralizer of c_1 in one graded piece of O(M_n)."""

    n: int = Field(..., ge=1, description="Matrix size")
    degree: int = Field(..., ge=0, description="Total degree of the graded piece")
    structure: str = Field("semiclassical", description="Bracket structure")
    ambient_dimension: int = Field(..., ge=0, description="Number of degree-d monomials")
    target_dimension: int = Field(..., ge=0, description="Number of degree-(d+1) monomials")
    nullspace_dimension: int = Field(..., ge=0)
    expected_dimension: int = Field(..., ge=0, description="Partitions of d into parts <= n")
    span_check: bool = Field(..., description="c-monomials are independent, centralize c_1 and are equinumerous")
    gr_check: Optional[bool] = Field(None, description="Leading x[1,1]-parts of witnesses commute with x[1,1] in gr")
    injectivity_check: Optional[bool] = Field(None, description="delta o phi has full rank on the witnesses")
    passed: bool
    witnesses: List[str] = Field(default_factory=list, description="Nullspace basis, canonical text")

    @validator("passed")
    def validate_passed(cls, v, values):
        """Pass iff the dimensions agree and the c-monomials span the nullspace."""
        expected = (
            values.get("nullspace_dimension") == values.get("expected_dimension")
            and values.get("span_check", False)
        )
        if v != expected:
            raise ValueError("pass flag must equal (nullspace == expected) and span_check")
        return v


class SL2CentralizerReport(BaseModel):
    """Centralizer of the trace in the filtered piece of O(SL_2) of degree <= d."""

    degree: int = Field(..., ge=0)
    basis_dimension: int = Field(..., ge=0, description="Basis monomials of degree <= d")
    nullspace_dimension: int = Field(..., ge=0)
    expected_dimension: int = Field(..., ge=1, description="d + 1: spanned by 1, tr, ..., tr^d")
    passed: bool
    witnesses: List[str] = Field(default_factory=list)
