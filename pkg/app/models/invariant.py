"""
Models for invariant-polynomial results.
"""
from typing import List

from pydantic import BaseModel, Field


class BracketCheck(BaseModel):
    """One bracket {c_i, c_j}."""

    i: int = Field(..., ge=1)
    j: int = Field(..., ge=1)
    value: str = Field(..., description="Canonical text of the bracket")
    vanishes: bool


class InvolutivityReport(BaseModel):
    """Brackets of all coefficient pairs under one structure."""

    n: int = Field(..., ge=1)
    structure: str
    brackets: List[BracketCheck]
    passed: bool
