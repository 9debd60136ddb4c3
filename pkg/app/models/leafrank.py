"""
Models for Poisson rank sampling and symplectic-leaf dimension counts.
"""
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


class SpaceTag(str, Enum):
    """Matrix spaces carrying the Poisson structure."""

    M = "m"
    GL = "gl"
    SL = "sl"


class RankReport(BaseModel):
    """Largest exact rank of the bracket matrix over sampled points."""

    space: SpaceTag
    n: int = Field(..., ge=1)
    structure: str
    samples: int = Field(..., ge=1, description="Sample points tried")
    seed: int
    max_rank: int = Field(..., ge=0, description="Largest exact rank found")
    expected_rank: int = Field(..., ge=0, description="Stated rank of the structure on this space")
    reachable_rank: int = Field(..., ge=0, description="Largest even value not above the stated rank")
    passed: bool = Field(..., description="True iff the expected rank was reached")
    note: Optional[str] = None


class LeafReport(BaseModel):
    """Exhaustive leaf-dimension enumeration over pairs of permutations."""

    n: int = Field(..., ge=1)
    max_leaf_dimension: int
    expected: int = Field(..., description="n(n-1)")
    attained_at: List[Tuple[List[int], List[int]]] = Field(default_factory=list)
    bound_holds: bool = Field(..., description="leaf dimension <= l(w+) + l(w-) + l(w+ w-^-1) everywhere")
    bound_max: int = Field(..., description="Maximum of the length bound")
    passed: bool


class IntegrabilityReport(BaseModel):
    """Dimension count deciding whether c_1, ..., c_n form an integrable system."""

    space: SpaceTag
    n: int = Field(..., ge=1)
    dimension: int
    stated_rank: int
    required_dimension: str = Field(..., description="dim - rank/2, exact rational")
    subalgebra_dimension: int
    integrable: bool
    computed_rank: Optional[int] = None
    required_from_computed: Optional[str] = None
