"""
Pydantic models for data validation and serialization.

This module defines the input files (systems, matrices, witnesses) and
every JSON report the command line tool emits. Rationals travel as
strings ("p/q" or "p") and +infinity as "inf" so no precision is lost.
"""

from enum import Enum
from typing import Annotated, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, RootModel

RationalText = Union[str, int]


class EngineName(str, Enum):
    """Feasibility engines selectable with --engine."""
    EXACT = "exact"
    LIFT = "lift"
    AUTO = "auto"


class CampaignMode(str, Enum):
    """Kinds of randomized campaigns."""
    UNIVARIATE = "univariate"
    BIVARIATE = "bivariate"


# Input files

class TermModel(BaseModel):
    """One term coef ⊗ X^exp."""
    model_config = ConfigDict(extra="forbid")

    exp: List[int] = Field(..., min_length=1)
    coef: RationalText


class SystemFile(BaseModel):
    """A polynomial system: each polynomial is a list of terms in n variables."""
    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=1)
    polys: List[Annotated[List[TermModel], Field(min_length=1)]] = Field(..., min_length=1)


# Cayley rows are [j, [I...]] and columns exponent vectors; other matrices
# may label rows and columns with plain integers or strings.
RowIdText = Union[Tuple[int, List[int]], int, str]
ColIdText = Union[List[int], int, str]


class MatrixFile(BaseModel):
    """A sparse tropical matrix; omitted entries are +infinity."""
    model_config = ConfigDict(extra="forbid")

    rows: List[RowIdText]
    cols: List[ColIdText]
    entries: List[Tuple[int, int, RationalText]]
    n: Optional[int] = None
    N: Optional[int] = None


class WitnessFile(RootModel[Dict[str, RationalText]]):
    """Column label (comma-joined exponents for Cayley matrices) to value."""


# Reports

class RowCheckModel(BaseModel):
    """Verification of one row."""
    row: str
    ok: bool
    minimum: Optional[str] = None
    argmins: List[str] = Field(default_factory=list)


class WitnessCheckReport(BaseModel):
    """Row-by-row verification of a given witness."""
    ok: bool
    rows: int
    violated: List[RowCheckModel] = Field(default_factory=list)


class RefutationNodeModel(BaseModel):
    """One explored pair choice of the exact search."""
    row: str
    pair: List[str]
    outcome: str
    conflict_rows: List[str] = Field(default_factory=list)
    children: List["RefutationNodeModel"] = Field(default_factory=list)


class RefutationModel(BaseModel):
    """Why a matrix has no tropical zero."""
    reason: str
    nodes_explored: int = 0
    conflicts: int = 0
    truncated: bool = False
    tree: List[RefutationNodeModel] = Field(default_factory=list)


class FeasibilityReport(BaseModel):
    """Outcome of a feasibility decision."""
    status: str
    engine: EngineName
    shape: List[int]
    steps: int = 0
    witness: Optional[Dict[str, str]] = None
    refutation: Optional[RefutationModel] = None
    seconds: Optional[float] = None


class RootsReport(BaseModel):
    """Tropical roots (value to multiplicity) of each polynomial."""
    polynomials: List[Dict[str, int]]
    common_root: Optional[str] = None


class CheckModel(BaseModel):
    """Tally of one proof check."""
    strict: bool
    checked: int
    violations: List[str] = Field(default_factory=list)


class ProofReportModel(BaseModel):
    """All proof checks for one witness."""
    N: int
    ok: bool
    checks: Dict[str, CheckModel]
    intermediate_length: Optional[str] = None
    noncommon_principal_length: Optional[str] = None


class TheoremReportModel(BaseModel):
    """Direct solvability against Cayley feasibility."""
    system_degree: int
    N: int
    engine: EngineName
    direct_solvable: bool
    common_root: Optional[str] = None
    cayley_feasible: bool
    minimal_infeasible_N: Optional[int] = None
    agree: bool
    extracted_root: Optional[str] = None
    extracted_root_ok: Optional[bool] = None
    witness_verified: Optional[bool] = None
    failures: List[str] = Field(default_factory=list)
    proof: Optional[ProofReportModel] = None
    seconds: Optional[float] = None


class SolveReport(BaseModel):
    """A common tropical zero, if the system has one."""
    n: int
    solvable: bool
    zero: Optional[List[str]] = None


class ProbeRowModel(BaseModel):
    """Feasibility of C_N for one N."""
    N: int
    rows: int
    cols: int
    feasible: bool
    root_witness_verified: Optional[bool] = None


class ProbeReportModel(BaseModel):
    """Per-N feasibility table next to the brute-force ground truth."""
    solvable: bool
    ground_truth: Optional[List[str]] = None
    first_infeasible_N: Optional[int] = None
    table: List[ProbeRowModel] = Field(default_factory=list)


class CampaignConfigModel(BaseModel):
    """Parameters of a randomized campaign."""
    seed: int
    count: int = Field(..., ge=0)
    max_s: int = Field(..., ge=1)
    max_deg: int = Field(..., ge=1)
    coeff_range: int = Field(..., ge=0)
    mode: CampaignMode = CampaignMode.UNIVARIATE
    engine: EngineName = EngineName.AUTO
    n_max: int = Field(3, ge=0)


class PairBoundModel(BaseModel):
    """Unsolvable pairs whose least infeasible N is at most trdeg1 + trdeg2."""
    checked: int = 0
    within: int = 0


class CampaignReport(BaseModel):
    """Aggregate outcome of a campaign."""
    config: CampaignConfigModel
    instances: int = 0
    ok: bool = True
    # univariate
    solvable: int = 0
    agree: int = 0
    disagreements: List[int] = Field(default_factory=list)
    extraction_failures: List[int] = Field(default_factory=list)
    proof_checked: int = 0
    proof_violations: Dict[str, int] = Field(default_factory=dict)
    advisory_violations: Dict[str, int] = Field(default_factory=dict)
    ratio_distribution: Dict[str, int] = Field(default_factory=dict)
    max_ratio: Optional[str] = None
    pair_bound: PairBoundModel = Field(default_factory=PairBoundModel)
    # bivariate
    easy_direction_ok: int = 0
    easy_direction_failures: List[int] = Field(default_factory=list)
    sampler_misses: List[int] = Field(default_factory=list)
    first_infeasible_N: Dict[str, int] = Field(default_factory=dict)
    seconds: Optional[float] = None


class DiagramEdgeModel(BaseModel):
    """One classified edge of E(f_j)."""
    start: List[str]
    end: List[str]
    kind: str
    r: Optional[int] = None
    shift: Optional[int] = None
    projection: Optional[List[int]] = None


class DiagramModel(BaseModel):
    """Extremal diagram of one polynomial; points are [height, exponent]."""
    j: int
    newton_vertices: List[List[str]]
    profile: Dict[str, str]
    chain: List[List[str]]
    edges: List[DiagramEdgeModel]


class DiagramsReport(BaseModel):
    """Diagrams of a system for one witness, with their upper envelope."""
    N: int
    diagrams: List[DiagramModel]
    envelope: List[List[str]] = Field(default_factory=list)
    common_principal_edges: List[List[List[str]]] = Field(default_factory=list)


SCHEMAS = {
    "system": SystemFile,
    "matrix": MatrixFile,
    "witness": WitnessFile,
    "feasibility": FeasibilityReport,
    "witness-check": WitnessCheckReport,
    "roots": RootsReport,
    "theorem": TheoremReportModel,
    "proof": ProofReportModel,
    "solve": SolveReport,
    "probe": ProbeReportModel,
    "campaign": CampaignReport,
    "diagrams": DiagramsReport,
}

RefutationNodeModel.model_rebuild()
