"""
Conversion of core results into the published report models.
"""

from typing import List, Optional, Sequence

from src.models.schemas import (
    CheckModel,
    DiagramEdgeModel,
    DiagramModel,
    DiagramsReport,
    FeasibilityReport,
    ProbeReportModel,
    ProbeRowModel,
    ProofReportModel,
    RefutationModel,
    RefutationNodeModel,
    RootsReport,
    RowCheckModel,
    TheoremReportModel,
    WitnessCheckReport,
)
from src.services.files import dump_witness, format_column, format_row
from src.tropical.bivariate import ProbeReport
from src.tropical.cayley import TropMatrix
from src.tropical.newton import univariate_common_root, univariate_roots
from src.tropical.nullstellensatz import ExtremalDiagram, IntersectionPolygon, ProofReport, TheoremReport
from src.tropical.polynomial import TropPoly
from src.tropical.semiring import format_value
from src.tropical.solver import FeasibilityResult, RefutationNode, WitnessReport

# violations listed per check; the count is always complete
MAX_LISTED_VIOLATIONS = 20


def _optional(value) -> Optional[str]:
    return None if value is None else format_value(value)


def _node_model(node: RefutationNode) -> RefutationNodeModel:
    return RefutationNodeModel(
        row=format_row(node.row),
        pair=[format_column(col) for col in node.pair],
        outcome=node.outcome,
        conflict_rows=[format_row(row) for row in node.conflict_rows],
        children=[_node_model(child) for child in node.children],
    )


def feasibility_report(C: TropMatrix, result: FeasibilityResult, include_tree: bool = True) -> FeasibilityReport:
    refutation = None
    if result.refutation is not None:
        r = result.refutation
        refutation = RefutationModel(
            reason=r.reason,
            nodes_explored=r.nodes_explored,
            conflicts=r.conflicts,
            truncated=r.truncated,
            tree=[_node_model(node) for node in r.tree] if include_tree else [],
        )
    return FeasibilityReport(
        status=result.status.value,
        engine=result.engine.value,
        shape=list(C.shape),
        steps=result.steps,
        witness=dump_witness(result.witness) if result.witness is not None else None,
        refutation=refutation,
    )


def witness_check_report(report: WitnessReport) -> WitnessCheckReport:
    return WitnessCheckReport(
        ok=report.ok,
        rows=len(report.rows),
        violated=[
            RowCheckModel(
                row=format_row(check.row),
                ok=check.ok,
                minimum=_optional(check.minimum),
                argmins=[format_column(col) for col in check.argmins],
            )
            for check in report.violated
        ],
    )


def roots_report(system: Sequence[TropPoly]) -> RootsReport:
    return RootsReport(
        polynomials=[univariate_roots(f).as_dict() for f in system],
        common_root=_optional(univariate_common_root(system)),
    )


def proof_report_model(report: ProofReport) -> ProofReportModel:
    return ProofReportModel(
        N=report.N,
        ok=report.ok,
        checks={
            name: CheckModel(
                strict=check.strict,
                checked=check.checked,
                violations=check.violations[:MAX_LISTED_VIOLATIONS],
            )
            for name, check in report.checks.items()
        },
        intermediate_length=_optional(report.intermediate_length),
        noncommon_principal_length=_optional(report.noncommon_principal_length),
    )


def theorem_report_model(report: TheoremReport, proof: Optional[ProofReport] = None) -> TheoremReportModel:
    return TheoremReportModel(
        system_degree=report.system_degree,
        N=report.N,
        engine=report.engine.value,
        direct_solvable=report.direct_solvable,
        common_root=_optional(report.common_root),
        cayley_feasible=report.cayley_feasible,
        minimal_infeasible_N=report.certifying_N,
        agree=report.agree,
        extracted_root=_optional(report.extracted_root),
        extracted_root_ok=report.extracted_root_ok,
        witness_verified=report.witness_verified,
        failures=list(report.failures),
        proof=proof_report_model(proof) if proof is not None else None,
    )


def probe_report_model(report: ProbeReport) -> ProbeReportModel:
    zero: Optional[List[str]] = None
    if report.ground_truth is not None:
        zero = [format_value(v) for v in report.ground_truth]
    return ProbeReportModel(
        solvable=report.solvable,
        ground_truth=zero,
        first_infeasible_N=report.first_infeasible_N,
        table=[
            ProbeRowModel(
                N=row.N,
                rows=row.rows,
                cols=row.cols,
                feasible=row.feasible,
                root_witness_verified=row.root_witness_verified,
            )
            for row in report.table
        ],
    )


def _point(p) -> List[str]:
    return [format_value(p[0]), format_value(p[1])]


def diagrams_report(N: int, diagrams: Sequence[ExtremalDiagram],
                    envelope: Optional[IntersectionPolygon]) -> DiagramsReport:
    models = []
    for d in diagrams:
        models.append(DiagramModel(
            j=d.j,
            newton_vertices=[[format_value(h), str(k)] for k, h in d.polygon.vertices],
            profile={str(i): format_value(a) for i, a in sorted(d.profile.values.items())},
            chain=[_point(p) for p in d.chain],
            edges=[
                DiagramEdgeModel(
                    start=_point(e.start),
                    end=_point(e.end),
                    kind=e.kind.value,
                    r=e.r,
                    shift=e.shift,
                    projection=list(e.projection) if e.projection is not None else None,
                )
                for e in d.classes
            ],
        ))
    report = DiagramsReport(N=N, diagrams=models)
    if envelope is not None:
        report.envelope = [_point(p) for p in envelope.vertices]
        report.common_principal_edges = [
            [_point(e.start), _point(e.end)] for e in envelope.common_principal_edges()
        ]
    return report
