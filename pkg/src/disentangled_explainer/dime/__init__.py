"""Disentangled multimodal explanations and their validation."""

from .dime_explainer import DimeExplainer, dime_explain
from .dime_report import LOW_FIT_R2, DimeReport
from .report_rendering import (
    render_dime_report,
    render_rq1_table,
    render_stability,
    render_swap_test,
    render_topk_table,
)
from .validation import (
    RQ1_COLUMNS,
    RQ1_ROWS,
    Dominance,
    Rq1Table,
    StabilityReport,
    SwapTestResult,
    TopkTable,
    categorise,
    correlate_with_ground_truth,
    explanation_stability,
    swap_test,
    topk_report,
    validate_rq1,
)

__all__ = [
    "DimeExplainer",
    "dime_explain",
    "DimeReport",
    "LOW_FIT_R2",
    "RQ1_ROWS",
    "RQ1_COLUMNS",
    "Rq1Table",
    "validate_rq1",
    "correlate_with_ground_truth",
    "SwapTestResult",
    "swap_test",
    "TopkTable",
    "topk_report",
    "Dominance",
    "categorise",
    "StabilityReport",
    "explanation_stability",
    "render_dime_report",
    "render_rq1_table",
    "render_topk_table",
    "render_swap_test",
    "render_stability",
]
