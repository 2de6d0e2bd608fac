"""Plain text renderings of the reports."""

from disentangled_explainer.dime.dime_report import DimeReport
from disentangled_explainer.dime.validation import (
    RQ1_COLUMNS,
    RQ1_ROWS,
    Rq1Table,
    StabilityReport,
    SwapTestResult,
    TopkTable,
)

_EXPLANATION_NAMES = ("uc1", "mi1", "lime1", "uc2", "mi2", "lime2")


def render_dime_report(report: DimeReport) -> str:
    """A per-feature weight table for each modality of a report."""
    lines = [
        f"Point {report.identifier} (position {report.point_index}), "
        f"class {report.class_index}, predicted {report.predicted_class}",
        "  logits  full="
        + _vector(report.logits.full)
        + "  uc="
        + _vector(report.logits.uc)
        + "  mi="
        + _vector(report.logits.mi),
    ]
    explanations = report.explanations
    for modality in (1, 2):
        names = [n for n in _EXPLANATION_NAMES if n.endswith(str(modality))]
        labels = report.feature_labels[modality - 1]
        width = max([len("feature")] + [len(label) for label in labels])
        lines.append("")
        lines.append(
            f"  {'feature':<{width}}"
            + "".join(f"{name.upper():>12}" for name in names)
        )
        for feature, label in enumerate(labels):
            lines.append(
                f"  {label:<{width}}"
                + "".join(
                    f"{explanations[name].weights[feature]:>12.5f}"
                    for name in names
                )
            )
        lines.append(
            f"  {'R²':<{width}}"
            + "".join(f"{explanations[name].r2:>12.4f}" for name in names)
        )
    if report.low_fit:
        lines.append("  (the plain surrogates fit poorly)")
    return "\n".join(lines)


def render_rq1_table(table: Rq1Table) -> str:
    """Ground truths as rows, explanations as columns."""
    lines = [
        f"{'':<8}" + "".join(f"{c.upper():>9}" for c in RQ1_COLUMNS)
    ]
    for row_index, row in enumerate(RQ1_ROWS):
        lines.append(
            f"{row:<8}"
            + "".join(f"{value:>9.3f}" for value in table.table[row_index])
        )
    lines.append(
        f"points: {table.n_points}, excluded: {table.excluded}, "
        f"low fit: {len(table.low_fit)}"
    )
    return "\n".join(lines)


def render_topk_table(table: TopkTable) -> str:
    lines = [f"top-{table.k} mean |weight| over {table.n_reports} points"]
    lines.append(f"{'':<4}{'modality 1':>12}{'modality 2':>12}")
    for name, row in zip(("UC", "MI"), table.table):
        lines.append(f"{name:<4}{row[0]:>12.5f}{row[1]:>12.5f}")
    return "\n".join(lines)


def render_swap_test(result: SwapTestResult) -> str:
    return (
        f"swap test over {len(result.per_pair)} pairs "
        f"({result.excluded} excluded)\n"
        f"mean UC1 cosine distance: {result.mean_uc_distance:.5f}\n"
        f"mean MI1 cosine distance: {result.mean_mi_distance:.5f}"
    )


def render_stability(report: StabilityReport) -> str:
    return (
        f"dominance agreement over {len(report.seeds)} seeds and "
        f"{len(report.identifiers)} points: alpha = {report.alpha:.4f}"
    )


def _vector(values) -> str:
    return "[" + ", ".join(f"{v:.4f}" for v in values) + "]"
