"""Disentanglement of a model into unimodal contributions and
multimodal interactions, over a cached logit table."""

from .decomposition import (
    DecomposedLogits,
    decompose_perturbed,
    decompose_perturbed_batch,
    decompose_point,
    mi_grid,
    uc_grid,
)
from .logit_table import LogitTable, build_logit_table, ordered_sum
from .sample_set import (
    SampleSet,
    draw_sample_indices,
    select_sample_set,
    synthetic_pair,
    synthetic_sample_set,
)

__all__ = [
    "SampleSet",
    "synthetic_pair",
    "synthetic_sample_set",
    "draw_sample_indices",
    "select_sample_set",
    "LogitTable",
    "build_logit_table",
    "ordered_sum",
    "DecomposedLogits",
    "decompose_point",
    "decompose_perturbed",
    "decompose_perturbed_batch",
    "mi_grid",
    "uc_grid",
]
