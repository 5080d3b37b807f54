"""Deterministic coherence distillation under strictly incoherent operations."""

from .channels import (
    SIOChannel,
    apply,
    assemble_distillation_channel,
    compose,
    is_strictly_incoherent,
    synthesize_pure_to_pure,
)
from .decomposition import BlockDecomposition, block_decompose, support_graph
from .distillation import (
    DistillationReport,
    can_distill_some_pure,
    can_transform_to,
    candidates,
    join_target,
    n_max,
    rank_bound_check,
)
from .majorization import flatten_once, join, majorizes, meet, sort_desc
from .matrixcore import dephase, density, maximally_coherent, permute, pure_state, tensor, validate
from .purity import comparison_matrix, extract_pure, has_rank_one_submatrix, ones_classes

__version__ = "0.1.0"

__all__ = [
    "BlockDecomposition",
    "DistillationReport",
    "SIOChannel",
    "apply",
    "assemble_distillation_channel",
    "block_decompose",
    "can_distill_some_pure",
    "can_transform_to",
    "candidates",
    "comparison_matrix",
    "compose",
    "dephase",
    "density",
    "extract_pure",
    "flatten_once",
    "has_rank_one_submatrix",
    "is_strictly_incoherent",
    "join",
    "join_target",
    "majorizes",
    "maximally_coherent",
    "meet",
    "n_max",
    "ones_classes",
    "permute",
    "pure_state",
    "rank_bound_check",
    "sort_desc",
    "support_graph",
    "synthesize_pure_to_pure",
    "tensor",
    "validate",
]
