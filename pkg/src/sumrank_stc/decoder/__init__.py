"""Exact ML decoders: exhaustive search and the sequential stack decoder family."""
from .cost import (
    CostModel,
    Unsupported,
    block_cost,
    build_cost_model,
    dense_effective_channel,
    prefix_cost_step,
    ql_decompose,
    string_cost,
)
from .heuristics import (SingularBlock, column_bounds, eigenbound, eigenbounds, heuristic_at_depth,
                         suffix_table)
from .stack import (
    DecodeResult,
    DecoderConfig,
    DecodeStats,
    InvalidPrefix,
    StackDecoder,
    StackOverflow,
    TooLarge,
    codebook_costs,
    decode_linear,
    exhaustive_ml,
    ld_effective_channel,
    spatial_permutation,
    sphere_children,
    stack_decode,
    temporal_permutation,
    to_symbols,
    tree_children,
)


def future_cost_tables(cm: CostModel, constellation, mode: str, kernel=None):
    """hcol per codeword column in natural order (see :func:`suffix_table`)."""
    import numpy as np

    from .._backend import get_kernel

    N = cm.L * cm.T
    Lc = cm.Lf[np.arange(N) // cm.T]
    Yc = cm.Yt[np.arange(N) // cm.T, :, np.arange(N) % cm.T]
    bounds, _ = column_bounds(Lc, Yc, constellation, mode, kernel or get_kernel())
    return suffix_table(bounds)


__all__ = [name for name in dir() if not name.startswith("_")]
