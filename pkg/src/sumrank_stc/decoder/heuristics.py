"""Prefix-independent future-cost bounds, one per string column."""
from __future__ import annotations

import numpy as np

from ..lattice import Constellation

MODES = ("off", "column_min", "eigenbound")
SINGULAR_TOL = 1e-12


class SingularBlock(ValueError):
    pass


def eigenbounds(Lc: np.ndarray, Yc: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Per column: lambda_min(L^H L) * sum_r min_a |a - (L^-1 y)_r|^2 <= min_x ||y - L x||^2."""
    diag = np.abs(np.diagonal(Lc, axis1=-2, axis2=-1))
    if np.any(diag < SINGULAR_TOL):
        raise SingularBlock("triangular factor has a vanishing diagonal entry")
    lam = np.linalg.eigvalsh(np.conj(np.swapaxes(Lc, -1, -2)) @ Lc)[..., 0]
    z = np.linalg.solve(Lc, Yc[..., None])[..., 0]
    dist = np.abs(z[..., None] - points) ** 2
    return np.maximum(lam, 0.0) * dist.min(axis=-1).sum(axis=-1)


def eigenbound(Lm: np.ndarray, y: np.ndarray, points: np.ndarray) -> float:
    return float(eigenbounds(np.asarray(Lm)[None], np.asarray(y)[None], points)[0])


def column_min(Lm: np.ndarray, y: np.ndarray, const: Constellation, kernel) -> tuple[float, int]:
    """Exact min over A^n of ||y - L x||^2 via an uncoded nested search."""
    n = len(y)
    res = kernel.search(
        Lm[None].astype(complex), y[None].astype(complex), 0.0, 1,
        np.zeros((n, 0), dtype=np.int64), np.arange(n, dtype=np.int64)[None],
        const.points.real.copy(), const.points.imag.copy(), np.zeros(1), False,
        False, 1.0, 1.0, 1.0, 0, np.zeros((1, 1), dtype=np.int64), 0, 0,
        0.0, 0.0, 0.0, 0.0, 1 << 30)
    _, _, cost, visited, _, _ = res
    return float(cost), int(visited)


def column_bounds(Lc: np.ndarray, Yc: np.ndarray, const: Constellation, mode: str,
                  kernel) -> tuple[np.ndarray, int]:
    """Per-column lower bounds on the column cost, plus nodes spent computing them."""
    if mode not in MODES:
        raise ValueError(f"unknown future costing mode {mode!r}")
    N = len(Yc)
    bounds = np.zeros(N)
    visited = 0
    if mode == "off":
        return bounds, 0
    if mode == "eigenbound":
        return eigenbounds(Lc, Yc, const.points), 0
    for c in range(N):
        bounds[c], v = column_min(Lc[c], Yc[c], const, kernel)
        visited += v
    return bounds, visited


def suffix_table(bounds: np.ndarray) -> np.ndarray:
    """hcol[c] = sum of bounds over columns strictly after c."""
    total = np.concatenate([np.cumsum(bounds[::-1])[::-1][1:], [0.0]])
    return np.ascontiguousarray(total, dtype=np.float64)


def heuristic_at_depth(hcol: np.ndarray, depth: int, n: int) -> float:
    """Future-cost bound for a node holding ``depth >= 1`` symbols."""
    return float(hcol[(depth - 1) // n])
