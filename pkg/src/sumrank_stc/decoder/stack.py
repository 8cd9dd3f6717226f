"""Exact ML decoding of SRB codes by best-first search over the code tree."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .._backend import get_kernel
from .._search import LATTICE_EISENSTEIN, LATTICE_GAUSSIAN, LATTICE_NONE, STATUS_OVERFLOW
from ..channel import ChannelRealization, DimensionMismatch
from ..galois import expand_matrix
from ..lattice import EISENSTEIN, GAUSSIAN, Constellation
from ..lrs import systematize
from ..stcode import SRB, SpaceTimeEncoder, all_symbol_codewords
from .cost import CostModel, Unsupported, build_cost_model, ql_decompose, step_cost
from .heuristics import MODES, SingularBlock, column_bounds, suffix_table


class StackOverflow(RuntimeError):
    pass


class InvalidPrefix(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class DecoderConfig:
    future_costing: str = "off"
    spherical: bool = False
    spatial_perm: bool = False
    temporal_perm: bool = False
    alpha: float = 1.75
    delta: float = 0.25
    stack_capacity: int = 1 << 20
    backend: str | None = None

    def __post_init__(self):
        if self.future_costing not in MODES:
            raise ValueError(f"future_costing must be one of {MODES}")
        if not (self.alpha > 0 and self.delta > 0):
            raise ValueError("alpha and delta must be positive")
        if self.stack_capacity < 1:
            raise ValueError("stack capacity must be positive")

    @classmethod
    def parse(cls, spec: str, **overrides) -> DecoderConfig:
        """Build from tokens joined by '+' or ',': vanilla, column_min,
        eigenbound, sphere, spatial, temporal, perms, all."""
        kw: dict = {}
        for tok in spec.replace(",", "+").split("+"):
            tok = tok.strip().lower()
            if tok in ("", "vanilla"):
                continue
            if tok in ("column_min", "eigenbound"):
                kw["future_costing"] = tok
            elif tok == "sphere":
                kw["spherical"] = True
            elif tok == "spatial":
                kw["spatial_perm"] = True
            elif tok == "temporal":
                kw["temporal_perm"] = True
            elif tok == "perms":
                kw.update(spatial_perm=True, temporal_perm=True)
            elif tok == "all":
                kw.update(future_costing="eigenbound", spherical=True,
                          spatial_perm=True, temporal_perm=True)
            else:
                raise ValueError(f"unknown decoder option {tok!r}")
        kw.update(overrides)
        return cls(**kw)


@dataclass
class DecodeStats:
    nodes_visited: int = 0
    peak_stack: int = 0
    restarts: int = 0


@dataclass
class DecodeResult:
    symbols: np.ndarray  # F_q symbols, n_t x (L*T)
    cost: float
    stats: DecodeStats = field(default_factory=DecodeStats)


# --- permutations ---

def spatial_permutation(H_blocks) -> np.ndarray:
    """Per block, columns of H sorted by descending 2-norm (ties keep index order)."""
    H = np.asarray(H_blocks)
    norms = np.linalg.norm(H, axis=1)  # (L, n_t)
    return np.argsort(-norms, axis=1, kind="stable")


def temporal_permutation(Y_blocks) -> np.ndarray:
    """Global column order of Y (L*T columns) by descending 2-norm."""
    Y = np.asarray(Y_blocks)
    L, _, T = Y.shape
    norms = np.linalg.norm(Y, axis=1).reshape(L * T)
    return np.argsort(-norms, kind="stable")


# --- kernel plumbing ---

def _lattice_args(const: Constellation):
    if const.kind == GAUSSIAN:
        code = LATTICE_GAUSSIAN
    elif const.kind == EISENSTEIN:
        code = LATTICE_EISENSTEIN
    else:
        return (LATTICE_NONE, np.zeros((1, 1), dtype=np.int64), 0, 0, *const.bbox)
    return (code, np.ascontiguousarray(const.grid, dtype=np.int64),
            const.grid_origin[0], const.grid_origin[1], *const.bbox)


def run_search(kernel, const: Constellation, Lc, Yc, offset, k, parity, rowperm, hcol,
               use_h, cfg: DecoderConfig, noise_energy: float):
    res = kernel.search(
        np.ascontiguousarray(Lc, dtype=complex), np.ascontiguousarray(Yc, dtype=complex),
        float(offset), int(k), np.ascontiguousarray(parity, dtype=np.int64),
        np.ascontiguousarray(rowperm, dtype=np.int64),
        np.ascontiguousarray(const.points.real), np.ascontiguousarray(const.points.imag),
        np.ascontiguousarray(hcol, dtype=np.float64), bool(use_h), bool(cfg.spherical),
        float(cfg.alpha), float(cfg.delta), float(noise_energy), *_lattice_args(const),
        int(cfg.stack_capacity))
    status, out, cost, visited, peak, restarts = res
    if status == STATUS_OVERFLOW:
        raise StackOverflow(f"priority queue exceeded {cfg.stack_capacity} nodes")
    return np.asarray(out, dtype=np.int64), float(cost), DecodeStats(int(visited), int(peak), int(restarts))


class StackDecoder:
    """Sequential decoder for one encoder; cheap to build, reusable across trials."""

    def __init__(self, enc: SpaceTimeEncoder, cfg: DecoderConfig | None = None):
        if enc.kind != SRB:
            raise Unsupported("only SRB codes (or SRA with T == n_t) can be tree-decoded")
        self.enc = enc
        self.cfg = cfg or DecoderConfig()
        self.kernel = get_kernel(self.cfg.backend)
        self._parity: dict = {}

    def parity_for(self, order) -> np.ndarray:
        """F_q parity map for the column order ``order`` (info columns first)."""
        enc = self.enc
        k, N = enc.k, enc.N
        key = tuple(int(i) for i in order)
        if key not in self._parity:
            if k == N:
                P = np.zeros((k * enc.m, 0), dtype=np.int64)
            else:
                sys = systematize(enc.code, key[:k])
                P = expand_matrix(enc.code.ctx, sys.G[:, list(key[k:])])
            self._parity[key] = np.ascontiguousarray(P, dtype=np.int64)
        return self._parity[key]

    def decode(self, real: ChannelRealization, Y) -> DecodeResult:
        enc, cfg = self.enc, self.cfg
        p = enc.params
        if real.n_r < real.n_t:
            raise Unsupported("decoding needs n_r >= n_t")
        if (real.n_t, real.T, real.L) != (p.n_t, p.T, p.L):
            raise DimensionMismatch("channel dimensions do not match the code")
        n, T, L = p.n_t, p.T, p.L
        N = L * T
        perms = spatial_permutation(real.H) if cfg.spatial_perm else np.tile(np.arange(n), (L, 1))
        cm = build_cost_model(real, Y, perms)
        order = temporal_permutation(Y) if cfg.temporal_perm else np.arange(N)
        blocks = order // T
        Lc = cm.Lf[blocks]
        Yc = cm.Yt[blocks, :, order % T]
        rowperm = cm.perms[blocks]
        stats = DecodeStats()
        use_h = cfg.future_costing != "off"
        hcol = np.zeros(N)
        if use_h:
            try:
                bounds, v = column_bounds(Lc, Yc, enc.constellation, cfg.future_costing, self.kernel)
                stats.nodes_visited += v
                hcol = suffix_table(bounds)
            except SingularBlock:
                use_h = False
        noise = L * real.n_r * T
        out, cost, st = run_search(self.kernel, enc.constellation, Lc, Yc, cm.offset, enc.k,
                                   self.parity_for(order), rowperm, hcol, use_h, cfg, noise)
        stats.nodes_visited += st.nodes_visited
        stats.peak_stack = st.peak_stack
        stats.restarts = st.restarts
        X = np.empty((n, N), dtype=np.int64)
        s = out.reshape(N, n)
        for j in range(N):
            X[rowperm[j], order[j]] = s[j]
        return DecodeResult(X, cost, stats)


def stack_decode(enc: SpaceTimeEncoder, real: ChannelRealization, Y,
                 cfg: DecoderConfig | None = None) -> DecodeResult:
    return StackDecoder(enc, cfg).decode(real, Y)


# --- code-tree helpers (reference implementations of what the kernel does) ---

def to_symbols(const: Constellation, values) -> np.ndarray:
    """Map constellation points (complex) or field elements to field elements."""
    arr = np.asarray(values)
    if arr.size == 0:
        return arr.astype(np.int64).reshape(arr.shape)
    if np.iscomplexobj(arr) or arr.dtype.kind == "f":
        dist = np.abs(arr.reshape(-1)[:, None] - const.points[None, :])
        idx = dist.argmin(axis=1)
        if np.any(dist[np.arange(len(idx)), idx] > 1e-9):
            raise InvalidPrefix("prefix contains a value that is not a constellation point")
        return idx.reshape(arr.shape).astype(np.int64)
    arr = arr.astype(np.int64)
    if np.any((arr < 0) | (arr >= const.p)):
        raise InvalidPrefix("symbol outside the field")
    return arr


def tree_children(enc: SpaceTimeEncoder, prefix) -> list[int]:
    """E(p): every symbol below the information depth, then the unique parity symbol."""
    n, k, N = enc.params.n_t, enc.k, enc.N
    s = to_symbols(enc.constellation, prefix)
    d = len(s)
    if d > N * n:
        raise InvalidPrefix("prefix longer than a codeword")
    if d == N * n:
        return []
    if d < k * n:
        return list(range(enc.params.q))
    info = s[:k * n]  # column-major string = symbol-major coordinates
    par = (info @ _parity_natural(enc)) % enc.params.q
    if not np.array_equal(par[:d - k * n], s[k * n:]):
        raise InvalidPrefix("prefix is not consistent with the code")
    return [int(par[d - k * n])]


@lru_cache(maxsize=64)
def _parity_natural(enc: SpaceTimeEncoder) -> np.ndarray:
    return StackDecoder(enc).parity_for(range(enc.N))


def sphere_children(enc: SpaceTimeEncoder, cm: CostModel, prefix, threshold: float) -> list[int]:
    """{t in E(p) : f(pt) <= threshold - C(p)} via circle enumeration.

    Uses the natural column order and the spatial permutation stored in ``cm``.
    """
    from ..lattice import enumerate_circle

    const = enc.constellation
    n = cm.n
    s = to_symbols(const, prefix)
    cands = tree_children(enc, s)
    pts = const.points
    base = cm.offset
    for pos in range(len(s)):
        j, r = divmod(pos, n)
        Lm, y = cm.column(j)
        base += step_cost(Lm, y, r, pts[s[j * n:pos + 1]])
    budget = threshold - base
    d = len(s)
    if not cands or budget < 0:
        return []
    j, r = divmod(d, n)
    Lm, y = cm.column(j)
    head = pts[s[j * n:d]]
    if len(cands) == 1 or not const.is_lattice or abs(Lm[r, r]) < 1e-12:
        pool = cands
    else:
        u = y[r] - sum(Lm[r, t] * head[t] for t in range(r))
        h = Lm[r, r].real
        pool, _ = enumerate_circle(const, u / h, math.sqrt(budget) / h)
    return [z for z in pool if step_cost(Lm, y, r, list(head) + [pts[z]]) <= budget]


# --- exhaustive ML ---

@lru_cache(maxsize=8)
def _complex_codebook(enc: SpaceTimeEncoder) -> tuple[np.ndarray, np.ndarray]:
    words = all_symbol_codewords(enc)
    return words, enc.constellation.points[words]


def codebook_costs(enc: SpaceTimeEncoder, real: ChannelRealization, Y) -> np.ndarray:
    _, Xc = _complex_codebook(enc)
    L, T = real.L, real.T
    Xb = Xc.reshape(len(Xc), real.n_t, L, T).transpose(0, 2, 1, 3)  # (M, L, n_t, T)
    HX = np.einsum("lrt,mltc->mlrc", real.rho * real.H, Xb)
    return np.sum(np.abs(np.asarray(Y)[None] - HX) ** 2, axis=(1, 2, 3))


def exhaustive_ml(enc: SpaceTimeEncoder, real: ChannelRealization, Y,
                  limit: int = 10**6) -> DecodeResult:
    """Brute-force argmin over the codebook (first index wins ties)."""
    size = enc.params.q ** (enc.k * enc.m)
    if size > limit:
        raise TooLarge(f"codebook of {size} words exceeds {limit}")
    words, _ = _complex_codebook(enc)
    costs = codebook_costs(enc, real, Y)
    i = int(np.argmin(costs))
    return DecodeResult(words[i].copy(), float(costs[i]), DecodeStats(len(words), 0, 0))


# --- linear dispersion effective channels ---

def ld_effective_channel(H_blocks, dispersion, rho: float) -> np.ndarray:
    """Columns vec(rho [H_1 A_i^(1) ... H_L A_i^(L)]), column-major vec.

    ``dispersion`` has shape (K, n_t, L*T); the result is (n_r*L*T, K).
    """
    H = np.asarray(H_blocks, dtype=complex)
    A = np.asarray(dispersion, dtype=complex)
    L, n_r, n_t = H.shape
    if A.ndim != 3 or A.shape[1] != n_t or A.shape[2] % L:
        raise DimensionMismatch("dispersion matrices must be K x n_t x (L*T)")
    T = A.shape[2] // L
    Ab = A.reshape(len(A), n_t, L, T).transpose(0, 2, 1, 3)  # (K, L, n_t, T)
    HA = rho * np.einsum("lrt,kltc->klrc", H, Ab)  # (K, L, n_r, T)
    # column-major vec of the n_r x (L*T) matrix
    cols = HA.transpose(0, 1, 3, 2).reshape(len(A), L * T * n_r)
    return cols.T.copy()


def decode_linear(Heff, y, const: Constellation, cfg: DecoderConfig | None = None) -> DecodeResult:
    """ML detection of x in A^K from y = Heff x + w, as a single-column tree."""
    cfg = cfg or DecoderConfig()
    Heff = np.asarray(Heff, dtype=complex)
    y = np.asarray(y, dtype=complex).reshape(-1)
    rows, K = Heff.shape
    if len(y) != rows:
        raise DimensionMismatch("observation length does not match the channel")
    Q, Lm = ql_decompose(Heff)
    yt = Q.conj().T @ y
    offset = max(float(np.sum(np.abs(y) ** 2) - np.sum(np.abs(yt) ** 2)), 0.0) if rows > K else 0.0
    # a single column has no future columns, so future costing is moot
    out, cost, stats = run_search(get_kernel(cfg.backend), const, Lm[None], yt[None], offset, 1,
                                  np.zeros((K, 0), dtype=np.int64), np.arange(K)[None],
                                  np.zeros(1), False, cfg, float(rows))
    return DecodeResult(out, cost, stats)
