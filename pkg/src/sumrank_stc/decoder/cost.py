"""QL factorization and the causal cost model of the SRB code tree.

A codeword matrix maps to a string column by column: position ``j*n_t + r``
holds row ``r`` of column ``j``. With ``rho*H_l = Q_l L_l`` the cost
``sum_l ||Y_l - rho H_l X_l||^2`` splits into per-position terms that only
involve earlier symbols of the same column.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..channel import ChannelRealization, DimensionMismatch


class Unsupported(ValueError):
    pass


def ql_decompose(M) -> tuple[np.ndarray, np.ndarray]:
    """M = Q L with orthonormal columns in Q and L lower-triangular.

    Obtained from a QR factorization of M with its columns reversed. The
    diagonal of L is made real and non-negative (imaginary part exactly 0).
    For a tall M the factorization is the reduced one (Q is n_r x n_t).
    Stacks of matrices (..., n_r, n_t) are factored independently.
    """
    M = np.asarray(M, dtype=complex)
    nr, nt = M.shape[-2:]
    if nr < nt:
        raise Unsupported("QL needs at least as many rows as columns")
    Qr, R = np.linalg.qr(M[..., ::-1])
    Q = Qr[..., ::-1]
    Lm = R[..., ::-1, ::-1]
    d = np.diagonal(Lm, axis1=-2, axis2=-1)
    mag = np.abs(d)
    phase = np.where(mag > 0, d / np.where(mag > 0, mag, 1), 1.0)
    Lm = np.conj(phase)[..., :, None] * Lm
    Q = Q * phase[..., None, :]
    idx = np.arange(nt)
    Lm[..., idx, idx] = mag
    return Q, np.tril(Lm)


@dataclass(frozen=True, eq=False)
class CostModel:
    Lf: np.ndarray  # (L, n_t, n_t) lower-triangular factors
    Yt: np.ndarray  # (L, n_t, T) rotated observations
    offset: float  # energy of Y outside the column space of rho*H (n_r > n_t)
    perms: np.ndarray  # (L, n_t) spatial permutation per block

    @property
    def L(self) -> int:
        return self.Lf.shape[0]

    @property
    def n(self) -> int:
        return self.Lf.shape[1]

    @property
    def T(self) -> int:
        return self.Yt.shape[2]

    def block_of_column(self, j: int) -> int:
        return j // self.T

    def column(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        """(L, y) for codeword column j."""
        l = self.block_of_column(j)
        return self.Lf[l], self.Yt[l, :, j % self.T]


def build_cost_model(real: ChannelRealization, Y, perms=None) -> CostModel:
    Y = np.asarray(Y, dtype=complex)
    L, n_r, n_t = real.H.shape
    if Y.shape != (L, n_r, real.T):
        raise DimensionMismatch(f"received shape {Y.shape} != {(L, n_r, real.T)}")
    if perms is None:
        perms = np.tile(np.arange(n_t), (L, 1))
    perms = np.asarray(perms)
    Hp = np.take_along_axis(real.H, perms[:, None, :], axis=2)
    Q, Lf = ql_decompose(real.rho * Hp)
    Yt = np.conj(np.swapaxes(Q, -1, -2)) @ Y
    offset = 0.0
    if n_r > n_t:
        offset = float(np.sum(np.abs(Y) ** 2) - np.sum(np.abs(Yt) ** 2))
    return CostModel(Lf, Yt, max(offset, 0.0), perms)


def step_cost(Lm, y, r: int, xs) -> float:
    """|y_r - sum_{s<=r} L[r, s] x_s|^2 in the kernel's real arithmetic."""
    ur, ui = float(y[r].real), float(y[r].imag)
    for s in range(r + 1):
        lr, li = float(Lm[r, s].real), float(Lm[r, s].imag)
        xr, xi = float(xs[s].real), float(xs[s].imag)
        ur = ur - (lr * xr - li * xi)
        ui = ui - (lr * xi + li * xr)
    return ur * ur + ui * ui


def prefix_cost_step(cm: CostModel, prefix, next_symbol) -> float:
    """Incremental cost of appending ``next_symbol`` (a complex point) to ``prefix``.

    Positions follow the column-major string order with spatial permutation
    already applied (position ``j*n + r`` is detected row ``r`` of column ``j``).
    """
    prefix = list(prefix)
    n = cm.n
    pos = len(prefix)
    if pos >= cm.n * cm.L * cm.T:
        raise ValueError("prefix is already a full string")
    j, r = divmod(pos, n)
    Lm, y = cm.column(j)
    xs = prefix[j * n:] + [next_symbol]
    return step_cost(Lm, y, r, xs)


def string_cost(cm: CostModel, string) -> float:
    """Sum of all incremental costs plus the constant offset."""
    string = list(string)
    total = cm.offset
    for pos in range(len(string)):
        total += prefix_cost_step(cm, string[:pos], string[pos])
    return total


def dense_effective_channel(cm: CostModel) -> np.ndarray:
    """Block-diagonal matrix with each L_l repeated T times."""
    n, L, T = cm.n, cm.L, cm.T
    out = np.zeros((n * L * T, n * L * T), dtype=complex)
    for j in range(L * T):
        out[j * n:(j + 1) * n, j * n:(j + 1) * n] = cm.Lf[j // T]
    return out


def block_cost(real: ChannelRealization, Y, X) -> float:
    """sum_l ||Y_l - rho H_l X_l||_F^2 for one complex codeword X (n_t x L*T)."""
    L, T = real.L, real.T
    Xb = np.asarray(X).reshape(real.n_t, L, T).transpose(1, 0, 2)
    return float(np.sum(np.abs(np.asarray(Y) - real.rho * (real.H @ Xb)) ** 2))
