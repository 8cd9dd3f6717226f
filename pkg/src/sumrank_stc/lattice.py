"""Gaussian and Eisenstein integer constellations and circle enumeration.

Lattice points are integer pairs ``(a, b)`` meaning ``a + b*i`` (Gaussian) or
``a + b*w`` with ``w = exp(2*pi*i/3)`` (Eisenstein). Complex values are only
materialized for the channel and for geometric tests.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .galois import is_prime

GAUSSIAN = "gaussian"
EISENSTEIN = "eisenstein"
PSK = "psk"
KINDS = (GAUSSIAN, EISENSTEIN, PSK)

SQRT3 = math.sqrt(3.0)
HALF_SQRT3 = SQRT3 / 2.0
EPS = 1e-9


class ZeroModulus(ValueError):
    pass


class NotPrimeNorm(ValueError):
    pass


# --- exact ring arithmetic on integer pairs ---

def ring_mul(kind: str, x, y) -> tuple[int, int]:
    a, b = x
    c, d = y
    if kind == GAUSSIAN:
        return (a * c - b * d, a * d + b * c)
    # w^2 = -1 - w
    return (a * c - b * d, a * d + b * c - b * d)


def ring_conj(kind: str, x) -> tuple[int, int]:
    a, b = x
    if kind == GAUSSIAN:
        return (a, -b)
    return (a - b, -b)


def ring_norm(kind: str, x) -> int:
    a, b = x
    if kind == GAUSSIAN:
        return a * a + b * b
    return a * a - a * b + b * b


def to_complex(kind: str, x) -> complex:
    a, b = x
    if kind == GAUSSIAN:
        return complex(a, b)
    return complex(a - 0.5 * b, b * HALF_SQRT3)


def coords_to_complex(kind: str, coords) -> np.ndarray:
    """Vectorized :func:`to_complex` over an (..., 2) integer array."""
    coords = np.asarray(coords)
    a = coords[..., 0].astype(np.float64)
    b = coords[..., 1].astype(np.float64)
    if kind == GAUSSIAN:
        return a + 1j * b
    return (a - 0.5 * b) + 1j * (b * HALF_SQRT3)


def _round_half_down(x: float) -> int:
    return math.ceil(x - 0.5)


def _better(kind: str, cand, best) -> bool:
    """Tie rule: smaller real part, then smaller imaginary part."""
    if kind == GAUSSIAN:
        return cand < best
    (a, b), (c, d) = cand, best
    return (2 * a - b, b) < (2 * c - d, d)


def quantize(kind: str, z: complex) -> tuple[int, int]:
    """Nearest lattice point to ``z`` as an integer pair."""
    z = complex(z)
    if kind == GAUSSIAN:
        return (_round_half_down(z.real), _round_half_down(z.imag))
    if kind != EISENSTEIN:
        raise ValueError(f"no lattice for kind {kind!r}")
    # two cosets of the sublattice Z + i*sqrt(3)*Z
    r1, s1 = _round_half_down(z.real), _round_half_down(z.imag / SQRT3)
    w = z - complex(-0.5, HALF_SQRT3)
    r2, s2 = _round_half_down(w.real), _round_half_down(w.imag / SQRT3)
    cands = [(r1 + s1, 2 * s1), (r2 + s2, 2 * s2 + 1)]
    best = None
    bestd = math.inf
    for cand in cands:
        dist = abs(z - to_complex(EISENSTEIN, cand))
        if dist < bestd or (dist == bestd and _better(kind, cand, best)):
            best, bestd = cand, dist
    return best


def quantize_ratio(kind: str, num, den: int) -> tuple[int, int]:
    """Exact nearest lattice point to ``num / den`` (``den`` a positive integer)."""
    X, Y = num
    if kind == GAUSSIAN:
        # ceil(x/den - 1/2) in integers
        return (-((den - 2 * X) // (2 * den)), -((den - 2 * Y) // (2 * den)))
    a0, b0 = quantize(kind, to_complex(kind, (X, Y)) / den)
    best, bestd = None, None
    for da in (-1, 0, 1):
        for db in (-1, 0, 1):
            cand = (a0 + da, b0 + db)
            d = ring_norm(kind, (X - den * cand[0], Y - den * cand[1]))
            if bestd is None or d < bestd or (d == bestd and _better(kind, cand, best)):
                best, bestd = cand, d
    return best


def modulo(kind: str, pi, z) -> tuple[int, int]:
    """z - pi * Q(z / pi), computed exactly."""
    pi = tuple(int(v) for v in pi)
    z = tuple(int(v) for v in z)
    n = ring_norm(kind, pi)
    if n == 0:
        raise ZeroModulus("modulus must be nonzero")
    q = quantize_ratio(kind, ring_mul(kind, z, ring_conj(kind, pi)), n)
    pq = ring_mul(kind, pi, q)
    return (z[0] - pq[0], z[1] - pq[1])


# --- constellations ---

@dataclass(frozen=True, eq=False)
class Constellation:
    """A q-point alphabet with the bijection phi: F_q -> A stored by index.

    ``coords[z]`` is the lattice pair of ``phi(z)`` (lattice kinds only) and
    ``points[z]`` its complex value. ``grid`` maps lattice pairs inside the
    integer bounding box to field elements (-1 for non-members).
    """

    kind: str
    p: int
    pi: tuple | None
    points: np.ndarray
    coords: np.ndarray | None = None
    grid: np.ndarray | None = field(default=None, repr=False)
    grid_origin: tuple = (0, 0)
    bbox: tuple = (0.0, 0.0, 0.0, 0.0)  # xmin, xmax, ymin, ymax

    @property
    def q(self) -> int:
        return self.p

    @property
    def is_lattice(self) -> bool:
        return self.kind in (GAUSSIAN, EISENSTEIN)

    def phi(self, z: int) -> complex:
        return complex(self.points[int(z) % self.p])

    def lookup(self, pair) -> int:
        """Field element whose image is the lattice pair, or -1."""
        a, b = int(pair[0]) - self.grid_origin[0], int(pair[1]) - self.grid_origin[1]
        if 0 <= a < self.grid.shape[0] and 0 <= b < self.grid.shape[1]:
            return int(self.grid[a, b])
        return -1

    def energy(self) -> float:
        return float(np.sum(np.abs(self.points) ** 2))

    def describe(self) -> str:
        if self.kind == PSK:
            return f"{self.p}-PSK"
        a, b = self.pi
        unit = "i" if self.kind == GAUSSIAN else "w"
        tag = "Gauss" if self.kind == GAUSSIAN else "Eis"
        return f"{self.p}-{tag} (pi = {a} + {b}{unit})"


def build_constellation(kind: str, pi=None, p: int | None = None) -> Constellation:
    """Modulo-pi lattice constellation, or p-PSK when ``kind == 'psk'``."""
    if kind == PSK:
        if p is None or not is_prime(p):
            raise NotPrimeNorm(f"PSK size {p} is not prime")
        pts = np.exp(2j * np.pi * np.arange(p) / p)
        box = (float(pts.real.min()), float(pts.real.max()),
               float(pts.imag.min()), float(pts.imag.max()))
        return Constellation(PSK, p, None, pts, bbox=box)
    if kind not in (GAUSSIAN, EISENSTEIN):
        raise ValueError(f"unknown constellation kind {kind!r}")
    if pi is None:
        if p is None:
            raise ValueError("give either pi or the constellation size p")
        if not _admissible(kind, p):
            raise NotPrimeNorm(f"{p} is not the norm of a {kind} prime")
        pi = _table(kind).get(p) or _search_pi(kind, p)
    pi = (int(pi[0]), int(pi[1]))
    n = ring_norm(kind, pi)
    if not is_prime(n):
        raise NotPrimeNorm(f"norm of pi = {pi} is {n}, not a prime")
    coords = np.array([modulo(kind, pi, (z, 0)) for z in range(n)], dtype=np.int64)
    if len({tuple(c) for c in coords.tolist()}) != n:  # pragma: no cover - boundary ties
        raise NotPrimeNorm(f"pi = {pi} does not give distinct coset representatives")
    pts = coords_to_complex(kind, coords)
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    grid = -np.ones((hi[0] - lo[0] + 1, hi[1] - lo[1] + 1), dtype=np.int64)
    grid[coords[:, 0] - lo[0], coords[:, 1] - lo[1]] = np.arange(n)
    box = (float(pts.real.min()), float(pts.real.max()),
           float(pts.imag.min()), float(pts.imag.max()))
    return Constellation(kind, n, pi, pts, coords, grid, (int(lo[0]), int(lo[1])), box)


def member(const: Constellation, z) -> bool:
    """Constant-time test Q(z / pi) == 0."""
    if not const.is_lattice:
        raise ValueError("membership test needs a lattice constellation")
    z = (int(z[0]), int(z[1]))
    n = ring_norm(const.kind, const.pi)
    return quantize_ratio(const.kind, ring_mul(const.kind, z, ring_conj(const.kind, const.pi)), n) == (0, 0)


GAUSSIAN_TABLE = {
    5: (2, 1), 13: (3, 2), 17: (4, 1), 29: (5, 2), 41: (5, 4), 53: (7, 2),
    61: (6, 5), 73: (8, 3), 89: (8, 5), 97: (9, 4), 101: (10, 1), 109: (10, 3),
    113: (8, 7), 157: (6, 11), 241: (4, 15), 257: (1, 16), 373: (7, 18), 389: (10, 17),
}
# 29 is omitted: it is 2 mod 3 and so has no Eisenstein representation.
EISENSTEIN_TABLE = {
    7: (3, 1), 13: (4, 1), 19: (5, 2), 31: (6, 1), 37: (7, 3), 43: (7, 1),
    61: (9, 4), 67: (9, 2), 73: (9, 1), 79: (10, 3), 97: (11, 3), 103: (11, 2),
    109: (12, 5), 127: (13, 6), 241: (15, 16), 271: (9, 19), 277: (12, 19),
}


def _admissible(kind: str, p: int) -> bool:
    if not is_prime(p):
        return False
    return p % 4 == 1 if kind == GAUSSIAN else p % 3 == 1


def _table(kind: str) -> dict:
    return GAUSSIAN_TABLE if kind == GAUSSIAN else EISENSTEIN_TABLE


def _search_pi(kind: str, p: int) -> tuple[int, int]:
    a = 1
    while True:
        for b in range(1, a):
            if ring_norm(kind, (a, b)) == p:
                return (a, b)
        a += 1


def find_prime(kind: str, min_size: int) -> tuple[int, tuple[int, int]]:
    """Smallest admissible prime p >= min_size and an element pi with |pi|^2 = p."""
    if min_size < 2:
        raise ValueError("min_size must be at least 2")
    if kind not in (GAUSSIAN, EISENSTEIN):
        raise ValueError(f"no lattice for kind {kind!r}")
    table = _table(kind)
    p = min_size
    while not _admissible(kind, p):
        p += 1
    return p, table.get(p) or _search_pi(kind, p)


# --- circle enumeration ---

def circle_region_raw(kind: str, cre: float, cim: float, r: float, lo_a: int, lo_b: int,
                      hi_a: int, hi_b: int, xmin: float, xmax: float, ymin: float, ymax: float):
    """Clamped lattice region covering the disc |t - c| <= r.

    Gaussian: ``(i0, i1, j0, j1)`` with rows ``b = j0..j1`` and columns
    ``a = i0..i1``. Eisenstein: ``(a0, imax, j0, jmax)`` with rows
    ``b = j0 + j`` and ``a = a0 + j + i`` for ``0 <= i <= imax``,
    ``0 <= j <= jmax``. Returns None when the region is empty. The bounds
    err outward so that no point of the disc is lost to rounding.
    """
    # a radius this large already covers the whole bounding box
    cx = min(max(cre, xmin), xmax)
    cy = min(max(cim, ymin), ymax)
    dx, dy = cre - cx, cim - cy
    wx, wy = xmax - xmin, ymax - ymin
    r = min(r, math.sqrt(dx * dx + dy * dy) + math.sqrt(wx * wx + wy * wy) + 2.0)
    if kind == GAUSSIAN:
        i0 = max(math.ceil(cre - r - EPS), lo_a)
        i1 = min(math.floor(cre + r + EPS), hi_a)
        j0 = max(math.ceil(cim - r - EPS), lo_b)
        j1 = min(math.floor(cim + r + EPS), hi_b)
        if i1 < i0 or j1 < j0:
            return None
        return (i0, i1, j0, j1)
    j0 = math.ceil((cim - r) / HALF_SQRT3 - EPS)
    if j0 & 1:
        x0 = math.floor(cre - r * SQRT3 - 0.5 - EPS) + 0.5
    else:
        x0 = float(math.floor(cre - r * SQRT3 - EPS))
    jmax = math.floor((cim + r) / HALF_SQRT3 + EPS) - j0
    xi = x0 + 0.5 * jmax
    if (j0 + jmax) & 1:
        imax = int(math.ceil(cre + r * SQRT3 - 0.5 + EPS) + 0.5 - xi)
    else:
        imax = int(math.ceil(cre + r * SQRT3 + EPS) - xi)
    if jmax < 0 or imax < 0:
        return None
    # drop rows outside the constellation, sliding along the slanted edge
    if j0 < lo_b:
        x0 += 0.5 * (lo_b - j0)
        jmax -= lo_b - j0
        j0 = lo_b
    if j0 + jmax > hi_b:
        jmax = hi_b - j0
    if jmax < 0:
        return None
    shift = max(0, math.floor(xmin - 0.5 * jmax - x0))
    x0 += shift
    imax -= shift
    imax -= max(0, math.floor(x0 + imax - xmax))
    if imax < 0:
        return None
    return (int(math.floor(x0 + 0.5 * j0 + 0.5)), imax, j0, jmax)


def circle_region(const: Constellation, c: complex, r: float):
    lo_a, lo_b = const.grid_origin
    hi_a = lo_a + const.grid.shape[0] - 1
    hi_b = lo_b + const.grid.shape[1] - 1
    return circle_region_raw(const.kind, c.real, c.imag, r, lo_a, lo_b, hi_a, hi_b, *const.bbox)


def region_points(const: Constellation, region):
    """Lattice pairs of a region in enumeration order (rows outer)."""
    if region is None:
        return
    if const.kind == GAUSSIAN:
        i0, i1, j0, j1 = region
        for b in range(j0, j1 + 1):
            for a in range(i0, i1 + 1):
                yield a, b
    else:
        a0, imax, j0, jmax = region
        for j in range(jmax + 1):
            for i in range(imax + 1):
                yield a0 + j + i, j0 + j


def enumerate_circle(const: Constellation, c: complex, r: float) -> tuple[list[int], int]:
    """Field elements whose constellation points lie in |t - c| <= r.

    Returns the elements in enumeration order and the number of lattice
    points visited (every point of the clamped region, or q for PSK).
    """
    c = complex(c)
    if r < 0 or math.isnan(r):
        return [], 0
    r2 = r * r
    if not const.is_lattice:
        out = [z for z in range(const.p) if _dist2(const.points[z], c) <= r2]
        return out, const.p
    out, visited = [], 0
    for a, b in region_points(const, circle_region(const, c, r)):
        visited += 1
        z = const.lookup((a, b))
        if z >= 0 and _dist2(const.points[z], c) <= r2:
            out.append(z)
    return out, visited


def _dist2(t: complex, c: complex) -> float:
    dr = t.real - c.real
    di = t.imag - c.imag
    return dr * dr + di * di


def exhaustive_circle(const: Constellation, c: complex, r: float) -> list[int]:
    """Reference filter over all points."""
    c = complex(c)
    r2 = r * r
    return [z for z in range(const.p) if _dist2(const.points[z], c) <= r2]


# --- exact rank over Z[i] / Z[w] ---

def ring_rank(kind: str, mat) -> int:
    """Rank over C of a matrix with lattice-pair entries, shape (r, c, 2).

    Fraction-free elimination; exact because the ring is an integral domain.
    """
    rows = [[(int(e[0]), int(e[1])) for e in row] for row in np.asarray(mat).tolist()]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != (0, 0)), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f == (0, 0):
                continue
            new = []
            for x, y in zip(rows[i], rows[rank]):
                u = ring_mul(kind, p, x)
                v = ring_mul(kind, f, y)
                new.append((u[0] - v[0], u[1] - v[1]))
            rows[i] = new
        rank += 1
    return rank


def batch_ring_rank_2x2(kind: str, mats: np.ndarray) -> np.ndarray:
    """Exact ranks of many 2x2 lattice matrices, shape (n, 2, 2, 2)."""
    m = np.asarray(mats, dtype=np.int64)
    a, b, c, d = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]

    def mul(x, y):
        if kind == GAUSSIAN:
            return np.stack([x[:, 0] * y[:, 0] - x[:, 1] * y[:, 1],
                             x[:, 0] * y[:, 1] + x[:, 1] * y[:, 0]], axis=1)
        return np.stack([x[:, 0] * y[:, 0] - x[:, 1] * y[:, 1],
                         x[:, 0] * y[:, 1] + x[:, 1] * y[:, 0] - x[:, 1] * y[:, 1]], axis=1)

    det = mul(a, d) - mul(b, c)
    nonzero = np.any(m.reshape(len(m), -1) != 0, axis=1)
    full = np.any(det != 0, axis=1)
    return np.where(full, 2, np.where(nonzero, 1, 0))


def complex_rank(mat, tol: float = 1e-9) -> int:
    """Floating-point rank (used for PSK entries, which are not lattice points)."""
    s = np.linalg.svd(np.asarray(mat, dtype=complex), compute_uv=False)
    return int(np.sum(s > tol))
