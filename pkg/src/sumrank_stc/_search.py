"""Pure-Python best-first tree search kernel.

This is the reference implementation of the kernel compiled in
``_search_ext``; the two must produce identical strings, costs and counters.
All floating-point work is spelled out in real arithmetic in a fixed order so
that the compiled kernel can reproduce it bit for bit.
"""
from __future__ import annotations

import heapq
import math

from .lattice import EISENSTEIN, GAUSSIAN, circle_region_raw

LATTICE_NONE = 0
LATTICE_GAUSSIAN = 1
LATTICE_EISENSTEIN = 2

STATUS_OK = 0
STATUS_OVERFLOW = 1

FAR = 1e9
TINY = 1e-12


def search(Lc, Yc, offset, k, parity, rowperm, pts_re, pts_im, hcol, use_h,
           sphere, alpha, delta, noise_energy, lattice, grid, lo_a, lo_b,
           xmin, xmax, ymin, ymax, capacity):
    """Minimum-cost leaf of the code tree.

    ``Lc`` (N, n, n) and ``Yc`` (N, n) hold the lower-triangular factor and
    rotated observation for every string column. The first ``k`` columns are
    free; columns ``k..N-1`` follow from them through ``parity``.

    Returns ``(status, symbols, cost, visited, peak, restarts)``.
    """
    N, n = len(Yc), len(Yc[0])
    depth_total = N * n
    info_depth = k * n
    q = len(pts_re)
    pts_re = [float(v) for v in pts_re]
    pts_im = [float(v) for v in pts_im]
    lre = [[[float(Lc[j][r][s].real) for s in range(n)] for r in range(n)] for j in range(N)]
    lim = [[[float(Lc[j][r][s].imag) for s in range(n)] for r in range(n)] for j in range(N)]
    yre = [[float(Yc[j][r].real) for r in range(n)] for j in range(N)]
    yim = [[float(Yc[j][r].imag) for r in range(n)] for j in range(N)]
    rowperm = [[int(v) for v in row] for row in rowperm]
    hcol = [float(v) for v in hcol]
    par = [[int(v) for v in row] for row in parity] if k < N else []
    kind = {LATTICE_GAUSSIAN: GAUSSIAN, LATTICE_EISENSTEIN: EISENSTEIN}.get(lattice)
    if kind is not None:
        glist = [[int(v) for v in row] for row in grid]
        hi_a = lo_a + len(glist) - 1
        hi_b = lo_b + len(glist[0]) - 1

    visited = 0
    peak = 0
    restarts = 0
    threshold = alpha * noise_energy

    while True:
        parent = [-1]
        sym = [-1]
        depth = [0]
        cost = [float(offset)]
        leg = [-1]
        legs = []
        heap = [(float(offset), 0, 0, 0)]
        peak = max(peak, 1)
        found = -1
        while heap:
            _, _, _, node = heapq.heappop(heap)
            d = depth[node]
            if d == depth_total:
                found = node
                break
            j, s = divmod(d, n)
            # previous symbols of the current column, oldest first
            prev = [0] * s
            walk = node
            for t in range(s - 1, -1, -1):
                prev[t] = sym[walk]
                walk = parent[walk]
            lr, li = lre[j][s], lim[j][s]
            ur = yre[j][s]
            ui = yim[j][s]
            for t in range(s):
                xr, xi = pts_re[prev[t]], pts_im[prev[t]]
                ur = ur - (lr[t] * xr - li[t] * xi)
                ui = ui - (lr[t] * xi + li[t] * xr)
            hr, hi = lr[s], li[s]
            base = cost[node]
            budget = threshold - base

            if d >= info_depth:
                if d == info_depth:
                    leg[node] = len(legs)
                    legs.append(_parity_leg(node, parent, sym, k, n, N, rowperm, par, q))
                cand = [legs[leg[node]][d - info_depth]]
                visited += 1
            elif sphere and kind is not None and abs(hr) >= TINY and hi == 0.0:
                cre = ur / hr
                cim = ui / hr
                if abs(cre) > FAR or abs(cim) > FAR:
                    cand = list(range(q))
                    visited += q
                else:
                    radius = math.sqrt(budget) / hr if budget > 0.0 else 0.0
                    cand = []
                    region = circle_region_raw(kind, cre, cim, radius, lo_a, lo_b, hi_a, hi_b,
                                               xmin, xmax, ymin, ymax)
                    if region is not None:
                        if kind == GAUSSIAN:
                            i0, i1, j0, j1 = region
                            visited += (i1 - i0 + 1) * (j1 - j0 + 1)
                            for b in range(j0, j1 + 1):
                                for a in range(i0, i1 + 1):
                                    z = _lookup(glist, a - lo_a, b - lo_b)
                                    if z >= 0:
                                        cand.append(z)
                        else:
                            a0, imax, j0, jmax = region
                            visited += (imax + 1) * (jmax + 1)
                            for jj in range(jmax + 1):
                                for ii in range(imax + 1):
                                    z = _lookup(glist, a0 + jj + ii - lo_a, j0 + jj - lo_b)
                                    if z >= 0:
                                        cand.append(z)
            else:
                cand = range(q)
                visited += q

            # children sit at depth d + 1, inside column d // n
            hval = hcol[j] if use_h else 0.0
            for z in cand:
                xr, xi = pts_re[z], pts_im[z]
                er = ur - (hr * xr - hi * xi)
                ei = ui - (hr * xi + hi * xr)
                f = er * er + ei * ei
                if sphere and f > budget:
                    continue
                c = base + f
                child = len(parent)
                parent.append(node)
                sym.append(z)
                depth.append(d + 1)
                cost.append(c)
                leg.append(leg[node])
                heapq.heappush(heap, (c + hval, -(d + 1), child, child))
            if len(heap) > peak:
                peak = len(heap)
            if len(heap) > capacity:
                return STATUS_OVERFLOW, None, 0.0, visited, peak, restarts
        if found >= 0:
            out = [0] * depth_total
            walk = found
            for t in range(depth_total - 1, -1, -1):
                out[t] = sym[walk]
                walk = parent[walk]
            return STATUS_OK, out, cost[found], visited, peak, restarts
        if not sphere:  # pragma: no cover - an unpruned tree always reaches a leaf
            raise RuntimeError("search exhausted without reaching a leaf")
        alpha += delta
        threshold = alpha * noise_energy
        restarts += 1


def _lookup(grid, a, b):
    if 0 <= a < len(grid) and 0 <= b < len(grid[0]):
        return grid[a][b]
    return -1


def _parity_leg(node, parent, sym, k, n, N, rowperm, par, q):
    """Parity symbols (string order) for the information string ending at ``node``."""
    info = [0] * (k * n)
    walk = node
    for pos in range(k * n - 1, -1, -1):
        info[pos] = sym[walk]
        walk = parent[walk]
    coords = [0] * (k * n)
    for j in range(k):
        for s in range(n):
            coords[j * n + rowperm[j][s]] = info[j * n + s]
    npar = (N - k) * n
    pc = [0] * npar
    for i, x in enumerate(coords):
        if x:
            row = par[i]
            for t in range(npar):
                pc[t] += x * row[t]
    out = [0] * npar
    for jj in range(N - k):
        j = k + jj
        for s in range(n):
            out[jj * n + s] = pc[jj * n + rowperm[j][s]] % q
    return out
