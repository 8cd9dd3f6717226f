# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled best-first tree search kernel (mirror of ``_search.py``)."""

from libc.math cimport ceil, floor, sqrt, fabs
from libc.stdlib cimport malloc, realloc, free
from libc.stdint cimport int64_t

cdef enum:
    LATTICE_NONE = 0
    LATTICE_GAUSSIAN = 1
    LATTICE_EISENSTEIN = 2
    STATUS_OK = 0
    STATUS_OVERFLOW = 1
    STATUS_NOMEM = 2

cdef double EPS = 1e-9
cdef double FAR = 1e9
cdef double TINY = 1e-12


cdef struct Nodes:
    int64_t *parent
    int *sym
    int *depth
    double *cost
    double *key
    int64_t *leg
    int64_t size
    int64_t cap


cdef struct Heap:
    int64_t *items
    int64_t size
    int64_t cap


cdef int nodes_grow(Nodes *nd) noexcept nogil:
    cdef int64_t cap = nd.cap * 2 if nd.cap > 0 else 1024
    cdef void *p
    p = realloc(nd.parent, cap * sizeof(int64_t))
    if p == NULL:
        return -1
    nd.parent = <int64_t *> p
    p = realloc(nd.sym, cap * sizeof(int))
    if p == NULL:
        return -1
    nd.sym = <int *> p
    p = realloc(nd.depth, cap * sizeof(int))
    if p == NULL:
        return -1
    nd.depth = <int *> p
    p = realloc(nd.cost, cap * sizeof(double))
    if p == NULL:
        return -1
    nd.cost = <double *> p
    p = realloc(nd.key, cap * sizeof(double))
    if p == NULL:
        return -1
    nd.key = <double *> p
    p = realloc(nd.leg, cap * sizeof(int64_t))
    if p == NULL:
        return -1
    nd.leg = <int64_t *> p
    nd.cap = cap
    return 0


cdef inline int64_t nodes_add(Nodes *nd, int64_t parent, int sym, int depth, double cost,
                              double key, int64_t leg) noexcept nogil:
    if nd.size == nd.cap:
        if nodes_grow(nd) != 0:
            return -1
    cdef int64_t i = nd.size
    nd.parent[i] = parent
    nd.sym[i] = sym
    nd.depth[i] = depth
    nd.cost[i] = cost
    nd.key[i] = key
    nd.leg[i] = leg
    nd.size += 1
    return i


cdef inline bint before(Nodes *nd, int64_t a, int64_t b) noexcept nogil:
    # (key, -depth, insertion order)
    if nd.key[a] != nd.key[b]:
        return nd.key[a] < nd.key[b]
    if nd.depth[a] != nd.depth[b]:
        return nd.depth[a] > nd.depth[b]
    return a < b


cdef int heap_push(Heap *h, Nodes *nd, int64_t item) noexcept nogil:
    cdef void *p
    cdef int64_t cap
    if h.size == h.cap:
        cap = h.cap * 2 if h.cap > 0 else 1024
        p = realloc(h.items, cap * sizeof(int64_t))
        if p == NULL:
            return -1
        h.items = <int64_t *> p
        h.cap = cap
    cdef int64_t i = h.size
    cdef int64_t up
    h.size += 1
    while i > 0:
        up = (i - 1) >> 1
        if before(nd, item, h.items[up]):
            h.items[i] = h.items[up]
            i = up
        else:
            break
    h.items[i] = item
    return 0


cdef int64_t heap_pop(Heap *h, Nodes *nd) noexcept nogil:
    cdef int64_t top = h.items[0]
    cdef int64_t last
    cdef int64_t i = 0
    cdef int64_t c
    h.size -= 1
    if h.size == 0:
        return top
    last = h.items[h.size]
    while True:
        c = 2 * i + 1
        if c >= h.size:
            break
        if c + 1 < h.size and before(nd, h.items[c + 1], h.items[c]):
            c += 1
        if before(nd, h.items[c], last):
            h.items[i] = h.items[c]
            i = c
        else:
            break
    h.items[i] = last
    return top


cdef inline double dmin(double a, double b) noexcept nogil:
    return a if a < b else b


cdef inline double dmax(double a, double b) noexcept nogil:
    return a if a > b else b


cdef inline int64_t imax64(int64_t a, int64_t b) noexcept nogil:
    return a if a > b else b


cdef inline int64_t imin64(int64_t a, int64_t b) noexcept nogil:
    return a if a < b else b


cdef bint circle_region(int kind, double cre, double cim, double r, int64_t lo_a, int64_t lo_b,
                        int64_t hi_a, int64_t hi_b, double xmin, double xmax, double ymin,
                        double ymax, int64_t *out) noexcept nogil:
    """Same arithmetic as lattice.circle_region_raw; False when empty."""
    cdef double SQRT3 = sqrt(3.0)
    cdef double HALF = SQRT3 / 2.0
    cdef double cx = dmin(dmax(cre, xmin), xmax)
    cdef double cy = dmin(dmax(cim, ymin), ymax)
    cdef double dx = cre - cx
    cdef double dy = cim - cy
    cdef double wx = xmax - xmin
    cdef double wy = ymax - ymin
    cdef double x0, xi
    cdef int64_t i0, i1, j0, j1, jmax, imx, shift
    r = dmin(r, sqrt(dx * dx + dy * dy) + sqrt(wx * wx + wy * wy) + 2.0)
    if kind == LATTICE_GAUSSIAN:
        i0 = imax64(<int64_t> ceil(cre - r - EPS), lo_a)
        i1 = imin64(<int64_t> floor(cre + r + EPS), hi_a)
        j0 = imax64(<int64_t> ceil(cim - r - EPS), lo_b)
        j1 = imin64(<int64_t> floor(cim + r + EPS), hi_b)
        if i1 < i0 or j1 < j0:
            return False
        out[0] = i0
        out[1] = i1
        out[2] = j0
        out[3] = j1
        return True
    j0 = <int64_t> ceil((cim - r) / HALF - EPS)
    if j0 & 1:
        x0 = floor(cre - r * SQRT3 - 0.5 - EPS) + 0.5
    else:
        x0 = floor(cre - r * SQRT3 - EPS)
    jmax = <int64_t> floor((cim + r) / HALF + EPS) - j0
    xi = x0 + 0.5 * <double> jmax
    if (j0 + jmax) & 1:
        imx = <int64_t> (ceil(cre + r * SQRT3 - 0.5 + EPS) + 0.5 - xi)
    else:
        imx = <int64_t> (ceil(cre + r * SQRT3 + EPS) - xi)
    if jmax < 0 or imx < 0:
        return False
    if j0 < lo_b:
        x0 += 0.5 * <double> (lo_b - j0)
        jmax -= lo_b - j0
        j0 = lo_b
    if j0 + jmax > hi_b:
        jmax = hi_b - j0
    if jmax < 0:
        return False
    shift = imax64(0, <int64_t> floor(xmin - 0.5 * <double> jmax - x0))
    x0 += <double> shift
    imx -= shift
    imx -= imax64(0, <int64_t> floor(x0 + <double> imx - xmax))
    if imx < 0:
        return False
    out[0] = <int64_t> floor(x0 + 0.5 * <double> j0 + 0.5)
    out[1] = imx
    out[2] = j0
    out[3] = jmax
    return True


cdef int run(const double complex[:, :, ::1] Lc, const double complex[:, ::1] Yc, double offset,
             int k, const int64_t[:, ::1] parity, const int64_t[:, ::1] rowperm,
             const double[::1] pts_re, const double[::1] pts_im, const double[::1] hcol,
             bint use_h, bint sphere, double alpha, double delta, double noise_energy,
             int lattice, const int64_t[:, ::1] grid, int64_t lo_a, int64_t lo_b,
             double xmin, double xmax, double ymin, double ymax, int64_t capacity,
             int *out, double *out_cost, int64_t *stats) noexcept nogil:
    cdef int N = Yc.shape[0]
    cdef int n = Yc.shape[1]
    cdef int q = pts_re.shape[0]
    cdef int depth_total = N * n
    cdef int info_depth = k * n
    cdef int npar = (N - k) * n
    cdef int64_t hi_a = lo_a + grid.shape[0] - 1
    cdef int64_t hi_b = lo_b + grid.shape[1] - 1
    cdef int64_t visited = 0, peak = 0, restarts = 0
    cdef double threshold = alpha * noise_energy
    cdef Nodes nd
    cdef Heap hp
    cdef int *prev = <int *> malloc((n + 1) * sizeof(int))
    cdef int *cand = <int *> malloc((q + 1) * sizeof(int))
    cdef int64_t *coords = <int64_t *> malloc((info_depth + 1) * sizeof(int64_t))
    cdef int64_t *pc = <int64_t *> malloc((npar + 1) * sizeof(int64_t))
    cdef int *legs = NULL
    cdef int64_t nlegs = 0, legcap = 0
    cdef int64_t region[4]
    cdef int64_t node, walk, child, found, ncand, ia, ib, aa, bb, jj, ii, t2, g0, g1
    cdef int d, j, s, t, z, status = STATUS_OK, pos, jc
    cdef double lr, li, ur, ui, xr, xi, hr, him, base, budget, cre, cim, radius
    cdef double er, ei, f, c, hval
    cdef void *p
    cdef bint exhaustive
    nd.parent = NULL
    nd.sym = NULL
    nd.depth = NULL
    nd.cost = NULL
    nd.key = NULL
    nd.leg = NULL
    nd.size = 0
    nd.cap = 0
    hp.items = NULL
    hp.size = 0
    hp.cap = 0
    g0 = grid.shape[0]
    g1 = grid.shape[1]
    if prev == NULL or cand == NULL or coords == NULL or pc == NULL:
        status = STATUS_NOMEM
    while status == STATUS_OK:
        nd.size = 0
        hp.size = 0
        nlegs = 0
        if nodes_add(&nd, -1, -1, 0, offset, offset, -1) < 0 or heap_push(&hp, &nd, 0) < 0:
            status = STATUS_NOMEM
            break
        if peak < 1:
            peak = 1
        found = -1
        while hp.size > 0:
            node = heap_pop(&hp, &nd)
            d = nd.depth[node]
            if d == depth_total:
                found = node
                break
            j = d // n
            s = d - j * n
            walk = node
            for t in range(s - 1, -1, -1):
                prev[t] = nd.sym[walk]
                walk = nd.parent[walk]
            ur = Yc[j, s].real
            ui = Yc[j, s].imag
            for t in range(s):
                lr = Lc[j, s, t].real
                li = Lc[j, s, t].imag
                xr = pts_re[prev[t]]
                xi = pts_im[prev[t]]
                ur = ur - (lr * xr - li * xi)
                ui = ui - (lr * xi + li * xr)
            hr = Lc[j, s, s].real
            him = Lc[j, s, s].imag
            base = nd.cost[node]
            budget = threshold - base
            ncand = 0
            exhaustive = False
            if d >= info_depth:
                if d == info_depth:
                    if nlegs == legcap:
                        legcap = legcap * 2 if legcap > 0 else 64
                        p = realloc(legs, legcap * (npar + 1) * sizeof(int))
                        if p == NULL:
                            status = STATUS_NOMEM
                            break
                        legs = <int *> p
                    walk = node
                    for pos in range(info_depth - 1, -1, -1):
                        jc = pos // n
                        coords[jc * n + rowperm[jc, pos - jc * n]] = nd.sym[walk]
                        walk = nd.parent[walk]
                    for t in range(npar):
                        pc[t] = 0
                    for pos in range(info_depth):
                        if coords[pos] != 0:
                            for t in range(npar):
                                pc[t] += coords[pos] * parity[pos, t]
                    for jj in range(N - k):
                        for t in range(n):
                            legs[nlegs * (npar + 1) + jj * n + t] = <int> (pc[jj * n + rowperm[k + jj, t]] % q)
                    nd.leg[node] = nlegs
                    nlegs += 1
                cand[0] = legs[nd.leg[node] * (npar + 1) + d - info_depth]
                ncand = 1
                visited += 1
            elif sphere and lattice != LATTICE_NONE and fabs(hr) >= TINY and him == 0.0:
                cre = ur / hr
                cim = ui / hr
                if fabs(cre) > FAR or fabs(cim) > FAR:
                    exhaustive = True
                else:
                    radius = sqrt(budget) / hr if budget > 0.0 else 0.0
                    if circle_region(lattice, cre, cim, radius, lo_a, lo_b, hi_a, hi_b,
                                     xmin, xmax, ymin, ymax, region):
                        if lattice == LATTICE_GAUSSIAN:
                            visited += (region[1] - region[0] + 1) * (region[3] - region[2] + 1)
                            for bb in range(region[2], region[3] + 1):
                                for aa in range(region[0], region[1] + 1):
                                    ia = aa - lo_a
                                    ib = bb - lo_b
                                    if 0 <= ia < g0 and 0 <= ib < g1 and grid[ia, ib] >= 0:
                                        cand[ncand] = <int> grid[ia, ib]
                                        ncand += 1
                        else:
                            visited += (region[1] + 1) * (region[3] + 1)
                            for jj in range(region[3] + 1):
                                for ii in range(region[1] + 1):
                                    ia = region[0] + jj + ii - lo_a
                                    ib = region[2] + jj - lo_b
                                    if 0 <= ia < g0 and 0 <= ib < g1 and grid[ia, ib] >= 0:
                                        cand[ncand] = <int> grid[ia, ib]
                                        ncand += 1
            else:
                exhaustive = True
            if exhaustive:
                for t in range(q):
                    cand[t] = t
                ncand = q
                visited += q
            hval = hcol[j] if use_h else 0.0
            for t2 in range(ncand):
                z = cand[t2]
                xr = pts_re[z]
                xi = pts_im[z]
                er = ur - (hr * xr - him * xi)
                ei = ui - (hr * xi + him * xr)
                f = er * er + ei * ei
                if sphere and f > budget:
                    continue
                c = base + f
                child = nodes_add(&nd, node, z, d + 1, c, c + hval, nd.leg[node])
                if child < 0 or heap_push(&hp, &nd, child) < 0:
                    status = STATUS_NOMEM
                    break
            if status != STATUS_OK:
                break
            if hp.size > peak:
                peak = hp.size
            if hp.size > capacity:
                status = STATUS_OVERFLOW
                break
        if status != STATUS_OK:
            break
        if found >= 0:
            walk = found
            for t in range(depth_total - 1, -1, -1):
                out[t] = nd.sym[walk]
                walk = nd.parent[walk]
            out_cost[0] = nd.cost[found]
            break
        alpha += delta
        threshold = alpha * noise_energy
        restarts += 1
        if not sphere:
            # an unpruned tree always reaches a leaf
            status = STATUS_NOMEM
            break
    stats[0] = visited
    stats[1] = peak
    stats[2] = restarts
    free(nd.parent)
    free(nd.sym)
    free(nd.depth)
    free(nd.cost)
    free(nd.key)
    free(nd.leg)
    free(hp.items)
    free(prev)
    free(cand)
    free(coords)
    free(pc)
    free(legs)
    return status


def search(Lc, Yc, double offset, int k, parity, rowperm, pts_re, pts_im, hcol, bint use_h,
           bint sphere, double alpha, double delta, double noise_energy, int lattice, grid,
           int64_t lo_a, int64_t lo_b, double xmin, double xmax, double ymin, double ymax,
           int64_t capacity):
    """See ``_search.search``; returns ``(status, symbols, cost, visited, peak, restarts)``."""
    cdef const double complex[:, :, ::1] L_v = Lc
    cdef const double complex[:, ::1] Y_v = Yc
    cdef const int64_t[:, ::1] par_v = parity
    cdef const int64_t[:, ::1] perm_v = rowperm
    cdef const double[::1] re_v = pts_re
    cdef const double[::1] im_v = pts_im
    cdef const double[::1] h_v = hcol
    cdef const int64_t[:, ::1] g_v = grid
    cdef int total = Y_v.shape[0] * Y_v.shape[1]
    cdef int *out = <int *> malloc((total + 1) * sizeof(int))
    cdef double cost = 0.0
    cdef int64_t stats[3]
    cdef int status
    if out == NULL:
        raise MemoryError()
    with nogil:
        status = run(L_v, Y_v, offset, k, par_v, perm_v, re_v, im_v, h_v, use_h, sphere, alpha,
                     delta, noise_energy, lattice, g_v, lo_a, lo_b, xmin, xmax, ymin, ymax,
                     capacity, out, &cost, stats)
    try:
        if status == STATUS_NOMEM:
            raise MemoryError("search kernel ran out of memory")
        if status == STATUS_OVERFLOW:
            return STATUS_OVERFLOW, None, 0.0, stats[0], stats[1], stats[2]
        return STATUS_OK, [out[t] for t in range(total)], cost, stats[0], stats[1], stats[2]
    finally:
        free(out)
