"""Regenerate the frozen oracle values in tests/oracle_values.py.

Independent of the package: field arithmetic uses sympy's GF(p) polynomial
tools, ranks use sympy DomainMatrix over GF(p), lattice coset representatives
come from a brute-force nearest search. Run: python3 tools/derive_oracles.py
"""
import itertools
import pprint

from sympy import GF, ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem, gf_add
from sympy.polys.matrices import DomainMatrix


def code_to_poly(n, p, m):
    c = [(n // p**i) % p for i in range(m)]
    return [ZZ(v) for v in reversed(c)]  # sympy lists are high degree first


def poly_to_code(f, p):
    return sum(int(v) * p**i for i, v in enumerate(reversed(f)))


class Field:
    def __init__(self, p, m):
        self.p, self.m = p, m
        if m == 1:
            self.f = [ZZ(1), ZZ(0)]
        else:
            for n in range(p**m):
                c = [(n // p**i) % p for i in range(m)]
                if c[0] == 0:
                    continue
                f = [ZZ(1)] + [ZZ(v) for v in reversed(c)]
                if gf_irreducible_p(f, p, ZZ):
                    self.f = f
                    break
        order = p**m - 1
        self.alpha = next(a for a in range(1, p**m) if self.order_of(a) == order)

    def modulus(self):
        return tuple(int(v) for v in reversed(self.f))

    def mul(self, a, b):
        pa, pb = code_to_poly(a, self.p, self.m), code_to_poly(b, self.p, self.m)
        return poly_to_code(gf_rem(gf_mul(pa, pb, self.p, ZZ), self.f, self.p, ZZ), self.p)

    def add(self, a, b):
        pa, pb = code_to_poly(a, self.p, self.m), code_to_poly(b, self.p, self.m)
        return poly_to_code(gf_add(pa, pb, self.p, ZZ), self.p)

    def pow(self, a, e):
        if e == 0:
            return 1
        return poly_to_code(gf_pow_mod(code_to_poly(a, self.p, self.m), e, self.f, self.p, ZZ), self.p)

    def order_of(self, a):
        x, k = a, 1
        while x != 1:
            x = self.mul(x, a)
            k += 1
            if k > self.p**self.m:
                return 0
        return k

    def coords(self, a):
        return [(a // self.p**i) % self.p for i in range(self.m)]


def lrs(F, N, L, k):
    r = N // L
    beta = [F.p**j for j in range(r)]
    G = [[0] * N for _ in range(k)]
    for l in range(L):
        a = F.pow(F.alpha, l)
        for i in range(k):
            norm = 1
            for j in range(i):
                norm = F.mul(norm, F.pow(a, F.p**j))
            for j in range(r):
                G[i][l * r + j] = F.mul(F.pow(beta[j], F.p**i), norm)
    return G


def systematic(F, G, cols):
    """Row-reduce so the chosen columns form I_k (inverse via exhaustive search)."""
    k = len(G)
    A = [[G[i][c] for c in cols] for i in range(k)]
    inv = {x: y for x in range(1, F.p**F.m) for y in range(1, F.p**F.m) if F.mul(x, y) == 1}
    M = [row[:] for row in G]
    for c_i, c in enumerate(cols):
        piv = next(i for i in range(c_i, k) if M[i][c])
        M[c_i], M[piv] = M[piv], M[c_i]
        s = inv[M[c_i][c]]
        M[c_i] = [F.mul(s, v) for v in M[c_i]]
        for i in range(k):
            if i != c_i and M[i][c]:
                f = M[i][c]
                M[i] = [F.add(v, F.mul(neg(F, f), w)) for v, w in zip(M[i], M[c_i])]
    return M


def neg(F, a):
    return poly_to_code([(-v) % F.p for v in code_to_poly(a, F.p, F.m)], F.p)


def rank_gf(rows, p):
    if not rows or not rows[0]:
        return 0
    return DomainMatrix([[GF(p)(v) for v in r] for r in rows], (len(rows), len(rows[0])), GF(p)).rank()


def weight_distribution(F, G, N, L):
    r = N // L
    k = len(G)
    sr, ham = {}, {}
    for u in itertools.product(range(F.p**F.m), repeat=k):
        c = [0] * N
        for i in range(k):
            for j in range(N):
                c[j] = F.add(c[j], F.mul(u[i], G[i][j]))
        w = 0
        for l in range(L):
            cols = [F.coords(c[l * r + j]) for j in range(r)]
            rows = [[cols[j][i] for j in range(r)] for i in range(F.m)]
            w += rank_gf(rows, F.p)
        sr[w] = sr.get(w, 0) + 1
        h = sum(1 for v in c if v)
        ham[h] = ham.get(h, 0) + 1
    return dict(sorted(sr.items())), dict(sorted(ham.items()))


def gauss_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def eis_mul(x, y):
    # (a + b w)(c + d w) with w^2 = -1 - w
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c - b * d)


def coset_reps(kind, pi):
    mul = gauss_mul if kind == "gaussian" else eis_mul
    norm = (lambda z: z[0] ** 2 + z[1] ** 2) if kind == "gaussian" else \
        (lambda z: z[0] ** 2 - z[0] * z[1] + z[1] ** 2)
    p = norm(pi)
    reps, ties = [], []
    R = int(p**0.5) + 3
    for z in range(p):
        best = []
        for t in itertools.product(range(-R, R + 1), repeat=2):
            tp = mul(t, pi)
            w = (z - tp[0], -tp[1])
            best.append((norm(w), w))
        best.sort()
        if best[0][0] == best[1][0]:
            ties.append(z)
        reps.append(best[0][1])
    return reps, ties, sum(norm(w) for w in reps)


def main():
    out = {}
    out["fields"] = {}
    for p, m in [(5, 1), (5, 2), (3, 2), (7, 2), (17, 2), (2, 3), (3, 3), (2, 4)]:
        F = Field(p, m)
        out["fields"][(p, m)] = {"modulus": F.modulus(), "alpha": F.alpha}
    F = Field(5, 2)
    out["f25_products"] = [(a, b, F.mul(a, b)) for a, b in [(7, 13), (24, 24), (5, 5), (11, 17), (3, 20)]]
    G = lrs(F, 4, 2, 2)
    out["lrs_5_2_4_2_2"] = G
    out["lrs_5_2_4_2_3"] = lrs(F, 4, 2, 3)
    out["lrs_systematic_01"] = systematic(F, G, [0, 1])
    out["lrs_systematic_23"] = systematic(F, G, [2, 3])
    sr, ham = weight_distribution(F, G, 4, 2)
    out["sum_rank_weights_k2"] = sr
    out["hamming_weights_k2"] = ham
    out["lattice"] = {}
    for kind, pi in [("gaussian", (2, 1)), ("gaussian", (3, 2)), ("gaussian", (4, 1)),
                     ("eisenstein", (3, 1)), ("eisenstein", (4, 1)), ("eisenstein", (9, 19))]:
        reps, ties, energy = coset_reps(kind, pi)
        entry = {"energy": energy, "ties": ties}
        if len(reps) <= 17:
            entry["reps"] = reps
        out["lattice"][(kind, pi)] = entry
    pprint.pprint(out, width=100, sort_dicts=False)


if __name__ == "__main__":
    main()
