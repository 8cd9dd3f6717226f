"""Prime fields F_p and their extensions F_{p^m}.

Extension elements are plain ints in ``range(p**m)``: digit ``i`` of the
base-``p`` expansion is the coefficient of ``x**i`` in the polynomial basis.
Matrices over the extension field are numpy object-free int arrays of such
codes; F_p-linear maps over the extension are expanded to F_p matrices with
:func:`expand_matrix` so that bulk encoding is a single modular matmul.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

TABLE_LIMIT = 1 << 16


class NotPrime(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists low -> high, no trailing zeros ---

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = _trim(a)
    f = _trim(f)
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) >= len(f):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(f)
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a = _trim(a)
    return a


def _poly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_mod(out, f, p)


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _x_pow_mod(e, f, p):
    result, base = [1], [0, 1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def is_irreducible(f, p: int) -> bool:
    """Ben-Or test: no factor of degree <= deg(f)/2."""
    f = _trim(f)
    m = len(f) - 1
    if m < 1:
        return False
    for i in range(1, m // 2 + 1):
        h = _x_pow_mod(p**i, f, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_poly_gcd(f, h, p)) > 1:
            return False
    return True


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Arithmetic context for F_{p^m} (``m == 1`` gives the prime field)."""

    p: int
    m: int
    modulus: tuple  # monic, low -> high, length m + 1
    alpha: int
    basis: tuple
    _exp: np.ndarray | None = field(default=None, repr=False)
    _log: np.ndarray | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.p**self.m

    # -- coordinates --
    def coeffs(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.m):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_coeffs(self, c) -> int:
        v = 0
        for x in reversed(list(c)):
            v = v * self.p + int(x) % self.p
        return v

    # -- field operations --
    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self.from_coeffs(x + y for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self.from_coeffs(-x for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return (a * b) % self.p
        if self._exp is not None:
            return int(self._exp[int(self._log[a]) + int(self._log[b])])
        prod = _poly_mulmod(self.coeffs(a), self.coeffs(b), list(self.modulus), self.p)
        return self.from_coeffs(prod)

    def pow(self, a: int, e: int) -> int:
        n = self.order - 1
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return int(self._exp[(int(self._log[a]) * e) % n])
        e %= n
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self.pow(a, self.order - 2)

    def element_order(self, a: int) -> int:
        n = self.order - 1
        d = n
        for r in prime_factors(n):
            while d % r == 0 and self.pow(a, d // r) == 1:
                d //= r
        return d

    def embed(self, c: int) -> int:
        """Image of the base-field element ``c`` in F_{p^m}."""
        return int(c) % self.p


def _is_primitive(ctx: FieldCtx, a: int) -> bool:
    n = ctx.order - 1
    if a == 0:
        return False
    return all(ctx.pow(a, n // r) != 1 for r in prime_factors(n)) if n > 1 else a == 1


@lru_cache(maxsize=None)
def build_field(p: int, m: int = 1, use_tables: bool | None = None) -> FieldCtx:
    """Construct F_{p^m} with deterministic modulus and primitive element.

    The modulus is the first monic irreducible ``x**m + c_{m-1} x**(m-1) + ...
    + c_0`` when the integer ``sum(c_i p**i)`` is counted upward; the
    primitive element is the smallest integer code of multiplicative order
    ``p**m - 1``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if m == 1:
        modulus = (0, 1)
    else:
        for n in range(p**m):
            c = [(n // p**i) % p for i in range(m)]
            if c[0] == 0:
                continue
            if is_irreducible(c + [1], p):
                modulus = tuple(c + [1])
                break
        else:  # pragma: no cover - irreducibles exist for every (p, m)
            raise RuntimeError("no irreducible polynomial found")
    basis = tuple(p**i for i in range(m))
    bare = FieldCtx(p, m, modulus, 0, basis)
    alpha = next(a for a in range(1, p**m) if _is_primitive(bare, a))
    if use_tables is None:
        use_tables = p**m <= TABLE_LIMIT
    exp = log = None
    if use_tables and m > 1:
        n = p**m - 1
        exp = np.zeros(2 * n, dtype=np.int64)
        log = np.zeros(p**m, dtype=np.int64)
        v = 1
        for i in range(n):
            exp[i] = v
            log[v] = i
            v = bare.mul(v, alpha)
        exp[n:] = exp[:n]
    return FieldCtx(p, m, modulus, alpha, basis, exp, log)


def frobenius(ctx: FieldCtx, a: int, i: int = 1) -> int:
    """sigma^i(a) = a^(p^i); sigma^m is the identity."""
    i %= ctx.m
    return ctx.pow(a, ctx.p**i) if a else 0


def truncated_norm(ctx: FieldCtx, a: int, i: int) -> int:
    """N_i(a) = sigma^{i-1}(a) ... sigma(a) a, with N_0(a) = 1."""
    out = 1
    for j in range(i):
        out = ctx.mul(out, frobenius(ctx, a, j))
    return out


def op_d(ctx: FieldCtx, a: int, i: int, b: int) -> int:
    """D_a^i(b) = sigma^i(b) N_i(a)."""
    return ctx.mul(frobenius(ctx, b, i), truncated_norm(ctx, a, i))


# --- F_p linear algebra ---

def rank_mod_p(mat, p: int) -> int:
    a = np.array(mat, dtype=np.int64) % p
    if a.size == 0:
        return 0
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        r += 1
        if r == rows:
            break
    return r


def batch_rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices over F_p, shape (..., r, c)."""
    a = np.array(mats, dtype=np.int64) % p
    lead = a.shape[:-2]
    rows, cols = a.shape[-2:]
    a = a.reshape(-1, rows, cols)
    inv = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)
    n = a.shape[0]
    rank = np.zeros(n, dtype=np.int64)
    idx = np.arange(n)
    for c in range(cols):
        # rows at or beyond the current rank with a nonzero entry in column c
        cand = (a[:, :, c] != 0) & (np.arange(rows)[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        sel = idx[has]
        pr, rr = piv[has], rank[has]
        tmp = a[sel, pr].copy()
        a[sel, pr] = a[sel, rr]
        a[sel, rr] = tmp
        prow = (a[sel, rr] * inv[a[sel, rr, c]][:, None]) % p
        a[sel, rr] = prow
        factors = a[sel, :, c].copy()
        factors[np.arange(len(sel)), rr] = 0
        a[sel] = (a[sel] - factors[:, :, None] * prow[:, None, :]) % p
        rank[has] += 1
    return rank.reshape(lead)


def inv_mod_p(mat, p: int) -> np.ndarray:
    a = np.array(mat, dtype=np.int64) % p
    n = a.shape[0]
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i, c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix over F_p")
        aug[[c, piv]] = aug[[piv, c]]
        aug[c] = (aug[c] * pow(int(aug[c, c]), p - 2, p)) % p
        for i in range(n):
            if i != c and aug[i, c]:
                aug[i] = (aug[i] - aug[i, c] * aug[c]) % p
    return aug[:, n:]


# --- extension <-> base field matrices ---

def basis_matrix(ctx: FieldCtx, basis=None) -> np.ndarray:
    """Rows are polynomial-basis coordinates of the basis elements."""
    basis = ctx.basis if basis is None else basis
    return np.array([ctx.coeffs(b) for b in basis], dtype=np.int64)


def is_basis(ctx: FieldCtx, basis) -> bool:
    return len(basis) == ctx.m and rank_mod_p(basis_matrix(ctx, basis), ctx.p) == ctx.m


def matrix_rep(ctx: FieldCtx, c, basis=None) -> np.ndarray:
    """M_B(c): the m x s matrix whose column j holds the B-coordinates of c_j."""
    coords = np.array([ctx.coeffs(int(x)) for x in c], dtype=np.int64).reshape(-1, ctx.m)
    if basis is None or tuple(basis) == ctx.basis:
        return coords.T.copy()
    # c_j = sum_i beta_i t_ij  =>  coords_j = t_j @ Bmat
    binv = inv_mod_p(basis_matrix(ctx, basis), ctx.p)
    return ((coords @ binv) % ctx.p).T.copy()


def matrix_unrep(ctx: FieldCtx, mat, basis=None) -> list[int]:
    """Inverse of :func:`matrix_rep`."""
    mat = np.array(mat, dtype=np.int64) % ctx.p
    if basis is None or tuple(basis) == ctx.basis:
        coords = mat.T
    else:
        coords = (mat.T @ basis_matrix(ctx, basis)) % ctx.p
    return [ctx.from_coeffs(row) for row in coords]


def mul_matrix(ctx: FieldCtx, a: int) -> np.ndarray:
    """F_p matrix of b -> b*a acting on row coordinate vectors."""
    return np.array([ctx.coeffs(ctx.mul(ctx.p**i, a)) for i in range(ctx.m)], dtype=np.int64)


def expand_matrix(ctx: FieldCtx, g) -> np.ndarray:
    """Expand a k x n matrix over F_{p^m} into a (k*m) x (n*m) matrix over F_p.

    For a message u with coordinate vector ``ucoords`` (symbol-major), the
    coordinates of ``u @ g`` are ``ucoords @ expand_matrix(ctx, g) % p``.
    """
    g = np.asarray(g, dtype=np.int64)
    k, n = g.shape
    m = ctx.m
    out = np.zeros((k * m, n * m), dtype=np.int64)
    for i in range(k):
        for j in range(n):
            out[i * m:(i + 1) * m, j * m:(j + 1) * m] = mul_matrix(ctx, int(g[i, j]))
    return out


def coords_of(ctx: FieldCtx, values) -> np.ndarray:
    """Vectorized coordinates: int array (...,) -> (..., m)."""
    v = np.asarray(values, dtype=np.int64)
    return (v[..., None] // (ctx.p ** np.arange(ctx.m))) % ctx.p


def from_coords(ctx: FieldCtx, coords) -> np.ndarray:
    c = np.asarray(coords, dtype=np.int64)
    return (c * (ctx.p ** np.arange(ctx.m))).sum(axis=-1)
