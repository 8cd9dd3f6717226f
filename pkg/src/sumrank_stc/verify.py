"""Self-check suites run by ``sumrank-stc verify``.

Each suite returns a :class:`SuiteResult` with the number of cases it
checked and how many of them failed.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .channel import compute_rho, draw_trial
from .decoder import DecoderConfig, StackDecoder, exhaustive_ml
from .galois import build_field
from .lattice import EISENSTEIN, GAUSSIAN, build_constellation, enumerate_circle, exhaustive_circle
from .lrs import lrs_generator
from .stcode import SRB, StParams, build_encoder
from .sumrank import Partition, min_sum_rank_distance

ML_CONFIGS = ("vanilla", "column_min", "eigenbound", "sphere", "perms", "all")


@dataclass
class SuiteResult:
    name: str
    checked: int
    failures: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checked > 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name}: {self.checked} checked, {self.failures} failed"
        return f"{out} ({self.detail})" if self.detail else out


def desk_encoder(q: int = 5, d: int = 3):
    """SRB code over a q-point Gaussian constellation with n_t = T = L = 2."""
    const = build_constellation(GAUSSIAN, p=q)
    return build_encoder(StParams(2, 2, 2, d, const, SRB))


def suite_msrd(q: int = 5, m: int = 2, N: int = 4, L: int = 2) -> SuiteResult:
    """Brute-force minimum sum-rank distance equals N - k + 1 for every k."""
    ctx = build_field(q, m)
    part = Partition.equal(N, L)
    found = []
    failures = 0
    for k in range(1, N + 1):
        dist = min_sum_rank_distance(lrs_generator(ctx, part, k))
        found.append(f"k={k}:d={dist}")
        failures += dist != N - k + 1
    return SuiteResult("msrd", N, failures, " ".join(found))


def _det2(x, kind):
    """Determinants of 2x2 lattice matrices given as (..., 4, 2) pairs."""
    def mul(u, v):
        re = u[..., 0] * v[..., 0] - u[..., 1] * v[..., 1]
        im = u[..., 0] * v[..., 1] + u[..., 1] * v[..., 0]
        if kind == EISENSTEIN:
            im = im - u[..., 1] * v[..., 1]
        return np.stack([re, im], axis=-1)

    return mul(x[..., 0, :], x[..., 3, :]) - mul(x[..., 1, :], x[..., 2, :])


def suite_rank_preservation(kind: str = GAUSSIAN, pi=(2, 1)) -> SuiteResult:
    """rank(phi(C) - phi(D)) >= rank(C - D) over all pairs of 2x2 matrices."""
    const = build_constellation(kind, pi)
    p = const.p
    coords = np.asarray(const.coords, dtype=np.int64)
    n = p**4
    mats = (np.arange(n)[:, None] // (p ** np.arange(4))) % p  # (n, 4) row-major entries
    lat = coords[mats]  # (n, 4, 2)
    violations = 0
    for start in range(0, n, 64):
        C = mats[start:start + 64, None, :]
        diff = (C - mats[None, :, :]) % p
        det = (diff[..., 0] * diff[..., 3] - diff[..., 1] * diff[..., 2]) % p
        r_fp = np.where(det != 0, 2, np.where(diff.any(axis=-1), 1, 0))
        ld = lat[start:start + 64, None] - lat[None, :]
        r_c = np.where(_det2(ld, kind).any(axis=-1), 2,
                       np.where(ld.reshape(*ld.shape[:2], -1).any(axis=-1), 1, 0))
        violations += int(np.sum(r_c < r_fp))
    return SuiteResult("rank-preservation", n * n, violations, const.describe())


def suite_circle_enum(draws: int = 10**4, seed: int = 0,
                      constellations=((GAUSSIAN, 17), (EISENSTEIN, 271))) -> SuiteResult:
    """Region enumeration returns exactly the points of the exhaustive filter."""
    rng = np.random.default_rng(seed)
    checked = failures = 0
    names = []
    for kind, p in constellations:
        const = build_constellation(kind, p=p)
        names.append(const.describe())
        xmin, xmax, ymin, ymax = const.bbox
        span = max(xmax - xmin, ymax - ymin)
        for _ in range(draws):
            c = complex(rng.uniform(xmin - 2, xmax + 2), rng.uniform(ymin - 2, ymax + 2))
            r = rng.uniform(0, span / 2)
            got, _ = enumerate_circle(const, c, r)
            checked += 1
            failures += sorted(got) != exhaustive_circle(const, c, r)
    return SuiteResult("circle-enum", checked, failures, ", ".join(names))


def suite_ml_equivalence(trials: int = 1000, snrs=(0, 5, 10, 15, 20), seed: int = 0,
                         configs=ML_CONFIGS, n_r: int = 2, backend: str | None = None) -> SuiteResult:
    """Every decoder configuration reaches the exhaustive ML cost (1e-9 relative)."""
    enc = desk_encoder()
    decoders = [StackDecoder(enc, replace(DecoderConfig.parse(c), backend=backend)) for c in configs]
    checked = failures = 0
    worst = 0.0
    for i, snr in enumerate(snrs):
        for t in range(trials):
            tr = draw_trial(enc, n_r, seed, i, t, snr)
            best = exhaustive_ml(enc, tr.real, tr.Y).cost
            for dec in decoders:
                got = dec.decode(tr.real, tr.Y).cost
                rel = abs(got - best) / max(abs(best), 1e-300)
                worst = max(worst, rel)
                checked += 1
                failures += rel > 1e-9
    return SuiteResult("ml-equivalence", checked, failures, f"max relative gap {worst:.3g}")


def suite_normalization(messages: int = 10**5, snr_db: float = 10.0, seed: int = 0,
                        enc=None) -> SuiteResult:
    """Empirical E||rho X||_F^2 matches L*T*SNR within 1%."""
    enc = enc or desk_encoder(17)
    p = enc.params
    rng = np.random.default_rng(seed)
    rho = compute_rho(enc, snr_db)
    target = p.L * p.T * 10 ** (snr_db / 10)
    total = 0.0
    for start in range(0, messages, 10**4):
        u = rng.integers(0, p.q, size=(min(10**4, messages - start), enc.k * enc.m))
        X = enc.to_complex(enc.encode_symbols(u))
        total += float(np.sum(np.abs(rho * X) ** 2))
    rel = abs(total / messages - target) / target
    return SuiteResult("normalization", messages, int(not rel <= 0.01),
                       f"relative error {rel:.3g}")


SUITES = {
    "msrd": suite_msrd,
    "rank-preservation": suite_rank_preservation,
    "circle-enum": suite_circle_enum,
    "ml-equivalence": suite_ml_equivalence,
    "normalization": suite_normalization,
}


def run_suite(name: str, **kw) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](**kw)
