"""Command-line harness: code reports, seeded CER sweeps, decoder benchmarks, self-checks.

Exit codes: 0 ok, 1 verification or simulation failure, 2 bad arguments.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import draw_trial
from .decoder import DecoderConfig, StackDecoder
from .lattice import EISENSTEIN, GAUSSIAN, PSK, NotPrimeNorm, build_constellation
from .lrs import BadParams
from .stcode import (SRA, SRB, StParams, build_encoder, codebook_of, diversity_gain,
                     rate_descriptors, tradeoff_bound)
from .sumrank import min_sum_rank_distance
from .verify import SUITES, run_suite

SIM_COLUMNS = ("snr_db", "trials", "errors", "cer", "avg_nodes_visited", "avg_peak_stack",
               "avg_restarts", "wall_seconds", "seed")
BENCH_COLUMNS = tuple(c for c in SIM_COLUMNS if c not in ("errors", "cer"))

KINDS = {"gauss": GAUSSIAN, "gaussian": GAUSSIAN, "eis": EISENSTEIN, "eisenstein": EISENSTEIN,
         "psk": PSK}
WITNESS_LIMIT = 10**4  # brute-force code checks up to this many codewords
BATCH = 64  # trials dispatched at once; fixed so the stopping point never depends on threads


class UsageError(ValueError):
    pass


class SimulationError(RuntimeError):
    pass


def parse_constellation(spec: str):
    """'17-gauss', '271-eis', '7-psk' -> Constellation."""
    try:
        size, kind = spec.strip().lower().split("-", 1)
        kind = KINDS[kind]
        p = int(size)
    except (ValueError, KeyError):
        raise UsageError(f"bad constellation {spec!r}; expected e.g. 17-gauss, 271-eis, 7-psk")
    try:
        return build_constellation(kind, p=p)
    except NotPrimeNorm as e:
        raise UsageError(str(e))


def parse_snr(spec) -> list[float]:
    """'0,5,10' or 'start:stop:step' (stop inclusive)."""
    if isinstance(spec, (list, tuple)):
        return [float(v) for v in spec]
    spec = str(spec).strip()
    try:
        if ":" in spec:
            a, b, s = (float(v) for v in spec.split(":"))
            if s <= 0:
                raise ValueError
            n = int(np.floor((b - a) / s + 1e-9)) + 1
            return [a + i * s for i in range(n)]
        return [float(v) for v in spec.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad SNR grid {spec!r}")


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


@dataclass
class SimConfig:
    constellation: str = "17-gauss"
    n_t: int = 2
    T: int = 2
    L: int = 2
    d: int = 3
    layout: str = SRB
    n_r: int = 2
    snr: list = field(default_factory=lambda: [0.0, 5.0, 10.0, 15.0, 20.0])
    trials: int = 1000
    target_errors: int = 100
    seed: int = 0
    decoder: str = "all"
    alpha: float = 1.75
    delta: float = 0.25
    stack_capacity: int = 1 << 20
    backend: str | None = None
    threads: int = 1
    timing: bool = False

    def validate(self) -> None:
        if not self.snr:
            raise UsageError("SNR grid is empty")
        if self.trials < 1:
            raise UsageError("trials must be at least 1")
        if self.threads < 1:
            raise UsageError("threads must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")

    def params(self) -> StParams:
        return StParams(self.n_t, self.T, self.L, self.d, parse_constellation(self.constellation),
                        self.layout)

    def decoder_config(self) -> DecoderConfig:
        return DecoderConfig.parse(self.decoder, alpha=self.alpha, delta=self.delta,
                                   stack_capacity=self.stack_capacity, backend=self.backend)


# key=value file entries and their parsers; keys match the long flag names
CONFIG_KEYS = {
    "constellation": str, "n_t": int, "T": int, "L": int, "d": int, "layout": str, "n_r": int,
    "snr": parse_snr, "trials": int, "target_errors": int, "seed": int, "decoder": str,
    "alpha": float, "delta": float, "stack_capacity": int, "backend": str, "threads": int,
    "timing": lambda v: str(v).strip().lower() in ("1", "true", "yes", "on"),
}


def read_config_file(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = CONFIG_KEYS[key](value)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}")
    return out


# --- codegen ---

def cmd_codegen(cfg: SimConfig) -> list[str]:
    params = cfg.params()
    enc = build_encoder(params)
    rates = rate_descriptors(enc)
    bound = tradeoff_bound(params.n_t, params.T, params.L, params.d)
    p = enc.params
    lines = [
        f"constellation: {p.constellation.describe()}",
        f"layout: {p.kind}" + (" (SRA with T = n_t, built as SRB)" if params.kind != p.kind else ""),
        f"n_t = {p.n_t}, T = {p.T}, L = {p.L}, d = {p.d}",
        f"code: [{enc.N}, {enc.k}] over F_{p.q}^{enc.m}, sum-rank partition {p.L} x {enc.N // p.L}",
        f"rate R = {rates.R} symbols per channel use",
        f"tradeoff bound = {bound} ({'met' if rates.R == bound else 'NOT met'})",
        f"R_b = {fmt(rates.R_b)} bpcu",
        f"R_b per tx = {fmt(rates.R_b_per_tx)} bpcu",
        f"codebook size = {rates.codebook_size}",
    ]
    if p.d == 1:
        lines.append("d = 1: uncoded signalling")
    if rates.codebook_size <= WITNESS_LIMIT:
        dist = min_sum_rank_distance(enc.code)
        lines.append(f"MSRD witness: brute-force minimum sum-rank distance {dist} "
                     f"({'= d' if dist == p.d else '!= d'})")
        div = diversity_gain(codebook_of(enc))
        lines.append(f"transmit diversity witness: brute-force {div} ({'= d' if div == p.d else '!= d'})")
    else:
        lines.append("MSRD witness: certified by construction (linearized Reed-Solomon codes are MSRD)")
    return lines


# --- simulate ---

@dataclass
class PointResult:
    snr_db: float
    errors: list = field(default_factory=list)
    nodes: list = field(default_factory=list)
    peaks: list = field(default_factory=list)
    restarts: list = field(default_factory=list)
    wall: float = 0.0

    @property
    def trials(self) -> int:
        return len(self.errors)

    def row(self, seed: int, timing: bool) -> dict:
        n = self.trials
        e = int(sum(self.errors))
        return {
            "snr_db": self.snr_db, "trials": n, "errors": e, "cer": e / n,
            "avg_nodes_visited": sum(self.nodes) / n, "avg_peak_stack": sum(self.peaks) / n,
            "avg_restarts": sum(self.restarts) / n,
            "wall_seconds": self.wall if timing else "", "seed": seed,
        }


def run_point(cfg: SimConfig, enc, dec: StackDecoder, snr_index: int, snr_db: float,
              pool: ThreadPoolExecutor | None = None) -> PointResult:
    """Trials 0, 1, ... in order until ``trials`` or ``target_errors`` is reached."""
    def one(t):
        tr = draw_trial(enc, cfg.n_r, cfg.seed, snr_index, t, snr_db)
        try:
            res = dec.decode(tr.real, tr.Y)
        except Exception as e:
            raise SimulationError(f"trial {t} at {snr_db:g} dB: {e}") from e
        return (not np.array_equal(res.symbols, tr.symbols), res.stats)

    out = PointResult(snr_db)
    start = time.perf_counter()
    t = 0
    while t < cfg.trials:
        batch = range(t, min(t + BATCH, cfg.trials))
        results = pool.map(one, batch) if pool is not None else map(one, batch)
        for err, st in results:
            out.errors.append(err)
            out.nodes.append(st.nodes_visited)
            out.peaks.append(st.peak_stack)
            out.restarts.append(st.restarts)
            if cfg.target_errors > 0 and sum(out.errors) >= cfg.target_errors:
                break
        else:
            t = batch.stop
            continue
        break
    out.wall = time.perf_counter() - start
    return out


def simulate(cfg: SimConfig) -> list[PointResult]:
    cfg.validate()
    enc = build_encoder(cfg.params())
    dec = StackDecoder(enc, cfg.decoder_config())
    if cfg.n_r < enc.params.n_t:
        raise UsageError("decoding needs n_r >= n_t")
    pool = ThreadPoolExecutor(cfg.threads) if cfg.threads > 1 else None
    try:
        return [run_point(cfg, enc, dec, i, s, pool) for i, s in enumerate(cfg.snr)]
    finally:
        if pool is not None:
            pool.shutdown()


def write_csv(points: list[PointResult], cfg: SimConfig, fh, columns=SIM_COLUMNS) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for pt in points:
        row = pt.row(cfg.seed, cfg.timing)
        w.writerow([fmt(row[c]) for c in columns])


# --- argument handling ---

def _add_code_args(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--config", help="flat key=value file; explicit flags override it")
    ap.add_argument("--constellation", help="e.g. 17-gauss, 271-eis, 7-psk")
    ap.add_argument("--n-t", dest="n_t", type=int)
    ap.add_argument("--T", "-T", dest="T", type=int)
    ap.add_argument("--L", "-L", dest="L", type=int)
    ap.add_argument("--d", "-d", dest="d", type=int)
    ap.add_argument("--layout", choices=[SRA, SRB], type=str.upper)


def _add_sim_args(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--n-r", dest="n_r", type=int)
    ap.add_argument("--snr", type=parse_snr, help="comma list or start:stop:step in dB")
    ap.add_argument("--trials", type=int, help="maximum trials per SNR point")
    ap.add_argument("--target-errors", dest="target_errors", type=int,
                    help="stop a point after this many codeword errors (0 disables)")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--decoder", help="'+'-joined: vanilla, column_min, eigenbound, sphere, "
                                      "spatial, temporal, perms, all")
    ap.add_argument("--alpha", type=float)
    ap.add_argument("--delta", type=float)
    ap.add_argument("--stack-capacity", dest="stack_capacity", type=int)
    ap.add_argument("--backend", choices=["python", "cython"])
    ap.add_argument("--threads", type=int)
    ap.add_argument("--timing", action="store_true", default=None,
                    help="fill wall_seconds (makes the CSV non-reproducible)")
    ap.add_argument("--output", "-o", help="CSV path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sumrank-stc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    _add_code_args(sub.add_parser("codegen", help="build a code and report its parameters"))
    for name, text in (("simulate", "CER versus SNR sweep"),
                       ("bench-decoder", "decoder complexity sweep (no CER columns)")):
        sp = sub.add_parser(name, help=text)
        _add_code_args(sp)
        _add_sim_args(sp)
    vp = sub.add_parser("verify", help="run a self-check suite")
    vp.add_argument("suite", choices=list(SUITES))
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--trials", type=int, help="trials per SNR point (ml-equivalence)")
    vp.add_argument("--backend", choices=["python", "cython"])
    return ap


def config_from_args(args: argparse.Namespace) -> SimConfig:
    values = read_config_file(args.config) if getattr(args, "config", None) else {}
    for key in CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if "layout" in values:
        values["layout"] = str(values["layout"]).upper()
    return replace(SimConfig(), **values)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "verify":
            kw = {}
            if args.suite in ("ml-equivalence", "circle-enum", "normalization"):
                kw["seed"] = args.seed
            if args.suite == "ml-equivalence":
                kw["backend"] = args.backend
                if args.trials is not None:
                    kw["trials"] = args.trials
            res = run_suite(args.suite, **kw)
            print(res.line())
            return 0 if res.passed else 1
        cfg = config_from_args(args)
        if args.command == "codegen":
            print("\n".join(cmd_codegen(cfg)))
            return 0
        points = simulate(cfg)
        columns = SIM_COLUMNS if args.command == "simulate" else BENCH_COLUMNS
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                write_csv(points, cfg, fh, columns)
        else:
            write_csv(points, cfg, sys.stdout, columns)
        return 0
    except (UsageError, BadParams, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SimulationError as e:
        print(f"simulation failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
