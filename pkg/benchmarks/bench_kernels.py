"""Time the pure-Python and compiled search kernels on identical decoding workloads.

    python3 benchmarks/bench_kernels.py --trials 200

Both kernels decode the same seeded trials; their outputs are compared
before any timing is reported.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from sumrank_stc._backend import compiled_kernel
from sumrank_stc.channel import draw_trial
from sumrank_stc.cli import parse_constellation
from sumrank_stc.decoder import DecoderConfig, StackDecoder
from sumrank_stc.stcode import SRB, StParams, build_encoder

WORKLOADS = [
    ("17-gauss", "vanilla", 10.0),
    ("17-gauss", "all", 10.0),
    ("17-gauss", "column_min", 16.0),
    ("13-eis", "eigenbound+sphere", 12.0),
    ("7-psk", "all", 12.0),
]


def run(enc, spec: str, backend: str, trials):
    dec = StackDecoder(enc, DecoderConfig.parse(spec, backend=backend))
    start = time.perf_counter()
    out = [dec.decode(tr.real, tr.Y) for tr in trials]
    return time.perf_counter() - start, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if compiled_kernel is None:
        raise SystemExit("compiled kernel not built; run pip install -e . --no-build-isolation")

    print(f"{'constellation':<13} {'decoder':<18} {'snr':>4} {'python ms':>10} "
          f"{'cython ms':>10} {'speedup':>8}")
    for const, spec, snr in WORKLOADS:
        enc = build_encoder(StParams(2, 2, 2, 3, parse_constellation(const), SRB))
        trials = [draw_trial(enc, 2, args.seed, 0, t, snr) for t in range(args.trials)]
        t_py, r_py = run(enc, spec, "python", trials)
        t_cy, r_cy = run(enc, spec, "cython", trials)
        for a, b in zip(r_py, r_cy):
            if not (np.array_equal(a.symbols, b.symbols) and a.cost == b.cost and a.stats == b.stats):
                raise SystemExit(f"kernels disagree on {const} {spec}")
        n = len(trials)
        print(f"{const:<13} {spec:<18} {snr:>4g} {1e3 * t_py / n:>10.3f} "
              f"{1e3 * t_cy / n:>10.3f} {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
