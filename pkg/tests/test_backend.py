import os
import subprocess
import sys

import numpy as np
import pytest

from sumrank_stc._backend import compiled_kernel, get_kernel
from sumrank_stc.channel import draw_trial
from sumrank_stc.decoder import DecoderConfig, StackDecoder, decode_linear
from sumrank_stc.lattice import EISENSTEIN, GAUSSIAN, PSK, build_constellation
from sumrank_stc.stcode import SRB, StParams, build_encoder

needs_ext = pytest.mark.skipif(compiled_kernel is None, reason="compiled kernel not built")


def test_get_kernel_names():
    assert get_kernel("python").__name__.endswith("_search")
    with pytest.raises(ValueError):
        get_kernel("fortran")


def test_pure_python_switch():
    env = dict(os.environ, SUMRANK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import sumrank_stc; print(sumrank_stc.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
@pytest.mark.parametrize("kind,p", [(GAUSSIAN, 17), (EISENSTEIN, 13), (PSK, 7)])
@pytest.mark.parametrize("spec", ["vanilla", "column_min", "all"])
def test_backends_agree_exactly(kind, p, spec):
    enc = build_encoder(StParams(2, 2, 2, 3, build_constellation(kind, p=p), SRB))
    py = StackDecoder(enc, DecoderConfig.parse(spec, backend="python"))
    cy = StackDecoder(enc, DecoderConfig.parse(spec, backend="cython"))
    for t in range(6):
        tr = draw_trial(enc, 2, seed=9, snr_index=0, trial=t, snr_db=6.0 + 3 * t)
        a, b = py.decode(tr.real, tr.Y), cy.decode(tr.real, tr.Y)
        assert np.array_equal(a.symbols, b.symbols)
        assert a.cost == b.cost
        assert a.stats == b.stats


@needs_ext
def test_backends_agree_on_linear_detection():
    rng = np.random.default_rng(0)
    const = build_constellation(GAUSSIAN, p=13)
    for _ in range(5):
        H = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
        y = H @ const.points[rng.integers(0, 13, 3)] + rng.standard_normal(4)
        a = decode_linear(H, y, const, DecoderConfig(spherical=True, backend="python"))
        b = decode_linear(H, y, const, DecoderConfig(spherical=True, backend="cython"))
        assert np.array_equal(a.symbols, b.symbols) and a.cost == b.cost and a.stats == b.stats
