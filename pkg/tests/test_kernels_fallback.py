"""The numpy fallback (ISOPENCIL_NO_NUMBA=1) must agree with the compiled path."""
import json
import os
import subprocess
import sys

import numpy as np

from isopencil import USE_NUMBA
from isopencil.matrix_core import singular_values
from isopencil.numrange import range_polygon, sweep_eigenvalues
from isopencil.words import word_trace_sum

SCRIPT = r"""
import json, numpy as np
from isopencil import USE_NUMBA
from isopencil.numrange import sweep_eigenvalues, range_polygon
from isopencil.words import word_trace_sum
from isopencil.matrix_core import singular_values
rng = np.random.default_rng(42)
B = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
_, vals = sweep_eigenvalues(B, 32)
poly = range_polygon(B, 1, 32)
print(json.dumps({
    "numba": USE_NUMBA,
    "vals": vals.tolist(),
    "poly": [[z.real, z.imag] for z in poly],
    "word": [word_trace_sum(B, 5, 2).real, word_trace_sum(B, 5, 2).imag],
    "sv": singular_values(B).tolist(),
}))
"""


def _run(flag):
    env = dict(os.environ, ISOPENCIL_NO_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_fallback_matches_compiled():
    slow = _run("1")
    assert slow["numba"] is False
    rng = np.random.default_rng(42)
    B = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    _, vals = sweep_eigenvalues(B, 32)
    assert np.abs(np.array(slow["vals"]) - vals).max() < 1e-13
    poly = np.array([complex(*p) for p in slow["poly"]])
    assert np.abs(poly - np.array(range_polygon(B, 1, 32))).max() < 1e-12
    w = word_trace_sum(B, 5, 2)
    assert abs(complex(*slow["word"]) - w) < 1e-10
    assert np.abs(np.array(slow["sv"]) - singular_values(B)).max() < 1e-12
    assert USE_NUMBA == (os.environ.get("ISOPENCIL_NO_NUMBA", "") in ("", "0"))
