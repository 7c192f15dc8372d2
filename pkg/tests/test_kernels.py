import os
from array import array
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from dtpar import kernels


from helpers import geometries, series


def _nonzero(d):
    return {k: v for k, v in d.items() if v}


@pytest.mark.skipif(kernels.c_convolve is None, reason="compiled kernel not built")
@given(st.data())
def test_backends_agree(data):
    g = data.draw(geometries(max_d=5))
    a, b = data.draw(series(g)), data.draw(series(g))
    pa, pb = a._pack(), b._pack()
    assert _nonzero(kernels.c_convolve(*pa, *pb, g.d)) == _nonzero(kernels.py_convolve(*pa, *pb, g.d))
    ia, ib = a._pack_int()[:3], b._pack_int()[:3]
    assert _nonzero(kernels.c_convolve_int(*ia, *ib, g.d)) == _nonzero(kernels.py_convolve_int(*ia, *ib, g.d))


@pytest.mark.skipif(kernels.c_convolve is None, reason="compiled kernel not built")
@pytest.mark.parametrize("scale", [2**40, 2**70])
def test_int_kernel_overflow_falls_back(scale):
    codes, degs = array("q", [0, 1]), array("q", [0, 1])
    nums = [scale, -3 * scale]
    got = _nonzero(kernels.c_convolve_int(codes, degs, nums, codes, degs, nums, 4))
    assert got == {0: scale * scale, 1: -6 * scale * scale, 2: 9 * scale * scale}
    assert got == _nonzero(kernels.py_convolve_int(codes, degs, nums, codes, degs, nums, 4))


@pytest.mark.skipif(kernels.c_convolve is None, reason="compiled kernel not built")
def test_sparse_code_range_falls_back():
    codes, degs = array("q", [0, 10**9]), array("q", [0, 1])
    got = kernels.c_convolve_int(codes, degs, [1, 1], codes, degs, [1, 1], 4)
    assert _nonzero(got) == {0: 1, 10**9: 2, 2 * 10**9: 1}


def test_pure_python_switch():
    code = "import dtpar.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, DTPAR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_backend_name():
    assert kernels.BACKEND in {"cython", "python"}
