"""Select the convolution kernel at import time.

The compiled extension is used when it was built; otherwise (or when
``DTPAR_PURE_PYTHON`` is set to a non-empty value) the pure-Python kernel is
used.  Both produce identical results.
"""

import os

from . import _pykernel

py_convolve = _pykernel.convolve
py_convolve_int = _pykernel.convolve_int

try:
    from ._ckernel import convolve as c_convolve, convolve_int as c_convolve_int
except ImportError:  # extension not built
    c_convolve = c_convolve_int = None

if c_convolve is not None and not os.environ.get("DTPAR_PURE_PYTHON"):
    convolve, convolve_int = c_convolve, c_convolve_int
    BACKEND = "cython"
else:
    convolve, convolve_int = py_convolve, py_convolve_int
    BACKEND = "python"
