"""Kernel backend selection.

Imports the compiled extension when it is built, the pure-numpy fallback
otherwise.  Set CIRCUMSEQ_PURE=1 in the environment to force the fallback
(useful for benchmarking and for testing backend parity).
"""

import os

from . import _kernels_py

STATUS_OK = _kernels_py.STATUS_OK
STATUS_UNDERFLOW = _kernels_py.STATUS_UNDERFLOW
STATUS_OVERFLOW = _kernels_py.STATUS_OVERFLOW
STATUS_DEGENERATE = _kernels_py.STATUS_DEGENERATE

if os.environ.get("CIRCUMSEQ_PURE"):
    _impl = _kernels_py
    BACKEND = "pure-python (forced)"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "pure-python"

iterate_circumcenters = _impl.iterate_circumcenters
