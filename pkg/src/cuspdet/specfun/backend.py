"""Kernel backend selection.

The compiled Cython kernel is preferred; the pure-Python twin is the
fallback.  Setting the environment variable ``CUSPDET_PURE=1`` before the
first import forces the pure backend (used by the benchmark and by CI to
exercise both paths).
"""

import os

from . import _bessel_pure

if os.environ.get("CUSPDET_PURE", "") == "1":
    _impl = _bessel_pure
    _BACKEND = "pure"
else:
    try:
        from . import _bessel_core as _impl
        _BACKEND = "cython"
    except ImportError:
        _impl = _bessel_pure
        _BACKEND = "pure"

ik_log = _impl.ik_log
k_log = _impl.k_log
i_series_log = _impl.i_series_log
i_wronskian_log = _impl.i_wronskian_log


def backend_name():
    """'cython' when the compiled kernel is active, else 'pure'."""
    return _BACKEND
