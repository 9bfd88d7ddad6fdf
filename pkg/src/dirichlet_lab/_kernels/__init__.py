"""Kernel selection: compiled Cython extension with a pure NumPy fallback.

The compiled module is preferred when present; set DIRICHLET_LAB_PURE=1 to
force the fallback (used by the benchmark and the parity tests).
"""

import os

from . import pure

if os.environ.get("DIRICHLET_LAB_PURE"):
    _impl = pure
    IMPLEMENTATION = "pure"
else:
    try:
        from . import _ext as _impl

        IMPLEMENTATION = "compiled"
    except ImportError:
        _impl = pure
        IMPLEMENTATION = "pure"

sieve_spf_omega = _impl.sieve_spf_omega
dirichlet_convolve = _impl.dirichlet_convolve
exp_series = _impl.exp_series
log_series = _impl.log_series
completely_multiplicative = _impl.completely_multiplicative


def available_implementations():
    """Map of importable kernel implementations, for benchmarks and tests."""
    impls = {"pure": pure}
    try:
        from . import _ext

        impls["compiled"] = _ext
    except ImportError:
        pass
    return impls
