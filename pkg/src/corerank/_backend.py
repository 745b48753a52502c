"""Kernel backend selection.

The hot kernels ship in two interchangeable flavors: jit-compiled
(``_kernels_numba``) and pure numpy (``_kernels_numpy``). The environment
variable ``CORE_BACKEND`` picks one (``numba`` or ``numpy``); unset, the
jit path is used when numba imports cleanly. ``CORE_THREADS`` caps the
numba worker count.

Integer-valued kernels (the preference counts) are bitwise identical
across backends. Float kernels agree to rounding only, because summation
order differs; within one backend all results are deterministic for any
thread count.
"""

import logging
import os

from . import _kernels_numpy

log = logging.getLogger(__name__)

_active = None


def _load_numba_kernels():
    from . import _kernels_numba

    threads = os.environ.get("CORE_THREADS", "").strip()
    if threads:
        import numba

        want = max(1, int(threads))
        numba.set_num_threads(min(want, numba.config.NUMBA_NUM_THREADS))
    return _kernels_numba


def kernels():
    """Return the active kernel module, resolving it on first use."""
    global _active
    if _active is None:
        choice = os.environ.get("CORE_BACKEND", "").strip().lower()
        if choice == "numpy":
            _active = _kernels_numpy
        elif choice == "numba":
            _active = _load_numba_kernels()
        elif choice == "":
            try:
                _active = _load_numba_kernels()
            except ImportError:
                log.warning("numba unavailable; falling back to numpy kernels")
                _active = _kernels_numpy
        else:
            raise ValueError(f"unknown CORE_BACKEND {choice!r}; use 'numba' or 'numpy'")
    return _active


def backend_name():
    return kernels().NAME


def set_backend(name):
    """Force a backend programmatically (used by tests and benchmarks)."""
    global _active
    if name == "numpy":
        _active = _kernels_numpy
    elif name == "numba":
        _active = _load_numba_kernels()
    else:
        raise ValueError(f"unknown backend {name!r}")
    return _active
