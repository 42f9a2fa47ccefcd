"""Pick the block-kernel implementation at import time.

The compiled Cython module is preferred. Setting ``AESIMG_BACKEND=python``
forces the pure-Python fallback; ``AESIMG_BACKEND=cython`` makes a missing
extension an import error instead of a silent fallback.
"""

import importlib
import os

_MODULES = {"cython": "aesimg._ckernels", "python": "aesimg._pykernels"}


def load(name):
    """Import a kernel module by backend name ("cython" or "python")."""
    try:
        return importlib.import_module(_MODULES[name])
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; expected one of {sorted(_MODULES)}") from None


def available():
    """Names of the backends importable in this interpreter."""
    names = []
    for name in _MODULES:
        try:
            load(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _select():
    forced = os.environ.get("AESIMG_BACKEND", "").strip().lower()
    if forced:
        return load(forced)
    try:
        return load("cython")
    except ImportError:
        return load("python")


kernels = _select()
