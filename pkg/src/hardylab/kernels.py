"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise the numpy
fallback is loaded. Set ``HARDYLAB_PURE_PYTHON=1`` to force the fallback.
"""
import importlib
import os

BACKENDS = ("cython", "python")
_MODULES = {"cython": "hardylab._kernels", "python": "hardylab._fallback"}


def load_backend(name: str):
    """Import one backend module by name; raises ImportError if unavailable."""
    return importlib.import_module(_MODULES[name])


def available_backends() -> list[str]:
    found = []
    for name in BACKENDS:
        try:
            load_backend(name)
        except ImportError:
            continue
        found.append(name)
    return found


if os.environ.get("HARDYLAB_PURE_PYTHON"):
    _impl, BACKEND = load_backend("python"), "python"
else:
    try:
        _impl, BACKEND = load_backend("cython"), "cython"
    except ImportError:
        _impl, BACKEND = load_backend("python"), "python"

scan_strategies = _impl.scan_strategies
grid_argmax = _impl.grid_argmax
