"""Selects the compiled kernels when importable, else the numpy fallback.

Set ``BEAMTRAIN_BACKEND`` to ``cython`` or ``python`` to force a choice;
the default ``auto`` prefers the compiled module.
"""
import contextlib
import os

from . import _fallback
from .errors import ConfigurationError

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def available_backends():
    found = {"python": _fallback}
    if _compiled is not None:
        found["cython"] = _compiled
    return found


def _resolve(name):
    backends = available_backends()
    if name == "auto":
        return backends.get("cython", _fallback)
    if name not in ("python", "cython"):
        raise ConfigurationError(f"unknown backend {name!r}; expected auto, cython or python")
    if name not in backends:
        raise ConfigurationError("cython backend requested but the extension is not built")
    return backends[name]


kernels = _resolve(os.environ.get("BEAMTRAIN_BACKEND", "auto"))


def set_backend(name):
    """Switch the process-wide kernel module; returns the previous one's name."""
    global kernels
    previous = kernels.NAME
    kernels = _resolve(name)
    return previous


@contextlib.contextmanager
def use_backend(name):
    previous = set_backend(name)
    try:
        yield kernels
    finally:
        set_backend(previous)
