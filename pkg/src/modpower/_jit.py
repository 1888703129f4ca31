"""Backend selection for the numeric kernels.

Set ``MODPOWER_DISABLE_NUMBA=1`` to force the pure-numpy fallback path.
The fallback is also used automatically when numba is not importable.
"""
import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

BACKENDS = ("numba", "numpy")


def _env_disabled():
    return os.environ.get("MODPOWER_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")


def default_backend():
    if HAVE_NUMBA and not _env_disabled():
        return "numba"
    return "numpy"


def resolve_backend(backend=None):
    if backend is None:
        return default_backend()
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if backend == "numba" and not HAVE_NUMBA:
        raise ValueError("numba backend requested but numba is not installed")
    return backend


def njit(*args, **kwargs):
    """``numba.njit`` with caching and GIL release, or a no-op without numba."""
    if not HAVE_NUMBA:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)
    return numba.njit(*args, **kwargs)
