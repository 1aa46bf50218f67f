"""Kernel backend selection.

The compiled Monte-Carlo kernels are used when the extension imports;
otherwise the NumPy implementations are used. The pattern quadratic form
always runs on NumPy, whose BLAS-backed product is faster than a loop.
"""

from . import _kernels_py as python_backend

try:
    from . import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"


def get_backend(name=None):
    """Return the backend module by name (``"cython"``/``"python"``) or the active one."""
    if name is None:
        return _active
    if name == "python":
        return python_backend
    if name == "cython":
        if compiled_backend is None:
            raise ImportError("compiled kernels are not built")
        return compiled_backend
    raise ValueError(f"unknown backend {name!r}")


def hermitian_quadform(rows, mat):
    return python_backend.hermitian_quadform(rows, mat)


def rapp_gain_sums(*args):
    return _active.rapp_gain_sums(*args)


def rapp_error_cov(*args):
    return _active.rapp_error_cov(*args)
