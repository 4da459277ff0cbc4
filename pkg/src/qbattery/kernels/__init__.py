"""Propagation kernels: compiled extension when built, numpy fallback otherwise."""

try:
    from ._rk4 import BACKEND, propagate_rk4
except ImportError:  # extension not built; the pure-Python kernel is equivalent
    from ._rk4_py import BACKEND, propagate_rk4

__all__ = ["BACKEND", "propagate_rk4"]
