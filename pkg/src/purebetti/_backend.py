"""Kernel backend selection.

The hot numeric loops (exact matrix ranks, the census scan) have two
implementations: numba ``@njit`` kernels and pure numpy/Python fallbacks.
``PUREBETTI_NO_NUMBA=1`` (or ``PUREBETTI_BACKEND=python``) forces the
fallback path; otherwise numba is used when importable.
"""

from __future__ import annotations

import os


def _env_disabled() -> bool:
    if os.environ.get("PUREBETTI_NO_NUMBA", "") not in ("", "0"):
        return True
    return os.environ.get("PUREBETTI_BACKEND", "").lower() == "python"


_HAS_NUMBA = None


def numba_enabled() -> bool:
    """True when numba kernels should be used for this process."""
    global _HAS_NUMBA
    if _env_disabled():
        return False
    if _HAS_NUMBA is None:
        try:
            import numba  # noqa: F401

            _HAS_NUMBA = True
        except ImportError:  # pragma: no cover - exercised only without numba
            _HAS_NUMBA = False
    return _HAS_NUMBA


def backend_name() -> str:
    return "numba" if numba_enabled() else "python"
