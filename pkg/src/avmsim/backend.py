"""Engine backend selection.

The hot simulation loop exists twice: a compiled Cython core and a pure
Python fallback. Both consume the same RNG algorithm and the same draw
sequence, so they produce identical trajectories; the compiled core is
simply faster. Selection happens at import time, can be forced with the
``AVMSIM_BACKEND`` environment variable (``compiled`` or ``python``), and
can be overridden per call via ``engines.run(..., backend=...)``.
"""

from __future__ import annotations

import os

try:
    from . import _speedups  # noqa: F401
    HAVE_COMPILED = True
except ImportError:
    HAVE_COMPILED = False

_env = os.environ.get("AVMSIM_BACKEND", "").strip().lower()
if _env == "python":
    DEFAULT = "python"
elif _env == "compiled":
    if not HAVE_COMPILED:
        raise ImportError("AVMSIM_BACKEND=compiled but avmsim._speedups is not built")
    DEFAULT = "compiled"
else:
    DEFAULT = "compiled" if HAVE_COMPILED else "python"


def available() -> tuple[str, ...]:
    return ("compiled", "python") if HAVE_COMPILED else ("python",)


def resolve(name: str | None) -> str:
    if name is None:
        return DEFAULT
    if name not in ("compiled", "python"):
        raise ValueError(f"unknown backend {name!r}; expected 'compiled' or 'python'")
    if name == "compiled" and not HAVE_COMPILED:
        raise ValueError("compiled backend requested but avmsim._speedups is not built")
    return name
