"""Selects the simplex kernel implementation at import time.

The compiled extension (``_kernel_c``, built by setup.py from the same
source) is preferred; the interpreted module is the fallback.  Set
``STACKLEARN_PURE=1`` to force the pure-Python kernel, e.g. for the
backend benchmark.
"""

import os

if os.environ.get("STACKLEARN_PURE"):
    from . import _kernel as _impl

    KERNEL = "pure"
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[attr-defined]

        KERNEL = "compiled"
    except ImportError:
        from . import _kernel as _impl

        KERNEL = "pure"

OPTIMAL = _impl.OPTIMAL
INFEASIBLE = _impl.INFEASIBLE
UNBOUNDED = _impl.UNBOUNDED
solve_standard = _impl.solve_standard


def kernel_info() -> str:
    """Which simplex kernel is active: "compiled" or "pure"."""
    return KERNEL
