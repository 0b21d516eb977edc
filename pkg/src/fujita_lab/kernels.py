"""Backend selection for the enumeration kernels.

The compiled extension is used when it was built and ``FUJITA_LAB_PURE`` is
not set to a true value; otherwise the pure-Python reference is used.  Both
expose the same three functions with identical results.
"""

from __future__ import annotations

import os

from . import _kernels_py

_force_pure = os.environ.get("FUJITA_LAB_PURE", "").strip().lower() in {"1", "true", "yes", "on"}

_compiled = None
if not _force_pure:
    try:
        from . import _kernels as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

_impl = _compiled if _compiled is not None else _kernels_py
BACKEND = "compiled" if _compiled is not None else "python"

tuples_with_sum_at_most = _impl.tuples_with_sum_at_most
first_failing_tuple = _impl.first_failing_tuple
min_form_in_box = _impl.min_form_in_box


def backends() -> dict:
    """All importable implementations, keyed by name (used by tests and benchmarks)."""
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    else:
        try:
            from . import _kernels
        except ImportError:
            pass
        else:
            out["compiled"] = _kernels
    return out
