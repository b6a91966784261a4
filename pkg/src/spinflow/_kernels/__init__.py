"""Kernel backend selection.

The hot loop (Pauli-term application to a state vector) has two
implementations with identical semantics: a Cython extension built at
install time and a pure-numpy fallback.  The extension is used when it
imported cleanly; set SPINFLOW_PURE=1 to force the fallback.
"""

import os

from . import pure

_backends = {"pure": pure.apply_plan}

try:
    from . import _core

    _backends["compiled"] = _core.apply_plan
except ImportError:
    _core = None

if os.environ.get("SPINFLOW_PURE", "") not in ("", "0"):
    _active = "pure"
elif "compiled" in _backends:
    _active = "compiled"
else:
    _active = "pure"

apply_plan = _backends[_active]


def backend_name() -> str:
    return _active


def available_backends() -> dict:
    """Name -> apply_plan callable, for tests and benchmarks."""
    return dict(_backends)
