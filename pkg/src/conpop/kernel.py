"""Backend selection for the length-3 DP kernel.

The compiled ``_dp3`` extension is used when it imports; otherwise, or when
``CONPOP_PURE_PYTHON`` is set to a non-empty value, the pure-Python twin runs.
Both return identical results.
"""

import os

from . import _dp3_py

if os.environ.get("CONPOP_PURE_PYTHON"):
    _impl = _dp3_py
else:
    try:
        from . import _dp3 as _impl
    except ImportError:  # extension not built
        _impl = _dp3_py

dp3 = _impl.dp3
BACKEND = _impl.BACKEND
python_dp3 = _dp3_py.dp3


def compiled_dp3():
    """The compiled kernel, or None when it is not available."""
    try:
        from . import _dp3
    except ImportError:
        return None
    return _dp3.dp3
