"""Kernel backend selection.

The compiled extension is preferred when built; set LANDAULAB_PURE=1 to
force the numpy fallback. Both backends expose the same three functions
and produce identical tables (the float Lambda column to 1 ulp).
"""

import os

from . import pykern

try:
    from . import _sievekern as _compiled
except ImportError:
    _compiled = None

if _compiled is not None and not os.environ.get("LANDAULAB_PURE"):
    _impl = _compiled
    BACKEND = "compiled"
else:
    _impl = pykern
    BACKEND = "python"

mark_composites = _impl.mark_composites
smallest_factor_segment = _impl.smallest_factor_segment
arithmetic_tables = _impl.arithmetic_tables

__all__ = [
    "BACKEND",
    "arithmetic_tables",
    "mark_composites",
    "pykern",
    "smallest_factor_segment",
]
