"""Kernel selection: compiled extension if available, NumPy otherwise.

Set RANK3KIT_PURE=1 to force the pure implementation (used by the
benchmark and by tests that cross-check the two backends).
"""

import os

from ._kernels_py import canonical_relabel  # shared, pure by design

if os.environ.get("RANK3KIT_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _ck as _impl  # type: ignore[attr-defined]
        _impl.pair_orbits
    except (ImportError, AttributeError):
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
pair_orbits = _impl.pair_orbits
refine_partition = _impl.refine_partition
wl2_round = _impl.wl2_round

__all__ = ["BACKEND", "pair_orbits", "refine_partition", "wl2_round",
           "canonical_relabel"]
