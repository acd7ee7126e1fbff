"""Select the compiled kernels when available.

Set ``LIEHEAT_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _fallback

BACKEND = "python"
kernels = _fallback

if os.environ.get("LIEHEAT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _speedups as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        kernels = _fallback

neumaier_sum = kernels.neumaier_sum
exp_weighted_sum = kernels.exp_weighted_sum
character_sum = kernels.character_sum
