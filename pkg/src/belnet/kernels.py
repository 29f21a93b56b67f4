"""Kernel backend selection.

Imports the compiled extension when it was built, otherwise the numpy
fallback. ``BELNET_KERNELS=numpy`` or ``BELNET_KERNELS=cython`` forces a
backend (the latter raises if the extension is missing), which is what the
benchmark uses to compare the two.
"""

import os

from . import _kernels_np

_requested = os.environ.get("BELNET_KERNELS", "").strip().lower()

if _requested == "numpy":
    _impl = _kernels_np
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "BELNET_KERNELS=cython but belnet._kernels_cy is not built; "
                "reinstall with a C compiler available"
            ) from None
        _impl = _kernels_np
        BACKEND = "numpy"

tanh_fwd = _impl.tanh_fwd
tanh_bwd = _impl.tanh_bwd
relu_fwd = _impl.relu_fwd
relu_bwd = _impl.relu_bwd
adam_update = _impl.adam_update
