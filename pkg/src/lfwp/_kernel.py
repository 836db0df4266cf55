"""Transform-kernel selection.

The compiled extension is preferred when importable; `LFWP_PURE=1` in the
environment forces the numpy fallback.  Both expose the same `vc_transform`
contract and must produce bit-identical outputs.
"""

import os

if os.environ.get("LFWP_PURE", "") == "1":
    from . import _vc_py as _impl
else:
    try:
        from . import _vc as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _vc_py as _impl

vc_transform = _impl.vc_transform
KERNEL_IMPL: str = _impl.IMPL

__all__ = ["vc_transform", "KERNEL_IMPL"]
