"""Kernel selection: compiled extension when available, pure Python otherwise.

Set QPSING_PURE=1 to force the pure implementation (used by the benchmark
and by CI to exercise both paths).
"""

import os

if os.environ.get("QPSING_PURE") == "1":
    from . import pure as impl
else:
    try:
        from . import _speedups as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as impl

reduce_columns = impl.reduce_columns
rank = impl.rank
KERNEL_NAME = impl.KERNEL_NAME


def active_kernel():
    return KERNEL_NAME
