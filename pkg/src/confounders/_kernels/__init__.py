"""Kernel selection: compiled extension when built, pure Python otherwise.

Set CONFOUNDERS_PURE=1 to force the fallback (useful for benchmarking and
for verifying the two implementations agree).
"""
import os

if os.environ.get("CONFOUNDERS_PURE") == "1":
    from ._pure import BACKEND, BitDag
else:
    try:
        from ._fast import BACKEND, BitDag  # type: ignore[attr-defined]
    except ImportError:
        from ._pure import BACKEND, BitDag

__all__ = ["BitDag", "BACKEND"]
