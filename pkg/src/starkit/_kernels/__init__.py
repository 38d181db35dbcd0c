"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure-Python twin when
the extension was not built. Set STARKIT_PURE=1 to force the fallback
(useful for benchmarking and debugging).
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("STARKIT_PURE"):
    impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _fast as impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        impl = pure
        BACKEND = "pure"

TAG_NONE = pure.TAG_NONE
TAG_REGISTER = pure.TAG_REGISTER
TAG_FIFO = pure.TAG_FIFO
TAG_LIFO = pure.TAG_LIFO

pair_tags = impl.pair_tags
peak_live = impl.peak_live
