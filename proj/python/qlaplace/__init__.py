"""Python interface to the double q-Laplace transform kernel."""

import os
import sys

try:
    from ._qlt import *  # noqa: F401,F403
    from . import _qlt as _impl
except ImportError:  # in-tree builds put the extension next to the build dir
    _ext_dir = os.environ.get("QLAPLACE_EXT_DIR")
    if not _ext_dir:
        raise
    sys.path.insert(0, _ext_dir)
    from _qlt import *  # noqa: F401,F403
    import _qlt as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
