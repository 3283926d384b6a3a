"""Import-time selection between the compiled core and the NumPy fallback.

The compiled extension wins when importable; WEYLLAB_BACKEND=python forces
the fallback (WEYLLAB_BACKEND=cython insists on the extension and raises
if it is missing). Everything downstream calls `core.<primitive>`.
"""

import os

from . import _purecore

_requested = os.environ.get("WEYLLAB_BACKEND", "").strip().lower()

if _requested == "python":
    core = _purecore
elif _requested == "cython":
    from . import _fastcore as core  # noqa: F401  (ImportError is the point)
else:
    try:
        from . import _fastcore as core
    except ImportError:
        core = _purecore

BACKEND = core.BACKEND_NAME


def available_backends():
    """Names of importable backends, compiled one first."""
    names = []
    try:
        from . import _fastcore  # noqa: F401

        names.append("cython")
    except ImportError:
        pass
    names.append("python")
    return names
