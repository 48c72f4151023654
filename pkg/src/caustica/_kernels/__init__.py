"""Kernel backend selection.

The numerical hot spots (bivariate Horner evaluation, Ehrlich-Aberth
iteration, 2x2 Newton polish, batched small determinants) exist twice: a
Cython extension (``_ckern``) and a pure-Python fallback (``pykern``) with
identical signatures. The compiled backend is preferred when importable.

Selection can be forced with the environment variable ``CAUSTICA_BACKEND``:
``c``/``compiled`` requires the extension (ImportError if missing), ``py``/
``python`` forces the fallback, anything else (or unset) means auto.
"""

import os

from . import pykern

_requested = os.environ.get("CAUSTICA_BACKEND", "auto").strip().lower()

if _requested in ("py", "python", "pure"):
    _impl = pykern
elif _requested in ("c", "compiled", "cython"):
    from . import _ckern as _impl  # noqa: F401  (hard requirement)
else:
    try:
        from . import _ckern as _impl
    except ImportError:
        _impl = pykern

BACKEND_NAME = _impl.BACKEND_NAME
horner2 = _impl.horner2
aberth = _impl.aberth
newton_uni = _impl.newton_uni
newton2 = _impl.newton2
det_many = _impl.det_many
cauchy_radius = _impl.cauchy_radius


def available_backends():
    names = ["python"]
    try:
        from . import _ckern  # noqa: F401

        names.insert(0, _ckern.BACKEND_NAME)
    except ImportError:
        pass
    return names


def get_backend(name):
    """Return the backend module for ``name`` ('python' or 'cython')."""
    if name == "python":
        return pykern
    from . import _ckern

    if _ckern.BACKEND_NAME == name:
        return _ckern
    raise ValueError(f"unknown backend {name!r}")
