"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when
``BRAUERGRAPH_PURE_PYTHON=1`` is set, the pure-Python twins are used.
"""

from __future__ import annotations

import os

from brauergraph import _pykernels

python_kernels = _pykernels

if os.environ.get("BRAUERGRAPH_PURE_PYTHON", "") not in ("", "0"):
    compiled_kernels = None
else:
    try:
        from brauergraph import _ckernels as compiled_kernels
    except ImportError:  # extension not built
        compiled_kernels = None

active = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"

rref_mod_p = active.rref_mod_p
assoc_violations = active.assoc_violations
assoc_violations_at = active.assoc_violations_at
