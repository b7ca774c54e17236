"""Backend selection for the Monte Carlo kernels.

The compiled extension is used when it imports; set STONED_PURE_PYTHON=1 to
force the pure-Python fallback.  ``BACKEND`` names the default choice.
"""
import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("STONED_PURE_PYTHON") == "1":
        raise ImportError("pure python forced")
    from . import _ckernels
    BACKEND = "cython"
except ImportError:
    _ckernels = None
    BACKEND = "python"


def _pick(backend):
    backend = backend or BACKEND
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        return _ckernels
    if backend == "python":
        return _pykernels
    raise ValueError(f"unknown backend {backend!r}")


def chain_walk(offsets, targets, cum, u, s0, backend=None):
    mod = _pick(backend)
    return mod.chain_walk(np.ascontiguousarray(offsets, dtype=np.int64),
                          np.ascontiguousarray(targets, dtype=np.int64),
                          np.ascontiguousarray(cum, dtype=np.float64),
                          np.ascontiguousarray(u, dtype=np.float64), int(s0))


def billiard_walk(window, letters, phase0, u, p, grassmannian, backend=None):
    mod = _pick(backend)
    return mod.billiard_walk(np.asarray(window, dtype=np.int64),
                             np.ascontiguousarray(letters, dtype=np.int64), int(phase0),
                             np.ascontiguousarray(u, dtype=np.float64), float(p), bool(grassmannian))


def scan_sweeps(occ, nscans, p, pt, u, upos, backend=None):
    mod = _pick(backend)
    return mod.scan_sweeps(occ, int(nscans), float(p), float(pt),
                           np.ascontiguousarray(u, dtype=np.float64), int(upos))
