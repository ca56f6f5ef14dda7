"""Backend switch for the integer kernels.

The backend is read from ``MAXPLUS_PENCIL_BACKEND`` (``numba`` or ``numpy``)
at import time and can be changed later with :func:`set_backend`.  Both
backends return identical integers; only speed differs.
"""

import os

import numpy as np

from . import _kernels as K

_BACKENDS = {
    "numba": (K.vi_sweeps_numba, K.energy_down_numba, K.energy_up_numba, K.karp_numba),
    "numpy": (K.vi_sweeps_numpy, K.energy_down_numpy, K.energy_up_numpy, K.karp_numpy),
}

_active = None
vi_sweeps = energy_down = energy_up = karp = None


def set_backend(name: str) -> None:
    global _active, vi_sweeps, energy_down, energy_up, karp
    name = name.lower()
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose from {sorted(_BACKENDS)}")
    if name == "numba" and not K.HAVE_NUMBA:
        name = "numpy"
    vi_sweeps, energy_down, energy_up, karp = _BACKENDS[name]
    _active = name


def backend() -> str:
    return _active


def as_int_array(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64)


set_backend(os.environ.get("MAXPLUS_PENCIL_BACKEND", "numba" if K.HAVE_NUMBA else "numpy"))
