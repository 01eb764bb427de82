"""Pure-numpy implementation of the Monte-Carlo stepping kernel.

Selected at import time when the compiled extension is unavailable.  The
ufunc sequence reproduces the compiled kernel's arithmetic exactly (same
operations, same order), so the two backends yield bit-identical paths.
"""

from __future__ import annotations

import numpy as np


def step_paths(x: np.ndarray, alive: np.ndarray, default_time: np.ndarray,
               z: np.ndarray, adt: float, b: float, csd: float,
               t_next: float) -> int:
    """Advance live paths one Euler step; absorb at the first nonpositive state.

    Same contract as the compiled kernel: updates x/alive/default_time in
    place and returns the number of paths still alive.
    """
    mask = alive.view(bool)
    xm = np.maximum(x, 0.0)
    xn = ((x + adt * x) + b) + ((csd * np.sqrt(xm)) * z)
    defaulted = mask & (xn <= 0.0)
    survived = mask & (xn > 0.0)
    x[survived] = xn[survived]
    x[defaulted] = 0.0
    default_time[defaulted] = t_next
    alive[defaulted] = 0
    return int(np.count_nonzero(alive))
