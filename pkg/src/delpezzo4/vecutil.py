"""Small exact-arithmetic helpers for the numpy enumeration kernels."""

import numpy as np


def vec_isqrt(h: np.ndarray) -> np.ndarray:
    """Floor square root of a nonnegative int64 array, exact.

    float64 sqrt is only a first guess; two correction passes pin the exact
    floor as long as h < 2^53 (callers keep every value far below that).
    """
    t = np.sqrt(h.astype(np.float64)).astype(np.int64)
    # one step down if we overshot, one step up if we undershot
    t -= (t * t > h).astype(np.int64)
    t += ((t + 1) * (t + 1) <= h).astype(np.int64)
    return t


def vec_is_square(h: np.ndarray):
    """(mask, root) for which entries of an int64 array are perfect squares."""
    ok = h >= 0
    hh = np.where(ok, h, 0)
    t = vec_isqrt(hh)
    return ok & (t * t == hh), t
