"""Two independent exact counters for the open-surface point count N_U(B):
exhaustive enumeration over the defining equations, and decomposition into
conic-fibration fibers counted per fiber. Plus the fiber map itself, a height
histogram for growth experiments, and a reconciliation harness.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import math
import time
from typing import NamedTuple

import numpy as np

from .errors import BadInput, BoundTooLarge, MismatchError
from .surface import SurfacePoint, canonical_tuple, line_mask, normalize_pair, project
from .vecutil import vec_is_square

BRUTE_CEILING = 2000
FIBER_CEILING = 10**6
_CHUNK = 4 * 10**6


class FiberKey(NamedTuple):
    """Normalized base point (r, s) of the first projection."""

    r: int
    s: int


class FiberCoords(NamedTuple):
    """Primitive solution of (r^2+s^2)X1^2 - (r^2-s^2)X2^2 - 2X3^2 = 0."""

    X1: int
    X2: int
    X3: int


@dataclass
class CountRecord:
    B: int
    method: str  # "brute" or "fiber"
    count: int
    elapsed: float


# ------------------------------------------------------------ brute counter

def _flush_hits(pts, c1, c2, c3, c4, c5):
    """Line-filter parallel coordinate arrays and add canonical tuples."""
    keep = ~line_mask(c1, c2, c3, c4, c5)
    if not keep.any():
        return
    cols = np.column_stack([c1[keep], c2[keep], c3[keep], c4[keep], c5[keep]])
    pts.update(map(tuple, cols.tolist()))


def _brute_main_branch(B: int, pts: set):
    """x1 >= 1, x3 != 0: x2 runs over the progression q*k forced by x3 | x1*x2."""
    x3 = np.arange(1, B + 1, dtype=np.int64)
    for x1 in range(1, B + 1):
        g = np.gcd(np.int64(x1), x3)
        q = x3 // g
        w = x1 // g
        K = np.minimum(B // q, B // w)
        lens = 2 * K + 1
        segs = np.repeat(np.arange(B), lens)
        starts = np.concatenate(([0], np.cumsum(lens)[:-1]))
        k = np.arange(int(lens.sum()), dtype=np.int64) - np.repeat(starts + K, lens)
        x2 = q[segs] * k
        x4 = w[segs] * k
        x3v = x3[segs]
        S = x1 * x1 + x2 * x2 + x3v * x3v - x4 * x4
        ok = (S >= 0) & (S % 2 == 0)
        half = np.where(ok, S >> 1, 1)
        sq, t = vec_is_square(half)
        ok &= sq & (t <= B)
        if not ok.any():
            continue
        h2, h3, h4, h5 = x2[ok], x3v[ok], x4[ok], t[ok]
        h1 = np.full(h2.shape, x1, dtype=np.int64)
        prim = np.gcd.reduce([h1, np.abs(h2), h3, np.abs(h4), h5]) == 1
        h1, h2, h3, h4, h5 = h1[prim], h2[prim], h3[prim], h4[prim], h5[prim]
        pos = h5 > 0
        for f in (1, -1):  # the x3-negated twin shares the same quadric values
            _flush_hits(pts, h1, h2, f * h3, f * h4, h5)
            _flush_hits(pts, h1[pos], h2[pos], f * h3[pos], f * h4[pos], -h5[pos])


def _brute_zero_branch(B: int, pts: set, shape: str):
    """The x3 = 0 or x1 = 0 degenerations, each a difference/sum of squares."""
    a = np.arange(1, B + 1, dtype=np.int64)[:, None]
    b = np.arange(-B, B + 1, dtype=np.int64)[None, :]
    if shape == "x3zero":  # points (a, 0, 0, b, +-t): a^2 - b^2 = 2 t^2
        S = a * a - b * b
    elif shape == "x1x3zero":  # points (0, a, 0, b, +-t): a^2 - b^2 = 2 t^2
        S = a * a - b * b
    else:  # "x1x4zero": points (0, a, b, 0, +-t), b != 0: a^2 + b^2 = 2 t^2
        S = a * a + b * b
    ok = (S >= 0) & (S % 2 == 0)
    half = np.where(ok, S >> 1, 1)
    sq, t = vec_is_square(half)
    ok &= sq & (t <= B)
    if shape == "x1x4zero":
        ok &= b != 0
    i, j = np.nonzero(ok)
    if i.size == 0:
        return
    av = a[i, 0]
    bv = b[0, j]
    tv = t[i, j]
    prim = np.gcd.reduce([av, np.abs(bv), tv]) == 1
    av, bv, tv = av[prim], bv[prim], tv[prim]
    z = np.zeros(av.shape, dtype=np.int64)
    pos = tv > 0
    for c5 in (tv, -tv[pos]):
        if c5 is not tv:
            a5, b5, z5 = av[pos], bv[pos], z[pos]
        else:
            a5, b5, z5 = av, bv, z
        if shape == "x3zero":
            _flush_hits(pts, a5, z5, z5, b5, c5)
        elif shape == "x1x3zero":
            _flush_hits(pts, z5, a5, z5, b5, c5)
        else:
            _flush_hits(pts, z5, a5, b5, z5, c5)


def brute_enumerate(B: int, collect: bool = False, ceiling: int = BRUTE_CEILING):
    """Exhaustive exact count of U-points of height <= B.

    Returns a CountRecord, or (CountRecord, sorted SurfacePoint list) when
    collect is set.
    """
    if B < 1:
        raise BadInput("B must be >= 1")
    if B > ceiling:
        raise BoundTooLarge(f"B = {B} above the exhaustive ceiling {ceiling}")
    t0 = time.perf_counter()
    pts = set()
    _brute_main_branch(B, pts)
    for shape in ("x3zero", "x1x3zero", "x1x4zero"):
        _brute_zero_branch(B, pts, shape)
    rec = CountRecord(B, "brute", len(pts), time.perf_counter() - t0)
    if collect:
        return rec, [SurfacePoint(c) for c in sorted(pts)]
    return rec


# ------------------------------------------------------------- fiber mapper

def fiber_of(p):
    """Fiber key (r, s) of the first projection and the fiber coordinates."""
    c = p.coords if isinstance(p, SurfacePoint) else tuple(p)
    x1, x2, x3, x4, x5 = c
    r, s = project(1, c)
    X1 = x1 // r if r != 0 else x3 // s
    X2 = x4 // r if r != 0 else x2 // s
    X3 = x5
    assert (x1, x2, x3, x4) == (r * X1, s * X2, s * X1, r * X2)
    key, X = FiberKey(r, s), FiberCoords(X1, X2, X3)
    A, C = r * r + s * s, r * r - s * s
    assert A * X1 * X1 - C * X2 * X2 - 2 * X3 * X3 == 0
    assert math.gcd(X1, X2, X3) == 1
    return key, X


def lift_to_surface(key, X) -> SurfacePoint:
    """Inverse of fiber_of up to the sign of the fiber class."""
    r, s = key
    X1, X2, X3 = X
    return SurfacePoint(canonical_tuple((r * X1, s * X2, s * X1, r * X2, X3)))


# ------------------------------------------------------------ fiber counter

def _stratum_keys(m: int, B: int, fold: bool = True):
    """Keys (r, s) with max(|r|, |s|) = m, as arrays (r, s, multiplicity).

    With fold set, the mirror key (r, -s) is not emitted: its fiber form and
    hence its count and height histogram are identical, so the s > 0 key
    carries multiplicity 2. Point collection needs the keys verbatim and
    passes fold=False.
    """
    if m == 1:
        if fold:
            r = np.array([0, 1, 1], dtype=np.int64)
            s = np.array([1, 0, 1], dtype=np.int64)
            w = np.array([1, 1, 2], dtype=np.int64)
            return r, s, w
        r = np.array([0, 1, 1, 1], dtype=np.int64)
        s = np.array([1, 0, 1, -1], dtype=np.int64)
        return r, s, np.ones(4, dtype=np.int64)
    u = np.arange(1, m, dtype=np.int64)
    u = u[np.gcd(u, np.int64(m)) == 1]
    mm = np.full(u.shape, m, dtype=np.int64)
    if fold:
        r = np.concatenate([mm, u])
        s = np.concatenate([u, mm])
        return r, s, np.full(r.shape, 2, dtype=np.int64)
    r = np.concatenate([mm, mm, u, u])
    s = np.concatenate([u, -u, mm, -mm])
    return r, s, np.ones(r.shape, dtype=np.int64)


def _expand_classes(rk, sk, X1, X2, X3):
    """Canonical surface tuples of every sign class over nonneg fiber hits."""
    out = set()
    for r, s, a, b, c in zip(rk.tolist(), sk.tolist(), X1.tolist(), X2.tolist(), X3.tolist()):
        for ea in (1, -1) if a else (1,):
            for eb in (1, -1) if b else (1,):
                for ec in (1, -1) if c else (1,):
                    va, vb, vc = ea * a, eb * b, ec * c
                    out.add(canonical_tuple((r * va, s * vb, s * va, r * vb, vc)))
    return out


# 2*X3^2 = R forces R mod 16 in {0, 2, 8}
_SQ2_MOD16 = np.zeros(16, dtype=np.bool_)
_SQ2_MOD16[[0, 2, 8]] = True
# grid values are bounded by 2*B^2, so int32 is exact up to this B
_INT32_BOUND = 30000


def _scan_chunk(rk, sk, wk, m, M, B, lo, hi, mode, hist, pts):
    """Count one block of keys sharing box radius M, X1 rows lo..hi-1."""
    dt = np.int32 if B <= _INT32_BOUND else np.int64
    rg, sg = rk.astype(dt), sk.astype(dt)
    A = (rg * rg + sg * sg)[:, None, None]
    C = (rg * rg - sg * sg)[:, None, None]
    X1 = np.arange(lo, hi, dtype=dt)
    X2 = np.arange(M + 1, dtype=dt)
    R = A * (X1 * X1)[None, :, None] - C * (X2 * X2)[None, None, :]
    ok = _SQ2_MOD16[R & 15]
    if bool((C > 0).any()):
        ok &= R >= 0
    ki, i1, i2 = np.nonzero(ok)
    if ki.size == 0:
        return 0
    half = R[ki, i1, i2].astype(np.int64) >> 1
    sq, t = vec_is_square(half)
    if not sq.any():
        return 0
    ki, i1, i2, t = ki[sq], i1[sq], i2[sq], t[sq]
    # |X3| <= B holds automatically: X3 <= m*M <= B
    a, b, c = X1[i1].astype(np.int64), X2[i2].astype(np.int64), t
    prim = np.gcd(np.gcd(a, b), c) == 1
    ki, a, b, c = ki[prim], a[prim], b[prim], c[prim]
    rr, ss = rk[ki], sk[ki]
    keep = ~line_mask(rr * a, ss * b, ss * a, rr * b, c)
    if not keep.any():
        return 0
    ki, a, b, c, rr, ss = ki[keep], a[keep], b[keep], c[keep], rr[keep], ss[keep]
    n = (a > 0).astype(np.int64) + (b > 0) + (c > 0)
    w = np.left_shift(np.int64(1), n - 1) * wk[ki]
    if mode == "hist":
        heights = np.maximum(m * np.maximum(a, b), c)
        hist += np.bincount(heights, weights=w.astype(np.float64), minlength=hist.size)
    elif mode == "points":
        pts.update(_expand_classes(rr, ss, a, b, c))
    return int(w.sum())


def _scan_strata(B: int, m_list, mode: str = "count"):
    """Sum fiber counts over whole max(|r|,|s|) strata; optionally histogram/points."""
    total = 0
    hist = np.zeros(B + 1, dtype=np.float64) if mode == "hist" else None
    pts = set() if mode == "points" else None
    for m in m_list:
        M = B // m
        if M < 1:
            continue
        rk, sk, wk = _stratum_keys(m, B, fold=mode != "points")
        cells = (M + 1) * (M + 1)
        if cells > _CHUNK:
            rows = max(1, _CHUNK // (M + 1))
            for kidx in range(rk.size):
                for lo in range(0, M + 1, rows):
                    total += _scan_chunk(
                        rk[kidx : kidx + 1], sk[kidx : kidx + 1], wk[kidx : kidx + 1],
                        m, M, B, lo, min(lo + rows, M + 1), mode, hist, pts,
                    )
        else:
            step = max(1, _CHUNK // cells)
            for kidx in range(0, rk.size, step):
                total += _scan_chunk(
                    rk[kidx : kidx + step], sk[kidx : kidx + step], wk[kidx : kidx + step],
                    m, M, B, 0, M + 1, mode, hist, pts,
                )
    if mode == "hist":
        return total, hist
    if mode == "points":
        return total, pts
    return total


def _worker_strata(args):
    B, m_list = args
    return _scan_strata(B, m_list, "count")


def count_fiber(key, B: int) -> int:
    """Projective classes on one fiber inside the height-B box, lines excluded."""
    r, s = normalize_pair(key)
    if (r, s) != tuple(key):
        raise BadInput(f"key {tuple(key)} is not normalized")
    if B < 1:
        raise BadInput("B must be >= 1")
    m = max(abs(r), abs(s))
    M = B // m
    if M < 1:
        return 0
    rk = np.array([r], dtype=np.int64)
    sk = np.array([s], dtype=np.int64)
    wk = np.ones(1, dtype=np.int64)
    total = 0
    rows = max(1, _CHUNK // (M + 1))
    for lo in range(0, M + 1, rows):
        total += _scan_chunk(rk, sk, wk, m, M, B, lo, min(lo + rows, M + 1), "count", None, None)
    return total


def fiber_count(B: int, workers: int = 1, ceiling: int = FIBER_CEILING) -> CountRecord:
    """Exact N_U(B) as a sum of per-fiber counts over all normalized keys."""
    if B < 1:
        raise BadInput("B must be >= 1")
    if B > ceiling:
        raise BoundTooLarge(f"B = {B} above the fibration ceiling {ceiling}")
    t0 = time.perf_counter()
    if workers <= 1:
        total = _scan_strata(B, range(1, B + 1))
    else:
        jobs = [(B, list(range(w + 1, B + 1, workers))) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_worker_strata, jobs))
    return CountRecord(B, "fiber", total, time.perf_counter() - t0)


def fiber_height_histogram(B: int, ceiling: int = FIBER_CEILING):
    """hist[h] = number of U-points of height exactly h, via one fiber sweep."""
    if B < 1:
        raise BadInput("B must be >= 1")
    if B > ceiling:
        raise BoundTooLarge(f"B = {B} above the fibration ceiling {ceiling}")
    total, hist = _scan_strata(B, range(1, B + 1), "hist")
    out = hist.astype(np.int64)
    assert int(out.sum()) == total
    return out


def fiber_points(B: int) -> set:
    """Canonical coordinate tuples of all U-points, via the fiber scan."""
    _, pts = _scan_strata(B, range(1, B + 1), "points")
    return pts


# ------------------------------------------------------------ reconciliation

@dataclass
class ReconcileReport:
    rows: list  # (B, count, brute_seconds, fiber_seconds)
    ok: bool


def reconcile(B_list) -> ReconcileReport:
    """Assert both counters agree at every B; explain the first failure."""
    rows = []
    for B in sorted(B_list):
        rb = brute_enumerate(B)
        rf = fiber_count(B)
        if rb.count != rf.count:
            _, brute_pts = brute_enumerate(B, collect=True)
            bset = {p.coords for p in brute_pts}
            fset = fiber_points(B)
            raise MismatchError(B, sorted(bset - fset), sorted(fset - bset))
        rows.append((B, rb.count, rb.elapsed, rf.elapsed))
    return ReconcileReport(rows, True)
