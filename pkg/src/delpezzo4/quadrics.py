"""Diagonal ternary quadratic forms: determinant invariants, exact primitive
vector counts in boxes, the divisor-style upper-bound evaluator, and a survey
comparing the two across conic-fibration fibers.
"""

from dataclasses import dataclass
import math

import numpy as np

from .arith import divisor_count
from .errors import BadInput, BoundTooLarge, SingularForm
from .vecutil import vec_is_square

_CHUNK_CELLS = 4 * 10**6
_DEGENERATE_CELLS = 10**8  # guard for forms with zero diagonal entries
_INT64_GUARD = 2**62


@dataclass(frozen=True)
class TernaryQuadric:
    """a1*X1^2 + a2*X2^2 + a3*X3^2 with exact integer coefficients."""

    diag: tuple

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(int(v) for v in self.diag))
        if len(self.diag) != 3:
            raise BadInput("need 3 diagonal coefficients")

    def value(self, x) -> int:
        a1, a2, a3 = self.diag
        return a1 * x[0] ** 2 + a2 * x[1] ** 2 + a3 * x[2] ** 2


@dataclass(frozen=True)
class QuadricInvariants:
    delta: int   # |a1*a2*a3|
    delta0: int  # gcd of the 2x2 minors, = gcd of pairwise products


def invariants(q: TernaryQuadric) -> QuadricInvariants:
    """Determinant invariants of the diagonal matrix."""
    a1, a2, a3 = q.diag
    if a1 == 0 or a2 == 0 or a3 == 0:
        raise SingularForm(f"zero diagonal entry in {q.diag}")
    return QuadricInvariants(abs(a1 * a2 * a3), math.gcd(a1 * a2, a1 * a3, a2 * a3))


def hb_bound(q: TernaryQuadric, B1: int, B2: int, B3: int) -> float:
    """(1 + (B1*B2*B3*delta0^2/delta)^(1/3)) * d(delta), sans implied constant."""
    if min(B1, B2, B3) < 1:
        raise BadInput("boxes must be >= 1")
    inv = invariants(q)
    core = B1 * B2 * B3 * inv.delta0**2 / inv.delta
    return (1.0 + core ** (1.0 / 3.0)) * divisor_count(inv.delta)


def _weights(*coords) -> np.ndarray:
    """2^(number of nonzero coordinates) per column, as float-safe int64."""
    n = np.zeros(coords[0].shape, dtype=np.int64)
    for c in coords:
        n += c != 0
    return np.left_shift(np.int64(1), n)


def _count_box_generic(diag, B1: int, B2: int, B3: int) -> int:
    """Quadrant kernel for forms with no zero coefficient."""
    a1, a2, a3 = diag
    scale = max(abs(a1), abs(a2), abs(a3)) * max(B1, B2, B3) ** 2
    if scale >= _INT64_GUARD:
        raise BoundTooLarge("box too large for exact int64 evaluation")
    total = 0
    x2 = np.arange(B2 + 1, dtype=np.int64)
    t2 = a2 * x2 * x2
    rows = max(1, _CHUNK_CELLS // (B2 + 1))
    for lo in range(0, B1 + 1, rows):
        x1 = np.arange(lo, min(lo + rows, B1 + 1), dtype=np.int64)
        v = -(a1 * x1 * x1)[:, None] - t2[None, :]
        quo = v // a3
        ok = (v == quo * a3) & (quo >= 0)
        sq, root = vec_is_square(np.where(ok, quo, 1))
        ok &= sq & (root <= B3)
        i, j = np.nonzero(ok)
        if i.size == 0:
            continue
        c1 = x1[i]
        c2 = x2[j]
        c3 = root[i, j]
        prim = np.gcd(np.gcd(c1, c2), c3) == 1
        total += int(_weights(c1[prim], c2[prim], c3[prim]).sum())
    return total


def _count_box_degenerate(diag, boxes) -> int:
    """Direct signed scan for forms with zero coefficients (small boxes only)."""
    cells = math.prod(2 * b + 1 for b in boxes)
    if cells > _DEGENERATE_CELLS:
        raise BoundTooLarge("degenerate-form box too large for a direct scan")
    axes = [np.arange(-b, b + 1, dtype=np.int64) for b in boxes]
    g1, g2, g3 = np.meshgrid(*axes, indexing="ij", sparse=True)
    a1, a2, a3 = diag
    zero = a1 * g1 * g1 + a2 * g2 * g2 + a3 * g3 * g3 == 0
    prim = np.gcd(np.gcd(np.abs(g1), np.abs(g2)), np.abs(g3)) == 1
    return int(np.count_nonzero(zero & prim))


def count_box(q: TernaryQuadric, B1: int, B2: int, B3: int) -> int:
    """Exact count of primitive integer vectors with q = 0 and |Xi| <= Bi.

    Vectors, not projective classes: X and -X both count.
    """
    if min(B1, B2, B3) < 0:
        raise BadInput("boxes must be >= 0")
    if 0 in q.diag:
        return _count_box_degenerate(q.diag, (B1, B2, B3))
    return _count_box_generic(q.diag, B1, B2, B3)


# ------------------------------------------------------------- fiber survey

def fiber_form(r: int, s: int) -> TernaryQuadric:
    """(r^2+s^2) X1^2 - (r^2-s^2) X2^2 - 2 X3^2."""
    return TernaryQuadric((r * r + s * s, s * s - r * r, -2))


def _survey_keys(rmax: int):
    """Normalized fiber keys with max(|r|,|s|) <= rmax and r^2 != s^2, s >= 0.

    Negative-s keys carry the identical form; callers mirror the rows.
    """
    keys = []
    if rmax >= 1:
        keys.append((0, 1))
    for r in range(1, rmax + 1):
        for s in range(0, rmax + 1):
            if math.gcd(r, s) == 1 and r != s:
                keys.append((r, s))
    return sorted(keys, key=lambda k: (max(abs(k[0]), abs(k[1])), k))


@dataclass
class SurveyReport:
    B: int
    rmax: int
    rows: list            # (r, s, count, bound, ratio), sorted by fiber size
    max_ratio: float
    mean_ratio: float
    first_half_max: float
    second_half_max: float
    ok: bool              # second-half max <= 2x first-half max


def hb_ratio_survey(B: int, rmax: int) -> SurveyReport:
    """count_box / hb_bound over all fibers up to rmax (singular ones skipped)."""
    if B < 1 or rmax < 0:
        raise BadInput("need B >= 1 and rmax >= 0")
    rows = []
    for r, s in _survey_keys(rmax):
        m = max(abs(r), abs(s))
        box = B // m
        if box < 1:
            continue
        q = fiber_form(r, s)
        count = count_box(q, box, box, B)
        bound = hb_bound(q, box, box, B)
        rows.append((r, s, count, bound, count / bound))
        if s > 0 and r > 0:  # mirror key (r,-s) has the same form
            rows.append((r, -s, count, bound, count / bound))
    rows.sort(key=lambda row: (max(abs(row[0]), abs(row[1])), row[0], row[1]))
    if not rows:
        return SurveyReport(B, rmax, [], 0.0, 0.0, 0.0, 0.0, True)
    ratios = [row[4] for row in rows]
    half = len(rows) // 2
    first = max(ratios[:half]) if half else max(ratios)
    second = max(ratios[half:])
    return SurveyReport(
        B,
        rmax,
        rows,
        max(ratios),
        sum(ratios) / len(ratios),
        first,
        second,
        second <= 2.0 * first,
    )
