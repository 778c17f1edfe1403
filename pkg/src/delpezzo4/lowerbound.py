"""Constructive lower-bound machinery: the even-s fiber quadrics, their base
point, the three binary quadratic forms parametrizing fiber points, the gcd
content identity, the divisor-decomposition predicates, and a bulk generator
of certified U-points.
"""

from dataclasses import dataclass
import math

from .errors import BadInput, NotADivisor
from .quadrics import TernaryQuadric, fiber_form
from .surface import SurfacePoint, canonical_tuple, line_id, norm_inf

ETA_DEFAULT = 0.25


@dataclass(frozen=True)
class ParamInput:
    """Admissible parameters: s even, gcd(r,s) = 1, gcd(x, 2sy) = 1."""

    r: int
    s: int
    x: int
    y: int

    def __post_init__(self):
        if self.s % 2 != 0:
            raise BadInput("s must be even")
        if math.gcd(self.r, self.s) != 1:
            raise BadInput("r and s must be coprime")
        if math.gcd(self.x, 2 * self.s * self.y) != 1:
            raise BadInput("need gcd(x, 2sy) = 1")


@dataclass(frozen=True)
class FormTriple:
    """Values (f1, f2, f3) of the fiber parametrization and their gcd."""

    f1: int
    f2: int
    f3: int
    content: int


def q_rs(r: int, s: int) -> TernaryQuadric:
    """The fiber form (r^2+s^2, s^2-r^2, -2)."""
    if (r, s) == (0, 0):
        raise BadInput("(0,0) is not a fiber key")
    return fiber_form(r, s)


def base_point(r: int, s: int) -> tuple:
    """(1, 1, s), a solution of the fiber form for every (r, s)."""
    return (1, 1, s)


def forms_eval(inp: ParamInput) -> FormTriple:
    """Evaluate the three forms at (x, y); their content follows the gcd identity."""
    r, s, x, y = inp.r, inp.s, inp.x, inp.y
    w = r * r + s * s
    f1 = x * x + 4 * s * x * y + 2 * w * y * y
    f2 = x * x - 2 * w * y * y
    f3 = -s * x * x - 2 * w * x * y - 2 * s * w * y * y
    assert q_rs(r, s).value((f1, f2, f3)) == 0
    return FormTriple(f1, f2, f3, math.gcd(f1, f2, f3))


def content_lemma_check(inp: ParamInput) -> bool:
    """content(f1,f2,f3) == gcd(x, r^2+s^2) * gcd(x+2sy, r^2-s^2)."""
    triple = forms_eval(inp)
    r, s, x, y = inp.r, inp.s, inp.x, inp.y
    predicted = math.gcd(x, r * r + s * s) * math.gcd(x + 2 * s * y, r * r - s * s)
    return triple.content == predicted


def decomposition_predicates(r, s, a, b, u, v, B=None) -> bool:
    """The four divisor-decomposition conditions on (a, b, u, v).

    With x = a*u, z = b*v, a | r^2+s^2 and b | r^2-s^2: (1) gcd(u, c) =
    gcd(v, d) = 1 for the cofactors c, d; (2) gcd(a,v) = gcd(u,b) = gcd(u,v)
    = gcd(u,s) = 1; (3) 2s | au - bv; (4) the (u, v) box, checked only when
    B is supplied (its bounds depend on B).
    """
    w, dd = r * r + s * s, r * r - s * s
    if a == 0 or w % a != 0:
        raise NotADivisor(f"{a} does not divide r^2+s^2 = {w}")
    if b == 0 or dd % b != 0:
        raise NotADivisor(f"{b} does not divide r^2-s^2 = {dd}")
    c = w // a
    d = dd // b
    if math.gcd(u, c) != 1 or math.gcd(v, abs(d)) != 1:
        return False
    if (
        math.gcd(a, v) != 1
        or math.gcd(u, b) != 1
        or math.gcd(u, v) != 1
        or math.gcd(u, s) != 1
    ):
        return False
    if (a * u - b * v) % (2 * s) != 0:
        return False
    if u < 1 or v < 1:
        return False
    if B is not None:
        # exact form of u <= sqrt(Bb/4as) and v <= sqrt(Ba/4bs)
        if u * u * 4 * a * s > B * b or v * v * 4 * b * s > B * a:
            return False
    return True


@dataclass(frozen=True)
class GeneratedPoint:
    """A U-point with the parameters that produced it."""

    r: int
    s: int
    x: int
    y: int
    content: int
    point: SurfacePoint


def lift_parametrized(inp: ParamInput) -> tuple:
    """Surface coordinates [r f1/n, s f2/n, s f1/n, r f2/n, f3/n] for n = content."""
    triple = forms_eval(inp)
    n = triple.content
    raw = (
        inp.r * triple.f1 // n,
        inp.s * triple.f2 // n,
        inp.s * triple.f1 // n,
        inp.r * triple.f2 // n,
        triple.f3 // n,
    )
    return raw, triple


def generate_points(B: int, eta: float = ETA_DEFAULT):
    """Certified U-points of height <= B from the even-s fiber parametrization.

    Scans (r, s) with 1 <= r, s <= B^eta (s even, coprime) and (x, y) in the
    content-one boxes x <= sqrt(B/4s), |y| <= sqrt(B/16s^3) with
    gcd(x, 2sy) = 1; every height is re-checked and line points are dropped.
    Returns (sorted SurfacePoint list, GeneratedPoint provenance list).
    """
    if B < 16:
        raise BadInput("B must be >= 16")
    if not 0 < eta <= 0.5:
        raise BadInput("eta must lie in (0, 1/2]")
    pmax = int(B**eta)
    seen = {}
    prov = []
    for s in range(2, pmax + 1, 2):
        xmax = math.isqrt(B // (4 * s))
        ymax = math.isqrt(B // (16 * s**3))
        if xmax < 1:
            continue
        for r in range(1, pmax + 1):
            if math.gcd(r, s) != 1:
                continue
            for x in range(1, xmax + 1):
                for y in range(-ymax, ymax + 1):
                    if math.gcd(x, 2 * s * y) != 1:
                        continue
                    inp = ParamInput(r, s, x, y)
                    raw, triple = lift_parametrized(inp)
                    cpt = canonical_tuple(raw)
                    if norm_inf(cpt) > B or line_id(cpt) is not None:
                        continue
                    if cpt not in seen:
                        seen[cpt] = True
                        prov.append(
                            GeneratedPoint(r, s, x, y, triple.content, SurfacePoint(cpt))
                        )
    points = sorted((g.point for g in prov), key=lambda p: p.coords)
    return points, prov
