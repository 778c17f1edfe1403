"""Point model for the quartic del Pezzo surface V in P^4: the two defining
quadrics, canonical primitive representatives, the max-abs height, the
eight-line filter cutting out the open set U, and the two projections to P^1.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import BadInput, NotOnSurface, ZeroVector

# sign table shared by the two blocks of rational lines:
# L1..L4: (x3,x4,x5) = (e1*x1, e1*x2, e2*x1)
# L5..L8: (x3,x4,x5) = (e1*x2, e1*x1, e2*x2)
_LINE_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def quadric1(v) -> int:
    """x1*x2 - x3*x4."""
    return v[0] * v[1] - v[2] * v[3]


def quadric2(v) -> int:
    """x1^2 + x2^2 + x3^2 - x4^2 - 2*x5^2."""
    return v[0] ** 2 + v[1] ** 2 + v[2] ** 2 - v[3] ** 2 - 2 * v[4] ** 2


def is_on_surface(raw) -> bool:
    """True iff both defining forms vanish."""
    return quadric1(raw) == 0 and quadric2(raw) == 0


def norm_inf(v) -> int:
    """Height of an integer tuple: max |entry|."""
    return max(abs(c) for c in v)


def line_id(coords):
    """Index 1..8 of the rational line whose pattern coords matches, else None.

    Ties (points matching several patterns) resolve to the smallest index.
    """
    x1, x2, x3, x4, x5 = coords
    k = 0
    for head, tail in ((x1, x2), (x2, x1)):
        for e1, e2 in _LINE_SIGNS:
            k += 1
            if x3 == e1 * head and x4 == e1 * tail and x5 == e2 * head:
                return k
    return None


def line_mask(x1, x2, x3, x4, x5) -> np.ndarray:
    """Vectorized line_id is not None over parallel coordinate arrays."""
    m = np.zeros(np.shape(x1), dtype=bool)
    for e1, e2 in _LINE_SIGNS:
        m |= (x3 == e1 * x1) & (x4 == e1 * x2) & (x5 == e2 * x1)
        m |= (x3 == e1 * x2) & (x4 == e1 * x1) & (x5 == e2 * x2)
    return m


@dataclass(frozen=True)
class SurfacePoint:
    """Canonical primitive representative of a rational point on V."""

    coords: tuple

    def __post_init__(self):
        c = tuple(int(v) for v in self.coords)
        object.__setattr__(self, "coords", c)
        if len(c) != 5:
            raise BadInput("need 5 coordinates")
        if not any(c):
            raise ZeroVector("zero vector is not projective")
        if not is_on_surface(c):
            raise NotOnSurface(f"{c} fails a defining quadric")
        if math.gcd(*c) != 1:
            raise BadInput(f"{c} is not primitive")
        if next(v for v in c if v) < 0:
            raise BadInput(f"{c} violates the sign rule")

    @property
    def height(self) -> int:
        return norm_inf(self.coords)

    @property
    def line(self):
        return line_id(self.coords)

    def __str__(self):
        return " ".join(str(v) for v in self.coords)


def canonical_tuple(raw) -> tuple:
    """Reduce by the gcd and flip sign so the first nonzero entry is positive."""
    c = tuple(int(v) for v in raw)
    if not any(c):
        raise ZeroVector("zero vector is not projective")
    g = math.gcd(*c)
    c = tuple(v // g for v in c)
    if next(v for v in c if v) < 0:
        c = tuple(-v for v in c)
    return c


def normalize_primitive(raw) -> SurfacePoint:
    """Canonical SurfacePoint for any integer representative on V."""
    c = tuple(int(v) for v in raw)
    if len(c) != 5:
        raise BadInput("need 5 coordinates")
    if not any(c):
        raise ZeroVector("zero vector is not projective")
    if not is_on_surface(c):
        raise NotOnSurface(f"{c} fails a defining quadric")
    return SurfacePoint(canonical_tuple(c))


def normalize_pair(pair) -> tuple:
    """Canonical coprime representative of a point of P^1."""
    a, b = int(pair[0]), int(pair[1])
    if a == 0 and b == 0:
        raise ZeroVector("zero pair is not projective")
    g = math.gcd(a, b)
    a, b = a // g, b // g
    if (a, b) < (0, 0):  # lexicographic: first nonzero entry is negative
        a, b = -a, -b
    return (a, b)


def project(axis: int, p) -> tuple:
    """Projection to P^1: axis 1 is [x1,x3] (else [x4,x2]), axis 2 is [x1,x4] (else [x3,x2])."""
    c = p.coords if isinstance(p, SurfacePoint) else tuple(p)
    x1, x2, x3, x4, x5 = c
    if axis == 1:
        pair = (x1, x3) if (x1, x3) != (0, 0) else (x4, x2)
    elif axis == 2:
        pair = (x1, x4) if (x1, x4) != (0, 0) else (x3, x2)
    else:
        raise BadInput("axis must be 1 or 2")
    return normalize_pair(pair)


# ------------------------------------------------ complex-line confirmation

# the eight non-rational lines, each coordinate a Gaussian unit times a or b:
# entries are (param, unit) with param 0 for a, 1 for b and unit in Z[i]
_I = (0, 1)
_MI = (0, -1)
_ONE = (1, 0)
_MONE = (-1, 0)
_COMPLEX_LINES = (
    ((0, _ONE), (1, _ONE), (0, _I), (1, _MI), (1, _ONE)),
    ((0, _ONE), (1, _ONE), (0, _I), (1, _MI), (1, _MONE)),
    ((0, _ONE), (1, _ONE), (0, _MI), (1, _I), (1, _ONE)),
    ((0, _ONE), (1, _ONE), (0, _MI), (1, _I), (1, _MONE)),
    ((0, _ONE), (1, _ONE), (1, _MI), (0, _I), (0, _ONE)),
    ((0, _ONE), (1, _ONE), (1, _MI), (0, _I), (0, _MONE)),
    ((0, _ONE), (1, _ONE), (1, _I), (0, _MI), (0, _ONE)),
    ((0, _ONE), (1, _ONE), (1, _I), (0, _MI), (0, _MONE)),
)

_UNITS = ((1, 0), (0, 1))  # substitutions a = alpha or i*alpha, same for b


def _gaussian_mul(u, w):
    return (u[0] * w[0] - u[1] * w[1], u[0] * w[1] + u[1] * w[0])


def complex_line_scan(amax: int) -> int:
    """Primitive rational points found on the eight non-rational lines.

    Scans integer parameters |alpha|,|beta| <= amax under the four
    substitutions a, b in {alpha, i*alpha} x {beta, i*beta}; a candidate
    counts when every coordinate is real and the vector is nonzero. The
    expected count is 0.
    """
    if amax < 0:
        raise BadInput("amax must be >= 0")
    alpha = np.arange(-amax, amax + 1, dtype=np.int64)[:, None]
    beta = np.arange(-amax, amax + 1, dtype=np.int64)[None, :]
    params = (alpha, beta)
    found = 0
    for coords in _COMPLEX_LINES:
        for wa in _UNITS:
            for wb in _UNITS:
                rational = np.ones((alpha.size, beta.size), dtype=bool)
                nonzero = np.zeros_like(rational)
                for param, unit in coords:
                    u = _gaussian_mul(unit, (wa, wb)[param])
                    if u[1] != 0:
                        rational &= params[param] == 0
                    if u[0] != 0 or u[1] != 0:
                        nonzero |= params[param] != 0
                hits = rational & nonzero
                if hits.any():
                    # verify survivors coordinate-wise before counting
                    ai, bi = np.nonzero(hits)
                    for a0, b0 in zip(alpha[ai, 0], beta[0, bi]):
                        vals = []
                        ok = True
                        for param, unit in coords:
                            u = _gaussian_mul(unit, (wa, wb)[param])
                            t = (int(a0), int(b0))[param]
                            if u[1] * t != 0:
                                ok = False
                                break
                            vals.append(u[0] * t)
                        if ok and any(vals):
                            found += 1
    return found
