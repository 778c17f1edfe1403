"""Multiplicative-function toolkit: sieves, the coprimality density f and its
Mobius companion, root counts of integer polynomials modulo prime powers, and
the averaged experiments (Dedekind-style prime averages, divisor-sum bounds,
partial Dirichlet sums) built on top of them.

Everything that is a count or an identity is exact (Python int / Fraction);
floats appear only in ratios and report fields.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
import math

import numpy as np
import sympy

from .errors import BadForm, BadInput, DegenerateModulus, ZeroValue

RHO_BRUTE_CEILING = 10**6  # largest prime power the brute scan will accept


# ---------------------------------------------------------------- sieves

def prime_mask(n: int) -> np.ndarray:
    """Boolean array of length n+1 marking primes."""
    if n < 0:
        raise BadInput("n must be nonnegative")
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask


def primes_up_to(n: int) -> np.ndarray:
    return np.nonzero(prime_mask(n))[0]


def spf_table(n: int) -> np.ndarray:
    """Smallest-prime-factor table, spf[m] for 2 <= m <= n (spf[0]=spf[1]=0)."""
    if n < 1:
        raise BadInput("n must be >= 1")
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == 0:
            sl = spf[p * p :: p]
            sl[sl == 0] = p
    unset = np.nonzero(spf == 0)[0]
    spf[unset] = unset  # remaining entries >= 2 are prime
    spf[:2] = 0
    return spf


@dataclass
class FnTable:
    """Sieved table of an arithmetic function on 1..n (index 0 unused)."""

    kind: str
    n: int
    values: np.ndarray

    def __getitem__(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise BadInput(f"index {k} outside 1..{self.n}")
        return int(self.values[k])


def sieve(kind: str, n: int) -> FnTable:
    """Tabulate mobius, phi, or divisor on 1..n."""
    if n < 1:
        raise BadInput("n must be >= 1")
    if kind == "mobius":
        vals = np.ones(n + 1, dtype=np.int64)
        for p in primes_up_to(n):
            vals[p::p] *= -1
            vals[p * p :: p * p] = 0
    elif kind == "phi":
        vals = np.arange(n + 1, dtype=np.int64)
        for p in primes_up_to(n):
            vals[p::p] -= vals[p::p] // p
    elif kind == "divisor":
        vals = np.zeros(n + 1, dtype=np.int64)
        for i in range(1, n + 1):
            vals[i::i] += 1
    else:
        raise BadInput(f"unknown sieve kind {kind!r}")
    vals[0] = 0
    return FnTable(kind, n, vals)


def factorize(n: int) -> dict:
    """Prime factorization of |n| as {p: e}; BadInput on 0."""
    if n == 0:
        raise BadInput("cannot factor 0")
    return {int(p): int(e) for p, e in sympy.factorint(abs(n)).items()}


def divisor_count(n: int) -> int:
    return math.prod(e + 1 for e in factorize(n).values())


# --------------------------------------- the density f and its companion f'

def f_density(n: int) -> Fraction:
    """f(n) = prod_{p | n} (1 - 1/p), the density of residues coprime to n."""
    if n < 1:
        raise BadInput("n must be >= 1")
    out = Fraction(1)
    for p in factorize(n) if n > 1 else ():
        out *= Fraction(p - 1, p)
    return out


def f_prime_prime_power(p: int, e: int) -> Fraction:
    """Closed form of the Mobius companion at p^e."""
    if e < 1:
        raise BadInput("e must be >= 1")
    base = Fraction(p - 1, p) ** 2
    return 2 * base - 1 if e == 1 else base


def _divisor_exponents(fac: dict):
    """Yield (m, exps) over divisors m of n given n's factorization."""
    primes = list(fac)
    stack = [(1, ())]
    for p in primes:
        e = fac[p]
        stack = [(m * p**a, exps + (a,)) for m, exps in stack for a in range(e + 1)]
    return primes, stack


def f_prime(n: int) -> Fraction:
    """f'(n) = sum_{m | n} mu(n/m) d(m) f(m)^2, evaluated from the definition."""
    if n < 1:
        raise BadInput("n must be >= 1")
    if n == 1:
        return Fraction(1)
    fac = factorize(n)
    primes, divisors = _divisor_exponents(fac)
    total = Fraction(0)
    for m, exps in divisors:
        # mu(n/m) = 0 unless every residual exponent is 0 or 1
        diffs = [fac[p] - a for p, a in zip(primes, exps)]
        if any(d > 1 for d in diffs):
            continue
        mu = -1 if sum(diffs) % 2 else 1
        dm = math.prod(a + 1 for a in exps)
        fm = math.prod(
            (Fraction(p - 1, p) for p, a in zip(primes, exps) if a > 0),
            start=Fraction(1),
        )
        total += mu * dm * fm * fm
    return total


# ----------------------------------------------- polynomials mod prime powers

@dataclass(frozen=True)
class PolySpec:
    """Integer polynomial, ascending coefficients, degree 1..4, squarefree."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(v) for v in self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if len(c) < 2 or c[-1] == 0:
            raise BadInput("need explicit degree >= 1 (nonzero leading coefficient)")
        if len(c) > 5:
            raise BadInput("degree above 4 not supported")
        if self.discriminant == 0:
            raise BadInput("polynomial must have nonzero discriminant")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @cached_property
    def discriminant(self) -> int:
        x = sympy.Symbol("x")
        expr = sum(c * x**i for i, c in enumerate(self.coeffs))
        return int(sympy.discriminant(sympy.Poly(expr, x)))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv_coeffs(self) -> tuple:
        return tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)


QUARTIC_UNITS = PolySpec((-1, 0, 0, 0, 1))  # x^4 - 1


def _eval_mod(coeffs, x: int, m: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % m
    return acc


def _reduced_nonzero_mod_p(coeffs, p: int) -> bool:
    return any(c % p for c in coeffs)


def _check_not_degenerate(coeffs, p: int):
    """Reject f identically zero mod p, as a polynomial or as a function."""
    if not _reduced_nonzero_mod_p(coeffs, p):
        raise DegenerateModulus(f"polynomial vanishes mod {p}")
    deg = len(coeffs) - 1
    if p <= deg and all(_eval_mod(coeffs, x, p) == 0 for x in range(p)):
        raise DegenerateModulus(f"polynomial vanishes as a function mod {p}")


def _roots_mod_prime(coeffs, p: int):
    """Sorted list of roots of f mod p (numpy scan; fine up to p ~ 10^7)."""
    _check_not_degenerate(coeffs, p)
    if p <= 64:
        return [x for x in range(p) if _eval_mod(coeffs, x, p) == 0]
    x = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed([c % p for c in coeffs]):
        acc = (acc * x + c) % p
    return np.nonzero(acc == 0)[0].tolist()


# dense poly helpers over GF(p), ascending coefficient lists
def _gf_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_mulmod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # reduce by monic f
    df = len(f) - 1
    for i in range(len(out) - 1, df - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(df):
                out[i - df + j] = (out[i - df + j] - c * f[j]) % p
    return _gf_trim(out[:df])


def _gf_gcd_degree(a, b, p):
    a, b = list(a), list(b)
    while b:
        inv = pow(b[-1], -1, p)
        b = [(c * inv) % p for c in b]
        # a mod b
        a = list(a)
        while len(a) >= len(b) and a:
            c = a[-1]
            if c:
                off = len(a) - len(b)
                for j in range(len(b)):
                    a[off + j] = (a[off + j] - c * b[j]) % p
            else:
                a.pop()
            _gf_trim(a)
        a, b = b, a
    return len(a) - 1


def count_roots_mod_prime(coeffs, p: int) -> int:
    """Number of roots of f mod p; gcd with x^p - x for large p."""
    _check_not_degenerate(coeffs, p)
    red = _gf_trim([c % p for c in coeffs])
    deg = len(red) - 1
    if deg == 0:
        return 0
    if p <= 512 or deg <= 1:
        if deg == 1:
            return 1  # a x + b with p not dividing a
        return len(_roots_mod_prime(coeffs, p))
    if deg == 2:
        c0, c1, c2 = red
        disc = (c1 * c1 - 4 * c2 * c0) % p
        if disc == 0:
            return 1
        return 2 if pow(disc, (p - 1) // 2, p) == 1 else 0
    # make monic, compute gcd(x^p - x, f)
    inv = pow(red[-1], -1, p)
    monic = [(c * inv) % p for c in red]
    xp = [1]  # polynomial 1
    base = [0, 1]  # polynomial x
    e = p
    while e:
        if e & 1:
            xp = _gf_mulmod(xp, base, monic, p)
        base = _gf_mulmod(base, base, monic, p)
        e >>= 1
    # x^p - x
    while len(xp) < 2:
        xp.append(0)
    xp[1] = (xp[1] - 1) % p
    _gf_trim(xp)
    if not xp:
        return deg  # f divides x^p - x: all roots distinct and rational
    return _gf_gcd_degree(monic, xp, p)


def rho_prime_power(f: PolySpec, p: int, e: int, method: str = "hensel") -> int:
    """Roots of f in Z/p^e, by Hensel lifting or a brute scan."""
    p, e = int(p), int(e)  # tolerate numpy integers from sieve arrays
    if e < 1:
        raise BadInput("e must be >= 1")
    if method == "brute":
        m = p**e
        if m > RHO_BRUTE_CEILING:
            raise BadInput(f"brute scan refused above {RHO_BRUTE_CEILING}")
        return rho_poly_brute(f, m)
    if method != "hensel":
        raise BadInput(f"unknown method {method!r}")
    coeffs = f.coeffs
    roots = _roots_mod_prime(coeffs, p)
    deriv = f.deriv_coeffs()
    pk = p
    for _ in range(e - 1):
        pk1 = pk * p
        nxt = []
        for r in roots:
            if _eval_mod(deriv, r, p) != 0:
                inv = pow(_eval_mod(deriv, r, pk1), -1, pk1)
                r2 = (r - f(r) * inv) % pk1
                assert f(r2) % pk1 == 0
                nxt.append(r2)
            else:
                for t in range(p):
                    cand = r + t * pk
                    if f(cand) % pk1 == 0:
                        nxt.append(cand)
        roots = nxt
        pk = pk1
    return len(roots)


def rho_poly(f: PolySpec, m: int, method: str = "hensel") -> int:
    """rho_f(m): roots of f in Z/m, via CRT over the prime powers of m."""
    if m < 1:
        raise BadInput("modulus must be >= 1")
    if m == 1:
        return 1
    out = 1
    for p, e in factorize(m).items():
        out *= rho_prime_power(f, p, e, method=method)
    return out


def rho_poly_brute(f: PolySpec, m: int) -> int:
    """Direct scan of all residues; the oracle for rho_poly."""
    if m < 1:
        raise BadInput("modulus must be >= 1")
    if m > RHO_BRUTE_CEILING:
        raise BadInput(f"brute scan refused above {RHO_BRUTE_CEILING}")
    if m == 1:
        return 1
    for p in factorize(m):
        _check_not_degenerate(f.coeffs, p)
    x = np.arange(m, dtype=np.int64)
    acc = np.zeros(m, dtype=np.int64)
    for c in reversed([c % m for c in f.coeffs]):
        acc = (acc * x + c) % m
    return int(np.count_nonzero(acc == 0))


def F_count(m: int) -> int:
    """F(m): residues x mod m with x^4 = 1, the quartic unit count."""
    return rho_poly(QUARTIC_UNITS, m)


def rho_star(binary_coeffs, p: int) -> int:
    """Projective root count of a binary quartic mod p.

    binary_coeffs = (c0..c4) with F(x1,x2) = sum c_i x1^(4-i) x2^i; the count
    is rho of the dehomogenization f(1,x) plus 1 if p divides F(0,1) = c4.
    """
    c = tuple(int(v) for v in binary_coeffs)
    if len(c) != 5 or c[0] == 0 or c[4] == 0:
        raise BadForm("need a binary quartic with nonzero x1^4 and x2^4 coefficients")
    _check_not_degenerate(c, p)
    return len(_roots_mod_prime(c, p)) + (1 if c[4] % p == 0 else 0)


# ------------------------------------------------- prime-average experiments

def _factor_root_count(fac: PolySpec, p: int) -> int:
    return count_roots_mod_prime(fac.coeffs, p)


def _union_root_count(factor_list, p: int) -> int:
    """Roots of the product counted without multiplicity (direct union scan)."""
    x = np.arange(p, dtype=np.int64)
    hit = np.zeros(p, dtype=bool)
    for fac in factor_list:
        acc = np.zeros(p, dtype=np.int64)
        for c in reversed([c % p for c in fac.coeffs]):
            acc = (acc * x + c) % p
        hit |= acc == 0
    return int(np.count_nonzero(hit))


def dedekind_ratio(factors, t: int) -> float:
    """(1/pi(t)) * sum_{p <= t} rho_f(p) for f given as a product of factors.

    Root counts of the product are unions of the factors' roots; primes
    dividing a pairwise resultant (where factors can share roots) are counted
    by a direct union scan, everything else by per-factor closed forms.
    """
    if isinstance(factors, PolySpec):
        factors = [factors]
    factors = list(factors)
    if not factors or t < 2:
        raise BadInput("need at least one factor and t >= 2")
    x = sympy.Symbol("x")
    exprs = [sum(c * x**i for i, c in enumerate(f.coeffs)) for f in factors]
    overlap = set()
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            res = int(sympy.resultant(exprs[i], exprs[j], x))
            if res == 0:
                raise BadInput("factors must be pairwise coprime")
            overlap.update(factorize(res))
    total = 0
    plist = primes_up_to(t).tolist()
    for p in plist:
        if p in overlap:
            total += _union_root_count(factors, p)
        else:
            total += sum(_factor_root_count(f, p) for f in factors)
    return total / len(plist)


@dataclass
class PhiSumResult:
    n: int
    total: int          # exact sum of phi(k), k <= n
    main_term: float    # 3 n^2 / pi^2
    rel_err: float


def phi_sum_check(n: int) -> PhiSumResult:
    """Exact sum of Euler phi up to n against its main term."""
    table = sieve("phi", n)
    total = int(table.values[1:].sum())
    main = 3.0 * n * n / math.pi**2
    return PhiSumResult(n, total, main, abs(total - main) / main)


def coprime_count(n: int, c: int) -> int:
    """#{1 <= k <= n : gcd(k, c) = 1}, exact, by Mobius over rad(c)."""
    if n < 1 or c < 1:
        raise BadInput("need n >= 1 and c >= 1")
    primes = list(factorize(c)) if c > 1 else []
    total = 0
    for bits in range(1 << len(primes)):
        d = 1
        sign = 1
        for i, p in enumerate(primes):
            if bits >> i & 1:
                d *= p
                sign = -sign
        total += sign * (n // d)
    return total


# ----------------------------------------------------- Dirichlet partial sum

DIRICHLET_EXACT_LIMIT = 10**4  # reduced denominators grow like lcm(1..M)^4


@dataclass
class DirichletPartial:
    M: int
    total: object       # Fraction when exact, float above the exact limit
    exact: bool
    ratio_log3: float   # total / (ln M)^3, None when M < 3

    def as_float(self) -> float:
        return float(self.total)


def _quartic_unit_count_at_prime(p: int) -> int:
    # p >= 5 here (the sum skips multiples of 2 and 3); the residue-class
    # values are pinned against brute scans in the test suite
    return 4 if p % 4 == 1 else 2


def dirichlet_partial(M: int, exact_limit: int = DIRICHLET_EXACT_LIMIT) -> DirichletPartial:
    """sum_{m <= M, gcd(m,6)=1} F(m) f(m) f'(m) / m.

    Exact Fractions up to exact_limit; float64 accumulation above (the exact
    reduced denominator grows like lcm(1..M)^4, out of reach at M = 10^6).
    """
    if M < 1:
        raise BadInput("M must be >= 1")
    exact = M <= exact_limit
    total = Fraction(0) if exact else 0.0
    spf = spf_table(M) if M > 1 else None
    for m in range(1, M + 1):
        if m % 2 == 0 or m % 3 == 0:
            continue
        if m == 1:
            total += Fraction(1) if exact else 1.0
            continue
        k = m
        num, den = 1, 1
        while k > 1:
            p = int(spf[k])
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            # F, f, f' at p^e; p >= 5 so F(p^e) = F(p)
            fp = _quartic_unit_count_at_prime(p)
            num *= fp * (p - 1)
            den *= p * p * p
            if e == 1:
                num *= 2 * (p - 1) * (p - 1) - p * p
            else:
                num *= (p - 1) * (p - 1)
        if exact:
            total += Fraction(num, den * m)
        else:
            total += num / (den * m)
    ratio = total / math.log(M) ** 3 if M >= 3 else None
    ratio = float(ratio) if ratio is not None else None
    return DirichletPartial(M, total, exact, ratio)


# ------------------------------------------------------- divisor-sum bound

@dataclass
class NairRecord:
    n1: int
    n2: int
    lhs: int        # exact sum of d(|f(n)|) over n1 < n <= n2
    rhs: float      # the sieve-style upper-bound expression
    ratio: float    # lhs / rhs


def nair_experiment(f: PolySpec, n1: int, n2: int, c_param: float = 1.0) -> NairRecord:
    """Divisor sums over polynomial values against the standard bound shape.

    rhs = (n2 - n1) * prod_{p <= n2} (1 - rho_f(p)/p)
                    * exp(sum_{p <= n2} 2 rho_f(p)/p + c_param * sum_{p | Disc} 1/p)
    """
    if not 1 <= n1 < n2:
        raise BadInput("need 1 <= n1 < n2")
    lhs = 0
    for n in range(n1 + 1, n2 + 1):
        v = f(n)
        if v == 0:
            raise ZeroValue(f"f({n}) = 0 has no divisor count")
        lhs += divisor_count(v)
    prod = 1.0
    expo = 0.0
    for p in primes_up_to(n2).tolist():
        rho = count_roots_mod_prime(f.coeffs, p)
        prod *= 1.0 - rho / p
        expo += 2.0 * rho / p
    expo += c_param * sum(1.0 / p for p in factorize(f.discriminant))
    rhs = (n2 - n1) * prod * math.exp(expo)
    return NairRecord(n1, n2, lhs, rhs, lhs / rhs)


# ------------------------------------------------------- pi(n) sandwich

def pi_bounds_check(n_max: int, n_min: int = 67):
    """First n in [n_min, n_max] violating n/(ln n - 1/2) < pi(n) < n/(ln n - 3/2).

    Returns None when the sandwich holds everywhere in range.
    """
    if n_max < n_min:
        raise BadInput("empty range")
    mask = prime_mask(n_max)
    pi = np.cumsum(mask.astype(np.int64))
    n = np.arange(n_min, n_max + 1, dtype=np.float64)
    ln = np.log(n)
    pin = pi[n_min:].astype(np.float64)
    bad = (pin <= n / (ln - 0.5)) | (pin >= n / (ln - 1.5))
    idx = np.nonzero(bad)[0]
    return int(idx[0]) + n_min if idx.size else None
