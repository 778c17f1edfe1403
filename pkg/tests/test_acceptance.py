"""Acceptance battery: one test per numbered criterion, each reporting a
single pass/fail line through the criterion_log fixture."""

import math
import random
import time
from fractions import Fraction

from conftest import brute_points

from delpezzo4 import arith, counting, lowerbound, quadrics
from delpezzo4.errors import MismatchError
from delpezzo4.surface import complex_line_scan, is_on_surface, line_id, norm_inf, project

SPOT_COUNTS = {500: 34432, 1000: 92088, 2000: 237552}
GROWTH_COUNTS = {1000: 92088, 2000: 237552, 4000: 607016, 8000: 1521008, 16000: 3753176}
WITNESS = (19, -18, 38, -9, -32)
RHO_POLYS = (arith.PolySpec((1, 0, 1)), arith.PolySpec((1, 1)),
             arith.PolySpec((-1, 1)), arith.QUARTIC_UNITS)


def test_01_oracle_equivalence(criterion_log):
    t0 = time.perf_counter()
    try:
        counting.reconcile(list(range(1, 201)))
        mismatch = None
    except MismatchError as err:
        mismatch = f"mismatch at B = {err.B}"
    spots_ok = True
    for B, want in sorted(SPOT_COUNTS.items()):
        nb = len(brute_points(B))
        nf = counting.fiber_count(B).count
        spots_ok = spots_ok and nb == nf == want
    elapsed = time.perf_counter() - t0
    ok = mismatch is None and spots_ok and elapsed < 600
    criterion_log(1, "oracle equivalence", ok,
                  mismatch or f"B = 1..200 and spots 500/1000/2000, {elapsed:.0f}s")


def test_02_content_lemma_grid(criterion_log):
    checked = failures = 0
    for s in range(2, 21, 2):
        for r in range(1, 21):
            if math.gcd(r, s) != 1:
                continue
            for x in range(1, 61):
                for y in range(-40, 41):
                    if math.gcd(x, 2 * s * y) != 1:
                        continue
                    checked += 1
                    if not lowerbound.content_lemma_check(lowerbound.ParamInput(r, s, x, y)):
                        failures += 1
    criterion_log(2, "content lemma grid", checked == 151436 and failures == 0,
                  f"{checked} admissible tuples, {failures} failures")


def test_03_height_product(criterion_log, points_500):
    violations = equalities = 0
    witness_equality = False
    for p in points_500:
        prod = norm_inf(project(1, p.coords)) * norm_inf(project(2, p.coords))
        if prod > p.height:
            violations += 1
        elif prod == p.height:
            equalities += 1
            if p.coords == WITNESS:
                witness_equality = True
    ok = violations == 0 and equalities >= 1 and witness_equality
    criterion_log(3, "height product bound", ok,
                  f"{violations} violations, {equalities} equalities "
                  f"over {len(points_500)} points, witness included")


def test_04_quartic_unit_table(criterion_log):
    bad = 0
    primes = arith.primes_up_to(10**4).tolist()
    for p in primes:
        want = 1 if p == 2 else (2 if p % 4 == 3 else 4)
        if arith.F_count(p) != want:
            bad += 1
    rng = random.Random(0)
    pairs = 0
    while pairs < 500:
        a = rng.randrange(1, 10**6 + 1)
        b = rng.randrange(1, 10**6 + 1)
        if math.gcd(a, b) != 1:
            continue
        if arith.F_count(a * b) != arith.F_count(a) * arith.F_count(b):
            bad += 1
        pairs += 1
    criterion_log(4, "quartic unit counts", bad == 0,
                  f"{len(primes)} primes, 500 coprime pairs, {bad} deviations")


def test_05_mobius_companion_identity(criterion_log):
    N = 10**4
    fp = [None] + [arith.f_prime(n) for n in range(1, N + 1)]
    lhs = [Fraction(0)] * (N + 1)
    for m in range(1, N + 1):
        for n in range(m, N + 1, m):
            lhs[n] += fp[m]
    dc = arith.sieve("divisor", N).values
    bad = sum(1 for n in range(1, N + 1) if lhs[n] != dc[n] * arith.f_density(n) ** 2)
    closed = sum(
        1
        for p in arith.primes_up_to(100).tolist()
        for e in range(1, 7)
        if arith.f_prime(p**e) != arith.f_prime_prime_power(p, e)
    )
    criterion_log(5, "mobius companion identity", bad == 0 and closed == 0,
                  f"n <= {N}: {bad} divisor-sum failures, {closed} closed-form failures")


def test_06_root_count_properties(criterion_log):
    bad = []
    for f in RHO_POLYS:
        g, disc = f.degree, f.discriminant
        for p in arith.primes_up_to(500).tolist():
            base = arith.rho_prime_power(f, p, 1)
            if base > g:
                bad.append(f"{f.coeffs}@{p}: degree bound")
            for e in range(1, 7):
                rho = arith.rho_prime_power(f, p, e)
                if rho > g * p ** (e - 1):
                    bad.append(f"{f.coeffs}@{p}^{e}: lift bound")
                if disc % p != 0 and rho != base:
                    bad.append(f"{f.coeffs}@{p}^{e}: not constant at good prime")
                if rho > 2 * g**3 * p ** (e * (1 - 1 / g)):
                    bad.append(f"{f.coeffs}@{p}^{e}: uniform bound")
    for f in RHO_POLYS:
        for m in range(1, 10**4 + 1):
            if arith.rho_poly(f, m, method="hensel") != arith.rho_poly_brute(f, m):
                bad.append(f"{f.coeffs} mod {m}: hensel != scan")
    criterion_log(6, "root count properties", not bad,
                  bad[0] if bad else "4 polynomials, p <= 500, e <= 6, all m <= 10^4")


def test_07_dedekind_landau_ratio(criterion_log):
    factors = (arith.PolySpec((1, 0, 1)), arith.PolySpec((1, 1)), arith.PolySpec((-1, 1)))
    t0 = time.perf_counter()
    ratio = arith.dedekind_ratio(factors, 10**6)
    elapsed = time.perf_counter() - t0
    ok = abs(ratio - 3.0) <= 0.3 and abs(ratio - 2.998102) < 1e-3 and elapsed < 120
    criterion_log(7, "dedekind ratio", ok,
                  f"ratio {ratio:.6f}, |ratio - 3| = {abs(ratio - 3.0):.6f}, {elapsed:.1f}s")


def test_08_hb_bound_survey(criterion_log):
    rep = quadrics.hb_ratio_survey(10**4, 50)
    rows = sorted(rep.rows, key=lambda row: (abs(row[0]), abs(row[1]), row[0], row[1]))
    half = len(rows) // 2
    small = max(row[4] for row in rows[:half])
    large = max(row[4] for row in rows[half:])
    ok = len(rows) == 3094 and large <= 2.0 * small
    criterion_log(8, "divisor bound survey", ok,
                  f"{len(rows)} fibers, half maxima {small:.4f} / {large:.4f}")


def test_09_growth_normalization(criterion_log):
    schedule = [1000 * 2**k for k in range(5)]
    cum = counting.fiber_height_histogram(schedule[-1]).cumsum()
    counts = {b: int(cum[b]) for b in schedule}
    norms = [counts[b] / (b * math.log(b) ** 4) for b in schedule]
    spread = max(norms) / min(norms)
    diffs = [norms[i] - norms[i + 1] for i in range(len(norms) - 1)]
    contracting = all(d > 0 for d in diffs) and all(
        diffs[i] > diffs[i + 1] for i in range(len(diffs) - 1))
    ok = counts == GROWTH_COUNTS and spread < 2.0 and contracting
    criterion_log(9, "growth normalization", ok,
                  f"top-5 max/min {spread:.4f}, decreasing with shrinking steps")


def test_10_phi_average(criterion_log):
    res = arith.phi_sum_check(10**5)
    cc = arith.coprime_count(100, 6)
    ok = res.rel_err <= 1e-3 and cc == 33
    criterion_log(10, "totient average", ok,
                  f"rel err {res.rel_err:.2e}, coprime_count(100, 6) = {cc}")


def test_11_generator_soundness(criterion_log):
    pts, _ = lowerbound.generate_points(2000, 0.25)
    universe = {p.coords for p in brute_points(2000)}
    sound = all(
        is_on_surface(p.coords) and line_id(p.coords) is None and p.height <= 2000
        for p in pts
    )
    coords = {p.coords for p in pts}
    ok = sound and len(coords) == len(pts) == 148 and coords <= universe
    criterion_log(11, "generator soundness", ok,
                  f"{len(pts)} distinct points, all inside the {len(universe)}-point universe")


def test_12_complex_line_scan(criterion_log):
    hits = complex_line_scan(10**3)
    criterion_log(12, "complex line scan", hits == 0,
                  f"{hits} rational points on the non-real lines")


def test_13_dirichlet_window(criterion_log):
    lo = arith.dirichlet_partial(10**3).ratio_log3
    hi = arith.dirichlet_partial(10**6).ratio_log3
    spread = max(lo, hi) / min(lo, hi)
    ok = spread < 3.0 and abs(spread - 2.3739) < 0.01
    criterion_log(13, "dirichlet window", ok,
                  f"ratio spread {spread:.4f} between M = 10^3 and M = 10^6")
