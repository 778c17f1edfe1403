"""Batch front door: counting runs, verification suites, fiber surveys, the
growth experiment, and the parametrized generator. CSV out, exact counts."""

import argparse
import math
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import arith, counting, lowerbound, quadrics
from .errors import BadInput, BoundTooLarge
from .surface import complex_line_scan, norm_inf, project

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_MISMATCH = 2
EXIT_RANGE = 3

COMMANDS = ("count", "verify", "fibers", "growth", "generate")
METHODS = ("brute", "fiber", "both")


@dataclass
class RunConfig:
    command: str
    B: int = 100
    method: str = "fiber"
    eta: Fraction = Fraction(1, 4)
    out: Optional[str] = None
    workers: int = 1
    seed: int = 0
    schedule_start: int = 1000
    schedule_steps: int = 5
    rmax: int = 20
    csv_out: Optional[str] = None

    def validate(self):
        if self.command not in COMMANDS:
            raise BadInput(f"unknown command {self.command!r}")
        if self.method not in METHODS:
            raise BadInput(f"unknown method {self.method!r}")
        if self.B < 1:
            raise BadInput("--max-height must be >= 1")
        if not 0 < self.eta <= Fraction(1, 2):
            raise BadInput("--eta must lie in (0, 1/2]")
        if self.workers < 1:
            raise BadInput("--workers must be >= 1")
        if self.schedule_start < 3 or self.schedule_steps < 1:
            raise BadInput("schedule needs start >= 3 and steps >= 1")
        if self.rmax < 0:
            raise BadInput("--rmax must be >= 0")


def _emit(rows, header: str, path: Optional[str]):
    """Write one header plus formatted rows, comma-separated, LF endings."""
    lines = [header] + [",".join(str(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _info(msg: str):
    print(msg, file=sys.stderr)


# ----------------------------------------------------------------- commands

def cmd_count(cfg: RunConfig) -> int:
    methods = ["brute", "fiber"] if cfg.method == "both" else [cfg.method]
    rows = []
    counts = {}
    for method in methods:
        if method == "brute":
            rec = counting.brute_enumerate(cfg.B)
        else:
            rec = counting.fiber_count(cfg.B, workers=cfg.workers)
        counts[method] = rec.count
        rows.append((rec.B, rec.method, rec.count, f"{rec.elapsed:.3f}"))
    _emit(rows, "B,method,count,seconds", cfg.out)
    if cfg.method == "both" and counts["brute"] != counts["fiber"]:
        _info(f"reconciliation mismatch at B = {cfg.B}: "
              f"brute {counts['brute']} != fiber {counts['fiber']}")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_fibers(cfg: RunConfig) -> int:
    rep = quadrics.hb_ratio_survey(cfg.B, cfg.rmax)
    rows = [(r, s, count, f"{bound:.6f}", f"{ratio:.6f}")
            for r, s, count, bound, ratio in rep.rows]
    _emit(rows, "r,s,count,hb_bound,ratio", cfg.out)
    _info(f"fibers: {len(rows)} rows, max ratio {rep.max_ratio:.4f}, "
          f"mean {rep.mean_ratio:.4f}, half maxima {rep.first_half_max:.4f}/"
          f"{rep.second_half_max:.4f}, bounded: {rep.ok}")
    return EXIT_OK


def cmd_growth(cfg: RunConfig) -> int:
    schedule = [cfg.schedule_start * 2**k for k in range(cfg.schedule_steps)]
    top = schedule[-1]
    hist = counting.fiber_height_histogram(top)
    cum = hist.cumsum()
    rows = []
    normalized = []
    for b in schedule:
        n = int(cum[b])
        norm = n / (b * math.log(b) ** 4)
        normalized.append(norm)
        rows.append((b, n, f"{norm:.6f}"))
    _emit(rows, "B,count,normalized", cfg.out)
    if len(schedule) > 1:
        tophalf = normalized[len(normalized) // 2:]
        hi, lo = max(tophalf), min(tophalf)
        ratio = hi / lo if lo > 0 else math.inf
        _info(f"growth: top-half normalized max {hi:.6f}, min {lo:.6f}, "
              f"max/min {ratio:.4f}")
    return EXIT_OK


def cmd_generate(cfg: RunConfig) -> int:
    pts, prov = lowerbound.generate_points(cfg.B, float(cfg.eta))
    text = "".join(f"{p}\n" for p in pts)
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", newline="\n") as fh:
            fh.write(text)
    if cfg.csv_out is not None:
        rows = [(g.r, g.s, g.x, g.y, g.content, g.point.height) for g in prov]
        _emit(rows, "r,s,x,y,n,height", cfg.csv_out)
    _info(f"generate: {len(pts)} distinct points up to height {cfg.B}")
    return EXIT_OK


# ------------------------------------------------------------ verify suites

def _suite_oracle(cfg):
    cap = min(cfg.B, 200)
    for b in range(1, cap + 1):
        nb = counting.brute_enumerate(b).count
        nf = counting.fiber_count(b).count
        if nb != nf:
            return f"B = {b}: brute {nb} != fiber {nf}"
    hist = counting.fiber_height_histogram(cap)
    if int(hist.sum()) != counting.fiber_count(cap).count:
        return f"histogram mass != count at B = {cap}"
    return None


def _suite_content(cfg):
    for s in range(2, 21, 2):
        for r in range(1, 21):
            if math.gcd(r, s) != 1:
                continue
            for x in range(1, 61):
                for y in range(-40, 41):
                    if math.gcd(x, 2 * s * y) != 1:
                        continue
                    if not lowerbound.content_lemma_check(lowerbound.ParamInput(r, s, x, y)):
                        return f"(r,s,x,y) = ({r},{s},{x},{y})"
    return None


def _suite_height_product(cfg):
    _, pts = counting.brute_enumerate(500, collect=True)
    equalities = 0
    for p in pts:
        m1 = norm_inf(project(1, p.coords))
        m2 = norm_inf(project(2, p.coords))
        if m1 * m2 > p.height:
            return f"point {p}: {m1} * {m2} > height {p.height}"
        if m1 * m2 == p.height:
            equalities += 1
    if equalities == 0:
        return "no equality case up to height 500"
    return None


def _suite_unit_quartic(cfg):
    for p in arith.primes_up_to(10**4).tolist():
        want = 1 if p == 2 else (2 if p % 4 == 3 else 4)
        got = arith.F_count(p)
        if got != want:
            return f"F({p}) = {got}, expected {want}"
    rng = random.Random(cfg.seed)
    checked = 0
    while checked < 500:
        a = rng.randrange(1, 10**6 + 1)
        b = rng.randrange(1, 10**6 + 1)
        if math.gcd(a, b) != 1:
            continue
        if arith.F_count(a * b) != arith.F_count(a) * arith.F_count(b):
            return f"F({a}*{b}) != F({a})*F({b})"
        checked += 1
    return None


def _suite_inversion(cfg):
    N = 10**4
    fp = [None] + [arith.f_prime(n) for n in range(1, N + 1)]
    lhs = [Fraction(0)] * (N + 1)
    for m in range(1, N + 1):
        for n in range(m, N + 1, m):
            lhs[n] += fp[m]
    dc = arith.sieve("divisor", N).values
    for n in range(1, N + 1):
        if lhs[n] != dc[n] * arith.f_density(n) ** 2:
            return f"n = {n}: divisor sum {lhs[n]} != d(n) f(n)^2"
    for p in arith.primes_up_to(100).tolist():
        for e in range(1, 7):
            if arith.f_prime(p**e) != arith.f_prime_prime_power(p, e):
                return f"closed form differs at {p}^{e}"
    return None


def _suite_root_counts(cfg):
    polys = [arith.PolySpec((1, 0, 1)), arith.PolySpec((1, 1)),
             arith.PolySpec((-1, 1)), arith.QUARTIC_UNITS]
    for f in polys:
        g = f.degree
        disc = f.discriminant
        for p in arith.primes_up_to(500).tolist():
            base = arith.rho_prime_power(f, p, 1)
            if base > g:
                return f"rho_{f.coeffs}({p}) = {base} > degree"
            for e in range(1, 7):
                rho = arith.rho_prime_power(f, p, e)
                if rho > g * p ** (e - 1):
                    return f"rho exceeds g p^(e-1) at {p}^{e}"
                if disc % p != 0 and rho != base:
                    return f"rho not constant at good prime {p}, e = {e}"
                if rho > 2 * g**3 * p ** (e * (1 - 1 / g)):
                    return f"uniform bound fails at {p}^{e}"
    return None


def _suite_lift_vs_scan(cfg):
    for m in range(1, 10**4 + 1):
        h = arith.rho_poly(arith.QUARTIC_UNITS, m, method="hensel")
        b = arith.rho_poly_brute(arith.QUARTIC_UNITS, m)
        if h != b:
            return f"m = {m}: hensel {h} != scan {b}"
    return None


def _suite_dedekind(cfg):
    factors = (arith.PolySpec((1, 0, 1)), arith.PolySpec((1, 1)), arith.PolySpec((-1, 1)))
    ratio = arith.dedekind_ratio(factors, 10**6)
    if abs(ratio - 3.0) > 0.3:
        return f"ratio {ratio:.6f} outside 3 +- 0.3"
    return None


def _suite_phi_average(cfg):
    res = arith.phi_sum_check(10**5)
    if res.rel_err > 1e-3:
        return f"phi average off by {res.rel_err:.2e}"
    if arith.coprime_count(100, 6) != 33:
        return f"coprime_count(100, 6) = {arith.coprime_count(100, 6)}"
    return None


def _suite_pi_bounds(cfg):
    bad = arith.pi_bounds_check(10**4)
    if bad is not None:
        return f"Chebyshev window fails at n = {bad}"
    return None


def _suite_divisor_bound(cfg):
    rep = quadrics.hb_ratio_survey(2000, 20)
    if not rep.ok:
        return (f"half maxima {rep.first_half_max:.4f} -> "
                f"{rep.second_half_max:.4f} exceed doubling")
    return None


def _suite_generator(cfg):
    pts, _ = lowerbound.generate_points(500, 0.25)
    _, brute_pts = counting.brute_enumerate(500, collect=True)
    universe = {p.coords for p in brute_pts}
    for p in pts:
        if p.height > 500:
            return f"generated point {p} above the height cap"
        if p.coords not in universe:
            return f"generated point {p} missing from the enumerated set"
    if len(pts) != len({p.coords for p in pts}):
        return "duplicate generated point"
    return None


def _suite_complex_lines(cfg):
    hits = complex_line_scan(10**3)
    if hits != 0:
        return f"{hits} rational points on non-real lines"
    return None


def _suite_dirichlet(cfg):
    lo = arith.dirichlet_partial(10**3).ratio_log3
    hi = arith.dirichlet_partial(10**6).ratio_log3
    spread = max(lo, hi) / min(lo, hi)
    if spread >= 3.0:
        return f"ratio spread {spread:.4f} >= 3"
    return None


SUITES = [
    ("oracle-equality", "B = 1..min(max-height, 200)", _suite_oracle),
    ("content-lemma", "r,s <= 20, x <= 60, |y| <= 40", _suite_content),
    ("height-product", "U-points with height <= 500", _suite_height_product),
    ("unit-quartic-table", "p <= 10^4; 500 coprime pairs <= 10^6", _suite_unit_quartic),
    ("inversion-identity", "n <= 10^4; p <= 100, e <= 6", _suite_inversion),
    ("root-count-bounds", "four polynomials, p <= 500, e <= 6", _suite_root_counts),
    ("lift-vs-scan", "moduli m <= 10^4", _suite_lift_vs_scan),
    ("dedekind-ratio", "primes t <= 10^6", _suite_dedekind),
    ("phi-average", "n <= 10^5", _suite_phi_average),
    ("prime-pi-bounds", "67 <= n <= 10^4", _suite_pi_bounds),
    ("divisor-bound-survey", "B = 2000, rmax = 20", _suite_divisor_bound),
    ("generator-soundness", "B = 500, eta = 1/4", _suite_generator),
    ("complex-line-scan", "|a|, |b| <= 10^3", _suite_complex_lines),
    ("dirichlet-window", "M = 10^3 and 10^6", _suite_dirichlet),
]


def cmd_verify(cfg: RunConfig) -> int:
    failures = 0
    for name, rng, fn in SUITES:
        t0 = time.perf_counter()
        bad = fn(cfg)
        _info(f"{name}: {time.perf_counter() - t0:.2f}s")
        status = "pass" if bad is None else f"FAIL: {bad}"
        print(f"{name:22s} {rng:38s} {status}")
        if bad is not None:
            failures += 1
    print(f"{len(SUITES) - failures}/{len(SUITES)} suites passed")
    return EXIT_OK if failures == 0 else EXIT_VERIFY


# -------------------------------------------------------------------- argv

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse defaults to exit code 2; range errors belong to 3 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_RANGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="delpezzo4", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_b):
        p.add_argument("--max-height", type=int, default=default_b, dest="B",
                       help="height bound B")
        p.add_argument("--out", default=None, help="CSV/text output path (default stdout)")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("count", help="count U-points of height <= B")
    common(p, 100)
    p.add_argument("--method", choices=METHODS, default="fiber")

    p = sub.add_parser("verify", help="run every invariant suite")
    common(p, 100)

    p = sub.add_parser("fibers", help="per-fiber counts against the divisor bound")
    common(p, 2000)
    p.add_argument("--rmax", type=int, default=20, help="largest |r|, |s| surveyed")

    p = sub.add_parser("growth", help="normalized counts over a doubling schedule")
    common(p, 1000)
    p.add_argument("--schedule-start", type=int, default=1000)
    p.add_argument("--schedule-steps", type=int, default=5)

    p = sub.add_parser("generate", help="emit parametrized points below the bound")
    common(p, 2000)
    p.add_argument("--eta", type=Fraction, default=Fraction(1, 4),
                   help="exponent for the s range, rational in (0, 1/2]")
    p.add_argument("--csv", default=None, dest="csv_out",
                   help="also write provenance rows r,s,x,y,n,height")

    return parser


def parse_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command, B=ns.B, out=ns.out,
                    workers=ns.workers, seed=ns.seed)
    cfg.method = getattr(ns, "method", cfg.method)
    cfg.eta = getattr(ns, "eta", cfg.eta)
    cfg.schedule_start = getattr(ns, "schedule_start", cfg.schedule_start)
    cfg.schedule_steps = getattr(ns, "schedule_steps", cfg.schedule_steps)
    cfg.rmax = getattr(ns, "rmax", cfg.rmax)
    cfg.csv_out = getattr(ns, "csv_out", cfg.csv_out)
    return cfg


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        handler = {"count": cmd_count, "verify": cmd_verify, "fibers": cmd_fibers,
                   "growth": cmd_growth, "generate": cmd_generate}[cfg.command]
        return handler(cfg)
    except (BadInput, BoundTooLarge) as exc:
        _info(f"error: {exc}")
        return EXIT_RANGE


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
