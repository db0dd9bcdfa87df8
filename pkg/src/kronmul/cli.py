"""Command-line front end: file-based modular polynomial multiplication, a
CSV benchmark harness comparing the substitution variants, and a seeded
self-test.

Polynomial file format: line 1 is the decimal modulus, line 2 the decimal
length L, followed by L whitespace-separated decimal coefficients with the
constant term first.

The environment variable KRONMUL_KARATSUBA_THRESHOLD overrides the limb
threshold at which products switch from classical to Karatsuba.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import random
import statistics
import sys
import time
from dataclasses import dataclass

from . import bignat, oracle
from .bignat import DEFAULT_MUL_CONFIG, MulConfig, MulStats
from .bipoly import BiPoly, MissingHalveError, bks_four, bks_negated, \
    bks_reciprocal, bks_standard, ring_z, ring_zmod
from .ksint import ks1_mul, ks2_mul, ks3_mul, ks4_mul
from .modpoly import ModPoly, Variant, mod_mul
from .pack import CoeffVec, pack, pack_negated, pack_reversed

CSV_HEADER = "degree,length,modulus_bits,variant,wall_ns_median,limb_products,ratio_vs_ks1"

ENV_THRESHOLD = "KRONMUL_KARATSUBA_THRESHOLD"


class CommandError(Exception):
    """A user-facing failure; the message goes to stderr, exit status 1."""


def _env_threshold() -> int:
    raw = os.environ.get(ENV_THRESHOLD)
    if raw is None:
        return DEFAULT_MUL_CONFIG.karatsuba_threshold
    try:
        value = int(raw)
    except ValueError:
        raise CommandError(f"{ENV_THRESHOLD} must be an integer, got {raw!r}")
    if value < 1:
        raise CommandError(f"{ENV_THRESHOLD} must be >= 1")
    return value


def mul_config_from_env(classical_only: bool = False) -> MulConfig:
    return MulConfig(karatsuba_threshold=_env_threshold(),
                     classical_only=classical_only)


# --- polynomial files --------------------------------------------------------


def read_poly_file(path: str) -> ModPoly:
    try:
        with open(path, "r", encoding="ascii") as fh:
            tokens = fh.read().split()
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc}")
    if len(tokens) < 2:
        raise CommandError(f"{path}: expected modulus and length")
    try:
        modulus = int(tokens[0])
        length = int(tokens[1])
        coeffs = [int(t) for t in tokens[2:]]
    except ValueError as exc:
        raise CommandError(f"{path}: {exc}")
    if length != len(coeffs):
        raise CommandError(
            f"{path}: declared length {length} but found {len(coeffs)} "
            f"coefficients")
    try:
        return ModPoly(tuple(coeffs), modulus)
    except ValueError as exc:
        raise CommandError(f"{path}: {exc}")


def format_poly(p: ModPoly) -> str:
    return "{}\n{}\n{}\n".format(p.modulus, len(p.coeffs),
                                 " ".join(str(c) for c in p.coeffs))


def write_poly_file(path: str, p: ModPoly) -> None:
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(format_poly(p))
    except OSError as exc:
        raise CommandError(f"cannot write {path}: {exc}")


# --- mul ---------------------------------------------------------------------


def _parse_variant(name: str) -> Variant:
    try:
        return Variant(name.lower())
    except ValueError:
        raise CommandError(f"unknown variant {name!r}")


def cmd_mul(args) -> int:
    f = read_poly_file(args.poly_f)
    g = read_poly_file(args.poly_g)
    if f.modulus != g.modulus:
        raise CommandError(
            f"modulus mismatch: {f.modulus} vs {g.modulus}")
    if args.modulus is not None and args.modulus != f.modulus:
        raise CommandError(
            f"--modulus {args.modulus} does not match file modulus "
            f"{f.modulus}")
    config = mul_config_from_env()
    product = mod_mul(f, g, _parse_variant(args.variant), config=config,
                      parallel=args.parallel)
    if args.output:
        write_poly_file(args.output, product)
    else:
        sys.stdout.write(format_poly(product))
    return 0


# --- bench -------------------------------------------------------------------


def parse_degree_grid(grid: str) -> list[int]:
    """``lo:hi:log`` (about 20 log-spaced points) or ``lo:hi:+step``."""
    parts = grid.split(":")
    if len(parts) != 3:
        raise CommandError(f"invalid degree grid {grid!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise CommandError(f"invalid degree grid {grid!r}")
    if lo < 1 or hi < lo:
        raise CommandError(f"invalid degree range {lo}:{hi}")
    if parts[2] == "log":
        points = {round(lo * (hi / lo) ** (i / 19)) for i in range(20)}
        return sorted(points)
    if parts[2].startswith("+"):
        try:
            step = int(parts[2][1:])
        except ValueError:
            raise CommandError(f"invalid degree step {parts[2]!r}")
        if step < 1:
            raise CommandError("degree step must be >= 1")
        return list(range(lo, hi + 1, step))
    raise CommandError(f"invalid degree grid {grid!r}")


@dataclass
class BenchRow:
    degree: int
    length: int
    modulus_bits: int
    variant: str
    wall_ns_median: int
    limb_products: int | None
    ratio_vs_ks1: float | None

    def csv(self) -> str:
        ops = "" if self.limb_products is None else str(self.limb_products)
        ratio = "" if self.ratio_vs_ks1 is None else f"{self.ratio_vs_ks1:.4f}"
        return (f"{self.degree},{self.length},{self.modulus_bits},"
                f"{self.variant},{self.wall_ns_median},{ops},{ratio}")


def _median_call_ns(fn, reps: int) -> int:
    fn()  # warm-up, discarded
    # batch fast calls so each repetition measures at least ~2 ms
    iters = 1
    t0 = time.perf_counter_ns()
    fn()
    single = max(1, time.perf_counter_ns() - t0)
    if single < 2_000_000:
        iters = min(256, 2_000_000 // single + 1)
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        for _ in range(iters):
            fn()
        samples.append((time.perf_counter_ns() - t0) // iters)
    return int(statistics.median(samples))


def run_bench(degrees, modulus_bits: int, variants, reps: int, seed: int,
              count_ops: bool = False, parallel: bool = False,
              config: MulConfig | None = None):
    """Time every (degree, variant) cell on shared random inputs.

    Returns (comment_lines, rows).  In op-counting mode all products run
    classically so the counters follow the deterministic m*n law.
    """
    if reps < 1:
        raise CommandError("reps must be >= 1")
    if modulus_bits < 1 or modulus_bits > 64:
        raise CommandError("modulus bits must be in [1, 64]")
    variants = [v if isinstance(v, Variant) else _parse_variant(v)
                for v in variants]
    if any(v is Variant.AUTO for v in variants):
        raise CommandError("bench variants must be explicit (no auto)")
    if config is None:
        config = mul_config_from_env(classical_only=count_ops)
    elif count_ops and not config.classical_only:
        config = MulConfig(config.karatsuba_threshold, classical_only=True)
    rng = random.Random(seed)
    modulus = max(2, rng.randrange(1 << (modulus_bits - 1), 1 << modulus_bits)
                  if modulus_bits > 1 else 2)
    comments = [f"# seed={seed} modulus={modulus} parallel={parallel} "
                f"classical_only={config.classical_only} "
                f"karatsuba_threshold={config.karatsuba_threshold}"]
    rows: list[BenchRow] = []
    for degree in degrees:
        length = degree + 1
        f = ModPoly(tuple(rng.randrange(modulus) for _ in range(length)),
                    modulus)
        g = ModPoly(tuple(rng.randrange(modulus) for _ in range(length)),
                    modulus)
        cell: dict[Variant, BenchRow] = {}
        for variant in variants:
            def call(v=variant):
                return mod_mul(f, g, v, config=config, parallel=parallel)

            median = _median_call_ns(call, reps)
            ops = None
            if count_ops:
                stats = MulStats()
                mod_mul(f, g, variant, config=config, stats=stats,
                        parallel=parallel)
                ops = stats.limb_products
            row = BenchRow(degree, length, modulus_bits, variant.value,
                           median, ops, None)
            cell[variant] = row
            rows.append(row)
        base = cell.get(Variant.KS1)
        if base is not None and base.wall_ns_median > 0:
            for row in cell.values():
                row.ratio_vs_ks1 = row.wall_ns_median / base.wall_ns_median
    return comments, rows


def render_csv(comments, rows) -> str:
    lines = list(comments)
    lines.append(CSV_HEADER)
    lines.extend(row.csv() for row in rows)
    return "\n".join(lines) + "\n"


def cmd_bench(args) -> int:
    degrees = parse_degree_grid(args.degrees)
    variants = [v.strip() for v in args.variants.split(",") if v.strip()]
    if not variants:
        raise CommandError("no variants requested")
    comments, rows = run_bench(degrees, args.modulus_bits, variants,
                               args.reps, args.seed,
                               count_ops=args.count_ops,
                               parallel=args.parallel)
    text = render_csv(comments, rows)
    if args.output:
        try:
            with open(args.output, "w", encoding="ascii") as fh:
                fh.write(text)
        except OSError as exc:
            raise CommandError(f"cannot write {args.output}: {exc}")
    else:
        sys.stdout.write(text)
    return 0


# --- selftest ----------------------------------------------------------------


@contextlib.contextmanager
def _corrupted_multiply():
    # Deliberate fault injection: multi-limb classical products come back
    # wrong.  Used to verify the self-test has teeth.
    original = bignat._classical_int

    def wonky(x, y, stats=None):
        result = original(x, y, stats)
        if x > bignat._LIMB_MASK and y > bignat._LIMB_MASK:
            result ^= 1 << bignat.LIMB_BITS
        return result

    bignat._classical_int = wonky
    try:
        yield
    finally:
        bignat._classical_int = original


class _SelfTestFailure(Exception):
    pass


def _check(ok: bool, suite: str, case) -> None:
    if not ok:
        raise _SelfTestFailure(f"{suite}: failing case {case!r}")


def _selftest_bignat(rng, iters, config, out):
    for i in range(iters):
        a = rng.getrandbits(rng.randrange(1, 64 * 64))
        b = rng.getrandbits(rng.randrange(1, 64 * 64))
        an, bn = bignat.BigNat(a), bignat.BigNat(b)
        _check(int(an + bn) == a + b, "bignat-add", (a, b))
        big, small = (a, b) if a >= b else (b, a)
        _check(int(bignat.sub(bignat.BigNat(big), bignat.BigNat(small)))
               == big - small, "bignat-sub", (a, b))
        classical = bignat.mul_classical(an, bn)
        karatsuba = bignat.mul_karatsuba(
            an, bn, config=MulConfig(karatsuba_threshold=max(
                1, config.karatsuba_threshold)))
        _check(int(classical) == a * b == int(karatsuba),
               "bignat-mul", (a, b))
    out(f"bignat arithmetic vs int arithmetic: ok ({iters} cases)")


def _selftest_digits(rng, iters, out):
    for i in range(iters):
        width = rng.randrange(1, 80)
        count = rng.randrange(0, 40)
        digits = [rng.randrange(1 << width) for _ in range(count)]
        packed = bignat.from_digits(digits, width)
        back = [int(d) for d in bignat.to_digits(packed, width, count)]
        _check(back == digits, "digit-roundtrip", (width, digits))
    out(f"digit pack/unpack round-trip: ok ({iters} cases)")


def _selftest_pack(rng, iters, out):
    for i in range(iters):
        bound = rng.randrange(1, 64)
        length = rng.randrange(1, 40)
        coeffs = [rng.randrange(1 << bound) for _ in range(length)]
        v = CoeffVec(tuple(coeffs), bound)
        width = rng.randrange(bound, 2 * bound + 8)
        expect = sum(c << (i * width) for i, c in enumerate(coeffs))
        _check(int(pack(v, width)) == expect, "pack", (coeffs, width))
        expect_rev = sum(c << ((length - 1 - i) * width)
                         for i, c in enumerate(coeffs))
        _check(int(pack_reversed(v, width)) == expect_rev,
               "pack-reversed", (coeffs, width))
        expect_neg = sum((-1) ** i * (c << (i * width))
                         for i, c in enumerate(coeffs))
        _check(pack_negated(v, width).value == expect_neg,
               "pack-negated", (coeffs, width))
    out(f"packing vs direct evaluation: ok ({iters} cases)")


def _selftest_ksint(rng, iters, config, parallel, out):
    for i in range(iters):
        bound = rng.randrange(1, 33)
        len_f = rng.randrange(1, 65)
        len_g = rng.randrange(1, 65)
        f = CoeffVec(tuple(rng.randrange(1 << bound) for _ in range(len_f)),
                     bound)
        g = CoeffVec(tuple(rng.randrange(1 << bound) for _ in range(len_g)),
                     bound)
        want = oracle.schoolbook_z(f, g).coeffs
        for name, func in (("ks1", ks1_mul), ("ks2", ks2_mul),
                           ("ks3", ks3_mul), ("ks4", ks4_mul)):
            if func is ks1_mul:
                got = func(f, g, config=config).coeffs
            else:
                got = func(f, g, config=config, parallel=parallel).coeffs
            _check(got == want, f"ksint-{name}",
                   (f.coeffs, g.coeffs, bound))
    out(f"integer variants vs schoolbook: ok ({iters} cases, 4 variants)")


def _selftest_bipoly(rng, iters, out):
    import operator
    cases = max(1, iters // 5) if iters else 0
    rings = [(ring_z(), operator.mul, lambda r: r.randrange(-50, 51)),
             (ring_zmod(7), lambda a, b: (a * b) % 7,
              lambda r: r.randrange(7))]
    for i in range(cases):
        ring, elem_mul, draw = rings[i % 2]
        lx = rng.randrange(1, 6)
        ly = rng.randrange(1, 6)
        f = BiPoly(tuple(tuple(draw(rng) for _ in range(ly))
                         for _ in range(lx)))
        g = BiPoly(tuple(tuple(draw(rng) for _ in range(ly))
                         for _ in range(lx)))
        want = oracle.schoolbook_bivar(f, g, ring, elem_mul).coeffs
        for name, func in (("standard", bks_standard),
                           ("reciprocal", bks_reciprocal),
                           ("negated", bks_negated), ("four", bks_four)):
            got = func(f, g, ring).coeffs
            _check(got == want, f"bipoly-{name}", (f.coeffs, g.coeffs))
    if cases:
        try:
            one = BiPoly(((1,),))
            bks_negated(one, one, ring_zmod(8))
        except MissingHalveError:
            pass
        else:
            raise _SelfTestFailure("bipoly-halve: even modulus not rejected")
    out(f"bivariate variants vs schoolbook: ok ({cases} cases, 4 variants)")


def _selftest_modpoly(rng, iters, config, out):
    for i in range(iters):
        bits = rng.choice([2, 4, 16, 48])
        modulus = rng.randrange(max(2, 1 << (bits - 1)), 1 << bits)
        length = rng.randrange(1, 50)
        f = ModPoly(tuple(rng.randrange(modulus) for _ in range(length)),
                    modulus)
        g = ModPoly(tuple(rng.randrange(modulus) for _ in range(length)),
                    modulus)
        want = oracle.schoolbook_mod(f, g).coeffs
        for variant in (Variant.KS1, Variant.KS2, Variant.KS3, Variant.KS4,
                        Variant.AUTO):
            got = mod_mul(f, g, variant, config=config).coeffs
            _check(got == want, f"modpoly-{variant.value}",
                   (modulus, f.coeffs, g.coeffs))
    out(f"modular front end vs schoolbook: ok ({iters} cases, 5 variants)")


def run_selftest(seed: int, iters: int, parallel: bool = False,
                 out=print) -> int:
    config = mul_config_from_env()
    if iters == 0:
        out("selftest: 0 cases executed (trivially passing)")
        return 0
    rng = random.Random(seed)
    try:
        _selftest_bignat(rng, iters, config, out)
        _selftest_digits(rng, iters, out)
        _selftest_pack(rng, iters, out)
        _selftest_ksint(rng, iters, config, parallel, out)
        _selftest_bipoly(rng, iters, out)
        _selftest_modpoly(rng, max(1, iters // 5), config, out)
    except _SelfTestFailure as exc:
        out(f"selftest FAILED (seed={seed}): {exc}")
        return 1
    out(f"selftest passed (seed={seed})")
    return 0


def cmd_selftest(args) -> int:
    if args.iters < 0:
        raise CommandError("iters must be >= 0")
    if args.mutate:
        # Documented mutation guard: with a corrupted multiply the suite
        # must fail; a pass here means the tests have lost their teeth.
        with _corrupted_multiply():
            status = run_selftest(args.seed, args.iters, args.parallel)
        return status
    return run_selftest(args.seed, args.iters, args.parallel)


# --- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kronmul",
        description="Polynomial multiplication over Z/nZ via multipoint "
                    "Kronecker substitution.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_mul = sub.add_parser("mul", help="multiply two polynomial files")
    p_mul.add_argument("poly_f")
    p_mul.add_argument("poly_g")
    p_mul.add_argument("-o", "--output", help="output file (default stdout)")
    p_mul.add_argument("--modulus", type=int,
                       help="expected modulus; must match the input files")
    p_mul.add_argument("--variant", default="auto",
                       choices=["ks1", "ks2", "ks3", "ks4", "auto"])
    p_mul.add_argument("--parallel", action="store_true",
                       help="run the variant's inner products in threads")
    p_mul.set_defaults(func=cmd_mul)

    p_bench = sub.add_parser("bench", help="benchmark variants to CSV")
    p_bench.add_argument("--modulus-bits", type=int, default=48)
    p_bench.add_argument("--degrees", default="100:5000:log",
                         help="grid: lo:hi:log or lo:hi:+step")
    p_bench.add_argument("--variants", default="ks1,ks2,ks3,ks4")
    p_bench.add_argument("--reps", type=int, default=5,
                         help="timed repetitions per cell (median taken)")
    p_bench.add_argument("--seed", type=int, default=1)
    p_bench.add_argument("--count-ops", action="store_true",
                         help="also record word-product counts "
                              "(forces classical multiplication)")
    p_bench.add_argument("--parallel", action="store_true")
    p_bench.add_argument("-o", "--output", help="CSV file (default stdout)")
    p_bench.set_defaults(func=cmd_bench)

    p_self = sub.add_parser("selftest", help="run the seeded self-test")
    p_self.add_argument("--seed", type=int, default=0)
    p_self.add_argument("--iters", type=int, default=100)
    p_self.add_argument("--parallel", action="store_true")
    p_self.add_argument("--mutate", action="store_true",
                        help="corrupt the multiplier first; the run must "
                             "then fail (harness sensitivity check)")
    p_self.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"kronmul: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
