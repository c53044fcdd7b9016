"""Command line entry point: ``carrymix <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 a
resource cap was exceeded.  Tables go to stdout as CSV or JSON with exact
``p/q`` strings; diagnostics go to stderr.  Sampling commands take
``--seed`` or fall back to the ``CARRYMIX_SEED`` environment variable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import __version__
from . import bijections as bj
from . import carries, multiplication, sections, shuffling, verify
from .errors import ConsistencyError, ResourceCapError
from .exact import RationalMatrix, fmt_rational
from .montecarlo import GENERATOR, make_rng

SEED_ENV = "CARRYMIX_SEED"

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt(x, decimal: int | None) -> str:
    if isinstance(x, Fraction) and decimal is not None:
        with localcontext() as ctx:
            ctx.prec = decimal + len(str(abs(x.numerator) // x.denominator)) + 5
            d = Decimal(x.numerator) / Decimal(x.denominator)
            return str(d.quantize(Decimal(1).scaleb(-decimal)))
    if isinstance(x, Fraction):
        return fmt_rational(x)
    return str(x)


def _convert(obj, decimal):
    if isinstance(obj, dict):
        return {k: _convert(v, decimal) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_convert(v, decimal) for v in obj]
    if isinstance(obj, Fraction):
        return _fmt(obj, decimal)
    return obj


class Output:
    def __init__(self, args, default_format: str = "csv"):
        self.args = args
        self.format = args.format or default_format
        self.decimal = args.decimal

    def meta(self, **extra) -> dict:
        params = {k: v for k, v in vars(self.args).items() if k not in ("func", "format", "decimal", "cmd_path", "command", "sub")}
        meta = {"command": self.args.cmd_path, "parameters": params, "version": __version__}
        meta.update(extra)
        return meta

    def table(self, header: list[str], rows: list[list], **meta):
        if self.format == "json":
            data = [dict(zip(header, _convert(r, self.decimal))) for r in rows]
            self._json({"meta": self.meta(**meta), "data": data})
        else:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            for r in rows:
                w.writerow([_fmt(x, self.decimal) for x in r])
            sys.stdout.write(buf.getvalue())

    def matrix(self, M: RationalMatrix, **meta):
        rows = [[_fmt(x, self.decimal) for x in r] for r in M.rows]
        if self.format == "json":
            self._json({"meta": self.meta(**meta), "data": rows})
        else:
            sys.stdout.write("".join(",".join(r) + "\n" for r in rows))

    def document(self, payload: dict, **meta):
        self._json({"meta": self.meta(**meta), "data": _convert(payload, self.decimal)})

    def _json(self, obj):
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _seed(args, required: bool = True, default: int | None = None) -> int | None:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None
    if required:
        raise UsageError(f"this command needs --seed or {SEED_ENV}")
    return default


def _read_array(path: str) -> bj.ColumnArray:
    try:
        with open(path) as fh:
            return bj.ColumnArray.from_text(fh.read())
    except OSError as exc:
        raise UsageError(str(exc)) from None


# command handlers ---------------------------------------------------------------

def cmd_matrix(args):
    Output(args).matrix(carries.build_P(args.n, args.b))


def cmd_stationary(args):
    pi = carries.stationary(args.n)
    Output(args).table(["j", "pi"], [[j, p] for j, p in enumerate(pi)])


def cmd_sep(args):
    rows = [[r, carries.separation_exact(args.n, args.b, r), carries.separation_closed(args.n, args.b, r)]
            for r in range(args.r_max + 1)]
    Output(args).table(["r", "sep_exact", "sep_closed"], rows)
    return EXIT_OK if all(r[1] == r[2] for r in rows) else EXIT_FAILED


def cmd_tv(args):
    rows = [[r, carries.tv_from_start(args.n, args.b, r)] for r in range(args.r_max + 1)]
    Output(args).table(["r", "tv"], rows)


def cmd_moments(args):
    rows = []
    for j in range(1, args.j_max + 1):
        mo = carries.carry_moments(args.n, args.b, j)
        rows.append([j, mo.mean, mo.variance])
    Output(args).table(["j", "mean", "variance"], rows)


def cmd_shuffle_sample(args):
    seed = _seed(args)
    rng = make_rng(seed)
    if args.sampler == "riffle":
        if args.b != 2:
            raise UsageError("the riffle sampler only does b = 2")
        draws = [shuffling.riffle_sample(args.n, rng) for _ in range(args.count)]
    else:
        draws = [shuffling.gsr_sample(args.n, args.b, rng) for _ in range(args.count)]
    out = Output(args, "json")
    if out.format == "json":
        out.document({"samples": [str(p) for p in draws]}, seed=seed, generator=GENERATOR)
    else:
        out.table(["index", "permutation"], [[i, str(p)] for i, p in enumerate(draws)])


def cmd_shuffle_dist(args):
    dist = shuffling.exhaustive_shuffle_dist(args.n, args.b)
    out = Output(args, "json")
    if out.format == "json":
        out.document({str(p): q for p, q in sorted(dist.items())})
    else:
        out.table(["permutation", "probability"], [[str(p), q] for p, q in sorted(dist.items())])


def cmd_card_matrix(args):
    Output(args).matrix(shuffling.card_tracking_matrix(args.n, args.b), indexing="1-based positions")


def cmd_carries(args):
    arr = _read_array(args.file)
    trace = bj.column_carry_trace(arr)
    Output(args).table(["j", "carry"], [[j, k] for j, k in enumerate(trace, 1)])


def cmd_tau(args):
    arr = _read_array(args.file)
    taus = bj.tau_trace(arr)
    kappa = bj.column_carry_trace(arr)
    Output(args).table(["j", "tau", "descents", "carry"],
                       [[j, str(t), t.descents(), k] for j, (t, k) in enumerate(zip(taus, kappa), 1)])


def cmd_mult_matrix(args):
    Output(args).matrix(multiplication.build_K(args.k, args.b))


def cmd_mult_trace(args):
    try:
        digits = [int(t) for t in args.digits.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad digit list {args.digits!r}") from None
    trace = multiplication.mult_carry_trace(args.k, args.b, digits)
    Output(args).table(["i", "digit", "carry"], [[i, d, c] for i, (d, c) in enumerate(zip(digits, trace), 1)])


def cmd_mult_tv(args):
    rows = [[r, multiplication.mult_tv_exact(args.k, args.b, r), Fraction(args.k, 2 * args.b**r)]
            for r in range(1, args.r_max + 1)]
    Output(args).table(["r", "tv", "bound"], rows)


def cmd_sections_matrix(args):
    Output(args).matrix(sections.build_C(args.n, args.r))


def cmd_sections_apply(args):
    try:
        h = [Fraction(t) for t in args.h.split(",")]
    except ValueError:
        raise UsageError(f"bad coefficient list {args.h!r}") from None
    if len(h) != args.n + 2:
        raise UsageError(f"--h needs n+2 = {args.n + 2} coefficients, got {len(h)}")
    out = sections.section_poly(h, args.r)
    Output(args).table(["i", "h", "h_section"], [[i, a, Fraction(c)] for i, (a, c) in enumerate(zip(h, out))])


def _report(args, results: list) -> int:
    ok = all(r.ok for r in results)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.name} ({r.cases} cases)", file=sys.stderr)
        for f in r.failures[:10]:
            print(f"    {f}", file=sys.stderr)
    Output(args, "json").document({"ok": ok, "checks": [r.to_json() for r in results]})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args):
    name = args.check
    if name == "all":
        return _report(args, verify.run_all(quick=args.quick))
    if name == "theorem-main" and args.n is not None:
        if None in (args.m, args.b):
            raise UsageError("theorem-main needs --n, --m and --b together")
        seed = _seed(args) if args.mode == "montecarlo" else None
        res = verify.check_theorem_main(args.n, args.m, args.b, args.mode, args.samples, seed or 0)
        return _report(args, [res])
    if name == "bijections" and args.n is not None:
        if None in (args.m, args.b):
            raise UsageError("bijections needs --n, --m and --b together")
        exhaustive = args.samples is None
        res = verify.check_bijections(args.n, args.m, args.b, exhaustive=exhaustive,
                                      samples=args.samples or 0, seed=_seed(args, required=False, default=0))
        return _report(args, [res])
    fn = verify.CHECKS[name]
    if name in ("shuffle", "card"):
        return _report(args, [fn(quick=args.quick, seed=_seed(args, required=False, default=0))])
    return _report(args, [fn(quick=args.quick)])


# parser -----------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--decimal", type=int, default=None, metavar="DIGITS",
                   help="print rounded decimals instead of exact fractions")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="carrymix", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"carrymix {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subs, name, func, path, **kw):
        p = subs.add_parser(name, **kw)
        _common(p)
        p.set_defaults(func=func, cmd_path=path)
        return p

    p = leaf(sub, "matrix", cmd_matrix, "matrix", help="carries transition matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = leaf(sub, "stationary", cmd_stationary, "stationary", help="Eulerian stationary vector")
    p.add_argument("--n", type=int, required=True)

    for name, func, extra in (("sep", cmd_sep, "--r-max"), ("tv", cmd_tv, "--r-max"),
                              ("moments", cmd_moments, "--j-max")):
        p = leaf(sub, name, func, name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
        p.add_argument(extra, type=int, required=True)

    sh = sub.add_parser("shuffle", help="GSR b-shuffles").add_subparsers(dest="sub", required=True)
    p = leaf(sh, "sample", cmd_shuffle_sample, "shuffle sample")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--sampler", choices=("digits", "riffle"), default="digits")
    p = leaf(sh, "dist", cmd_shuffle_dist, "shuffle dist")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = leaf(sub, "card-matrix", cmd_card_matrix, "card-matrix", help="card-one tracking matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    for name, func in (("carries", cmd_carries), ("tau", cmd_tau)):
        p = leaf(sub, name, func, name)
        p.add_argument("--file", required=True)

    mu = sub.add_parser("mult", help="multiplication carries").add_subparsers(dest="sub", required=True)
    p = leaf(mu, "matrix", cmd_mult_matrix, "mult matrix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p = leaf(mu, "trace", cmd_mult_trace, "mult trace")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--digits", required=True, help="least significant digit first, e.g. '3,2,4,1'")
    p = leaf(mu, "tv", cmd_mult_tv, "mult tv")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--r-max", type=int, required=True)

    se = sub.add_parser("sections", help="generating function sections").add_subparsers(dest="sub", required=True)
    p = leaf(se, "matrix", cmd_sections_matrix, "sections matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p = leaf(se, "apply", cmd_sections_apply, "sections apply")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--h", required=True, help='comma separated "h0,h1,..."')

    p = leaf(sub, "verify", cmd_verify, "verify", help="run verification sweeps")
    p.add_argument("check", choices=sorted(verify.CHECKS) + ["all"])
    p.add_argument("--quick", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--mode", choices=("exhaustive", "montecarlo"), default="exhaustive")
    p.add_argument("--exhaustive", action="store_true", help="bijections: enumerate every array (default)")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.command == "verify" and args.check == "theorem-main" and args.samples is None:
        args.samples = 10**5
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"carrymix: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"carrymix: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConsistencyError as exc:
        print(f"carrymix: internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        print(f"carrymix: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code or EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
