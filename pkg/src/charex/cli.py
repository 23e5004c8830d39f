"""Command-line entry point: ``charex <command> [options]``.

Exit codes: 0 success, 2 invalid input, 3 the moment recursion found no
consistent law (``Inconsistent`` / ``MissingSeed``).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import cf, dist, mixture, moments
from .errors import InconsistencyError, ValidationError
from .mixture import Family, MuVector
from .symfunc import as_rational, format_rational

EXIT_VALIDATION = 2
EXIT_INCONSISTENT = 3


def parse_mu(text: str) -> list[Fraction]:
    out = []
    for i, item in enumerate(text.split(",")):
        try:
            out.append(as_rational(item))
        except ValidationError as exc:
            raise ValidationError(f"mu[{i}]: {exc}") from None
    return out


def parse_seed_moment(text: str) -> tuple[int, Fraction]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected k=v, got {text!r}")
    try:
        k = int(key)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree in {text!r}") from None
    try:
        return k, as_rational(value)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, obj: dict, table: str) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(obj) + "\n")
        else:
            self.stream.write(table + "\n")


def _mu(args, family: Family | None = None) -> MuVector:
    family = family or Family.parse(getattr(args, "family", "exp"))
    return MuVector(parse_mu(args.mu), family)


def _fmt_list(values) -> list[str]:
    return [format_rational(v) for v in values]


def cmd_theta(args, out: Output) -> int:
    family = Family.parse(args.family)
    mu = _mu(args, family)
    theta = mixture.theta_for(mu, family)
    obj = {"family": family.value, "mu": _fmt_list(mu), "theta": _fmt_list(theta)}
    out.emit(obj, "theta = " + ", ".join(obj["theta"]))
    return 0


def cmd_check(args, out: Output) -> int:
    report = mixture.check_condition(_mu(args, Family.EXPONENTIAL), args.m_max)
    lines = [report.label()]
    if report.h_m is not None:
        lines.append(f"h_{report.m} = {format_rational(report.h_m)}, p_{report.m} = {format_rational(report.p_m)}")
    out.emit(report.to_json(), "\n".join(lines))
    return 0


def cmd_lemma1(args, out: Output) -> int:
    family = Family.parse(args.family)
    mu = _mu(args, family)
    theta = mixture.theta_for(mu, family)
    for m in range(args.m_max + 1):
        if family is Family.LAPLACE:
            if m % 2:
                continue
            res = mixture.verify_lemma1_laplace(mu, theta, m)
        else:
            res = mixture.verify_lemma1(mu, theta, m)
        lhs, rhs = format_rational(res.lhs), format_rational(res.rhs)
        relation = "==" if res.holds else "!="
        out.emit({"m": m, "holds": res.holds, "lhs": lhs, "rhs": rhs}, f"m={m:<3d} {lhs} {relation} {rhs}")
    return 0


def cmd_moments(args, out: Output) -> int:
    family = Family.parse(args.family)
    mu = _mu(args, family)
    theta = mixture.theta_for(mu, family)
    seeds = dict(args.seed_moment or [])
    try:
        seq, steps = moments.reconstruct_moments(mu, theta, seeds, args.m_max)
    except InconsistencyError as exc:
        for step in getattr(exc, "steps", []):
            out.emit(step.to_json(), _step_line(step))
        raise
    for step in steps:
        out.emit(step.to_json(), _step_line(step))
    obj = {"moments": _fmt_list(seq)}
    if family is Family.EXPONENTIAL:
        obj["law"] = moments.classify_from_seed(seq[1]).label()
    out.emit(obj, ",".join(obj["moments"]))
    return 0


def _step_line(step: moments.RecursionStep) -> str:
    line = f"m={step.m:<3d} D={format_rational(step.denominator)} R={format_rational(step.rhs)} {step.outcome}"
    if step.value is not None:
        line += f" M={format_rational(step.value)}"
    return line


def cmd_verify_cf(args, out: Output) -> int:
    model = cf.CFModel.parse(args.model)
    grid = cf.GridSpec.parse(args.grid) if args.grid else cf.GridSpec()
    if args.equation == "symmetric":
        res = cf.phisa_residual(model, grid)
    else:
        if not args.mu:
            raise ValidationError("--mu is required for the mixture equation")
        family = Family.parse(args.family)
        mu = _mu(args, family)
        res = cf.identity_residual(model, mu, mixture.theta_for(mu, family), grid)
    out.emit(res.to_json(), f"residual = {res.residual:.3e} at t = {res.argmax_t:.6g}")
    return 0


def _x_values(args) -> np.ndarray:
    if args.x and args.grid:
        raise ValidationError("give either --x or --grid, not both")
    if args.grid:
        return cf.GridSpec.parse(args.grid).values()
    if args.x:
        try:
            return np.array([float(v) for v in args.x.split(",")])
        except ValueError:
            raise ValidationError(f"bad --x list {args.x!r}") from None
    raise ValidationError("--x or --grid is required")


def cmd_pdf(args, out: Output) -> int:
    law = dist.MixtureLaw.from_mu(_mu(args, Family.EXPONENTIAL), args.lam)
    xs = _x_values(args)
    pdf = dist.mixture_pdf(law, xs)
    cdf = dist.mixture_cdf(law, xs)
    for x, f, c in zip(xs.tolist(), pdf.tolist(), cdf.tolist()):
        out.emit({"x": x, "pdf": f, "cdf": c}, f"{x:>12.6g} {f:>14.8g} {c:>14.8g}")
    return 0


def cmd_sample(args, out: Output) -> int:
    samples = dist.sample_sum(_mu(args, Family.EXPONENTIAL), args.lam, args.n_samples, args.seed)
    if args.out:
        if args.encoding == "binary":
            samples.astype("<f8").tofile(args.out)
        else:
            with open(args.out, "w") as fh:
                fh.writelines(f"{v!r}\n" for v in samples.tolist())
        obj = {
            "n_samples": args.n_samples,
            "seed": args.seed,
            "encoding": args.encoding,
            "mean": float(np.mean(samples)),
            "out": args.out,
        }
        out.emit(obj, f"wrote {args.n_samples} samples to {args.out} (mean {obj['mean']:.6g})")
    elif args.encoding == "binary":
        sys.stdout.flush()
        sys.stdout.buffer.write(samples.astype("<f8").tobytes())
        sys.stdout.buffer.flush()
    else:
        out.stream.writelines(f"{v!r}\n" for v in samples.tolist())
    return 0


def cmd_renyi(args, out: Output) -> int:
    rep = dist.renyi_check(args.sample_size, args.rank, args.lam, args.n_samples, args.seed)
    out.emit(
        rep.to_json(),
        f"KS(S) = {rep.ks_S:.5f}  KS(S/lambda) = {rep.ks_S_over_lambda:.5f}  "
        f"threshold = {rep.threshold:.5f}  matching: {rep.matching}",
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charex",
        description="Exact and numerical checks for mixture identities of exponential and Laplace laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table", help="output format")

    def with_mu(p, required=True):
        p.add_argument("--mu", required=required, help="comma-separated exact rationals, e.g. 1/3,-2,5/7")

    def with_family(p):
        p.add_argument("--family", choices=("exp", "laplace"), default="exp", help="weight family")

    p = sub.add_parser("theta", parents=[common], help="mixture weights theta_k")
    with_mu(p)
    with_family(p)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("check", parents=[common], help="scan h_m(mu) != p_m(mu) for m >= 2")
    with_mu(p)
    p.add_argument("--m-max", type=int, default=mixture.DEFAULT_SCAN_DEGREE, help="largest degree scanned")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lemma1", parents=[common], help="exact check of sum theta_k mu_k^m = h_m")
    with_mu(p)
    with_family(p)
    p.add_argument("--m-max", type=int, default=10, help="largest degree checked")
    p.set_defaults(func=cmd_lemma1)

    p = sub.add_parser("moments", parents=[common], help="solve the moment recursion")
    with_mu(p)
    with_family(p)
    p.add_argument("--seed-moment", type=parse_seed_moment, action="append", metavar="k=v",
                   help="fix E(X^k) = v; k=1 is required, others fill singular steps")
    p.add_argument("--m-max", type=int, default=moments.DEFAULT_RECURSION_DEGREE, help="highest moment")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("verify-cf", parents=[common], help="grid residual of a functional equation")
    p.add_argument("--model", required=True, help="exp:L | negexp:L | laplace:L | bernoulli:A | degenerate")
    with_mu(p, required=False)
    with_family(p)
    p.add_argument("--equation", choices=("mixture", "symmetric"), default="mixture",
                   help="mixture: prod phi(mu_k t) = sum theta_k phi(mu_k t); "
                        "symmetric: phi(t)phi(-t) = (phi(t)+phi(-t))/2")
    p.add_argument("--grid", help="tmin:tmax:points (default -10:10:2001)")
    p.set_defaults(func=cmd_verify_cf)

    p = sub.add_parser("pdf", parents=[common], help="density and CDF of S = sum mu_k X_k")
    with_mu(p)
    p.add_argument("--lambda", dest="lam", type=positive_float, default=1.0, help="exponential rate")
    p.add_argument("--x", help="comma-separated evaluation points")
    p.add_argument("--grid", help="xmin:xmax:points")
    p.set_defaults(func=cmd_pdf)

    p = sub.add_parser("sample", parents=[common], help="draw samples of S = sum mu_k X_k")
    with_mu(p)
    p.add_argument("--lambda", dest="lam", type=positive_float, default=1.0, help="exponential rate")
    p.add_argument("--n-samples", type=positive_int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--encoding", choices=("text", "binary"), default="text",
                   help="text: one decimal per line; binary: little-endian float64")
    p.add_argument("--out", help="write samples here and print a summary instead")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("renyi", parents=[common], help="order-statistic check of S and S/lambda")
    p.add_argument("--sample-size", type=positive_int, required=True, help="L, the number of exponentials")
    p.add_argument("--rank", type=positive_int, required=True, help="n, the order statistic (n < L)")
    p.add_argument("--lambda", dest="lam", type=positive_float, default=1.0, help="exponential rate")
    p.add_argument("--n-samples", type=positive_int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_renyi)

    return parser


# options whose values may legitimately start with "-" (negative entries)
_SIGNED_VALUE_FLAGS = ("--mu", "--x", "--grid")


def _glue_signed_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in _SIGNED_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_signed_values(argv))
    out = Output(args.format)
    try:
        return args.func(args, out)
    except InconsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
