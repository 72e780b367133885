"""Command-line interface.

Reproduces the bounds, threshold chains, figure datasets and game
statistics, and runs the invariant suite. Output is deterministic: floats
are written with 6 significant digits and columns keep a fixed order.

Exit codes: 0 success, 1 usage, 2 infeasible parameters, 3 invariant failure.

Examples:
  seqbell bounds --n 4
  seqbell thresholds --n 3 --bound pnc --family one-param
  seqbell figure 4 --format csv --out fig4.csv
  seqbell cascade --n 3 --eta 0.87 --eta 0.9
  seqbell pom --n 2 --trials 1000000 --seed 7
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import analytic as an
from .cascade import CascadeConfig, bell_value_numeric, bell_value_numeric_biased
from .errors import InfeasibleFamilyError, ParameterError, SeqBellError, SizeLimitError
from .measurement import PovmParams
from .oracle import ORACLE_N_MAX, local_bound_bruteforce, pnc_bound_bruteforce, quantum_max_check
from .pomgame import simulate_game

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_INVARIANT = 0, 1, 2, 3

FIGURE_N_MAX = 100


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    return value


def _json_value(value):
    if isinstance(value, float):
        return float(f"{value:.6g}")
    return value


# ---------------------------------------------------------------- commands


def _family(args) -> an.PovmFamily:
    return an.PovmFamily.parse(args.family, args.alpha)


def cmd_bounds(args):
    lo = args.n if args.n is not None else 2
    hi = args.n_max if args.n_max is not None else lo
    if lo < 2 or hi < lo:
        raise UsageError("need 2 <= n <= n-max")
    rows = []
    for n in range(lo, hi + 1):
        row = {
            "n": n,
            "local": an.local_bound(n),
            "pnc": an.pnc_bound(n),
            "tsirelson": an.tsirelson_value(n),
        }
        if n <= ORACLE_N_MAX:
            row["local_bruteforce"] = local_bound_bruteforce(n)
            row["pnc_bruteforce"] = pnc_bound_bruteforce(n) if n >= 3 else an.pnc_bound(n)
        else:
            row["local_bruteforce"] = ""
            row["pnc_bruteforce"] = ""
        rows.append(row)
    return rows


def cmd_thresholds(args):
    n = _need(args.n, "--n")
    family = _family(args)
    chain = an.threshold_chain(n, args.bound, family, args.k_max)
    values = chain.bell_values_sharp()
    rows = []
    for k, eta in enumerate(chain.criticals, start=1):
        rows.append(
            {
                "n": n,
                "k": k,
                "bound": chain.kind.value,
                "family": family.label,
                "alpha_rule": family.alpha_rule,
                "threshold": eta,
                "shared": eta < 1.0,
                "value_if_sharp": values[k - 1] if k <= len(values) else "",
            }
        )
    return rows


def _bobs(args) -> list[PovmParams]:
    etas = args.eta or [1.0]
    alphas = args.alpha_list or [args.alpha if args.alpha is not None else 0.0]
    if len(alphas) == 1:
        alphas = alphas * len(etas)
    if len(alphas) != len(etas):
        raise UsageError("give one --alpha, or one per --eta")
    return [PovmParams(e, a) for e, a in zip(etas, alphas)]


def cmd_cascade(args):
    n = _need(args.n, "--n")
    bobs = _bobs(args)
    rows = []
    for k in range(1, len(bobs) + 1):
        numeric = bell_value_numeric(CascadeConfig(n, bobs[:k]))
        closed = an.bell_value_closed(n, bobs[:k])
        rows.append(
            {
                "n": n,
                "k": k,
                "eta": bobs[k - 1].eta,
                "alpha": bobs[k - 1].alpha,
                "numeric": numeric,
                "closed_form": closed,
                "local_violated": numeric > an.local_bound(n),
                "pnc_violated": numeric > an.pnc_bound(n),
            }
        )
    return rows


def cmd_biased(args):
    n = _need(args.n, "--n")
    if args.bias_p is None:
        raise UsageError("biased needs --bias-p")
    bobs = _bobs(args)
    if any(b.alpha != 0 for b in bobs):
        raise UsageError("the biased closed form covers alpha = 0 only")
    rows = []
    for k in range(1, len(bobs) + 1):
        cfg = CascadeConfig(n, bobs[:k], bias_p=args.bias_p)
        rows.append(
            {
                "n": n,
                "k": k,
                "bias_p": args.bias_p,
                "eta": bobs[k - 1].eta,
                "numeric": bell_value_numeric_biased(cfg),
                "closed_form": an.bell_value_biased_closed(n, [b.eta for b in bobs[:k]], args.bias_p),
            }
        )
    return rows


def _figure_rows(which, n_range, kind, family, k_of_n):
    rows = []
    for n in n_range:
        chain = an.threshold_chain(n, kind, family, k_max=k_of_n)
        eta = chain.criticals[k_of_n - 1]
        rows.append(
            {
                "figure": which,
                "n": n,
                "k": k_of_n,
                "bound": kind,
                "family": family.label,
                "alpha_rule": family.alpha_rule,
                "threshold": eta,
            }
        )
    return rows


def _chain_rows(which, n, family, k_max):
    chain = an.threshold_chain(n, "pnc", family, k_max)
    return [
        {
            "figure": which,
            "n": n,
            "k": k,
            "bound": "pnc",
            "family": family.label,
            "alpha_rule": family.alpha_rule,
            "threshold": eta,
        }
        for k, eta in enumerate(chain.criticals, start=1)
        if eta < 1.0
    ]


def cmd_figure(args):
    which = args.which
    one = an.PovmFamily.one_param()
    if which in (1, 2):
        hi = args.n_max if args.n_max is not None else FIGURE_N_MAX
        return _figure_rows(which, range(2, hi + 1), "local", one, which)
    n = args.n if args.n is not None else FIGURE_N_MAX
    if which == 3:
        return _chain_rows(3, n, an.PovmFamily.sum_to_one(), args.k_max)
    alpha = args.alpha if args.alpha is not None else 0.08
    k_max = args.k_max if args.k_max is not None else n
    return _chain_rows(4, n, an.PovmFamily.fixed_alpha(alpha), k_max)


def cmd_pom(args):
    n = _need(args.n, "--n")
    povm = _bobs(args)[0] if args.eta else None
    rec = simulate_game(n, args.trials, args.seed, povm)
    return [
        {
            "n": rec.n,
            "trials": rec.trials,
            "seed": args.seed,
            "successes": rec.successes,
            "empirical_p": rec.empirical_p,
            "analytic_p": rec.analytic_p,
            "max_parity_leakage": rec.max_parity_leakage,
        }
    ]


def cmd_oracle(args):
    lo = _need(args.n, "--n")
    hi = args.n_max if args.n_max is not None else lo
    rows = []
    for n in range(lo, hi + 1):
        rows.append(
            {
                "n": n,
                "local_bruteforce": local_bound_bruteforce(n),
                "local_formula": an.local_bound(n),
                "pnc_bruteforce": pnc_bound_bruteforce(n) if n >= 3 else "",
                "pnc_formula": an.pnc_bound(n),
                "quantum_matrix": quantum_max_check(n),
                "tsirelson": an.tsirelson_value(n),
            }
        )
    return rows


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


# ---------------------------------------------------------------- output


def render_table(rows) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[str(_fmt(r[c])) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[j]) for row in cells)) for j, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def render_csv(rows) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _fmt(v) for k, v in r.items()})
    return buf.getvalue()


def render_json(spec: dict, rows, checks=None) -> str:
    doc = {"spec": spec, "data": [{k: _json_value(v) for k, v in r.items()} for r in rows]}
    if checks is not None:
        doc["checks"] = [{k: _json_value(v) for k, v in c.items()} for c in checks]
    return json.dumps(doc, indent=2) + "\n"


def render_svg(rows, x="k", y="threshold", title="") -> str:
    """Single-series point plot with a dashed line at y = 1."""
    w, h, pad = 640, 400, 50
    xs = [float(r[x]) for r in rows]
    ys = [float(r[y]) for r in rows]
    x0, x1 = min(xs), max(xs)
    y0, y1 = 0.0, max(1.1, max(ys) * 1.05)
    span_x = (x1 - x0) or 1.0

    def px(v):
        return pad + (v - x0) / span_x * (w - 2 * pad)

    def py(v):
        return h - pad - (v - y0) / (y1 - y0) * (h - 2 * pad)

    pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(xs, ys))
    dots = "\n".join(
        f'<circle cx="{px(a):.2f}" cy="{py(b):.2f}" r="2.5" fill="#1f77b4"/>' for a, b in zip(xs, ys)
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">\n'
        f'<rect width="{w}" height="{h}" fill="white"/>\n'
        f'<text x="{w / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>\n'
        f'<line x1="{pad}" y1="{h - pad}" x2="{w - pad}" y2="{h - pad}" stroke="black"/>\n'
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{h - pad}" stroke="black"/>\n'
        f'<line x1="{pad}" y1="{py(1.0):.2f}" x2="{w - pad}" y2="{py(1.0):.2f}" '
        f'stroke="gray" stroke-dasharray="4 3"/>\n'
        f'<text x="{w / 2}" y="{h - 12}" text-anchor="middle" font-size="12">{x}</text>\n'
        f'<text x="14" y="{h / 2}" font-size="12" transform="rotate(-90 14 {h / 2})">{y}</text>\n'
        f'<text x="{pad - 6}" y="{py(1.0) + 4:.2f}" text-anchor="end" font-size="10">1</text>\n'
        f'<polyline points="{pts}" fill="none" stroke="#1f77b4" stroke-width="1"/>\n'
        f"{dots}\n</svg>\n"
    )


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--n-max", type=int)
    common.add_argument("--bound", choices=["local", "pnc"], default="pnc")
    common.add_argument(
        "--family", choices=["one-param", "sum-to-one", "fixed-alpha"], default="one-param"
    )
    common.add_argument("--alpha", type=float, help="fixed-alpha family value (figure 4: default 0.08)")
    common.add_argument("--k-max", type=int)
    common.add_argument("--bias-p", type=float)
    common.add_argument("--trials", type=int, default=100_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--eta", type=float, action="append", help="sharpness of each Bob, in order")
    common.add_argument(
        "--bob-alpha",
        dest="alpha_list",
        type=float,
        action="append",
        help="biasedness of each Bob (one value applies to all)",
    )
    common.add_argument("--format", choices=["table", "csv", "json", "svg"], default="table")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(
        prog="seqbell",
        description="Sequential sharing of non-locality and preparation contextuality",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Examples:" + __doc__.split("Examples:", 1)[1],
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("bounds", parents=[common], help="local / pnc / Tsirelson values")
    sub.add_parser("thresholds", parents=[common], help="critical sharpness chain")
    sub.add_parser("cascade", parents=[common], help="density-matrix cascade vs closed form")
    sub.add_parser("biased", parents=[common], help="biased setting choices")
    fig = sub.add_parser("figure", parents=[common], help="figure datasets 1-4")
    fig.add_argument("which", type=int, choices=[1, 2, 3, 4])
    sub.add_parser("pom", parents=[common], help="Monte Carlo multiplexing game")
    sub.add_parser("oracle", parents=[common], help="brute-force bounds and matrix Tsirelson check")
    sub.add_parser("verify", parents=[common], help="run the invariant suite")
    return parser


COMMANDS = {
    "bounds": cmd_bounds,
    "thresholds": cmd_thresholds,
    "cascade": cmd_cascade,
    "biased": cmd_biased,
    "figure": cmd_figure,
    "pom": cmd_pom,
    "oracle": cmd_oracle,
}

_SPEC_KEYS = (
    "command", "which", "n", "n_max", "bound", "family", "alpha", "k_max",
    "bias_p", "trials", "seed", "eta", "alpha_list", "format",
)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    spec = {k: getattr(args, k) for k in _SPEC_KEYS if hasattr(args, k)}

    try:
        if args.command == "verify":
            from .verify import run_checks

            checks = [c.as_dict() for c in run_checks(seed=args.seed)]
            rows = [{"check": c["name"], "passed": c["passed"], "value": c["value"]} for c in checks]
            failed = [c for c in checks if not c["passed"]]
            if args.format == "json":
                text = render_json(spec, [], checks)
            elif args.format == "csv":
                text = render_csv(rows)
            elif args.format == "svg":
                raise UsageError("svg output is only available for figure")
            else:
                text = render_table(rows) + f"{len(checks) - len(failed)}/{len(checks)} checks passed\n"
            _emit(text, args.out)
            return EXIT_INVARIANT if failed else EXIT_OK

        rows = COMMANDS[args.command](args)
        if args.format == "csv":
            text = render_csv(rows)
        elif args.format == "json":
            text = render_json(spec, rows)
        elif args.format == "svg":
            if args.command != "figure":
                raise UsageError("svg output is only available for figure")
            x = "n" if args.which in (1, 2) else "k"
            text = render_svg(rows, x=x, title=f"Figure {args.which}")
        else:
            text = render_table(rows)
        _emit(text, args.out)
        return EXIT_OK
    except UsageError as exc:
        print(f"seqbell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleFamilyError as exc:
        print(f"seqbell: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SizeLimitError as exc:
        print(f"seqbell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"seqbell: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SeqBellError as exc:
        logger.exception("internal failure")
        print(f"seqbell: internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
