"""Command-line front end.

Every run prints a header line echoing the version and all budgets, so that
outputs are reproducible.  Exit codes: 0 ok, 2 precondition failed,
3 undecidable at the configured precision, 4 a budget was exhausted.
"""
from __future__ import annotations

import argparse
import ast
import operator
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from .antimorphism import CaseAssertionFailed, NotInAlphabet, format_word, psi_system
from .diagnostics import (decay_witnesses, delone_report, large_gap_witnesses,
                          small_gap_witnesses, ud_condition_probe)
from .export import alphabet_csv, gaps_csv, orbit_csv, points_csv, to_json, window_svg
from .named import NAMES, named_context, named_sequence
from .numeric import (DEFAULT_PRECISION_CAP, AlgebraicReal, NoSignChange, NotIsolating,
                      RequiresAlgebraicMode, RootNotGreaterThanOne, UndecidableAtPrecision,
                      largest_real_root, make_algebraic)
from .orbit import BetaContext, OutOfDomain, is_yrrap
from .pointset import (BetaTooSmall, LetterBudgetExceeded, TooFewPoints, brute_force_oracle,
                       derive_gap_morphism, gap_distances, gap_labels, y_window)
from .sequences import DigitSequence, SequenceFormatError, parse_morphism, parse_sequence
from .solver import (PreconditionFailed, first_mismatch, residual, solve_beta, target_width_for,
                     validate_admissibility)

EXIT_OK, EXIT_PRECONDITION, EXIT_UNDECIDABLE, EXIT_BUDGET = 0, 2, 3, 4

PRECONDITION_ERRORS = (PreconditionFailed, NotIsolating, RootNotGreaterThanOne, BetaTooSmall,
                       TooFewPoints, SequenceFormatError, OutOfDomain, NotInAlphabet,
                       RequiresAlgebraicMode, NoSignChange, CaseAssertionFailed)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    named: str | None = None
    poly: str | None = None
    bracket: str | None = None
    seq: str | None = None
    morphism: str | None = None
    window: str | None = None
    n: int = 12
    depth: int = 3
    horizon: int = 2000
    letters: int = 64
    orbit_bound: int = 200
    precision: int = DEFAULT_PRECISION_CAP
    places: int = 6
    format: str = "text"

    def header(self) -> str:
        keys = ("named", "poly", "bracket", "seq", "morphism", "window", "n", "depth", "horizon",
                "letters", "orbit_bound", "precision", "places", "format")
        d = asdict(self)
        body = " ".join(f"{k}={d[k]}" for k in keys if d[k] is not None)
        return f"# negbeta {__version__} {self.command} {body}"


# ---------------------------------------------------------------------------
# base and window parsing


def _fractions(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad number list {text!r}") from exc


def _sequence(cfg: RunConfig) -> DigitSequence | None:
    if cfg.seq is not None:
        return parse_sequence(cfg.seq)
    if cfg.morphism is not None:
        return parse_morphism(cfg.morphism)
    if cfg.named in NAMES and cfg.command == "solve":
        try:
            return named_sequence(cfg.named)
        except KeyError:
            return None
    return None


def build_context(cfg: RunConfig) -> BetaContext:
    sources = [x for x in (cfg.named, cfg.poly, cfg.seq, cfg.morphism) if x is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --named, --poly, --seq, --morphism")
    if cfg.named is not None:
        if cfg.named not in NAMES:
            raise UsageError(f"unknown base {cfg.named!r}; known: {', '.join(NAMES)}")
        cap = None if cfg.precision == DEFAULT_PRECISION_CAP else cfg.precision
        return named_context(cfg.named, cap)
    if cfg.poly is not None:
        coeffs = _fractions(cfg.poly)
        if cfg.bracket is not None:
            br = _fractions(cfg.bracket)
            if len(br) != 2:
                raise UsageError("--bracket takes two numbers lo,hi")
            base = make_algebraic(coeffs, (br[0], br[1]))
        else:
            base = largest_real_root(coeffs)
        return BetaContext(base, name=f"poly[{cfg.poly}]")
    seq = _sequence(cfg)
    base = solve_beta(seq, target_width_for(cfg.precision), precision_cap=cfg.precision,
                      check_horizon=cfg.horizon)
    return BetaContext(base, name=seq.name or "seq")


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def parse_value(ctx: BetaContext, text: str):
    """Evaluate an expression in b (or beta) exactly: '-b^3', '1-2*b', '3/2'."""
    src = text.strip().replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"bad window expression {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return ctx.elem(node.value)
        if isinstance(node, ast.Name) and node.id in ("b", "beta"):
            return ctx.beta
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise UsageError("exponents must be integer literals")
                return ev(node.left) ** node.right.value
            if isinstance(node.op, ast.Div):
                return ev(node.left) * ctx.field.inverse(ev(node.right))
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise UsageError(f"unsupported token in {text!r}")

    return ev(tree)


def parse_window(ctx: BetaContext, text: str | None, default_power: int):
    if text is None:
        p = ctx.beta ** default_power
        return (-p, p)
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("--window takes lo,hi")
    lo, hi = (parse_value(ctx, t) for t in parts)
    if (hi - lo).sign() < 0:
        raise UsageError("empty window")
    return lo, hi


# ---------------------------------------------------------------------------
# commands


def cmd_orbit(cfg: RunConfig, out) -> int:
    """Orbit of the left endpoint with digits, and the Yrrap verdict."""
    ctx = build_context(cfg)
    if cfg.format == "csv":
        out.write(orbit_csv(ctx, cfg.n, cfg.places))
        return EXIT_OK
    rows = []
    for k in range(cfg.n + 1):
        t, a = ctx.orbit_extend(k)
        rows.append({"n": k, "a_n": a, "t_n": t.exact_str(), "t_n_decimal": t.decimal(cfg.places)})
    if cfg.format == "json":
        out.write(to_json({"base": _base_dict(ctx), "orbit": rows}))
        return EXIT_OK
    out.write(f"base: {_base_text(ctx)}\n")
    for r in rows:
        out.write(f"n={r['n']:<4} a={r['a_n']:<3} t={r['t_n']:<28} ~ {r['t_n_decimal']}\n")
    if ctx.algebraic:
        out.write(f"{is_yrrap(ctx, max(cfg.orbit_bound, cfg.n))}\n")
    return EXIT_OK


def cmd_psi(cfg: RunConfig, out) -> int:
    """Images of the letters reached from (inf,0)(0,inf), up to the letter budget."""
    ctx = build_context(cfg)
    system = psi_system(ctx)
    seed = [system.letter(float("inf"), 0), system.letter(0, float("inf"))]
    order, closed = system.reachable(seed, cfg.letters)
    if cfg.format == "csv":
        out.write(alphabet_csv(ctx, order, cfg.places))
    elif cfg.format == "json":
        out.write(to_json({"base": _base_dict(ctx), "closed": closed,
                           "rules": [[str(u), format_word(system.psi(u)),
                                      system.length(u).decimal(cfg.places)] for u in order]}))
    else:
        out.write(f"base: {_base_text(ctx)}\n")
        for u in order:
            out.write(f"{u} -> {format_word(system.psi(u))}    L = {system.length(u).exact_str()}\n")
        if not closed:
            out.write(f"# letter budget {cfg.letters} reached\n")
    return EXIT_OK if closed else EXIT_BUDGET


def cmd_zset(cfg: RunConfig, out) -> int:
    """(-beta)-integers in a window, with gap letters when the gap alphabet is finite."""
    ctx = build_context(cfg)
    window = y_window(ctx, parse_window(ctx, cfg.window, cfg.depth))
    labels = None
    beta = ctx.beta
    if (beta * beta - beta - 1).sign() >= 0:
        gm = derive_gap_morphism(ctx, cfg.letters)
        if gm.closed:
            labels = gap_labels(window, gm)
    if cfg.format == "csv":
        out.write(points_csv(window, cfg.places, z_only=True))
    elif cfg.format == "svg":
        out.write(window_svg(window, labels, places=cfg.places))
    elif cfg.format == "json":
        out.write(to_json({
            "base": _base_dict(ctx),
            "window": [e.exact_str() for e in window.interval],
            "z_points": [[z.exact_str(), z.decimal(cfg.places)] for z in window.z_points],
            "gap_labels": labels,
            "gaps": [[g.exact_str(), g.decimal(cfg.places), c] for g, c in _distances(window)],
        }))
    else:
        zs = window.z_points
        out.write(f"base: {_base_text(ctx)}\n")
        lo, hi = window.interval
        out.write(f"window: [{lo.exact_str()}, {hi.exact_str()}] ~ "
                  f"[{lo.decimal(cfg.places)}, {hi.decimal(cfg.places)}]\n")
        out.write(f"{len(zs)} points\n")
        for z in zs:
            out.write(f"  {z.exact_str():<24} ~ {z.decimal(cfg.places)}\n")
        if labels is not None:
            out.write(f"gaps: {labels}\n")
        for g, c in _distances(window):
            out.write(f"  gap {g.exact_str()} ~ {g.decimal(cfg.places)} x{c}\n")
    return EXIT_OK


def cmd_gapmorphism(cfg: RunConfig, out) -> int:
    """Anti-morphism on the gaps between consecutive (-beta)-integers."""
    ctx = build_context(cfg)
    gm = derive_gap_morphism(ctx, cfg.letters)
    if cfg.format == "csv":
        out.write(gaps_csv(gm, cfg.places))
    elif cfg.format == "json":
        out.write(to_json({
            "base": _base_dict(ctx), "closed": gm.closed, "letter_budget": gm.max_letters,
            "rules": {n: list(r) for n, r in gm.rules.items()},
            "letters": {n: {"word": format_word(w), "length": gm.lengths[n].exact_str(),
                            "length_decimal": gm.lengths[n].decimal(cfg.places)}
                        for n, w in gm.words.items()},
        }))
    else:
        out.write(f"base: {_base_text(ctx)}\n")
        for n, r in gm.rules.items():
            out.write(f"{n} -> {' '.join(r)}\n")
        for n, w in gm.words.items():
            out.write(f"  {n} = {format_word(w)}    length {gm.lengths[n].exact_str()} "
                      f"~ {gm.lengths[n].decimal(cfg.places)}\n")
        if not gm.closed:
            out.write(f"# not closed within {gm.max_letters} letters\n")
    return EXIT_OK if gm.closed else EXIT_BUDGET


def cmd_solve(cfg: RunConfig, out) -> int:
    """Recover beta from a digit sequence and check that it is the expansion."""
    seq = _sequence(cfg)
    if seq is None:
        raise UsageError("solve needs --seq, --morphism or a sequence-defined --named base")
    base = solve_beta(seq, target_width_for(cfg.precision), precision_cap=cfg.precision,
                      check_horizon=cfg.horizon)
    beta_text = _beta_text(base)  # before the checks below refine the bracket further
    ctx = BetaContext(base, name=seq.name)
    report = validate_admissibility(seq, horizon=cfg.horizon)
    horizon = min(cfg.horizon, 256) if not ctx.algebraic else cfg.horizon
    bad = first_mismatch(seq, ctx, horizon)
    res = residual(seq, base)
    if cfg.format == "json":
        out.write(to_json({
            "sequence": seq.literal(), "base": _base_dict(ctx), "admissibility": report.summary(),
            "expansion_check": {"horizon": horizon, "first_mismatch": bad,
                                "actual_prefix": ctx.digits(min(horizon, 16))},
            "residual_bound": f"{float(res.bound):.3e}",
        }))
        return EXIT_OK
    out.write(f"beta {beta_text}")
    if bad is not None:
        actual = " ".join(map(str, ctx.digits(max(bad + 4, 8))))
        out.write(f"; WARNING: not the expansion (strict condition at zeros fails; digits differ "
                  f"at n = {bad}; actual expansion starts {actual} ...)")
    out.write("\n")
    out.write(f"{report.summary()}\n")
    if bad is None:
        out.write(f"expansion check: orbit digits agree to n = {horizon}\n")
    out.write(f"residual bound: {float(res.bound):.3e}\n")
    return EXIT_OK


def cmd_delone(cfg: RunConfig, out) -> int:
    """Gap extremes and uniform-discreteness evidence; witness tables for the prop bases."""
    ctx = build_context(cfg)
    ks = tuple(range(1, cfg.depth + 1))
    rows, title = [], None
    if cfg.named == "prop11":
        title = "k  factor  gap  bound  window_min_gap"
        for w in small_gap_witnesses(ctx, ks):
            rows.append([w.k, w.factor, w.gap.decimal(cfg.places), w.bound.decimal(cfg.places),
                         w.window_min_gap.decimal(cfg.places)])
    elif cfg.named == "prop12":
        title = "k  n_k  t_{n_k}  bound"
        for w in decay_witnesses(ctx, named_sequence("prop12"), ks=ks):
            rows.append([w.k, w.n, w.t.decimal(cfg.places), w.bound.decimal(cfg.places)])
    elif cfg.named == "prop13":
        title = "k  level  stretch  span  enclosing_gap  window_max_gap"
        for w in large_gap_witnesses(ctx, ks=ks):
            rows.append([w.k, w.level, w.prefix, w.span.decimal(cfg.places),
                         None if w.enclosing_gap is None else w.enclosing_gap.decimal(cfg.places),
                         w.window_max_gap.decimal(cfg.places)])
    if title is not None:
        ud = ud_condition_probe(ctx, cfg.orbit_bound)
        if cfg.format == "json":
            out.write(to_json({"base": _base_dict(ctx), "columns": title.split("  "), "rows": rows,
                               "ud_condition": ud.to_dict(),
                               "scope": "window-relative evidence; no global Delone claim"}))
        else:
            out.write(f"base: {_base_text(ctx)}\n{title}\n")
            for r in rows:
                out.write("  ".join(str(x) for x in r) + "\n")
            out.write(f"odd-orbit condition: {ud.verdict} ({ud.note})\n")
        return EXIT_OK
    report = delone_report(ctx, parse_window(ctx, cfg.window, cfg.depth), cfg.orbit_bound)
    if cfg.format == "json":
        out.write(to_json(report.to_dict()))
    else:
        d = report.to_dict()
        out.write(f"base: {_base_text(ctx)}\n")
        out.write(f"window: [{d['window'][0]}, {d['window'][1]}] ({d['z_points']} points)\n")
        out.write(f"min gap: {d['min_gap'][0]} ~ {d['min_gap'][1]}\n")
        out.write(f"max gap: {d['max_gap'][0]} ~ {d['max_gap'][1]}\n")
        out.write(f"odd-orbit condition: {report.ud.verdict} ({report.ud.note})\n")
        if report.yrrap:
            out.write(f"{report.yrrap}\n")
        out.write("scope: window-relative evidence; no global Delone claim\n")
    return EXIT_OK


def cmd_oracle(cfg: RunConfig, out) -> int:
    """Compare the tiling pipeline with the digit-tree brute force on a window."""
    ctx = build_context(cfg)
    interval = parse_window(ctx, cfg.window, cfg.depth)
    pipe = y_window(ctx, interval).z_points
    oracle = brute_force_oracle(ctx, None, interval)
    same = len(pipe) == len(oracle) and all(a == b for a, b in zip(pipe, oracle))
    out.write(f"base: {_base_text(ctx)}\n")
    out.write(f"pipeline {len(pipe)} points, oracle {len(oracle)} points: "
              f"{'equal' if same else 'DIFFERENT'}\n")
    for w in oracle.warnings:
        out.write(f"warning: {w}\n")
    return EXIT_OK if same else 1


COMMANDS = {"orbit": cmd_orbit, "psi": cmd_psi, "zset": cmd_zset, "gapmorphism": cmd_gapmorphism,
            "solve": cmd_solve, "delone": cmd_delone, "oracle": cmd_oracle}


# ---------------------------------------------------------------------------
# formatting helpers


def _distances(window):
    return gap_distances(window) if len(window.z_points) >= 2 else []


def _beta_text(base, exact_bracket: bool = True) -> str:
    if isinstance(base, AlgebraicReal):
        if base.is_rational:
            return f"= {base.rational_value} (exact)"
        lo, hi = base.isolating_interval
        return (f"= root of {_poly_text(base.minimal_polynomial)} in [{lo}, {hi}] "
                f"~ {float(base):.15g} (exact)")
    lo, hi = base.current_bracket
    mid = f"{float((lo + hi) / 2):.15g} (width {float(hi - lo):.2e})"
    return f"in [{lo}, {hi}] ~ {mid}" if exact_bracket else f"~ {mid}"


def _poly_text(c) -> str:
    terms = []
    for k in range(len(c) - 1, -1, -1):
        a = c[k]
        if a == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        coef = str(abs(a)) if (abs(a) != 1 or k == 0) else ""
        terms.append(("-" if a < 0 else "+", coef + mono))
    s = "".join(f" {sg} {t}" for sg, t in terms).strip()
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _base_text(ctx: BetaContext) -> str:
    return f"{ctx.name} beta {_beta_text(ctx.base, exact_bracket=False)} [{ctx.mode}]"


def _base_dict(ctx: BetaContext) -> dict:
    d = {"name": ctx.name, "mode": ctx.mode}
    if isinstance(ctx.base, AlgebraicReal):
        lo, hi = ctx.base.isolating_interval
        d.update(minimal_polynomial=list(ctx.base.minimal_polynomial), bracket=[str(lo), str(hi)])
    else:
        lo, hi = ctx.base.current_bracket
        d.update(bracket=[str(lo), str(hi)])
    d["decimal"] = f"{float(ctx.base):.15g}"
    return d


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("base")
    src.add_argument("--named", choices=NAMES, help="registered example base")
    src.add_argument("--poly", help="integer coefficients, low degree first, e.g. 1,-3,1")
    src.add_argument("--bracket", help="interval lo,hi isolating the root (default: largest real root)")
    src.add_argument("--seq", help="eventually periodic digits, e.g. '2 (1 0)^'")
    src.add_argument("--morphism", help="morphic digits, e.g. '3>30032;2>2;0>00@3'")
    opt = common.add_argument_group("budgets and output")
    opt.add_argument("--window", help="lo,hi as expressions in b, e.g. '-b^3,b^2'")
    opt.add_argument("-n", type=int, default=12, help="orbit rows (default 12)")
    opt.add_argument("--depth", type=int, default=3,
                     help="window [-b^d, b^d] when --window is absent; witness count for delone (default 3)")
    opt.add_argument("--horizon", type=int, default=2000, help="shifts checked by solve (default 2000)")
    opt.add_argument("--letters", type=int, default=64, help="letter budget (default 64)")
    opt.add_argument("--orbit-bound", type=int, default=200, help="orbit bound for probes (default 200)")
    opt.add_argument("--precision", type=int, default=DEFAULT_PRECISION_CAP,
                     help=f"precision cap in bits for streamed bases (default {DEFAULT_PRECISION_CAP})")
    opt.add_argument("--places", type=int, default=6, help="decimal places (default 6)")
    opt.add_argument("--format", choices=("text", "csv", "json", "svg"), default="text")
    opt.add_argument("--no-header", action="store_true", help="omit the reproducibility header")

    parser = argparse.ArgumentParser(prog="negbeta", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"negbeta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=fn.__doc__.strip().splitlines()[0])
    return parser


_VALUE_FLAGS = ("--poly", "--bracket", "--window")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Let '--poly -2,1' through: argparse would read '-2,1' as an option."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    cfg = RunConfig(command=args.command, named=args.named, poly=args.poly, bracket=args.bracket,
                    seq=args.seq, morphism=args.morphism, window=args.window, n=args.n,
                    depth=args.depth, horizon=args.horizon, letters=args.letters,
                    orbit_bound=args.orbit_bound, precision=args.precision, places=args.places,
                    format=args.format)
    if not args.no_header and cfg.format != "svg":
        out.write(cfg.header() + "\n")
    try:
        return COMMANDS[cfg.command](cfg, out)
    except UndecidableAtPrecision as exc:
        print(f"error: undecidable at precision: {exc}", file=sys.stderr)
        return EXIT_UNDECIDABLE
    except LetterBudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, *PRECONDITION_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
