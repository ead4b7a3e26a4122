"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 budget exceeded, 3 cross-check failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Sequence, TextIO

from . import __version__
from .errors import BudgetExceeded, ConsistencyError, InconsistentParameters
from .permutations import enumerate_stirling, eulerian_brute, eulerian_rec
from .polynomials import ROUTES, B_value, b_value, stirling_polys
from .poset import build_poset, omega, poset_json
from .shapes import Shape, parse_shape, shape_list, sp_count
from .special import (
    S_odd,
    S_t,
    count_leader_partitions,
    count_leader_permutations,
    count_tuple_systems,
    s_odd,
    s_t,
    verify_basis_identity,
)
from .systems import (
    count_partition_systems,
    count_permutation_systems,
    format_partition_system,
    format_permutation_system,
    iter_partition_systems,
    iter_permutation_systems,
    kstirling_S,
    kstirling_s,
)
from .verify import FAMILIES, Limits, verify_battery

DEFAULT_CAP = 10**6

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


def _num(v: int | Fraction) -> str:
    """Decimal string; rationals as p/q."""
    if isinstance(v, Fraction) and v.denominator != 1:
        return f"{v.numerator}/{v.denominator}"
    return str(int(v))


def _shape_arg(text: str) -> Shape:
    try:
        return parse_shape(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _word(w: Sequence[int]) -> str:
    return "".join(map(str, w)) if all(v < 10 for v in w) else " ".join(map(str, w))


class Output:
    """A result document plus its CSV/plain renderings."""

    def __init__(self, doc: dict, rows: list[list[str]] | None = None, text: str | None = None, prefer: str | None = None):
        self.doc = doc
        self.rows = rows
        self.text = text
        self.prefer = prefer  # format used when --format is not given

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.doc, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerows(self.rows if self.rows is not None else _flat_rows(self.doc))
            return buf.getvalue()
        if self.text is not None:
            return self.text if self.text.endswith("\n") or not self.text else self.text + "\n"
        return "".join(f"{k}: {_plain(v)}\n" for k, v in self.doc.items())


def _plain(v: Any) -> str:
    if isinstance(v, list):
        return " ".join(_plain(x) for x in v)
    if isinstance(v, dict):
        return ", ".join(f"{k}={_plain(x)}" for k, x in v.items())
    return str(v)


def _flat_rows(doc: dict) -> list[list[str]]:
    return [["key", "value"]] + [[k, _plain(v)] for k, v in doc.items()]


# subcommands


def cmd_enumerate(args) -> Output:
    shape = args.shape
    total = sp_count(shape)
    emit = total if args.limit is None else min(total, args.limit)
    if emit > args.cap:
        raise BudgetExceeded(f"enumeration budget exceeded: {emit} words > cap {args.cap}")
    words = []
    for i, w in enumerate(enumerate_stirling(shape, cap=max(args.cap, total))):
        if i >= emit:
            break
        words.append(w)
    doc = {
        "command": "enumerate",
        "shape": str(shape),
        "count": _num(total),
        "emitted": _num(len(words)),
        "words": [_word(w) for w in words],
    }
    rows = [[str(v) for v in w] for w in words]
    return Output(doc, rows, "\n".join(_word(w) for w in words))


def cmd_eulerian(args) -> Output:
    shape = args.shape
    rec = eulerian_rec(shape)
    table = rec
    if args.brute:
        table = eulerian_brute(shape, args.cap)
        if table != rec:
            raise ConsistencyError(f"brute-force table {table.counts} != recurrence {rec.counts} for {shape}")
    counts = [table[0]] if shape.n == 0 else list(table.counts)
    start = 0 if shape.n == 0 else 1
    doc = {
        "command": "eulerian",
        "shape": str(shape),
        "method": "brute" if args.brute else "recurrence",
        "first_index": start,
        "table": [_num(c) for c in counts],
        "total": _num(table.total()),
    }
    rows = [["i", "A"]] + [[str(i), _num(c)] for i, c in enumerate(counts, start=start)]
    return Output(doc, rows, " ".join(_num(c) for c in counts))


def cmd_poly(args) -> Output:
    shape = args.shape
    if args.route == "conv" and (shape.n == 0 or shape.last < 2):
        raise UsageError("route 'conv' needs a shape whose last component exceeds 1")
    pair = stirling_polys(shape, args.route)  # checks the structural claims
    doc: dict[str, Any] = {"command": "poly", "shape": str(shape), "route": args.route, "K": shape.K}
    rows: list[list[str]] = []
    lines: list[str] = []
    if args.eval is not None:
        m = args.eval
        B, b = B_value(shape, m, args.route), b_value(shape, m, args.route)
        if B != pair.B(m) or b != pair.b(m):
            raise ConsistencyError(f"route {args.route} value at m={m} disagrees with the polynomial")
        doc["m"] = _num(m)
        doc["B"] = _num(B)
        doc["b"] = _num(b)
        rows += [["m", "B", "b"], [_num(m), _num(B), _num(b)]]
        lines.append(f"B({m}) = {B}\nb({m}) = {b}")
    if args.coeffs or args.eval is None:
        cB = [_num(pair.B.coeffs[i]) if i < len(pair.B.coeffs) else "0" for i in range(shape.K + 1)]
        cb = [_num(pair.b.coeffs[i]) if i < len(pair.b.coeffs) else "0" for i in range(shape.K + 1)]
        doc["coefficients"] = {"B": cB, "b": cb}
        rows += [["power", "B", "b"]] + [[str(i), x, y] for i, (x, y) in enumerate(zip(cB, cb))]
        lines.append(f"B(x) = {pair.B}\nb(x) = {pair.b}")
    return Output(doc, rows, "\n".join(lines))


def cmd_poset(args) -> Output:
    kp = build_poset(args.shape)
    doc = {"command": "poset", **poset_json(kp)}
    doc["shape"] = str(args.shape)
    rows = [["lower", "upper"]] + [[str(x), str(y)] for x, y in sorted(kp.base.covers)]
    if args.dot:
        return Output(doc, rows, kp.base.to_dot(), prefer="plain")
    text = "\n".join(f"{x} < {y}" for x, y in sorted(kp.base.covers))
    return Output(doc, rows, text)


def cmd_order_poly(args) -> Output:
    shape, m = args.shape, args.m
    if m < 0:
        raise UsageError("--m must be nonnegative")
    kp = build_poset(shape)
    value = omega(kp.base, m, strict=args.strict, cap=args.cap)
    expected = b_value(shape, m) if args.strict else B_value(shape, m)
    if value != expected:
        raise ConsistencyError(f"order polynomial {value} != Stirling polynomial {expected} at m={m}")
    name = "omega_strict" if args.strict else "omega"
    doc = {"command": "order-poly", "shape": str(shape), "m": _num(m), "strict": args.strict, name: _num(value)}
    return Output(doc, [["m", name], [_num(m), _num(value)]], _num(value))


def cmd_systems(args) -> Output:
    shape, n, m = args.shape, args.n, args.m
    if args.kind == "partition":
        counter, it, fmt, expected = (
            count_partition_systems, iter_partition_systems, format_partition_system, kstirling_S,
        )
    else:
        counter, it, fmt, expected = (
            count_permutation_systems, iter_permutation_systems, format_permutation_system, kstirling_s,
        )
    try:
        if args.list:
            systems = []
            for sys_ in it(shape, n, m, args.cap):
                systems.append(fmt(sys_))
                if len(systems) > args.cap:
                    raise BudgetExceeded(f"enumeration budget exceeded: more than {args.cap} systems")
            count = len(systems)
        else:
            count = counter(shape, n, m, args.cap)
    except InconsistentParameters as exc:
        raise UsageError(str(exc)) from None
    poly = expected(shape, n, m)
    if count != poly:
        raise ConsistencyError(f"{args.kind} systems counted {count}, polynomial gives {poly}")
    doc: dict[str, Any] = {
        "command": "systems",
        "shape": str(shape),
        "kind": args.kind,
        "n": _num(n),
        "m": _num(m),
        "count": _num(count),
        "polynomial": _num(poly),
    }
    text = _num(count)
    if args.list:
        doc["systems"] = systems
        text = "\n\n".join(systems) + f"\n\ncount: {count}"
    rows = [["kind", "n", "m", "count"], [args.kind, _num(n), _num(m), _num(count)]]
    return Output(doc, rows, text)


def cmd_odd(args) -> Output:
    n, k = args.n, args.k
    S, s = S_odd(n, k), s_odd(n, k)
    doc: dict[str, Any] = {"command": "odd", "n": _num(n), "k": _num(k), "S_odd": _num(S), "s_odd": _num(s)}
    if args.brute:
        bS, bs = count_leader_partitions(n, k, args.cap), count_leader_permutations(n, k, args.cap)
        if (bS, bs) != (S, s):
            raise ConsistencyError(f"leader counts ({bS}, {bs}) != recurrences ({S}, {s})")
        doc["leader_partitions"] = _num(bS)
        doc["leader_permutations"] = _num(bs)
    rows = [["n", "k", "S_odd", "s_odd"], [_num(n), _num(k), _num(S), _num(s)]]
    return Output(doc, rows, f"S_odd({n},{k}) = {S}\ns_odd({n},{k}) = {s}")


def cmd_central(args) -> Output:
    t, n, k = args.t, args.n, args.k
    if t < 1:
        raise UsageError("--t must be at least 1")
    S, s = S_t(t, n, k), s_t(t, n, k)
    doc: dict[str, Any] = {"command": "central", "t": t, "n": _num(n), "k": _num(k), "S_t": _num(S), "s_t": _num(s)}
    if args.brute:
        bS = count_tuple_systems(t, n, k, "partition", args.cap)
        bs = count_tuple_systems(t, n, k, "permutation", args.cap)
        if (bS, bs) != (S, s):
            raise ConsistencyError(f"tuple counts ({bS}, {bs}) != recurrences ({S}, {s})")
        doc["tuple_partitions"] = _num(bS)
        doc["tuple_permutations"] = _num(bs)
    if args.basis:
        if not verify_basis_identity(t, n):
            raise ConsistencyError(f"basis identity fails for t={t}, n={n}")
        doc["basis_identity"] = True
    rows = [["t", "n", "k", "S_t", "s_t"], [str(t), _num(n), _num(k), _num(S), _num(s)]]
    return Output(doc, rows, f"S_{t}({n},{k}) = {S}\ns_{t}({n},{k}) = {s}")


def cmd_verify(args) -> Output:
    only = None
    if args.only:
        only = [name for chunk in args.only for name in chunk.split(",") if name]
        unknown = sorted(set(only) - set(FAMILIES))
        if unknown:
            raise UsageError(f"unknown identity families: {', '.join(unknown)}")
    base = Limits()
    max_K = base.max_K if args.max_K is None else args.max_K
    max_m = base.max_m if args.max_m is None else args.max_m
    limits = Limits(
        max_K=max_K,
        max_m=max_m,
        poset_K=min(base.poset_K, max_K),
        poset_m=min(base.poset_m, max_m),
        systems_K=min(base.systems_K, max_K),
        systems_m=min(base.systems_m, max_m),
        eulerian_cap=min(base.eulerian_cap, args.cap),
        seed_shapes=args.seed_shapes,
    )
    results = verify_battery(limits, only)
    families = {r.name: r.as_dict(args.timing) for r in results}
    passed = all(r.passed for r in results)
    doc = {
        "command": "verify",
        "version": __version__,
        "limits": {"max_K": max_K, "max_m": max_m, "seed_shapes": args.seed_shapes is not None},
        "families": families,
        "passed": passed,
    }
    rows = [["family", "passed", "checks", "shapes", "counterexample"]]
    lines = []
    for r in results:
        cx = "" if r.counterexample is None else "; ".join(f"{k}={v}" for k, v in r.counterexample.items())
        rows.append([r.name, "pass" if r.passed else "FAIL", str(r.checked), str(len(r.shapes)), cx])
        line = f"{r.name}: {'pass' if r.passed else 'FAIL'} ({r.checked} checks, {len(r.shapes)} shapes)"
        if cx:
            line += f" counterexample: {cx}"
        if args.timing:
            line += f" [{r.seconds:.2f}s]"
        lines.append(line)
    return Output(doc, rows, "\n".join(lines))


# parser


def _read_seed_shapes(path: str) -> tuple[Shape, ...]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.split("#", 1)[0].strip() for ln in fh]
    except OSError as exc:
        raise UsageError(f"cannot read seed shapes: {exc}") from None
    try:
        return tuple(shape_list(parse_shape(ln) for ln in lines if ln))
    except ValueError as exc:
        raise UsageError(f"bad seed shape file {path}: {exc}") from None


def _globals_parser(suppress: bool) -> argparse.ArgumentParser:
    # shared by the top level and every subcommand, so flags work in either position
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = _Parser(add_help=False)
    p.add_argument("--cap", type=int, default=default(DEFAULT_CAP), help="enumeration budget (default 10^6)")
    p.add_argument("--format", choices=("json", "csv", "plain"), default=default(None), help="output format")
    p.add_argument("--seed-shapes", metavar="FILE", default=default(None), help="newline-separated shapes")
    p.add_argument("--timing", action="store_true", default=default(False), help="include wall time")
    return p


COMMANDS: dict[str, tuple[Callable[[Any], Output], str]] = {
    "enumerate": (cmd_enumerate, "plain"),
    "eulerian": (cmd_eulerian, "json"),
    "poly": (cmd_poly, "json"),
    "poset": (cmd_poset, "json"),
    "order-poly": (cmd_order_poly, "json"),
    "systems": (cmd_systems, "json"),
    "odd": (cmd_odd, "json"),
    "central": (cmd_central, "json"),
    "verify": (cmd_verify, "json"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="stirpoly",
        description="Stirling permutations, Stirling polynomials and k-Stirling numbers.",
        parents=[_globals_parser(False)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    shared = [_globals_parser(True)]

    p = sub.add_parser("enumerate", parents=shared, help="list Stirling permutations")
    p.add_argument("--shape", type=_shape_arg, required=True)
    p.add_argument("--limit", type=int)

    p = sub.add_parser("eulerian", parents=shared, help="descent table A_{k,i}")
    p.add_argument("--shape", type=_shape_arg, required=True)
    p.add_argument("--brute", action="store_true", help="count by enumeration and cross-check")

    p = sub.add_parser("poly", parents=shared, help="Stirling polynomials B_k, b_k")
    p.add_argument("--shape", type=_shape_arg, required=True)
    p.add_argument("--eval", type=int, metavar="M")
    p.add_argument("--coeffs", action="store_true")
    p.add_argument("--route", choices=ROUTES, default="rec")

    p = sub.add_parser("poset", parents=shared, help="cover relation of the k-Stirling poset")
    p.add_argument("--shape", type=_shape_arg, required=True)
    p.add_argument("--dot", action="store_true")

    p = sub.add_parser("order-poly", parents=shared, help="order polynomial of the k-Stirling poset")
    p.add_argument("--shape", type=_shape_arg, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("systems", parents=shared, help="k-partition / k-permutation systems")
    p.add_argument("--shape", type=_shape_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kind", choices=("partition", "permutation"), default="partition")
    p.add_argument("--list", action="store_true")

    p = sub.add_parser("odd", parents=shared, help="odd-type Stirling numbers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="cross-check with leader counts")

    p = sub.add_parser("central", parents=shared, help="generalized central factorial numbers")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="cross-check with t-tuple counts")
    p.add_argument("--basis", action="store_true", help="check the polynomial basis identities")

    p = sub.add_parser("verify", parents=shared, help="run the identity battery")
    p.add_argument("--max-K", dest="max_K", type=int)
    p.add_argument("--max-m", dest="max_m", type=int)
    p.add_argument("--only", action="append", metavar="FAMILY", help=f"one of {', '.join(FAMILIES)}")
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help / --version
            return int(exc.code or 0)
        if args.cap < 0:
            raise UsageError("--cap must be nonnegative")
        if args.seed_shapes is not None:
            args.seed_shapes = _read_seed_shapes(args.seed_shapes)
        handler, default_fmt = COMMANDS[args.command]
        start = time.perf_counter()
        result = handler(args)
        if args.timing:
            result.doc["seconds"] = f"{time.perf_counter() - start:.3f}"
        out.write(result.render(args.format or result.prefer or default_fmt))
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        err.write(f"budget: {exc}\n")
        return EXIT_BUDGET
    except ConsistencyError as exc:
        err.write(f"cross-check failed: {exc}\n")
        return EXIT_MISMATCH
    except (ValueError, InconsistentParameters) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    if args.command == "verify" and not result.doc["passed"]:
        return EXIT_MISMATCH
    return EXIT_OK


def main() -> None:
    sys.exit(run())
