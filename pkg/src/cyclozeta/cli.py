"""Batch command-line front door.

Every subcommand is a thin adapter over the library: it parses flags, runs
the corresponding check or calculator, prints a machine-readable TSV report
to stdout (diagnostics go to stderr) and exits 0 exactly when no row failed.
Parse or precondition errors exit 2.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from dataclasses import dataclass

from . import serialize
from .algebra import harmonic, parse_element_combo, shuffle
from .dmr import dmr_check, dmrd_check, eds_dmr_equality_check, phi_from_Z
from .duality import duality_suite
from .errors import CycloZetaError
from .groups import divisors_of_order, parse_group, power_structure
from .numeval import (DEFAULT_CUTOFF, DEFAULT_TOLERANCE, NumericZMap,
                      PolylogQuery, numeric_relation_suite, polylog_numeric)
from .regularization import bar_reg_T
from .relations import fdtd1_grid, fdtd1_identity_check, regdist_full_check, zhao_case_table
from .rings import ring_from_name
from .words import format_y_word


def _meta_row(**fields) -> str:
    return "#meta\t" + "\t".join(f"{k}={v}" for k, v in fields.items() if v is not None)


@dataclass(frozen=True)
class CommandConfig:
    """A parsed invocation: the subcommand plus its option values.

    The textual form is one ``key = value`` line per option (subcommand
    first), and parsing it back reproduces the config; the same format is
    accepted by ``--config`` files, whose values sit between hard-coded
    defaults and explicit flags.
    """

    subcommand: str
    options: tuple

    @staticmethod
    def from_args(args) -> "CommandConfig":
        skip = {"fn", "command", "config"}
        options = tuple(sorted((k, v) for k, v in vars(args).items()
                               if k not in skip and v is not None))
        return CommandConfig(args.command, options)

    def to_text(self) -> str:
        lines = [f"subcommand = {self.subcommand}"]
        lines.extend(f"{k} = {v}" for k, v in self.options)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "CommandConfig":
        subcommand = ""
        options = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not key or not value:
                raise CycloZetaError(f"bad config line {line!r}")
            if key == "subcommand":
                subcommand = value
            else:
                options.append((key, _coerce_config_value(value)))
        return CommandConfig(subcommand, tuple(sorted(options)))


def _coerce_config_value(value: str):
    for converter in (int, float):
        try:
            return converter(value)
        except ValueError:
            continue
    return value


def load_config_defaults(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        config = CommandConfig.from_text(fh.read())
    return {k.replace("-", "_"): v for k, v in config.options}


class Report:
    """Collects (check, params, status, residual, detail) rows."""

    columns = ("check", "params", "status", "residual", "detail")

    def __init__(self, meta: str):
        self.meta = meta
        self.rows: list[tuple] = []

    def add(self, check: str, params: str, passed: bool, residual, detail: str = ""):
        res_text = "" if residual is None else f"{residual:.6e}"
        self.rows.append((check, params, "PASS" if passed else "FAIL", res_text, detail))

    def emit(self, stream=None) -> int:
        stream = stream or sys.stdout
        print(self.meta, file=stream)
        print("\t".join(self.columns), file=stream)
        for row in self.rows:
            print("\t".join(row), file=stream)
        return 0 if all(r[2] == "PASS" for r in self.rows) else 1


def _element_hash(elem) -> str:
    return hashlib.sha256(str(elem).encode()).hexdigest()[:12]


# -- subcommand handlers -----------------------------------------------------


def cmd_product(args) -> int:
    group = parse_group(args.group)
    ring = ring_from_name(args.ring)
    if args.shuffle:
        kind = "y" if args.alphabet == "Y" else "x"
        a = parse_element_combo(args.shuffle[0], ring, kind, group)
        b = parse_element_combo(args.shuffle[1], ring, kind, group)
        result = shuffle(a, b)
    elif args.harmonic:
        a = parse_element_combo(args.harmonic[0], ring, "y", group)
        b = parse_element_combo(args.harmonic[1], ring, "y", group)
        result = harmonic(a, b)
    else:
        kind = "y" if args.alphabet == "Y" else "x"
        a = parse_element_combo(args.concat[0], ring, kind, group)
        b = parse_element_combo(args.concat[1], ring, kind, group)
        result = a.concat(b)
    print(str(result))
    if args.out:
        serialize.write_text(args.out, serialize.format_element(result))
    return 0


def cmd_reg(args) -> int:
    group = parse_group(args.group)
    ring = ring_from_name(args.ring)
    elem = parse_element_combo(args.element, ring, "x", group)
    tp = bar_reg_T(elem)
    text = serialize.format_tpoly(tp, ring)
    print(text)
    if args.out:
        serialize.write_text(args.out, text + "\n")
    return 0


def cmd_fdt_verify(args) -> int:
    group = parse_group(args.group)
    report = Report(_meta_row(group=args.group, degree=2, ring="rational", tol=0))
    if args.d is None:
        results = fdtd1_grid(group)
    else:
        ps = power_structure(group, args.d)
        results = [fdtd1_identity_check(group, args.d, h) for h in ps.subgroup]
    for r in results:
        detail = "0" if r.passed else _element_hash(r.difference)
        report.add("fdt1-decomposition", f"d={r.d} h={r.h} branch={r.branch}",
                   r.passed, 0.0 if r.passed else r.difference.max_abs(), detail)
    return report.emit()


def cmd_duality_test(args) -> int:
    group = parse_group(args.group)
    result = duality_suite(group, args.degree, args.maps, args.seed)
    report = Report(_meta_row(group=args.group, degree=args.degree,
                              ring="rational", tol=0))
    bad = [r for r in result.rows if not (r.consistent and r.expected)]
    report.add("duality", f"maps={args.maps} weight<={args.degree}",
               result.passed, float(len(bad)),
               f"multiplicative_iff_grouplike on {len(result.rows)} maps")
    return report.emit()


def cmd_dmr_check(args) -> int:
    Z = NumericZMap(args.N, args.cutoff, args.tol)
    phi = phi_from_Z(Z, args.degree)
    result = dmr_check(phi)
    report = Report(_meta_row(group=f"Z{args.N}", degree=args.degree,
                              ring="complex", tol=args.tol))
    report.add("dmr-shuffle-grouplike", f"N={args.N}", result.shuffle_report.passed,
               result.shuffle_report.max_residual)
    report.add("dmr-harmonic-grouplike", f"N={args.N}", result.harmonic_report.passed,
               result.harmonic_report.max_residual)
    report.add("dmr-x0-x1-vanish", f"N={args.N}", result.x0_ok and result.x1_ok, None)
    if args.save_phi:
        serialize.write_text(args.save_phi, serialize.format_series(phi))
    return report.emit()


def cmd_dmrd_check(args) -> int:
    Z = NumericZMap(args.N, args.cutoff, args.tol)
    phi = phi_from_Z(Z, args.degree)
    group = Z.group
    divisors = [args.d] if args.d else [d for d in divisors_of_order(group)]
    report = Report(_meta_row(group=f"Z{args.N}", degree=args.degree,
                              ring="complex", tol=args.tol))
    for d in divisors:
        result = dmrd_check(phi, power_structure(group, d))
        report.add("dmrd", f"N={args.N} d={d}", result.passed, result.max_residual)
    return report.emit()


def cmd_eds_dmr_check(args) -> int:
    Z = NumericZMap(args.N, args.cutoff, args.tol)
    result = eds_dmr_equality_check(Z, args.degree)
    report = Report(_meta_row(group=f"Z{args.N}", degree=args.degree,
                              ring="complex", tol=args.tol))
    worst = format_y_word(result.worst_word) if result.worst_word else ""
    report.add("eds-dmr-equality", f"N={args.N} degree={args.degree}",
               result.passed, result.max_residual, f"worst={worst}")
    return report.emit()


def cmd_zhao_verify(args) -> int:
    Z = NumericZMap(args.N, args.cutoff, args.tol)
    hypotheses, cells = zhao_case_table(Z, Z.group, args.d, args.spot_degree)
    report = Report(_meta_row(group=f"Z{args.N}", degree=2, ring="complex",
                              tol=args.tol))
    report.add("zhao-hypothesis-eds", f"spot_degree={hypotheses.eds_spot_degree}",
               hypotheses.eds_ok, None)
    report.add("zhao-hypothesis-weight1", f"d={args.d}", hypotheses.weight1_ok,
               hypotheses.weight1_residual)
    report.add("zhao-hypothesis-depth2", f"d={args.d}", hypotheses.depth2_ok,
               hypotheses.depth2_residual)
    for cell in cells:
        report.add("zhao-cell", f"d={args.d} cell={cell.cell}", cell.passed,
                   cell.residual)
    return report.emit()


def cmd_regdist(args) -> int:
    Z = NumericZMap(args.N, args.cutoff, args.tol)
    result = regdist_full_check(Z, Z.group, args.d, args.max_len)
    report = Report(_meta_row(group=f"Z{args.N}", degree=args.max_len,
                              ring="complex", tol=args.tol))
    report.add("regdist-T-level", f"d={args.d}", result.t_level_passed,
               result.t_level_residual)
    report.add("regdist-ev0-level", f"d={args.d}", result.ev0_level_passed,
               result.ev0_level_residual)
    report.add("regdist-generators", f"d={args.d}", result.generator_passed,
               result.generator_residual)
    return report.emit()


def cmd_polylog(args) -> int:
    ks = tuple(int(p) for p in args.k.split(","))
    zs = tuple(int(p) for p in args.z.split(","))
    query = PolylogQuery(ks, zs, args.N, args.cutoff, args.tol)
    result = polylog_numeric(query)
    print(_meta_row(group=f"Z{args.N}", ring="complex", tol=args.tol))
    print("query\tvalue\tresidual\tbound")
    print(f"Li{ks}@{zs}\t{result.value!r}\t\t{result.tail_bound:.3e}")
    if result.low_precision:
        print("warning: tail bound exceeds tolerance", file=sys.stderr)
    return 0


def cmd_relation_suite(args) -> int:
    result = numeric_relation_suite(args.N, args.weight, args.tol, args.cutoff)
    print(_meta_row(group=f"Z{args.N}", degree=args.weight, ring="complex",
                    tol=args.tol))
    print("query\tvalue\tresidual\tbound")
    failed = False
    for row in result.rows:
        status_fail = row.residual > args.tol
        failed = failed or status_fail
        print(f"{row.kind}:{row.label}\t{row.value!r}\t{row.residual:.6e}"
              f"\t{row.bound:.3e}")
    print(f"# max_residual={result.max_residual:.6e} passed={result.passed}",
          file=sys.stderr)
    return 1 if failed else 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclozeta",
        description="verification suites and calculators for cyclotomic "
                    "multiple zeta value relations")
    sub = parser.add_subparsers(dest="command", required=True)
    parser.cz_subparsers = sub

    p = sub.add_parser("product", help="shuffle/harmonic/concatenation products")
    p.add_argument("--group", required=True)
    p.add_argument("--ring", default="rational", choices=["rational", "complex"])
    p.add_argument("--alphabet", default="X", choices=["X", "Y"])
    mx = p.add_mutually_exclusive_group(required=True)
    mx.add_argument("--shuffle", nargs=2, metavar=("A", "B"))
    mx.add_argument("--harmonic", nargs=2, metavar=("A", "B"))
    mx.add_argument("--concat", nargs=2, metavar=("A", "B"))
    p.add_argument("--out")
    p.set_defaults(fn=cmd_product)

    p = sub.add_parser("reg", help="shuffle regularization into T-polynomials")
    p.add_argument("--group", required=True)
    p.add_argument("--ring", default="rational", choices=["rational", "complex"])
    p.add_argument("element")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_reg)

    p = sub.add_parser("fdt-verify", help="exact depth-two distribution decomposition")
    p.add_argument("--group", required=True)
    p.add_argument("--d", type=int)
    p.set_defaults(fn=cmd_fdt_verify)

    p = sub.add_parser("duality-test",
                       help="multiplicative-iff-grouplike on random functionals")
    p.add_argument("--group", default="Z3")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--maps", type=int, default=200)
    p.add_argument("--seed", type=int, default=2024)
    p.set_defaults(fn=cmd_duality_test)

    def numeric_common(p, degree_default=4):
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--degree", type=int, default=degree_default)
        p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
        p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)

    p = sub.add_parser("dmr-check", help="double shuffle membership of the numeric series")
    numeric_common(p)
    p.add_argument("--save-phi")
    p.set_defaults(fn=cmd_dmr_check)

    p = sub.add_parser("dmrd-check", help="distribution condition on the numeric series")
    numeric_common(p, degree_default=3)
    p.add_argument("--d", type=int)
    p.set_defaults(fn=cmd_dmrd_check)

    p = sub.add_parser("eds-dmr-check",
                       help="coefficientwise equality of the two corrected series")
    numeric_common(p)
    p.set_defaults(fn=cmd_eds_dmr_check)

    p = sub.add_parser("zhao-verify", help="weight-two regularized distribution cells")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--spot-degree", type=int, default=2)
    p.set_defaults(fn=cmd_zhao_verify)

    p = sub.add_parser("regdist", help="regularized distribution over a word range")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(fn=cmd_regdist)

    p = sub.add_parser("polylog", help="one nested-sum value")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(fn=cmd_polylog)

    p = sub.add_parser("relation-suite",
                       help="finite double shuffle and distribution residuals")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--weight", type=int, default=2)
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(fn=cmd_relation_suite)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if "--config" in argv:
        at = argv.index("--config")
        try:
            path = argv[at + 1]
        except IndexError:
            print("error: --config needs a path", file=sys.stderr)
            return 2
        del argv[at:at + 2]
        try:
            defaults = load_config_defaults(path)
        except (OSError, CycloZetaError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        # config values become defaults on every subcommand that knows the
        # key, so explicit flags still win
        for subparser in parser.cz_subparsers.choices.values():
            known = {a.dest for a in subparser._actions}
            subparser.set_defaults(
                **{k: v for k, v in defaults.items() if k in known})
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CycloZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
