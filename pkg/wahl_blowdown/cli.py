import argparse
import logging
import sys
from pathlib import Path

from . import constructions
from .configuration import find_configuration, verify_configuration
from .cutpaste import freedman_classify, rational_blowdown
from .errors import InputError, WahlBlowdownError
from .formats import (
    census_to_json,
    dumps,
    read_census,
    read_configuration,
    read_graph,
    read_plan,
    read_seifert,
)
from .lattice import BlowupLattice, signature_stats
from .manifest import CENSUSES, GRAPHS, default_manifest, read_manifest
from .monodromy import DEFAULT_MAX_ASSIGNMENTS, MonodromyWord, complete_certificate, euler_count, evaluate, verify_certificate, verify_relation
from .plumbing import boundary_h1, intersection_form, plumbed_invariants, wahl_tree
from .seifert import h1_order_from_seifert, plumbing_to_seifert, seifert_to_plumbing
from .swcalc import SIGN_NOTE, SWContext, class_condition_report, formal_dimension, small_perturbation_sw, wall_cross

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class Output:
    """Collects a report and prints it as json or as text lines."""

    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, data: dict, lines: list[str]):
        if self.fmt == "json":
            print(dumps(data))
        else:
            for line in lines:
                print(line)


def _graph(text: str):
    return GRAPHS[text] if text in GRAPHS else read_graph(Path(text))


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise InputError(f"expected comma separated integers, got {text!r}") from None


def cmd_info(args, out: Output) -> int:
    g = _graph(args.graph)
    Q = intersection_form(g)
    stats = signature_stats(Q)
    boundary = boundary_h1(g)
    definite = stats.b_plus == 0 and stats.b_zero == 0
    data = {
        "form": Q.to_list(),
        "signature": list(stats.as_tuple()),
        "negative_definite": definite,
        "h1_order": boundary.h1_order,
        "h1_divisors": list(boundary.h1_divisors),
    }
    lines = [f"form: {row}" for row in Q.to_list()]
    lines.append(f"b+ = {stats.b_plus}, b- = {stats.b_minus}, b0 = {stats.b_zero}, {stats.parity}")
    lines.append(f"negative definite: {definite}")
    if g.is_tree():
        piece = plumbed_invariants(g)
        data.update(e=piece.e, sigma=piece.sigma)
        lines.append(f"e = {piece.e}, sigma = {piece.sigma}")
    lines.append(f"boundary H1: order {boundary.h1_order}, divisors {list(boundary.h1_divisors)}")
    out.emit(data, lines)
    return EXIT_OK


def cmd_boundary(args, out: Output) -> int:
    boundary = boundary_h1(_graph(args.graph))
    out.emit(
        {"h1_order": boundary.h1_order, "h1_divisors": list(boundary.h1_divisors)},
        [f"order {boundary.h1_order}", f"divisors {list(boundary.h1_divisors)}"],
    )
    return EXIT_OK


def cmd_wahl(args, out: Output) -> int:
    g = wahl_tree(args.r)
    boundary = boundary_h1(g)
    data = g.to_json() | {"h1_order": boundary.h1_order}
    lines = [f"weights {g.weights}", f"edges {g.edges}", f"boundary H1 order {boundary.h1_order}"]
    out.emit(data, lines)
    return EXIT_OK


def cmd_blowdown(args, out: Output) -> int:
    plan = constructions.PLANS[args.plan][0] if args.plan in constructions.PLANS else read_plan(Path(args.plan))
    result = rational_blowdown(plan)
    name = freedman_classify(result) if result.simply_connected else "unrecognized"
    data = {"plan": plan.to_json(), "result": result.to_json(), "classification": name}
    lines = [name, f"e = {result.e}, sigma = {result.sigma}", "assumptions:"]
    lines += [f"  - {note}" for note in result.notes]
    out.emit(data, lines)
    return EXIT_OK


def cmd_swdim(args, out: Output) -> int:
    d = formal_dimension(args.K_sq, args.sigma, args.e)
    out.emit({"d": d}, [f"d = {d}"])
    return EXIT_OK


def cmd_wallcross(args, out: Output) -> int:
    plus = wall_cross(args.minus, args.d)
    out.emit({"minus": args.minus, "plus": plus, "d": args.d}, [f"plus = {plus}"])
    return EXIT_OK


def cmd_swreport(args, out: Output) -> int:
    if args.config is not None:
        cfg = read_configuration(Path(args.config))
        if args.a is None:
            raise InputError("--a is required with --config")
        a = cfg.lattice.class_of(_int_list(args.a))
        K = (
            cfg.lattice.class_of(_int_list(args.K))
            if args.K is not None
            else constructions.anticanonical(cfg.lattice)
        )
        report = class_condition_report(a, K, cfg.lattice.H(), cfg)
        data, lines = report.to_json(), report.lines()
    else:
        case = constructions.sw_cases()[args.case]
        report = class_condition_report(case.a, case.K, case.K.lattice.H(), case.configuration)
        ctx = SWContext(case.e, case.sigma, case.K, case.K.lattice.H())
        value = small_perturbation_sw(ctx, case.a, psc_chamber_vanishes=True)
        data = report.to_json() | {"d": ctx.dimension(), "sw": value, "note": SIGN_NOTE}
        lines = report.lines() + [f"d: {ctx.dimension()}", f"SW in the a chamber: {value} ({SIGN_NOTE})"]
    out.emit(data, lines)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_config_verify(args, out: Output) -> int:
    report = verify_configuration(read_configuration(Path(args.config)))
    data = {
        "ok": report.ok,
        "violations": report.lines(),
        "edge_signs": [[i, j, s] for (i, j), s in sorted(report.edge_signs.items())],
    }
    out.emit(data, report.lines() or ["ok"])
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_config_search(args, out: Output) -> int:
    g = _graph(args.graph)
    ranks = _int_list(args.lattice)
    if len(ranks) != 2:
        raise InputError(f"--lattice needs two ranks, got {args.lattice!r}")
    lattice = BlowupLattice(*ranks)
    fixed = {}
    for item in args.fix or []:
        vertex, _, coefficients = item.partition(":")
        index = _int_list(vertex)
        if len(index) != 1:
            raise InputError(f"--fix needs vertex:coefficients, got {item!r}")
        fixed[index[0]] = lattice.class_of(_int_list(coefficients))
    found = find_configuration(g, lattice, fixed, bound=args.bound, max_nodes=args.max_nodes)
    if found is None:
        out.emit({"found": False}, ["no configuration"])
        return EXIT_FAILED
    out.emit({"found": True} | found.to_json(), [str(x) for x in found.classes])
    return EXIT_OK


def cmd_monodromy_eval(args, out: Output) -> int:
    m = evaluate(MonodromyWord.parse(args.word))
    lines = [str(row) for row in m.rows()] + (["identity"] if m.is_identity() else [])
    out.emit({"matrix": m.rows(), "identity": m.is_identity()}, lines)
    return EXIT_OK


def cmd_monodromy_verify(args, out: Output) -> int:
    holds = verify_relation(MonodromyWord.parse(args.lhs), MonodromyWord.parse(args.rhs))
    out.emit({"holds": holds}, [str(holds).lower()])
    return EXIT_OK if holds else EXIT_FAILED


def cmd_monodromy_census(args, out: Output) -> int:
    census = CENSUSES[args.census]() if args.census in CENSUSES else read_census(Path(args.census))
    if args.complete:
        completed = complete_certificate(census, args.max_length, args.max_nodes)
        if completed is None:
            out.emit({"completed": False}, ["no certificate found"])
            return EXIT_FAILED
        census = completed
    count = euler_count(census)
    ok = verify_certificate(census)
    data = census_to_json(census) | {"euler_count": count, "certificate": ok}
    lines = [f"euler count {count}", f"certificate {'verified' if ok else 'rejected'}"]
    lines += [f"  {fiber}" for fiber in census.fibers]
    out.emit(data, lines)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_seifert_to_plumbing(args, out: Output) -> int:
    g = seifert_to_plumbing(read_seifert(Path(args.seifert)))
    out.emit(g.to_json(), [f"weights {g.weights}", f"edges {g.edges}"])
    return EXIT_OK


def cmd_seifert_from_plumbing(args, out: Output) -> int:
    d = plumbing_to_seifert(_graph(args.graph))
    out.emit(d.to_json(), [str(d)])
    return EXIT_OK


def cmd_seifert_h1(args, out: Output) -> int:
    order = h1_order_from_seifert(read_seifert(Path(args.seifert)))
    out.emit({"h1_order": order}, [str(order)])
    return EXIT_OK


def cmd_repro(args, out: Output) -> int:
    manifest = read_manifest(Path(args.manifest)) if args.manifest else default_manifest()
    results = manifest.run()
    failed = [r for r in results if not r.passed]
    lines = [r.line() for r in results]
    lines.append(f"{len(results) - len(failed)} of {len(results)} checks passed")
    out.emit({"checks": [r.to_json() for r in results], "failed": len(failed)}, lines)
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wahl-blowdown",
        description="Exact checks for rational blow-downs along Wahl-type plumbings",
    )
    parser.add_argument("--format", choices=["text", "json"], default="text", help="Report format")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging (-vv for debug)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="Form, definiteness, e, sigma and boundary H1 of a plumbing")
    p.add_argument("graph", help="Graph file or one of P1, P2, P4")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("boundary", help="H1 of the boundary of a plumbing")
    p.add_argument("graph")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("wahl", help="The Wahl-type tree for an even r >= 2")
    p.add_argument("r", type=int)
    p.set_defaults(func=cmd_wahl)

    p = sub.add_parser("blowdown", help="Rational blow-down of a plan file or a named plan")
    p.add_argument("plan", help=f"Plan file or one of {', '.join(constructions.PLANS)}")
    p.set_defaults(func=cmd_blowdown)

    p = sub.add_parser("swdim", help="Formal dimension of the SW moduli space")
    p.add_argument("K_sq", type=int)
    p.add_argument("sigma", type=int)
    p.add_argument("e", type=int)
    p.set_defaults(func=cmd_swdim)

    p = sub.add_parser("wallcross", help="SW value after crossing one wall")
    p.add_argument("minus", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_wallcross)

    p = sub.add_parser("swreport", help="Class conditions for the wall-crossing argument")
    p.add_argument("case", nargs="?", default="one", choices=["one", "two"])
    p.add_argument("--config", help="Configuration file, replaces the named case")
    p.add_argument("--a", help="Coefficients of the class a")
    p.add_argument("--K", help="Coefficients of K (default 3H - E1 - ... - En)")
    p.set_defaults(func=cmd_swreport)

    config = sub.add_parser("config", help="Sphere configurations").add_subparsers(dest="action", required=True)
    p = config.add_parser("verify")
    p.add_argument("config")
    p.set_defaults(func=cmd_config_verify)
    p = config.add_parser("search")
    p.add_argument("graph")
    p.add_argument("--lattice", required=True, help="positive,negative rank, e.g. 1,13")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--max-nodes", type=int, default=2_000_000)
    p.add_argument("--fix", action="append", help="vertex:coefficients, may be repeated")
    p.set_defaults(func=cmd_config_search)

    monodromy = sub.add_parser("monodromy", help="SL(2,Z) words and fibration censuses").add_subparsers(
        dest="action", required=True
    )
    p = monodromy.add_parser("eval")
    p.add_argument("word")
    p.set_defaults(func=cmd_monodromy_eval)
    p = monodromy.add_parser("verify")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=cmd_monodromy_verify)
    p = monodromy.add_parser("census")
    p.add_argument("census", help=f"Census file or one of {', '.join(CENSUSES)}")
    p.add_argument("--complete", action="store_true", help="Search missing fishtail conjugators")
    p.add_argument("--max-length", type=int, default=2)
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_ASSIGNMENTS)
    p.set_defaults(func=cmd_monodromy_census)

    seifert = sub.add_parser("seifert", help="Seifert invariants").add_subparsers(dest="action", required=True)
    p = seifert.add_parser("to-plumbing")
    p.add_argument("seifert")
    p.set_defaults(func=cmd_seifert_to_plumbing)
    p = seifert.add_parser("from-plumbing")
    p.add_argument("graph")
    p.set_defaults(func=cmd_seifert_from_plumbing)
    p = seifert.add_parser("h1")
    p.add_argument("seifert")
    p.set_defaults(func=cmd_seifert_h1)

    p = sub.add_parser("repro", help="Run every bundled check")
    p.add_argument("--manifest", help="Manifest file to run instead of the bundled one")
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, Output(args.format))
    except WahlBlowdownError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
