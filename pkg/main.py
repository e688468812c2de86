"""Command line entry point for the construction schemes engine."""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from app.models.config import AppConfig
from app.models.errors import InvariantViolation, PreconditionViolation, SchemeError
from app.models.queries import CaptureQuery, RunConfig
from app.models.sets import parse_int_set
from app.models.types import PartitionSpec, TypeSpec
from app.services.capturing import CaptureService
from app.services.constructions import (
    ColoringService,
    EntangledService,
    FamilyService,
    IndependentService,
    LatticeService,
    OrderService,
    SuslinService,
)
from app.services.exporters import dumps_csv, dumps_json, hasse_dot, level_json, tree_dot
from app.services.forcing import AcceptanceService, ForcingSession, lift
from app.services.ordinal_metrics import INFINITY, MetricView
from app.services.scheme_engine import SchemeView
from app.services.type_core import builtin_type
from app.services.verification import ALL_SUITES, SUITES, VerificationService
from app.utils.correlation import generate_run_id, set_run_id
from app.utils.logging import get_logger, setup_logging

logger = get_logger(__name__)


def load_type(source: Optional[str], default: str) -> TypeSpec:
    """A builtin name or the path of a JSON type document."""
    source = source or default
    path = Path(source)
    if path.suffix == ".json" or path.is_file():
        try:
            document = json.loads(path.read_text())
        except OSError as e:
            raise ValueError(f"Cannot read type document {source}: {e}") from e
        return TypeSpec.from_json_document(document)
    return builtin_type(source)


def require_naturals(**values: Optional[int]) -> None:
    """Raise PreconditionViolation for any given value below zero."""
    negative = {name: value for name, value in values.items() if value is not None and value < 0}
    if negative:
        raise PreconditionViolation("ordinals and levels must be non-negative", **negative)


def parse_ordinal_list(text: Optional[str]) -> List[str]:
    """``"0:1,1:0,3"`` into ordinal strings accepted by the forcing lab."""
    if not text:
        return []
    return [part.strip() for part in text.split(",") if part.strip()]


def parse_modifications(text: Optional[str]) -> Dict[int, int]:
    """``"0:2,3:1"`` into {ξ: value}."""
    changes: Dict[int, int] = {}
    for part in parse_ordinal_list(text):
        xi, sep, value = part.partition(":")
        if not sep:
            raise ValueError(f"Modification {part!r} is not of the form xi:value")
        changes[int(xi)] = int(value)
    return changes


class Output:
    """Collects what a command prints on stdout."""

    def __init__(self, run: RunConfig):
        self.run = run
        self.text = ""

    def json(self, value: Any) -> None:
        self.text = dumps_json(value)

    def table(self, header: Sequence[str], rows: List[List[Any]]) -> None:
        if self.run.output_format == "csv":
            self.text = dumps_csv(header, rows)
        else:
            self.text = dumps_json([dict(zip(header, row)) for row in rows])

    def raw(self, text: str) -> None:
        self.text = text


# Commands


def cmd_scheme(args: argparse.Namespace, config: AppConfig, out: Output) -> int:
    spec = load_type(args.type, config.scheme.default_type)
    scheme = SchemeView(spec, config.scheme)
    if args.action == "build":
        if out.run.output_format == "dot":
            out.raw(hasse_dot(scheme, args.level, name=spec.name))
        else:
            out.json(level_json(scheme, args.level))
    elif args.action == "member":
        F = parse_int_set(args.set)
        if not F:
            raise PreconditionViolation("scheme member needs a nonempty --set", set=args.set)
        member = scheme.is_member(F)
        payload = {"set": F, "member": member}
        if member:
            payload["rank"] = scheme.rank_of(F)
        out.json(payload)
    elif args.action == "decompose":
        out.json(scheme.decompose(parse_int_set(args.set)))
    elif args.action == "list":
        window = args.window or scheme.m(args.level)
        out.json(
            {
                "rank": args.level,
                "window": window,
                "sets": list(scheme.elements_of_rank_within(args.level, window)),
            }
        )
    return 0


def cmd_metric(args: argparse.Namespace, config: AppConfig, out: Output) -> int:
    spec = load_type(args.type, config.scheme.default_type)
    metrics = MetricView(SchemeView(spec, config.scheme))
    a, b, k = args.a, args.b, args.k
    require_naturals(a=a, b=b, k=k)
    if b is None and args.query in ("rho", "delta", "osc"):
        raise ValueError(f"metric {args.query} needs --b")
    if args.query == "rho":
        out.json(metrics.rho(a, b))
    elif args.query == "delta":
        delta = metrics.delta(a, b)
        out.json("infinity" if delta is INFINITY else delta)
    elif args.query == "xi":
        out.json(metrics.xi(a, k))
    elif args.query == "closure":
        out.json(metrics.closure(a, k))
    elif args.query == "f":
        if b is not None:
            out.json(metrics.f_mod_finite_compare(a, b))
        else:
            out.json(metrics.f(a, k))
    elif args.query == "osc":
        count, witnesses = metrics.osc(a, b, k)
        out.json({"count": count, "witnesses": witnesses})
    return 0


def cmd_capture(args: argparse.Namespace, config: AppConfig, out: Output) -> int:
    spec = load_type(args.type, config.scheme.default_type)
    service = CaptureService(SchemeView(spec, config.scheme))
    if args.action == "scan":
        query = CaptureQuery(
            family=json.loads(args.family),
            n=args.n,
            window=args.window,
            k_min=args.k_min,
        )
        out.json(service.scan_captured(query))
    elif args.action == "tuple":
        C = parse_int_set(args.set)
        if not C:
            raise ValueError("capture tuple needs a nonempty --set")
        out.json({"set": C, "level": service.ordinal_tuple_captured(C)})
    return 0


def _construct_countryman(service: OrderService, args, out: Output) -> None:
    if args.beta is not None:
        out.json(
            {
                "alpha": args.alpha,
                "beta": args.beta,
                "less": service.countryman_less(args.alpha, args.beta),
                "chain": service.countryman_chain_index(args.alpha, args.beta),
            }
        )
    else:
        out.table(["alpha", "beta", "x", "y", "z"], service.chain_table(args.window))


def _construct_lattice(service: LatticeService, args, out: Output) -> None:
    family = service.lattice_level(args.depth)
    out.json(
        [{"index": list(x), "points": sorted(points)} for x, points in sorted(family.items())]
    )


def _construct_suslin_tree(service: SuslinService, args, out: Output) -> None:
    tree = service.level_tree(args.depth)
    if out.run.output_format == "dot":
        out.raw(tree_dot(tree, name="suslin"))
    else:
        out.json([{"node": node, "parent": tree.parent[node]} for node in tree.nodes])


# name -> (service, default type, handler)
CONSTRUCTIONS: Dict[str, Any] = {
    "gap": (
        FamilyService,
        "t2",
        lambda s, a, o: o.json(dict(zip("AB", s.gap_sets(a.alpha, a.depth)))),
    ),
    "luzin_jones": (FamilyService, "t2", lambda s, a, o: o.json(s.luzin_jones(a.alpha, a.depth))),
    "jones_separator": (
        FamilyService,
        "t2",
        lambda s, a, o: o.json(s.jones_separator(a.alpha, a.depth)),
    ),
    "coherent_family": (
        FamilyService,
        "t2",
        lambda s, a, o: o.table(
            ["level", "i", "j", "s", "value"], s.coherent_family(a.alpha, a.depth).to_rows()
        ),
    ),
    "z_set": (
        FamilyService,
        "tstar",
        lambda s, a, o: o.json(s.last_piece_levels(a.alpha, a.depth)),
    ),
    "countryman": (OrderService, "tstar", _construct_countryman),
    "aronszajn": (
        OrderService,
        "tstar",
        lambda s, a, o: o.json(s.aronszajn_node(a.alpha, parse_modifications(a.modify))),
    ),
    "coloring": (
        ColoringService,
        "tstar",
        lambda s, a, o: o.table(["alpha", "beta", "color"], s.color_table(a.window)),
    ),
    "cset": (ColoringService, "tstar", lambda s, a, o: o.json(s.cset(a.alpha))),
    "entangled": (
        EntangledService,
        "entangled",
        lambda s, a, o: o.json(s.entangled_real(a.alpha, a.depth)),
    ),
    "independent": (
        IndependentService,
        "independent",
        lambda s, a, o: o.json(s.indep_coherent(a.alpha, a.depth).to_rows()),
    ),
    "lattice": (LatticeService, "t2", _construct_lattice),
    "suslin_tree": (SuslinService, "full_suslin", _construct_suslin_tree),
    "coherent_suslin": (
        SuslinService,
        "coherent_suslin",
        lambda s, a, o: o.json(s.coherent_suslin_function(a.alpha, PartitionSpec.residue(2))),
    ),
}


def cmd_construct(args: argparse.Namespace, config: AppConfig, out: Output) -> int:
    service_class, default_type, handler = CONSTRUCTIONS[args.name]
    spec = load_type(args.type, default_type)
    handler(service_class(SchemeView(spec, config.scheme)), args, out)
    return 0


def _session(args: argparse.Namespace, config: AppConfig) -> ForcingSession:
    return ForcingSession.load(
        args.session or config.forcing.session_dir, config.forcing, config.scheme
    )


def cmd_force(args: argparse.Namespace, config: AppConfig, out: Output) -> int:
    if args.action == "init":
        spec = load_type(args.type, "t2")
        session = ForcingSession.init(
            args.session or config.forcing.session_dir, spec, config.forcing, config.scheme
        )
        out.json({"session": str(session.path), "type": spec.name})
    elif args.action == "demand":
        session = _session(args, config)
        if args.advance:
            record = session.demand("advance", {})
        elif args.contain is not None:
            record = session.demand("contain", {"alpha": args.contain})
        elif args.root is not None:
            record = session.demand("root", {"beta": args.root, "k": args.k})
        else:
            raise ValueError("force demand needs --contain, --root or --advance")
        out.json(record)
    elif args.action == "meet":
        session = _session(args, config)
        if args.ih == "ih1":
            demand = {"A": parse_ordinal_list(args.A), "alpha": args.alpha}
        else:
            demand = {
                "beta": args.beta,
                "k": args.k,
                "delta": args.delta,
                "D": parse_ordinal_list(args.D),
                "T": json.loads(args.T) if args.T else None,
                "window": args.window,
            }
        out.json(session.demand(args.ih, demand))
    elif args.action == "snapshot":
        out.json(_session(args, config).snapshot())
    elif args.action == "verify-trans":
        fragment = _session(args, config).fragment()
        betas = lift(range(args.window), block=fragment.blocks - 1)
        xis = lift(range(args.window))
        report = AcceptanceService(fragment).verify_trans_equiv(
            betas, xis, k_max=args.k_max, l_max=args.l_max
        )
        out.json(report)
        return 0 if report.passed else InvariantViolation.exit_code
    return 0


def cmd_verify(args: argparse.Namespace, config: AppConfig, out: Output) -> int:
    names = list(args.suites)
    if args.queue:
        from app.tasks.verify_tasks import dispatch_suites

        document = load_type(args.type, "").to_json_document() if args.type else None
        reports = dispatch_suites(names, document, args.window or None)
        out.json(reports)
        failed = [report for report in reports if not _report_passed(report)]
    else:
        service = VerificationService(config)
        spec = load_type(args.type, config.scheme.default_type) if args.type else None
        results = service.run_selection(names, spec=spec, window=args.window or None)
        out.json(results)
        failed = [report for report in results if not report.passed]
    return InvariantViolation.exit_code if failed else 0


def _report_passed(report: Dict[str, Any]) -> bool:
    return all(check["passed"] or check["informational"] for check in report["checks"])


# Parser


def _add_type(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--type", help="Builtin type name or JSON type document")


def _add_format(parser: argparse.ArgumentParser, *choices: str) -> None:
    parser.add_argument("--format", dest="output_format", choices=choices, default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schemes", description="Construction schemes over the countable ordinals"
    )
    parser.add_argument("--log-level", help="Override LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    p_scheme = sub.add_parser("scheme", help="Build and inspect schemes")
    p_scheme.add_argument("action", choices=["build", "member", "decompose", "list"])
    _add_type(p_scheme)
    _add_format(p_scheme, "json", "dot")
    p_scheme.add_argument("--level", type=int, default=1)
    p_scheme.add_argument("--set", default="", help="Comma separated ordinals")
    p_scheme.add_argument("--window", type=int, default=0)
    p_scheme.set_defaults(func=cmd_scheme)

    p_metric = sub.add_parser("metric", help="Ordinal metric queries")
    p_metric.add_argument("query", choices=["rho", "delta", "xi", "closure", "f", "osc"])
    _add_type(p_metric)
    p_metric.add_argument("--a", type=int, required=True)
    p_metric.add_argument("--b", type=int)
    p_metric.add_argument("--k", type=int, default=0)
    p_metric.set_defaults(func=cmd_metric, output_format="json")

    p_capture = sub.add_parser("capture", help="Capturing predicates and scans")
    p_capture.add_argument("action", choices=["scan", "tuple"])
    _add_type(p_capture)
    p_capture.add_argument("--family", default="[]", help="JSON list of sets")
    p_capture.add_argument("--n", type=int, default=2)
    p_capture.add_argument("--window", type=int, default=8)
    p_capture.add_argument("--k-min", dest="k_min", type=int, default=0)
    p_capture.add_argument("--set", default="", help="Comma separated ordinals")
    p_capture.set_defaults(func=cmd_capture, output_format="json")

    p_construct = sub.add_parser("construct", help="Evaluate derived constructions")
    p_construct.add_argument("name", choices=sorted(CONSTRUCTIONS))
    _add_type(p_construct)
    _add_format(p_construct, "json", "csv", "dot")
    p_construct.add_argument("--alpha", type=int, default=0)
    p_construct.add_argument("--beta", type=int)
    p_construct.add_argument("--depth", type=int, default=3)
    p_construct.add_argument("--window", type=int, default=8)
    p_construct.add_argument("--modify", help="Finite modifications xi:value,...")
    p_construct.set_defaults(func=cmd_construct)

    p_force = sub.add_parser("force", help="Forcing lab sessions")
    p_force.add_argument("action", choices=["init", "demand", "meet", "snapshot", "verify-trans"])
    _add_type(p_force)
    p_force.add_argument("--out", "--session", dest="session", help="Session directory")
    p_force.add_argument("--base", choices=["omega"], default="omega", help="Ground universe")
    p_force.add_argument("--contain", help="Ordinal b:o to place in the chain")
    p_force.add_argument("--root", help="Ordinal b:o whose root is extended")
    p_force.add_argument("--advance", action="store_true", help="Open the next block")
    p_force.add_argument("--ih", choices=["ih1", "ih2"], default="ih1")
    p_force.add_argument("--A", help="Comma separated ordinals")
    p_force.add_argument("--D", help="Comma separated guessed ordinals")
    p_force.add_argument("--T", help="Good sequence as JSON")
    p_force.add_argument("--alpha")
    p_force.add_argument("--beta")
    p_force.add_argument("--delta")
    p_force.add_argument("--k", type=int, default=0)
    p_force.add_argument("--window", type=int, default=12)
    p_force.add_argument("--k-max", dest="k_max", type=int, default=4)
    p_force.add_argument("--l-max", dest="l_max", type=int, default=6)
    p_force.set_defaults(func=cmd_force, output_format="json")

    p_verify = sub.add_parser("verify", help="Run verification suites")
    p_verify.add_argument(
        "suites",
        nargs="+",
        metavar="suite",
        help=f"{ALL_SUITES} or one of {', '.join(sorted(SUITES))}",
    )
    _add_type(p_verify)
    p_verify.add_argument("--window", type=int, default=0)
    p_verify.add_argument("--queue", action="store_true", help="Dispatch suites through Celery")
    p_verify.set_defaults(func=cmd_verify, output_format="json")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)

    config = AppConfig()
    setup_logging(
        level=args.log_level or config.logging.level,
        format_type=config.logging.format,
        stream=sys.stderr,
    )
    set_run_id(config.logging.run_id or generate_run_id(*argv))

    try:
        run = RunConfig(
            type_source=args.type or config.scheme.default_type,
            window=getattr(args, "window", 0) or 0,
            depth=getattr(args, "depth", 0) or 0,
            output_format=args.output_format,
            suites=getattr(args, "suites", []),
        )
        out = Output(run)
        status = args.func(args, config, out)
    except SchemeError as e:
        logger.error(f"{e.__class__.__name__}: {e.message}")
        sys.stderr.write(dumps_json(e.to_dict()))
        return e.exit_code
    except (ValidationError, ValueError) as e:
        logger.error(f"Invalid input: {e}")
        sys.stderr.write(dumps_json({"error": e.__class__.__name__, "message": str(e)}))
        return 1

    sys.stdout.write(out.text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
