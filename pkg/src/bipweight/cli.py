"""Command-line front end.

Exit codes: 0 ok, 1 infeasible (proved), 2 hypothesis violation,
3 parse/usage error, 4 weighting failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Sequence

from .errors import BudgetExceeded, GenerationError, GraphParseError, HypothesisError
from .graph import Graph, gen_complete_bipartite, gen_gamma_pair, gen_regular_bipartite, gen_theta, parse_graph
from .oracle import WEIGHTING_BUDGET, brute_force_weighting
from .parity import CERTIFICATE_LIMIT, find_certificate, parse_spec, solve_parity_factor
from .weighting import WeightSet, parse_weighting, synthesize_weighting, verify_weighting


class Status(str, Enum):
    OK = "ok"
    INFEASIBLE = "infeasible"
    HYPOTHESIS = "hypothesis-violation"
    ERROR = "error"


EXIT_CODES = {Status.OK: 0, Status.INFEASIBLE: 1, Status.HYPOTHESIS: 2, Status.ERROR: 3}
EXIT_VERIFY_FAILED = 4


@dataclass
class CommandResult:
    status: Status
    payload: Any = None
    diagnostics: list[str] = field(default_factory=list)
    text: str = ""
    exit_code: int | None = None

    def code(self) -> int:
        return EXIT_CODES[self.status] if self.exit_code is None else self.exit_code

    def to_json(self) -> str:
        return json.dumps(
            {"status": self.status.value, "payload": self.payload, "diagnostics": self.diagnostics},
            indent=2,
        )


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise GraphParseError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> Graph:
    return parse_graph(_read(path), source=path)


def cmd_weight(args: argparse.Namespace) -> CommandResult:
    graph = _load_graph(args.input)
    ws = WeightSet.parse(args.set)
    wt = synthesize_weighting(graph, ws, fallback=args.fallback_search)
    if wt is None:
        return CommandResult(
            Status.INFEASIBLE, None, [f"exhaustive search: no vertex-colouring {{{args.set[0]},{args.set[1]}}}-edge-weighting"]
        )
    bad = verify_weighting(graph, wt)
    if bad:
        raise RuntimeError(f"constructed weighting has clashing edges {bad}")
    text = wt.to_json() + "\n" if args.format == "json" else wt.to_text()
    return CommandResult(Status.OK, wt.to_dict(), [f"route: {wt.route}"], text)


def cmd_verify(args: argparse.Namespace) -> CommandResult:
    graph = _load_graph(args.input)
    ws = WeightSet.parse(args.set) if args.set else None
    wt = parse_weighting(_read(args.weighting), graph, ws, source=args.weighting)
    bad = verify_weighting(graph, wt)
    payload = {"violations": [list(e) for e in bad], "weight_set": list(wt.weight_set.value)}
    text = "".join(f"{u} {v}\n" for u, v in bad)
    if bad:
        return CommandResult(Status.ERROR, payload, [f"{len(bad)} edges with equal endpoint colours"], text,
                             exit_code=EXIT_VERIFY_FAILED)
    return CommandResult(Status.OK, payload, ["proper vertex-colouring weighting"], text)


def cmd_factor(args: argparse.Namespace) -> CommandResult:
    graph = _load_graph(args.input)
    spec = parse_spec(_read(args.spec), graph.n, source=args.spec)
    factor = solve_parity_factor(graph, spec)
    if factor is None:
        return CommandResult(Status.INFEASIBLE, None, ["no (g,f)-parity factor (no perfect matching in the gadget graph)"])
    edges = factor.sorted_edges()
    payload = {"edges": [list(e) for e in edges], "degrees": factor.degrees()}
    return CommandResult(Status.OK, payload, [f"{len(edges)} edges"], "".join(f"{u} {v}\n" for u, v in edges))


def cmd_certificate(args: argparse.Namespace) -> CommandResult:
    graph = _load_graph(args.input)
    spec = parse_spec(_read(args.spec), graph.n, source=args.spec)
    cert = find_certificate(graph, spec, limit=args.limit)
    if cert is None:
        return CommandResult(Status.OK, None, ["no pair (S, T) with negative eta: a parity factor exists"])
    S, T = sorted(cert.S), sorted(cert.T)
    payload = {"S": S, "T": T, "eta": cert.eta, "tau": cert.tau}
    text = (
        " ".join(["S", *map(str, S)]) + "\n"
        + " ".join(["T", *map(str, T)]) + "\n"
        + f"eta {cert.eta}\ntau {cert.tau}\n"
    )
    return CommandResult(Status.INFEASIBLE, payload, ["negative eta certifies that no parity factor exists"], text)


def cmd_gen(args: argparse.Namespace) -> CommandResult:
    comments: list[str] = []
    params = args.params
    try:
        if args.family == "theta":
            graph = gen_theta([int(p) for p in params])
            comments.append("theta " + " ".join(params))
        elif args.family == "gamma-pair":
            if params:
                raise ValueError("gamma-pair takes no parameters")
            graph = gen_gamma_pair()
            comments.append("gamma-pair")
        elif args.family == "complete-bipartite":
            a, b = (int(p) for p in params)
            graph = gen_complete_bipartite(a, b)
            comments.append(f"complete-bipartite {a} {b}")
        else:
            r, n = (int(p) for p in params)
            graph = gen_regular_bipartite(r, n, args.seed)
            comments.append(f"regular-bipartite {r} {n} seed {args.seed}")
    except ValueError as exc:
        raise GraphParseError(f"bad parameters for {args.family}: {exc}") from None
    payload = {"n": graph.n, "edges": [list(e) for e in graph.edges]}
    if args.family == "regular-bipartite":
        payload["seed"] = args.seed
    return CommandResult(Status.OK, payload, comments, graph.to_edge_list(comments=comments))


def cmd_oracle(args: argparse.Namespace) -> CommandResult:
    graph = _load_graph(args.input)
    ws = WeightSet.parse(args.set)
    wt = brute_force_weighting(graph, ws, budget=args.budget)
    if wt is None:
        return CommandResult(Status.INFEASIBLE, None, [f"all {2 ** graph.m} weightings enumerated, none proper"])
    text = wt.to_json() + "\n" if args.format == "json" else wt.to_text()
    return CommandResult(Status.OK, wt.to_dict(), ["lexicographically first proper weighting"], text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bipweight", description="Vertex-colouring 2-edge-weightings of bipartite graphs")
    p.add_argument("--json", action="store_true", help="print the full command result as JSON")
    sub = p.add_subparsers(dest="command", required=True)

    def with_output(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--output", "-o", help="write the result document here instead of stdout")

    w = sub.add_parser("weight", help="construct a weighting")
    w.add_argument("input")
    w.add_argument("--set", default="12", choices=["12", "01"])
    w.add_argument("--fallback-search", action="store_true",
                   help="on unmet hypotheses, try harder and finally search exhaustively")
    w.add_argument("--format", default="text", choices=["text", "json"])
    with_output(w)
    w.set_defaults(func=cmd_weight)

    v = sub.add_parser("verify", help="check a weighting document")
    v.add_argument("input")
    v.add_argument("weighting")
    v.add_argument("--set", choices=["12", "01"], help="weight set (inferred when omitted)")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("factor", help="solve a (g,f)-parity factor problem")
    f.add_argument("input")
    f.add_argument("spec")
    with_output(f)
    f.set_defaults(func=cmd_factor)

    c = sub.add_parser("certificate", help="search for a negative-eta (S, T) pair")
    c.add_argument("input")
    c.add_argument("spec")
    c.add_argument("--limit", type=int, default=CERTIFICATE_LIMIT)
    c.set_defaults(func=cmd_certificate)

    gsub = sub.add_parser("gen", help="generate a graph family")
    gsub.add_argument("family", choices=["theta", "gamma-pair", "complete-bipartite", "regular-bipartite"])
    gsub.add_argument("params", nargs="*")
    gsub.add_argument("--seed", type=int, default=0)
    with_output(gsub)
    gsub.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="exhaustive weighting search")
    o.add_argument("input")
    o.add_argument("--set", default="12", choices=["12", "01"])
    o.add_argument("--budget", type=int, default=WEIGHTING_BUDGET)
    o.add_argument("--format", default="text", choices=["text", "json"])
    with_output(o)
    o.set_defaults(func=cmd_oracle)
    return p


def run(args: argparse.Namespace) -> CommandResult:
    """Dispatch parsed arguments, folding library errors into a result."""
    func: Callable[[argparse.Namespace], CommandResult] = args.func
    try:
        return func(args)
    except HypothesisError as exc:
        return CommandResult(Status.HYPOTHESIS, {"hypothesis": exc.hypothesis}, [str(exc)])
    except (GraphParseError, BudgetExceeded, GenerationError, ValueError) as exc:
        return CommandResult(Status.ERROR, None, [str(exc)])


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 3 if exc.code not in (0, None) else 0
    result = run(args)
    output = getattr(args, "output", None)
    if output and result.text:
        Path(output).write_text(result.text)
    if args.json:
        print(result.to_json())
    elif result.text and not output:
        sys.stdout.write(result.text)
    print(f"status: {result.status.value}", file=sys.stderr)
    for line in result.diagnostics:
        print(f"  {line}", file=sys.stderr)
    return result.code()


if __name__ == "__main__":
    sys.exit(main())
