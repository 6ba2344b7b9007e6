"""Command-line entry point.

Exit codes: 0 success, 1 verification failed, 2 usage or input error,
3 internal engine fault.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .circle import Configuration, expected_cut, format_rational, parse_rational
from .engine import Decomposition, EngineFault, config_from_cut, decompose
from .graph import Graph, GraphError, ParseError, generate, is_connected, parse_graph
from .heuristics import compare_heuristics, rows_to_csv
from .oracles import ENUMERATE_CAP, MAXCUT_CAP, CapExceeded, enumerate_decompositions, maxcut_bruteforce, monte_carlo_round
from .verifier import check_even_degree_C, check_properties, check_subset_inequalities, judicious_bounds

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_FAULT = 0, 1, 2, 3

DOT_COLORS = {"A": "red", "B": "blue", "C": "green"}


class UsageError(Exception):
    pass


def _load_graph(args) -> Graph:
    if args.input:
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
        return parse_graph(text)
    return generate(args.gen, seed=args.seed)


def parse_partition(text: str, n: int) -> Decomposition:
    """Either ``vertex class`` lines or the JSON emitted by ``decompose``."""
    stripped = text.lstrip()
    labels: dict[int, str] = {}
    if stripped.startswith("{"):
        data = json.loads(stripped)
        for cls in ("A", "B", "C"):
            for v in data.get(cls, []):
                labels[int(v)] = cls
    else:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("A", "B", "C"):
                raise ParseError(f"expected 'vertex A|B|C', got {raw.strip()!r}", lineno)
            try:
                v = int(parts[0])
            except ValueError:
                raise ParseError(f"bad vertex id {parts[0]!r}", lineno) from None
            if v in labels:
                raise ParseError(f"vertex {v} listed twice", lineno)
            labels[v] = parts[1]
    if sorted(labels) != list(range(n)):
        raise UsageError(f"partition does not cover vertices 0..{n - 1} exactly")
    return Decomposition.from_labels(labels[v] for v in range(n))


def _init_from_arg(g: Graph, init: str):
    if init in ("zero", "random"):
        return init
    if init.startswith("cut:"):
        path = init[4:]
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
        d = parse_partition(text, g.n)
        if d.c:
            raise UsageError("cut initialisation takes an A/B partition only")
        return config_from_cut(g.n, d.a)
    raise UsageError(f"unknown --init {init!r}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _dot(g: Graph, d: Decomposition) -> str:
    labels = d.labels()
    lines = ["graph G {", "  node [style=filled];"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{v}", fillcolor={DOT_COLORS[labels[v]]}];')
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_decompose(args) -> int:
    g = _load_graph(args)
    if g.n == 0 or not is_connected(g):
        raise UsageError("graph not connected")
    init = _init_from_arg(g, args.init)
    try:
        d, trace = decompose(g, init, seed=args.seed, budget=args.budget)
    except EngineFault as exc:
        if args.trace and exc.trace is not None:
            Path(args.trace).write_text(exc.trace.to_jsonl(), encoding="utf-8")
        print(f"engine fault: {exc}", file=sys.stderr)
        return EXIT_FAULT
    if args.trace:
        Path(args.trace).write_text(trace.to_jsonl(), encoding="utf-8")
    props = check_properties(g, d)
    ok = props.passed
    bounds = judicious_bounds(g, d) if ok else None
    if bounds is not None:
        ok = ok and bounds.passed
    if args.format == "dot":
        sys.stdout.write(_dot(g, d))
    elif args.format == "json":
        out = {
            **d.to_dict(),
            "properties": "pass" if props.passed else "fail",
            "graph": {"n": g.n, "m": g.m, "max_degree": g.max_degree},
            "property_report": props.to_json(),
            "bounds": bounds.to_json() if bounds else None,
            "even_degree_C": check_even_degree_C(g, d).passed,
            "trace": trace.summary(),
        }
        sys.stdout.write(_dump(out))
    else:
        s = trace.summary()
        print(f"graph: n={g.n} m={g.m} max_degree={g.max_degree}")
        for cls, members in d.to_dict().items():
            print(f"{cls}: {' '.join(map(str, members))}")
        print(f"properties: {'pass' if props.passed else 'FAIL ' + ','.join(props.failed())}")
        if bounds:
            print(f"cut E(A∪C,B) = {bounds.cut_value} >= {format_rational(bounds.lower_bound)}")
        print(
            f"collisions={s['collisions']} strict_descents={s['strict_descents']} "
            f"neutral_moves={s['neutral_moves']} final_energy={s['final_energy']}"
        )
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args) -> int:
    g = _load_graph(args)
    try:
        text = Path(args.partition).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.partition}: {exc}") from None
    d = parse_partition(text, g.n)
    props = check_properties(g, d)
    out = {**d.to_dict(), "properties": "pass" if props.passed else "fail", "property_report": props.to_json()}
    if props.passed:
        subsets = check_subset_inequalities(g, d, seed=args.seed)
        out["subset_inequalities"] = {"pass": subsets.passed, "checked": subsets.checked}
        out["bounds"] = judicious_bounds(g, d).to_json()
    if args.format == "json":
        sys.stdout.write(_dump(out))
    else:
        print(f"properties: {'pass' if props.passed else 'FAIL'}")
        for k, c in props.checks.items():
            extra = f" witnesses={c.witnesses}" if c.witnesses else ""
            note = f" ({c.note})" if c.note else ""
            print(f"  ({k}) {'pass' if c.passed else 'FAIL'}{note}{extra}")
    return EXIT_OK if props.passed else EXIT_FAILED


def _load_config(args, n: int) -> Configuration:
    if args.angles:
        items = [s for s in args.angles.split(",") if s.strip()]
        c = Configuration(parse_rational(s) for s in items)
    elif args.config:
        c = Configuration.from_json(json.loads(Path(args.config).read_text(encoding="utf-8")))
    else:
        raise UsageError("oracle round needs --angles or --config")
    if len(c) != n:
        raise UsageError(f"configuration has {len(c)} angles for {n} vertices")
    return c


def cmd_oracle(args) -> int:
    g = _load_graph(args)
    if args.which == "maxcut":
        r = maxcut_bruteforce(g, cap=args.cap or MAXCUT_CAP)
        a, b = r.partition
        out = {"maxcut": r.value, "A": sorted(a), "B": sorted(b), "examined": r.instances_examined}
    elif args.which == "enumerate":
        r = enumerate_decompositions(g, cap=args.cap or ENUMERATE_CAP, limit=args.limit)
        out = {"count": r.total, "examined": r.instances_examined, "decompositions": [d.to_dict() for d in r.value]}
    else:
        c = _load_config(args, g.n)
        mean, var = monte_carlo_round(g, c, args.samples, seed=args.seed)
        out = {
            "samples": args.samples,
            "mean_cut": mean,
            "sample_variance": var,
            "expected_cut": format_rational(expected_cut(g, c)),
        }
    if args.format == "json":
        sys.stdout.write(_dump(out))
    else:
        key = {"maxcut": "maxcut", "enumerate": "count", "round": "mean_cut"}[args.which]
        print(out[key])
    return EXIT_OK


def cmd_compare(args) -> int:
    g = _load_graph(args)
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    name = args.gen or Path(args.input).stem
    rows = compare_heuristics(g, seeds, name=name, rounds=args.rounds, maxcut_cap=args.cap or 24)
    sys.stdout.write(rows_to_csv(rows))
    return EXIT_OK


def cmd_gen(args) -> int:
    g = generate(args.spec, seed=args.seed)
    text = g.to_dimacs() if args.format == "dimacs" else g.to_edge_list()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="edge-list or DIMACS file")
    src.add_argument("--gen", metavar="SPEC", help="generator, e.g. complete:5, petersen, random_gnp:10:0.3")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="friendly-split", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="run the descent and report the A/B/C decomposition")
    _add_source(p)
    p.add_argument("--init", default="zero", help="zero | random | cut:FILE")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=["json", "text", "dot"], default="text")
    p.add_argument("--trace", metavar="PATH", help="write the full trace as JSON lines")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check a given partition")
    _add_source(p)
    p.add_argument("--partition", required=True, metavar="FILE")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force oracles")
    p.add_argument("which", choices=["maxcut", "enumerate", "round"])
    _add_source(p)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--limit", type=int, default=None, help="max decompositions listed")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--angles", help="comma-separated num/den angles in turns")
    p.add_argument("--config", metavar="FILE", help="JSON array of num/den angles")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", help="CSV comparison of cosine descent, engine and MaxCut")
    _add_source(p)
    p.add_argument("--seeds", default="0,1,2")
    p.add_argument("--rounds", type=int, default=64)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="emit a generated graph")
    p.add_argument("spec")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["edgelist", "dimacs"], default="edgelist")
    p.add_argument("--output", "-o", metavar="PATH")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, GraphError, CapExceeded, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EngineFault as exc:
        print(f"engine fault: {exc}", file=sys.stderr)
        return EXIT_FAULT


if __name__ == "__main__":
    sys.exit(main())
