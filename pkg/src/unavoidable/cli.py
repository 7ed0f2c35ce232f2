"""Command-line front end.  Every subcommand prints JSON (or DOT with --dot).

Exit status is 0 on success, 1 when a certificate is rejected or nothing
is found, and 2 for usage errors and malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .errors import NotGuaranteedError, UnavoidableError
from .graph import Graph, connectivity_profile, parse_graph

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _read(path: Optional[str]) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


def _graph(args) -> Graph:
    return parse_graph(_read(args.graph), args.format)


def _certificate(path):
    from .structures import parse_certificate

    return parse_certificate(_read(path))


def _r(args, least=3) -> int:
    if args.r is None:
        raise _Usage("--r is required")
    if args.r < least:
        raise _Usage(f"--r must be at least {least}")
    return args.r


def _dot(G: Graph, highlight=(), name="G") -> str:
    hl = {tuple(sorted(e)) for e in highlight}
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(G.n):
        lines.append(f"  {v};")
    for a, b in G.sorted_edges():
        style = " [color=red, penwidth=2]" if (a, b) in hl else ""
        lines.append(f"  {a} -- {b}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit(args, obj, G=None, highlight=()):
    if getattr(args, "dot", False) and G is not None:
        text = _dot(G, highlight)
    elif isinstance(obj, str):
        text = obj if obj.endswith("\n") else obj + "\n"
    else:
        text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------


def cmd_analyze(args) -> int:
    from .extraction import NotFound, find_unavoidable
    from .structures import certificate_to_json_obj, witness_edges

    G = _graph(args)
    diag = {}
    res = find_unavoidable(G, _r(args), diag)
    if isinstance(res, NotFound):
        _emit(args, res.to_json_obj(), G)
        return EXIT_NEGATIVE
    obj = certificate_to_json_obj(res)
    if args.diagnostics:
        obj = {"certificate": obj, "diagnostics": diag}
    _emit(args, obj, G, witness_edges(G, res))
    return EXIT_OK


def cmd_certify(args) -> int:
    from .structures import certify

    G = _graph(args)
    cert = _certificate(args.certificate)
    verdict = certify(G, cert)
    _emit(args, verdict.to_json_obj())
    return EXIT_OK if verdict else EXIT_NEGATIVE


def cmd_extract(args) -> int:
    from .extraction import chain_between
    from .structures import StructureCertificate, certificate_to_json_obj, witness_edges

    if args.u is None or args.v is None:
        raise _Usage("extract needs --u and --v")
    G = _graph(args)
    chain = chain_between(G, args.u, args.v)
    cert = StructureCertificate.of(chain, max(3, chain.parameter) if args.r is None else args.r)
    _emit(args, certificate_to_json_obj(cert), G, witness_edges(G, cert))
    return EXIT_OK


def cmd_superclean(args) -> int:
    from .structures import LadderWitness, StructureCertificate, certificate_to_json_obj, witness_edges
    from .supercleaning import superclean

    G = _graph(args)
    obj = _ladder_obj(_read(args.ladder))
    L = LadderWitness(tuple(obj["P"]), tuple(obj["Q"]))
    res = superclean(G, L)
    cert = StructureCertificate.of(res.chain, 3)
    out = {
        "chain": certificate_to_json_obj(cert),
        "trace": [json.loads(line) for line in res.trace_lines()],
        "kept": list(res.kept),
        "deleted": list(res.deleted),
    }
    _emit(args, out, G, witness_edges(G, cert))
    return EXIT_OK


def _ladder_obj(text):
    from .errors import ParseError, ValidationError

    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.pos) from None
    if isinstance(obj, dict) and "ladder" in obj:
        obj = obj["ladder"]
    if not isinstance(obj, dict) or not all(isinstance(obj.get(k), list) for k in ("P", "Q")):
        raise ValidationError("ladder JSON needs lists P and Q")
    for k in ("P", "Q"):
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in obj[k]):
            raise ValidationError(f"rail {k} must hold integers")
    return obj


def cmd_flower(args) -> int:
    from .extraction import flower_at
    from .structures import StructureCertificate, certificate_to_json_obj, witness_edges

    if args.v is None:
        raise _Usage("flower needs --v")
    G = _graph(args)
    r = _r(args, least=2)
    cert = StructureCertificate.of(flower_at(G, args.v, r), r)
    _emit(args, certificate_to_json_obj(cert), G, witness_edges(G, cert))
    return EXIT_OK


def cmd_euler(args) -> int:
    from .reductions import eulerian_circuit

    G = _graph(args)
    cert = _certificate(args.certificate)
    walk = eulerian_circuit(cert, G)
    _emit(args, {"circuit": walk, "edges": len(walk) - 1})
    return EXIT_OK


def cmd_reduce(args) -> int:
    from .reductions import reduce_minor, reduce_topological

    G = _graph(args)
    cert = _certificate(args.certificate)
    red = reduce_minor(cert, G) if args.minor else reduce_topological(cert, G)
    _emit(args, red.to_json_obj(), red.graph)
    return EXIT_OK


def cmd_bctree(args) -> int:
    from .decomposition import bc_tree_stats, block_cut_tree

    G = _graph(args)
    T = block_cut_tree(G)
    prof = connectivity_profile(G)
    lp, most, biggest = bc_tree_stats(T)
    obj = T.to_json_obj()
    obj["longest_path"] = lp
    obj["max_blocks_at_cutvertex"] = most
    obj["max_block_order"] = biggest
    obj["profile"] = {
        "connected": prof.connected,
        "two_edge_connected": prof.two_edge_connected,
        "two_connected": prof.two_connected,
        "bridges": [list(e) for e in prof.bridges],
        "cutvertices": list(prof.cutvertices),
    }
    _emit(args, obj)
    return EXIT_OK


def cmd_bounds(args) -> int:
    from .oracle import bound

    _emit(args, str(bound(args.name, *args.args)))
    return EXIT_OK


def _mode(args):
    mode = args.mode or "exhaustive"
    if mode != "exhaustive" and not mode.startswith("sampled"):
        raise _Usage(f"unknown --mode {mode!r}")
    if mode.startswith("sampled") and mode.count(":") == 1:
        mode = f"{mode}:{args.seed or 0}"
    return mode


def cmd_enumerate(args) -> int:
    from .oracle import enumerate_2ec

    if args.n is None:
        raise _Usage("enumerate needs --n")
    graphs = [G.to_graph6() for G in enumerate_2ec(args.n, _mode(args))]
    _emit(args, {"n": args.n, "mode": _mode(args), "count": len(graphs), "graphs": graphs})
    return EXIT_OK


def cmd_threshold(args) -> int:
    from .oracle import _parse_mode, empirical_threshold

    if args.n is None:
        raise _Usage("threshold needs --n (the largest order)")
    mode = _parse_mode(_mode(args))
    samples = mode[1] if mode[0] == "sampled" else 200
    rep = empirical_threshold(_r(args), args.n, samples=samples, seed=args.seed or 0)
    if args.csv:
        _emit(args, rep.to_csv())
    else:
        _emit(args, rep.to_json_obj())
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="unav", description="Find and certify unavoidable induced substructures "
                "of 2-edge-connected graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, graph=True):
        if graph:
            sp.add_argument("graph", nargs="?", help="graph file (default: stdin)")
            sp.add_argument("--format", choices=("json", "g6", "auto"), default="auto")
        sp.add_argument("--out", metavar="PATH")
        sp.add_argument("--dot", action="store_true", help="DOT rendering instead of JSON")
        return sp

    sp = common(sub.add_parser("analyze", help="run the extraction pipeline"))
    sp.add_argument("--r", type=int)
    sp.add_argument("--diagnostics", action="store_true")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("certify", help="check a certificate against a graph")
    sp.add_argument("graph")
    sp.add_argument("certificate")
    sp.add_argument("--format", choices=("json", "g6", "auto"), default="auto")
    common(sp, graph=False).set_defaults(func=cmd_certify)

    sp = common(sub.add_parser("extract", help="chain of super-clean pinched ladders between u and v"))
    sp.add_argument("--u", type=int)
    sp.add_argument("--v", type=int)
    sp.add_argument("--r", type=int)
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("superclean", help="super-clean a clean ladder")
    sp.add_argument("graph")
    sp.add_argument("ladder", help="JSON with rails P and Q")
    sp.add_argument("--format", choices=("json", "g6", "auto"), default="auto")
    common(sp, graph=False).set_defaults(func=cmd_superclean)

    sp = common(sub.add_parser("flower", help="r-flower at a cutvertex"))
    sp.add_argument("--v", type=int)
    sp.add_argument("--r", type=int)
    sp.set_defaults(func=cmd_flower)

    for name, func, hlp in (("euler", cmd_euler, "closed trail through a certified structure"),
                            ("reduce", cmd_reduce, "reduce a certified structure")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("graph")
        sp.add_argument("certificate")
        sp.add_argument("--format", choices=("json", "g6", "auto"), default="auto")
        if name == "reduce":
            g = sp.add_mutually_exclusive_group(required=True)
            g.add_argument("--topological", action="store_true")
            g.add_argument("--minor", action="store_true")
        common(sp, graph=False).set_defaults(func=func)

    common(sub.add_parser("bctree", help="block-cutvertex tree")).set_defaults(func=cmd_bctree)

    sp = sub.add_parser("bounds", help="evaluate a bound function")
    sp.add_argument("name")
    sp.add_argument("args", nargs="*", type=int)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_bounds)

    for name, func in (("enumerate", cmd_enumerate), ("threshold", cmd_threshold)):
        sp = sub.add_parser(name)
        sp.add_argument("--n", type=int)
        sp.add_argument("--mode")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out", metavar="PATH")
        if name == "threshold":
            sp.add_argument("--r", type=int)
            sp.add_argument("--csv", action="store_true")
        sp.set_defaults(func=func)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise _Usage("a subcommand is required")
        return args.func(args)
    except SystemExit as exc:           # --help
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    except _Usage as exc:
        print(f"unav: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotGuaranteedError as exc:
        print(f"unav: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except UnavoidableError as exc:
        print(f"unav: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
