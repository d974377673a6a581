#!/usr/bin/env python3
"""
Greedy Defining Set Toolkit
Command-line front end: greedy coloring, descents, exact and forest GDN,
vertex cover reductions, Latin square tools and secret sharing
"""
import sys
import logging
import argparse
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from exact_solvers import brute_force_gdn_oracle, gdn, gdn_fixed
from file_formats import (
    format_cells, format_coloring, format_defining_set, format_graph, format_partial_square, format_share,
    format_square,
    load, parse_access_structure, parse_coloring, parse_defining_set, parse_graph,
    parse_partial_square, parse_square,
)
from forest_gdn import forest_gdn
from gds_errors import GDSError, InputError, InternalInvariantError
from greedy_core import find_descents, greedy_color
from latin_squares import (
    CoverKind, bound_report, g_number, greedy_complete, greedy_square, latin_descents,
    min_cover_gds, min_latin_gds, random_latin, verify_latin_gds,
)
from reductions import thm2_instance, thm4_instance
from report_templates import TemplateEngine, render_template, set_template_engine
from secret_sharing import audit, deal, reconstruct
from share_storage import ShareStorage
from solver_config import get_solver_config

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(verbosity: int):
    """Results go to stdout; logs go to stderr and optionally GDS_LOG_FILE"""
    config = get_solver_config()
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, config.log_level, logging.WARNING)

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.log_file:
        handlers.append(logging.FileHandler(config.log_file))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def _render(template_key: str, **context) -> str:
    rendered = render_template(template_key, context)
    if rendered is None:
        raise InternalInvariantError(f"report template '{template_key}' is missing or incomplete")
    return rendered


def _emit(text: str):
    sys.stdout.write(text)


# Graph commands

def cmd_color(args) -> int:
    G = load(parse_graph, args.graph)
    S = load(parse_defining_set, args.defining) if args.defining else None
    outcome = greedy_color(G, S)
    _emit(format_coloring(outcome.coloring))
    return 0 if outcome.proper else 1


def cmd_descents(args) -> int:
    G = load(parse_graph, args.graph)
    C = load(parse_coloring, args.coloring)
    for d in find_descents(G, C):
        tail = [str(v) for v in sorted(d.tail, key=G.position.__getitem__)]
        _emit(" ".join([str(d.head), str(d.low_color), str(d.high_color), ':'] + tail) + "\n")
    return 0


def _emit_result(size: int, witness) -> int:
    _emit(f"{size}\n")
    _emit(format_defining_set(witness))
    return 0


def cmd_gdn(args) -> int:
    G = load(parse_graph, args.graph)
    if args.oracle:
        _emit(f"{brute_force_gdn_oracle(G)}\n")
        return 0
    result = gdn(G)
    return _emit_result(result.size, result.witness)


def cmd_gdn_fixed(args) -> int:
    G = load(parse_graph, args.graph)
    C = load(parse_coloring, args.coloring)
    result = gdn_fixed(G, C)
    return _emit_result(result.size, result.witness)


def cmd_forest_gdn(args) -> int:
    G = load(parse_graph, args.graph)
    result = forest_gdn(G)
    return _emit_result(result.size, result.witness)


def cmd_reduce_vc(args) -> int:
    source = load(parse_graph, args.source).to_networkx()
    if args.kind == 'fixed':
        inst = thm2_instance(source)
        _emit(format_graph(inst.graph))
        if args.coloring_out:
            Path(args.coloring_out).write_text(format_coloring(inst.coloring))
    else:
        inst = thm4_instance(source)
        _emit(format_graph(inst.graph))
        if args.coloring_out:
            Path(args.coloring_out).write_text(format_coloring(inst.coloring()))
    return 0


# Latin square commands

def _cell_text(cell) -> str:
    return f"{cell[0]} {cell[1]} {cell[2]}"


def cmd_latin_descents(args) -> int:
    L = load(parse_square, args.square)
    for d in latin_descents(L):
        _emit(f"{_cell_text(d.y_cell)} | {_cell_text(d.row_mate)} | {_cell_text(d.col_mate)}\n")
    return 0


def _selected_kind(args) -> Optional[CoverKind]:
    if args.rows:
        return CoverKind.ROW
    if args.cols:
        return CoverKind.COL
    if args.entries:
        return CoverKind.ENTRY
    return None


def cmd_latin_gds(args) -> int:
    L = load(parse_square, args.square)
    kind = _selected_kind(args)
    if kind is not None:
        _, defining = min_cover_gds(L, kind, exact=True)
        key = 'latin_numbers.min_gds'
    else:
        result = min_latin_gds(L, exact=True if args.exact else None)
        defining = result.witness
        key = 'latin_numbers.min_gds' if result.exact else 'latin_numbers.min_gds_heuristic'

    _emit(_render(key, size=len(defining)))
    _emit(format_cells(defining.as_cells()))
    if args.defining_out:
        Path(args.defining_out).write_text(format_partial_square(defining))
    return 0


def cmd_latin_verify(args) -> int:
    L = load(parse_square, args.square)
    D = load(parse_partial_square, args.defining)
    ok = verify_latin_gds(L, D)
    _emit("true\n" if ok else "false\n")
    return 0 if ok else 1


def _emit_completion(completion) -> int:
    if completion.success:
        _emit(format_square(completion.square))
        return 0
    row, col = completion.failed_cell
    _emit(_render('completion.failure', row=row, col=col))
    return 1


def cmd_latin_complete(args) -> int:
    if args.partial:
        return _emit_completion(greedy_complete(load(parse_partial_square, args.partial)))
    return _emit_completion(greedy_square(args.order))


def cmd_latin_bound(args) -> int:
    squares = [load(parse_square, path) for path in args.square]
    jobs = max(1, args.jobs)

    def report(L):
        return bound_report(L, exact=args.exact)

    if jobs > 1 and len(squares) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(report, squares))
    else:
        reports = [report(L) for L in squares]

    for r in reports:
        _emit(_render('bound_report.summary', n=r.n, cover_size=r.cover_size, bound=r.bound,
                      holds=r.holds, exact=r.exact))
        if args.cells:
            _emit(format_cells(r.cells))
    return 0 if all(r.holds for r in reports) else 1


def cmd_latin_random(args) -> int:
    seed = get_solver_config().default_seed if args.seed is None else args.seed
    _emit(format_square(random_latin(args.order, seed)))
    return 0


def cmd_latin_g(args) -> int:
    _emit(_render('latin_numbers.g_number', n=args.order, value=g_number(args.order)))
    return 0


# Secret sharing commands

def cmd_share_deal(args) -> int:
    L = load(parse_square, args.square)
    A = load(parse_access_structure, args.access)
    seed = get_solver_config().default_seed if args.seed is None else args.seed
    bundle = deal(L, A, seed)
    if args.out_dir:
        for path in ShareStorage(args.out_dir).save_bundle(bundle):
            _emit(f"{path}\n")
    else:
        blocks = [format_share(bundle.n, set_id, participant, cells)
                  for (participant, set_id), cells in sorted(bundle.pieces.items())]
        _emit("\n".join(blocks))
    return 0


def cmd_share_reconstruct(args) -> int:
    bundle = ShareStorage('.').load_bundle(args.shares)
    set_ids = sorted({set_id for _, set_id in bundle.pieces})
    if len(set_ids) > 1:
        raise InputError(f"share files belong to more than one authorized set: {', '.join(set_ids)}")
    return _emit_completion(reconstruct(bundle.pieces.values(), bundle.n))


def cmd_share_audit(args) -> int:
    L = load(parse_square, args.square)
    A = load(parse_access_structure, args.access)
    bundle = ShareStorage(args.shares_dir).load_bundle()
    result = audit(L, A, bundle)
    _emit(_render('audit_report.header', n=result.n, set_count=len(result.sets),
                  trivially_recoverable=result.trivially_recoverable))
    for entry in result.sets:
        survivors = [p for p, ok in entry.survives_dropout.items() if ok]
        _emit(_render('audit_report.set_line', set_id=entry.set_id, size=entry.size,
                      reconstructs=entry.reconstructs, leaks=entry.leaks, survivors=survivors))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='gds', description="Greedy defining set toolkit")
    parser.add_argument('-v', '--verbose', action='count', default=0, help="-v for info, -vv for debug logs")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('color', help="first-fit coloring, optionally from a defining set")
    p.add_argument('--graph', required=True)
    p.add_argument('--defining')
    p.set_defaults(func=cmd_color)

    p = sub.add_parser('descents', help="descents of a proper coloring")
    p.add_argument('--graph', required=True)
    p.add_argument('--coloring', required=True)
    p.set_defaults(func=cmd_descents)

    p = sub.add_parser('gdn', help="exact greedy defining number of an ordered graph")
    p.add_argument('--graph', required=True)
    p.add_argument('--oracle', action='store_true', help="brute-force size only (tiny graphs)")
    p.set_defaults(func=cmd_gdn)

    p = sub.add_parser('gdn-fixed', help="greedy defining number for a fixed coloring")
    p.add_argument('--graph', required=True)
    p.add_argument('--coloring', required=True)
    p.set_defaults(func=cmd_gdn_fixed)

    p = sub.add_parser('forest-gdn', help="greedy defining number of a forest")
    p.add_argument('--graph', required=True)
    p.set_defaults(func=cmd_forest_gdn)

    p = sub.add_parser('reduce-vc', help="emit the vertex cover reduction instance of a graph")
    p.add_argument('--source', required=True, help="source graph file (its order is ignored)")
    p.add_argument('--kind', choices=['fixed', 'bipartite'], default='fixed')
    p.add_argument('--coloring-out', help="write the instance coloring here")
    p.set_defaults(func=cmd_reduce_vc)

    p = sub.add_parser('latin-descents', help="descent triples of a Latin square")
    p.add_argument('--square', required=True)
    p.set_defaults(func=cmd_latin_descents)

    p = sub.add_parser('latin-gds', help="minimum (or cover-derived) greedy defining set of a Latin square")
    p.add_argument('--square', required=True)
    kinds = p.add_mutually_exclusive_group()
    kinds.add_argument('--rows', action='store_true')
    kinds.add_argument('--cols', action='store_true')
    kinds.add_argument('--entries', action='store_true')
    p.add_argument('--exact', action='store_true')
    p.add_argument('--defining-out', help="write the defining set here as a partial square file")
    p.set_defaults(func=cmd_latin_gds)

    p = sub.add_parser('latin-verify', help="check that a partial square defines a Latin square")
    p.add_argument('--square', required=True)
    p.add_argument('--defining', required=True, help="partial square file")
    p.set_defaults(func=cmd_latin_verify)

    p = sub.add_parser('latin-complete', help="greedy completion of a partial square")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument('--partial')
    source.add_argument('--order', type=int, help="complete the empty square of this order")
    p.set_defaults(func=cmd_latin_complete)

    p = sub.add_parser('latin-bound', help="cover of E(L) against the n^2 - n ln(4n)/4 bound")
    p.add_argument('--square', required=True, nargs='+')
    p.add_argument('--exact', action='store_true')
    p.add_argument('--cells', action='store_true', help="also print the cover cells")
    p.add_argument('--jobs', type=int, default=1)
    p.set_defaults(func=cmd_latin_bound)

    p = sub.add_parser('latin-random', help="random Latin square")
    p.add_argument('--order', type=int, required=True)
    p.add_argument('--seed', type=int)
    p.set_defaults(func=cmd_latin_random)

    p = sub.add_parser('latin-g', help="g(n) by exhaustive search")
    p.add_argument('--order', type=int, required=True)
    p.set_defaults(func=cmd_latin_g)

    p = sub.add_parser('share-deal', help="deal shares of a Latin square key")
    p.add_argument('--square', required=True)
    p.add_argument('--access', required=True, help="access structure YAML")
    p.add_argument('--seed', type=int)
    p.add_argument('--out-dir')
    p.set_defaults(func=cmd_share_deal)

    p = sub.add_parser('share-reconstruct', help="pool share files and complete")
    p.add_argument('shares', nargs='+')
    p.set_defaults(func=cmd_share_reconstruct)

    p = sub.add_parser('share-audit', help="check every authorized set rebuilds the key")
    p.add_argument('--square', required=True)
    p.add_argument('--access', required=True)
    p.add_argument('--shares-dir', required=True)
    p.set_defaults(func=cmd_share_audit)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    load_dotenv()
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    set_template_engine(TemplateEngine(get_solver_config().template_path))

    try:
        return args.func(args)
    except GDSError as e:
        logger.debug("command failed", exc_info=True)
        sys.stderr.write(f"gds: {e}\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
