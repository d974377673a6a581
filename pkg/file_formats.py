"""
Text File Formats
Parsers and serializers for graphs, colorings, defining sets, Latin squares,
partial squares, access structures and share files
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import yaml

from gds_errors import InputError, ParseError
from greedy_core import OrderedGraph, PartialColoring
from latin_squares import Cell, LatinSquare, PartialLatinSquare
from secret_sharing import AccessStructure

logger = logging.getLogger(__name__)

SHARE_MAGIC = "GDS-SHARE v1"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """(line number, stripped line) for every line that is neither blank nor a # comment"""
    result = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith('#'):
            result.append((number, line))
    return result


def _ints(line: str, number: int, path: Optional[str], expected: Optional[int] = None) -> List[int]:
    try:
        values = [int(token) for token in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", path, number)
    if expected is not None and len(values) != expected:
        raise ParseError(f"expected {expected} integers, got {len(values)}", path, number)
    return values


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", path)


def _parse(loader, text: str, path: Optional[str]):
    """Run a parser, turning validation errors into ParseErrors that name the file"""
    try:
        return loader(text, path)
    except ParseError:
        raise
    except InputError as e:
        raise ParseError(str(e), path)


# Graph: "n m", the order on one line, then m lines "u v"

def parse_graph(text: str, path: Optional[str] = None) -> OrderedGraph:
    def build(text, path):
        lines = _content_lines(text)
        if not lines:
            raise ParseError("empty graph file", path)
        number, header = lines[0]
        n, m = _ints(header, number, path, expected=2)
        if n < 0 or m < 0:
            raise ParseError("vertex and edge counts must be non-negative", path, number)
        rest = lines[1:]
        if n > 0:
            if not rest:
                raise ParseError("missing order line", path)
            number, order_line = rest[0]
            order = _ints(order_line, number, path, expected=n)
            rest = rest[1:]
        else:
            order = []
        if len(rest) != m:
            raise ParseError(f"header declares {m} edges, file has {len(rest)}", path)
        edges = [tuple(_ints(line, number, path, expected=2)) for number, line in rest]
        return OrderedGraph(n, edges, order)

    return _parse(build, text, path)


def format_graph(G: OrderedGraph) -> str:
    lines = [f"{G.n} {len(G.edges)}", " ".join(str(v) for v in G.order)]
    lines.extend(f"{u} {v}" for u, v in G.sorted_edges())
    return "\n".join(lines) + "\n"


# Coloring: n integers, the k-th is the color of vertex k

def parse_coloring(text: str, path: Optional[str] = None) -> Dict[int, int]:
    values: List[int] = []
    for number, line in _content_lines(text):
        values.extend(_ints(line, number, path))
    return {v: c for v, c in enumerate(values, start=1)}


def format_coloring(coloring: Dict[int, int]) -> str:
    return " ".join(str(coloring[v]) for v in sorted(coloring)) + "\n"


# Defining set: lines "v c"

def parse_defining_set(text: str, path: Optional[str] = None) -> PartialColoring:
    result: PartialColoring = {}
    for number, line in _content_lines(text):
        v, c = _ints(line, number, path, expected=2)
        if v in result and result[v] != c:
            raise ParseError(f"vertex {v} listed with colors {result[v]} and {c}", path, number)
        result[v] = c
    return result


def format_defining_set(S: PartialColoring) -> str:
    return "".join(f"{v} {c}\n" for v, c in sorted(S.items()))


# Latin square: "n", then n rows of n integers

def parse_square(text: str, path: Optional[str] = None) -> LatinSquare:
    def build(text, path):
        lines = _content_lines(text)
        if not lines:
            raise ParseError("empty square file", path)
        number, header = lines[0]
        (n,) = _ints(header, number, path, expected=1)
        if len(lines) - 1 != n:
            raise ParseError(f"order {n} needs {n} rows, file has {len(lines) - 1}", path)
        return LatinSquare([_ints(line, number, path, expected=n) for number, line in lines[1:]])

    return _parse(build, text, path)


def format_square(L: LatinSquare) -> str:
    lines = [str(L.n)] + [" ".join(str(x) for x in row) for row in L.grid]
    return "\n".join(lines) + "\n"


# Partial square: "n", then lines "r c v"

def parse_partial_square(text: str, path: Optional[str] = None) -> PartialLatinSquare:
    def build(text, path):
        lines = _content_lines(text)
        if not lines:
            raise ParseError("empty partial square file", path)
        number, header = lines[0]
        (n,) = _ints(header, number, path, expected=1)
        cells = [tuple(_ints(line, number, path, expected=3)) for number, line in lines[1:]]
        return PartialLatinSquare.from_cells(n, cells)

    return _parse(build, text, path)


def format_cells(cells: Sequence[Cell]) -> str:
    return "".join(f"{r} {c} {v}\n" for r, c, v in cells)


def format_partial_square(P: PartialLatinSquare) -> str:
    return f"{P.n}\n" + format_cells(P.as_cells())


# Access structure (YAML): participants: [...], sets: {set_id: [members]}

def parse_access_structure(text: str, path: Optional[str] = None) -> AccessStructure:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ParseError(f"invalid YAML: {e}", path)
    if not isinstance(data, dict) or not isinstance(data.get('sets'), dict):
        raise ParseError("access structure needs a 'sets' mapping of set id to members", path)
    sets = data['sets']
    participants = data.get('participants')
    if participants is None:
        participants = sorted({str(m) for members in sets.values() for m in (members or [])})
    if not isinstance(participants, list):
        raise ParseError("'participants' must be a list", path)
    for set_id, members in sets.items():
        if members is not None and not isinstance(members, list):
            raise ParseError(f"members of set '{set_id}' must be a list", path)
    try:
        return AccessStructure(participants, {k: v or [] for k, v in sets.items()})
    except InputError as e:
        raise ParseError(str(e), path)


# Share file: header lines, then "r c v"

def format_share(n: int, set_id: str, participant: str, cells: Sequence[Cell]) -> str:
    header = [SHARE_MAGIC, f"n={n}", f"set={set_id}", f"participant={participant}", f"cells={len(cells)}"]
    return "\n".join(header) + "\n" + format_cells(cells)


def parse_share(text: str, path: Optional[str] = None) -> Tuple[int, str, str, List[Cell]]:
    """
    Read one share file

    Returns:
        (n, set id, participant, cells)
    """
    lines = _content_lines(text)
    if not lines or lines[0][1] != SHARE_MAGIC:
        raise ParseError(f"not a share file (expected '{SHARE_MAGIC}' header)", path, lines[0][0] if lines else None)

    fields: Dict[str, str] = {}
    for number, line in lines[1:5]:
        key, sep, value = line.partition('=')
        if not sep:
            raise ParseError(f"expected key=value header, got {line!r}", path, number)
        fields[key.strip()] = value.strip()
    missing = [k for k in ('n', 'set', 'participant', 'cells') if k not in fields]
    if missing:
        raise ParseError(f"share header misses {missing}", path)
    try:
        n, count = int(fields['n']), int(fields['cells'])
    except ValueError:
        raise ParseError("n and cells must be integers", path)

    body = lines[5:]
    if len(body) != count:
        raise ParseError(f"header declares {count} cells, file has {len(body)}", path)
    cells = [tuple(_ints(line, number, path, expected=3)) for number, line in body]
    return n, fields['set'], fields['participant'], cells


def load(parser, path: str):
    """Read and parse one file with the given parser"""
    logger.debug(f"loading {path} with {parser.__name__}")
    return parser(_read(path), path)
