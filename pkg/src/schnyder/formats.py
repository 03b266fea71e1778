"""Line-oriented text formats for maps, orientations, flows and labelings, plus DOT export.

Every format is one directive per line; ``#`` starts a comment. Comment lines
of the form ``# key: value`` before the first directive are kept as header
metadata (fixtures use ``# reconstructed: true``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .surface_map import MapError, Orientation, SurfaceMap


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_HEADER = re.compile(r"#\s*([A-Za-z_][\w-]*)\s*:\s*(.*?)\s*$")


@dataclass
class Parsed:
    header: dict[str, str] = field(default_factory=dict)
    lines: list[tuple[int, list[str]]] = field(default_factory=list)


def _tokenize(text: str) -> Parsed:
    out = Parsed()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            m = _HEADER.match(stripped)
            if m and not out.lines:
                out.header[m.group(1).lower()] = m.group(2)
            continue
        body = stripped.split("#", 1)[0].split()
        if body:
            out.lines.append((lineno, body))
    return out


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


# -- maps ---------------------------------------------------------------------------


def parse_map(text: str) -> tuple[SurfaceMap, dict[str, str]]:
    parsed = _tokenize(text)
    num = None
    alpha: dict[int, int] = {}
    sigma: dict[int, int] = {}
    for lineno, tok in parsed.lines:
        key, args = tok[0], _ints(tok[1:], lineno)
        if key == "darts":
            if num is not None:
                raise FormatError("duplicate 'darts' directive", lineno)
            if len(args) != 1 or args[0] <= 0 or args[0] % 2:
                raise FormatError("'darts' takes one positive even count", lineno)
            num = args[0]
            continue
        if num is None:
            raise FormatError(f"'{key}' before 'darts'", lineno)
        for d in args:
            if not 0 <= d < num:
                raise FormatError(f"dart {d} out of range 0..{num - 1}", lineno)
        if key == "edge":
            if len(args) != 2 or args[0] == args[1]:
                raise FormatError("'edge' takes two distinct darts", lineno)
            for d in args:
                if d in alpha:
                    raise FormatError(f"dart {d} already paired", lineno)
            alpha[args[0]], alpha[args[1]] = args[1], args[0]
        elif key == "vertex":
            if not args:
                raise FormatError("'vertex' needs at least one dart", lineno)
            for d in args:
                if d in sigma:
                    raise FormatError(f"dart {d} already in a vertex rotation", lineno)
            if len(set(args)) != len(args):
                raise FormatError("dart repeated in a vertex rotation", lineno)
            for x, y in zip(args, args[1:] + args[:1]):
                sigma[x] = y
        else:
            raise FormatError(f"unknown directive '{key}'", lineno)
    if num is None:
        raise FormatError("missing 'darts' directive")
    missing_e = [d for d in range(num) if d not in alpha]
    missing_v = [d for d in range(num) if d not in sigma]
    if missing_e:
        raise FormatError(f"darts without an edge: {missing_e}")
    if missing_v:
        raise FormatError(f"darts without a vertex: {missing_v}")
    try:
        smap = SurfaceMap([alpha[d] for d in range(num)], [sigma[d] for d in range(num)])
    except MapError as exc:
        raise FormatError(str(exc)) from exc
    return smap, parsed.header


def format_map(smap: SurfaceMap, header: dict[str, str] | None = None) -> str:
    lines = [f"# {k}: {v}" for k, v in (header or {}).items()]
    lines.append(f"darts {smap.num_darts}")
    lines += [f"edge {a} {b}" for a, b in smap.edges]
    lines += ["vertex " + " ".join(map(str, rot)) for rot in smap.vertices]
    return "\n".join(lines) + "\n"


# -- orientations, flows, labelings ---------------------------------------------


def parse_orientation(text: str, smap: SurfaceMap) -> tuple[Orientation, dict[str, str]]:
    parsed = _tokenize(text)
    tails: dict[int, int] = {}
    for lineno, tok in parsed.lines:
        if tok[0] != "orient" or len(tok) != 2:
            raise FormatError("expected 'orient <dart>'", lineno)
        (d,) = _ints(tok[1:], lineno)
        if not 0 <= d < smap.num_darts:
            raise FormatError(f"dart {d} out of range", lineno)
        e = smap.edge_of[d]
        if e in tails:
            raise FormatError(f"edge {e} oriented twice", lineno)
        tails[e] = d
    missing = [e for e in range(smap.m) if e not in tails]
    if missing:
        raise FormatError(f"edges without an orientation: {missing}")
    return Orientation(tuple(tails[e] for e in range(smap.m))), parsed.header


def format_orientation(D: Orientation, header: dict[str, str] | None = None) -> str:
    lines = [f"# {k}: {v}" for k, v in (header or {}).items()]
    lines += [f"orient {d}" for d in D.tails]
    return "\n".join(lines) + "\n"


def parse_flow(text: str, smap: SurfaceMap) -> tuple[tuple[int, ...], dict[str, str]]:
    parsed = _tokenize(text)
    values = [0] * smap.m
    seen = set()
    for lineno, tok in parsed.lines:
        if tok[0] != "flow" or len(tok) != 3:
            raise FormatError("expected 'flow <edge> <value>'", lineno)
        e, v = _ints(tok[1:], lineno)
        if not 0 <= e < smap.m:
            raise FormatError(f"edge {e} out of range", lineno)
        if e in seen:
            raise FormatError(f"edge {e} listed twice", lineno)
        seen.add(e)
        values[e] = v
    return tuple(values), parsed.header


def format_flow(flow: Sequence[int]) -> str:
    return "".join(f"flow {e} {v}\n" for e, v in enumerate(flow) if v)


def parse_labeling(text: str, smap: SurfaceMap) -> tuple[tuple[int, ...], dict[str, str]]:
    parsed = _tokenize(text)
    labels: dict[int, int] = {}
    for lineno, tok in parsed.lines:
        if tok[0] != "angle" or len(tok) != 3:
            raise FormatError("expected 'angle <dart> <color>'", lineno)
        d, c = _ints(tok[1:], lineno)
        if not 0 <= d < smap.num_darts:
            raise FormatError(f"dart {d} out of range", lineno)
        if c not in (0, 1, 2):
            raise FormatError(f"color {c} not in 0, 1, 2", lineno)
        if d in labels:
            raise FormatError(f"angle {d} labeled twice", lineno)
        labels[d] = c
    missing = [d for d in range(smap.num_darts) if d not in labels]
    if missing:
        raise FormatError(f"angles without a label: {missing}")
    return tuple(labels[d] for d in range(smap.num_darts)), parsed.header


def format_labeling(labels: Sequence[int]) -> str:
    return "".join(f"angle {d} {c}\n" for d, c in enumerate(labels))


def format_walks(walks: Iterable[Sequence[int]], key: str = "cycle") -> str:
    return "".join(f"{key} " + " ".join(map(str, w)) + "\n" for w in walks)


# -- DOT export ---------------------------------------------------------------------

COLORS = ("red", "blue", "green")


def wood_dot(smap: SurfaceMap, wood) -> str:
    """Edges drawn with one arrowhead per outgoing direction, colored by wood color."""
    lines = ["digraph wood {"]
    lines += [f"  v{v};" for v in range(smap.n)]
    for e, (a, b) in enumerate(smap.edges):
        outs = [d for d in (a, b) if wood.outgoing[d]]
        if not outs:
            color = COLORS[wood.color[a]]
            lines.append(f'  v{smap.origin(a)} -> v{smap.head(a)} [dir=both, arrowhead=none, arrowtail=none, color={color}, label="e{e}"];')
        for d in outs:
            color = COLORS[wood.color[d]]
            lines.append(f'  v{smap.origin(d)} -> v{smap.head(d)} [color={color}, label="e{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def orientation_dot(smap: SurfaceMap, D: Orientation) -> str:
    lines = ["digraph orientation {"]
    lines += [f"  v{v};" for v in range(smap.n)]
    for e, d in enumerate(D.tails):
        lines.append(f'  v{smap.origin(d)} -> v{smap.head(d)} [label="e{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(H, directed_faces=None) -> str:
    """Hasse diagram; arcs carry the flipped reduced face.

    ``directed_faces(i)`` may return ``(ccw, cw)`` lists of reduced faces whose
    boundary is directed at node ``i``; they are shown as magenta and cyan dots.
    """
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i in range(len(H.nodes)):
        label = f"D{i}"
        if directed_faces is not None:
            ccw, cw = directed_faces(i)
            dots = [f'<font color="magenta">{f}</font>' for f in ccw]
            dots += [f'<font color="cyan">{f}</font>' for f in cw]
            label = f"<D{i}<br/>{' '.join(dots)}>"
            lines.append(f"  n{i} [label={label}];")
        else:
            lines.append(f'  n{i} [label="{label}"];')
    for a, b, face in H.arcs:
        lines.append(f'  n{a} -> n{b} [label="F{face}", color=magenta];')
    lines.append("}")
    return "\n".join(lines) + "\n"
