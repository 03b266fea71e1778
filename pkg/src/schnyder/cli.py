"""Command-line front end.

Inputs are either file paths or fixture names (see ``schnyder info --list``).
Output is one ``key value`` pair per line. Exit status: 0 on success, 2 when
the input fails validation or the checked property, 3 when a budget runs out.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import fixtures, formats, oracle
from .completion import (
    NotEdgeLabeling,
    NotSchnyder,
    WoodError,
    check_wood,
    classify,
    complete,
    extract_labeling,
    gamma,
    is_schnyder_orientation,
    labeling_to_orientation,
    to_colored_wood,
)
from .generators import DegenerateGrid, gen_grid
from .lattice import (
    BudgetExceeded,
    check_hasse_axioms,
    enumerate_lattice,
    flippable,
)
from .surface_map import (
    NotACycle,
    Orientation,
    SurfaceMap,
    is_triangulation,
    outdegrees,
    validate_assumptions,
)
from .toroidal import IterationBudgetExceeded, crossing_class, schnyderize

OK, INVALID, BUDGET = 0, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = INVALID):
        super().__init__(message)
        self.code = code


def env_budget() -> int | None:
    raw = os.environ.get("SCHNYDER_BUDGET")
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"SCHNYDER_BUDGET must be an integer, got {raw!r}") from None


def emit(out, key: str, *values) -> None:
    out.write(" ".join([key, *(_fmt(v) for v in values)]) + "\n")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    return str(v)


# -- input resolution ---------------------------------------------------------------


def _read(source: str) -> str | None:
    path = Path(source)
    return path.read_text() if path.is_file() else None


def load_input(source: str) -> fixtures.Fixture:
    text = _read(source)
    if text is None:
        try:
            return fixtures.load(source)
        except fixtures.UnknownFixture:
            raise CliError(f"no such file or fixture: {source}") from None
    smap, header = formats.parse_map(text)
    return fixtures.Fixture(source, smap, None, header)


def load_orientation(smap: SurfaceMap, source: str | None, fallback: Orientation | None) -> Orientation:
    if source is None:
        if fallback is None:
            raise CliError("an orientation is required")
        return fallback
    text = _read(source)
    if text is None:
        try:
            fx = fixtures.load(source)
        except fixtures.UnknownFixture:
            raise CliError(f"no such file or fixture: {source}") from None
        if fx.orientation is None or fx.map != smap:
            raise CliError(f"fixture {source} is not an orientation of this map")
        return fx.orientation
    return formats.parse_orientation(text, smap)[0]


def _map_and_orientation(args) -> tuple[SurfaceMap, Orientation]:
    fx = load_input(args.map)
    return fx.map, load_orientation(fx.map, args.orientation, fx.orientation)


def _hat_orientation(args, smap: SurfaceMap, D: Orientation):
    comp = complete(smap)
    if getattr(args, "completion", False):
        return comp, D
    return comp, comp.lift(D)


def _write(path: str | None, text: str, out) -> None:
    if path is None:
        out.write(text)
    elif path == "-":
        out.write(text)
    else:
        Path(path).write_text(text)


# -- commands -----------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    fx = load_input(args.map)
    smap = fx.map
    report = validate_assumptions(smap)
    emit(out, "genus", smap.genus)
    emit(out, "contractible_loops", len(report.contractible_loops))
    emit(out, "contractible_pairs", len(report.contractible_pairs))
    emit(out, "valid", report.ok)
    return OK if report.ok else INVALID


def cmd_info(args, out) -> int:
    if args.list:
        for name in fixtures.names():
            emit(out, "fixture", name)
        return OK
    if args.map is None:
        raise CliError("info needs a map or --list")
    fx = load_input(args.map)
    smap = fx.map
    emit(out, "genus", smap.genus)
    emit(out, "n", smap.n)
    emit(out, "m", smap.m)
    emit(out, "f", smap.f)
    emit(out, "triangulation", is_triangulation(smap))
    emit(out, "reconstructed", fx.reconstructed)
    for c in smap.basis.cycles:
        emit(out, "basis", c.darts)
    if fx.orientation is not None:
        emit(out, "outdegrees", outdegrees(smap, fx.orientation))
    return OK


def cmd_complete(args, out) -> int:
    smap = load_input(args.map).map
    comp = complete(smap)
    hat = comp.map
    emit(out, "n", hat.n)
    emit(out, "m", hat.m)
    emit(out, "f", hat.f)
    emit(out, "genus", hat.genus)
    if args.out:
        Path(args.out).write_text(formats.format_map(hat, {"completion-of": args.map}))
    return OK


def cmd_check(args, out) -> int:
    smap, D = _map_and_orientation(args)
    comp, hat = _hat_orientation(args, smap, D)
    report = is_schnyder_orientation(comp, hat)
    emit(out, "mod3", report.mod3)
    emit(out, "gammas", report.gammas)
    emit(out, "schnyder", report.schnyder)
    if report.schnyder:
        emit(out, "type", report.gammas)
    return OK if report.schnyder else INVALID


def cmd_label(args, out) -> int:
    smap, D = _map_and_orientation(args)
    comp, hat = _hat_orientation(args, smap, D)
    try:
        labels = extract_labeling(comp, hat, f0=args.f0, base=args.base)
    except NotSchnyder as exc:
        emit(out, "schnyder", False)
        emit(out, "error", str(exc))
        return INVALID
    cls = classify(smap, labels)
    emit(out, "edge_types", cls.edge_types)
    emit(out, "vertex_types", cls.vertex_types)
    emit(out, "face_types", cls.face_types)
    if args.out:
        Path(args.out).write_text(formats.format_labeling(labels))
    else:
        out.write(formats.format_labeling(labels))
    return OK


def _labels_for(args, smap: SurfaceMap) -> tuple[int, ...]:
    if args.labels:
        text = _read(args.labels)
        if text is None:
            raise CliError(f"no such file: {args.labels}")
        return formats.parse_labeling(text, smap)[0]
    fx = load_input(args.map)
    D = load_orientation(smap, args.orientation, fx.orientation)
    comp, hat = _hat_orientation(args, smap, D)
    try:
        return extract_labeling(comp, hat)
    except NotSchnyder as exc:
        raise CliError(str(exc)) from None


def cmd_wood(args, out) -> int:
    smap = load_input(args.map).map
    labels = _labels_for(args, smap)
    try:
        labeling_to_orientation(complete(smap), labels)
        wood = to_colored_wood(smap, labels)
        check_wood(smap, wood)
    except (NotEdgeLabeling, WoodError) as exc:
        emit(out, "wood", False)
        emit(out, "error", str(exc))
        return INVALID
    emit(out, "wood", True)
    emit(out, "outdegrees", [wood.outdegree(smap, v) for v in range(smap.n)])
    emit(out, "edge_types", [wood.edge_type(smap, e) for e in range(smap.m)])
    if smap.genus == 1 and is_triangulation(smap):
        emit(out, "crossing", crossing_class(smap, wood))
    if args.emit_dot:
        _write(args.emit_dot, formats.wood_dot(smap, wood), out)
    return OK


def cmd_gamma(args, out) -> int:
    smap, D = _map_and_orientation(args)
    comp, hat = _hat_orientation(args, smap, D)
    if args.cycle:
        cycles = [tuple(args.cycle)]
    else:
        cycles = [c.darts for c in smap.basis.cycles]
    for c in cycles:
        try:
            emit(out, "gamma", gamma(comp, hat, c), "cycle", c)
        except NotACycle as exc:
            raise CliError(f"not a cycle: {exc}") from None
    return OK


def cmd_lattice(args, out) -> int:
    smap, D = _map_and_orientation(args)
    cap = args.max_nodes or env_budget() or 100_000
    try:
        H = enumerate_lattice(smap, D, f0=args.f0, max_nodes=cap)
    except BudgetExceeded as exc:
        raise CliError(str(exc), BUDGET) from None
    check = check_hasse_axioms(H)
    src, snk = H.sources(), H.sinks()
    emit(out, "nodes", len(H))
    emit(out, "arcs", len(H.arcs))
    emit(out, "rigid_edges", sorted(H.reduced.rigid))
    emit(out, "reduced_faces", H.reduced.num_faces)
    emit(out, "hasse_ok", check.ok)
    if len(src) == 1 and len(snk) == 1:
        emit(out, "min", H.nodes[src[0]].tails)
        emit(out, "max", H.nodes[snk[0]].tails)
    if args.emit_dot:
        def dots(i):
            return flippable(smap, H.nodes[i], H.reduced, args.f0)

        _write(args.emit_dot, formats.hasse_dot(H, dots), out)
    return OK if check.ok else INVALID


def cmd_schnyderize(args, out) -> int:
    smap = load_input(args.map).map
    try:
        result = schnyderize(smap, seed=args.seed, budget=env_budget())
    except IterationBudgetExceeded as exc:
        raise CliError(str(exc), BUDGET) from None
    except ValueError as exc:
        raise CliError(str(exc)) from None
    emit(out, "iterations", result.iterations)
    emit(out, "fallback", result.used_fallback)
    emit(out, "type", result.certificate.gammas)
    for c in result.certificate.cycles:
        emit(out, "middle_cycle", c)
    emit(out, "crossing", crossing_class(smap, result.wood))
    prefix = args.out_prefix
    if prefix:
        Path(f"{prefix}.orient").write_text(formats.format_orientation(result.orientation))
        Path(f"{prefix}.angles").write_text(formats.format_labeling(result.labeling))
        Path(f"{prefix}.dot").write_text(formats.wood_dot(smap, result.wood))
    else:
        out.write(formats.format_orientation(result.orientation))
    return OK


def cmd_oracle(args, out) -> int:
    if not args.exhaustive:
        raise CliError("oracle commands enumerate exhaustively; pass --exhaustive")
    fx = load_input(args.map)
    smap = fx.map
    cap = env_budget()
    budget = oracle.EnumerationBudget(max_orientations=cap) if cap else oracle.DEFAULT_BUDGET
    try:
        if args.what == "count":
            comp = complete(smap)
            total = schnyder = 0
            for hat in oracle.iter_mod3_orientations(comp, budget):
                total += 1
                schnyder += oracle.schnyder_check_exhaustive(comp, hat)
            emit(out, "mod3_orientations", total)
            emit(out, "schnyder", schnyder)
            return OK
        D = load_orientation(smap, args.orientation, fx.orientation)
        if args.what == "check":
            comp = complete(smap)
            ok = oracle.schnyder_check_exhaustive(comp, comp.lift(D))
            emit(out, "schnyder", ok)
            return OK if ok else INVALID
        if args.what == "lattice":
            nodes = oracle.homologous_orientations_exhaustive(smap, D, budget)
            emit(out, "nodes", len(nodes))
            return OK
        if args.what == "rigid":
            emit(out, "rigid_edges", sorted(oracle.rigid_edges_exhaustive(smap, D, budget)))
            return OK
    except oracle.BudgetExceeded as exc:
        raise CliError(str(exc), BUDGET) from None
    raise CliError(f"unknown oracle command {args.what}")


def cmd_gen(args, out) -> int:
    try:
        smap = gen_grid(args.a, args.b, strict=not args.allow_small)
    except DegenerateGrid as exc:
        raise CliError(str(exc)) from None
    _write(args.out, formats.format_map(smap, {"name": f"grid-{args.a}x{args.b}"}), out)
    return OK


def cmd_export_dot(args, out) -> int:
    fx = load_input(args.map)
    smap = fx.map
    if args.labels or args.wood:
        labels = _labels_for(args, smap)
        text = formats.wood_dot(smap, to_colored_wood(smap, labels, strict=False))
    else:
        D = load_orientation(smap, args.orientation, fx.orientation)
        text = formats.orientation_dot(smap, D)
    _write(args.out, text, out)
    return OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schnyder", description="Schnyder woods on orientable surfaces")
    sub = p.add_subparsers(dest="command", required=True)

    def with_map(name, func, help, orientation=False, completion=False):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("map", help="map file or fixture name")
        if orientation:
            sp.add_argument("orientation", nargs="?", help="orientation file or fixture name")
        if completion:
            sp.add_argument("--completion", action="store_true", help="orientation is already on the completion")
        sp.set_defaults(func=func)
        return sp

    with_map("validate", cmd_validate, "check the standing assumptions on a map")
    sp = sub.add_parser("info", help="basic counts of a map")
    sp.add_argument("map", nargs="?")
    sp.add_argument("--list", action="store_true", help="list bundled fixtures")
    sp.set_defaults(func=cmd_info)
    sp = with_map("complete", cmd_complete, "build the primal-dual completion")
    sp.add_argument("--out")
    with_map("check", cmd_check, "test whether an orientation is Schnyder", True, True)
    sp = with_map("label", cmd_label, "extract the angle labeling of a Schnyder orientation", True, True)
    sp.add_argument("--f0", type=int, default=0, help="completion face that gets the base color")
    sp.add_argument("--base", type=int, default=0)
    sp.add_argument("--out")
    sp = with_map("wood", cmd_wood, "colored wood of a Schnyder orientation or labeling", True, True)
    sp.add_argument("--labels", help="labeling file instead of an orientation")
    sp.add_argument("--emit-dot", metavar="PATH")
    sp = with_map("gamma", cmd_gamma, "gamma of basis cycles or of a given cycle", True, True)
    sp.add_argument("--cycle", type=int, nargs="+", help="darts of a cycle of the map")
    sp = with_map("lattice", cmd_lattice, "Hasse diagram of homologous orientations", True)
    sp.add_argument("--f0", type=int, default=0)
    sp.add_argument("--max-nodes", type=int)
    sp.add_argument("--emit-dot", metavar="PATH")
    sp = with_map("schnyderize", cmd_schnyderize, "Schnyder wood of a toroidal triangulation")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out-prefix")

    sp = sub.add_parser("oracle", help="brute-force counterparts of the fast commands")
    sp.add_argument("what", choices=["check", "lattice", "rigid", "count"])
    sp.add_argument("map")
    sp.add_argument("orientation", nargs="?")
    sp.add_argument("--exhaustive", action="store_true")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", help="generate maps")
    gen = sp.add_subparsers(dest="kind", required=True)
    g = gen.add_parser("grid", help="triangulated torus grid")
    g.add_argument("a", type=int)
    g.add_argument("b", type=int)
    g.add_argument("--allow-small", action="store_true", help="accept sides below 3 when the grid is still valid")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    sp = with_map("export-dot", cmd_export_dot, "DOT drawing of an orientation or wood", True, True)
    sp.add_argument("--labels")
    sp.add_argument("--wood", action="store_true", help="color edges by the extracted wood")
    sp.add_argument("--out")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except formats.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
