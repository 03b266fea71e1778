"""Toroidal triangulations: 3-orientations, middle walks, and Schnyder woods."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .completion import (
    ColoredWood,
    complete,
    extract_labeling,
    is_schnyder_orientation,
    orientation_gammas,
    to_colored_wood,
)
from .homology import characteristic_flow, disk_side, homology_coordinates
from .surface_map import (
    Orientation,
    SurfaceMap,
    check_cycle,
    outdegrees,
    reverse_edges,
    side_darts,
    turn_darts,
)


class NoOrientation(ValueError):
    pass


class NotContractible(ValueError):
    pass


class IterationBudgetExceeded(RuntimeError):
    pass


def find_orientation(smap: SurfaceMap, outdeg: Sequence[int]) -> Orientation:
    """An orientation with the prescribed outdegrees, via maximum flow.

    Every edge sends one unit to the endpoint that becomes its tail; vertex
    ``v`` accepts at most ``outdeg[v]`` units.
    """
    if sum(outdeg) != smap.m:
        raise NoOrientation(f"outdegrees sum to {sum(outdeg)}, map has {smap.m} edges")
    net = nx.DiGraph()
    for e, (a, b) in enumerate(smap.edges):
        net.add_edge("s", ("e", e), capacity=1)
        net.add_edge(("e", e), ("v", smap.origin(a)), capacity=1)
        net.add_edge(("e", e), ("v", smap.origin(b)), capacity=1)
    for v in range(smap.n):
        net.add_edge(("v", v), "t", capacity=outdeg[v])
    value, flow = nx.maximum_flow(net, "s", "t")
    if value != smap.m:
        raise NoOrientation("no orientation with these outdegrees")
    tails = []
    for e, (a, b) in enumerate(smap.edges):
        tails.append(a if flow[("e", e)][("v", smap.origin(a))] else b)
    return Orientation(tuple(tails))


def find_3_orientation(smap: SurfaceMap) -> Orientation:
    return find_orientation(smap, [3] * smap.n)


def is_3_orientation(smap: SurfaceMap, D: Orientation) -> bool:
    return all(k == 3 for k in outdegrees(smap, D))


# -- middle walks -------------------------------------------------------------------


@dataclass(frozen=True)
class MiddleWalk:
    darts: tuple[int, ...]  # every dart walked before the first repetition
    prefix: tuple[int, ...]  # the part before the terminal cycle
    cycle: tuple[int, ...]  # the terminal middle cycle

    def cycle_key(self) -> frozenset[int]:
        return frozenset(self.cycle)


def middle_successor(smap: SurfaceMap, tails: frozenset[int], d_in: int) -> int:
    """The outgoing dart at the head of ``d_in`` with one outgoing dart on each side."""
    back = smap.alpha[d_in]
    outs = []
    d = smap.sigma[back]
    while d != back:
        if d in tails:
            outs.append(d)
        d = smap.sigma[d]
    if back in tails:
        outs.append(back)
    if len(outs) != 3:
        raise ValueError(f"vertex {smap.origin(back)} has outdegree {len(outs)}, expected 3")
    return outs[1]


def middle_walk(smap: SurfaceMap, D: Orientation, start: int, tails: frozenset[int] | None = None) -> MiddleWalk:
    if tails is None:
        tails = D.tail_set()
    if start not in tails:
        raise ValueError(f"dart {start} is not directed as in the orientation")
    seen = {}
    darts = []
    d = start
    while d not in seen:
        seen[d] = len(darts)
        darts.append(d)
        d = middle_successor(smap, tails, d)
    k = seen[d]
    return MiddleWalk(tuple(darts), tuple(darts[:k]), _canonical_cycle(darts[k:]))


def _canonical_cycle(darts: Sequence[int]) -> tuple[int, ...]:
    i = darts.index(min(darts))
    return tuple(darts[i:]) + tuple(darts[:i])


def is_middle_cycle(smap: SurfaceMap, D: Orientation, cycle: Sequence[int]) -> bool:
    try:
        check_cycle(smap, cycle)
    except ValueError:
        return False
    tails = D.tail_set()
    if not all(d in tails for d in cycle):
        return False
    for i, d_out in enumerate(cycle):
        left, right = turn_darts(smap, cycle[i - 1], d_out)
        if sum(d in tails for d in left) != 1 or sum(d in tails for d in right) != 1:
            return False
    return True


def middle_walks(smap: SurfaceMap, D: Orientation) -> list[MiddleWalk]:
    tails = D.tail_set()
    return [middle_walk(smap, D, t, tails) for t in D.tails]


def middle_cycles(smap: SurfaceMap, D: Orientation) -> list[tuple[int, ...]]:
    found = {w.cycle for w in middle_walks(smap, D)}
    return sorted(found)


def disk_cycle_outflow(smap: SurfaceMap, D: Orientation, cycle: Sequence[int]) -> int:
    """Edges leaving a contractible cycle towards the disk it bounds."""
    side = disk_side(smap, cycle)
    if side is None:
        raise NotContractible("cycle does not bound a disk")
    left, right = side_darts(smap, cycle)
    inner = left if side == "left" else right
    tails = D.tail_set()
    return sum(1 for d in inner if d in tails)


def weakly_homologous(smap: SurfaceMap, c1: Sequence[int], c2: Sequence[int]) -> bool:
    """True iff the two closed walks are homologous up to sign."""
    x = homology_coordinates(smap, characteristic_flow(smap, c1))
    y = homology_coordinates(smap, characteristic_flow(smap, c2))
    return x == y or x == tuple(-v for v in y)


# -- the construction ---------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    cycles: tuple[tuple[int, ...], tuple[int, ...]]  # two middle cycles, not weakly homologous
    gammas: tuple[int, ...]  # gamma of every basis cycle


@dataclass(frozen=True)
class SchnyderizeResult:
    orientation: Orientation  # the 3-orientation of G
    hat_orientation: Orientation  # its lift to the completion
    labeling: tuple[int, ...]
    wood: ColoredWood
    certificate: Certificate
    iterations: int
    used_fallback: bool


def _two_independent(smap: SurfaceMap, cycles: Sequence[tuple[int, ...]]):
    for i, c1 in enumerate(cycles):
        for c2 in cycles[i + 1:]:
            if not weakly_homologous(smap, c1, c2):
                return c1, c2
    return None


def _exchange_step(smap: SurfaceMap, D: Orientation, walks: list[MiddleWalk], rng: random.Random) -> Orientation:
    """Reverse one middle cycle, following the exchange argument for all-parallel middle cycles."""
    by_cycle: dict[tuple[int, ...], list[MiddleWalk]] = {}
    tails = D.tail_set()
    cycles = sorted({w.cycle for w in walks})
    walk_from = {w.darts[0]: w for w in walks}
    for M in cycles:
        on_m = {smap.origin(d) for d in M}
        used = {smap.edge_of[d] for d in M}
        leaving = [
            walk_from[t] for t in sorted(tails) if smap.origin(t) in on_m and smap.edge_of[t] not in used
        ]
        by_cycle[M] = leaving
        for w in leaving:
            if w.cycle == M:
                return reverse_edges(smap, D, {smap.edge_of[d] for d in M})
    best = max((len(w.prefix) for ws in by_cycle.values() for w in ws), default=None)
    if best is None:
        raise IterationBudgetExceeded("no middle walk leaves any middle cycle")
    choices = sorted(
        (w.darts[0], w.cycle) for ws in by_cycle.values() for w in ws if len(w.prefix) == best
    )
    _, target = rng.choice(choices)
    return reverse_edges(smap, D, {smap.edge_of[d] for d in target})


def _fallback_search(smap: SurfaceMap, max_edges: int = 36):
    """Exhaustive search over 3-orientations for two non weakly homologous middle cycles."""
    need = [3] * smap.n
    tails: list[int] = []

    def rec(e: int):
        if e == smap.m:
            D = Orientation(tuple(tails))
            pair = _two_independent(smap, middle_cycles(smap, D))
            return (D, pair) if pair else None
        a, b = smap.edges[e]
        for t in (a, b):
            v = smap.origin(t)
            if need[v] == 0:
                continue
            need[v] -= 1
            tails.append(t)
            found = rec(e + 1)
            tails.pop()
            need[v] += 1
            if found:
                return found
        return None

    if smap.m > max_edges:
        raise IterationBudgetExceeded("map too large for the exhaustive fallback")
    return rec(0)


def schnyderize(smap: SurfaceMap, seed: int = 0, budget: int | None = None, fallback: bool = True) -> SchnyderizeResult:
    """A generalized Schnyder wood of a toroidal triangulation.

    Starting from any 3-orientation, middle cycles are reversed until two of
    them are not weakly homologous; the lift of that orientation is then a
    Schnyder orientation of type (0, 0).
    """
    if smap.genus != 1:
        raise ValueError(f"expected a toroidal map, got genus {smap.genus}")
    if budget is None:
        budget = 10 * smap.m
    rng = random.Random(seed)
    D = find_3_orientation(smap)
    pair = None
    iterations = 0
    used_fallback = False
    while True:
        walks = middle_walks(smap, D)
        pair = _two_independent(smap, sorted({w.cycle for w in walks}))
        if pair is not None:
            break
        if iterations >= budget:
            if not fallback:
                raise IterationBudgetExceeded(f"no certificate after {budget} reversals")
            found = _fallback_search(smap)
            if found is None:
                raise IterationBudgetExceeded("exhaustive search found no certificate")
            D, pair = found
            used_fallback = True
            break
        D = _exchange_step(smap, D, walks, rng)
        iterations += 1

    comp = complete(smap)
    hat = comp.lift(D)
    report = is_schnyder_orientation(comp, hat)
    if not report.schnyder:
        raise AssertionError(f"lifted orientation is not Schnyder: {report}")
    labeling = extract_labeling(comp, hat)
    wood = to_colored_wood(smap, labeling)
    cert = Certificate(pair, orientation_gammas(comp, hat))
    return SchnyderizeResult(D, hat, labeling, wood, cert, iterations, used_fallback)


# -- crossing -----------------------------------------------------------------------


def monochromatic_cycles(smap: SurfaceMap, wood: ColoredWood) -> dict[int, list[tuple[int, ...]]]:
    """Directed cycles of each color, found by following the unique outgoing dart of that color."""
    result: dict[int, list[tuple[int, ...]]] = {}
    for color in range(3):
        succ = {}
        for v, darts in wood.successors(smap, color).items():
            if len(darts) != 1:
                raise ValueError(f"vertex {v} has {len(darts)} outgoing darts of color {color}")
            succ[v] = darts[0]
        found = set()
        state = {}
        for start in range(smap.n):
            path = []
            v = start
            while v in succ and v not in state:
                state[v] = start
                path.append(succ[v])
                v = smap.head(succ[v])
            if v in succ and state.get(v) == start:
                i = next(j for j, d in enumerate(path) if smap.origin(d) == v)
                found.add(_canonical_cycle(path[i:]))
        result[color] = sorted(found)
    return result


NOT_HALF_CROSSING = "not_half_crossing"
HALF_CROSSING = "half_crossing"
CROSSING = "crossing"


def crossing_class(smap: SurfaceMap, wood: ColoredWood) -> str:
    cycles = monochromatic_cycles(smap, wood)
    verts = {
        c: [{smap.origin(d) for d in cyc} for cyc in cycles[c]] for c in range(3)
    }
    meets = 0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if any(a & b for a in verts[i] for b in verts[j]):
            meets += 1
    if meets == 3:
        return CROSSING
    if meets:
        return HALF_CROSSING
    return NOT_HALF_CROSSING
