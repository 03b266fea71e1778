"""The distributive lattice of orientations homologous to a given one.

Everything here works on an arbitrary map (G itself or a completion). The
order is relative to a root face ``f0``: ``D <= D'`` when the edges where
they differ, oriented as in ``D``, form a counterclockwise combination of
faces, none of which is the root face.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

import networkx as nx

from .homology import (
    Flow,
    NotZeroHomologous,
    beta,
    face_potential,
    is_circulation,
)
from .surface_map import Orientation, SurfaceMap


class NotHomologous(ValueError):
    pass


class NotDirected(ValueError):
    pass


class ForbiddenRootFace(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def diff(smap: SurfaceMap, D1: Orientation, D2: Orientation) -> Flow:
    """Edges of ``D1`` oriented differently in ``D2``, as a flow."""
    return tuple(smap.sign(a) if a != b else 0 for a, b in zip(D1.tails, D2.tails))


# -- predicates ---------------------------------------------------------------------


def _dual_test_flows(smap: SurfaceMap) -> list[Flow]:
    from .homology import _dual_basis_flows, _vertex_dual_flows_cached

    return _vertex_dual_flows_cached(smap) + _dual_basis_flows(smap, smap.dual_basis)


def is_partitionable(smap: SurfaceMap, T: Flow) -> bool:
    """Every closed dual walk pairs with ``T`` to a multiple of 3.

    Closed dual walks are generated by the walks around vertices and the
    dual homology basis, so those are the only ones tested.
    """
    return all(beta(T, w) % 3 == 0 for w in _dual_test_flows(smap))


def partition_labels(smap: SurfaceMap, T: Flow, f0: int = 0) -> list[int]:
    """Face labels ``beta(T, P) mod 3`` along dual paths ``P`` from ``f0``.

    Raises ValueError if ``T`` is not partitionable (labels not path independent).
    """
    lab: list[int | None] = [None] * smap.f
    lab[f0] = 0
    queue = deque([f0])
    while queue:
        a = queue.popleft()
        for d in smap.face_darts[a]:
            x = smap.alpha[d]
            b = smap.face_of[x]
            val = (lab[a] + T[smap.edge_of[x]] * smap.sign(x)) % 3
            if lab[b] is None:
                lab[b] = val
                queue.append(b)
            elif lab[b] != val:
                raise ValueError("subgraph is not partitionable")
    return lab


def partition(smap: SurfaceMap, T: Flow) -> tuple[Flow, Flow, Flow]:
    """Split a partitionable ``T`` into three pairwise homologous parts.

    Edge ``e`` of ``T`` goes to part ``i`` when the face on its left (with
    respect to its direction in ``T``) has label ``i - 1``.
    """
    lab = partition_labels(smap, T)
    parts = [[0] * smap.m for _ in range(3)]
    for e, v in enumerate(T):
        if v:
            a, b = smap.edges[e]
            tail = a if v > 0 else b
            i = (lab[smap.face_of[tail]] + 1) % 3
            parts[i][e] = v
    return tuple(tuple(p) for p in parts)


def is_eulerian(smap: SurfaceMap, T: Flow) -> bool:
    return is_circulation(smap, T)


def is_eulerian_partitionable(smap: SurfaceMap, T: Flow) -> bool:
    if not is_partitionable(smap, T) or not is_eulerian(smap, T):
        return False
    return all(is_circulation(smap, part) for part in partition(smap, T))


def is_zero_homologous_diff(smap: SurfaceMap, T: Flow) -> bool:
    try:
        face_potential(smap, T)
    except NotZeroHomologous:
        return False
    return True


# -- reduced graph ------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedGraph:
    """Faces of G merged across rigid edges."""

    rigid: frozenset[int]
    face_class: tuple[int, ...]  # reduced face id of every face of G
    members: tuple[tuple[int, ...], ...]  # faces of G inside each reduced face
    boundaries: tuple[Flow, ...]  # counterclockwise boundary flow of each reduced face

    @property
    def num_faces(self) -> int:
        return len(self.members)


def rigid_edges(smap: SurfaceMap, D0: Orientation) -> ReducedGraph:
    """Find the edges with the same orientation in every orientation homologous to ``D0``.

    Give each face a potential and ask for ``lam[left] - lam[right]`` in
    {0, 1} across every edge, left and right taken along ``D0``. An edge can
    be reversed exactly when some solution has difference 1 on it. The
    constraints say potentials never increase along the arcs left -> right,
    so an arc inside a strongly connected component is forced to 0, and any
    other arc gets 1 from the potential "1 on faces that reach its left end".
    """
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(smap.f))
    arcs = []
    for t in D0.tails:
        arc = (smap.face_of[t], smap.face_of[smap.alpha[t]])
        arcs.append(arc)
        digraph.add_edge(*arc)
    comp_of = {}
    for i, comp in enumerate(nx.strongly_connected_components(digraph)):
        for f in comp:
            comp_of[f] = i
    rigid = frozenset(e for e, (a, b) in enumerate(arcs) if comp_of[a] == comp_of[b])

    parent = list(range(smap.f))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in rigid:
        a, b = smap.edges[e]
        parent[find(smap.face_of[a])] = find(smap.face_of[b])
    roots = sorted({find(f) for f in range(smap.f)})
    index = {r: i for i, r in enumerate(roots)}
    face_class = tuple(index[find(f)] for f in range(smap.f))
    members = [[] for _ in roots]
    for f, c in enumerate(face_class):
        members[c].append(f)
    boundaries = []
    for faces in members:
        flow = [0] * smap.m
        for f in faces:
            for d in smap.face_darts[f]:
                flow[smap.edge_of[d]] += smap.sign(d)
        boundaries.append(tuple(flow))
    return ReducedGraph(rigid, face_class, tuple(tuple(m) for m in members), tuple(boundaries))


def _agrees(smap: SurfaceMap, D: Orientation, flow: Flow, sign: int) -> bool:
    for e, v in enumerate(flow):
        if v and smap.sign(D.tails[e]) != sign * v:
            return False
    return True


def _reverse_support(smap: SurfaceMap, D: Orientation, flow: Flow) -> Orientation:
    return Orientation(tuple(smap.alpha[t] if flow[e] else t for e, t in enumerate(D.tails)))


def flip(smap: SurfaceMap, D: Orientation, reduced: ReducedGraph, face: int, up: bool, f0: int = 0) -> Orientation:
    """Reverse the boundary of a reduced face.

    An up-flip needs the boundary counterclockwise in ``D``; a down-flip
    needs it clockwise.
    """
    if face == reduced.face_class[f0]:
        raise ForbiddenRootFace("the reduced face of the root face cannot be flipped")
    flow = reduced.boundaries[face]
    if not _agrees(smap, D, flow, 1 if up else -1):
        raise NotDirected(f"boundary of reduced face {face} is not {'counter' if up else ''}clockwise")
    return _reverse_support(smap, D, flow)


def flippable(smap: SurfaceMap, D: Orientation, reduced: ReducedGraph, f0: int = 0) -> tuple[list[int], list[int]]:
    """Reduced faces admitting an up-flip and a down-flip in ``D``."""
    root = reduced.face_class[f0]
    ups, downs = [], []
    for i, flow in enumerate(reduced.boundaries):
        if i == root or not any(flow):
            continue
        if _agrees(smap, D, flow, 1):
            ups.append(i)
        elif _agrees(smap, D, flow, -1):
            downs.append(i)
    return ups, downs


def boundary_direction(smap: SurfaceMap, D: Orientation, reduced: ReducedGraph, face: int) -> str | None:
    """"ccw" or "cw" when the boundary of a reduced face is directed in ``D``, else None."""
    flow = reduced.boundaries[face]
    if not any(flow):
        return None
    if _agrees(smap, D, flow, 1):
        return "ccw"
    if _agrees(smap, D, flow, -1):
        return "cw"
    return None


# -- Hasse diagram ------------------------------------------------------------------


@dataclass
class HasseDiagram:
    smap: SurfaceMap
    f0: int
    reduced: ReducedGraph
    nodes: list[Orientation] = field(default_factory=list)
    index: dict[int, int] = field(default_factory=dict)  # orientation bits -> node id
    arcs: list[tuple[int, int, int]] = field(default_factory=list)  # (lower, upper, reduced face)

    def __len__(self) -> int:
        return len(self.nodes)

    def node_of(self, D: Orientation) -> int:
        return self.index[D.bits(self.smap)]

    def up(self) -> dict[int, list[tuple[int, int]]]:
        out: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(self.nodes))}
        for a, b, c in self.arcs:
            out[a].append((b, c))
        return out

    def down(self) -> dict[int, list[tuple[int, int]]]:
        out: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(self.nodes))}
        for a, b, c in self.arcs:
            out[b].append((a, c))
        return out

    def sources(self) -> list[int]:
        has_in = {b for _, b, _ in self.arcs}
        return [i for i in range(len(self.nodes)) if i not in has_in]

    def sinks(self) -> list[int]:
        has_out = {a for a, _, _ in self.arcs}
        return [i for i in range(len(self.nodes)) if i not in has_out]


def enumerate_lattice(smap: SurfaceMap, D0: Orientation, f0: int = 0, max_nodes: int = 100_000) -> HasseDiagram:
    """All orientations homologous to ``D0``, by breadth-first search over flips."""
    reduced = rigid_edges(smap, D0)
    H = HasseDiagram(smap, f0, reduced)
    H.nodes.append(D0)
    H.index[D0.bits(smap)] = 0
    queue = deque([0])
    while queue:
        i = queue.popleft()
        D = H.nodes[i]
        ups, downs = flippable(smap, D, reduced, f0)
        for face, is_up in sorted([(c, True) for c in ups] + [(c, False) for c in downs]):
            D2 = _reverse_support(smap, D, reduced.boundaries[face])
            key = D2.bits(smap)
            j = H.index.get(key)
            if j is None:
                if len(H.nodes) >= max_nodes:
                    raise BudgetExceeded(f"lattice has more than {max_nodes} elements")
                j = len(H.nodes)
                H.nodes.append(D2)
                H.index[key] = j
                queue.append(j)
            if is_up:
                H.arcs.append((i, j, face))
    H.arcs = sorted(set(H.arcs))
    return H


def _greedy(smap: SurfaceMap, D: Orientation, reduced: ReducedGraph, f0: int, up: bool) -> Orientation:
    while True:
        ups, downs = flippable(smap, D, reduced, f0)
        todo = ups if up else downs
        if not todo:
            return D
        D = _reverse_support(smap, D, reduced.boundaries[todo[0]])


def extremes(smap: SurfaceMap, D0: Orientation, f0: int = 0, reduced: ReducedGraph | None = None) -> tuple[Orientation, Orientation]:
    """(minimum, maximum) of the lattice, by flipping greedily to a fixpoint."""
    if reduced is None:
        reduced = rigid_edges(smap, D0)
    return _greedy(smap, D0, reduced, f0, False), _greedy(smap, D0, reduced, f0, True)


def leq(smap: SurfaceMap, D1: Orientation, D2: Orientation, f0: int = 0) -> bool:
    """True iff ``D1 <= D2`` (``D1 \\ D2`` is a nonnegative combination of faces other than ``f0``)."""
    try:
        pot = face_potential(smap, diff(smap, D1, D2), f0)
    except NotZeroHomologous:
        raise NotHomologous("orientations are not homologous") from None
    return min(pot.lam) >= 0


def _potential_above(smap: SurfaceMap, D_min: Orientation, D: Orientation, f0: int) -> tuple[int, ...]:
    try:
        return face_potential(smap, diff(smap, D_min, D), f0).lam
    except NotZeroHomologous:
        raise NotHomologous("orientations are not homologous") from None


def orientation_from_potential(smap: SurfaceMap, D_min: Orientation, lam) -> Orientation:
    tails = []
    for e, (a, b) in enumerate(smap.edges):
        z = lam[smap.face_of[a]] - lam[smap.face_of[b]]
        t = D_min.tails[e]
        if z == 0:
            tails.append(t)
        elif z == smap.sign(t):
            tails.append(smap.alpha[t])
        else:
            raise NotHomologous(f"potential does not describe an orientation on edge {e}")
    return Orientation(tuple(tails))


def meet(smap: SurfaceMap, D1: Orientation, D2: Orientation, f0: int = 0, D_min: Orientation | None = None) -> Orientation:
    if D_min is None:
        D_min = extremes(smap, D1, f0)[0]
    l1 = _potential_above(smap, D_min, D1, f0)
    l2 = _potential_above(smap, D_min, D2, f0)
    return orientation_from_potential(smap, D_min, [min(a, b) for a, b in zip(l1, l2)])


def join(smap: SurfaceMap, D1: Orientation, D2: Orientation, f0: int = 0, D_min: Orientation | None = None) -> Orientation:
    if D_min is None:
        D_min = extremes(smap, D1, f0)[0]
    l1 = _potential_above(smap, D_min, D1, f0)
    l2 = _potential_above(smap, D_min, D2, f0)
    return orientation_from_potential(smap, D_min, [max(a, b) for a, b in zip(l1, l2)])


@dataclass(frozen=True)
class HasseCheck:
    connected: bool
    acyclic: bool
    unique_source: bool
    unique_sink: bool
    u1: bool
    u2: bool
    l1: bool
    l2: bool

    @property
    def ok(self) -> bool:
        return all(vars(self).values())


def check_hasse_axioms(H: HasseDiagram) -> HasseCheck:
    """Connectivity, acyclicity and the four local diamond conditions."""
    g = nx.DiGraph()
    g.add_nodes_from(range(len(H.nodes)))
    g.add_edges_from((a, b) for a, b, _ in H.arcs)
    connected = nx.is_weakly_connected(g) if len(H.nodes) else False
    acyclic = nx.is_directed_acyclic_graph(g)
    up, down = H.up(), H.down()

    def local(adj, forward: bool) -> tuple[bool, bool]:
        distinct = diamond = True
        for u, nbrs in adj.items():
            labels = [c for _, c in nbrs]
            if len(set(labels)) != len(labels):
                distinct = False
            for (v, cv), (w, cw) in product(nbrs, repeat=2):
                if v >= w:
                    continue
                # need z with arcs v-z labeled cw and w-z labeled cv
                if forward:
                    zs_v = {z for z, c in up[v] if c == cw}
                    zs_w = {z for z, c in up[w] if c == cv}
                else:
                    zs_v = {z for z, c in down[v] if c == cw}
                    zs_w = {z for z, c in down[w] if c == cv}
                if not zs_v & zs_w:
                    diamond = False
        return distinct, diamond

    u1, u2 = local(up, True)
    l1, l2 = local(down, False)
    return HasseCheck(
        connected, acyclic, len(H.sources()) == 1, len(H.sinks()) == 1, u1, u2, l1, l2
    )


def orientation_type(comp, D: Orientation, basis=None) -> tuple[int, ...]:
    """Gamma of every basis cycle for a completion orientation."""
    from .completion import orientation_gammas

    return orientation_gammas(comp, D, basis)


def homologous_orientations(smap: SurfaceMap, D1: Orientation, D2: Orientation) -> bool:
    return is_zero_homologous_diff(smap, diff(smap, D1, D2))

