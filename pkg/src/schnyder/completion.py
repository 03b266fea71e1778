"""Primal-dual completion, Schnyder orientations, angle labelings and woods.

Completion dart layout. For every dart ``d`` of G the completion has four
darts:

* ``4d``     primal vertex ``origin(d)`` -> edge-vertex of ``d``'s edge
* ``4d + 1`` edge-vertex -> ``origin(d)`` (partner of ``4d``)
* ``4d + 2`` dual vertex ``left_face(d)`` -> edge-vertex
* ``4d + 3`` edge-vertex -> ``left_face(d)`` (partner of ``4d + 2``)

Around the edge-vertex of an edge ``{d, d'}`` the counterclockwise order is
``4d+1, 4d'+3, 4d'+1, 4d+3``. The face of the completion containing ``4d``
is the angle of G identified by ``d``. Edges of the completion whose tail
dart is ``4d`` or ``4d+2`` are the out-edges (they enter an edge-vertex).

Angle labelings are tuples of colors in {0, 1, 2} indexed by the G dart
that identifies the angle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .homology import Flow, beta, characteristic_flow
from .surface_map import Orientation, SurfaceMap, check_cycle, turn_darts

PRIMAL, DUAL, EDGE = "primal", "dual", "edge"

AngleLabeling = tuple[int, ...]


class NotSchnyder(ValueError):
    pass


class NotEdgeLabeling(ValueError):
    def __init__(self, edges: Sequence[int]):
        super().__init__(f"edges not of type 0, 1 or 2: {list(edges)}")
        self.edges = list(edges)


class MalformedIntervalPattern(ValueError):
    pass


class WoodError(ValueError):
    pass


class SinkVertex(WoodError):
    pass


class Type0Face(WoodError):
    pass


class MonochromaticFace(WoodError):
    pass


class Completion:
    """The completion of ``base`` together with its correspondences."""

    def __init__(self, base: SurfaceMap):
        self.base = base
        g = base
        size = 4 * g.num_darts
        alpha = [0] * size
        sigma = [0] * size
        for d in range(g.num_darts):
            p, q = 4 * d, 4 * d + 2
            alpha[p], alpha[p + 1] = p + 1, p
            alpha[q], alpha[q + 1] = q + 1, q
            sigma[p] = 4 * g.sigma[d]
            sigma[q] = 4 * g.phi[d] + 2
            sigma[p + 1] = 4 * g.alpha[d] + 3
            sigma[q + 1] = p + 1
        self.map = SurfaceMap(alpha, sigma)
        hat = self.map

        self.role = [""] * hat.n
        self.element = [0] * hat.n
        self.primal_vertex = [0] * g.n
        self.dual_vertex = [0] * g.f
        self.edge_vertex = [0] * g.m
        for d in range(g.num_darts):
            v = hat.origin(4 * d)
            self.role[v], self.element[v] = PRIMAL, g.origin(d)
            self.primal_vertex[g.origin(d)] = v
            x = hat.origin(4 * d + 1)
            self.role[x], self.element[x] = EDGE, g.edge_of[d]
            self.edge_vertex[g.edge_of[d]] = x
            w = hat.origin(4 * d + 2)
            self.role[w], self.element[w] = DUAL, g.face_of[d]
            self.dual_vertex[g.face_of[d]] = w

        self.angle_face = tuple(hat.face_of[4 * d] for d in range(g.num_darts))
        face_angle = [0] * hat.f
        for d, fh in enumerate(self.angle_face):
            face_angle[fh] = d
        self.face_angle = tuple(face_angle)

    def __repr__(self) -> str:
        return f"Completion(of {self.base!r})"

    def angle_of_dart(self, x: int) -> int:
        """The G angle whose completion face contains completion dart ``x``."""
        return self.face_angle[self.map.face_of[x]]

    def lift(self, D: Orientation) -> Orientation:
        return lift_orientation(self, D)


def complete(g: SurfaceMap) -> Completion:
    store = g.__dict__
    if "_completion" not in store:
        store["_completion"] = Completion(g)
    return store["_completion"]


def lift_orientation(comp: Completion, D: Orientation) -> Orientation:
    """Lift an orientation of G to the completion.

    Each G edge ``t -> h`` becomes: primal tail -> edge-vertex -> primal head,
    and both dual vertices point to the edge-vertex.
    """
    g = comp.base
    tails = [0] * comp.map.m
    for t in D.tails:
        h = g.alpha[t]
        tails[2 * t] = 4 * t
        tails[2 * h] = 4 * h + 1
        tails[2 * t + 1] = 4 * t + 2
        tails[2 * h + 1] = 4 * h + 2
    return Orientation(tuple(tails))


def hat_outdegrees(comp: Completion, D: Orientation) -> list[int]:
    out = [0] * comp.map.n
    for t in D.tails:
        out[comp.map.origin(t)] += 1
    return out


def is_mod3_orientation(comp: Completion, D: Orientation) -> bool:
    for v, k in enumerate(hat_outdegrees(comp, D)):
        want = 1 if comp.role[v] == EDGE else 0
        if k % 3 != want:
            return False
    return True


def out_edge_flow(comp: Completion, D: Orientation) -> Flow:
    """Characteristic flow of the edges entering edge-vertices."""
    return tuple(1 if t % 2 == 0 else 0 for t in D.tails)


def delta(comp: Completion, D: Orientation, walk: Sequence[int], out_flow: Flow | None = None) -> int:
    """Signed count of out-edges crossing a closed walk of the dual of the completion.

    ``walk`` is a list of dual darts (same ids as completion darts); crossing
    from left to right counts +1.
    """
    if out_flow is None:
        out_flow = out_edge_flow(comp, D)
    return beta(out_flow, characteristic_flow(comp.map, walk))


def cycle_sides(comp: Completion, cycle: Sequence[int]) -> tuple[list[int], list[int]]:
    """Completion darts incident to the completed cycle on its left and on its right.

    Each dart starts at a vertex of the completed cycle and is not on it. Left
    darts are listed in the order a walk along the cycle meets them.
    """
    g = comp.base
    check_cycle(g, cycle)
    left: list[int] = []
    right: list[int] = []
    for i, d_out in enumerate(cycle):
        # side darts at the primal vertex where d_out starts, then at its edge-vertex
        lp, rp = turn_darts(g, cycle[i - 1], d_out)
        left.extend(4 * x for x in lp)
        right.extend(4 * x for x in rp)
        left.append(4 * d_out + 3)
        right.append(4 * g.alpha[d_out] + 3)
    return left, right


def gamma(comp: Completion, D: Orientation, cycle: Sequence[int]) -> int:
    """Edges leaving the completed cycle on its right minus those leaving on its left."""
    left, right = cycle_sides(comp, cycle)
    tails = D.tail_set()
    return sum(1 for x in right if x in tails) - sum(1 for x in left if x in tails)


def side_walks(comp: Completion, cycle: Sequence[int]) -> tuple[list[int], list[int]]:
    """Dual walks running just left and just right of the cycle, in its direction."""
    left, right = cycle_sides(comp, cycle)
    alpha = comp.map.alpha
    return [alpha[x] for x in left], list(right)


@dataclass(frozen=True)
class SchnyderReport:
    schnyder: bool
    mod3: bool
    gammas: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.schnyder


def orientation_gammas(comp: Completion, D: Orientation, basis=None) -> tuple[int, ...]:
    if basis is None:
        basis = comp.base.basis
    return tuple(gamma(comp, D, c.darts) for c in basis.cycles)


def is_schnyder_orientation(comp: Completion, D: Orientation, basis=None) -> SchnyderReport:
    """Mod-3 orientation with every basis cycle having gamma divisible by 3."""
    mod3 = is_mod3_orientation(comp, D)
    gammas = orientation_gammas(comp, D, basis)
    ok = mod3 and all(x % 3 == 0 for x in gammas)
    return SchnyderReport(ok, mod3, gammas)


def extract_labeling(comp: Completion, D: Orientation, f0: int = 0, base: int = 0) -> AngleLabeling:
    """Angle labeling of a Schnyder orientation.

    Labels are propagated over the faces of the completion starting from
    completion face ``f0`` with color ``base``; crossing an out-edge from its
    right to its left raises the label by one.
    """
    hat = comp.map
    flow = out_edge_flow(comp, D)
    lab: list[int | None] = [None] * hat.f
    lab[f0] = base % 3
    queue = deque([f0])
    while queue:
        a = queue.popleft()
        for y in hat.face_darts[a]:
            x = hat.alpha[y]  # dual dart from face a to the face across
            b = hat.face_of[x]
            val = (lab[a] + flow[hat.edge_of[x]] * hat.sign(x)) % 3
            if lab[b] is None:
                lab[b] = val
                queue.append(b)
            elif lab[b] != val:
                raise NotSchnyder("labels are not path independent")
    return tuple(lab[comp.angle_face[d]] for d in range(comp.base.num_darts))


def labeling_to_orientation(comp: Completion, labels: Sequence[int]) -> Orientation:
    """The completion orientation of an EDGE angle labeling."""
    hat = comp.map
    tails = []
    bad = set()
    for y, z in hat.edges:  # y = 4d or 4d+2, starts at a primal or dual vertex
        a = labels[comp.angle_of_dart(y)]
        b = labels[comp.angle_of_dart(z)]
        step = (a - b) % 3
        if step == 1:
            tails.append(y)
        else:
            tails.append(z)
            if step == 2:
                bad.add(comp.base.edge_of[y // 4])
    if bad:
        raise NotEdgeLabeling(sorted(bad))
    return Orientation(tuple(tails))


# -- classification ---------------------------------------------------------------


def edge_angles(g: SurfaceMap, e: int) -> tuple[int, int, int, int]:
    """Angles around edge ``e`` in clockwise order, starting left of the reference dart at its tail."""
    d, d2 = g.edges[e]
    return d, g.sigma_inv[d2], d2, g.sigma_inv[d]


def edge_type(g: SurfaceMap, labels: Sequence[int], e: int) -> int | None:
    """0, 1 or 2, or None if the edge does not follow any of the three patterns."""
    nw, ne, se, sw = (labels[a] % 3 for a in edge_angles(g, e))
    if nw == ne == se == sw:
        return 0
    ring = [nw, ne, se, sw]
    for s in range(4):
        a, b, c, d = ring[s:] + ring[:s]
        if b == c and (b - a) % 3 == 1 and (d - c) % 3 == 1:
            # the equal pair sits at positions s+1, s+2; {1, 2} and {3, 0} share an extremity
            return 1 if s % 2 == 0 else 2
    return None


def _interval_type(labels: Sequence[int], what: str) -> int:
    ups = 0
    for a, b in zip(labels, list(labels[1:]) + [labels[0]]):
        step = (b - a) % 3
        if step == 1:
            ups += 1
        elif step == 2:
            raise MalformedIntervalPattern(f"{what}: color decreases counterclockwise")
    if ups % 3:
        raise MalformedIntervalPattern(f"{what}: {ups} color changes")
    return ups // 3


def vertex_type(g: SurfaceMap, labels: Sequence[int], v: int) -> int:
    return _interval_type([labels[d] % 3 for d in g.vertices[v]], f"vertex {v}")


def face_type(g: SurfaceMap, labels: Sequence[int], f: int) -> int:
    return _interval_type([labels[d] % 3 for d in g.face_darts[f]], f"face {f}")


@dataclass(frozen=True)
class Classification:
    edge_types: tuple[int, ...]
    vertex_types: tuple[int, ...]
    face_types: tuple[int, ...]


def classify(g: SurfaceMap, labels: Sequence[int]) -> Classification:
    if len(labels) != g.num_darts:
        raise ValueError(f"labeling has {len(labels)} angles, map has {g.num_darts}")
    etypes = [edge_type(g, labels, e) for e in range(g.m)]
    bad = [e for e, t in enumerate(etypes) if t is None]
    if bad:
        raise NotEdgeLabeling(bad)
    return Classification(
        tuple(etypes),
        tuple(vertex_type(g, labels, v) for v in range(g.n)),
        tuple(face_type(g, labels, f) for f in range(g.f)),
    )


# -- woods ----------------------------------------------------------------------


@dataclass(frozen=True)
class ColoredWood:
    """Per dart of G: whether it is an outgoing direction, and its color.

    A type 1 edge has one outgoing dart and one incoming dart of the same
    color; a type 2 edge has two outgoing darts; a type 0 edge has two
    incoming darts of the same color.
    """

    outgoing: tuple[bool, ...]
    color: tuple[int, ...]

    def edge_type(self, g: SurfaceMap, e: int) -> int:
        a, b = g.edges[e]
        return {(True, False): 1, (False, True): 1, (True, True): 2, (False, False): 0}[
            (self.outgoing[a], self.outgoing[b])
        ]

    def out_darts(self, g: SurfaceMap, v: int) -> list[int]:
        return [d for d in g.vertices[v] if self.outgoing[d]]

    def outdegree(self, g: SurfaceMap, v: int) -> int:
        return len(self.out_darts(g, v))

    def successors(self, g: SurfaceMap, color: int) -> dict[int, list[int]]:
        """Outgoing darts of the given color, per vertex."""
        out: dict[int, list[int]] = {}
        for d, (o, c) in enumerate(zip(self.outgoing, self.color)):
            if o and c == color:
                out.setdefault(g.origin(d), []).append(d)
        return out


def to_colored_wood(g: SurfaceMap, labels: Sequence[int], strict: bool = True) -> ColoredWood:
    """Orientation and coloring of G read off an EDGE angle labeling.

    With ``strict`` the labeling must give every vertex and face a positive
    type, which is what makes the result a generalized Schnyder wood.
    """
    cls = classify(g, labels)
    if strict:
        for v, t in enumerate(cls.vertex_types):
            if t == 0:
                raise SinkVertex(f"vertex {v} has no outgoing edge")
        for f, t in enumerate(cls.face_types):
            if t == 0:
                raise Type0Face(f"face {f} has constant labels")
    outgoing = []
    color = []
    for d in range(g.num_darts):
        left, right = labels[d] % 3, labels[g.sigma_inv[d]] % 3
        if (left - right) % 3 == 1:
            outgoing.append(True)
            color.append((right - 1) % 3)
        else:
            outgoing.append(False)
            color.append(left)
    return ColoredWood(tuple(outgoing), tuple(color))


def wood_to_labeling(g: SurfaceMap, wood: ColoredWood) -> AngleLabeling:
    labels = []
    for d in range(g.num_darts):
        c = wood.color[d]
        here = (c - 1) % 3 if wood.outgoing[d] else c
        nxt = g.sigma[d]
        c2 = wood.color[nxt]
        seen_from_next = (c2 + 1) % 3 if wood.outgoing[nxt] else c2
        if here != seen_from_next:
            raise WoodError(f"angle {d} gets colors {here} and {seen_from_next}")
        labels.append(here)
    return tuple(labels)


def check_schnyder_property(g: SurfaceMap, wood: ColoredWood, v: int) -> bool:
    """Local condition at ``v``: 3k outgoing darts colored 0,1,2,... ccw, incoming darts in the right sectors."""
    darts = g.vertices[v]
    outs = [i for i, d in enumerate(darts) if wood.outgoing[d]]
    if not outs or len(outs) % 3:
        return False
    # rotate so the walk around v starts at an outgoing dart of color 0
    start = next((i for i in outs if wood.color[darts[i]] == 0), None)
    if start is None:
        return False
    ring = darts[start:] + darts[:start]
    current = None
    expected = 0
    for d in ring:
        if wood.outgoing[d]:
            if wood.color[d] != expected:
                return False
            current = expected
            expected = (expected + 1) % 3
        elif wood.color[d] != (current - 1) % 3:
            return False
    return True


def monochromatic_faces(g: SurfaceMap, wood: ColoredWood) -> list[int]:
    """Faces whose boundary is a directed cycle of a single color (either direction)."""
    found = []
    for f, darts in enumerate(g.face_darts):
        for walk in (darts, [g.alpha[d] for d in darts]):
            colors = {wood.color[d] for d in walk}
            if all(wood.outgoing[d] for d in walk) and len(colors) == 1:
                found.append(f)
                break
    return found


def check_wood(g: SurfaceMap, wood: ColoredWood) -> None:
    """Raise unless ``wood`` is a generalized Schnyder wood of ``g``."""
    for e, (a, b) in enumerate(g.edges):
        t = wood.edge_type(g, e)
        if t == 0 and wood.color[a] != wood.color[b]:
            raise WoodError(f"incoming edge {e} has two colors")
        if t == 1:
            if wood.color[a] != wood.color[b]:
                raise WoodError(f"edge {e} changes color")
        if t == 2 and wood.color[a] == wood.color[b]:
            raise WoodError(f"bioriented edge {e} has one color")
    for v in range(g.n):
        if not any(wood.outgoing[d] for d in g.vertices[v]):
            raise SinkVertex(f"vertex {v} has no outgoing edge")
        if not check_schnyder_property(g, wood, v):
            raise WoodError(f"vertex {v} violates the generalized Schnyder property")
    classify(g, wood_to_labeling(g, wood))
    mono = monochromatic_faces(g, wood)
    if mono:
        raise MonochromaticFace(f"faces with monochromatic boundary: {mono}")


def wood_orientation_of_completion(comp: Completion, wood: ColoredWood) -> Orientation:
    return labeling_to_orientation(comp, wood_to_labeling(comp.base, wood))
