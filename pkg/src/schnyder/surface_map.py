"""Combinatorial maps on orientable surfaces.

A map is given by two permutations of a dense dart set ``0 .. 2m-1``:

* ``alpha`` -- the fixed-point-free edge involution,
* ``sigma`` -- the counterclockwise rotation of darts around their origin.

Faces are the orbits of ``phi = sigma^-1 . alpha``: following ``phi`` from a
dart ``d`` walks around the face lying on the *left* of ``d``, so facial
walks are counterclockwise. Everything downstream (dual orientation, angle
identities, the sign of delta and gamma) depends on this convention.

The *angle* identified by a dart ``d`` is the corner at the origin of ``d``
between ``d`` and ``sigma(d)``; it lies in the face on the left of ``d``.

Every edge carries a fixed reference orientation: its tail is the dart with
the lower id.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class MapError(ValueError):
    """Raised when the permutation data does not describe a map."""


class NotInvolution(MapError):
    pass


class FixedPointEdge(MapError):
    pass


class Disconnected(MapError):
    pass


class NegativeGenus(MapError):
    pass


class NotACycle(ValueError):
    pass


def _orbits(perm: Sequence[int]) -> tuple[list[tuple[int, ...]], list[int]]:
    """Cycles of ``perm`` ordered by smallest element, plus the owner index per point."""
    owner = [-1] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if owner[start] != -1:
            continue
        cyc = []
        d = start
        while owner[d] == -1:
            owner[d] = len(cycles)
            cyc.append(d)
            d = perm[d]
        cycles.append(tuple(cyc))
    return cycles, owner


def _check_permutation(name: str, perm: Sequence[int], size: int) -> None:
    if len(perm) != size:
        raise MapError(f"{name} has length {len(perm)}, expected {size}")
    if sorted(perm) != list(range(size)):
        raise MapError(f"{name} is not a permutation of 0..{size - 1}")


class SurfaceMap:
    """An immutable map on a connected orientable surface.

    >>> torus = SurfaceMap([1, 0, 3, 2], [2, 3, 1, 0])
    >>> torus.n, torus.m, torus.f, torus.genus
    (1, 2, 1, 1)
    """

    def __init__(self, alpha: Sequence[int], sigma: Sequence[int]):
        size = len(alpha)
        if size == 0 or size % 2:
            raise NotInvolution("the dart set must be nonempty and of even size")
        _check_permutation("alpha", alpha, size)
        _check_permutation("sigma", sigma, size)
        for d in range(size):
            if alpha[d] == d:
                raise FixedPointEdge(f"dart {d} is a fixed point of alpha")
            if alpha[alpha[d]] != d:
                raise NotInvolution(f"alpha(alpha({d})) != {d}")

        self.alpha = tuple(alpha)
        self.sigma = tuple(sigma)
        inv = [0] * size
        for d, s in enumerate(sigma):
            inv[s] = d
        self.sigma_inv = tuple(inv)
        self.phi = tuple(inv[self.alpha[d]] for d in range(size))

        self.vertices, self.vertex_of = _orbits(self.sigma)
        self.face_darts, self.face_of = _orbits(self.phi)
        edges = []
        edge_of = [0] * size
        for d in range(size):
            if d < self.alpha[d]:
                edge_of[d] = edge_of[self.alpha[d]] = len(edges)
                edges.append((d, self.alpha[d]))
        self.edges = tuple(edges)
        self.edge_of = tuple(edge_of)

        self._check_connected()
        chi = self.n - self.m + self.f
        if chi > 2 or chi % 2:
            raise NegativeGenus(f"Euler characteristic {chi} is not of the form 2 - 2g with g >= 0")
        self.genus = (2 - chi) // 2

    def _check_connected(self) -> None:
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for x in (self.alpha[d], self.sigma[d], self.sigma_inv[d]):
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        if len(seen) != len(self.alpha):
            raise Disconnected("darts are not connected under <alpha, sigma>")

    @property
    def num_darts(self) -> int:
        return len(self.alpha)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def f(self) -> int:
        return len(self.face_darts)

    def origin(self, d: int) -> int:
        return self.vertex_of[d]

    def head(self, d: int) -> int:
        return self.vertex_of[self.alpha[d]]

    def left_face(self, d: int) -> int:
        return self.face_of[d]

    def right_face(self, d: int) -> int:
        return self.face_of[self.alpha[d]]

    def sign(self, d: int) -> int:
        """+1 if ``d`` runs along the reference orientation of its edge."""
        return 1 if d < self.alpha[d] else -1

    def degree(self, v: int) -> int:
        return len(self.vertices[v])

    def is_loop(self, e: int) -> bool:
        a, b = self.edges[e]
        return self.vertex_of[a] == self.vertex_of[b]

    @cached_property
    def dual(self) -> "SurfaceMap":
        return dual(self)

    @cached_property
    def basis(self):
        from .homology import tree_cotree_basis

        return tree_cotree_basis(self)

    @cached_property
    def dual_basis(self):
        from .homology import tree_cotree_basis

        return tree_cotree_basis(self.dual)

    def __repr__(self) -> str:
        return f"SurfaceMap(n={self.n}, m={self.m}, f={self.f}, genus={self.genus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, SurfaceMap) and self.alpha == other.alpha and self.sigma == other.sigma

    def __hash__(self) -> int:
        return hash((self.alpha, self.sigma))


def build_map(alpha: Sequence[int], sigma: Sequence[int]) -> SurfaceMap:
    return SurfaceMap(alpha, sigma)


@dataclass(frozen=True)
class Walk:
    """A sequence of darts, each traversed from its origin to its head."""

    darts: tuple[int, ...]
    closed: bool

    def __len__(self) -> int:
        return len(self.darts)

    def reversed(self, smap: SurfaceMap) -> "Walk":
        return Walk(tuple(smap.alpha[d] for d in reversed(self.darts)), self.closed)


def make_walk(smap: SurfaceMap, darts: Iterable[int]) -> Walk:
    darts = tuple(darts)
    for a, b in zip(darts, darts[1:]):
        if smap.head(a) != smap.origin(b):
            raise ValueError(f"darts {a} and {b} are not consecutive")
    closed = not darts or smap.head(darts[-1]) == smap.origin(darts[0])
    return Walk(darts, closed)


def check_cycle(smap: SurfaceMap, darts: Sequence[int]) -> Walk:
    """Validate a directed cycle (closed walk without repeated vertices)."""
    if not darts:
        raise NotACycle("empty walk")
    try:
        walk = make_walk(smap, darts)
    except ValueError as exc:
        raise NotACycle(str(exc)) from None
    if not walk.closed:
        raise NotACycle("walk is not closed")
    verts = [smap.origin(d) for d in darts]
    if len(set(verts)) != len(verts):
        raise NotACycle("walk repeats a vertex")
    if len({smap.edge_of[d] for d in darts}) != len(darts):
        raise NotACycle("walk repeats an edge")
    return walk


def turn_darts(smap: SurfaceMap, d_in: int, d_out: int) -> tuple[list[int], list[int]]:
    """Darts strictly left and strictly right of a walk entering by ``d_in`` and leaving by ``d_out``.

    Both lists are in the order the walk passes them.
    """
    back = smap.alpha[d_in]
    left = []
    d = smap.sigma[d_out]
    while d != back:
        left.append(d)
        d = smap.sigma[d]
    right = []
    d = smap.sigma[back]
    while d != d_out:
        right.append(d)
        d = smap.sigma[d]
    left.reverse()
    return left, right


def side_darts(smap: SurfaceMap, cycle: Sequence[int]) -> tuple[list[int], list[int]]:
    """Darts leaving the vertices of a cycle strictly on its left and on its right."""
    left: list[int] = []
    right: list[int] = []
    for i, d_out in enumerate(cycle):
        lp, rp = turn_darts(smap, cycle[i - 1], d_out)
        left.extend(lp)
        right.extend(rp)
    return left, right


def region_boundary(smap: SurfaceMap, region: Iterable[int]) -> list[int]:
    """The boundary of a set of faces as a closed walk keeping the region on its left.

    Raises NotACycle when the boundary is empty or is not one closed walk.
    """
    region = set(region)
    border = [d for d in range(smap.num_darts) if smap.face_of[d] in region and smap.face_of[smap.alpha[d]] not in region]
    if not border:
        raise NotACycle("region has no boundary")
    walk = [border[0]]
    while True:
        x = smap.phi[walk[-1]]
        while smap.face_of[smap.alpha[x]] in region:
            x = smap.phi[smap.alpha[x]]
        if x == walk[0]:
            break
        walk.append(x)
        if len(walk) > len(border):
            raise NotACycle("boundary walk does not close")
    if len(walk) != len(border):
        raise NotACycle("boundary has several components")
    return walk


def faces(smap: SurfaceMap) -> list[Walk]:
    return [Walk(darts, True) for darts in smap.face_darts]


def dual(smap: SurfaceMap) -> SurfaceMap:
    """The dual map, sharing dart ids with ``smap``.

    Dual dart ``d`` crosses the edge of ``d`` from its right face to its left
    face, so the reference orientation of ``e*`` goes from the face on the
    right of ``e`` to the face on the left of ``e``. Dual vertex of dart ``d``
    is the primal face ``smap.right_face(d)``.
    """
    a, phi = smap.alpha, smap.phi
    sigma_star = [a[phi[a[d]]] for d in range(smap.num_darts)]
    return SurfaceMap(a, sigma_star)


def is_triangulation(smap: SurfaceMap) -> bool:
    return all(len(f) == 3 for f in smap.face_darts)


def check_euler(smap: SurfaceMap) -> bool:
    return smap.n - smap.m + smap.f == 2 - 2 * smap.genus


def triangulation_edge_count(n: int, genus: int) -> int:
    return 3 * n + 6 * (genus - 1)


# -- orientations -----------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """One direction per edge, stored as the tail dart of every edge."""

    tails: tuple[int, ...]

    def bits(self, smap: SurfaceMap) -> int:
        """Bit ``e`` is set when edge ``e`` runs against its reference orientation."""
        key = 0
        for e, t in enumerate(self.tails):
            if t != smap.edges[e][0]:
                key |= 1 << e
        return key

    def flow(self, smap: SurfaceMap) -> tuple[int, ...]:
        return tuple(smap.sign(t) for t in self.tails)

    def heads(self, smap: SurfaceMap) -> tuple[int, ...]:
        return tuple(smap.alpha[t] for t in self.tails)

    def tail_set(self) -> frozenset[int]:
        return frozenset(self.tails)


def orientation_from_tails(smap: SurfaceMap, tails: Iterable[int]) -> Orientation:
    by_edge = [None] * smap.m
    for t in tails:
        e = smap.edge_of[t]
        if by_edge[e] is not None:
            raise ValueError(f"edge {e} oriented twice")
        by_edge[e] = t
    missing = [e for e, t in enumerate(by_edge) if t is None]
    if missing:
        raise ValueError(f"edges without orientation: {missing}")
    return Orientation(tuple(by_edge))


def orientation_from_bits(smap: SurfaceMap, key: int) -> Orientation:
    return Orientation(tuple(b if key >> e & 1 else a for e, (a, b) in enumerate(smap.edges)))


def reference_orientation(smap: SurfaceMap) -> Orientation:
    return Orientation(tuple(a for a, _ in smap.edges))


def outdegrees(smap: SurfaceMap, D: Orientation) -> list[int]:
    out = [0] * smap.n
    for t in D.tails:
        out[smap.vertex_of[t]] += 1
    return out


def reverse_edges(smap: SurfaceMap, D: Orientation, edges: Iterable[int]) -> Orientation:
    tails = list(D.tails)
    for e in edges:
        tails[e] = smap.alpha[tails[e]]
    return Orientation(tuple(tails))


def is_directed_walk(smap: SurfaceMap, D: Orientation, darts: Iterable[int]) -> bool:
    tails = D.tail_set()
    return all(d in tails for d in darts)


# -- standing assumptions ------------------------------------------------------


@dataclass(frozen=True)
class AssumptionReport:
    contractible_loops: tuple[int, ...]
    contractible_pairs: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.contractible_loops and not self.contractible_pairs


def validate_assumptions(smap: SurfaceMap) -> AssumptionReport:
    """Find contractible loops and contractible pairs of parallel edges."""
    from .homology import is_contractible

    loops = []
    for e, (a, b) in enumerate(smap.edges):
        if smap.origin(a) == smap.origin(b) and is_contractible(smap, (a,)):
            loops.append(e)

    by_ends: dict[tuple[int, int], list[int]] = {}
    for e, (a, b) in enumerate(smap.edges):
        u, v = smap.origin(a), smap.origin(b)
        if u != v:
            by_ends.setdefault((min(u, v), max(u, v)), []).append(e)
    pairs = []
    for (u, _), es in sorted(by_ends.items()):
        for i, e1 in enumerate(es):
            for e2 in es[i + 1:]:
                d1 = _dart_from(smap, e1, u)
                d2 = smap.alpha[_dart_from(smap, e2, u)]
                if is_contractible(smap, (d1, d2)):
                    pairs.append((e1, e2))
    return AssumptionReport(tuple(loops), tuple(pairs))


def _dart_from(smap: SurfaceMap, e: int, v: int) -> int:
    a, b = smap.edges[e]
    return a if smap.origin(a) == v else b
