"""Integer flows, the beta pairing and homology bases.

A flow is a tuple of integers indexed by edge id, measured against the
reference orientation of each edge. A flow on the dual map uses the same
edge ids (the dual of edge ``e`` is dual edge ``e``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .surface_map import NotACycle, SurfaceMap, Walk, check_cycle

Flow = tuple[int, ...]


class NotZeroHomologous(ValueError):
    """The flow is not an integer combination of facial flows.

    ``witness`` is a closed walk of the dual map (a list of dual darts) whose
    pairing with the flow is ``pairing`` (nonzero).
    """

    def __init__(self, witness: list[int], pairing: int):
        super().__init__(f"flow pairs to {pairing} with a closed dual walk")
        self.witness = witness
        self.pairing = pairing


class NotCirculation(ValueError):
    pass


def zero_flow(smap: SurfaceMap) -> Flow:
    return (0,) * smap.m


def characteristic_flow(smap: SurfaceMap, walk: Walk | Iterable[int]) -> Flow:
    darts = walk.darts if isinstance(walk, Walk) else walk
    out = [0] * smap.m
    for d in darts:
        out[smap.edge_of[d]] += smap.sign(d)
    return tuple(out)


def add_flows(*flows: Sequence[int]) -> Flow:
    return tuple(sum(vals) for vals in zip(*flows))


def scale_flow(k: int, flow: Sequence[int]) -> Flow:
    return tuple(k * x for x in flow)


def sub_flows(p: Sequence[int], q: Sequence[int]) -> Flow:
    return tuple(a - b for a, b in zip(p, q))


def beta(p: Sequence[int], d: Sequence[int]) -> int:
    """``sum_e p_e * d_{e*}`` for a primal flow ``p`` and a dual flow ``d``."""
    if len(p) != len(d):
        raise ValueError(f"dimension mismatch: {len(p)} primal vs {len(d)} dual edges")
    return sum(a * b for a, b in zip(p, d) if a and b)


def facial_flows(smap: SurfaceMap) -> list[Flow]:
    return [characteristic_flow(smap, f) for f in smap.face_darts]


def vertex_dual_flows(smap: SurfaceMap) -> list[Flow]:
    """Flows of the counterclockwise dual facial walks, one around each vertex."""
    return [characteristic_flow(smap, v) for v in smap.vertices]


def divergence(smap: SurfaceMap, z: Sequence[int]) -> list[int]:
    """Net outflow of ``z`` at every vertex."""
    out = [0] * smap.n
    for e, (a, b) in enumerate(smap.edges):
        if z[e]:
            out[smap.origin(a)] += z[e]
            out[smap.origin(b)] -= z[e]
    return out


def is_circulation(smap: SurfaceMap, z: Sequence[int]) -> bool:
    return not any(divergence(smap, z))


# -- bases ----------------------------------------------------------------------


@dataclass(frozen=True)
class CycleBasis:
    cycles: tuple[Walk, ...]
    tree_edges: frozenset[int]
    cotree_edges: frozenset[int]
    leftover_edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def flows(self, smap: SurfaceMap) -> list[Flow]:
        return [characteristic_flow(smap, c) for c in self.cycles]


def _spanning_tree(smap: SurfaceMap, root: int = 0) -> tuple[set[int], list[int | None]]:
    parent: list[int | None] = [None] * smap.n
    seen = [False] * smap.n
    seen[root] = True
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for d in smap.vertices[v]:
            w = smap.head(d)
            if not seen[w]:
                seen[w] = True
                parent[w] = d
                tree.add(smap.edge_of[d])
                queue.append(w)
    return tree, parent


def tree_path(smap: SurfaceMap, parent: Sequence[int | None], u: int, v: int) -> list[int]:
    """Darts of the tree path from ``u`` to ``v``."""
    up_u = []
    x = u
    chain_u = [u]
    while parent[x] is not None:
        x = smap.origin(parent[x])
        chain_u.append(x)
    pos_u = {x: i for i, x in enumerate(chain_u)}
    down_v = []
    x = v
    while x not in pos_u:
        down_v.append(parent[x])
        x = smap.origin(parent[x])
    meet = x
    x = u
    while x != meet:
        up_u.append(smap.alpha[parent[x]])
        x = smap.origin(parent[x])
    return up_u + down_v[::-1]


def tree_cotree_basis(smap: SurfaceMap) -> CycleBasis:
    """Fundamental cycles of the ``2g`` edges outside a tree and a dual cotree.

    The tree is a BFS tree from vertex 0; the cotree is a BFS tree of the dual
    from face 0 avoiding duals of tree edges. Each leftover edge ``l`` gives
    the cycle starting with its reference dart and closing along the tree.
    Cycles are ordered by leftover edge id.
    """
    tree, parent = _spanning_tree(smap)
    cotree = set()
    seen = [False] * smap.f
    seen[0] = True
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for d in smap.face_darts[a]:
            e = smap.edge_of[d]
            b = smap.right_face(d)
            if e not in tree and not seen[b]:
                seen[b] = True
                cotree.add(e)
                queue.append(b)
    leftover = [e for e in range(smap.m) if e not in tree and e not in cotree]
    if len(leftover) != 2 * smap.genus:
        raise AssertionError(f"found {len(leftover)} leftover edges for genus {smap.genus}")
    cycles = []
    for e in leftover:
        r = smap.edges[e][0]
        darts = [r] + tree_path(smap, parent, smap.head(r), smap.origin(r))
        cycles.append(check_cycle(smap, darts))
    return CycleBasis(tuple(cycles), frozenset(tree), frozenset(cotree), tuple(leftover))


# -- homology tests ---------------------------------------------------------------


def is_homologous(smap: SurfaceMap, p: Sequence[int], q: Sequence[int], dual_basis: CycleBasis | None = None) -> bool:
    """True iff ``p - q`` is an integer combination of facial flows."""
    z = sub_flows(p, q)
    if not any(z):
        return True
    if dual_basis is None:
        dual_basis = smap.dual_basis
    if any(beta(z, w) for w in _vertex_dual_flows_cached(smap)):
        return False
    return not any(beta(z, b) for b in _dual_basis_flows(smap, dual_basis))


def is_zero_homologous(smap: SurfaceMap, z: Sequence[int]) -> bool:
    return is_homologous(smap, z, zero_flow(smap))


def _cached(smap: SurfaceMap, key: str, build):
    store = smap.__dict__.setdefault("_homology_cache", {})
    if key not in store:
        store[key] = build()
    return store[key]


def _vertex_dual_flows_cached(smap: SurfaceMap) -> list[Flow]:
    return _cached(smap, "vertex_dual_flows", lambda: vertex_dual_flows(smap))


def _dual_basis_flows(smap: SurfaceMap, dual_basis: CycleBasis) -> list[Flow]:
    if dual_basis is smap.dual_basis:
        return _cached(smap, "dual_basis_flows", lambda: dual_basis.flows(smap.dual))
    return dual_basis.flows(smap.dual)


@dataclass(frozen=True)
class FacePotential:
    """Coefficients ``lam`` with ``sum_F lam[F] * phi(F) == z`` and ``lam[f0] == 0``."""

    lam: tuple[int, ...]
    f0: int


def face_potential(smap: SurfaceMap, z: Sequence[int], f0: int = 0) -> FacePotential:
    """Write a 0-homologous flow as a combination of counterclockwise faces.

    Labels are propagated breadth first over the dual; crossing edge ``e`` from
    its left face to its right face lowers the label by ``z_e`` (reference
    orientation). Every non-tree dual edge is checked for consistency.
    """
    lam: list[int | None] = [None] * smap.f
    path_to: list[list[int]] = [[] for _ in range(smap.f)]
    lam[f0] = 0
    queue = deque([f0])
    while queue:
        a = queue.popleft()
        for d in smap.face_darts[a]:
            cross = smap.alpha[d]  # dual dart from face a (left of d) to right of d
            b = smap.face_of[cross]
            step = z[smap.edge_of[d]] * smap.sign(cross)
            if lam[b] is None:
                lam[b] = lam[a] + step
                path_to[b] = path_to[a] + [cross]
                queue.append(b)
            elif lam[b] != lam[a] + step:
                witness = path_to[a] + [cross] + [smap.alpha[x] for x in reversed(path_to[b])]
                raise NotZeroHomologous(witness, lam[a] + step - lam[b])
    return FacePotential(tuple(lam), f0)


def flow_from_potential(smap: SurfaceMap, lam: Sequence[int]) -> Flow:
    """``sum_F lam[F] * phi(F)``, edge by edge."""
    return tuple(lam[smap.face_of[a]] - lam[smap.face_of[b]] for a, b in smap.edges)


def dual_walk_flow(smap: SurfaceMap, darts: Iterable[int]) -> Flow:
    """Characteristic flow of a walk given as dual darts (ids shared with ``smap``)."""
    return characteristic_flow(smap, darts)


def is_closed_dual_walk(smap: SurfaceMap, darts: Sequence[int]) -> bool:
    """Dual dart ``x`` goes from face ``right_face(x)`` to face ``left_face(x)``."""
    if not darts:
        return True
    for a, b in zip(darts, list(darts[1:]) + [darts[0]]):
        if smap.face_of[a] != smap.face_of[smap.alpha[b]]:
            return False
    return True


# -- coordinates ----------------------------------------------------------------


def _solve_exact(matrix: list[list[int]], rhs: list[int]) -> list[Fraction]:
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("basis cycles are not independent")
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                k = a[r][col] / a[col][col]
                a[r] = [x - k * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def homology_coordinates(smap: SurfaceMap, z: Sequence[int], basis: CycleBasis | None = None) -> tuple[int, ...]:
    """Coefficients ``mu`` with ``z - sum mu_i phi(B_i)`` 0-homologous.

    The class of a circulation is detected by its pairing with the dual basis;
    the resulting square system is solved exactly.
    """
    if not is_circulation(smap, z):
        raise NotCirculation("flow has nonzero divergence")
    if basis is None:
        basis = smap.basis
    dual_flows = _dual_basis_flows(smap, smap.dual_basis)
    bflows = basis.flows(smap)
    matrix = [[beta(b, w) for b in bflows] for w in dual_flows]
    rhs = [beta(z, w) for w in dual_flows]
    if not matrix:
        return ()
    mu = _solve_exact(matrix, rhs)
    if any(x.denominator != 1 for x in mu):
        raise ValueError("cycles do not form an integral homology basis")
    return tuple(int(x) for x in mu)


def weakly_homologous(smap: SurfaceMap, p: Sequence[int], q: Sequence[int]) -> bool:
    return is_homologous(smap, p, q) or is_homologous(smap, p, scale_flow(-1, q))


# -- contractibility ------------------------------------------------------------


def cycle_sides(smap: SurfaceMap, darts: Sequence[int]) -> tuple[frozenset[int], frozenset[int]] | None:
    """Faces on the left and on the right of a cycle, or None if it does not separate."""
    on_cycle = {smap.edge_of[d] for d in darts}
    parent = list(range(smap.f))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (a, b) in enumerate(smap.edges):
        if e not in on_cycle:
            parent[find(smap.face_of[a])] = find(smap.face_of[b])
    left_roots = {find(smap.face_of[d]) for d in darts}
    right_roots = {find(smap.right_face(d)) for d in darts}
    if left_roots & right_roots:
        return None
    left = frozenset(f for f in range(smap.f) if find(f) in left_roots)
    right = frozenset(f for f in range(smap.f) if find(f) in right_roots)
    return left, right


def region_euler_characteristic(smap: SurfaceMap, region: frozenset[int], darts: Sequence[int]) -> int:
    """Euler characteristic of the closed region bounded by a cycle."""
    on_cycle_v = {smap.origin(d) for d in darts}
    on_cycle_e = {smap.edge_of[d] for d in darts}
    inner_v = sum(
        1
        for v, vd in enumerate(smap.vertices)
        if v not in on_cycle_v and smap.face_of[vd[0]] in region
    )
    inner_e = sum(
        1
        for e, (a, b) in enumerate(smap.edges)
        if e not in on_cycle_e and smap.face_of[a] in region
    )
    return inner_v - inner_e + len(region)


def disk_side(smap: SurfaceMap, darts: Sequence[int]) -> str | None:
    """``"left"`` or ``"right"`` if that side of the cycle is a disk, else None."""
    check_cycle(smap, darts)
    if not is_zero_homologous(smap, characteristic_flow(smap, darts)):
        return None
    sides = cycle_sides(smap, darts)
    if sides is None:
        return None
    left, right = sides
    if region_euler_characteristic(smap, left, darts) == 1:
        return "left"
    if region_euler_characteristic(smap, right, darts) == 1:
        return "right"
    return None


def is_contractible(smap: SurfaceMap, darts: Sequence[int]) -> bool:
    try:
        return disk_side(smap, darts) is not None
    except NotACycle:
        return False
