"""Brute-force ground truth for small maps.

Nothing here calls into the homology, completion or lattice modules: the
checks are re-derived from the definitions so that agreement with the fast
code means something. Only the raw permutations of a map are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .surface_map import Orientation, SurfaceMap


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_orientations: int = 1_000_000
    max_edges: int = 40

    def check_size(self, m: int) -> None:
        if m > self.max_edges:
            raise BudgetExceeded(f"{m} edges exceeds the cap of {self.max_edges}")


DEFAULT_BUDGET = EnumerationBudget()


def _edge_table(smap: SurfaceMap) -> list[tuple[int, int]]:
    seen = set()
    out = []
    for d in range(len(smap.alpha)):
        if d not in seen:
            seen.add(d)
            seen.add(smap.alpha[d])
            out.append((d, smap.alpha[d]))
    return out


def _vertex_of(smap: SurfaceMap) -> list[int]:
    owner = [-1] * len(smap.sigma)
    k = 0
    for d in range(len(smap.sigma)):
        if owner[d] == -1:
            x = d
            while owner[x] == -1:
                owner[x] = k
                x = smap.sigma[x]
            k += 1
    return owner


# -- orientations with prescribed outdegrees ------------------------------------------


def iter_alpha_orientations(smap: SurfaceMap, outdeg: Sequence[int], budget: EnumerationBudget = DEFAULT_BUDGET) -> Iterator[Orientation]:
    """Every orientation whose outdegree at ``v`` is ``outdeg[v]``, by backtracking."""
    edges = _edge_table(smap)
    budget.check_size(len(edges))
    owner = _vertex_of(smap)
    nverts = max(owner) + 1
    if sum(outdeg) != len(edges) or len(outdeg) != nverts:
        return
    need = list(outdeg)
    left = [0] * nverts  # edges not yet decided at each vertex (a loop counts once)
    for a, b in edges:
        left[owner[a]] += 1
        if owner[b] != owner[a]:
            left[owner[b]] += 1
    tails = [0] * len(edges)
    count = 0

    def rec(i: int) -> Iterator[Orientation]:
        nonlocal count
        if i == len(edges):
            count += 1
            if count > budget.max_orientations:
                raise BudgetExceeded(f"more than {budget.max_orientations} orientations")
            yield Orientation(tuple(tails))
            return
        a, b = edges[i]
        u, v = owner[a], owner[b]
        for t, w in ((a, u), (b, v)):
            if need[w] == 0:
                continue
            need[w] -= 1
            left[u] -= 1
            if v != u:
                left[v] -= 1
            if need[u] <= left[u] and need[v] <= left[v]:
                tails[i] = t
                yield from rec(i + 1)
            left[u] += 1
            if v != u:
                left[v] += 1
            need[w] += 1
            if u == v:
                break  # both darts of a loop give the same outdegrees

    yield from rec(0)


def enumerate_alpha_orientations(smap: SurfaceMap, outdeg: Sequence[int], budget: EnumerationBudget = DEFAULT_BUDGET) -> list[Orientation]:
    """Orientations with the prescribed outdegrees.

    For a loop both directions give the same outdegrees; both are listed.
    """
    out = []
    edges = _edge_table(smap)
    owner = _vertex_of(smap)
    loops = [i for i, (a, b) in enumerate(edges) if owner[a] == owner[b]]
    for D in iter_alpha_orientations(smap, outdeg, budget):
        variants = [list(D.tails)]
        for i in loops:
            variants = variants + [v[:i] + [smap.alpha[v[i]]] + v[i + 1:] for v in variants]
        for v in variants:
            out.append(Orientation(tuple(v)))
            if len(out) > budget.max_orientations:
                raise BudgetExceeded(f"more than {budget.max_orientations} orientations")
    return out


# -- exact homology -----------------------------------------------------------------


class FaceSpan:
    """The rational span of the counterclockwise facial flows, in echelon form.

    Face-edge incidence is a network matrix, hence totally unimodular, so a
    flow in the rational span of the facial flows is also an integer
    combination of them.
    """

    def __init__(self, smap: SurfaceMap):
        edges = _edge_table(smap)
        self.edge_of = {}
        for i, (a, b) in enumerate(edges):
            self.edge_of[a] = (i, 1)
            self.edge_of[b] = (i, -1)
        self.m = len(edges)
        phi = [smap.sigma_inv[smap.alpha[d]] for d in range(len(smap.alpha))]
        rows = []
        seen = [False] * len(phi)
        for d in range(len(phi)):
            if seen[d]:
                continue
            row = [Fraction(0)] * self.m
            x = d
            while not seen[x]:
                seen[x] = True
                i, s = self.edge_of[x]
                row[i] += s
                x = phi[x]
            rows.append(row)
        self.pivots: list[tuple[int, list[Fraction]]] = []
        for row in rows:
            row = self._reduce(row)
            lead = next((i for i, x in enumerate(row) if x != 0), None)
            if lead is not None:
                inv = 1 / row[lead]
                self.pivots.append((lead, [x * inv for x in row]))

    def _reduce(self, row: list[Fraction]) -> list[Fraction]:
        row = list(row)
        for lead, prow in self.pivots:
            if row[lead] != 0:
                k = row[lead]
                row = [x - k * y for x, y in zip(row, prow)]
        return row

    def contains(self, flow: Sequence[int]) -> bool:
        return not any(self._reduce([Fraction(x) for x in flow]))

    def flow_of_darts(self, darts: Sequence[int]) -> list[int]:
        out = [0] * self.m
        for d in darts:
            i, s = self.edge_of[d]
            out[i] += s
        return out


def is_homologous_exact(smap: SurfaceMap, p: Sequence[int], q: Sequence[int], span: FaceSpan | None = None) -> bool:
    if span is None:
        span = FaceSpan(smap)
    return span.contains([a - b for a, b in zip(p, q)])


def orientation_flow(smap: SurfaceMap, D: Orientation) -> list[int]:
    return [1 if t < smap.alpha[t] else -1 for t in D.tails]


def homologous_orientations_exhaustive(smap: SurfaceMap, D0: Orientation, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[Orientation]:
    """All orientations with the outdegrees of ``D0`` whose flow is homologous to it."""
    owner = _vertex_of(smap)
    outdeg = [0] * (max(owner) + 1)
    for t in D0.tails:
        outdeg[owner[t]] += 1
    span = FaceSpan(smap)
    base = orientation_flow(smap, D0)
    return [
        D
        for D in enumerate_alpha_orientations(smap, outdeg, budget)
        if span.contains([a - b for a, b in zip(orientation_flow(smap, D), base)])
    ]


def rigid_edges_exhaustive(smap: SurfaceMap, D0: Orientation, budget: EnumerationBudget = DEFAULT_BUDGET) -> frozenset[int]:
    family = homologous_orientations_exhaustive(smap, D0, budget)
    return frozenset(e for e in range(len(D0.tails)) if all(D.tails[e] == D0.tails[e] for D in family))


# -- Schnyder orientations of a completion ----------------------------------------


def _hat_tables(comp):
    hat = comp.map
    size = len(hat.alpha)
    owner = _vertex_of(hat)
    phi = [hat.sigma_inv[hat.alpha[d]] for d in range(size)]
    face = [-1] * size
    k = 0
    for d in range(size):
        if face[d] == -1:
            x = d
            while face[x] == -1:
                face[x] = k
                x = phi[x]
            k += 1
    return hat, owner, face, k


def schnyder_check_exhaustive(comp, D: Orientation) -> bool:
    """Decide whether ``D`` comes from an EDGE angle labeling, from first principles.

    Every completion edge at a primal or dual vertex ``w`` forces the label
    difference between the two faces beside it: +1 going counterclockwise
    around ``w`` across an edge leaving ``w``, 0 otherwise. All these
    constraints are solved mod 3 with a weighted union-find (which is the
    same as testing every closed dual walk). A solution is then checked to
    be EDGE at every edge-vertex.
    """
    hat, owner, face, nfaces = _hat_tables(comp)
    tails = set(D.tails)
    parent = list(range(nfaces))
    offset = [0] * nfaces  # label(x) - label(parent(x)) mod 3

    def find(x: int) -> tuple[int, int]:
        if parent[x] == x:
            return x, 0
        root, off = find(parent[x])
        offset[x] = (offset[x] + off) % 3
        parent[x] = root
        return root, offset[x]

    def union(a: int, b: int, diff: int) -> bool:
        """Impose label(a) - label(b) = diff."""
        ra, oa = find(a)
        rb, ob = find(b)
        if ra == rb:
            return (oa - ob) % 3 == diff % 3
        parent[ra] = rb
        offset[ra] = (diff + ob - oa) % 3
        return True

    for d in range(len(hat.alpha)):
        if comp.role[owner[d]] == "edge":
            continue
        # face left of d lies counterclockwise after d; the face right of d before it
        left, right = face[d], face[hat.alpha[d]]
        if not union(left, right, 1 if d in tails else 0):
            return False

    labels = [find(f)[1] for f in range(nfaces)]
    first_dart = {}
    for d, x in enumerate(owner):
        first_dart.setdefault(x, d)
    for x, d0 in first_dart.items():
        if comp.role[x] != "edge":
            continue
        ring = []
        d = d0
        while True:
            ring.append(labels[face[d]])
            d = hat.sigma[d]
            if d == d0:
                break
        if not _edge_pattern(ring):
            return False
    return True


def _edge_pattern(ring: list[int]) -> bool:
    """Four labels around an edge (either rotational direction): constant or i-1, i, i, i+1."""
    if len(set(ring)) == 1:
        return True
    for seq in (ring, ring[::-1]):
        for s in range(4):
            a, b, c, d = seq[s:] + seq[:s]
            if b == c and (b - a) % 3 == 1 and (d - b) % 3 == 1:
                return True
    return False


def iter_mod3_orientations(comp, budget: EnumerationBudget = DEFAULT_BUDGET) -> Iterator[Orientation]:
    """Orientations of the completion with outdegree 1 mod 3 at edge-vertices and 0 mod 3 elsewhere.

    Each edge-vertex has degree 4, so it either has exactly one outgoing
    edge (4 ways) or four (1 way); every completion edge touches exactly one
    edge-vertex, so choosing a configuration per edge-vertex fixes the
    whole orientation.
    """
    hat = comp.map
    owner = _vertex_of(hat)
    xs = [v for v in range(len(comp.role)) if comp.role[v] == "edge"]
    budget.check_size(len(xs))
    darts_at = {x: [d for d in range(len(owner)) if owner[d] == x] for x in xs}
    # vertices (primal/dual) finished after each edge-vertex in this order
    last_seen: dict[int, int] = {}
    for i, x in enumerate(xs):
        for d in darts_at[x]:
            last_seen[owner[hat.alpha[d]]] = i
    closes = [[] for _ in xs]
    for w, i in last_seen.items():
        closes[i].append(w)
    out = [0] * (max(owner) + 1)
    tails: dict[int, int] = {}
    edge_index = {}
    for d in range(len(owner)):
        if d < hat.alpha[d]:
            edge_index[d] = edge_index[hat.alpha[d]] = len(edge_index) // 2
    count = 0

    def configs(x: int):
        ds = darts_at[x]
        for keep in ds:
            yield [keep], [d for d in ds if d != keep]
        yield list(ds), []

    def rec(i: int) -> Iterator[Orientation]:
        nonlocal count
        if i == len(xs):
            count += 1
            if count > budget.max_orientations:
                raise BudgetExceeded(f"more than {budget.max_orientations} orientations")
            yield Orientation(tuple(tails[e] for e in range(len(tails))))
            return
        x = xs[i]
        for outgoing, incoming in configs(x):
            for d in outgoing:
                tails[edge_index[d]] = d
            for d in incoming:
                tails[edge_index[d]] = hat.alpha[d]
                out[owner[hat.alpha[d]]] += 1
            if all(out[w] % 3 == 0 for w in closes[i]):
                yield from rec(i + 1)
            for d in incoming:
                out[owner[hat.alpha[d]]] -= 1

    yield from rec(0)


# -- partitions ---------------------------------------------------------------------


def partition_search(smap: SurfaceMap, T: Sequence[int], eulerian: bool = False, max_edges: int = 15, span: FaceSpan | None = None):
    """Split the support of ``T`` into three pairwise homologous parts, by exhaustive search.

    Returns a tuple of three flows, or None. With ``eulerian`` every part
    must also have zero divergence.
    """
    support = [e for e, v in enumerate(T) if v]
    if len(support) > max_edges:
        raise BudgetExceeded(f"subgraph has {len(support)} edges, cap is {max_edges}")
    if span is None:
        span = FaceSpan(smap)
    edges = _edge_table(smap)
    owner = _vertex_of(smap)
    ends = []
    for e in support:
        a, b = edges[e]
        tail, head = (a, b) if T[e] > 0 else (b, a)
        ends.append((owner[tail], owner[head]))
    last = {}
    for i, (u, v) in enumerate(ends):
        last[u] = i
        last[v] = i
    closes = [[] for _ in support]
    for w, i in last.items():
        closes[i].append(w)
    div = [dict() for _ in range(3)]
    assign = [0] * len(support)

    def rec(i: int):
        if i == len(support):
            parts = [[0] * len(T) for _ in range(3)]
            for k, e in enumerate(support):
                parts[assign[k]][e] = T[e]
            if span.contains([a - b for a, b in zip(parts[0], parts[1])]) and span.contains(
                [a - b for a, b in zip(parts[1], parts[2])]
            ):
                return tuple(tuple(p) for p in parts)
            return None
        u, v = ends[i]
        for c in range(3) if i else (0,):
            assign[i] = c
            div[c][u] = div[c].get(u, 0) + 1
            div[c][v] = div[c].get(v, 0) - 1
            ok = True
            for w in closes[i]:
                vals = [div[k].get(w, 0) for k in range(3)]
                if vals[0] != vals[1] or vals[1] != vals[2] or (eulerian and vals[0] != 0):
                    ok = False
                    break
            found = rec(i + 1) if ok else None
            div[c][u] -= 1
            div[c][v] += 1
            if found is not None:
                return found
        return None

    return rec(0)
