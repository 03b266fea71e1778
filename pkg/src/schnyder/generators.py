"""Generators for standard maps."""

from __future__ import annotations

from .surface_map import SurfaceMap, validate_assumptions


class DegenerateGrid(ValueError):
    pass


def grid_map(a: int, b: int) -> SurfaceMap:
    """Triangulated ``a x b`` torus grid, without any validity check.

    Vertex ``(i, j)`` has id ``j * a + i``. Vertex ``v`` owns edges
    ``3v`` (east), ``3v + 1`` (north-east) and ``3v + 2`` (north); edge ``k``
    has dart ``2k`` at its owner and ``2k + 1`` at the other end. The
    counterclockwise rotation at a vertex is E, NE, N, W, SW, S.
    """
    if a < 1 or b < 1:
        raise DegenerateGrid(f"grid dimensions must be positive, got {a}x{b}")
    n = a * b

    def vid(i: int, j: int) -> int:
        return (j % b) * a + (i % a)

    alpha = [d ^ 1 for d in range(6 * n)]
    sigma = [0] * (6 * n)
    for j in range(b):
        for i in range(a):
            v = vid(i, j)
            west, south_west, south = vid(i - 1, j), vid(i - 1, j - 1), vid(i, j - 1)
            ring = [
                2 * (3 * v),
                2 * (3 * v + 1),
                2 * (3 * v + 2),
                2 * (3 * west) + 1,
                2 * (3 * south_west + 1) + 1,
                2 * (3 * south + 2) + 1,
            ]
            for x, y in zip(ring, ring[1:] + ring[:1]):
                sigma[x] = y
    return SurfaceMap(alpha, sigma)


def gen_grid(a: int, b: int, strict: bool = True) -> SurfaceMap:
    """Triangulated torus grid with no contractible loop or 2-cycle.

    With ``strict`` any side below 3 is refused outright. Otherwise the grid
    is built and refused only if it actually has a contractible loop or
    contractible pair of parallel edges.
    """
    if strict and (a < 3 or b < 3):
        raise DegenerateGrid(f"{a}x{b} grid: both sides must be at least 3")
    smap = grid_map(a, b)
    if not strict:
        report = validate_assumptions(smap)
        if not report.ok:
            raise DegenerateGrid(
                f"{a}x{b} grid has contractible loops {list(report.contractible_loops)}"
                f" or 2-cycles {list(report.contractible_pairs)}"
            )
    return smap


def one_vertex_torus() -> SurfaceMap:
    """Two loops ``a = (0, 1)`` and ``b = (2, 3)`` with rotation a, b, a^-1, b^-1."""
    return SurfaceMap([1, 0, 3, 2], [2, 3, 1, 0])


def octagon_double_torus() -> SurfaceMap:
    """One vertex, four loops, one octagonal face: the double torus as a glued octagon."""
    order = [0, 2, 1, 3, 4, 6, 5, 7]
    sigma = [0] * 8
    for x, y in zip(order, order[1:] + order[:1]):
        sigma[x] = y
    return SurfaceMap([d ^ 1 for d in range(8)], sigma)


def stack_vertex(smap: SurfaceMap, face: int) -> SurfaceMap:
    """Add a vertex inside ``face`` joined to each of its corners.

    New edge ``j`` (in face order) gets darts ``2m + 2j`` at the old corner
    and ``2m + 2j + 1`` at the new vertex.
    """
    darts = smap.face_darts[face]
    base = smap.num_darts
    alpha = list(smap.alpha) + [0] * (2 * len(darts))
    sigma = list(smap.sigma) + [0] * (2 * len(darts))
    spoke = {d: base + 2 * j for j, d in enumerate(darts)}
    for d, x in spoke.items():
        alpha[x], alpha[x + 1] = x + 1, x
    # corner darts are rewired one by one so a vertex visited twice stays consistent
    for d in darts:
        x = spoke[d]
        sigma[x] = sigma[d]
        sigma[d] = x
    for j, d in enumerate(darts):
        nxt = darts[(j + 1) % len(darts)]
        sigma[spoke[d] + 1] = spoke[nxt] + 1
    return SurfaceMap(alpha, sigma)
