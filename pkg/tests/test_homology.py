import pytest
from hypothesis import given, strategies as st

from schnyder.fixtures import load
from schnyder.generators import grid_map, one_vertex_torus
from schnyder.homology import (
    NotCirculation,
    NotZeroHomologous,
    add_flows,
    beta,
    characteristic_flow,
    dual_walk_flow,
    face_potential,
    facial_flows,
    flow_from_potential,
    homology_coordinates,
    is_closed_dual_walk,
    is_contractible,
    is_homologous,
    is_zero_homologous,
    scale_flow,
    tree_cotree_basis,
    vertex_dual_flows,
    weakly_homologous,
    zero_flow,
)
from schnyder.surface_map import SurfaceMap, dual, region_boundary

from strategies import flows, small_maps


def test_characteristic_flow_counts_traversals(grid33):
    assert characteristic_flow(grid33, []) == zero_flow(grid33)
    a, b = grid33.edges[0]
    z = characteristic_flow(grid33, [a, a, b])
    assert z[0] == 1 and sum(map(abs, z)) == 1


def test_one_vertex_torus_face_flow_vanishes():
    t = one_vertex_torus()
    assert characteristic_flow(t, t.face_darts[0]) == (0, 0)


def test_beta_rejects_mismatch():
    with pytest.raises(ValueError):
        beta((1, 2), (1,))


@given(small_maps(), st.data())
def test_beta_bilinear(smap, data):
    p, q, w = (data.draw(flows(smap)) for _ in range(3))
    assert beta(add_flows(p, q), w) == beta(p, w) + beta(q, w)
    assert beta(scale_flow(-3, p), w) == -3 * beta(p, w)
    assert beta(zero_flow(smap), w) == 0


@given(small_maps())
def test_faces_pair_to_zero_with_closed_dual_walks(smap):
    walks = [dual_walk_flow(smap, c.darts) for c in smap.dual_basis.cycles]
    walks += vertex_dual_flows(smap)
    for f in facial_flows(smap):
        for w in walks:
            assert beta(f, w) == 0


@given(small_maps())
def test_vertex_dual_walks_are_closed(smap):
    for rot in smap.vertices:
        assert is_closed_dual_walk(smap, rot)
    for c in smap.dual_basis.cycles:
        assert is_closed_dual_walk(smap, c.darts)


def test_basis_sizes(grid33):
    assert len(tree_cotree_basis(grid33)) == 2
    planar = SurfaceMap([1, 0], [1, 0])
    assert len(tree_cotree_basis(planar)) == 0


def test_octagon_basis_is_its_loops():
    o = load("double-torus-octagon").map
    b = tree_cotree_basis(o)
    assert len(b) == 4
    assert sorted(o.edge_of[c.darts[0]] for c in b.cycles) == [0, 1, 2, 3]
    assert all(len(c.darts) == 1 for c in b.cycles)


@given(small_maps())
def test_basis_cycles_are_cycles_with_unit_coordinates(smap):
    basis = smap.basis
    assert len(basis) == 2 * smap.genus
    for i, c in enumerate(basis.cycles):
        verts = [smap.origin(d) for d in c.darts]
        assert len(set(verts)) == len(verts)
        coords = homology_coordinates(smap, characteristic_flow(smap, c))
        assert coords == tuple(int(i == j) for j in range(len(basis)))


def test_sum_of_basis_cycles():
    g = grid_map(3, 3)
    z = add_flows(*(characteristic_flow(g, c) for c in g.basis.cycles))
    assert homology_coordinates(g, z) == (1, 1)


def test_coordinates_need_circulation(grid33):
    with pytest.raises(NotCirculation):
        homology_coordinates(grid33, characteristic_flow(grid33, [0]))


@given(small_maps(), st.data())
def test_face_potential_reproduces_flow(smap, data):
    lam = data.draw(st.lists(st.integers(-3, 3), min_size=smap.f, max_size=smap.f))
    lam[0] = 0
    z = flow_from_potential(smap, lam)
    pot = face_potential(smap, z, 0)
    assert flow_from_potential(smap, pot.lam) == z
    assert pot.lam[0] == 0
    assert is_zero_homologous(smap, z)


def test_face_potential_of_single_face(grid33):
    f = 5
    pot = face_potential(grid33, facial_flows(grid33)[f], 0)
    assert pot.lam == tuple(int(i == f) for i in range(grid33.f))
    assert face_potential(grid33, zero_flow(grid33)).lam == (0,) * grid33.f


def test_face_potential_rejects_loop_with_witness():
    t = one_vertex_torus()
    z = characteristic_flow(t, [0])
    with pytest.raises(NotZeroHomologous) as info:
        face_potential(t, z)
    w = info.value.witness
    assert is_closed_dual_walk(t, w)
    assert beta(z, dual_walk_flow(t, w)) != 0


@given(small_maps(), st.data())
def test_face_potential_agrees_with_homology_test(smap, data):
    z = data.draw(flows(smap, -1, 1))
    try:
        face_potential(smap, z)
        ok = True
    except NotZeroHomologous:
        ok = False
    assert ok == is_homologous(smap, z, zero_flow(smap))


@given(small_maps(), st.data())
def test_coordinates_ignore_faces(smap, data):
    if smap.genus == 0:
        return
    c = data.draw(st.sampled_from(smap.basis.cycles))
    f = data.draw(st.integers(0, smap.f - 1))
    z = characteristic_flow(smap, c)
    assert homology_coordinates(smap, add_flows(z, facial_flows(smap)[f])) == homology_coordinates(smap, z)
    assert is_homologous(smap, z, add_flows(z, facial_flows(smap)[f]))


def test_torus_loops_not_weakly_homologous():
    t = one_vertex_torus()
    a, b = characteristic_flow(t, [0]), characteristic_flow(t, [2])
    assert not is_homologous(t, a, b)
    assert not weakly_homologous(t, a, b)
    assert weakly_homologous(t, a, scale_flow(-1, a))


def _relabeled(smap):
    # same map with dart ids reversed, which gives a different tree-cotree basis
    perm = list(reversed(range(smap.num_darts)))
    inv = {p: i for i, p in enumerate(perm)}
    alpha = [perm[smap.alpha[inv[d]]] for d in range(smap.num_darts)]
    sigma = [perm[smap.sigma[inv[d]]] for d in range(smap.num_darts)]
    other = SurfaceMap(alpha, sigma)
    return other, perm


def test_weak_homology_is_basis_independent():
    g = grid_map(3, 3)
    other, perm = _relabeled(g)
    assert other.basis.cycles != g.basis.cycles
    cycles = [[0, 6, 12], [4, 22, 40], [2, 26, 36], [0, 8, 1]]
    cycles = [c for c in cycles if _is_closed(g, c)]
    for c1 in cycles:
        for c2 in cycles:
            here = weakly_homologous(g, characteristic_flow(g, c1), characteristic_flow(g, c2))
            there = weakly_homologous(
                other,
                characteristic_flow(other, [perm[d] for d in c1]),
                characteristic_flow(other, [perm[d] for d in c2]),
            )
            assert here == there


def _is_closed(g, darts):
    return all(g.head(a) == g.origin(b) for a, b in zip(darts, darts[1:] + darts[:1]))


def test_contractible_region_boundaries(grid33):
    walk = region_boundary(grid33, {0, 1})
    assert is_contractible(grid33, walk)
    assert not is_contractible(grid33, [0, 6, 12])


def test_dual_uses_right_to_left(grid33):
    d = dual(grid33)
    # dual vertices group darts by the face on their right
    for rot in d.vertices:
        assert len({grid33.right_face(x) for x in rot}) == 1
    assert d.n == grid33.f
