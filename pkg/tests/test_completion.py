import pytest
from hypothesis import given, strategies as st

from schnyder import oracle
from schnyder.completion import (
    DUAL,
    EDGE,
    PRIMAL,
    MalformedIntervalPattern,
    NotEdgeLabeling,
    NotSchnyder,
    SinkVertex,
    check_schnyder_property,
    check_wood,
    classify,
    complete,
    delta,
    extract_labeling,
    gamma,
    hat_outdegrees,
    is_mod3_orientation,
    is_schnyder_orientation,
    labeling_to_orientation,
    monochromatic_faces,
    out_edge_flow,
    side_walks,
    to_colored_wood,
    vertex_type,
    wood_to_labeling,
)
from schnyder.fixtures import load
from schnyder.generators import grid_map
from schnyder.homology import is_closed_dual_walk
from schnyder.surface_map import Orientation, region_boundary, reverse_edges
from schnyder.toroidal import find_3_orientation

from strategies import orientations


def _mod3(name):
    comp = complete(load(name).map)
    return comp, list(oracle.iter_mod3_orientations(comp))


def test_completion_counts(grid33):
    comp = complete(grid33)
    hat = comp.map
    assert (hat.n, hat.m, hat.f, hat.genus) == (54, 108, 54, 1)
    assert hat.f == 2 * grid33.m


def test_completion_of_double_torus_keeps_genus():
    g = load("double-torus").map
    hat = complete(g).map
    assert hat.genus == 2
    assert (hat.n, hat.m, hat.f) == (g.n + g.f + g.m, 4 * g.m, 2 * g.m)


@pytest.mark.parametrize("name", ["fig5", "fig15", "double-torus-octagon"])
def test_completion_structure(name):
    comp = complete(load(name).map)
    hat = comp.map
    for v, rot in enumerate(hat.vertices):
        if comp.role[v] == EDGE:
            assert len(rot) == 4
    for a, b in hat.edges:
        roles = {comp.role[hat.origin(a)], comp.role[hat.origin(b)]}
        assert EDGE in roles and len(roles) == 2
    for face in hat.face_darts:
        roles = sorted(comp.role[hat.origin(d)] for d in face)
        assert roles == sorted([PRIMAL, DUAL, EDGE, EDGE])


def test_lift_of_3_orientation_is_mod3(grid33):
    comp = complete(grid33)
    D = find_3_orientation(grid33)
    hat = comp.lift(D)
    assert is_mod3_orientation(comp, hat)
    flow = out_edge_flow(comp, hat)
    # one out-edge from every tail, three from every dual vertex
    outs = [0] * comp.map.n
    for e, v in enumerate(flow):
        if v:
            a, b = comp.map.edges[e]
            tail = a if hat.tails[e] == a else b
            outs[comp.map.origin(tail)] += 1
    assert [outs[comp.primal_vertex[v]] for v in range(grid33.n)] == [3] * grid33.n
    assert [outs[comp.dual_vertex[f]] for f in range(grid33.f)] == [3] * grid33.f


def test_not_mod3(grid33):
    comp = complete(grid33)
    hat = comp.lift(find_3_orientation(grid33))
    # flip one edge at an edge-vertex: its outdegree goes 1 -> 2
    x = comp.edge_vertex[0]
    d = next(d for d in comp.map.vertices[x] if d not in hat.tail_set())
    broken = reverse_edges(comp.map, hat, [comp.map.edge_of[d]])
    assert not is_mod3_orientation(comp, broken)
    # everything into the edge-vertices
    towards = Orientation(tuple(a if comp.role[comp.map.origin(a)] != EDGE else b for a, b in comp.map.edges))
    assert all(hat_outdegrees(comp, towards)[comp.edge_vertex[e]] == 0 for e in range(grid33.m))
    assert not is_mod3_orientation(comp, towards)


def test_fig5_gammas():
    left = load("fig5-left")
    right = load("fig5-right")
    comp = complete(left.map)
    hat = comp.lift(left.orientation)
    assert tuple(gamma(comp, hat, [d]) for d in (0, 2, 4)) == (2, 0, -2)
    assert not is_schnyder_orientation(comp, hat).schnyder
    report = is_schnyder_orientation(comp, comp.lift(right.orientation))
    assert report.schnyder and report.gammas == (0, 0)


def test_gamma_reversal_negates(fig15):
    comp = complete(fig15)
    hat = comp.lift(load("fig16").orientation)
    for cycle in ([0, 6, 12], [14, 13], [4]):
        rev = [fig15.alpha[d] for d in reversed(cycle)]
        assert gamma(comp, hat, rev) == -gamma(comp, hat, cycle)
    assert gamma(comp, hat, [0, 6, 12]) == -6


def test_gamma_rejects_repeated_vertex(fig15):
    comp = complete(fig15)
    hat = comp.lift(load("fig13").orientation)
    with pytest.raises(ValueError):
        gamma(comp, hat, [0, 1])


def _cycles(g):
    out = [list(c.darts) for c in g.basis.cycles]
    out += [list(f) for f in g.face_darts]
    try:
        out.append(region_boundary(g, {0, g.face_of[g.alpha[g.face_darts[0][0]]]}))
    except ValueError:
        pass
    return out


@pytest.mark.parametrize("name", ["fig5", "fig15", "one-vertex-torus", "double-torus-star"])
@given(data=st.data())
def test_gamma_is_sum_of_deltas(name, data):
    g = load(name).map
    comp = complete(g)
    D = data.draw(orientations(comp.map))
    for cycle in _cycles(g):
        try:
            wl, wr = side_walks(comp, cycle)
        except ValueError:
            continue
        assert is_closed_dual_walk(comp.map, wl) and is_closed_dual_walk(comp.map, wr)
        assert gamma(comp, D, cycle) == delta(comp, D, wl) + delta(comp, D, wr)


@pytest.mark.parametrize("name", ["fig5", "one-vertex-torus", "double-torus-octagon"])
def test_mod3_face_deltas_and_gamma_split(name):
    comp, mods = _mod3(name)
    hat = comp.map
    g = comp.base
    for D in mods:
        # facial walks of the dual are the rotations of the completion
        for rot in hat.vertices:
            assert delta(comp, D, list(rot)) % 3 == 0
        for cycle in _cycles(g):
            try:
                wl, wr = side_walks(comp, cycle)
            except ValueError:
                continue
            both = delta(comp, D, wl) % 3 == 0 and delta(comp, D, wr) % 3 == 0
            assert (gamma(comp, D, cycle) % 3 == 0) == both


def test_trivial_labeling():
    g = load("fig5").map
    comp = complete(g)
    labels = (1,) * g.num_darts
    D = labeling_to_orientation(comp, labels)
    outs = hat_outdegrees(comp, D)
    assert all(outs[comp.edge_vertex[e]] == 4 for e in range(g.m))
    assert is_schnyder_orientation(comp, D).schnyder
    assert extract_labeling(comp, D, base=1) == labels
    cls = classify(g, labels)
    assert set(cls.edge_types) == {0} and set(cls.vertex_types) == {0} and set(cls.face_types) == {0}
    with pytest.raises(SinkVertex):
        to_colored_wood(g, labels)


def test_one_changed_angle_is_not_edge(fig15):
    comp = complete(fig15)
    labels = [0] * fig15.num_darts
    labels[3] = 1
    with pytest.raises(NotEdgeLabeling) as info:
        labeling_to_orientation(comp, labels)
    assert info.value.args[0]


def test_fig5_right_labeling():
    fx = load("fig5-right")
    g = fx.map
    comp = complete(g)
    hat = comp.lift(fx.orientation)
    labels = extract_labeling(comp, hat)
    cls = classify(g, labels)
    assert set(cls.edge_types) == {1} and cls.vertex_types == (1,) and set(cls.face_types) == {1}
    assert labeling_to_orientation(comp, labels) == hat
    wood = to_colored_wood(g, labels)
    check_wood(g, wood)
    assert wood.outdegree(g, 0) == 3
    colors = [wood.color[d] for d in g.vertices[0] if wood.outgoing[d]]
    i = colors.index(0)
    assert colors[i:] + colors[:i] == [0, 1, 2]


def test_base_shift_is_cyclic():
    fx = load("fig14")
    comp = complete(fx.map)
    hat = comp.lift(fx.orientation)
    l0 = extract_labeling(comp, hat)
    for k in (1, 2):
        assert extract_labeling(comp, hat, base=k) == tuple((x + k) % 3 for x in l0)


def test_extract_rejects_non_schnyder():
    fx = load("fig5-left")
    comp = complete(fx.map)
    with pytest.raises(NotSchnyder):
        extract_labeling(comp, comp.lift(fx.orientation))


@pytest.mark.parametrize("name", ["fig5", "fig15", "one-vertex-torus", "double-torus-octagon"])
def test_roundtrips_and_classification_on_all_schnyder(name):
    comp, mods = _mod3(name)
    g = comp.base
    for D in mods:
        if not is_schnyder_orientation(comp, D).schnyder:
            continue
        labels = extract_labeling(comp, D)
        assert labeling_to_orientation(comp, labels) == D
        cls = classify(g, labels)  # never a malformed interval pattern
        assert None not in cls.edge_types
        wood = to_colored_wood(g, labels, strict=False)
        assert wood_to_labeling(g, wood) == labels


def test_malformed_pattern_detected():
    g = load("fig5").map
    # colors 0, 2, 1, ... around the vertex go the wrong way
    labels = (0, 2, 1, 0, 2, 1)
    with pytest.raises(NotEdgeLabeling):
        classify(g, labels)
    with pytest.raises(MalformedIntervalPattern):
        vertex_type(g, labels, 0)


def test_double_torus_wood():
    fx = load("double-torus-wood")
    g = fx.map
    comp = complete(g)
    hat = comp.lift(fx.orientation)
    assert is_schnyder_orientation(comp, hat).schnyder
    labels = extract_labeling(comp, hat)
    cls = classify(g, labels)
    assert cls.vertex_types == (2, 2, 1)
    wood = to_colored_wood(g, labels)
    check_wood(g, wood)
    assert [wood.outdegree(g, v) for v in range(g.n)] == [6, 6, 3]
    assert all(check_schnyder_property(g, wood, v) for v in range(g.n))
    assert monochromatic_faces(g, wood) == []


def test_grid_lifts_are_schnyder_iff_gamma_divisible():
    g = grid_map(3, 3)
    comp = complete(g)
    D = find_3_orientation(g)
    report = is_schnyder_orientation(comp, comp.lift(D))
    assert report.mod3
    assert report.schnyder == all(x % 3 == 0 for x in report.gammas)
