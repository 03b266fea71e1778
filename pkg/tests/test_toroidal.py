import random

import pytest

from schnyder import oracle
from schnyder.completion import check_wood, classify, complete, gamma, is_schnyder_orientation
from schnyder.fixtures import load
from schnyder.generators import gen_grid, grid_map
from schnyder.homology import characteristic_flow, homology_coordinates, is_contractible
from schnyder.surface_map import NotACycle, check_cycle, outdegrees, region_boundary
from schnyder.completion import extract_labeling, to_colored_wood
from schnyder.toroidal import (
    CROSSING,
    HALF_CROSSING,
    NOT_HALF_CROSSING,
    NoOrientation,
    NotContractible,
    crossing_class,
    disk_cycle_outflow,
    find_3_orientation,
    find_orientation,
    is_3_orientation,
    is_middle_cycle,
    middle_cycles,
    middle_walk,
    middle_walks,
    monochromatic_cycles,
    schnyderize,
    weakly_homologous,
)


def _wood(name):
    fx = load(name)
    comp = complete(fx.map)
    return fx.map, to_colored_wood(fx.map, extract_labeling(comp, comp.lift(fx.orientation)))


def _coords(g, cycle):
    return homology_coordinates(g, characteristic_flow(g, cycle))


@pytest.mark.parametrize("a,b", [(3, 3), (4, 3), (5, 5)])
def test_find_3_orientation(a, b):
    g = gen_grid(a, b)
    D = find_3_orientation(g)
    assert is_3_orientation(g, D)
    assert sum(outdegrees(g, D)) == g.m


def test_no_orientation():
    g = grid_map(3, 3)
    with pytest.raises(NoOrientation):
        find_orientation(g, [4] * g.n)
    with pytest.raises(NoOrientation):
        find_orientation(g, [27] + [0] * 8)


def test_3_orientation_count_matches_oracle():
    # 3x1 grid: every 3-orientation found by brute force is a 3-orientation by our test
    g = load("fig15").map
    found = oracle.enumerate_alpha_orientations(g, [3, 3, 3])
    assert len(found) == 80
    assert all(is_3_orientation(g, D) for D in found)


def test_middle_walk_from_middle_cycle_has_no_prefix():
    fx = load("fig13")
    for cycle in middle_cycles(fx.map, fx.orientation):
        w = middle_walk(fx.map, fx.orientation, cycle[0])
        assert w.prefix == () and w.cycle == cycle
        assert is_middle_cycle(fx.map, fx.orientation, cycle)


def test_fig13_middle_cycles_vertical():
    fx = load("fig13")
    g = fx.map
    vertical = _coords(g, [14, 13])
    for w in middle_walks(g, fx.orientation):
        assert _coords(g, w.cycle) in (vertical, tuple(-x for x in vertical))
    cycles = middle_cycles(g, fx.orientation)
    assert all(weakly_homologous(g, c, cycles[0]) for c in cycles)


def test_fig5_left_unique_middle_cycle():
    fx = load("fig5-left")
    assert middle_cycles(fx.map, fx.orientation) == [(3,)]


def test_disk_cycle_outflow(grid33):
    D = find_3_orientation(grid33)
    for f in grid33.face_darts:
        assert disk_cycle_outflow(grid33, D, f) == 0
    square = region_boundary(grid33, {0, grid33.face_of[grid33.alpha[grid33.face_darts[0][0]]]})
    assert len(square) == 4
    assert disk_cycle_outflow(grid33, D, square) == 1
    with pytest.raises(NotContractible):
        disk_cycle_outflow(grid33, D, [0, 6, 12])


def test_weakly_homologous_basics(grid33):
    c = [0, 6, 12]
    rev = [grid33.alpha[d] for d in reversed(c)]
    assert weakly_homologous(grid33, c, rev)
    b1, b2 = (x.darts for x in grid33.basis.cycles)
    assert not weakly_homologous(grid33, b1, b2)


@pytest.mark.parametrize("a,b", [(3, 3), (4, 5)])
def test_schnyderize_grid(a, b):
    g = gen_grid(a, b)
    r = schnyderize(g, seed=1)
    comp = complete(g)
    assert is_schnyder_orientation(comp, r.hat_orientation).schnyder
    assert r.certificate.gammas == (0, 0)
    c1, c2 = r.certificate.cycles
    assert not weakly_homologous(g, c1, c2)
    check_wood(g, r.wood)
    assert set(classify(g, r.labeling).vertex_types) == {1}


def test_schnyderize_fig5_gives_right_wood():
    r = schnyderize(load("fig5").map)
    assert r.orientation == load("fig5-right").orientation


def test_schnyderize_is_deterministic(grid33):
    assert schnyderize(grid33, seed=3).orientation == schnyderize(grid33, seed=3).orientation


def test_fallback_search_finds_certificate(grid33):
    r = schnyderize(grid33, budget=0)
    assert r.used_fallback or r.iterations == 0
    assert r.certificate.gammas == (0, 0)


def test_middle_cycle_invariants():
    g = load("fig15").map
    comp = complete(g)
    for D in oracle.enumerate_alpha_orientations(g, [3, 3, 3]):
        hat = comp.lift(D)
        cycles = middle_cycles(g, D)
        for c in cycles:
            check_cycle(g, c)
            assert gamma(comp, hat, c) == 0
            assert not is_contractible(g, c)
        for c1 in cycles:
            for c2 in cycles:
                if c1 != c2 and weakly_homologous(g, c1, c2):
                    assert not {g.origin(d) for d in c1} & {g.origin(d) for d in c2}


def _random_cycle(g, rng, max_len=12):
    v = rng.randrange(g.n)
    darts, seen = [], {v}
    while len(darts) < max_len:
        here = g.head(darts[-1]) if darts else v
        d = rng.choice(g.vertices[here])
        w = g.head(d)
        if w == g.origin(darts[0] if darts else d):
            darts.append(d)
            return darts
        if w in seen:
            return None
        seen.add(w)
        darts.append(d)
    return None


@pytest.mark.parametrize("a,b", [(3, 3), (4, 4)])
def test_gamma_is_linear_in_homology(a, b):
    g = gen_grid(a, b)
    comp = complete(g)
    rng = random.Random(a * 10 + b)
    b1, b2 = (c.darts for c in g.basis.cycles)
    for D in (find_3_orientation(g), schnyderize(g).orientation):
        hat = comp.lift(D)
        g1, g2 = gamma(comp, hat, b1), gamma(comp, hat, b2)
        checked = 0
        while checked < 40:
            c = _random_cycle(g, rng)
            if c is None:
                continue
            try:
                check_cycle(g, c)
            except NotACycle:
                continue
            if is_contractible(g, c):
                continue
            k1, k2 = _coords(g, c)
            assert gamma(comp, hat, c) == k1 * g1 + k2 * g2
            checked += 1


def test_monochromatic_cycles_fig13():
    g, wood = _wood("fig13")
    comp = complete(g)
    hat = comp.lift(load("fig13").orientation)
    vertical = _coords(g, [14, 13])
    cycles = monochromatic_cycles(g, wood)
    for color in range(3):
        assert cycles[color]
        for c in cycles[color]:
            assert _coords(g, c) in (vertical, tuple(-x for x in vertical))
            assert gamma(comp, hat, c) % 3 == 0


def test_crossing_classes():
    assert crossing_class(*_wood("fig13")) == NOT_HALF_CROSSING
    assert crossing_class(*_wood("fig14")) == HALF_CROSSING
    r = schnyderize(grid_map(3, 3))
    assert crossing_class(grid_map(3, 3), r.wood) in (HALF_CROSSING, CROSSING)
