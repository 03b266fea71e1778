import pytest
from hypothesis import given, strategies as st

from schnyder.completion import complete, extract_labeling, to_colored_wood
from schnyder.fixtures import load, names
from schnyder.formats import (
    FormatError,
    format_flow,
    format_labeling,
    format_map,
    format_orientation,
    parse_flow,
    parse_labeling,
    parse_map,
    parse_orientation,
    orientation_dot,
    wood_dot,
)

from strategies import flows, orientations, small_maps


@given(small_maps())
def test_map_roundtrip(smap):
    back, header = parse_map(format_map(smap, {"name": "x"}))
    assert back == smap
    assert header == {"name": "x"}


@given(small_maps(), st.data())
def test_orientation_and_flow_roundtrip(smap, data):
    D = data.draw(orientations(smap))
    assert parse_orientation(format_orientation(D), smap)[0] == D
    z = data.draw(flows(smap))
    assert parse_flow(format_flow(z), smap)[0] == z


def test_labeling_roundtrip(fig5):
    labels = (0, 1, 0, 2, 1, 2)
    assert parse_labeling(format_labeling(labels), fig5)[0] == labels


@pytest.mark.parametrize(
    "text,line",
    [
        ("darts 4\nedge 0 1\nedge 1 2\n", 3),
        ("darts 4\nedge 0 1\nedge 2 3\nvertex 0 2 1\nvertex 3 0\n", 5),
        ("edge 0 1\n", 1),
        ("darts 4\nedge 0 9\n", 2),
        ("darts 4\nfrobnicate 1\n", 2),
        ("darts 4\ndarts 4\n", 2),
        ("darts 4\nedge 0 x\n", 2),
    ],
)
def test_map_errors_carry_line(text, line):
    with pytest.raises(FormatError) as info:
        parse_map(text)
    assert info.value.line == line


def test_map_omissions():
    with pytest.raises(FormatError, match="without a vertex"):
        parse_map("darts 4\nedge 0 1\nedge 2 3\nvertex 0 2 1\n")
    with pytest.raises(FormatError, match="without an edge"):
        parse_map("darts 4\nedge 0 1\nvertex 0 2 1 3\n")


def test_orientation_errors(fig5):
    with pytest.raises(FormatError) as info:
        parse_orientation("orient 0\norient 1\n", fig5)
    assert info.value.line == 2
    with pytest.raises(FormatError, match="without an orientation"):
        parse_orientation("orient 0\n", fig5)


def test_labeling_errors(fig5):
    with pytest.raises(FormatError) as info:
        parse_labeling("angle 0 3\n", fig5)
    assert info.value.line == 1
    with pytest.raises(FormatError, match="without a label"):
        parse_labeling("angle 0 1\n", fig5)


def test_flow_errors(fig5):
    with pytest.raises(FormatError) as info:
        parse_flow("flow 0 1\nflow 0 2\n", fig5)
    assert info.value.line == 2


def test_comments_and_header():
    text = "# reconstructed: true\n# a note\ndarts 2  # inline\nedge 0 1\nvertex 0 1\n"
    smap, header = parse_map(text)
    assert header == {"reconstructed": "true"}
    assert smap.genus == 0


def test_dot_exports():
    fx = load("fig5-right")
    text = orientation_dot(fx.map, fx.orientation)
    assert text.startswith("digraph") and text.count("->") == 3
    comp = complete(fx.map)
    wood = to_colored_wood(fx.map, extract_labeling(comp, comp.lift(fx.orientation)))
    dot = wood_dot(fx.map, wood)
    for color in ("red", "blue", "green"):
        assert f"color={color}" in dot


def test_every_fixture_parses():
    for name in names():
        fx = load(name)
        assert fx.map.genus >= 1
