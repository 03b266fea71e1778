"""Named example maps and orientations shipped with the package.

Map fixtures live in ``data/<name>.map`` and orientation fixtures in
``data/<name>.orient`` (their header names the map). Torus grids are built on
demand under the name ``grid-AxB``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .formats import parse_map, parse_orientation
from .generators import gen_grid
from .surface_map import Orientation, SurfaceMap


class UnknownFixture(KeyError):
    pass


@dataclass(frozen=True)
class Fixture:
    name: str
    map: SurfaceMap
    orientation: Orientation | None = None
    header: dict[str, str] = field(default_factory=dict)

    @property
    def reconstructed(self) -> bool:
        return self.header.get("reconstructed", "false").lower() == "true"


_GRID = re.compile(r"grid-(\d+)x(\d+)$")


def _data():
    return resources.files("schnyder") / "data"


def names() -> list[str]:
    return sorted(p.name.rsplit(".", 1)[0] for p in _data().iterdir() if p.name.endswith((".map", ".orient")))


def load_map(name: str) -> tuple[SurfaceMap, dict[str, str]]:
    m = _GRID.match(name)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        return gen_grid(a, b), {"name": name}
    path = _data() / f"{name}.map"
    if not path.is_file():
        raise UnknownFixture(name)
    return parse_map(path.read_text())


def load(name: str) -> Fixture:
    """A map fixture, or an orientation fixture together with its map."""
    path = _data() / f"{name}.orient"
    if path.is_file():
        text = path.read_text()
        map_name = re.search(r"^#\s*map:\s*(\S+)", text, re.M)
        if map_name is None:
            raise UnknownFixture(f"{name} does not name its map")
        smap, _ = load_map(map_name.group(1))
        D, header = parse_orientation(text, smap)
        return Fixture(name, smap, D, header)
    smap, header = load_map(name)
    return Fixture(name, smap, None, header)
