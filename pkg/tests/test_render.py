"""Emitter tests: CSV grid shape and SVG boundary-line geometry.

The SVG check inverts the pixel transform using only the data-* attributes
on the plot frame, then verifies each boundary line's endpoints satisfy
cost = intercept + slope * purchases to within one pixel's worth of data
units.
"""

import xml.etree.ElementTree as ET

import pytest

from econarch.region import DiagramSpec, build_region
from econarch.render import region_to_csv, region_to_svg


@pytest.fixture()
def station_region():
    spec = DiagramSpec(
        market_revenue=500.0,
        reference_firms=2,
        purchases_range=(0.0, 1250.0),
        cost_range=(0.0, 2200.0),
        resolution=(5, 4),
    )
    return build_region(
        spec, points=[("free-flyer", 1000.0, 1854.42), ("shared-core", 491.08, 836.57)]
    )


class TestCsv:
    def test_header_and_shape(self, station_region):
        lines = region_to_csv(station_region).strip().splitlines()
        assert lines[0] == "RG,C,maxN"
        assert len(lines) == 1 + 5 * 4

    def test_trivial_grid_values(self):
        spec = DiagramSpec(
            market_revenue=0.0,
            reference_firms=1,
            purchases_range=(0.0, 1.0),
            cost_range=(0.0, 1.0),
            max_firms=1,
            resolution=(2, 2),
        )
        rows = region_to_csv(build_region(spec)).strip().splitlines()[1:]
        parsed = {tuple(r.split(",")[:2]): int(r.split(",")[2]) for r in rows}
        assert parsed[("0", "0")] == 1
        assert parsed[("1", "0")] == 1
        assert parsed[("0", "1")] == 0
        assert parsed[("1", "1")] == 1


def svg_transform(root):
    """Pixel <-> data mapping recovered from the plot frame's attributes."""
    frame = next(
        el for el in root.iter("{http://www.w3.org/2000/svg}rect")
        if el.get("data-role") == "plot-area"
    )
    x0, y0 = float(frame.get("x")), float(frame.get("y"))
    w, h = float(frame.get("width")), float(frame.get("height"))
    rg_min, rg_max = float(frame.get("data-rg-min")), float(frame.get("data-rg-max"))
    c_min, c_max = float(frame.get("data-c-min")), float(frame.get("data-c-max"))

    def to_data(px, py):
        rg = rg_min + (px - x0) / w * (rg_max - rg_min)
        c = c_max - (py - y0) / h * (c_max - c_min)
        return rg, c

    pixel_cost = (c_max - c_min) / h  # data units per pixel on the cost axis
    return to_data, pixel_cost


class TestSvg:
    def test_boundary_lines_satisfy_equation(self, station_region):
        svg = region_to_svg(station_region)
        root = ET.fromstring(svg)
        to_data, pixel_cost = svg_transform(root)
        lines = [
            el for el in root.iter("{http://www.w3.org/2000/svg}line")
            if el.get("data-role") == "boundary"
        ]
        assert lines
        n0, rm = 2, 500.0
        for el in lines:
            n = int(el.get("data-firms"))
            for px, py in (
                (float(el.get("x1")), float(el.get("y1"))),
                (float(el.get("x2")), float(el.get("y2"))),
            ):
                rg, c = to_data(px, py)
                expected = (n0 / n) * (rg + rm)
                assert abs(c - expected) <= pixel_cost + 1e-9

    def test_points_and_labels_present(self, station_region):
        svg = region_to_svg(station_region, title="stations")
        assert "free-flyer" in svg
        assert "shared-core" in svg
        root = ET.fromstring(svg)
        points = [
            el for el in root.iter("{http://www.w3.org/2000/svg}circle")
            if el.get("data-role") == "point"
        ]
        firms = {el.get("data-label"): el.get("data-firms") for el in points}
        assert firms == {"free-flyer": "1", "shared-core": "2"}

    def test_axis_labels(self, station_region):
        svg = region_to_svg(station_region)
        assert "Direct government purchases ($M/year)" in svg
        assert "Industry total cost ($M/year)" in svg

    def test_bands_cover_every_classification(self, station_region):
        root = ET.fromstring(region_to_svg(station_region))
        bands = {
            int(el.get("data-firms"))
            for el in root.iter("{http://www.w3.org/2000/svg}path")
            if el.get("data-role") == "band"
        }
        present = {c for row in station_region.grid for c in row}
        assert present <= bands
