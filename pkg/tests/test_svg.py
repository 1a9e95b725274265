import xml.etree.ElementTree as ET

import pytest

from oriented_containers.ellipses import mvee
from oriented_containers.rectangles import fig1_triangle, min_rects, octagon_construct
from oriented_containers.reproduce import figure_documents
from oriented_containers.svg import render_svg, svg_document
from oriented_containers.triangles import min_iso_containers

NS = "{http://www.w3.org/2000/svg}"


def tags(text):
    root = ET.fromstring(text)
    return root, [el.tag.replace(NS, "") for el in root]


def test_fig1_element_counts():
    T = fig1_triangle()
    rep = min_rects(T)
    root, names = tags(svg_document([T, rep.r_perim, *rep.area_ties]))
    assert names.count("polygon") == 1 and names.count("rect") == 3
    assert root.get("width") == "800" and root.get("height") == "800"


def test_octagon_layout():
    oc = octagon_construct(10, 9.9, 11, 8.99, 80)
    _, names = tags(svg_document([oc.polygon, oc.r1, oc.r2]))
    assert names == ["polygon", "rect", "rect"]


def test_region_filled_containers_not(right_isosceles):
    rep = min_iso_containers(right_isosceles)
    root, names = tags(svg_document([rep.t_area, right_isosceles, mvee(right_isosceles)]))
    # the filled region is drawn first whatever the input order
    assert names == ["polygon", "path", "ellipse"]
    els = list(root)
    assert els[0].get("fill") != "none"
    assert all(el.get("fill") == "none" for el in els[1:])


def test_viewbox_covers_shapes(unit_square):
    root, _ = tags(svg_document([unit_square.transformed(shift=(10, 20))]))
    x, y, w, h = map(float, root.get("viewBox").split())
    assert w == h == pytest.approx(1.1)
    # y is negated in the drawing
    assert x <= 10 and x + w >= 11 and y <= -21 and y + h >= -20


def test_deterministic_and_written(tmp_path, unit_square):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    render_svg([unit_square], path=a)
    render_svg([unit_square], path=b)
    assert a.read_bytes() == b.read_bytes()


def test_errors(unit_square):
    with pytest.raises(ValueError):
        svg_document([])
    with pytest.raises(TypeError):
        svg_document([unit_square, "circle"])


def test_figure_documents_parse():
    docs = figure_documents()
    assert sorted(docs) == ["fig1.svg", "fig2.svg", "fig3.svg", "fig7.svg"]
    for text in docs.values():
        ET.fromstring(text)
    assert figure_documents() == docs
