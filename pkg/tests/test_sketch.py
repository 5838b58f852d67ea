import xml.etree.ElementTree as ET

import pytest

from qnyquist import parse_tf
from qnyquist.report import build_report
from qnyquist.sketch import TABLE_COLUMNS, build_sketch, read_table, render_svg, write_table


def _resolve(report_dict, key):
    node = report_dict
    for part in key.split("."):
        name, _, index = part.partition("[")
        node = node[name]
        if index:
            node = node[int(index.rstrip("]"))]
    return node


def test_keys_point_into_report(case1, case2):
    for tf in (case1, case2):
        report = build_report(tf)
        doc = build_sketch(report)
        d = report.to_dict()
        for key in doc.keys():
            assert _resolve(d, key) is not None, key
    keys = build_sketch(build_report(case2)).keys()
    assert "asymptote" in keys and "crossings.points[0]" in keys
    assert "endpoints.start" not in keys  # starts at infinity


def test_constant_is_single_point():
    doc = build_sketch(build_report(parse_tf("-3")))
    assert doc.single_point and len(doc.samples) == 1
    assert [m.point for m in doc.markers] == [-3]


def test_view_contains_anchors(case2):
    doc = build_sketch(build_report(case2))
    x0, x1, y0, y1 = doc.view
    assert x0 < -872 / 81 < x1
    assert x0 < -3.609 < x1 and y0 < 0 < y1


def test_glyph_templates(case1):
    doc = build_sketch(build_report(case1))
    exit_glyph = next(g for g in doc.glyphs if g.key == "behaviors.exit")
    assert "archetype 1" in exit_glyph.text
    assert exit_glyph.template[0] == pytest.approx(1.0)


def test_svg_valid_and_deterministic(tmp_path, case2):
    doc = build_sketch(build_report(case2), samples_per_decade=20)
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    render_svg(doc, a)
    render_svg(doc, b)
    root = ET.parse(a).getroot()
    assert root.tag.endswith("svg")
    assert a.read_bytes() == b.read_bytes()


def test_svg_constant(tmp_path):
    path = tmp_path / "c.svg"
    render_svg(build_sketch(build_report(parse_tf("2"))), path)
    ET.parse(path)


def test_table_round_trip(tmp_path, case1):
    doc = build_sketch(build_report(case1), (0.01, 100), 10)
    path = tmp_path / "t.csv"
    write_table(doc.samples, path)
    assert path.read_text().splitlines()[0] == ",".join(TABLE_COLUMNS)
    assert read_table(path) == doc.samples
