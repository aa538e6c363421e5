"""SVG emitter tests: well-formedness, geometry, determinism."""

import xml.etree.ElementTree as ET

import pytest

from latentlens.svgchart import ROW_HEIGHT, WIDTH, contribution_bar_chart, save_chart

SVG_NS = "{http://www.w3.org/2000/svg}"


def parse(svg: str) -> ET.Element:
    return ET.fromstring(svg)


class TestChart:
    def test_canvas_is_800_by_40k(self):
        for k in (1, 3, 10):
            items = [(f"f{i}", float(i + 1)) for i in range(k)]
            root = parse(contribution_bar_chart(items))
            assert root.get("width") == str(WIDTH)
            assert root.get("height") == str(ROW_HEIGHT * k)

    def test_one_bar_and_label_per_feature(self):
        items = [("spam", 0.8), ("wife", -0.5), ("free", 0.1)]
        root = parse(contribution_bar_chart(items))
        bars = root.findall(f"{SVG_NS}rect")[1:]  # first rect is the background
        texts = root.findall(f"{SVG_NS}text")
        assert len(bars) == 3
        labels = [t.text for t in texts if t.get("x") == "185"]
        assert labels == ["spam", "wife", "free"]

    def test_negative_bars_left_of_axis(self):
        items = [("pos", 1.0), ("neg", -1.0)]
        root = parse(contribution_bar_chart(items))
        bars = root.findall(f"{SVG_NS}rect")[1:]
        center = (200 + 780) / 2
        pos_bar, neg_bar = bars
        assert float(pos_bar.get("x")) == pytest.approx(center)
        assert float(neg_bar.get("x")) + float(neg_bar.get("width")) == pytest.approx(center)

    def test_bar_length_proportional_to_magnitude(self):
        items = [("big", 2.0), ("small", 1.0)]
        root = parse(contribution_bar_chart(items))
        bars = root.findall(f"{SVG_NS}rect")[1:]
        assert float(bars[0].get("width")) == pytest.approx(2 * float(bars[1].get("width")))

    def test_label_text_escaped(self):
        svg = contribution_bar_chart([("a<b&c", 1.0)])
        parse(svg)  # would raise on malformed XML
        assert "a<b&c" not in svg

    def test_deterministic(self):
        items = [("x", 0.123456), ("y", -0.9)]
        assert contribution_bar_chart(items) == contribution_bar_chart(items)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            contribution_bar_chart([])

    def test_save(self, tmp_path):
        path = tmp_path / "chart.svg"
        save_chart([("feature", 0.5)], path)
        parse(path.read_text())
