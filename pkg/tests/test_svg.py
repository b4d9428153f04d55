import xml.etree.ElementTree as ET

import numpy as np

from qudit_eet.svg import _decimate, heatmap, line_plot

NS = "{http://www.w3.org/2000/svg}"


def test_line_plot_is_valid_svg():
    x = np.linspace(0, 5, 1000)
    text = line_plot([("a", x, np.sin(x) ** 2), ("b & c", x, np.cos(x) ** 2)], title="t<1>", xlabel="x", ylabel="y")
    root = ET.fromstring(text)
    assert root.tag == NS + "svg"
    assert len(root.findall(NS + "polyline")) == 2
    labels = [t.text for t in root.iter(NS + "text")]
    assert "b & c" in labels and "t<1>" in labels


def test_decimation_keeps_peaks():
    x = np.arange(100000.0)
    y = np.zeros_like(x)
    y[54321] = 7.0
    xd, yd = _decimate(x, y, 100)
    assert len(xd) <= 200
    assert yd.max() == 7.0


def test_heatmap_cell_count():
    z = np.outer(np.linspace(0, 1, 30), np.linspace(0, 2, 500))
    root = ET.fromstring(heatmap(np.linspace(0, 5, 500), np.linspace(0, 4, 30), z, zlabel="E"))
    rects = root.findall(NS + "rect")
    # background + 30 rows x 167 columns (stride 3) + plot frame + 50 colorbar swatches
    assert len(rects) == 1 + 30 * 167 + 1 + 50


def test_plots_are_deterministic():
    x = np.linspace(0, 1, 50)
    assert line_plot([("s", x, x**2)]) == line_plot([("s", x, x**2)])


def test_constant_series():
    root = ET.fromstring(line_plot([("zero", [0, 1, 2], [0, 0, 0])]))
    assert root.find(NS + "polyline") is not None
