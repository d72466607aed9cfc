import xml.etree.ElementTree as ET

import numpy as np

from dimerstate.svg import color_ramp, heatmap, line_plot


def test_ramp():
    ramp = color_ramp()
    assert len(ramp) == 256
    assert ramp[0] == "#0000ff" and ramp[-1] == "#ff0000"


def test_line_plot_is_valid_and_deterministic():
    x = np.linspace(0, 1, 20)
    a = line_plot(x, [x**2, x], ["sq", "id"], title="t", markers=(x[::4], x[::4], "pts"))
    assert a == line_plot(x, [x**2, x], ["sq", "id"], title="t", markers=(x[::4], x[::4], "pts"))
    root = ET.fromstring(a)
    assert root.tag.endswith("svg")
    assert len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 2


def test_heatmap_cells():
    z = np.arange(12.0).reshape(3, 4) / 11
    root = ET.fromstring(heatmap(np.arange(4), np.arange(3), z))
    fills = [r.get("fill") for r in root.findall("{http://www.w3.org/2000/svg}rect")]
    assert "#0000ff" in fills and "#ff0000" in fills


def test_constant_data_does_not_divide_by_zero():
    ET.fromstring(line_plot([0, 1], [[2.0, 2.0]]))
    ET.fromstring(heatmap([0.0], [1.0], [[0.5]]))
