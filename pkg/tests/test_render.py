import re

import numpy as np

from discguard.api import solve
from discguard.deployment import Deployment
from discguard.instances import FIXTURES
from discguard.render import render_svg


def test_single_disc(square):
    svg = render_svg(square, Deployment([(0.5, 0.5)], 0.71, "ilp"))
    assert svg.count("<circle") == 1
    assert svg.startswith("<?xml") and 'version="1.1"' in svg


def test_byte_stable(square):
    dep = Deployment([(0.25, 0.25), (0.75, 0.75)], 0.4, "gonzalez")
    assert render_svg(square, dep).encode() == render_svg(square, dep).encode()


def test_viewbox_margin(square):
    svg = render_svg(square)
    x, y, w, h = map(float, re.search(r'viewBox="([^"]+)"', svg).group(1).split())
    assert (x, y, w, h) == (-0.05, -1.05, 1.1, 1.1)


def test_y_flipped(square):
    svg = render_svg(square, Deployment([(0.2, 0.9)], 0.1, "ilp"))
    assert 'cx="0.2" cy="-0.9"' in svg


def test_samples_dotted(square):
    pts = np.array([(0.1, 0.1), (0.2, 0.2)])
    assert render_svg(square, samples=pts).count("<rect") == 2


def test_holes_evenodd():
    svg = render_svg(FIXTURES["museum"]())
    assert svg.count("Z") == 3 and 'fill-rule="evenodd"' in svg


def test_plus_five_discs():
    sol = solve(FIXTURES["plus"](), "region", "ilp", 5, 0.1)
    assert render_svg(FIXTURES["plus"](), sol.deployment).count("<circle") == 5
