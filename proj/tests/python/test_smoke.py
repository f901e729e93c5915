import json
import math

import numpy as np
import pytest

import fracdom


def test_parse_and_format():
    assert fracdom.format("z^2+c") == "z^2 + c"
    with pytest.raises(fracdom.ParseError, match="offset 2"):
        fracdom.format("z^^2")
    assert issubclass(fracdom.ParseError, fracdom.FracdomError)


def test_evaluate_and_bytecode():
    assert fracdom.evaluate("z^2+c", 2, 1) == 5
    assert "LOADZ" in fracdom.disassemble("z^2+c")


def test_render_mandelbrot_is_conjugation_symmetric():
    out = fracdom.render("z^2+c", complex(-0.5, 0), 4 / 128, 128, 128, max_iter=100, workers=1)
    mask = out["interior"]
    assert mask.shape == (128, 128)
    assert mask.dtype == np.bool_
    assert np.array_equal(mask, mask[::-1, :])
    assert 0.08 < out["interior_fraction"] < 0.12
    assert out["m"][0, 0] < 100


def test_render_png_bytes():
    png = fracdom.render_scene_png(fracdom.scene("z^4+c", center=(0, 0), scale=0.05, width=32, height=32))
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
    with pytest.raises(fracdom.DomainError):
        fracdom.render_scene_png(fracdom.scene("z", palette="nope", width=4, height=4))


def test_palettes():
    ids = [p["id"] for p in fracdom.palettes()]
    assert ids[0] == "gray256"


def test_predict_and_series():
    report = fracdom.predict("cos(z)-1+c")
    assert report["predicted_order"] == 2
    assert report["classification"] == "EmbeddedMultibrot"
    assert fracdom.predict("z^4+z^7-z^10+c", regime="inf")["predicted_order"] == 10
    assert fracdom.series("sin(z)", 6) == "z - 1/6*z^3 + 1/120*z^5 + O(z^7)"
    with pytest.raises(fracdom.NotExpandable):
        fracdom.predict("log(z)+c")


def test_tg_and_theta():
    tg = fracdom.analyze_tg(1, 3, 2)
    assert tg["approx"] == "(2 - 4/3*z)^2 + c"
    assert fracdom.theta_bound("6*(sin(z)-z)+c", 3)["holds"]


def test_transform_and_verifiers():
    t = fracdom.transform("1:2,1:3", theta=math.pi / 2, shift=1)
    assert t["center"] == [1.0, 0.0]
    degrees = {term["degree"]: complex(*term["coefficient"]) for term in t["terms"]}
    assert abs(degrees[2] - 1j) < 1e-12
    assert abs(degrees[3] + 1) < 1e-12
    assert fracdom.verify_rotation(3, 0.7, complex(0.1, 0.2)) < 1e-9
    assert fracdom.verify_translation(2, complex(0.3, -0.1), complex(-0.5, 0.4)) < 1e-9
    assert fracdom.verify_scaling(4, 1.7, complex(0.2, 0.1)) < 1e-9


def test_scene_roundtrip():
    doc = fracdom.scene("z^3+c", center=(0.1, -0.2), scale=1 / 3, width=7, height=9)
    assert json.loads(fracdom._core.scene_roundtrip(json.dumps(doc))) == doc
