import math

import numpy as np
import pytest

from ccpt import signalgen as sg


def test_y1_first_sample_and_formula():
    y1 = sg.gen_y1()
    assert len(y1) == 72
    expected0 = np.exp(1j * math.pi / 5) + np.exp(1j * math.pi / 4) + np.exp(1j * math.pi / 3)
    assert y1[0] == pytest.approx(expected0)
    n = np.arange(72)
    direct = (
        np.exp(1j * (2 * np.pi * 10 * n / 360 + np.pi / 5))
        + np.exp(1j * (2 * np.pi * 40 * n / 360 + np.pi / 4))
        + np.exp(1j * (2 * np.pi * 50 * n / 360 + np.pi / 3))
    )
    assert np.abs(y1 - direct).max() < 1e-12


def test_y1_component_periods():
    # base period / gcd(cycles, base period)
    for cycles, expected in ((10, 36), (40, 9), (50, 36)):
        assert 360 // math.gcd(cycles, 360) == expected


def test_y1_is_36_periodic():
    y1 = sg.gen_y1()
    assert np.abs(y1[36:] - y1[:36]).max() < 1e-12


def test_y2_shape_and_periodicity():
    y2 = sg.gen_y2(0)
    assert len(y2) == 100
    assert np.iscomplexobj(y2)
    for n in range(65):
        assert y2[n + 35] == pytest.approx(y2[n], abs=1e-12)


def test_y2_component_structure():
    # the 5-sample component repeats exactly; removing it leaves a 7-periodic part
    y2 = sg.gen_y2(12)
    rng = np.random.default_rng(12)
    base5 = (rng.standard_normal(5) + 1j * rng.standard_normal(5)) * np.sqrt(0.5)
    x21 = np.tile(base5, 20)
    x22 = y2 - x21
    for n in range(100 - 7):
        assert x22[n + 7] == pytest.approx(x22[n], abs=1e-12)


def test_y2_deterministic_and_seed_sensitive():
    a = sg.gen_y2(7)
    b = sg.gen_y2(7)
    c = sg.gen_y2(8)
    assert np.array_equal(a, b)
    assert not np.allclose(a, c)
    # identical period structure regardless of seed
    for sig in (a, c):
        assert np.abs(sig[35:70] - sig[:35]).max() < 1e-12


def test_tiled_ccps_examples():
    assert np.allclose(sg.gen_tiled_ccps(1, 1, 4), np.ones(4))
    two = sg.gen_tiled_ccps(5, 1, 10)
    assert np.allclose(two[:5], two[5:])
    partial = sg.gen_tiled_ccps(7, 2, 100)
    assert len(partial) == 100
    assert np.allclose(partial[:98], np.tile(partial[:7], 14))
    with pytest.raises(ValueError):
        sg.gen_tiled_ccps(6, 2, 12)


def test_generate_dispatch():
    spec = sg.SignalSpec(kind="preset-y1", length=72, components=sg.Y1_COMPONENTS)
    assert np.array_equal(sg.generate(spec), sg.gen_y1())

    spec = sg.SignalSpec(kind="preset-y2", length=100, seed=3)
    assert np.array_equal(sg.generate(spec), sg.gen_y2(3))

    spec = sg.SignalSpec(kind="tiled-ccps", length=15, components=((5, 2),))
    assert np.array_equal(sg.generate(spec), sg.gen_tiled_ccps(5, 2, 15))

    spec = sg.SignalSpec(kind="custom-sum", length=8, components=((1, 8, 0.0, 2.0),))
    x = sg.generate(spec)
    assert np.abs(x - 2.0 * np.exp(2j * np.pi * np.arange(8) / 8)).max() < 1e-12

    with pytest.raises(ValueError):
        sg.generate(sg.SignalSpec(kind="noise", length=5))
    with pytest.raises(ValueError):
        sg.generate(sg.SignalSpec(kind="preset-y2", length=100))


def test_spec_metadata_records_rng():
    spec = sg.SignalSpec(kind="preset-y2", length=100, seed=5)
    meta = spec.metadata()
    assert meta["rng"] == "pcg64"
    assert meta["seed"] == 5
    assert sg.SignalSpec(kind="preset-y1", length=72).metadata()["rng"] is None
