from fractions import Fraction

import numpy as np
import pytest

import chromatope as ch


def test_f_vectors():
    assert ch.build_cube(5).f_vector() == [32, 80, 80, 40, 10]
    assert ch.build_simplex(5).f_vector() == [6, 15, 20, 15, 6]
    for n in range(1, 6):
        assert ch.euler_boundary(ch.build_cube(n)) == 1 - (-1) ** n


def test_duoprism_is_tesseract():
    square = ch.build_cube(2)
    assert ch.cartesian_product(square, square).f_vector() == ch.cube_f_vector(4)


def test_truncation_accepts_exact_parameter():
    assert ch.truncate_vertices(ch.build_cube(3), "1/3").f_vector() == [24, 36, 14]
    with pytest.raises(ch.InvalidArgument):
        ch.truncate_vertices(ch.build_cube(3), "2/3")


def test_errors_map_to_python():
    with pytest.raises(ch.DimensionUnsupported):
        ch.build_cube(9)
    assert issubclass(ch.DimensionUnsupported, ch.Error)


def test_net_counting():
    row = ch.count_via_net(ch.build_cube(5), 1)
    assert row == {"cells": 10, "per_cell": 32, "divisor": 4, "count": 80}
    assert ch.unfold(ch.build_cube(4)).cell_count == 8
    assert 2 in ch.anchor_multiplicities(ch.build_simplex(4))


def test_fiber_rep_shapes():
    hi, lo, vmax = ch.fiber_rep(ch.build_cube(3), 2, 16)
    assert hi.shape == (16, 16)
    assert np.all(hi == 1.0) and np.all(lo == 0.0)
    assert vmax >= 1.0


def test_star():
    r = ch.run_star(5, 2, 256)
    assert r["n"] == 3
    assert r["threshold_agreement"] >= 0.99
    assert abs(r["vmax"] - (5 + 2 * 5 ** 0.5) ** 0.5 / 2) < 1e-12


def test_fractals():
    assert ch.kept_per_step(4, 2) == 72
    cells = ch.iterate(2, 1, 2)
    assert cells.shape == (64, 2)
    assert not any((c % 3 == 1).all() for c in cells)
    assert ch.measure_proxy(4, 2, 3, 2) == Fraction(64, 9)
    assert ch.lift_matches_iterate(3, 1, 2)


def test_cli_in_process(tmp_path):
    code, out, _ = ch.run_cli(["build", "simplex", "5", "--out", str(tmp_path)])
    assert code == 0
    assert "faces: 20 = 20 OK" in out
    assert (tmp_path / "build" / "simplex5.lattice").exists()
    assert ch.run_cli(["build", "cube", "9"])[0] == 2
    assert ch.sha256_hex("abc").startswith("ba7816bf")
