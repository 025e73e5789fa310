import csv
import math

import numpy as np
import pytest

from fredholm.figure import (
    FigureDatum,
    figure_data,
    partial_sum_roots,
    rescale,
    write_csv,
    write_svg,
)


class TestRescale:
    def test_zero(self):
        assert rescale(0.0) == 0.0

    def test_unit_value(self):
        rho = (math.e - 1.0) / (math.e + 1.0)
        assert abs(rescale(rho) - 1.0) < 1e-12

    def test_monotone(self):
        xs = [i / 100 for i in range(100)]
        ys = [rescale(x) for x in xs]
        assert all(b > a for a, b in zip(ys, ys[1:]))


class TestRoots:
    def test_small_degree_matches_companion_matrix(self):
        """Cross-check against numpy's eigenvalue root finder at degree 15."""
        n_top = 4
        coeffs = np.zeros(17)
        for n in range(n_top + 1):
            coeffs[2 ** n] = 1.0
        oracle = np.roots(coeffs[::-1])
        oracle = oracle[np.abs(oracle) > 1e-12]    # drop the origin root
        mine = partial_sum_roots(n_top)
        assert len(mine) == len(oracle) == 15
        for z in mine:
            assert np.min(np.abs(oracle - z)) < 1e-8

    def test_roots_satisfy_polynomial(self):
        roots = partial_sum_roots(6)
        p = sum(roots ** (2 ** n) for n in range(7))
        assert np.abs(p).max() < 1e-9

    def test_no_duplicates(self):
        roots = partial_sum_roots(6)
        roots = np.sort_complex(roots)
        gaps = np.abs(np.diff(roots))
        assert gaps.min() > 1e-8


class TestFigureData:
    def test_origin_included_and_sorted(self):
        data = figure_data(n_top=5)
        assert any(d.rho == 0.0 for d in data)
        keys = [(d.theta, d.rho) for d in data]
        assert keys == sorted(keys)

    def test_rescaling_consistent(self):
        for d in figure_data(n_top=5):
            assert abs(d.rho_rescaled - rescale(d.rho)) < 1e-12


class TestWriters:
    def test_csv_roundtrip(self, tmp_path):
        data = figure_data(n_top=5)
        path = tmp_path / "fig.csv"
        write_csv(data, str(path))
        with open(path) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == len(data)
        for row, d in zip(rows, data):
            assert abs(float(row["theta"]) - d.theta) < 1e-10
            assert abs(float(row["rho"]) - d.rho) < 1e-10
            assert abs(float(row["rho_rescaled"]) - d.rho_rescaled) < 1e-10

    def test_svg_written(self, tmp_path):
        path = tmp_path / "fig.svg"
        write_svg(figure_data(n_top=4), str(path))
        text = path.read_text()
        assert text.startswith("<svg") and "circle" in text
