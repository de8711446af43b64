"""Deterministic panel quadrature."""

import math

import numpy as np
import pytest

from zetalab import DomainError, QuadratureSettings, integrate, panel_edges, panel_width
from zetalab.errors import ResourceLimitError


class TestPanelRule:
    def test_width_small_t_caps_at_quarter(self):
        assert panel_width(0.0) == pytest.approx(0.25)

    def test_width_tracks_log(self):
        assert panel_width(1000.0) == pytest.approx(1 / (2 * math.log(1002.0)))

    def test_scale_multiplies(self):
        assert panel_width(50.0, 0.5) == pytest.approx(0.5 * panel_width(50.0))

    def test_edges_cover_interval(self):
        edges = panel_edges(3.0, 47.0)
        assert edges[0] == 3.0 and edges[-1] == 47.0
        widths = np.diff(edges)
        assert (widths > 0).all()
        rule = np.array([panel_width(t) for t in edges[:-1]])
        assert (widths <= rule + 1e-12).all()

    def test_edges_deterministic(self):
        a = panel_edges(0.0, 100.0, 0.7)
        b = panel_edges(0.0, 100.0, 0.7)
        assert np.array_equal(a, b)

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            panel_edges(10.0, 5.0)

    def test_panel_budget_guard(self):
        with pytest.raises(ResourceLimitError):
            panel_edges(0.0, 10.0, 1e-6)


class TestSettings:
    def test_halved(self):
        q = QuadratureSettings(points_per_panel=8, width_scale=0.6, threads=3)
        h = q.halved()
        assert h == QuadratureSettings(8, 0.3, 3)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"points_per_panel": 1},
            {"width_scale": 0.0},
            {"width_scale": 1.5},
            {"threads": 0},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(DomainError):
            QuadratureSettings(**kwargs)


class TestIntegrate:
    def test_polynomial_exact(self):
        value, panels = integrate(lambda t: t**3, 0.0, 10.0, QuadratureSettings())
        assert value == pytest.approx(2500.0, abs=1e-9)
        assert panels >= 40

    def test_empty_interval(self):
        assert integrate(lambda t: t, 5.0, 5.0) == (0.0, 0)
        assert integrate(lambda t: t, 7.0, 5.0) == (0.0, 0)

    def test_oscillatory_spectral(self):
        value, _ = integrate(np.cos, 0.0, 20.0 * math.pi, QuadratureSettings())
        assert abs(value) <= 1e-10

    def test_exponential(self):
        value, _ = integrate(np.exp, 0.0, 5.0, QuadratureSettings())
        assert value == pytest.approx(math.exp(5.0) - 1.0, rel=1e-13)

    def test_parallel_matches_serial_bitwise(self):
        def f(ts):
            return np.abs(np.sin(ts * 3.1)) ** 1.7 + ts * 1e-3

        serial, n1 = integrate(f, 0.0, 200.0, QuadratureSettings(threads=1))
        for threads in (2, 4, 7):
            parallel, n2 = integrate(f, 0.0, 200.0, QuadratureSettings(threads=threads))
            assert parallel == serial  # bit identity, not approx
            assert n2 == n1

    def test_halving_refines(self):
        def f(ts):
            return 1.0 / (1.0 + ts**2)

        q = QuadratureSettings()
        coarse, _ = integrate(f, 0.0, 30.0, q)
        fine, _ = integrate(f, 0.0, 30.0, q.halved())
        exact = math.atan(30.0)
        assert abs(fine - exact) <= abs(coarse - exact) + 1e-15
