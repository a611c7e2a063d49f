import math

import numpy as np
import pytest

from qubitcc.constants import AMU_TO_ELECTRON_MASS, HARTREE_TO_INVCM
from qubitcc.morse import MorseFit, fit_morse, morse_energy, spectroscopic_constants


class TestMorseEnergy:
    def test_minimum_value(self):
        assert morse_energy(1.4, 0.2, 1.0, 1.4, -1.1) == pytest.approx(-1.1)

    def test_dissociation_plateau(self):
        # far from the well the curve approaches e_min + d_e
        assert morse_energy(60.0, 0.2, 1.0, 1.4, -1.1) == pytest.approx(-0.9, abs=1e-12)

    def test_broadcasts(self):
        r = np.linspace(0.8, 3.0, 7)
        e = morse_energy(r, 0.2, 1.0, 1.4, -1.1)
        assert e.shape == r.shape
        assert np.argmin(e) == np.argmin(np.abs(r - 1.4))

    def test_curvature_at_bottom(self):
        # E''(r_e) = 2 D_e a^2
        d_e, a, r_e = 0.17, 1.2, 1.5
        h = 1e-4
        second = (morse_energy(r_e + h, d_e, a, r_e, 0.0)
                  - 2 * morse_energy(r_e, d_e, a, r_e, 0.0)
                  + morse_energy(r_e - h, d_e, a, r_e, 0.0)) / h**2
        assert second == pytest.approx(2 * d_e * a**2, rel=1e-5)


class TestSpectroscopicConstants:
    def test_formulas(self):
        d_e, a, mu_amu = 0.25, 1.1, 3.0
        mu = mu_amu * AMU_TO_ELECTRON_MASS
        omega_au = a * math.sqrt(2 * d_e / mu)
        omega_e, omega_e_x_e = spectroscopic_constants(d_e, a, mu_amu)
        assert omega_e == pytest.approx(omega_au * HARTREE_TO_INVCM, rel=1e-14)
        assert omega_e_x_e == pytest.approx(
            omega_au**2 / (4 * d_e) * HARTREE_TO_INVCM, rel=1e-14
        )

    def test_lif_anchor(self):
        # pinned reference values for a LiF-type curve: D_e = 0.4022 Ha,
        # a = 1.335 / bohr, reduced mass 7.00155 amu.
        omega_e, omega_e_x_e = spectroscopic_constants(0.4022, 1.335, 7.00155)
        assert omega_e == pytest.approx(2326.08, abs=2.0)
        assert omega_e_x_e == pytest.approx(15.32, abs=0.2)

    def test_rejects_nonphysical(self):
        with pytest.raises(ValueError):
            spectroscopic_constants(-0.1, 1.0, 1.0)
        with pytest.raises(ValueError):
            spectroscopic_constants(0.1, 0.0, 1.0)
        with pytest.raises(ValueError):
            spectroscopic_constants(0.1, 1.0, -2.0)


class TestFit:
    def test_recovers_synthetic_well(self):
        d_e, a, r_e, e_min = 0.17, 1.03, 1.42, -1.137
        r = np.linspace(0.9, 3.2, 15)
        e = morse_energy(r, d_e, a, r_e, e_min)
        fit = fit_morse(r, e, mu_amu=0.5)
        assert isinstance(fit, MorseFit)
        assert fit.d_e == pytest.approx(d_e, rel=1e-8)
        assert fit.a == pytest.approx(a, rel=1e-8)
        assert fit.r_e == pytest.approx(r_e, rel=1e-8)
        assert fit.e_min == pytest.approx(e_min, abs=1e-10)
        assert fit.residual_rms < 1e-10

    def test_constants_consistent_with_parameters(self):
        r = np.linspace(1.0, 3.0, 9)
        e = morse_energy(r, 0.2, 1.1, 1.5, -1.0)
        fit = fit_morse(r, e, mu_amu=2.5)
        want = spectroscopic_constants(fit.d_e, fit.a, 2.5)
        assert (fit.omega_e, fit.omega_e_x_e) == pytest.approx(want, rel=1e-13)

    def test_noisy_points_still_close(self):
        rng = np.random.default_rng(7)
        r = np.linspace(0.9, 3.5, 20)
        e = morse_energy(r, 0.17, 1.0, 1.4, -1.1) + rng.normal(scale=2e-5, size=r.shape)
        fit = fit_morse(r, e, mu_amu=0.5)
        assert fit.d_e == pytest.approx(0.17, rel=2e-2)
        assert fit.r_e == pytest.approx(1.4, abs=5e-3)
        assert fit.residual_rms < 1e-4

    def test_unsorted_input_allowed(self):
        r = np.array([2.0, 1.0, 1.4, 2.6, 1.2, 3.0])
        e = morse_energy(r, 0.2, 1.0, 1.4, -1.0)
        fit = fit_morse(r, e, mu_amu=1.0)
        assert fit.r_e == pytest.approx(1.4, rel=1e-6)

    def test_too_few_points(self):
        r = np.array([1.0, 1.4, 2.0])
        with pytest.raises(ValueError, match="four"):
            fit_morse(r, morse_energy(r, 0.2, 1.0, 1.4, 0.0), mu_amu=1.0)

    def test_duplicate_radii(self):
        r = np.array([1.0, 1.4, 1.4, 2.0])
        with pytest.raises(ValueError, match="distinct"):
            fit_morse(r, morse_energy(r, 0.2, 1.0, 1.4, 0.0), mu_amu=1.0)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError, match="equal length"):
            fit_morse([1.0, 1.4, 1.8, 2.2], [0.0, 1.0, 2.0], mu_amu=1.0)

    def test_nonphysical_data_raises(self):
        # a repulsive line has no well; the fit either fails to converge
        # or lands on a non-physical parameter set
        r = np.linspace(1.0, 3.0, 8)
        e = 2.0 - 0.5 * r
        with pytest.raises(RuntimeError):
            fit_morse(r, e, mu_amu=1.0)
