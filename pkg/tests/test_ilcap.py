import math
import warnings

import numpy as np
import pytest

from qubitcc import oracle
from qubitcc.acset import build_anticommuting_set, canonical_generator
from qubitcc.ilcap import (
    build_h_matrix,
    bw_correct,
    dress_with_combination,
    en_correct,
    solve_ilcap,
)
from qubitcc.pauli import PauliSum, PauliWord, ReferenceState
from qubitcc.qcc import qcc_energy

from conftest import random_even_sum


def random_generators(rng, n, count):
    pool = list(range(1, 1 << n))
    rng.shuffle(pool)
    acs = build_anticommuting_set(n, pool[: count * 2], max_generators=count)
    return list(acs.generators)


def gapped_sum(rng, n, ref, strength=3.0):
    """Random even-Y sum plus a diagonal bias that pins the reference.

    Each flipped qubit costs about 2 * strength, so excitation gaps are
    positive for nearly every draw; callers still filter to be sure.
    """
    h = random_even_sum(rng, n, 10)
    occ = ref.occupied_mask
    bias = [
        (PauliWord(n, 0, 1 << j), strength if (occ >> j) & 1 else -strength)
        for j in range(n)
    ]
    return h + PauliSum(n, bias)


class TestBuildMatrix:
    def test_two_level_example(self):
        # H = z0 + 0.3 x0 on one occupied qubit: the ansatz space is the
        # whole Hilbert space, so the matrix is the full Hamiltonian
        h = PauliSum.from_text("1.0 Z0\n0.3 X0\n", 1)
        ref = ReferenceState(1, 1)
        g = canonical_generator(1, 1)
        mat = build_h_matrix(h, [g], ref)
        assert mat[0, 0] == pytest.approx(-1.0)
        assert mat[1, 1] == pytest.approx(1.0)
        assert abs(mat[0, 1]) == pytest.approx(0.3)
        assert mat[0, 1] == mat[1, 0]

    def test_matches_dense_projection(self, rng):
        for _ in range(30):
            n = rng.randint(3, 6)
            h = random_even_sum(rng, n, 12)
            ref = ReferenceState(n, rng.randint(0, n))
            gens = random_generators(rng, n, rng.randint(1, 5))
            mat = build_h_matrix(h, gens, ref)
            hm = oracle.to_dense(h)
            v0 = oracle.reference_vector(ref)
            basis = [v0]
            for g in gens:
                gm = oracle.to_dense(PauliSum(n, [(g, 1.0)]))
                basis.append(-1j * (gm @ v0))
            want = np.zeros_like(mat)
            for i, bi in enumerate(basis):
                for j, bj in enumerate(basis):
                    val = bi.conj() @ hm @ bj
                    assert abs(val.imag) < 1e-10
                    want[i, j] = val.real
            assert np.allclose(mat, want, atol=1e-9)

    def test_basis_is_orthonormal(self, rng):
        # distinct X masks guarantee it; checked through the dense oracle
        n = 5
        ref = ReferenceState(n, 2)
        gens = random_generators(rng, n, 4)
        v0 = oracle.reference_vector(ref)
        basis = [v0]
        for g in gens:
            gm = oracle.to_dense(PauliSum(n, [(g, 1.0)]))
            basis.append(-1j * (gm @ v0))
        gram = np.array([[bi.conj() @ bj for bj in basis] for bi in basis])
        assert np.allclose(gram, np.eye(len(basis)), atol=1e-12)

    def test_rejects_even_y_generator(self, rng):
        h = random_even_sum(rng, 3, 6)
        bad = PauliWord(3, 0b11, 0b11)  # two Y factors
        with pytest.raises(ValueError):
            build_h_matrix(h, [bad], ReferenceState(3, 1))

    def test_rejects_commuting_pair(self, rng):
        h = random_even_sum(rng, 4, 6)
        a = PauliWord(4, 0b0001, 0b0001)
        b = PauliWord(4, 0b1000, 0b1000)  # disjoint supports commute
        with pytest.raises(ValueError):
            build_h_matrix(h, [a, b], ReferenceState(4, 2))

    def test_rejects_odd_y_hamiltonian(self):
        h = PauliSum.from_text("0.5 Y0\n1.0 Z0\n", 1)
        g = canonical_generator(1, 1)
        with pytest.raises(ValueError, match="parity"):
            build_h_matrix(h, [g], ReferenceState(1, 0))


class TestSolve:
    def test_two_level_closed_form(self):
        # eigenvalues of [[-1, b],[b, 1]] are -+ sqrt(1 + b^2)
        h = PauliSum.from_text("1.0 Z0\n0.3 X0\n", 1)
        ref = ReferenceState(1, 1)
        sol = solve_ilcap(h, [canonical_generator(1, 1)], ref)
        assert sol.energy == pytest.approx(-math.sqrt(1.09), abs=1e-12)
        assert sol.coefficients[0] >= 0.0
        assert np.sum(sol.coefficients**2) == pytest.approx(1.0, abs=1e-12)

    def test_energy_equals_parametrized_ansatz(self, rng):
        # the recovered (t, alpha) must reproduce the eigenvalue through
        # the actual unitary, not just the matrix algebra
        for _ in range(20):
            n = rng.randint(3, 5)
            h = random_even_sum(rng, n, 10)
            ref = ReferenceState(n, rng.randint(0, n))
            gens = random_generators(rng, n, rng.randint(1, 4))
            sol = solve_ilcap(h, gens, ref)
            hd = dress_with_combination(h, gens, sol.t, sol.alphas)
            assert ref.expectation(hd) == pytest.approx(sol.energy, abs=1e-9)

    def test_variational_bound(self, rng):
        for _ in range(25):
            n = rng.randint(3, 6)
            h = random_even_sum(rng, n, 10)
            ref = ReferenceState(n, rng.randint(0, n))
            gens = random_generators(rng, n, rng.randint(1, 5))
            sol = solve_ilcap(h, gens, ref)
            assert sol.energy >= oracle.ground_energy(h) - 1e-9
            assert sol.energy <= ref.expectation(h) + 1e-9

    def test_beats_single_generator_sequential(self, rng):
        # the combination contains each single rotation as a special case
        for _ in range(15):
            n = rng.randint(3, 5)
            h = random_even_sum(rng, n, 10)
            ref = ReferenceState(n, rng.randint(0, n))
            gens = random_generators(rng, n, 3)
            sol = solve_ilcap(h, gens, ref)
            for g in gens:
                single = solve_ilcap(h, [g], ref)
                assert sol.energy <= single.energy + 1e-10

    def test_no_generators(self, rng):
        h = random_even_sum(rng, 3, 6)
        ref = ReferenceState(3, 1)
        sol = solve_ilcap(h, [], ref)
        assert sol.energy == pytest.approx(ref.expectation(h))
        assert sol.t == pytest.approx(0.0)

    def test_alpha_norm(self, rng):
        for _ in range(10):
            n = 4
            h = random_even_sum(rng, n, 10)
            ref = ReferenceState(n, 2)
            gens = random_generators(rng, n, 3)
            sol = solve_ilcap(h, gens, ref)
            if sol.t > 1e-6:
                assert float(np.sum(sol.alphas**2)) == pytest.approx(1.0, abs=1e-10)


class TestDressWithCombination:
    def test_matches_sequential_for_single_generator(self, rng):
        # with one generator the combination reduces to a plain rotation
        for _ in range(20):
            n = rng.randint(2, 5)
            h = random_even_sum(rng, n, 10)
            ref = ReferenceState(n, rng.randint(0, n))
            gens = random_generators(rng, n, 1)
            t = rng.uniform(-2.0, 2.0)
            hd = dress_with_combination(h, gens, t, [1.0])
            assert ref.expectation(hd) == pytest.approx(
                qcc_energy(h, gens, [t], ref), abs=1e-10
            )

    def test_spectrum_preserved(self, rng):
        n = 4
        h = random_even_sum(rng, n, 10)
        gens = random_generators(rng, n, 3)
        alphas = np.array([0.6, -0.48, 0.64])
        alphas /= math.sqrt(float(np.sum(alphas**2)))
        hd = dress_with_combination(h, gens, 0.8, alphas)
        want = np.linalg.eigvalsh(oracle.to_dense(h))
        got = np.linalg.eigvalsh(oracle.to_dense(hd))
        assert np.allclose(want, got, atol=1e-9)

    def test_matches_dense_exponential(self, rng):
        from scipy.linalg import expm

        for _ in range(10):
            n = rng.randint(3, 5)
            h = random_even_sum(rng, n, 8)
            gens = random_generators(rng, n, 2)
            alphas = np.array([rng.uniform(-1, 1) for _ in gens])
            alphas /= math.sqrt(float(np.sum(alphas**2)))
            t = rng.uniform(-2, 2)
            tm = sum(
                a * oracle.to_dense(PauliSum(n, [(g, 1.0)]))
                for a, g in zip(alphas, gens)
            )
            u = expm(-0.5j * t * tm)
            want = u.conj().T @ oracle.to_dense(h) @ u
            hd = dress_with_combination(h, gens, t, alphas)
            assert np.allclose(oracle.to_dense(hd), want, atol=1e-9)

    def test_zero_angle_is_identity(self, rng):
        h = random_even_sum(rng, 3, 8)
        gens = random_generators(rng, 3, 2)
        assert dress_with_combination(h, gens, 0.0, [1.0, 0.0]) == h

    def test_norm_validation(self, rng):
        h = random_even_sum(rng, 3, 8)
        gens = random_generators(rng, 3, 2)
        with pytest.raises(ValueError, match="norm"):
            dress_with_combination(h, gens, 0.5, [1.0, 1.0])
        with pytest.raises(ValueError):
            dress_with_combination(h, gens, 0.5, [1.0])


class TestBw:
    def test_no_excluded_sectors_is_plain_eigenvalue(self, rng):
        n = 4
        h = random_even_sum(rng, n, 10)
        ref = ReferenceState(n, 2)
        gens = random_generators(rng, n, 2)
        res = bw_correct(h, gens, [], ref)
        want = float(np.linalg.eigh(build_h_matrix(h, gens, ref))[0][0])
        assert res.energy == pytest.approx(want, abs=1e-12)
        assert res.converged

    def test_scalar_case_solves_secular_equation(self, rng):
        # no generators, one excluded sector: E = h00 + w^2/(E - d) has
        # the downfolded 2x2 lower root as its solution
        from qubitcc.screen import diagonal_expectation_flipped, gradients, ising_decompose

        found = 0
        for _ in range(200):
            if found >= 50:
                break
            n = rng.randint(2, 5)
            ref = ReferenceState(n, rng.randint(0, n))
            h = gapped_sum(rng, n, ref)
            dec = ising_decompose(h)
            ranked = gradients(dec, ref, drop_zero=True)
            if len(ranked) == 0:
                continue
            m = ranked.masks[0]
            e00 = ref.expectation(h)
            sector = dec.sectors[m]
            w = sector.reference_value(ref).real  # even part couples
            dm = diagonal_expectation_flipped(dec.diagonal, ref, m)
            if dm <= e00 + 1e-3:
                # the fixed point tracks the root adjacent to the
                # reference; only a positive gap selects the lower one
                continue
            disc = 0.25 * (e00 - dm) ** 2 + w * w
            lower = 0.5 * (e00 + dm) - math.sqrt(disc)
            try:
                res = bw_correct(h, [], [m], ref)
            except RuntimeError:
                continue
            if not res.converged or res.skipped_sectors:
                continue
            found += 1
            assert res.energy == pytest.approx(lower, abs=1e-10)
        assert found >= 50

    def test_corrections_lower_energy_for_positive_gaps(self, rng):
        from qubitcc.screen import diagonal_expectation_flipped, gradients, ising_decompose

        found = 0
        for _ in range(400):
            if found >= 30:
                break
            n = rng.randint(3, 5)
            ref = ReferenceState(n, rng.randint(0, n))
            h = gapped_sum(rng, n, ref)
            dec = ising_decompose(h)
            ranked = gradients(dec, ref, drop_zero=True)
            if len(ranked) < 2:
                continue
            e0 = ref.expectation(h)
            if any(
                diagonal_expectation_flipped(dec.diagonal, ref, m) <= e0 + 1e-6
                for m in dec.sectors
            ):
                continue
            gens = [canonical_generator(n, ranked.masks[0])]
            excluded = [m for m in dec.sectors if m != ranked.masks[0]]
            try:
                res = bw_correct(h, gens, excluded, ref)
            except RuntimeError:
                continue
            if not res.converged:
                continue
            found += 1
            assert res.energy <= res.uncorrected_energy + 1e-12
            assert res.uncorrected_energy <= e0 + 1e-12
        assert found >= 30

    def test_excluded_mask_validation(self, rng):
        h = random_even_sum(rng, 3, 8)
        ref = ReferenceState(3, 1)
        gens = random_generators(rng, 3, 1)
        with pytest.raises(ValueError):
            bw_correct(h, gens, [0], ref)
        with pytest.raises(ValueError):
            bw_correct(h, gens, [1 << 3], ref)
        with pytest.raises(ValueError):
            bw_correct(h, gens, [gens[0].x], ref)

    def test_singular_sector_skipped_with_warning(self):
        # degenerate diagonal: the excluded sector's denominator is zero
        h = PauliSum.from_text("0.2 X0\n1.0 Z1\n", 2)
        ref = ReferenceState(2, 0)
        with pytest.warns(UserWarning, match="skipped"):
            res = bw_correct(h, [], [0b01], ref)
        assert res.skipped_sectors == (0b01,)
        assert res.energy == pytest.approx(res.uncorrected_energy)


class TestEn:
    def test_two_level_upper_reference(self):
        # reference sits on the upper state: E = 1 + 0.09 / (1 - (-1))
        h = PauliSum.from_text("1.0 Z0\n0.3 X0\n", 1)
        ref = ReferenceState(1, 0)
        res = en_correct(h, ref)
        assert res.reference_energy == pytest.approx(1.0)
        assert res.energy == pytest.approx(1.045, abs=1e-12)

    def test_matches_manual_sum(self, rng):
        from qubitcc.screen import diagonal_expectation_flipped, ising_decompose

        for _ in range(30):
            n = rng.randint(2, 5)
            h = random_even_sum(rng, n, 10)
            ref = ReferenceState(n, rng.randint(0, n))
            dec = ising_decompose(h)
            e0 = ref.expectation(dec.diagonal)
            want = e0
            skip = False
            for m, sector in dec.sectors.items():
                gap = e0 - diagonal_expectation_flipped(dec.diagonal, ref, m)
                if abs(gap) < 1e-8:
                    skip = True
                    break
                want += sector.weight(ref) ** 2 / gap
            if skip:
                continue
            res = en_correct(h, ref)
            assert res.energy == pytest.approx(want, abs=1e-12)

    def test_degenerate_sector_skipped(self):
        h = PauliSum.from_text("0.2 X0\n1.0 Z1\n", 2)
        ref = ReferenceState(2, 0)
        with pytest.warns(UserWarning):
            res = en_correct(h, ref)
        assert res.skipped_sectors == (0b01,)
        assert res.energy == pytest.approx(res.reference_energy)

    def test_second_order_limit(self, rng):
        # weak coupling: EN and the exact ground energy agree to O(c^4)
        h0 = PauliSum.from_text("-1.0 Z0\n-0.7 Z1\n", 2)
        coupling = PauliSum.from_text("1.0 X0\n1.0 X0 X1\n", 2)
        ref = ReferenceState(2, 0)
        for c in (1e-2, 1e-3):
            h = h0 + coupling * c
            res = en_correct(h, ref)
            exact = oracle.ground_energy(h)
            assert abs(res.energy - exact) < 50 * c**4 + 1e-12
