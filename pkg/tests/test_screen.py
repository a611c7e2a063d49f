import numpy as np
import pytest

from qubitcc import oracle
from qubitcc.acset import canonical_generator
from qubitcc.pauli import PauliSum, PauliWord, ReferenceState
from qubitcc.screen import (
    diagonal_expectation_flipped,
    gradient_single,
    gradients,
    ising_decompose,
    recompose,
)

from conftest import random_even_sum, random_sum


class TestDecompose:
    def test_splits_diagonal_from_sectors(self):
        h = PauliSum.from_text("1.0 Z0\n0.5 Z0 Z1\n0.3 X0 X1\n0.2 Y0 Y1\n", 2)
        dec = ising_decompose(h)
        assert len(dec.diagonal) == 2
        assert list(dec.sectors) == [0b11]

    def test_y_phase_folding(self):
        # y0 = -i z0 x0, so the sector stores the coefficient on the odd side
        h = PauliSum.from_text("0.7 Y0\n", 1)
        dec = ising_decompose(h)
        sector = dec.sectors[1]
        assert len(sector.even) == 0
        assert sector.odd.coefficient(PauliWord(1, 0, 1)) == pytest.approx(-0.7)

    def test_two_y_fold_to_even_with_sign(self):
        h = PauliSum.from_text("0.4 Y0 Y1\n", 2)
        dec = ising_decompose(h)
        sector = dec.sectors[0b11]
        assert sector.even.coefficient(PauliWord(2, 0, 0b11)) == pytest.approx(-0.4)
        assert len(sector.odd) == 0

    def test_round_trip_random(self, rng):
        for _ in range(100):
            n = rng.randint(1, 7)
            h = random_sum(rng, n, 15)
            assert recompose(ising_decompose(h)) == h

    def test_round_trip_is_exact_not_approximate(self, rng):
        # bit-for-bit equality of coefficients, not closeness
        h = random_sum(rng, 5, 30)
        back = recompose(ising_decompose(h))
        want = dict(h.items())
        got = dict(back.items())
        assert want.keys() == got.keys()
        assert all(want[w] == got[w] for w in want)


class TestSectorWeight:
    def test_weight_matches_oracle_bracket(self, rng):
        # |<0| H P(x) |0>| restricted to one sector equals the stored weight
        for _ in range(60):
            n = rng.randint(2, 5)
            h = random_sum(rng, n, 12)
            ref = ReferenceState(n, rng.randint(0, n))
            dec = ising_decompose(h)
            vec = oracle.reference_vector(ref)
            hm = oracle.to_dense(h)
            for x, sector in dec.sectors.items():
                flip = oracle.to_dense(PauliSum(n, [(PauliWord(n, x, 0), 1.0)]))
                val = vec.conj() @ hm @ (flip @ vec)
                assert sector.weight(ref) == pytest.approx(abs(val), abs=1e-12)

    def test_gradient_single_even_hamiltonian(self, rng):
        # for even-Y Hamiltonians the canonical generator reproduces the weight
        for _ in range(60):
            n = rng.randint(2, 6)
            h = random_even_sum(rng, n, 12)
            ref = ReferenceState(n, rng.randint(0, n))
            dec = ising_decompose(h)
            for x, sector in dec.sectors.items():
                g = canonical_generator(n, x)
                assert gradient_single(h, g, ref) == pytest.approx(sector.weight(ref), abs=1e-12)

    def test_gradient_single_is_commutator_slope(self, rng):
        from qubitcc.pauli import half_commutator

        for _ in range(40):
            n = rng.randint(2, 5)
            h = random_sum(rng, n, 10)
            ref = ReferenceState(n, rng.randint(0, n))
            dec = ising_decompose(h)
            for x in dec.sectors:
                g = canonical_generator(n, x)
                slope = ref.expectation(half_commutator(g, h))
                assert gradient_single(h, g, ref) == pytest.approx(abs(slope), abs=1e-12)


class TestRanking:
    def test_descending_with_mask_tiebreak(self):
        h = PauliSum.from_text("0.1 X0\n0.5 X1\n0.1 X0 X1\n", 2)
        ranked = gradients(ising_decompose(h), ReferenceState(2, 0))
        assert ranked.masks == (0b10, 0b01, 0b11)
        assert ranked.weights == pytest.approx((0.5, 0.1, 0.1))
        assert ranked.top(1) == (0b10,)

    def test_zero_sectors_kept_by_default(self):
        # x0 z1 has zero reference gradient when qubit 1 points up or down
        # only through the z expectation; choose a configuration where the
        # even and odd parts cancel at the reference
        h = PauliSum.from_text("0.3 X0\n0.3 Y0\n", 1)
        ref = ReferenceState(1, 0)
        ranked = gradients(ising_decompose(h), ref)
        assert len(ranked) == 1
        dropped = gradients(ising_decompose(h), ref, drop_zero=True)
        assert len(dropped) == 1  # weight is sqrt(2)*0.3, not zero

    def test_drop_zero_removes_null_sectors(self):
        # x0x1 + y0y1 is a particle-conserving hop; it cannot connect the
        # empty reference to the doubly flipped state, so the sector weight
        # vanishes even though the sector is populated
        h = PauliSum.from_text("0.5 X0 X1\n0.5 Y0 Y1\n", 2)
        ref = ReferenceState(2, 0)
        kept = gradients(ising_decompose(h), ref)
        assert kept.masks == (0b11,)
        assert kept.weights[0] == pytest.approx(0.0, abs=1e-15)
        dropped = gradients(ising_decompose(h), ref, drop_zero=True)
        assert len(dropped) == 0

    def test_qubit_count_mismatch(self):
        h = PauliSum.from_text("1.0 X0\n", 1)
        with pytest.raises(ValueError):
            gradients(ising_decompose(h), ReferenceState(2, 0))


class TestFlippedDiagonal:
    def test_matches_oracle(self, rng):
        for _ in range(60):
            n = rng.randint(2, 5)
            h = random_sum(rng, n, 10)
            ref = ReferenceState(n, rng.randint(0, n))
            diag = h.diagonal_part()
            flip_mask = rng.getrandbits(n)
            vec = oracle.apply_to_basis_state(
                PauliWord(n, flip_mask, 0),
                ref.occupied_mask,
            )
            dm = oracle.to_dense(diag)
            want = (vec.conj() @ dm @ vec).real
            got = diagonal_expectation_flipped(diag, ref, flip_mask)
            assert got == pytest.approx(want, abs=1e-12)

    def test_rejects_off_diagonal(self):
        h = PauliSum.from_text("1.0 X0\n", 2)
        with pytest.raises(ValueError):
            diagonal_expectation_flipped(h, ReferenceState(2, 1), 0b01)

    def test_identity_flip(self):
        h = PauliSum.from_text("2.0 Z0\n", 2)
        ref = ReferenceState(2, 1)
        assert diagonal_expectation_flipped(h, ref, 0) == pytest.approx(ref.expectation(h))
        assert diagonal_expectation_flipped(h, ref, 0b01) == pytest.approx(-ref.expectation(h))
