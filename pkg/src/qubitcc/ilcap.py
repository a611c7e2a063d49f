"""Involutory linear-combination ansatz and completeness corrections.

A normalized real combination T = sum_k alpha_k T_k of pairwise
anti-commuting involutory generators is itself involutory, so the
exponential ansatz closes into cos/sin terms and the energy over the
span of the reference and the T_k images is an (M+1) x (M+1) real
symmetric eigenproblem.  The corrections fold the remaining Ising
sectors back in: a Brillouin-Wigner fixed point over an effective
downfolded matrix, or a per-sector Epstein-Nesbet denominator sum.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .pauli import PauliSum, PauliWord, ReferenceState, commutes, half_commutator, multiply
from .screen import diagonal_expectation_flipped, ising_decompose

__all__ = [
    "IlcapSolution",
    "BwResult",
    "EnResult",
    "build_h_matrix",
    "solve_ilcap",
    "dress_with_combination",
    "bw_correct",
    "en_correct",
]

_IMAG_TOL = 1e-12
_I_POWERS = (1.0 + 0j, 1j, -1.0 + 0j, -1j)


def _group_by_x(h: PauliSum) -> dict[int, list[tuple[PauliWord, float]]]:
    groups: dict[int, list[tuple[PauliWord, float]]] = {}
    for w, c in h.items():
        groups.setdefault(w.x, []).append((w, c))
    return groups


def _bracket(
    groups: dict[int, list[tuple[PauliWord, float]]],
    ref: ReferenceState,
    left: PauliWord | None,
    right: PauliWord | None,
) -> complex:
    """<0| left * h * right |0> with exact phase bookkeeping."""
    need = (left.x if left is not None else 0) ^ (right.x if right is not None else 0)
    total = 0.0 + 0.0j
    for w, c in groups.get(need, ()):
        if left is None:
            word, k = w, 0
        else:
            word, ph = multiply(left, w)
            k = ph.k
        if right is not None:
            word, ph = multiply(word, right)
            k += ph.k
        e = ref.word_expectation(word)
        if e:
            total += c * e * _I_POWERS[k % 4]
    return total


def _validate_generators(generators: Sequence[PauliWord], n: int) -> None:
    for i, g in enumerate(generators):
        if g.n != n:
            raise ValueError("generator qubit count differs from the Hamiltonian's")
        if g.y_count() % 2 == 0:
            raise ValueError(f"generator {i} has even Y count; expected odd")
    for i in range(len(generators)):
        for j in range(i + 1, len(generators)):
            if commutes(generators[i], generators[j]):
                raise ValueError(f"generators {i} and {j} commute; set is not anti-commuting")


def build_h_matrix(
    h: PauliSum, generators: Sequence[PauliWord], ref: ReferenceState
) -> np.ndarray:
    """(M+1) x (M+1) real symmetric matrix of the combination ansatz.

    Row and column 0 belong to the reference; entry (k, 0) is
    i <0| T_k h |0>, entry (0, k) is -i <0| h T_k |0>, and (k', k) is
    <0| T_k' h T_k |0>.  Imaginary parts must vanish (odd-Y generators
    against an even-Y Hamiltonian); anything above 1e-12 raises,
    since it signals a generator parity defect.
    """
    if h.n != ref.n:
        raise ValueError("qubit counts differ")
    _validate_generators(generators, h.n)
    groups = _group_by_x(h)
    m = len(generators)
    mat = np.zeros((m + 1, m + 1))
    worst_imag = 0.0

    def put(i: int, j: int, val: complex) -> None:
        nonlocal worst_imag
        worst_imag = max(worst_imag, abs(val.imag))
        mat[i, j] = val.real

    put(0, 0, _bracket(groups, ref, None, None))
    for k, gen in enumerate(generators, start=1):
        put(k, 0, 1j * _bracket(groups, ref, gen, None))
        put(0, k, -1j * _bracket(groups, ref, None, gen))
    for i, gi in enumerate(generators, start=1):
        for j, gj in enumerate(generators, start=1):
            put(i, j, _bracket(groups, ref, gi, gj))

    scale = max(1.0, float(np.max(np.abs(mat))))
    if worst_imag > _IMAG_TOL * scale:
        raise ValueError(
            f"matrix entries have imaginary parts up to {worst_imag:.3e}; "
            "check generator Y parity"
        )
    asym = float(np.max(np.abs(mat - mat.T)))
    if asym > _IMAG_TOL * scale:
        raise ValueError(f"matrix asymmetry {asym:.3e} exceeds tolerance")
    return (mat + mat.T) / 2.0


@dataclass(frozen=True, slots=True)
class IlcapSolution:
    """Lowest eigenpair of the combination ansatz, back-converted."""

    energy: float
    coefficients: np.ndarray  # (M+1,) real unit vector, first entry >= 0
    t: float
    alphas: np.ndarray  # (M,) combination weights, unit norm when t > 0
    matrix: np.ndarray


def solve_ilcap(
    h: PauliSum, generators: Sequence[PauliWord], ref: ReferenceState
) -> IlcapSolution:
    """Lowest eigenpair of the ansatz matrix plus (t, alpha) recovery.

    The eigenvector deterministically takes a non-negative reference
    component; the amplitude is t = 2 arccos(C_0) and the combination
    weights are the remaining components over sin(t/2).  At t = 0 the
    weights are returned as zeros (the ansatz is the identity there).
    """
    mat = build_h_matrix(h, generators, ref)
    eigvals, eigvecs = np.linalg.eigh(mat)
    energy = float(eigvals[0])
    vec = eigvecs[:, 0].copy()
    lead = next((v for v in vec if abs(v) > 1e-14), 1.0)
    if lead < 0:
        vec = -vec
    c0 = min(1.0, max(-1.0, float(vec[0])))
    t = 2.0 * math.acos(c0)
    s = math.sin(t / 2.0)
    alphas = vec[1:] / s if s > 1e-12 else np.zeros(len(vec) - 1)
    return IlcapSolution(energy, vec, t, alphas, mat)


def dress_with_combination(
    h: PauliSum,
    generators: Sequence[PauliWord],
    t: float,
    alphas: Sequence[float],
    *,
    truncation_threshold: float = 0.0,
) -> PauliSum:
    """Conjugate h by exp(-i t T / 2) with T the alpha-combination.

    Because T is involutory the transformation closes exactly:
    h - (i/2) sin(t) [h, T] + (1 - cos t)/2 (T h T - h).
    """
    if len(generators) != len(alphas):
        raise ValueError("one weight per generator required")
    alphas = np.asarray(alphas, dtype=float)
    if t == 0.0 or len(generators) == 0 or not np.any(alphas):
        return h.truncate(truncation_threshold) if truncation_threshold > 0 else h
    norm = float(np.sum(alphas**2))
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"combination weights have norm {norm:.6f}, need 1")
    _validate_generators(generators, h.n)

    st = math.sin(t)
    fc = (1.0 - math.cos(t)) / 2.0
    terms: list[tuple[PauliWord, float]] = [(w, c * (1.0 - fc)) for w, c in h.items()]
    for a_k, gen in zip(alphas, generators):
        if a_k == 0.0:
            continue
        for w, c in half_commutator(gen, h).items():
            terms.append((w, st * a_k * c))

    tht: dict[PauliWord, complex] = {}
    for a_k, gk in zip(alphas, generators):
        if a_k == 0.0:
            continue
        for a_j, gj in zip(alphas, generators):
            if a_j == 0.0:
                continue
            for w, c in h.items():
                v1, p1 = multiply(gk, w)
                v2, p2 = multiply(v1, gj)
                tht[v2] = tht.get(v2, 0j) + a_k * a_j * c * _I_POWERS[(p1.k + p2.k) % 4]
    scale = max(1.0, h.max_abs_coefficient())
    for w, val in tht.items():
        if abs(val.imag) > 1e-10 * scale:
            raise ValueError("T h T has a non-negligible imaginary term")
        if val.real:
            terms.append((w, fc * val.real))
    out = PauliSum(h.n, terms)
    return out.truncate(truncation_threshold) if truncation_threshold > 0 else out


@dataclass(frozen=True, slots=True)
class BwResult:
    """Brillouin-Wigner fixed point over the downfolded matrix."""

    energy: float
    uncorrected_energy: float
    converged: bool
    iterations: int
    skipped_sectors: tuple[int, ...]


def bw_correct(
    h: PauliSum,
    generators: Sequence[PauliWord],
    excluded_masks: Sequence[int],
    ref: ReferenceState,
    *,
    tol: float = 1e-12,
    max_iterations: int = 200,
    singular_tol: float = 1e-8,
) -> BwResult:
    """Fold the excluded Ising sectors into the ansatz matrix.

    Solves E = lambda_min(H - b (D - E)^-1 b^T) by fixed-point
    iteration from E = lambda_min(H).  Columns whose denominator falls
    within singular_tol of E are skipped with a warning; three
    consecutive growing steps raise, since the iteration is diverging.
    """
    gen_masks = {g.x for g in generators}
    ordered = sorted(set(excluded_masks))
    for m in ordered:
        if m <= 0 or m >> h.n:
            raise ValueError(f"excluded mask {m:#x} empty or outside the register")
        if m in gen_masks:
            raise ValueError(f"excluded mask {m:#x} collides with a generator")

    mat = build_h_matrix(h, generators, ref)
    dec = ising_decompose(h)
    groups = _group_by_x(h)
    n_ex = len(ordered)
    b = np.zeros((len(generators) + 1, n_ex))
    d = np.zeros(n_ex)
    worst_imag = 0.0
    for col, m in enumerate(ordered):
        xm = PauliWord(h.n, m, 0)
        val = _bracket(groups, ref, None, xm)
        worst_imag = max(worst_imag, abs(val.imag))
        b[0, col] = val.real
        for k, gen in enumerate(generators, start=1):
            val = 1j * _bracket(groups, ref, gen, xm)
            worst_imag = max(worst_imag, abs(val.imag))
            b[k, col] = val.real
        d[col] = diagonal_expectation_flipped(dec.diagonal, ref, m)
    scale = max(1.0, float(np.max(np.abs(mat))), float(np.max(np.abs(b), initial=0.0)))
    if worst_imag > _IMAG_TOL * scale:
        raise ValueError(
            f"coupling entries have imaginary parts up to {worst_imag:.3e}; "
            "check generator Y parity"
        )

    e0 = float(np.linalg.eigh(mat)[0][0])
    energy = e0
    skipped: set[int] = set()
    prev_step = math.inf
    growth = 0
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        denom = d - energy
        usable = np.abs(denom) >= singular_tol
        for col in np.nonzero(~usable)[0]:
            mask = ordered[col]
            if mask not in skipped:
                warnings.warn(
                    f"sector {mask:#x} skipped: denominator within "
                    f"{singular_tol:g} of the current energy",
                    stacklevel=2,
                )
                skipped.add(mask)
        bu = b[:, usable]
        eff = mat - (bu / denom[usable]) @ bu.T
        new_energy = float(np.linalg.eigh(eff)[0][0])
        step = abs(new_energy - energy)
        energy = new_energy
        if step < tol:
            converged = True
            break
        if step > prev_step:
            growth += 1
            if growth >= 3:
                raise RuntimeError(
                    f"fixed point diverging: step grew to {step:.3e} "
                    f"after {iterations} iterations"
                )
        else:
            growth = 0
        prev_step = step
    return BwResult(energy, e0, converged, iterations, tuple(sorted(skipped)))


@dataclass(frozen=True, slots=True)
class EnResult:
    """Epstein-Nesbet sector sum on top of the reference energy."""

    energy: float
    reference_energy: float
    contributions: dict[int, float]
    skipped_sectors: tuple[int, ...]


def en_correct(
    h: PauliSum,
    ref: ReferenceState,
    *,
    singular_tol: float = 1e-8,
) -> EnResult:
    """Second-order sector sum with diagonal-difference denominators.

    E = <0|h|0> + sum_m |<0|I_m|0>|^2 / (<0|h|0> - <0|X_m h X_m|0>),
    one term per nonzero X sector.  Near-degenerate denominators are
    skipped with a warning.
    """
    if h.n != ref.n:
        raise ValueError("qubit counts differ")
    dec = ising_decompose(h)
    e0 = ref.expectation(dec.diagonal)
    contributions: dict[int, float] = {}
    skipped: list[int] = []
    total = e0
    for m, sector in dec.sectors.items():
        weight = sector.weight(ref)
        gap = e0 - diagonal_expectation_flipped(dec.diagonal, ref, m)
        if abs(gap) < singular_tol:
            skipped.append(m)
            warnings.warn(
                f"sector {m:#x} skipped: degenerate diagonal gap {gap:.3e}",
                stacklevel=2,
            )
            continue
        term = weight * weight / gap
        contributions[m] = term
        total += term
    return EnResult(total, e0, contributions, tuple(skipped))
