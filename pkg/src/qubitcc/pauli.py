"""Pauli word algebra on bit-packed symplectic masks.

A Pauli word on n qubits is stored phase-free as a pair of integer bit
masks ``(x, z)``: bit j of ``x`` set means an X factor on qubit j, bit j
of ``z`` a Z factor, and both bits together a Y factor.  Every stored
word is Hermitian by construction.  Phases only ever arise from
multiplication and are tracked separately as integer powers of i.

Sums of words carry real coefficients and keep their terms in a
canonical order (lexicographic on the ``(x, z)`` pair), so any two
routes to the same operator accumulate bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "PauliWord",
    "Phase",
    "PauliSum",
    "ReferenceState",
    "multiply",
    "phaseless_product",
    "commutes",
    "conjugate_by_word",
    "half_commutator",
    "sandwich",
]

_PHASE_VALUES = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True, slots=True)
class Phase:
    """Multiplicative phase i**k with k stored modulo 4."""

    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", self.k % 4)

    def as_complex(self) -> complex:
        return _PHASE_VALUES[self.k]

    @property
    def is_real(self) -> bool:
        return self.k % 2 == 0

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.k + other.k)


@dataclass(frozen=True, slots=True)
class PauliWord:
    """Hermitian Pauli word on ``n`` qubits, phase-free by convention."""

    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a Pauli word needs at least one qubit")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("mask bits outside the qubit range")
        if self.x < 0 or self.z < 0:
            raise ValueError("masks must be non-negative")

    @classmethod
    def identity(cls, n: int) -> "PauliWord":
        return cls(n, 0, 0)

    @classmethod
    def from_factors(cls, n: int, factors: Iterable[tuple[str, int]]) -> "PauliWord":
        """Build a word from (letter, qubit) pairs, letters in 'XYZ'."""
        x = z = 0
        for letter, j in factors:
            if not 0 <= j < n:
                raise ValueError(f"qubit index {j} outside 0..{n - 1}")
            bit = 1 << j
            if (x | z) & bit:
                raise ValueError(f"duplicate qubit index {j}")
            if letter == "X":
                x |= bit
            elif letter == "Y":
                x |= bit
                z |= bit
            elif letter == "Z":
                z |= bit
            else:
                raise ValueError(f"unknown Pauli letter {letter!r}")
        return cls(n, x, z)

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def is_diagonal(self) -> bool:
        return self.x == 0

    def weight(self) -> int:
        """Number of non-identity single-qubit factors."""
        return (self.x | self.z).bit_count()

    def y_count(self) -> int:
        return (self.x & self.z).bit_count()

    def letter(self, j: int) -> str:
        """Single-qubit factor at qubit j, one of 'IXYZ'."""
        bit = 1 << j
        return "IXZY"[bool(self.x & bit) + 2 * bool(self.z & bit)]

    def to_text(self) -> str:
        """Word in the text format: 'X0 Y2 Z5' style, or 'I'."""
        if self.is_identity:
            return "I"
        parts = []
        support = self.x | self.z
        while support:
            j = (support & -support).bit_length() - 1
            parts.append(f"{self.letter(j)}{j}")
            support &= support - 1
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()


def commutes(a: PauliWord, b: PauliWord) -> bool:
    """True when the two words commute (symplectic form is even)."""
    if a.n != b.n:
        raise ValueError("qubit counts differ")
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) % 2 == 0


def phaseless_product(a: PauliWord, b: PauliWord) -> PauliWord:
    """Mask XOR of the two words, phase discarded."""
    if a.n != b.n:
        raise ValueError("qubit counts differ")
    return PauliWord(a.n, a.x ^ b.x, a.z ^ b.z)


def multiply(a: PauliWord, b: PauliWord) -> tuple[PauliWord, Phase]:
    """Exact product a*b as (word, phase).

    The phase is the power of i relating the Hermitian result word to
    the literal operator product; it is always one of 1, i, -1, -i.
    """
    if a.n != b.n:
        raise ValueError("qubit counts differ")
    x = a.x ^ b.x
    z = a.z ^ b.z
    k = (
        (a.x & a.z).bit_count()
        + (b.x & b.z).bit_count()
        + 2 * (a.z & b.x).bit_count()
        - (x & z).bit_count()
    )
    return PauliWord(a.n, x, z), Phase(k)


def _word_key(w: PauliWord) -> tuple[int, int]:
    return (w.x, w.z)


class PauliSum:
    """Real linear combination of Pauli words in canonical term order."""

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, terms: Iterable[tuple[PauliWord, float]] = ()):
        if n < 1:
            raise ValueError("a Pauli sum needs at least one qubit")
        acc: dict[PauliWord, float] = {}
        for word, c in terms:
            if word.n != n:
                raise ValueError("term qubit count differs from the sum's")
            c = float(c)
            acc[word] = acc.get(word, 0.0) + c
        self.n = n
        self._coeffs = {w: acc[w] for w in sorted(acc, key=_word_key) if acc[w] != 0.0}

    @classmethod
    def zero(cls, n: int) -> "PauliSum":
        return cls(n)

    def items(self) -> Iterator[tuple[PauliWord, float]]:
        return iter(self._coeffs.items())

    def words(self) -> Iterator[PauliWord]:
        return iter(self._coeffs)

    def coefficient(self, word: PauliWord) -> float:
        return self._coeffs.get(word, 0.0)

    def __contains__(self, word: PauliWord) -> bool:
        return word in self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        out = dict(self._coeffs)
        for w, c in other.items():
            out[w] = out.get(w, 0.0) + c
        return PauliSum(self.n, out.items())

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-1.0) * other

    def __mul__(self, scalar: float) -> "PauliSum":
        s = float(scalar)
        return PauliSum(self.n, ((w, c * s) for w, c in self.items()))

    __rmul__ = __mul__

    def __neg__(self) -> "PauliSum":
        return self * -1.0

    def __repr__(self) -> str:
        return f"PauliSum(n={self.n}, terms={len(self)})"

    def max_abs_coefficient(self) -> float:
        return max((abs(c) for c in self._coeffs.values()), default=0.0)

    def truncate(self, threshold: float) -> "PauliSum":
        """Drop every term with coefficient magnitude below ``threshold``."""
        if threshold < 0.0:
            raise ValueError("threshold must be non-negative")
        kept = ((w, c) for w, c in self.items() if abs(c) >= threshold)
        return PauliSum(self.n, kept)

    def diagonal_part(self) -> "PauliSum":
        return PauliSum(self.n, ((w, c) for w, c in self.items() if w.x == 0))

    # -- text round trip ------------------------------------------------

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "PauliSum":
        """Parse the line-oriented Hamiltonian text format.

        Each non-blank line is a decimal coefficient followed by either
        the literal ``I`` or whitespace-separated factors ``X<j>``,
        ``Y<j>``, ``Z<j>`` with strictly increasing 0-based qubit
        indices.  Lines starting with ``#`` are skipped.  The qubit
        count is inferred as one past the largest index unless given.
        """
        parsed: list[tuple[float, list[tuple[str, int]]]] = []
        max_index = -1
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            try:
                coeff = float(tokens[0])
            except ValueError:
                raise ValueError(f"line {lineno}: bad coefficient {tokens[0]!r}") from None
            if len(tokens) < 2:
                raise ValueError(f"line {lineno}: missing Pauli word")
            factors: list[tuple[str, int]] = []
            if tokens[1:] != ["I"]:
                prev = -1
                for tok in tokens[1:]:
                    if len(tok) < 2 or tok[0] not in "XYZ":
                        raise ValueError(f"line {lineno}: bad factor {tok!r}")
                    try:
                        j = int(tok[1:])
                    except ValueError:
                        raise ValueError(f"line {lineno}: bad factor {tok!r}") from None
                    if j == prev:
                        raise ValueError(f"line {lineno}: duplicate qubit index {j}")
                    if j < prev:
                        raise ValueError(f"line {lineno}: indices must increase")
                    factors.append((tok[0], j))
                    prev = j
                max_index = max(max_index, prev)
            parsed.append((coeff, factors))
        if n is None:
            n = max(max_index + 1, 1)
        elif max_index >= n:
            raise ValueError(f"qubit index {max_index} outside the declared {n} qubits")
        terms = [(PauliWord.from_factors(n, f), c) for c, f in parsed]
        return cls(n, terms)

    def to_text(self) -> str:
        """Emit the text format, one term per line in canonical order."""
        return "\n".join(f"{c:.17g} {w.to_text()}" for w, c in self.items())


@dataclass(frozen=True, slots=True)
class ReferenceState:
    """Product reference: the first ``n_elec`` qubits down (z = -1), the rest up."""

    n: int
    n_elec: int

    def __post_init__(self) -> None:
        if not 0 <= self.n_elec <= self.n:
            raise ValueError("n_elec must lie in 0..n")

    @property
    def occupied_mask(self) -> int:
        return (1 << self.n_elec) - 1

    def word_expectation(self, word: PauliWord) -> float:
        """<0|word|0>; zero unless the word is diagonal, else +-1."""
        if word.n != self.n:
            raise ValueError("qubit counts differ")
        if word.x:
            return 0.0
        return -1.0 if (word.z & self.occupied_mask).bit_count() & 1 else 1.0

    def expectation(self, h: PauliSum) -> float:
        """<0|h|0>, only diagonal terms contribute."""
        if h.n != self.n:
            raise ValueError("qubit counts differ")
        occ = self.occupied_mask
        total = 0.0
        for w, c in h.items():
            if w.x == 0:
                total += -c if (w.z & occ).bit_count() & 1 else c
        return total


def conjugate_by_word(h: PauliSum, generator: PauliWord, t: float) -> PauliSum:
    """exp(+i t G/2) h exp(-i t G/2) expanded exactly in the word basis.

    Terms commuting with the generator pass through unchanged; each
    anti-commuting term W splits into cos(t) W plus sin(t) times the
    signed product word.  No truncation happens here.
    """
    if generator.n != h.n:
        raise ValueError("qubit counts differ")
    ct, st = math.cos(t), math.sin(t)
    out: list[tuple[PauliWord, float]] = []
    for w, c in h.items():
        if commutes(w, generator):
            out.append((w, c))
            continue
        out.append((w, c * ct))
        v, p = multiply(w, generator)
        # -i * i**p is +-1 exactly; p is odd for anti-commuting Hermitian words
        out.append((v, c * st * (1.0 if p.k == 1 else -1.0)))
    return PauliSum(h.n, out)


def half_commutator(generator: PauliWord, h: PauliSum) -> PauliSum:
    """(i/2)[generator, h] as a real-coefficient sum.

    This is the derivative at t = 0 of the conjugation above, and the
    building block for amplitude gradients.
    """
    if generator.n != h.n:
        raise ValueError("qubit counts differ")
    out: list[tuple[PauliWord, float]] = []
    for w, c in h.items():
        if commutes(w, generator):
            continue
        v, p = multiply(generator, w)
        # i * i**p for odd p is -1 (p=1) or +1 (p=3)
        out.append((v, -c if p.k == 1 else c))
    return PauliSum(h.n, out)


def sandwich(h: PauliSum, word: PauliWord) -> PauliSum:
    """word * h * word; each term keeps or flips its sign."""
    if word.n != h.n:
        raise ValueError("qubit counts differ")
    out = [(w, c if commutes(w, word) else -c) for w, c in h.items()]
    return PauliSum(h.n, out)
