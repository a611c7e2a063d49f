#!/usr/bin/env python3
"""Generate minimal-basis H2 FCIDUMP fixtures for the test suite.

Dev tool, not part of the package. Integrals are computed analytically
for contracted s Gaussians (three primitives per atom, the usual scaled
hydrogen exponents), so the fixtures are reproducible to machine
precision without any external chemistry stack. The two molecular
orbitals are fixed by inversion symmetry, which makes a self-consistent
loop unnecessary.

Usage: python3 tools/make_h2_fcidump.py R1 [R2 ...]   (bond lengths, bohr)
Writes tests/data/h2_r<R>.fcidump relative to the repo root.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np

# 1s STO expansion, exponents pre-scaled by zeta^2 with zeta = 1.24
EXPONENTS = (3.42525091, 0.62391373, 0.16885540)
COEFFS = (0.15432897, 0.53532814, 0.44463454)


def _f0(t: float) -> float:
    if t < 1e-14:
        return 1.0
    return 0.5 * math.sqrt(math.pi / t) * math.erf(math.sqrt(t))


def _overlap(a: float, b: float, r2: float) -> float:
    p = a + b
    return (math.pi / p) ** 1.5 * math.exp(-a * b / p * r2)


def _kinetic(a: float, b: float, r2: float) -> float:
    p = a + b
    mu = a * b / p
    return mu * (3.0 - 2.0 * mu * r2) * (math.pi / p) ** 1.5 * math.exp(-mu * r2)


def _attraction(a: float, za: float, b: float, zb: float, zc: float) -> float:
    # charge-1 nucleus at zc, both Gaussians on the z axis
    p = a + b
    r2 = (za - zb) ** 2
    zp = (a * za + b * zb) / p
    return -2.0 * math.pi / p * math.exp(-a * b / p * r2) * _f0(p * (zp - zc) ** 2)


def _eri(a: float, za: float, b: float, zb: float,
         c: float, zc: float, d: float, zd: float) -> float:
    p = a + b
    q = c + d
    zp = (a * za + b * zb) / p
    zq = (c * zc + d * zd) / q
    pref = 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))
    expo = math.exp(-a * b / p * (za - zb) ** 2 - c * d / q * (zc - zd) ** 2)
    return pref * expo * _f0(p * q / (p + q) * (zp - zq) ** 2)


def h2_integrals(r: float) -> tuple[float, np.ndarray, np.ndarray]:
    """(e_core, h_mo[2,2], g_mo[2,2,2,2]) for H2 at separation r bohr."""
    centers = (0.0, r)
    prim = []  # (exponent, total coefficient, center) per primitive
    for z in centers:
        for alpha, coeff in zip(EXPONENTS, COEFFS):
            prim.append((alpha, coeff * (2.0 * alpha / math.pi) ** 0.75, z))
    per_atom = len(EXPONENTS)

    def ao_pair(i: int, j: int):
        return prim[i * per_atom:(i + 1) * per_atom], prim[j * per_atom:(j + 1) * per_atom]

    s = np.zeros((2, 2))
    t = np.zeros((2, 2))
    v = np.zeros((2, 2))
    for i in range(2):
        for j in range(2):
            pa, pb = ao_pair(i, j)
            for a, ca, za in pa:
                for b, cb, zb in pb:
                    r2 = (za - zb) ** 2
                    s[i, j] += ca * cb * _overlap(a, b, r2)
                    t[i, j] += ca * cb * _kinetic(a, b, r2)
                    for zc in centers:
                        v[i, j] += ca * cb * _attraction(a, za, b, zb, zc)

    # renormalize the contracted AOs, then build the symmetry orbitals
    norm = np.diag(1.0 / np.sqrt(np.diag(s)))
    s = norm @ s @ norm
    t = norm @ t @ norm
    v = norm @ v @ norm
    s12 = s[0, 1]
    cg = 1.0 / math.sqrt(2.0 * (1.0 + s12))
    cu = 1.0 / math.sqrt(2.0 * (1.0 - s12))
    mo = np.array([[cg, cu], [cg, -cu]])

    g_ao = np.zeros((2, 2, 2, 2))
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    pa, _ = ao_pair(i, i)
                    pb, _ = ao_pair(j, j)
                    pc, _ = ao_pair(k, k)
                    pd, _ = ao_pair(l, l)
                    acc = 0.0
                    for a, ca, za in pa:
                        for b, cb, zb in pb:
                            for c, cc, zc in pc:
                                for d, cd, zd in pd:
                                    acc += ca * cb * cc * cd * _eri(a, za, b, zb, c, zc, d, zd)
                    g_ao[i, j, k, l] = acc
    scale = np.diag(norm)
    g_ao = np.einsum("i,j,k,l,ijkl->ijkl", scale, scale, scale, scale, g_ao)

    h_mo = mo.T @ (t + v) @ mo
    g_mo = np.einsum("ip,jq,kr,ls,ijkl->pqrs", mo, mo, mo, mo, g_ao)
    return 1.0 / r, h_mo, g_mo


def write_fcidump(path: Path, r: float) -> None:
    e_core, h_mo, g_mo = h2_integrals(r)
    lines = [" &FCI NORB=2,NELEC=2,MS2=0,", "  ORBSYM=1,1,", "  ISYM=1,", " &END"]
    seen = set()
    for p in range(2):
        for q in range(p + 1):
            for rr in range(2):
                for ss in range(rr + 1):
                    if (p, q) < (rr, ss) or (p, q, rr, ss) in seen:
                        continue
                    seen.update({(p, q, rr, ss), (rr, ss, p, q)})
                    val = g_mo[p, q, rr, ss]
                    if abs(val) > 1e-14:
                        lines.append(f"{val:23.16e} {p + 1} {q + 1} {rr + 1} {ss + 1}")
    for p in range(2):
        for q in range(p + 1):
            val = h_mo[p, q]
            if abs(val) > 1e-14:
                lines.append(f"{val:23.16e} {p + 1} {q + 1} 0 0")
    lines.append(f"{e_core:23.16e} 0 0 0 0")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} (r = {r} bohr)")


def main() -> None:
    radii = [float(tok) for tok in sys.argv[1:]] or [1.0, 1.2, 1.4, 1.8, 2.4]
    out_dir = Path(__file__).resolve().parent.parent / "tests" / "data"
    out_dir.mkdir(parents=True, exist_ok=True)
    for r in radii:
        label = f"{r:g}".replace(".", "p")
        write_fcidump(out_dir / f"h2_r{label}.fcidump", r)


if __name__ == "__main__":
    main()
