"""Discrete Hopf map and phase-class geometry.

A unit-norm 1-qubit state (a0, a1) maps to the point

    X = 2 Re(a0 conj(a1)),  Y = 2 Im(a0 conj(a1)),  Z = fnorm(a0) - fnorm(a1)

on the discrete unit sphere X**2 + Y**2 + Z**2 == 1 over F_p.  The map
is constant exactly on phase classes {u psi : fnorm(u) == 1}, so the
p + 1 members of a class collapse to one of p(p - 1) sphere points.

For any qubit count the same quotient is realized by two constructions
kept deliberately separate: the canonical representative (the
lexicographically smallest class member) and the fingerprint (the
upper triangle of the density matrix, which is phase invariant).
"""

from __future__ import annotations

from dataclasses import dataclass

from .basefield import ComplexifiablePrime
from .complexfield import cmul, conj, fnorm, norm_fiber, phase_group
from .errors import NotUnitNorm
from .states import StateVector


@dataclass(frozen=True)
class BlochPoint:
    """A point of the discrete sphere plus a schematic real embedding.

    x, y, z are canonical residues satisfying x**2 + y**2 + z**2 == 1
    mod p.  ex, ey, ez rescale the centered representatives (range
    -(p-1)/2 .. (p-1)/2) to a real unit vector for plotting; they carry
    no arithmetic meaning.  degenerate marks the one case where the
    centered triple is (0, 0, 0) and no rescaling exists (impossible
    for unit-norm input, but kept so the export format is total).
    """

    x: int
    y: int
    z: int
    ex: float
    ey: float
    ez: float
    degenerate: bool


def _embed(prime: ComplexifiablePrime, x: int, y: int, z: int) -> BlochPoint:
    cx, cy, cz = prime.centered(x), prime.centered(y), prime.centered(z)
    r = (cx * cx + cy * cy + cz * cz) ** 0.5
    if r == 0:
        return BlochPoint(x, y, z, 0.0, 0.0, 0.0, True)
    return BlochPoint(x, y, z, cx / r, cy / r, cz / r, False)


def hopf_map_1q(psi: StateVector) -> BlochPoint:
    """Map a unit-norm 1-qubit state to its discrete sphere point."""
    if psi.n != 1:
        raise NotUnitNorm(f"Hopf map defined for 1 qubit, got n={psi.n}")
    if not psi.is_unit():
        raise NotUnitNorm(f"state has norm {psi.vnorm()}, need 1")
    p = psi.field.p
    a0, a1 = psi.amps
    w = cmul(p, a0, conj(p, a1))
    x = 2 * w[0] % p
    y = 2 * w[1] % p
    z = (fnorm(p, a0) - fnorm(p, a1)) % p
    return _embed(psi.field, x, y, z)


def phase_class(psi: StateVector) -> list:
    """All p + 1 phase multiples of a unit-norm state."""
    if not psi.is_unit():
        raise NotUnitNorm(f"state has norm {psi.vnorm()}, need 1")
    return [psi.scale(u) for u in phase_group(psi.field)]


def canonical_rep(psi: StateVector) -> StateVector:
    """Lexicographically smallest member of the phase class.

    Amplitude tuples are compared as sequences of (re, im) residue
    pairs.  Idempotent and constant on each class.
    """
    members = phase_class(psi)
    return min(members, key=lambda s: s.amps)


def is_canonical(psi: StateVector) -> bool:
    return canonical_rep(psi).amps == psi.amps


def fingerprint(psi: StateVector) -> tuple:
    """Phase-invariant signature: diagonal and strict upper triangle of
    the density matrix, flattened row-major.

    Diagonal entries are field norms (elements of F_p); off-diagonal
    entries are (re, im) pairs.  Two unit-norm states share a
    fingerprint exactly when they lie in the same phase class.
    """
    p = psi.field.p
    amps = psi.amps
    d = len(amps)
    out = []
    for i in range(d):
        out.append(fnorm(p, amps[i]))
        for j in range(i + 1, d):
            out.append(cmul(p, amps[i], conj(p, amps[j])))
    return tuple(out)


def bloch_export(prime: ComplexifiablePrime) -> list:
    """Bloch points of every irreducible (canonical unit-norm) 1-qubit
    state, sorted by (x, y, z).

    Enumerates unit states by completing each first amplitude with the
    norm fiber of the residual, filters to canonical representatives,
    and maps them.  Produces exactly p(p - 1) distinct points.
    """
    p = prime.p
    points = []
    elements = [(a, b) for a in range(p) for b in range(p)]
    for a0 in elements:
        residual = (1 - fnorm(p, a0)) % p
        for a1 in norm_fiber(prime, residual):
            psi = StateVector(prime, 1, (a0, a1))
            if is_canonical(psi):
                points.append(hopf_map_1q(psi))
    points.sort(key=lambda b: (b.x, b.y, b.z))
    return points
