"""Arithmetic in the complexified field F_p**2 = F_p[i], i**2 == -1.

Elements are plain (re, im) tuples of canonical residues.  Tuples keep
the census loops allocation-light and give lexicographic comparison of
(re, im) pairs for free, which is the order used for canonical phase
representatives.

Conjugation is implemented as negation of the imaginary part.  It must
agree with the field-theoretic definition x**p (the Frobenius map); the
test suite cross-asserts the two on every element for small p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .basefield import ComplexifiablePrime
from .errors import DivisionByZero

GFc = tuple  # (re, im) residue pair

ZERO = (0, 0)
ONE = (1, 0)


def cadd(p: int, x: GFc, y: GFc) -> GFc:
    return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)


def csub(p: int, x: GFc, y: GFc) -> GFc:
    return ((x[0] - y[0]) % p, (x[1] - y[1]) % p)


def cneg(p: int, x: GFc) -> GFc:
    return (-x[0] % p, -x[1] % p)


def cmul(p: int, x: GFc, y: GFc) -> GFc:
    a, b = x
    c, d = y
    return ((a * c - b * d) % p, (a * d + b * c) % p)


def conj(p: int, x: GFc) -> GFc:
    """Complex conjugate a + bi -> a - bi."""
    return (x[0], -x[1] % p)


def fnorm(p: int, x: GFc) -> int:
    """Field norm a**2 + b**2, an element of F_p.

    Equals x * conj(x).  Multiplicative, and zero only for x == (0, 0)
    because -1 is a non-residue mod p.
    """
    a, b = x
    return (a * a + b * b) % p


def cinv(p: int, x: GFc) -> GFc:
    """Multiplicative inverse conj(x) / fnorm(x); defined for any x != 0."""
    n = fnorm(p, x)
    if n == 0:
        # fnorm vanishes only on (0, 0) when p % 4 == 3
        raise DivisionByZero(f"inverse of (0, 0) in F_{p}[i]")
    ninv = pow(n, p - 2, p)
    return (x[0] * ninv % p, -x[1] * ninv % p)


def cpow(p: int, x: GFc, e: int) -> GFc:
    """Square-and-multiply power; negative e inverts first."""
    if e < 0:
        x = cinv(p, x)
        e = -e
    out = ONE
    base = x
    while e:
        if e & 1:
            out = cmul(p, out, base)
        base = cmul(p, base, base)
        e >>= 1
    return out


def frobenius(p: int, x: GFc) -> GFc:
    """The automorphism x -> x**p.  Agrees with conj; kept as an
    independent path for cross-checking."""
    return cpow(p, x, p)


def norm_fiber(prime: ComplexifiablePrime, c: int) -> list:
    """All elements of F_p**2 with field norm c, sorted as (re, im) pairs.

    The fiber over 0 is {(0, 0)}; every nonzero c has exactly p + 1
    preimages.  Cost is O(p) square-root lookups, so this is practical
    for table-sized p and degrades to O(p log p) above TABLE_LIMIT.
    """
    p = prime.p
    c %= p
    if c == 0:
        return [ZERO]
    out = []
    for a in range(p):
        rem = (c - a * a) % p
        for b in prime.sqrt(rem):
            out.append((a, b))
    out.sort()
    return out


@dataclass(frozen=True)
class PhaseGroup:
    """The multiplicative group of field-norm-1 elements of F_p**2.

    Cyclic of order p + 1.  Multiplying a state vector by a member
    changes no observable quantity; the quotient by this action is what
    the canonical representative machinery computes.
    """

    prime: ComplexifiablePrime
    elements: tuple
    generator: GFc

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return fnorm(self.prime.p, x) == 1


def _factorize(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(p: int, x: GFc, group_order: int) -> int:
    """Order of x in a group of known order (x must lie in it)."""
    order = group_order
    for q in _factorize(group_order):
        while order % q == 0 and cpow(p, x, order // q) == ONE:
            order //= q
    return order


@lru_cache(maxsize=32)
def phase_group(prime: ComplexifiablePrime) -> PhaseGroup:
    """Enumerate the norm-1 elements and pick a cyclic generator.

    The generator is the lexicographically smallest element of full
    order p + 1, found by order testing against the factorization of
    p + 1.  Elements are returned sorted.
    """
    p = prime.p
    elems = norm_fiber(prime, 1)
    gen = None
    for u in elems:
        if multiplicative_order(p, u, p + 1) == p + 1:
            gen = u
            break
    if gen is None:  # cannot happen: the group is cyclic
        raise AssertionError(f"no generator of order {p + 1} found for p={p}")
    return PhaseGroup(prime=prime, elements=tuple(elems), generator=gen)
