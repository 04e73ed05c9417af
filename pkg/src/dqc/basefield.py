"""Base field F_p for primes p with p % 4 == 3.

Field elements are plain Python integers in canonical form 0..p-1.  The
modulus and its precomputed square/root tables travel in a
ComplexifiablePrime instance rather than with each element, which keeps
the enumeration loops free of per-element object overhead.

Only p % 4 == 3 is accepted: for those primes -1 is a quadratic
non-residue, so x**2 + 1 is irreducible and the degree-2 extension
behaves like the complex numbers (see complexfield).  A convenient
consequence used throughout: square roots of a residue c are
+-c**((p+1)/4), and a**2 + b**2 == 0 forces a == b == 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DivisionByZero, NotComplexifiable, NotPrime

# Residue and root tables are materialized up to this modulus; above it
# every query falls back to modular exponentiation.
TABLE_LIMIT = 1 << 16

# Legendre classes as stored in qr_table.
QR_ZERO = 0
QR_RESIDUE = 1
QR_NONRESIDUE = -1

# Witnesses making Miller-Rabin deterministic for all 64-bit integers.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for n < 2**64."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class ComplexifiablePrime:
    """A validated prime modulus p with p % 4 == 3 plus lookup tables.

    qr_table[c] holds the Legendre class of c (QR_ZERO / QR_RESIDUE /
    QR_NONRESIDUE) and sqrt_table[c] the ordered pair of square roots of
    a residue c.  Both are None for p > TABLE_LIMIT, in which case the
    Euler criterion and the exponent (p+1)/4 are evaluated per query.
    """

    p: int
    residue_class: int
    qr_table: list | None = field(default=None, repr=False, compare=False)
    sqrt_table: dict | None = field(default=None, repr=False, compare=False)

    # -- base arithmetic, canonical representatives in 0..p-1 --

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def neg(self, x: int) -> int:
        return -x % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise DivisionByZero(f"inverse of 0 mod {self.p}")
        return pow(x, self.p - 2, self.p)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(x), -e, self.p)
        return pow(x, e, self.p)

    def centered(self, x: int) -> int:
        """Representative of x in -(p-1)/2 .. (p-1)/2."""
        x %= self.p
        return x if x <= (self.p - 1) // 2 else x - self.p

    # -- squares and square roots --

    def legendre_class(self, c: int) -> int:
        """QR_ZERO, QR_RESIDUE or QR_NONRESIDUE for c mod p."""
        c %= self.p
        if self.qr_table is not None:
            return self.qr_table[c]
        if c == 0:
            return QR_ZERO
        return QR_RESIDUE if pow(c, (self.p - 1) // 2, self.p) == 1 else QR_NONRESIDUE

    def sqrt(self, c: int) -> tuple[int, ...]:
        """All square roots of c in F_p, in increasing order.

        Returns a pair {r, p-r} for a nonzero residue, (0,) for c == 0,
        and () when c is a non-residue.
        """
        c %= self.p
        if self.sqrt_table is not None:
            if c == 0:
                return (0,)
            return self.sqrt_table.get(c, ())
        if c == 0:
            return (0,)
        # p % 4 == 3 makes (p+1)/4 an integer exponent; the candidate
        # squares back to c exactly for residues.
        r = pow(c, (self.p + 1) // 4, self.p)
        if r * r % self.p != c:
            return ()
        return (r, self.p - r) if r <= self.p - r else (self.p - r, r)

    def elements(self) -> range:
        return range(self.p)

    # Workers in other processes rebuild the tables from p alone, which
    # is cheaper than pickling them.
    def __reduce__(self):
        return (validate_prime, (self.p,))


def validate_prime(candidate: int) -> ComplexifiablePrime:
    """Validate a modulus and construct its ComplexifiablePrime.

    Raises NotPrime for composites and NotComplexifiable for primes
    with p % 4 != 3 (for those -1 is a square mod p, or p == 2).
    """
    if not isinstance(candidate, int) or isinstance(candidate, bool):
        raise NotPrime(f"modulus must be an integer, got {candidate!r}")
    if not is_prime(candidate):
        raise NotPrime(f"{candidate} is not prime")
    if candidate % 4 != 3:
        raise NotComplexifiable(
            f"{candidate} % 4 == {candidate % 4}, need 3; "
            "x**2 + 1 is reducible so F_p[i] is not a field"
        )
    qr_table = None
    sqrt_table = None
    if candidate <= TABLE_LIMIT:
        qr_table = [QR_NONRESIDUE] * candidate
        qr_table[0] = QR_ZERO
        sqrt_table = {}
        for r in range(1, (candidate + 1) // 2):
            c = r * r % candidate
            qr_table[c] = QR_RESIDUE
            sqrt_table[c] = (r, candidate - r) if r <= candidate - r else (candidate - r, r)
    return ComplexifiablePrime(
        p=candidate,
        residue_class=candidate % 4,
        qr_table=qr_table,
        sqrt_table=sqrt_table,
    )
