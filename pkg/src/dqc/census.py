"""Exact counts and exhaustive enumeration of state vectors.

Closed forms
------------
Over F_p**2 in dimension D there are p**(2D) vectors.  Writing
s = (-1)**D, the zero-norm vectors number

    zeta(D, p) = p**(D-1) * (p**D + s*(p - 1))

and each nonzero norm value is taken equally often, giving

    omega(D, p) = p**(D-1) * (p**D - s)

unit-norm vectors.  Phase classes partition the unit sphere into
omega / (p + 1) irreducible states.  All of this is big-int exact.

Enumeration
-----------
The sphere is walked by fiber completion: fix the first D-1 amplitudes
(a "prefix"), compute the residual norm the last amplitude must carry,
and append each member of that norm fiber.  Every vector is produced
exactly once, in lexicographic amplitude order.  Work is therefore
p**(2(D-1)) prefixes, which is the quantity the budget limits.

Canonical filtering uses a fact about the phase action: the orbit of a
nonzero amplitude under the norm-1 group is the entire norm fiber it
lies in (both have p + 1 elements), so a unit state is canonical
exactly when its first nonzero amplitude is the smallest element of its
fiber.  The literal lex-min-of-class definition lives in hopf and the
test suite cross-asserts the two on full spheres.

Parallelism splits the prefix integer range into contiguous blocks;
block results merge by addition, so counts are identical for any split.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from multiprocessing import Pool

from .basefield import ComplexifiablePrime, validate_prime
from .complexfield import cadd, cinv, cmul, conj, fnorm, frobenius
from .errors import BudgetExceeded, DqcError, VerificationFailed

DEFAULT_BUDGET = 10**8
DEFAULT_SCAN_LIMIT = 10**6


# -- closed forms ----------------------------------------------------------

def total_count(p: int, d: int) -> int:
    """All vectors of dimension d over F_p**2."""
    return p ** (2 * d)


def zero_norm_count(p: int, d: int) -> int:
    """Vectors of field norm 0, the zero vector included."""
    sign = -1 if d % 2 else 1
    return p ** (d - 1) * (p**d + sign * (p - 1))


def unit_norm_count(p: int, d: int) -> int:
    """Vectors of field norm 1; the same count holds for any nonzero norm."""
    sign = -1 if d % 2 else 1
    return p ** (d - 1) * (p**d - sign)


def irreducible_count(p: int, d: int) -> int:
    """Phase classes of unit-norm vectors: unit_norm_count / (p + 1)."""
    q, r = divmod(unit_norm_count(p, d), p + 1)
    if r:
        raise DqcError(f"unit sphere size not divisible by p+1 for p={p}, d={d}")
    return q


def irreducible_product_form(p: int, n: int) -> int:
    """Irreducible n-qubit states as the explicit product
    p**(2**n - 1) * (p - 1) * prod_{k=1..n-1} (p**(2**k) + 1)."""
    out = p ** (2**n - 1) * (p - 1)
    for k in range(1, n):
        out *= p ** (2**k) + 1
    return out


def unentangled_irreducible_count(p: int, n: int) -> int:
    """Irreducible n-qubit product states: p**n * (p-1)**n."""
    return p**n * (p - 1) ** n


def maxent_irreducible_count(p: int, n: int) -> int:
    """Irreducible maximally entangled n-qubit states.

    p**(n+1) * (p-1) * (p+1)**(n-1) for n >= 2.  A single qubit admits
    none: its Bloch point satisfies X**2+Y**2+Z**2 == 1, so the three
    expectations cannot all vanish.
    """
    if n < 2:
        return 0
    return p ** (n + 1) * (p - 1) * (p + 1) ** (n - 1)


def maxent_to_unentangled_ratio(p: int, n: int) -> Fraction:
    """Exact ratio p * ((p+1)/(p-1))**(n-1), meaningful for n >= 2."""
    return Fraction(p) * Fraction(p + 1, p - 1) ** (n - 1)


def zero_norm_by_recurrence(prime: ComplexifiablePrime, d_max: int) -> list:
    """Zero-norm counts for d = 1..d_max via the completion recurrence.

    Extending a zero-norm vector keeps norm 0 one way (append 0), and
    every vector of nonzero norm -c is fixed by the p + 1 completions
    of fiber(c), giving

        zeta(d+1) = zeta(d) + (p + 1) * (p**(2d) - zeta(d)).

    Each term is compared against the closed form; disagreement raises
    VerificationFailed.
    """
    p = prime.p
    out = []
    z = 1  # dimension 1: only the zero vector
    for d in range(1, d_max + 1):
        if d > 1:
            z = z + (p + 1) * (p ** (2 * (d - 1)) - z)
        if z != zero_norm_count(p, d):
            raise VerificationFailed(f"zero_norm_recurrence[d={d}]")
        out.append(z)
    return out


# -- count report -----------------------------------------------------------

@dataclass
class CountReport:
    """Closed-form and (when run) enumerated counts for one (p, D) cell.

    match_flags records each cross-check by name; verified is their
    conjunction.  enumerated holds raw enumeration results.  notes
    collects skip reasons (budget) in human-readable form.
    """

    p: int
    d: int
    n: int | None = None
    total: int = 0
    zero_norm: int = 0
    unit_norm: int = 0
    irreducible: int = 0
    unentangled_irreducible: int | None = None
    maxent_irreducible: int | None = None
    unentangled_unit: int | None = None
    maxent_unit: int | None = None
    enumerated: dict = dc_field(default_factory=dict)
    match_flags: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(self.match_flags.values())

    def to_json_dict(self) -> dict:
        def s(v):
            return None if v is None else str(v)

        return {
            "p": self.p,
            "n": self.n,
            "D": self.d,
            "total": s(self.total),
            "zero_norm": s(self.zero_norm),
            "unit_norm": s(self.unit_norm),
            "irreducible": s(self.irreducible),
            "unentangled_irreducible": s(self.unentangled_irreducible),
            "maxent_irreducible": s(self.maxent_irreducible),
            "unentangled_unit": s(self.unentangled_unit),
            "maxent_unit": s(self.maxent_unit),
            "enumerated": {k: str(v) for k, v in sorted(self.enumerated.items())},
            "verified": self.verified,
        }


def closed_form_counts(prime: ComplexifiablePrime, d: int) -> CountReport:
    """Closed-form report for dimension d, with the internal identities
    checked: norm partition, divisibility by p + 1, the product form of
    the irreducible count, and the total/unit ratio bound.
    """
    if d < 1:
        raise DqcError(f"dimension must be >= 1, got {d}")
    p = prime.p
    n = d.bit_length() - 1 if d & (d - 1) == 0 and d > 1 else None
    rep = CountReport(
        p=p,
        d=d,
        n=n,
        total=total_count(p, d),
        zero_norm=zero_norm_count(p, d),
        unit_norm=unit_norm_count(p, d),
        irreducible=irreducible_count(p, d),
    )
    # zero-norm vectors plus p-1 equal nonzero-norm shells cover everything
    rep.match_flags["partition_identity"] = (
        rep.zero_norm + (p - 1) * rep.unit_norm == rep.total
    )
    rep.match_flags["phase_divisibility"] = rep.unit_norm % (p + 1) == 0
    # total / unit_norm reduces to p**(d+1) / (p**d - s), strictly above p
    ratio = Fraction(rep.total, rep.unit_norm)
    sign = -1 if d % 2 else 1
    rep.match_flags["density_ratio"] = ratio == Fraction(
        p ** (d + 1), p**d - sign
    ) and ratio > p
    if n is not None:
        rep.match_flags["irreducible_product_form"] = (
            irreducible_product_form(p, n) == rep.irreducible
        )
        rep.unentangled_irreducible = unentangled_irreducible_count(p, n)
        rep.maxent_irreducible = maxent_irreducible_count(p, n)
        rep.unentangled_unit = (p + 1) * rep.unentangled_irreducible
        rep.maxent_unit = (p + 1) * rep.maxent_irreducible
        if n >= 2:
            rep.match_flags["maxent_ratio_formula"] = Fraction(
                rep.maxent_irreducible, rep.unentangled_irreducible
            ) == maxent_to_unentangled_ratio(p, n)
    return rep


# -- enumeration tables ------------------------------------------------------

_TABLE_CACHE: dict = {}


def enum_tables(p: int):
    """Flat lookup tables over element indices e = re * p + im.

    Returns (fnorm_by_index, fibers, fiber_sizes, fiber_min) where
    fibers[c] is the sorted tuple of element indices of norm c,
    fiber_sizes[c] = len(fibers[c]) and fiber_min[e] flags the smallest
    element of each nonzero-norm fiber.
    """
    cached = _TABLE_CACHE.get(p)
    if cached is not None:
        return cached
    fn = [0] * (p * p)
    fibers = [[] for _ in range(p)]
    for a in range(p):
        for b in range(p):
            e = a * p + b
            c = (a * a + b * b) % p
            fn[e] = c
            fibers[c].append(e)
    fibers = [tuple(f) for f in fibers]
    fiber_sizes = [len(f) for f in fibers]
    fiber_min = bytearray(p * p)
    for c in range(1, p):
        fiber_min[fibers[c][0]] = 1
    tables = (fn, fibers, fiber_sizes, fiber_min)
    _TABLE_CACHE[p] = tables
    return tables


def _decode_prefix(prefix: int, d: int, q: int) -> list:
    """Digits of prefix in base q, most significant first, d-1 of them."""
    digits = [0] * (d - 1)
    for k in range(d - 2, -1, -1):
        prefix, digits[k] = divmod(prefix, q)
    return digits


def prefix_blocks(total: int, workers: int) -> list:
    """Static contiguous split of range(total) into at most 4*workers blocks."""
    chunks = min(total, max(1, workers * 4))
    bounds = [total * i // chunks for i in range(chunks + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(chunks)]


def run_blocks(worker, args_list: list, threads: int) -> list:
    """Run a top-level worker over per-block argument tuples.

    threads <= 1 executes inline; otherwise a process pool is used.
    Results come back in block order either way.
    """
    if threads <= 1 or len(args_list) <= 1:
        return [worker(a) for a in args_list]
    with Pool(processes=threads) as pool:
        return pool.map(worker, args_list)


# -- counting workers (top-level for pickling) -------------------------------

def _count_norm_block(args) -> int:
    p, d, target, start, stop = args
    fn, _, fiber_sizes, _ = enum_tables(p)
    q = p * p
    count = 0
    for prefix in range(start, stop):
        s = 0
        x = prefix
        for _ in range(d - 1):
            x, e = divmod(x, q)
            s += fn[e]
        count += fiber_sizes[(target - s) % p]
    return count


def _count_irreducible_block(args) -> int:
    p, d, start, stop = args
    fn, _, fiber_sizes, fiber_min = enum_tables(p)
    q = p * p
    count = 0
    for prefix in range(start, stop):
        if prefix == 0:
            # all-zero prefix: the completion leads and the residual is 1,
            # whose fiber holds exactly one canonical choice
            count += 1
            continue
        digits = _decode_prefix(prefix, d, q)
        s = 0
        first = 0
        for e in digits:
            s += fn[e]
            if not first and e:
                first = e
        if fiber_min[first]:
            count += fiber_sizes[(1 - s) % p]
    return count


# -- public enumeration -------------------------------------------------------

def check_budget(p: int, d: int, budget: int, closed_form: int | None = None):
    prefixes = p ** (2 * (d - 1))
    if prefixes > budget:
        raise BudgetExceeded(prefixes, budget, closed_form)
    return prefixes


def count_norm_class(
    prime: ComplexifiablePrime,
    d: int,
    target: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> int:
    """Count vectors of the given norm by fiber-completion enumeration."""
    p = prime.p
    target %= p
    expected = zero_norm_count(p, d) if target == 0 else unit_norm_count(p, d)
    prefixes = check_budget(p, d, budget, expected)
    blocks = prefix_blocks(prefixes, threads)
    args = [(p, d, target, start, stop) for start, stop in blocks]
    return sum(run_blocks(_count_norm_block, args, threads))


def count_irreducible(
    prime: ComplexifiablePrime,
    n: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> int:
    """Count canonical unit-norm states by the fiber-min filter."""
    p = prime.p
    d = 1 << n
    prefixes = check_budget(p, d, budget, irreducible_count(p, d))
    blocks = prefix_blocks(prefixes, threads)
    args = [(p, d, start, stop) for start, stop in blocks]
    return sum(run_blocks(_count_irreducible_block, args, threads))


def iter_norm_class(
    prime: ComplexifiablePrime,
    d: int,
    target: int,
    budget: int = DEFAULT_BUDGET,
    canonical_only: bool = False,
):
    """Yield amplitude tuples of every vector of the given norm, in
    lexicographic order.  canonical_only keeps phase-class minima, which
    is meaningful for nonzero target norms.
    """
    p = prime.p
    target %= p
    expected = zero_norm_count(p, d) if target == 0 else unit_norm_count(p, d)
    if canonical_only and target:
        expected //= p + 1
    check_budget(p, d, budget, expected)
    fn, fibers, _, fiber_min = enum_tables(p)
    q = p * p
    pairs = [divmod(e, p) for e in range(q)]
    for digits in product(range(q), repeat=d - 1):
        s = 0
        first = 0
        for e in digits:
            s += fn[e]
            if not first and e:
                first = e
        c = (target - s) % p
        head = tuple(pairs[e] for e in digits)
        if canonical_only and first and not fiber_min[first]:
            continue
        if canonical_only and not first:
            # completion leads; only the fiber minimum is canonical
            if c:
                yield head + (pairs[fibers[c][0]],)
            continue
        for e in fibers[c]:
            yield head + (pairs[e],)


def iter_irreducible(
    prime: ComplexifiablePrime, n: int, budget: int = DEFAULT_BUDGET
):
    """Yield canonical unit-norm n-qubit states in lexicographic order."""
    return iter_norm_class(prime, 1 << n, 1, budget=budget, canonical_only=True)


def full_scan_norm_counts(
    prime: ComplexifiablePrime, d: int, limit: int = DEFAULT_SCAN_LIMIT
) -> dict:
    """Naive oracle: walk all p**(2d) vectors and tally norms.

    Independent of the fiber machinery; used to cross-check it at tiny
    sizes.  Raises BudgetExceeded above the limit.
    """
    p = prime.p
    vectors = p ** (2 * d)
    if vectors > limit:
        raise BudgetExceeded(vectors, limit)
    fn, _, _, _ = enum_tables(p)
    counts = [0] * p
    for digits in product(range(p * p), repeat=d):
        counts[sum(fn[e] for e in digits) % p] += 1
    return {c: counts[c] for c in range(p)}


# -- sampled invariant checks -------------------------------------------------

def sample_unit_amps(prime: ComplexifiablePrime, d: int, rng: random.Random) -> tuple:
    """Rejection-sample one unit-norm amplitude tuple uniformly."""
    p = prime.p
    while True:
        amps = tuple((rng.randrange(p), rng.randrange(p)) for _ in range(d))
        if sum(fnorm(p, x) for x in amps) % p == 1:
            return amps


def random_phase(prime: ComplexifiablePrime, rng: random.Random):
    """A random norm-1 scalar: z / conj(z) for random z != 0."""
    p = prime.p
    while True:
        z = (rng.randrange(p), rng.randrange(p))
        if z != (0, 0):
            return cmul(p, z, cinv(p, conj(p, z)))


def spot_invariants(
    prime: ComplexifiablePrime, d: int, seed: int, rounds: int = 32
) -> bool:
    """Randomized sanity checks that need no enumeration budget.

    Verifies on sampled states/elements: conjugation agrees with the
    Frobenius power, field-norm multiplicativity, phase invariance of
    the vector norm, and Hermitian conjugate symmetry of the dot
    product.  Cheap even at the largest supported p.
    """
    p = prime.p
    rng = random.Random(seed)
    for _ in range(rounds):
        x = (rng.randrange(p), rng.randrange(p))
        y = (rng.randrange(p), rng.randrange(p))
        if conj(p, x) != frobenius(p, x):
            return False
        if fnorm(p, cmul(p, x, y)) != fnorm(p, x) * fnorm(p, y) % p:
            return False
        u = random_phase(prime, rng)
        if fnorm(p, u) != 1:
            return False
        a = sample_unit_amps(prime, d, rng)
        b = sample_unit_amps(prime, d, rng)
        # hdot(a, b) == conj(hdot(b, a)), amplitudes conjugated on the left
        ab = (0, 0)
        ba = (0, 0)
        for xa, xb in zip(a, b):
            ab = cadd(p, ab, cmul(p, conj(p, xa), xb))
            ba = cadd(p, ba, cmul(p, conj(p, xb), xa))
        if ab != conj(p, ba):
            return False
        scaled_norm = sum(fnorm(p, cmul(p, x, u)) for x in a) % p
        if scaled_norm != 1:
            return False
    return True


# -- verification entry point --------------------------------------------------

def verify(
    prime: ComplexifiablePrime,
    n: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    scan_limit: int = DEFAULT_SCAN_LIMIT,
    seed: int = 0,
) -> CountReport:
    """Cross-check closed forms against exhaustive enumeration for n qubits.

    Always runs the closed-form identities, the zero-norm recurrence and
    the sampled invariants.  Budget permitting, enumerates the unit and
    zero spheres, the canonical states and the entanglement census, and
    compares every count.  The naive full scan joins in below
    scan_limit.  Any mismatch raises VerificationFailed; a budget skip
    is recorded as a note instead.
    """
    from .entangle import census_tally  # deferred: entangle imports this module

    p = prime.p
    d = 1 << n
    rep = closed_form_counts(prime, d)
    recurrence = zero_norm_by_recurrence(prime, d)
    rep.match_flags["zero_norm_recurrence"] = recurrence[-1] == rep.zero_norm
    rep.match_flags["spot_invariants"] = spot_invariants(prime, d, seed)

    prefixes = p ** (2 * (d - 1))
    if prefixes > budget:
        rep.notes.append(
            f"enumeration skipped: {prefixes} prefixes exceed budget {budget}"
        )
    else:
        rep.enumerated["unit_norm"] = count_norm_class(
            prime, d, 1, budget=budget, threads=threads
        )
        rep.enumerated["zero_norm"] = count_norm_class(
            prime, d, 0, budget=budget, threads=threads
        )
        rep.enumerated["irreducible"] = count_irreducible(
            prime, n, budget=budget, threads=threads
        )
        rep.match_flags["unit_norm_enumerated"] = (
            rep.enumerated["unit_norm"] == rep.unit_norm
        )
        rep.match_flags["zero_norm_enumerated"] = (
            rep.enumerated["zero_norm"] == rep.zero_norm
        )
        rep.match_flags["irreducible_enumerated"] = (
            rep.enumerated["irreducible"] == rep.irreducible
        )
        tally = census_tally(prime, n, budget=budget, threads=threads)
        rep.enumerated["unentangled_irreducible"] = tally.class_counts["Unentangled"]
        rep.enumerated["maxent_irreducible"] = tally.class_counts["Maximal"]
        rep.match_flags["unentangled_enumerated"] = (
            tally.class_counts["Unentangled"] == rep.unentangled_irreducible
        )
        rep.match_flags["maxent_enumerated"] = (
            tally.class_counts["Maximal"] == rep.maxent_irreducible
        )
        rep.match_flags["census_total"] = (
            sum(tally.class_counts.values()) == rep.irreducible
        )

    if total_count(p, d) <= scan_limit:
        scan = full_scan_norm_counts(prime, d, limit=scan_limit)
        rep.enumerated["full_scan_zero_norm"] = scan[0]
        rep.enumerated["full_scan_unit_norm"] = scan[1]
        rep.match_flags["full_scan_zero_norm"] = scan[0] == rep.zero_norm
        rep.match_flags["full_scan_unit_norm"] = scan[1] == rep.unit_norm
        nonzero = {scan[c] for c in range(1, p)}
        rep.match_flags["full_scan_uniform_shells"] = nonzero == {rep.unit_norm}
    else:
        rep.notes.append(f"full scan skipped: {total_count(p, d)} vectors")

    for key, ok in rep.match_flags.items():
        if not ok:
            raise VerificationFailed(key, rep)
    return rep
