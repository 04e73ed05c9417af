"""Pauli expectations, purity and the entanglement census.

Expectations of the single-qubit Pauli operators are elements of F_p
(imaginary parts cancel exactly).  The y-operator is taken with
weights chosen so that for one qubit the triple of expectations equals
the discrete Hopf point (X, Y, Z); the sign convention drops out of
every squared or zero-tested quantity.

Classification of a unit-norm state:

    Unentangled  every qubit splits off as a tensor factor
    Maximal      every qubit's expectation triple (x, y, z) has zero
                 squared length x**2 + y**2 + z**2 mod p
    Partial      everything else

Over F_p a triple can square to zero without its components vanishing,
and it is the squared-length criterion that the closed-form count
p**(n+1) (p-1) (p+1)**(n-1) enumerates; demanding all components zero
selects a strictly smaller set (24 versus 216 classes at p=3, n=2).
Unentangled and Maximal cannot overlap: a tensor factor of a unit-norm
state has nonzero field norm t, and its qubit's squared length works
out to t**2 times the cofactor norm squared, which is nonzero.

Purity is the averaged sum of squared expectations sum_sq / n, an
element of F_p defined whenever p does not divide n.  Product states
have purity 1.  The census also counts non-product states whose
purity residue equals 1 (the division-free test sum_sq == n mod p),
rather than assuming there are none.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .basefield import ComplexifiablePrime
from .census import (
    DEFAULT_BUDGET,
    check_budget,
    enum_tables,
    irreducible_count,
    prefix_blocks,
    run_blocks,
)
from .complexfield import cadd, cmul, cneg, conj
from .errors import NonRealExpectation, NotUnitNorm, ZeroVector
from .states import StateVector


class EntanglementClass(str, Enum):
    UNENTANGLED = "Unentangled"
    PARTIAL = "Partial"
    MAXIMAL = "Maximal"

    def __str__(self) -> str:  # csv/json friendliness
        return self.value


@dataclass(frozen=True)
class PauliExpectations:
    """Per-qubit triples (x, y, z) of Pauli expectations, all in F_p."""

    field: ComplexifiablePrime
    n: int
    grid: tuple

    def flat(self) -> tuple:
        return tuple(v for triple in self.grid for v in triple)


@dataclass(frozen=True)
class PurityValue:
    """sum_sq = sum of squared expectations; reduced = sum_sq / n when
    p does not divide n, else None."""

    sum_sq: int
    n: int
    reduced: int | None


@dataclass(frozen=True)
class Classification:
    kind: EntanglementClass
    n: int
    separable_mask: frozenset

    def __post_init__(self):
        full = len(self.separable_mask) == self.n
        if (self.kind == EntanglementClass.UNENTANGLED) != full:
            raise ValueError("Unentangled must coincide with a full separable mask")
        if self.kind == EntanglementClass.MAXIMAL and self.separable_mask:
            raise ValueError("Maximal states admit no separable qubit")


# -- raw kernels over amplitude tuples (census hot path) ---------------------

def expectations_raw(p: int, n: int, amps: tuple) -> list:
    """Flat [x0, y0, z0, x1, ...] expectations via the real-part formulas."""
    d = 1 << n
    norms = [(a * a + b * b) % p for a, b in amps]
    out = []
    for j in range(n):
        m = 1 << (n - 1 - j)
        ex = ey = ez = 0
        for i in range(d):
            if i & m:
                ez -= norms[i]
            else:
                ez += norms[i]
                a, b = amps[i]
                c, e = amps[i ^ m]
                ex += a * c + b * e
                ey += b * c - a * e
        out.extend((2 * ex % p, 2 * ey % p, ez % p))
    return out


def separable_mask_raw(p: int, n: int, amps: tuple) -> int:
    """Bit j set when qubit j factors out: reshaping the amplitudes to a
    2 x 2**(n-1) grid along bit j leaves every 2x2 minor zero."""
    d = 1 << n
    mask = 0
    for j in range(n):
        m = 1 << (n - 1 - j)
        cols = [i for i in range(d) if not (i & m)]
        sep = True
        for ci in range(len(cols)):
            if not sep:
                break
            i1 = cols[ci]
            a0, a1 = amps[i1]
            c0, c1 = amps[i1 | m]
            for cj in range(ci + 1, len(cols)):
                i2 = cols[cj]
                b0, b1 = amps[i2]
                e0, e1 = amps[i2 | m]
                re = a0 * e0 - a1 * e1 - (b0 * c0 - b1 * c1)
                im = a0 * e1 + a1 * e0 - (b0 * c1 + b1 * c0)
                if re % p or im % p:
                    sep = False
                    break
        if sep:
            mask |= 1 << j
    return mask


def qubit_norm_squares(p: int, exps: list) -> list:
    """Squared length of each qubit's expectation triple, in F_p."""
    return [
        (exps[k] ** 2 + exps[k + 1] ** 2 + exps[k + 2] ** 2) % p
        for k in range(0, len(exps), 3)
    ]


def classify_raw(p: int, n: int, amps: tuple) -> tuple:
    """(kind, sum_sq, mask) for a unit-norm amplitude tuple.

    sum_sq is the total of all 3n squared expectations mod p, the
    numerator of the purity.
    """
    exps = expectations_raw(p, n, amps)
    lengths = qubit_norm_squares(p, exps)
    sum_sq = sum(lengths) % p
    mask = separable_mask_raw(p, n, amps)
    if mask == (1 << n) - 1:
        kind = EntanglementClass.UNENTANGLED
    elif not any(lengths):
        kind = EntanglementClass.MAXIMAL
    else:
        kind = EntanglementClass.PARTIAL
    return kind, sum_sq, mask


# -- public operations on StateVector ----------------------------------------

def pauli_expectations(psi: StateVector) -> PauliExpectations:
    """Expectations by direct Hermitian accumulation.

    Keeps the full complexified sums and checks that each imaginary
    part is zero, raising NonRealExpectation otherwise (which would
    signal an internal inconsistency, not a property of the input).
    An independent path from expectations_raw; the tests equate them.
    """
    if not psi.is_unit():
        raise NotUnitNorm(f"state has norm {psi.vnorm()}, need 1")
    p = psi.field.p
    n, d, amps = psi.n, psi.dim, psi.amps
    plus_i, minus_i = (0, 1), (0, p - 1)
    grid = []
    for j in range(n):
        m = 1 << (n - 1 - j)
        accx = accy = accz = (0, 0)
        for i in range(d):
            ci = conj(p, amps[i])
            partner = amps[i ^ m]
            accx = cadd(p, accx, cmul(p, ci, partner))
            w = cmul(p, plus_i if not (i & m) else minus_i, partner)
            accy = cadd(p, accy, cmul(p, ci, w))
            dz = cmul(p, ci, amps[i])
            accz = cadd(p, accz, dz if not (i & m) else cneg(p, dz))
        for name, acc in (("x", accx), ("y", accy), ("z", accz)):
            if acc[1]:
                raise NonRealExpectation(
                    f"sigma_{name} on qubit {j} gave imaginary part {acc[1]}"
                )
        grid.append((accx[0], accy[0], accz[0]))
    return PauliExpectations(field=psi.field, n=n, grid=tuple(grid))


def purity(psi: StateVector) -> PurityValue:
    """Averaged squared expectations; reduced form only when p does not
    divide the qubit count."""
    exps = pauli_expectations(psi)
    p = psi.field.p
    sum_sq = sum(v * v for v in exps.flat()) % p
    reduced = None
    if psi.n % p:
        reduced = sum_sq * pow(psi.n % p, p - 2, p) % p
    return PurityValue(sum_sq=sum_sq, n=psi.n, reduced=reduced)


def separable_qubits(psi: StateVector) -> frozenset:
    """Indices of qubits that split off as tensor factors."""
    if all(x == (0, 0) for x in psi.amps):
        raise ZeroVector("separability is undefined for the zero vector")
    mask = separable_mask_raw(psi.field.p, psi.n, psi.amps)
    return frozenset(j for j in range(psi.n) if mask >> j & 1)


def classify(psi: StateVector) -> Classification:
    """Entanglement class of a unit-norm state."""
    if not psi.is_unit():
        raise NotUnitNorm(f"state has norm {psi.vnorm()}, need 1")
    kind, _, mask = classify_raw(psi.field.p, psi.n, psi.amps)
    return Classification(
        kind=kind,
        n=psi.n,
        separable_mask=frozenset(j for j in range(psi.n) if mask >> j & 1),
    )


# -- census -------------------------------------------------------------------

@dataclass
class CensusTally:
    """Counts over all irreducible (canonical unit-norm) n-qubit states.

    class_counts are per entanglement class; purity_hist keys are
    sum_sq residues.  purity_one_not_product counts entangled states
    passing the division-free purity-1 test sum_sq == n mod p, kept
    visible instead of being assumed empty.  Unit-sphere counts are the
    irreducible ones scaled by the p + 1 phases.
    """

    p: int
    n: int
    class_counts: dict
    purity_hist: dict
    purity_one_not_product: int

    @property
    def irreducible_total(self) -> int:
        return sum(self.class_counts.values())

    def unit_class_counts(self) -> dict:
        return {k: (self.p + 1) * v for k, v in self.class_counts.items()}


def _tally_block(args) -> tuple:
    p, n, start, stop = args
    d = 1 << n
    fn, fibers, _, fiber_min = enum_tables(p)
    q = p * p
    pairs = [divmod(e, p) for e in range(q)]
    classes: dict = {}
    purities: dict = {}
    p1np = 0
    n_res = n % p
    for prefix in range(start, stop):
        digits = []
        x = prefix
        for _ in range(d - 1):
            x, e = divmod(x, q)
            digits.append(e)
        digits.reverse()
        s = 0
        first = 0
        for e in digits:
            s += fn[e]
            if not first and e:
                first = e
        c = (1 - s) % p
        if first:
            if not fiber_min[first]:
                continue
            completions = fibers[c]
        else:
            # all-zero prefix: c == 1; only the fiber minimum is canonical
            completions = fibers[c][:1]
        head = tuple(pairs[e] for e in digits)
        for e in completions:
            amps = head + (pairs[e],)
            kind, sum_sq, _ = classify_raw(p, n, amps)
            key = kind.value
            classes[key] = classes.get(key, 0) + 1
            purities[sum_sq] = purities.get(sum_sq, 0) + 1
            if sum_sq == n_res and kind != EntanglementClass.UNENTANGLED:
                p1np += 1
    return classes, purities, p1np


def census_tally(
    prime: ComplexifiablePrime,
    n: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> CensusTally:
    """Classify every irreducible n-qubit state by block enumeration.

    Block results merge by addition, so the tally is independent of the
    thread count and block layout.
    """
    p = prime.p
    d = 1 << n
    prefixes = check_budget(p, d, budget, irreducible_count(p, d))
    blocks = prefix_blocks(prefixes, threads)
    args = [(p, n, start, stop) for start, stop in blocks]
    classes: dict = {k.value: 0 for k in EntanglementClass}
    purities: dict = {}
    p1np = 0
    for cls, pur, extra in run_blocks(_tally_block, args, threads):
        for k, v in cls.items():
            classes[k] = classes.get(k, 0) + v
        for k, v in pur.items():
            purities[k] = purities.get(k, 0) + v
        p1np += extra
    return CensusTally(
        p=p,
        n=n,
        class_counts=classes,
        purity_hist=dict(sorted(purities.items())),
        purity_one_not_product=p1np,
    )


def iter_classified(
    prime: ComplexifiablePrime, n: int, budget: int = DEFAULT_BUDGET
):
    """Yield (amps, kind, sum_sq, reduced, mask) for every irreducible
    state, in lexicographic amplitude order."""
    from .census import iter_irreducible

    p = prime.p
    n_res = n % p
    inv_n = pow(n_res, p - 2, p) if n_res else None
    for amps in iter_irreducible(prime, n, budget=budget):
        kind, sum_sq, mask = classify_raw(p, n, amps)
        reduced = sum_sq * inv_n % p if inv_n is not None else None
        yield amps, kind, sum_sq, reduced, mask
