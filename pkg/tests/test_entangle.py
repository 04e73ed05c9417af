import random

import pytest

from dqc import (
    CensusTally,
    Classification,
    EntanglementClass,
    NotUnitNorm,
    StateVector,
    ZeroVector,
    census_tally,
    classify,
    hopf_map_1q,
    pauli_expectations,
    phase_class,
    purity,
    separable_qubits,
    validate_prime,
)
from dqc.census import sample_unit_amps
from dqc.entangle import classify_raw, expectations_raw, iter_classified

from _oracles import brute_canonical, brute_separable, cnorm, matrix_expectation_grid


def vec(fld, *amps):
    return StateVector(fld, (len(amps) - 1).bit_length(), tuple(amps))


def unit_vectors(p, n):
    from _oracles import brute_vectors

    fld = validate_prime(p)
    for amps in brute_vectors(p, 1 << n, norm=1):
        yield StateVector(fld, n, amps)


def bell(fld):
    # (1+i)(|00> + |11>) has field norm 2 + 2 == 1 mod 3
    return vec(fld, (1, 1), (0, 0), (0, 0), (1, 1))


def test_expectations_frozen_basis_states(f3):
    assert pauli_expectations(vec(f3, (1, 0), (0, 0))).grid == ((0, 0, 1),)
    assert pauli_expectations(vec(f3, (0, 0), (1, 0))).grid == ((0, 0, 2),)
    assert pauli_expectations(vec(f3, (1, 1), (1, 1))).grid == ((1, 0, 0),)


def test_expectations_match_hopf_point_1q():
    for p in (3, 7):
        for psi in unit_vectors(p, 1):
            b = hopf_map_1q(psi)
            assert pauli_expectations(psi).grid == ((b.x, b.y, b.z),)


def test_expectations_match_matrix_oracle_exhaustive(f3):
    for n in (1, 2):
        for psi in unit_vectors(3, n):
            grid = matrix_expectation_grid(3, n, psi.amps)
            assert pauli_expectations(psi).grid == grid


def test_expectations_match_matrix_oracle_sampled(f7):
    rng = random.Random(7)
    for _ in range(200):
        amps = sample_unit_amps(f7, 4, rng)
        psi = StateVector(f7, 2, amps)
        assert pauli_expectations(psi).grid == matrix_expectation_grid(7, 2, amps)


def test_raw_kernel_agrees_with_public_path(f3, f7):
    for fld, n in ((f3, 2), (f7, 1)):
        for psi in unit_vectors(fld.p, n):
            flat = tuple(expectations_raw(fld.p, n, psi.amps))
            assert flat == pauli_expectations(psi).flat()


def test_expectations_require_unit_norm(f3):
    with pytest.raises(NotUnitNorm):
        pauli_expectations(vec(f3, (1, 1), (1, 0)))
    with pytest.raises(NotUnitNorm):
        classify(vec(f3, (1, 1), (1, 0)))
    with pytest.raises(NotUnitNorm):
        purity(vec(f3, (1, 1), (1, 0)))


def test_purity_of_product_states(f3, f7):
    # tensor products of unit 1-qubit states have purity residue 1
    import itertools

    for fld in (f3, f7):
        singles = list(itertools.islice(unit_vectors(fld.p, 1), 12))
        for a in singles[:4]:
            for b in singles:
                psi = a.tensor(b)
                val = purity(psi)
                assert val.reduced == 1
                assert val.sum_sq == 2 % fld.p


def test_purity_reduced_none_when_p_divides_n(f3):
    # n == p == 3: no division-free reduction exists
    a = vec(f3, (1, 0), (0, 0))
    psi = a.tensor(a).tensor(a)
    val = purity(psi)
    assert val.n == 3
    assert val.reduced is None
    assert val.sum_sq == 0  # 3 * 1 == 0 mod 3


def test_bell_state_is_maximal(f3):
    psi = bell(f3)
    assert purity(psi).sum_sq == 0
    cls = classify(psi)
    assert cls.kind is EntanglementClass.MAXIMAL
    assert cls.separable_mask == frozenset()


def test_product_state_classification(f3):
    a = vec(f3, (1, 0), (0, 0))
    b = vec(f3, (1, 1), (1, 1))
    cls = classify(a.tensor(b))
    assert cls.kind is EntanglementClass.UNENTANGLED
    assert cls.separable_mask == frozenset({0, 1})


def test_partial_state_mask_n3(f3):
    # qubit 0 factors off a Bell pair: only qubit 0 is separable
    psi = vec(f3, (1, 0), (0, 0)).tensor(bell(f3))
    assert psi.is_unit()
    cls = classify(psi)
    assert cls.kind is EntanglementClass.PARTIAL
    assert cls.separable_mask == frozenset({0})
    assert separable_qubits(psi) == frozenset({0})


def test_separable_qubits_matches_brute_force(f3):
    for psi in unit_vectors(3, 2):
        mask = separable_qubits(psi)
        for j in (0, 1):
            assert (j in mask) == brute_separable(3, 2, psi.amps, j)


def test_separable_qubits_zero_vector(f3):
    with pytest.raises(ZeroVector):
        separable_qubits(vec(f3, (0, 0), (0, 0)))


def test_classification_is_phase_invariant(f3):
    for psi in unit_vectors(3, 2):
        cls = classify(psi)
        val = purity(psi)
        for member in phase_class(psi):
            assert classify(member) == cls
            assert purity(member) == val


def test_classification_invariants_enforced():
    with pytest.raises(ValueError):
        Classification(
            kind=EntanglementClass.UNENTANGLED, n=2, separable_mask=frozenset({0})
        )
    with pytest.raises(ValueError):
        Classification(
            kind=EntanglementClass.MAXIMAL, n=2, separable_mask=frozenset({1})
        )
    with pytest.raises(ValueError):
        Classification(
            kind=EntanglementClass.PARTIAL, n=1, separable_mask=frozenset({0})
        )


def test_census_tally_frozen_p3(f3):
    tally = census_tally(f3, 2)
    assert tally.class_counts == {
        "Unentangled": 36,
        "Partial": 288,
        "Maximal": 216,
    }
    assert tally.purity_hist == {0: 216, 1: 288, 2: 36}
    assert tally.purity_one_not_product == 0
    assert tally.irreducible_total == 540
    assert tally.unit_class_counts() == {
        "Unentangled": 144,
        "Partial": 1152,
        "Maximal": 864,
    }


def test_census_tally_frozen_p7(f7):
    tally = census_tally(f7, 2)
    assert tally.class_counts == {
        "Unentangled": 1764,
        "Partial": 84672,
        "Maximal": 16464,
    }
    assert tally.purity_one_not_product == 0
    assert tally.irreducible_total == 102900
    assert sum(tally.purity_hist.values()) == 102900
    # product states land on purity residue 1 (sum_sq == n mod p)
    assert tally.purity_hist[2] == 1764


def test_census_tally_thread_invariant(f3):
    one = census_tally(f3, 2, threads=1)
    many = census_tally(f3, 2, threads=3)
    assert one == many


def test_census_tally_matches_per_state_classification(f3):
    counts = {k.value: 0 for k in EntanglementClass}
    for amps in brute_canonical(3, 4):
        kind, _, _ = classify_raw(3, 2, amps)
        counts[kind.value] += 1
    assert counts == census_tally(f3, 2).class_counts


def test_all_zero_expectations_is_strictly_smaller(f3):
    # vanishing of every expectation is sufficient for Maximal but far
    # from necessary: 24 of the 216 maximal classes at p=3, n=2
    zero_exp = 0
    maximal = 0
    for amps in brute_canonical(3, 4):
        grid = matrix_expectation_grid(3, 2, amps)
        kind, _, _ = classify_raw(3, 2, amps)
        if all(v == 0 for t in grid for v in t):
            zero_exp += 1
            assert kind is EntanglementClass.MAXIMAL
        if kind is EntanglementClass.MAXIMAL:
            maximal += 1
    assert zero_exp == 24
    assert maximal == 216


def test_iter_classified_stream(f3):
    rows = list(iter_classified(f3, 2))
    assert len(rows) == 540
    amps_seen = [r[0] for r in rows]
    assert amps_seen == sorted(amps_seen)
    for amps, kind, sum_sq, reduced, mask in rows[:50]:
        psi = StateVector(f3, 2, amps)
        cls = classify(psi)
        assert kind == cls.kind
        val = purity(psi)
        assert sum_sq == val.sum_sq
        assert reduced == val.reduced
        assert frozenset(j for j in range(2) if mask >> j & 1) == cls.separable_mask
