"""Verification-harness and instance-generator tests.

gac_check on x1+x2+x3+x4 <= 2 is frozen as the canonical propagation-gap
demonstration: 72 consistent partial assignments, of which the adder encoding
misses required literals on 12, while both totalizer-family encodings and the
counter pass all of them.
"""

import itertools

import pytest

from pbcnf import (
    CSV_HEADER,
    LE,
    BenchSpec,
    PBConstraint,
    SplitMix64,
    compile_constraints,
    eq4_count,
    gac_check,
    gen_bench,
    lit,
    node_sums,
    oracle_check,
    oracle_check_formula,
    pb12like,
    pedigreelike,
    random_constraint,
    random_normalized_constraint,
    stats_compare,
    stats_csv,
)

REFERENCE = PBConstraint.from_signed([(2, 1), (3, 2), (3, 3), (3, 4)], LE, 5)
CARD4_LE2 = PBConstraint.from_signed([(1, 1), (1, 2), (1, 3), (1, 4)], LE, 2)


# --- subset-sum counting ---


def test_eq4_count_examples():
    assert eq4_count([2, 3, 3, 3], 5) == 4  # {2, 3, 5, 6}
    assert eq4_count([5, 5, 5, 7], 30) == 7  # {5, 7, 10, 12, 15, 17, 22}
    assert eq4_count([1, 2, 4, 8], 100) == 15  # all sums 1..15 distinct
    assert eq4_count([1, 2, 4, 8], 5) == 6  # 1..5 plus the clamp value 6
    assert eq4_count([7], 3) == 1


def test_eq4_count_unit_weights():
    for n in range(1, 10):
        for k in range(12):
            assert eq4_count([1] * n, k) == min(n, k + 1)


def test_eq4_count_matches_tree_root():
    rng = SplitMix64(4242)
    for _ in range(100):
        n = rng.randint(1, 10)
        weights = [rng.randint(1, 30) for _ in range(n)]
        k = rng.randint(max(weights), 60)
        assert eq4_count(weights, k) == len(node_sums(weights, k)), (weights, k)


def test_eq4_count_caps_input_size():
    with pytest.raises(ValueError):
        eq4_count([1] * 21, 5)


# --- equisatisfiability oracle ---


def test_oracle_passes_on_reference():
    for enc in ("gte", "swc", "adder"):
        outcome = oracle_check(REFERENCE, enc)
        assert outcome, (enc, outcome.assignment)
    assert oracle_check(CARD4_LE2, "totalizer")


def test_oracle_catches_a_broken_encoding():
    compiled = compile_constraints([REFERENCE], 4, "gte")
    # delete the final unit clause that actually enforces the bound
    assert compiled.formula.clauses[-1] == [lit(13, negative=True)]
    del compiled.formula.clauses[-1]
    outcome = oracle_check_formula(REFERENCE, compiled.formula, "gte")
    assert not outcome.equisatisfiable
    assert outcome.constraint_holds is False
    assert outcome.cnf_satisfiable is True
    assert not REFERENCE.holds(outcome.assignment)


def test_oracle_refuses_huge_constraints():
    big = PBConstraint.from_signed([(1, v) for v in range(1, 18)], LE, 5)
    with pytest.raises(ValueError):
        oracle_check(big, "gte")


# --- propagation completeness ---


def test_gac_reference_complete_for_counter_and_tree():
    for enc in ("gte", "swc"):
        reports = gac_check(REFERENCE, enc)
        assert reports
        assert all(r.passed for r in reports), enc


def test_gac_adder_gap_frozen():
    for enc, expected_fails in (("gte", 0), ("swc", 0), ("adder", 12)):
        reports = gac_check(CARD4_LE2, enc)
        assert len(reports) == 72  # consistent partials out of 3^4 = 81
        failing = [r for r in reports if not r.passed]
        assert len(failing) == expected_fails, enc

    # the canonical witness: both slots taken, yet the adder's unit
    # propagation leaves the two remaining inputs open
    reports = gac_check(CARD4_LE2, "adder")
    witness = [r for r in reports if set(r.partial) == {lit(1), lit(2)}]
    assert len(witness) == 1
    assert witness[0].missing == {lit(3, negative=True), lit(4, negative=True)}
    # equisatisfiability is untouched by the gap
    assert oracle_check(CARD4_LE2, "adder")


def test_gac_samples_when_space_is_large():
    c = PBConstraint.from_signed([(1, v) for v in range(1, 9)], LE, 3)
    reports = gac_check(c, "gte", trials=50, seed=3)
    assert len(reports) == 50
    assert all(r.passed for r in reports)


def test_gac_is_deterministic():
    c = PBConstraint.from_signed([(2, 1), (3, 2), (3, 3), (3, 4), (1, 5), (2, 6), (2, 7), (1, 8)], LE, 7)
    a = gac_check(c, "adder", trials=40, seed=9)
    b = gac_check(c, "adder", trials=40, seed=9)
    assert [(r.partial, r.missing, r.conflicted) for r in a] == [
        (r.partial, r.missing, r.conflicted) for r in b
    ]


def test_gac_rejects_non_normalized():
    with pytest.raises(ValueError):
        gac_check(PBConstraint.from_signed([(1, 1)], ">=", 1), "gte")


# --- random constraint generators ---


def test_random_normalized_constraints_are_normalized():
    rng = SplitMix64(7)
    for _ in range(300):
        c = random_normalized_constraint(rng)
        assert c.is_normalized(), c
        assert len(set(c.variables())) == len(c.terms)


def test_random_generators_deterministic():
    a = [str(random_normalized_constraint(SplitMix64(5))) for _ in range(3)]
    b = [str(random_normalized_constraint(SplitMix64(5))) for _ in range(3)]
    assert a == b
    x = [str(random_constraint(SplitMix64(5))) for _ in range(3)]
    y = [str(random_constraint(SplitMix64(5))) for _ in range(3)]
    assert x == y


def test_random_constraint_covers_all_relations():
    rng = SplitMix64(11)
    seen = {random_constraint(rng).relation for _ in range(200)}
    assert seen == {"<=", ">=", "="}


# --- benchmark families ---


def test_gen_bench_deterministic():
    spec = pedigreelike(n=20, seed=3)
    assert gen_bench(spec).constraints == gen_bench(spec).constraints
    spec = pb12like(constraints=5, n=12, seed=3)
    assert gen_bench(spec).constraints == gen_bench(spec).constraints


def test_pedigreelike_profile():
    inst = gen_bench(pedigreelike(n=30, max_weight=456, seed=2))
    assert len(inst.constraints) == 1
    c = inst.constraints[0]
    assert len(c.terms) == 30
    weights = {w for w, _ in c.terms}
    assert weights == {1, 456}
    assert c.bound == sum(w for w, _ in c.terms) // 2
    assert c.relation == LE


def test_pedigreelike_explicit_bound():
    inst = gen_bench(pedigreelike(n=10, k=17, seed=2))
    assert inst.constraints[0].bound == 17


def test_pb12like_profile():
    inst = gen_bench(pb12like(constraints=8, n=16, max_weight=13, distinct_weights=7, seed=5))
    assert inst.declared_vars == 32
    assert len(inst.constraints) == 8
    for c in inst.constraints:
        assert 2 <= len(c.terms) <= 32
        assert all(1 <= w <= 13 for w, _ in c.terms)
        assert len(set(c.variables())) == len(c.terms)


def test_gen_bench_unknown_family():
    with pytest.raises(ValueError, match="unknown family"):
        gen_bench(BenchSpec("nosuch", n=4))


# --- comparison table ---


def test_stats_compare_reference():
    from pbcnf import PbInstance

    inst = PbInstance(4, [REFERENCE])
    rows = stats_compare(inst, ["gte", "swc", "adder", "totalizer"], label="ref")
    by_enc = {r.encoder: r for r in rows}
    assert by_enc["gte"].aux_vars == 9
    assert by_enc["swc"].aux_vars == 20
    assert by_enc["gte"].result == "SAT"
    assert by_enc["swc"].result == "SAT"
    assert by_enc["adder"].result == "SAT"
    assert by_enc["totalizer"].result == "inapplicable"
    assert all(r.instance == "ref" for r in rows)


def test_stats_csv_shape():
    from pbcnf import PbInstance

    rows = stats_compare(PbInstance(4, [CARD4_LE2]), ["gte", "totalizer"], label="card")
    text = stats_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "instance,encoder,aux_vars,aux_clauses,encode_ms,solve_ms,result"
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3
    assert lines[1].startswith("card,gte,")
    # unit weights: the two totalizer-family encoders agree exactly
    gte_row, tot_row = rows
    assert gte_row.aux_vars == tot_row.aux_vars
    assert gte_row.aux_clauses == tot_row.aux_clauses
