import random
from fractions import Fraction

import pytest

from amenability import (
    GF2,
    LAMP_IDENTITY,
    RATIONALS,
    DegenerateInputError,
    FormalCombination,
    ShapeError,
    WeightedFunction,
    absorb_finite,
    act_subspace,
    contains_subspace,
    estimate_steiner,
    family_generate,
    finite_action,
    function_report,
    gf,
    integer_line,
    lamplighter,
    layer_cake,
    set_report,
    set_to_subspace,
    subspace_from_rows,
    subspace_report,
    subspace_sum,
    subspace_to_function,
    SubspaceMatroid,
)

Z = integer_line()
L = lamplighter()
LAMP_GENS = ["+1", "-1", "b"]


def cycle_action(n):
    return finite_action("cycle", list(range(n)), {"r": [(i + 1) % n for i in range(n)]})


# ---------------------------------------------------------------------------
# set reports


def test_lamp_box_report():
    for n in range(1, 7):
        box = family_generate("lamp-box", n)
        rep = set_report(box, LAMP_GENS, L)
        assert rep.union_ratio == Fraction(2, n)
        assert rep.union_size == (n + 2) * (1 << n)
        assert rep.per_generator["b"] == 0
        assert rep.per_generator["+1"] == Fraction(1, n)


def test_interval_report():
    rep = set_report(range(1, 11), ["+1", "-1"], Z)
    assert rep.union_ratio == Fraction(2, 10)
    assert rep.per_generator["+1"] == Fraction(1, 10)


def test_invariant_set_has_zero_ratio():
    rep = set_report(range(4), ["r", "r^-1"], cycle_action(4))
    assert rep.union_ratio == 0


def test_empty_set_is_rejected():
    with pytest.raises(DegenerateInputError):
        set_report([], ["+1"], Z)


def test_union_ratio_dominates_per_generator():
    rng = random.Random(1)
    for _ in range(20):
        pts = set(rng.sample(range(-20, 20), rng.randrange(1, 10)))
        rep = set_report(pts, ["+1", "-1"], Z)
        assert all(rep.union_ratio >= r for r in rep.per_generator.values())


def test_union_bound_over_generators():
    # if every per-generator ratio is below eps / #S the union stays below eps
    rng = random.Random(9)
    for _ in range(30):
        pts = set(rng.sample(range(-30, 30), rng.randrange(1, 12)))
        rep = set_report(pts, ["+1", "-1"], Z)
        assert rep.union_ratio <= sum(rep.per_generator.values())


def test_formal_combination_reduces_to_support():
    comb = FormalCombination(GF2, {("+1",): 1, ("-1",): 1})
    rep = set_report(range(5), [comb], Z)
    assert set(rep.per_generator) == {"+1", "-1"}


# ---------------------------------------------------------------------------
# function reports


def test_indicator_of_invariant_set():
    f = WeightedFunction.indicator(range(4))
    ratios = function_report(f, ["r"], cycle_action(4))
    assert ratios["r"] == 0


def test_indicator_of_interval():
    f = WeightedFunction.indicator(range(1, 11))
    ratios = function_report(f, ["+1"], Z)
    assert ratios["+1"] == Fraction(2, 10)


def test_tent_function_report():
    f = WeightedFunction({1: 1, 2: 2, 3: 1})
    ratios = function_report(f, ["+1"], Z)
    assert ratios["+1"] == 1  # |f - fs| = (1,1,1,1) on {1,2,3,4}, norm 4


def test_zero_function_is_rejected():
    with pytest.raises(DegenerateInputError):
        WeightedFunction({})
    with pytest.raises(DegenerateInputError):
        WeightedFunction({1: 0})


def test_negative_values_are_rejected():
    with pytest.raises(ShapeError):
        WeightedFunction({1: -1})


# ---------------------------------------------------------------------------
# layer cake


def test_layer_cake_of_indicator():
    f = WeightedFunction.indicator(range(1, 6))
    lc = layer_cake(f, ["+1", "-1"], Z)
    assert lc.threshold == 1
    assert lc.level_set == (1, 2, 3, 4, 5)


def test_layer_cake_of_tent():
    f = WeightedFunction({1: 1, 2: 2, 3: 1})
    lc = layer_cake(f, ["+1"], Z)
    assert lc.threshold == 1
    assert lc.level_set == (1, 2, 3)
    best_t, ratio = lc.per_generator_best["+1"]
    assert ratio == Fraction(2, 3) <= 1


def test_layer_cake_constant_on_orbit():
    f = WeightedFunction({i: Fraction(3, 7) for i in range(5)})
    lc = layer_cake(f, ["r"], cycle_action(5))
    assert lc.report.union_ratio == 0


def test_coarea_bound_per_generator():
    # min over thresholds of the symmetric-difference ratio never exceeds
    # the function's own translation defect, generator by generator
    rng = random.Random(77)
    for _ in range(25):
        support = rng.sample(range(-15, 15), rng.randrange(1, 8))
        f = WeightedFunction({x: Fraction(rng.randrange(1, 12), rng.randrange(1, 5)) for x in support})
        ratios = function_report(f, ["+1", "-1"], Z)
        lc = layer_cake(f, ["+1", "-1"], Z)
        for g in ("+1", "-1"):
            _, best = lc.per_generator_best[g]
            assert best <= ratios[g]


# ---------------------------------------------------------------------------
# sets to subspaces


def test_singleton_spans_a_line():
    sp = set_to_subspace([7], RATIONALS)
    assert sp.dim == 1
    assert sp.labels == (7,)


def test_interval_span_ratio_matches_set_ratio():
    pts = family_generate("z-interval", 4)
    sp = set_to_subspace(pts, GF2)
    assert sp.dim == 4
    rep = subspace_report(sp, ["+1", "-1"], Z)
    assert rep.union_ratio == Fraction(2, 4)


def test_box_span_ratio_no_worse_than_set():
    box = family_generate("lamp-box", 2)
    set_rep = set_report(box, LAMP_GENS, L)
    spc = set_to_subspace(box, GF2)
    sub_rep = subspace_report(spc, LAMP_GENS, L)
    assert sub_rep.size == len(box)
    assert sub_rep.union_ratio <= set_rep.union_ratio


# ---------------------------------------------------------------------------
# subspace reports


def test_lamp_span_report_gf2_and_gf3():
    for p in (2, 3):
        for n in (1, 2, 3, 4, 6):
            span = family_generate("lamp-span", n, gf(p))
            rep = subspace_report(span, LAMP_GENS, L)
            assert rep.union_size == n + 2
            assert rep.union_ratio == Fraction(2, n)
            assert rep.per_generator["b"] == 0
            assert act_subspace(span, L, "b") == span


def test_invariant_span_has_zero_ratio():
    act5 = cycle_action(5)
    sp = set_to_subspace(range(5), GF2)
    rep = subspace_report(sp, ["r"], act5)
    assert rep.union_ratio == 0


def test_zero_subspace_is_rejected():
    sp = subspace_from_rows([(0, 0)], [1, 2], GF2)
    with pytest.raises(DegenerateInputError):
        subspace_report(sp, ["+1"], Z)


def test_report_is_relabeling_invariant():
    # shifting the whole configuration commutes with the action, so the
    # numbers depend only on the geometry, not on which labels appear
    pts = [0, 1, 2, 5]
    shifted = [x + 100 for x in pts]
    a = subspace_report(set_to_subspace(pts, GF2), ["+1", "-1"], Z)
    b = subspace_report(set_to_subspace(shifted, GF2), ["+1", "-1"], Z)
    assert a.per_generator == b.per_generator
    assert a.union_ratio == b.union_ratio


# ---------------------------------------------------------------------------
# subspaces to functions


def test_interval_span_certificates():
    for v in (2, 5, 9):
        sp = set_to_subspace(family_generate("z-interval", v), RATIONALS)
        w = subspace_to_function(sp, ["+1", "-1"], Z, samples=256, seed=11)
        assert w.certificates["+1"] == Fraction(2, v)
        assert w.certificates["-1"] == Fraction(2, v)
        # the interval span has a unique basis, so sampling is noiseless
        assert w.sampled_ratios["+1"] == Fraction(2, v)


def test_lamp_span_certificates():
    span = family_generate("lamp-span", 4, GF2)
    w = subspace_to_function(span, LAMP_GENS, L, samples=512, seed=13)
    assert w.certificates["b"] == 0
    assert w.certificates["+1"] == Fraction(2, 4)
    assert w.certificates["-1"] == Fraction(2, 4)
    # the relabeled empirical estimate differs from the exact one only by
    # sampling noise, bounded by the stated allowance
    assert float(w.sampled_ratios["b"]) <= w.tolerance
    assert float(w.sampled_ratios["+1"]) <= float(w.certificates["+1"]) + w.tolerance


def test_invariant_subspace_yields_invariant_function():
    act5 = cycle_action(5)
    sp = set_to_subspace(range(5), GF2)
    w = subspace_to_function(sp, ["r"], act5, samples=128, seed=3)
    assert w.certificates["r"] == 0
    assert w.sampled_ratios["r"] == 0  # f = fs exactly


def test_function_is_the_steiner_estimate():
    sp = subspace_from_rows([(1, 0, 1), (0, 1, 1)], [1, 2, 3], RATIONALS)
    w = subspace_to_function(sp, ["+1"], Z, samples=600, seed=21)
    est = estimate_steiner(SubspaceMatroid(sp), 600, 21)
    assert w.function.values == {
        lbl: val for lbl, val in zip(est.labels, est.vector) if val
    }
    assert w.function.l1() == sp.dim


# ---------------------------------------------------------------------------
# absorbing a finite piece


def test_absorb_subset_changes_nothing():
    core = list(range(1, 101))
    res = absorb_finite(core, [5, 6], ["+1", "-1"], Z)
    direct = set_report(core, ["+1", "-1"], Z)
    assert res.report.per_generator == direct.per_generator
    assert res.report.union_ratio == direct.union_ratio


def test_absorb_distant_point():
    core = list(range(1, 101))
    res = absorb_finite(core, [1000], ["+1", "-1"], Z)
    assert res.bound == Fraction(2 + 3, 100)
    assert res.report.union_ratio <= res.bound
    assert 1000 in res.combined


def test_absorb_subspaces():
    core = family_generate("lamp-span", 6, GF2)
    extra = subspace_from_rows([[1]], [((), 0)], GF2)
    res = absorb_finite(core, extra, LAMP_GENS, L)
    assert res.report.size == 7
    assert res.report.union_ratio <= res.bound
    assert contains_subspace(extra, res.combined)
    # independent recomputation of the combined report
    direct = subspace_report(subspace_sum(core, extra), LAMP_GENS, L)
    assert direct.union_ratio == res.report.union_ratio


def test_absorb_type_mismatch():
    core = family_generate("lamp-span", 2, GF2)
    with pytest.raises(ShapeError):
        absorb_finite(core, [LAMP_IDENTITY], LAMP_GENS, L)


# ---------------------------------------------------------------------------
# the round trip between sets and subspaces


def test_round_trip_families():
    for v in (2, 6, 12):
        pts = family_generate("z-interval", v)
        assert (
            subspace_report(set_to_subspace(pts, GF2), ["+1", "-1"], Z).union_ratio
            <= set_report(pts, ["+1", "-1"], Z).union_ratio
        )
    for n in (1, 2, 3):
        box = family_generate("lamp-box", n)
        assert (
            subspace_report(set_to_subspace(box, GF2), LAMP_GENS, L).union_ratio
            <= set_report(box, LAMP_GENS, L).union_ratio
        )


def test_certificate_then_layer_cake_round_trip():
    # subspace -> function -> set: the recovered set's per-generator
    # symmetric-difference ratio obeys the function's own defect
    span = family_generate("lamp-span", 3, GF2)
    w = subspace_to_function(span, LAMP_GENS, L, samples=512, seed=29)
    lc = layer_cake(w.function, LAMP_GENS, L)
    ratios = function_report(w.function, LAMP_GENS, L)
    for g in LAMP_GENS:
        _, best = lc.per_generator_best[g]
        assert best <= ratios[g]
