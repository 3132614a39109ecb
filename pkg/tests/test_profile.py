import random
from fractions import Fraction

import pytest

from amenability import (
    GF2,
    CapacityError,
    ShapeError,
    ball,
    compare_module_vs_set,
    family_generate,
    finite_action,
    free_group,
    gf,
    integer_line,
    iso_family_upper,
    iso_set_exact,
    lamplighter,
    naive_iso_set,
    phi_from_table,
    set_report,
)

Z = integer_line()
L = lamplighter()
LAMP_GENS = ["+1", "-1", "b"]


@pytest.fixture(scope="module")
def span_table():
    return iso_family_upper("lamp-span", range(1, 13), LAMP_GENS, L, GF2)


@pytest.fixture(scope="module")
def box_table():
    return iso_family_upper("lamp-box", range(1, 13), LAMP_GENS, L)


# ---------------------------------------------------------------------------
# exact window search


def test_line_window_profile():
    window = ball(Z, 0, 6)  # 13 points
    table = iso_set_exact(Z, window, ["+1", "-1"], 10)
    assert table.rows[0].v == 1 and table.rows[0].ratio == 2
    assert table.rows[2].ratio == Fraction(2, 3)
    for row in table.rows:
        # intervals are optimal on the line: I(v) = 2/v
        assert row.ratio == Fraction(2, row.v)
        lo, hi = min(row.witness), max(row.witness)
        assert row.witness == tuple(range(lo, hi + 1))


def test_line_window_matches_naive_oracle():
    window = ball(Z, 0, 5)  # 11 points
    fast = iso_set_exact(Z, window, ["+1", "-1"], 8)
    slow = naive_iso_set(Z, window, ["+1", "-1"], 8)
    assert [(r.v, r.ratio, r.witness) for r in fast.rows] == [
        (r.v, r.ratio, r.witness) for r in slow.rows
    ]


def test_random_finite_actions_match_naive_oracle():
    rng = random.Random(19)
    for _ in range(8):
        n = rng.randrange(3, 9)
        perm = list(range(n))
        rng.shuffle(perm)
        action = finite_action("rand", list(range(n)), {"g": perm})
        window = list(range(n))
        v_max = min(n, 5)
        fast = iso_set_exact(action, window, ["g", "g^-1"], v_max)
        slow = naive_iso_set(action, window, ["g", "g^-1"], v_max)
        assert [(r.v, r.ratio, r.witness) for r in fast.rows] == [
            (r.v, r.ratio, r.witness) for r in slow.rows
        ]


def test_free_group_window_is_expanding():
    fg = free_group(2)
    window = ball(fg, (), 2)
    table = iso_set_exact(fg, window, list(fg.generators), 6)
    assert all(row.ratio >= 2 for row in table.rows)


def test_profile_is_nonincreasing_and_witnesses_reevaluate():
    window = ball(Z, 0, 4)
    table = iso_set_exact(Z, window, ["+1", "-1"], 6)
    ratios = table.ratios()
    assert all(a >= b for a, b in zip(ratios, ratios[1:]))
    for row in table.rows:
        rep = set_report(row.witness, ["+1", "-1"], Z)
        assert rep.union_ratio == row.ratio


def test_window_caps_are_hard():
    with pytest.raises(CapacityError):
        iso_set_exact(Z, range(30), ["+1"], 5)
    with pytest.raises(CapacityError):
        iso_set_exact(Z, range(10), ["+1"], 13)


# ---------------------------------------------------------------------------
# family tables


def test_lamp_box_family():
    table = iso_family_upper("lamp-box", range(1, 7), LAMP_GENS, L)
    assert table.mode == "family-upper-bound"
    for row, n in zip(table.rows, range(1, 7)):
        assert row.v == (1 << n) * n
        assert row.ratio == Fraction(2, n)


def test_lamp_span_family(span_table):
    for row, n in zip(span_table.rows, range(1, 13)):
        assert row.v == n
        assert row.ratio == Fraction(2, n)


def test_interval_family():
    table = iso_family_upper("z-interval", range(1, 21), ["+1", "-1"], Z)
    for row, v in zip(table.rows, range(1, 21)):
        assert row.v == v
        assert row.ratio == Fraction(2, v)


def test_family_parameters_must_increase():
    with pytest.raises(ShapeError):
        iso_family_upper("z-interval", [3, 3], ["+1"], Z)


def test_family_bounds_dominate_exact_values():
    window = ball(Z, 0, 6)
    exact = iso_set_exact(Z, window, ["+1", "-1"], 8)
    family = iso_family_upper("z-interval", range(1, 9), ["+1", "-1"], Z)
    by_v = {row.v: row.ratio for row in exact.rows}
    for row in family.rows:
        if row.v in by_v:
            assert row.ratio >= by_v[row.v]


# ---------------------------------------------------------------------------
# the generalized inverse


def test_phi_interval_family():
    table = iso_family_upper("z-interval", range(1, 21), ["+1", "-1"], Z)
    assert phi_from_table(table, 5) == 10


def test_phi_lamp_span_is_linear(span_table):
    for n in range(1, 7):
        assert phi_from_table(span_table, n) == 2 * n


def test_phi_lamp_box_is_exponential(box_table):
    assert phi_from_table(box_table, 5) == (1 << 10) * 10
    for n in range(1, 7):
        assert phi_from_table(box_table, n) == (1 << (2 * n)) * 2 * n


def test_phi_unbounded_marker():
    fg = free_group(2)
    window = ball(fg, (), 2)
    table = iso_set_exact(fg, window, list(fg.generators), 6)
    assert phi_from_table(table, 1) is None


def test_divergence_exhibit(span_table, box_table):
    # the headline table: the set side needs 2^(2n) * 2n points while the
    # module side needs dimension 2n
    for n in range(1, 7):
        phi_set = phi_from_table(box_table, n)
        phi_mod = phi_from_table(span_table, n)
        assert phi_mod <= 2 * n
        assert phi_set == (1 << (2 * n)) * (2 * n)
        assert phi_set > phi_mod


# ---------------------------------------------------------------------------
# module vs set comparison


def test_interval_comparison_is_equality():
    pts = family_generate("z-interval", 6)
    cmp = compare_module_vs_set(pts, ["+1", "-1"], Z, GF2)
    assert cmp.set_ratio == cmp.subspace_ratio == Fraction(2, 6)
    assert cmp.subspace_le_set


def test_lamp_box_comparison():
    box = family_generate("lamp-box", 3)
    cmp = compare_module_vs_set(box, LAMP_GENS, L, GF2)
    assert cmp.set_ratio == Fraction(2, 3)
    assert cmp.subspace_ratio <= cmp.set_ratio


def test_invariant_orbit_comparison():
    action = finite_action("cycle", list(range(6)), {"r": [(i + 1) % 6 for i in range(6)]})
    cmp = compare_module_vs_set(range(6), ["r"], action, gf(3))
    assert cmp.set_ratio == 0
    assert cmp.subspace_ratio == 0
