import json
import random

import pytest

from amenability import (
    GF2,
    CapacityError,
    DomainError,
    InvalidFieldError,
    LAMP_IDENTITY,
    LampElement,
    ShapeError,
    act,
    ball,
    base_point,
    family_generate,
    finite_action,
    free_group,
    gf,
    integer_lattice,
    integer_line,
    lamp_inverse,
    lamp_multiply,
    lamplighter,
    parse_group,
    permutation_action_from_json,
)

Z = integer_line()
L = lamplighter()
F2 = free_group(2)


# ---------------------------------------------------------------------------
# acting on points


def test_line_steps():
    assert act(Z, 5, "+1") == 6
    assert act(Z, 5, ("+1", "+1", "-1")) == 6


def test_lamp_toggle_at_origin():
    assert act(L, LAMP_IDENTITY, "b") == ((0,), 0)


def test_lamp_toggle_is_shifted_by_the_head():
    # right multiplication shifts the incoming lamp by the head position
    assert act(L, LampElement((0,), 3), "b") == ((0, 3), 3)


def test_unknown_generator_is_a_malformed_word():
    with pytest.raises(DomainError):
        act(Z, 0, "nope")


def test_points_are_validated():
    with pytest.raises(DomainError):
        act(Z, "zero", "+1")
    with pytest.raises(DomainError):
        act(L, ((3, 1), 0), "b")  # unsorted lamp support


def test_lattice_steps():
    Z2 = integer_lattice(2)
    assert act(Z2, (0, 0), "+e2") == (0, 1)
    assert act(Z2, (4, -1), ("-e1", "-e1")) == (2, -1)


def test_free_group_reduction():
    assert act(F2, (), "a") == (1,)
    assert act(F2, (1,), "A") == ()
    assert act(F2, (1,), "b") == (1, 2)


# ---------------------------------------------------------------------------
# generator/inverse round trips and the lamplighter group law


def random_point(action, rng):
    if action.name == "Z":
        return rng.randrange(-50, 50)
    if action.name.startswith("Z^"):
        d = int(action.name[2:])
        return tuple(rng.randrange(-9, 9) for _ in range(d))
    if action.name == "lamplighter":
        support = tuple(sorted(rng.sample(range(-6, 7), rng.randrange(0, 5))))
        return LampElement(support, rng.randrange(-6, 7))
    if action.name.startswith("free:"):
        word = ()
        for _ in range(rng.randrange(0, 6)):
            g = rng.choice(action.generators)
            word = action.apply(word, g)
        return word
    raise AssertionError(action.name)


@pytest.mark.parametrize("factory", [integer_line, lambda: integer_lattice(3), lamplighter, lambda: free_group(2)])
def test_generator_inverse_round_trip(factory):
    action = factory()
    rng = random.Random(101)
    for _ in range(1000):
        x = random_point(action, rng)
        g = rng.choice(action.generators)
        y = action.act(x, g)
        assert action.act(y, action.inverses[g]) == x


def test_lamplighter_associativity_against_the_group_law():
    rng = random.Random(55)
    gens = {"+1": LampElement((), 1), "-1": LampElement((), -1), "b": LampElement((0,), 0)}
    for _ in range(300):
        x = random_point(L, rng)
        g = rng.choice(L.generators)
        h = rng.choice(L.generators)
        stepped = L.act(L.act(x, g), h)
        gh = lamp_multiply(gens[g], gens[h])
        assert stepped == lamp_multiply(x, gh)


def test_lamp_inverse_is_a_group_inverse():
    rng = random.Random(56)
    for _ in range(100):
        x = random_point(L, rng)
        assert lamp_multiply(x, lamp_inverse(x)) == LAMP_IDENTITY
        assert lamp_multiply(lamp_inverse(x), x) == LAMP_IDENTITY


# ---------------------------------------------------------------------------
# balls


def test_line_ball_sizes():
    assert len(ball(Z, 0, 3)) == 7
    assert ball(Z, 2, 0) == (2,)


def test_free_ball_sizes():
    # 1 + 4 + 4*3 points within radius 2
    assert len(ball(F2, (), 2)) == 17


def test_ball_cap():
    with pytest.raises(CapacityError):
        ball(F2, (), 8, cap=100)


def test_negative_radius():
    with pytest.raises(ShapeError):
        ball(Z, 0, -1)


def test_lamp_box_is_closed_under_the_lamp_generator():
    for n in (1, 2, 3, 4):
        box = set(family_generate("lamp-box", n))
        assert {L.act(x, "b") for x in box} == box


# ---------------------------------------------------------------------------
# families


def test_lamp_box_counts():
    assert len(family_generate("lamp-box", 2)) == 8
    for n in (1, 3, 5):
        assert len(family_generate("lamp-box", n)) == (1 << n) * n


def test_lamp_span_dimension():
    for p in (2, 3):
        assert family_generate("lamp-span", 3, gf(p)).dim == 3


def test_z_families():
    assert family_generate("z-interval", 5) == (1, 2, 3, 4, 5)
    sp = family_generate("z-interval-span", 4, GF2)
    assert sp.dim == 4
    assert sp.labels == (1, 2, 3, 4)


def test_family_capacity_and_validation():
    with pytest.raises(CapacityError):
        family_generate("lamp-box", 30)
    with pytest.raises(DomainError):
        family_generate("no-such-family", 3)
    with pytest.raises(ShapeError):
        family_generate("lamp-box", 0)
    with pytest.raises(InvalidFieldError):
        family_generate("lamp-span", 3)  # needs a field


# ---------------------------------------------------------------------------
# finite permutation actions and group specs


def test_finite_action_from_json(tmp_path):
    doc = {
        "name": "triangle",
        "points": [0, 1, 2],
        "generators": {"r": [1, 2, 0]},
    }
    path = tmp_path / "perm.json"
    path.write_text(json.dumps(doc))
    action = permutation_action_from_json(str(path))
    assert act(action, 0, "r") == 1
    assert act(action, 0, "r^-1") == 2
    orbit = ball(action, 0, 5)
    assert orbit == (0, 1, 2)


def test_finite_action_validates_permutations():
    with pytest.raises(ShapeError):
        finite_action("bad", [0, 1], {"g": [0, 0]})


def test_parse_group_specs():
    assert parse_group("Z").name == "Z"
    assert parse_group("Z^3").name == "Z^3"
    assert parse_group("lamplighter").name == "lamplighter"
    assert parse_group("free:2").name == "free:2"
    with pytest.raises(DomainError):
        parse_group("so3")


def test_base_points():
    assert base_point(Z) == 0
    assert base_point(integer_lattice(2)) == (0, 0)
    assert base_point(L) == LAMP_IDENTITY
    assert base_point(F2) == ()
