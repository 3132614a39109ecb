"""Concrete G-sets: canonical point encodings and named generator actions.

Built-ins: the integer line and lattices Z^d, the lamplighter group
(Z/2 wr Z) acting on itself, free groups acting on themselves by
reduced words, and finite permutation actions loaded from JSON.  All
actions are right actions, and every point encoding is hashable and
totally ordered so it can serve as a coordinate label.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import CapacityError, DomainError, InvalidFieldError, ShapeError
from .linalg import FieldSpec, subspace_from_rows

Point = Any


class LampElement(NamedTuple):
    """A lamplighter element: finitely many lit lamps plus a head position.

    ``lamps`` is the sorted tuple of lit positions (mod-2 configuration),
    ``pos`` the position of the lamplighter on the line.
    """

    lamps: tuple
    pos: int


LAMP_IDENTITY = LampElement((), 0)


def lamp_multiply(a, b) -> LampElement:
    """(f, t)(g, u) = (f + g shifted by t, t + u), lamps over Z/2."""
    (fa, ta), (fb, tb) = (tuple(a[0]), a[1]), (tuple(b[0]), b[1])
    lit = set(fa)
    for x in fb:
        lit ^= {x + ta}
    return LampElement(tuple(sorted(lit)), ta + tb)


def lamp_inverse(a) -> LampElement:
    lamps, t = tuple(a[0]), a[1]
    return LampElement(tuple(sorted(x - t for x in lamps)), -t)


@dataclass(frozen=True)
class GroupAction:
    """A finitely generated group acting on the right on a point set."""

    name: str
    generators: tuple
    inverses: Mapping[str, str]
    apply: Callable[[Point, str], Point] = field(repr=False)
    validate: Callable[[Point], bool] = field(repr=False, default=None)

    def check_point(self, point: Point) -> Point:
        if self.validate is not None and not self.validate(point):
            raise DomainError(f"{point!r} is not a point of the {self.name} action")
        return point

    def act(self, point: Point, generator: str) -> Point:
        if generator not in self.inverses:
            raise DomainError(f"unknown generator {generator!r} in a word")
        self.check_point(point)
        return self.apply(point, generator)

    def act_word(self, point: Point, word) -> Point:
        if isinstance(word, str):
            word = (word,)
        for g in word:
            point = self.act(point, g)
        return point

    def inverse_word(self, word) -> tuple:
        if isinstance(word, str):
            word = (word,)
        return tuple(self.inverses[g] for g in reversed(word))


def act(action: GroupAction, point: Point, g) -> Point:
    """Apply a generator or a word of generators to a point."""
    return action.act_word(point, g)


# ---------------------------------------------------------------------------
# built-in actions


def integer_line() -> GroupAction:
    """Z acting on itself by translation; generators +1 and -1."""

    def apply(x, g):
        return x + 1 if g == "+1" else x - 1

    return GroupAction(
        name="Z",
        generators=("+1", "-1"),
        inverses={"+1": "-1", "-1": "+1"},
        apply=apply,
        validate=lambda x: isinstance(x, int),
    )


def integer_lattice(d: int) -> GroupAction:
    """Z^d acting on itself; generators +e1..-ed, points are d-tuples."""
    if d < 1:
        raise ShapeError("lattice dimension must be positive")
    if d == 1:
        return integer_line()
    gens = []
    inverses = {}
    for k in range(1, d + 1):
        gens += [f"+e{k}", f"-e{k}"]
        inverses[f"+e{k}"] = f"-e{k}"
        inverses[f"-e{k}"] = f"+e{k}"

    def apply(x, g):
        k = int(g[2:]) - 1
        step = 1 if g[0] == "+" else -1
        return x[:k] + (x[k] + step,) + x[k + 1 :]

    def valid(x):
        return isinstance(x, tuple) and len(x) == d and all(isinstance(v, int) for v in x)

    return GroupAction(
        name=f"Z^{d}", generators=tuple(gens), inverses=inverses, apply=apply, validate=valid
    )


def _lamp_valid(x) -> bool:
    try:
        lamps, pos = x
    except (TypeError, ValueError):
        return False
    return (
        isinstance(pos, int)
        and isinstance(lamps, tuple)
        and all(isinstance(v, int) for v in lamps)
        and list(lamps) == sorted(set(lamps))
    )


def lamplighter() -> GroupAction:
    """The lamplighter group (Z/2 wr Z) acting on itself.

    Generators: the head moves +1/-1, and b toggles the lamp under the
    head.  Right multiplication by b toggles position pos, because the
    incoming lamp at 0 is shifted by the head position first.
    """

    def apply(x, g):
        lamps, pos = tuple(x[0]), x[1]
        if g == "b":
            lit = list(lamps)
            i = bisect_left(lit, pos)
            if i < len(lit) and lit[i] == pos:
                del lit[i]
            else:
                lit.insert(i, pos)
            return LampElement(tuple(lit), pos)
        return LampElement(lamps, pos + (1 if g == "+1" else -1))

    return GroupAction(
        name="lamplighter",
        generators=("+1", "-1", "b"),
        inverses={"+1": "-1", "-1": "+1", "b": "b"},
        apply=apply,
        validate=_lamp_valid,
    )


def free_group(rank: int) -> GroupAction:
    """The free group on ``rank`` letters acting on itself.

    Points are reduced words encoded as tuples of nonzero ints: letter
    k is +k, its inverse -k.  Generators are named a, b, c, ... with
    capitals for inverses.
    """
    if not (1 <= rank <= 26):
        raise ShapeError("free-group rank must be between 1 and 26")
    letters = "abcdefghijklmnopqrstuvwxyz"[:rank]
    gens = tuple(letters) + tuple(letters.upper())
    inverses = {}
    code = {}
    for i, ch in enumerate(letters, start=1):
        inverses[ch] = ch.upper()
        inverses[ch.upper()] = ch
        code[ch] = i
        code[ch.upper()] = -i

    def apply(x, g):
        v = code[g]
        if x and x[-1] == -v:
            return x[:-1]
        return x + (v,)

    def valid(x):
        if not isinstance(x, tuple):
            return False
        for a, b in zip(x, x[1:]):
            if a == -b:
                return False
        return all(isinstance(v, int) and 0 < abs(v) <= rank for v in x)

    return GroupAction(
        name=f"free:{rank}", generators=gens, inverses=inverses, apply=apply, validate=valid
    )


def finite_action(name: str, points: Sequence, perms: Mapping[str, Sequence]) -> GroupAction:
    """A finite right action given by one permutation (list of images) per generator."""
    points = [tuple(p) if isinstance(p, list) else p for p in points]
    if len(set(points)) != len(points):
        raise ShapeError("points must be distinct")
    universe = set(points)
    tables = {}
    inverses = {}
    for g, images in perms.items():
        images = [tuple(p) if isinstance(p, list) else p for p in images]
        if len(images) != len(points) or set(images) != universe:
            raise ShapeError(f"generator {g!r} is not a permutation of the points")
        tables[g] = {p: q for p, q in zip(points, images)}
        tables[g + "^-1"] = {q: p for p, q in zip(points, images)}
        inverses[g] = g + "^-1"
        inverses[g + "^-1"] = g

    def apply(x, g):
        return tables[g][x]

    return GroupAction(
        name=name,
        generators=tuple(sorted(tables)),
        inverses=inverses,
        apply=apply,
        validate=lambda x: x in universe,
    )


def permutation_action_from_json(source) -> GroupAction:
    """Load a finite action from {"name":..., "points": [...], "generators": {...}}."""
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            source = json.load(fh)
    try:
        return finite_action(
            source.get("name", "finite"), source["points"], source["generators"]
        )
    except KeyError as exc:
        raise ShapeError(f"permutation action document is missing {exc}") from exc


def parse_group(spec: str) -> GroupAction:
    """Group spec strings for the CLI: Z, Z^d, lamplighter, free:k, perm:file."""
    if spec == "Z":
        return integer_line()
    if spec.startswith("Z^"):
        return integer_lattice(int(spec[2:]))
    if spec == "lamplighter":
        return lamplighter()
    if spec.startswith("free:"):
        return free_group(int(spec.split(":", 1)[1]))
    if spec.startswith("perm:"):
        return permutation_action_from_json(spec.split(":", 1)[1])
    raise DomainError(f"unknown group spec {spec!r}")


def base_point(action: GroupAction) -> Point:
    """The identity-like origin for each built-in action."""
    if action.name == "Z":
        return 0
    if action.name.startswith("Z^"):
        return (0,) * int(action.name[2:])
    if action.name == "lamplighter":
        return LAMP_IDENTITY
    if action.name.startswith("free:"):
        return ()
    raise DomainError(f"no default base point for the {action.name} action")


def ball(action: GroupAction, base: Point, radius: int, cap: int = 100_000) -> tuple:
    """All points within word distance ``radius`` of ``base``, sorted."""
    if radius < 0:
        raise ShapeError("radius must be nonnegative")
    action.check_point(base)
    seen = {base}
    frontier = deque([base])
    for _ in range(radius):
        next_frontier = deque()
        for x in frontier:
            for g in action.generators:
                y = action.apply(x, g)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise CapacityError(
                            f"ball exceeds the cap of {cap} points; pass a larger cap"
                        )
                    next_frontier.append(y)
        frontier = next_frontier
    return tuple(sorted(seen))


# ---------------------------------------------------------------------------
# the window and span families used by the profile computations

FAMILY_KINDS = ("lamp-box", "lamp-span", "z-interval", "z-interval-span")

_LAMP_POINT_CAP = 1_048_576  # 2^n * n points


def _lamp_box_points(n: int) -> list:
    pts = []
    window = list(range(1, n + 1))
    for mask in range(1 << n):
        lamps = tuple(window[i] for i in range(n) if mask >> i & 1)
        for t in window:
            pts.append(LampElement(lamps, t))
    pts.sort()
    return pts


def family_generate(kind: str, n: int, field: FieldSpec = None):
    """The box/interval set families and their module (span) analogues.

    lamp-box(n): all (lamps, t) with lamps inside {1..n} and 1 <= t <= n,
    exactly 2^n * n points.  lamp-span(n): the span of the n vectors
    "sum over every lamp pattern at head position t", dimension n.
    z-interval(n): {1..n} in Z; z-interval-span(n): its coordinate span.
    """
    if n < 1:
        raise ShapeError("family parameter must be at least 1")
    if kind not in FAMILY_KINDS:
        raise DomainError(f"unknown family kind {kind!r}")
    if kind.endswith("span") and field is None:
        raise InvalidFieldError(f"{kind} needs a coefficient field")

    if kind == "z-interval":
        return tuple(range(1, n + 1))
    if kind == "z-interval-span":
        labels = list(range(1, n + 1))
        rows = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
        return subspace_from_rows(rows, labels, field)

    if (1 << n) * n > _LAMP_POINT_CAP:
        raise CapacityError(f"lamp families are capped at {_LAMP_POINT_CAP} points")
    points = _lamp_box_points(n)
    if kind == "lamp-box":
        return tuple(points)

    positions = np.fromiter((p.pos for p in points), dtype=np.int64, count=len(points))
    rows = np.zeros((n, len(points)), dtype=np.int64)
    for t in range(1, n + 1):
        rows[t - 1, positions == t] = 1
    if field.is_rational:
        rows = rows.tolist()
    return subspace_from_rows(rows, points, field)
