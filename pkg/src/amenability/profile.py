"""Isoperimetric profiles: exhaustive minima at desk scale, family upper bounds.

I(v) is the best boundary ratio over witnesses of size (or dimension)
at most v; Phi(n) is the least v with I(v) <= 1/n.  Exact set profiles
enumerate all subsets of a finite window in Gray-code order with
incremental boundary bookkeeping, so each step costs O(#generators).
Module profiles are family upper bounds only: minimizing over all
subspaces is super-exponential even over GF(2), so the module side is
covered by explicit span families plus the general fact that the span
of a set witness is at least as good as the set itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Sequence

from .errors import (
    CapacityError,
    DegenerateInputError,
    InternalInvariantError,
    ShapeError,
)
from .folner import set_report, set_to_subspace, subspace_report
from .groups import GroupAction, family_generate
from .linalg import FieldSpec

WINDOW_CAP = 24
VMAX_CAP = 12

EXACT_WITHIN_WINDOW = "exact-within-window"
FAMILY_UPPER_BOUND = "family-upper-bound"


@dataclass(frozen=True)
class ProfileRow:
    v: int
    ratio: Fraction
    witness: Any


@dataclass(frozen=True)
class ProfileTable:
    rows: tuple
    mode: str
    window: str

    def ratios(self) -> list:
        return [row.ratio for row in self.rows]


def _require_nonincreasing(rows: Sequence[ProfileRow]) -> None:
    for a, b in zip(rows, rows[1:]):
        if b.ratio > a.ratio:
            raise InternalInvariantError("profile ratios must be nonincreasing in v")


def iso_set_exact(
    action: GroupAction, window: Iterable, S, v_max: int
) -> ProfileTable:
    """Exact I(v) over every non-empty subset of a finite window.

    Enumerates subsets in Gray-code order, updating the boundary size
    incrementally on each single-point flip.  Minima are exact within
    the window (the true profile minimizes over all of X); witnesses
    are the lexicographically least among the tied optima.
    """
    points = sorted(set(window))
    w = len(points)
    if w == 0:
        raise DegenerateInputError("the window must contain at least one point")
    if w > WINDOW_CAP:
        raise CapacityError(f"window has {w} points; the exhaustive cap is {WINDOW_CAP}")
    if not (1 <= v_max <= VMAX_CAP):
        raise CapacityError(f"v_max must be between 1 and {VMAX_CAP}")

    acting = [word for _, word in _acting_words(S)]
    targets = [
        tuple(action.act_word(x, word) for word in acting) for x in points
    ]

    # Gray-code walk over all subsets of the window.
    in_set = [False] * w
    members = set()
    arrow_count = {}  # point -> number of (x, s) arrows landing on it, x in F
    boundary = 0  # #(FS \ F)

    def add(i: int) -> None:
        nonlocal boundary
        x = points[i]
        for y in targets[i]:
            c = arrow_count.get(y, 0) + 1
            arrow_count[y] = c
            if c == 1 and y not in members:
                boundary += 1
        members.add(x)
        in_set[i] = True
        if arrow_count.get(x, 0) > 0:
            boundary -= 1

    def remove(i: int) -> None:
        nonlocal boundary
        x = points[i]
        members.discard(x)
        in_set[i] = False
        if arrow_count.get(x, 0) > 0:
            boundary += 1
        for y in targets[i]:
            c = arrow_count[y] - 1
            arrow_count[y] = c
            if c == 0 and y not in members:
                boundary -= 1

    # best_by_size[k] = (boundary, size, witness tuple) minimizing boundary/size
    best_by_size = [None] * (v_max + 1)

    def consider() -> None:
        k = len(members)
        if not (1 <= k <= v_max):
            return
        cur = best_by_size[k]
        if cur is None or boundary * cur[1] < cur[0] * k:
            best_by_size[k] = (boundary, k, tuple(sorted(members)))
        elif boundary * cur[1] == cur[0] * k:
            witness = tuple(sorted(members))
            if witness < cur[2]:
                best_by_size[k] = (boundary, k, witness)

    total = 1 << w
    for g in range(1, total):
        flip = (g & -g).bit_length() - 1
        if in_set[flip]:
            remove(flip)
        else:
            add(flip)
        consider()

    rows = []
    best = None
    for v in range(1, v_max + 1):
        cand = best_by_size[v]
        if cand is not None:
            ratio = Fraction(cand[0], cand[1])
            if best is None or ratio < best[0] or (ratio == best[0] and cand[2] < best[1]):
                best = (ratio, cand[2])
        if best is None:
            continue
        rows.append(ProfileRow(v=v, ratio=best[0], witness=best[1]))
    table = ProfileTable(
        rows=tuple(rows),
        mode=EXACT_WITHIN_WINDOW,
        window=f"{w} points of {action.name}",
    )
    _require_nonincreasing(table.rows)
    return table


def _acting_words(S) -> list:
    from .folner import _normalize_acting

    return _normalize_acting(S)


def iso_family_upper(
    kind: str,
    n_values: Iterable[int],
    S,
    action: GroupAction,
    field: FieldSpec = None,
) -> ProfileTable:
    """Upper bounds on I from an explicit witness family.

    Each family member is evaluated exactly (set counting or dimension
    counting); rows are (size or dimension, ratio, family parameter).
    """
    ns = list(n_values)
    if not ns or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ShapeError("family parameters must be strictly increasing")
    rows = []
    for n in ns:
        obj = family_generate(kind, n, field)
        if kind.endswith("span"):
            report = subspace_report(obj, S, action)
        else:
            report = set_report(obj, S, action)
        rows.append(
            ProfileRow(v=report.size, ratio=report.union_ratio, witness=(kind, n))
        )
    table = ProfileTable(
        rows=tuple(rows),
        mode=FAMILY_UPPER_BOUND,
        window=f"{kind} family under {action.name}",
    )
    _require_nonincreasing(table.rows)
    return table


def phi_from_table(table: ProfileTable, n: int):
    """Least tabulated v with I(v) <= 1/n; None when the table never gets there.

    For exact tables this certifies only the window searched; for family
    tables it is an upper bound on the true Phi.
    """
    if not table.rows:
        raise ShapeError("cannot invert an empty profile table")
    if n < 1:
        raise ShapeError("the profile argument must be at least 1")
    target = Fraction(1, n)
    for row in sorted(table.rows, key=lambda r: r.v):
        if row.ratio <= target:
            return row.v
    return None


@dataclass(frozen=True)
class ModuleVsSet:
    set_ratio: Fraction
    subspace_ratio: Fraction
    subspace_le_set: bool


def compare_module_vs_set(
    F: Iterable, S, action: GroupAction, field: FieldSpec
) -> ModuleVsSet:
    """The span of a set witness does at least as well as the set itself."""
    points = sorted(set(F))
    sr = set_report(points, S, action)
    sp = subspace_report(set_to_subspace(points, field), S, action)
    ok = sp.union_ratio <= sr.union_ratio
    if not ok:
        raise InternalInvariantError(
            "a coordinate span beat its set witness in the wrong direction"
        )
    return ModuleVsSet(
        set_ratio=sr.union_ratio, subspace_ratio=sp.union_ratio, subspace_le_set=ok
    )


def naive_iso_set(action: GroupAction, window: Iterable, S, v_max: int) -> ProfileTable:
    """Independent brute-force profile: plain subset loop, no incremental state.

    Exists as an oracle for testing the Gray-code search; capped harder.
    """
    points = sorted(set(window))
    if len(points) > 16:
        raise CapacityError("the naive oracle is capped at 16 window points")
    acting = [word for _, word in _acting_words(S)]
    best_by_size = {}
    for k in range(1, min(v_max, len(points)) + 1):
        for combo in combinations(points, k):
            F = set(combo)
            FS = set()
            for word in acting:
                FS |= {action.act_word(x, word) for x in F}
            ratio = Fraction(len(F | FS) - k, k)
            cur = best_by_size.get(k)
            if cur is None or ratio < cur[0] or (ratio == cur[0] and combo < cur[1]):
                best_by_size[k] = (ratio, combo)
    rows = []
    best = None
    for v in range(1, v_max + 1):
        cand = best_by_size.get(v)
        if cand is not None:
            if best is None or cand[0] < best[0] or (cand[0] == best[0] and cand[1] < best[1]):
                best = cand
        if best is None:
            continue
        rows.append(ProfileRow(v=v, ratio=best[0], witness=best[1]))
    return ProfileTable(
        rows=tuple(rows),
        mode=EXACT_WITHIN_WINDOW,
        window=f"{len(points)} points of {action.name} (naive)",
    )
