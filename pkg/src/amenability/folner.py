"""Boundary-ratio evaluators for sets, functions, and subspaces.

The three faces of almost invariance live here: finite sets with their
translate boundary, finitely supported nonnegative functions with their
translation defect, and finite-dimensional subspaces with the dimension
they gain under the module action.  The two bridge constructions are
also here: a finite set spans a subspace with a no-worse boundary
ratio, and a subspace yields a function (its empirical Steiner point)
whose translation defect is certified by exact dimension counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping

import numpy as np

from .errors import (
    DegenerateInputError,
    InternalInvariantError,
    ShapeError,
)
from .groups import GroupAction
from .linalg import (
    FieldSpec,
    FormalCombination,
    LabeledSubspace,
    act_subspace,
    contains_subspace,
    quotient_dim,
    subspace_from_rows,
    subspace_sum,
)
from .matroid import SubspaceMatroid
from .steiner import SteinerEstimate, estimate_steiner


@dataclass(frozen=True)
class FolnerReport:
    """Exact boundary ratios of one finite set or subspace.

    ``per_generator`` maps each acting element to its ratio; the union
    ratio uses all elements at once and dominates each of them.  The
    epsilon achieved by the witness is the union ratio.
    """

    subject: str
    size: int
    per_generator: Mapping[Any, Fraction]
    union_ratio: Fraction
    union_size: int

    @property
    def epsilon(self) -> Fraction:
        return self.union_ratio


def _normalize_acting(S) -> list:
    """Acting elements as (key, word) pairs; combinations contribute their support."""
    out = []
    seen = set()
    items = S if isinstance(S, (list, tuple)) else [S]
    for s in items:
        if isinstance(s, FormalCombination):
            words = s.support
        elif isinstance(s, str):
            words = [(s,)]
        else:
            words = [tuple(s)]
        for w in words:
            key = w[0] if len(w) == 1 else w
            if key not in seen:
                seen.add(key)
                out.append((key, w))
    if not out:
        raise ShapeError("need at least one acting element")
    return out


def set_report(F: Iterable, S, action: GroupAction) -> FolnerReport:
    """Counting report for a finite set: (#(F u Fs) - #F) / #F per element."""
    points = set(F)
    if not points:
        raise DegenerateInputError("the empty set has no boundary ratio")
    acting = _normalize_acting(S)
    size = len(points)
    per = {}
    union = set(points)
    for key, word in acting:
        translated = {action.act_word(x, word) for x in points}
        per[key] = Fraction(len(points | translated) - size, size)
        union |= translated
    return FolnerReport(
        subject=f"set of {size} points under {action.name}",
        size=size,
        per_generator=per,
        union_ratio=Fraction(len(union) - size, size),
        union_size=len(union),
    )


@dataclass(frozen=True)
class WeightedFunction:
    """A finitely supported function to the nonnegative rationals."""

    values: Mapping[Any, Fraction]

    def __init__(self, values: Mapping[Any, Fraction]):
        cleaned = {}
        for x, v in values.items():
            v = Fraction(v)
            if v < 0:
                raise ShapeError(f"negative value {v} at {x!r}")
            if v:
                cleaned[x] = v
        if not cleaned:
            raise DegenerateInputError("the zero function has no translation ratio")
        object.__setattr__(self, "values", cleaned)

    def l1(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def support(self) -> tuple:
        return tuple(sorted(self.values))

    def translate(self, action: GroupAction, word) -> "WeightedFunction":
        return WeightedFunction(
            {action.act_word(x, word): v for x, v in self.values.items()}
        )

    @staticmethod
    def indicator(points: Iterable) -> "WeightedFunction":
        return WeightedFunction({x: Fraction(1) for x in points})

    @staticmethod
    def from_estimate(est: SteinerEstimate) -> "WeightedFunction":
        return WeightedFunction(
            {x: v for x, v in zip(est.labels, est.vector) if v}
        )


def _l1_difference(f: WeightedFunction, g: WeightedFunction) -> Fraction:
    keys = set(f.values) | set(g.values)
    zero = Fraction(0)
    return sum((abs(f.values.get(x, zero) - g.values.get(x, zero)) for x in keys), zero)


def function_report(f: WeightedFunction, S, action: GroupAction) -> dict:
    """Translation defect ||f - fs||_1 / ||f||_1 for each acting element."""
    norm = f.l1()
    out = {}
    for key, word in _normalize_acting(S):
        out[key] = _l1_difference(f, f.translate(action, word)) / norm
    return out


@dataclass(frozen=True)
class LayerCakeResult:
    """The level set of f minimizing the union boundary ratio.

    ``per_generator_best`` records, for each acting element separately,
    the threshold whose level set minimizes the symmetric-difference
    ratio; that minimum never exceeds the function's own translation
    defect for the same element.
    """

    threshold: Fraction
    level_set: tuple
    report: FolnerReport
    per_generator_best: Mapping[Any, tuple]  # key -> (threshold, ratio)


def layer_cake(f: WeightedFunction, S, action: GroupAction) -> LayerCakeResult:
    """Recover an almost invariant set from an almost invariant function.

    Scans the attained values t of f; the level sets {f >= t} slice f so
    that both its mass and its translation defect are the value-weighted
    sums over slices, hence the best slice is at least as good as f.
    """
    acting = _normalize_acting(S)
    thresholds = sorted(set(f.values.values()))
    best = None
    per_best = {key: None for key, _ in acting}
    for t in thresholds:
        level = {x for x, v in f.values.items() if v >= t}
        report = set_report(level, S, action)
        if best is None or report.union_ratio < best[2].union_ratio:
            best = (t, level, report)
        for key, word in acting:
            moved = {action.act_word(x, word) for x in level}
            ratio = Fraction(len(level ^ moved), len(level))
            if per_best[key] is None or ratio < per_best[key][1]:
                per_best[key] = (t, ratio)
    t, level, report = best
    return LayerCakeResult(
        threshold=t,
        level_set=tuple(sorted(level)),
        report=report,
        per_generator_best=per_best,
    )


def set_to_subspace(F: Iterable, field: FieldSpec) -> LabeledSubspace:
    """The coordinate span of a finite point set; dimension = #F.

    Translates permute the indicator basis, so for any acting elements
    the dimension of the translated sum never exceeds the size of the
    translated union, and the subspace ratio is at most the set ratio.
    """
    points = sorted(set(F))
    if not points:
        raise DegenerateInputError("cannot span the empty set")
    m = len(points)
    if field.is_rational:
        rows = [[1 if j == i else 0 for j in range(m)] for i in range(m)]
    else:
        rows = np.eye(m, dtype=np.int64)
    return subspace_from_rows(rows, points, field)


def subspace_report(F: LabeledSubspace, S, action: GroupAction) -> FolnerReport:
    """Dimension report for a subspace: dim((F + Fs)/F) / dim F per element."""
    if F.dim < 1:
        raise DegenerateInputError("the zero subspace has no boundary ratio")
    acting = _normalize_acting(S)
    per = {}
    union = F
    for key, word in acting:
        Fs = act_subspace(F, action, word)
        per[key] = Fraction(quotient_dim(F, Fs), F.dim)
        union = subspace_sum(union, Fs)
    return FolnerReport(
        subject=f"subspace of dimension {F.dim} under {action.name}",
        size=F.dim,
        per_generator=per,
        union_ratio=Fraction(union.dim - F.dim, F.dim),
        union_size=union.dim,
    )


@dataclass(frozen=True)
class FunctionWitness:
    """An almost invariant function distilled from a subspace.

    ``certificates`` are the exact per-element bounds
    (dim((F+Fs)/F) + dim((F+Fs)/Fs)) / dim F on the translation defect
    of the true Steiner point; ``sampled_ratios`` are the defects of the
    empirical one.  The sampled value may exceed its certificate only by
    sampling noise, capped by ``tolerance``.
    """

    function: WeightedFunction
    estimate: SteinerEstimate
    certificates: Mapping[Any, Fraction]
    sampled_ratios: Mapping[Any, Fraction]
    tolerance: float


def subspace_to_function(
    F: LabeledSubspace, S, action: GroupAction, samples: int, seed: int
) -> FunctionWitness:
    """Turn an almost invariant subspace into an almost invariant function.

    The function is the empirical Steiner point of F's base polytope.
    Certificates use only exact dimension counts (no sampling): the L1
    distance between the Steiner points of nested subspaces is exactly
    the dimension gap, and F, Fs both sit inside F + Fs.
    """
    if F.dim < 1:
        raise DegenerateInputError("the zero subspace has no Steiner point")
    est = estimate_steiner(SubspaceMatroid(F), samples, seed)
    f = WeightedFunction.from_estimate(est)
    acting = _normalize_acting(S)
    certificates = {}
    sampled = {}
    norm = f.l1()
    for key, word in acting:
        Fs = act_subspace(F, action, word)
        merged = subspace_sum(F, Fs)
        certificates[key] = Fraction(
            (merged.dim - F.dim) + (merged.dim - Fs.dim), F.dim
        )
        sampled[key] = _l1_difference(f, f.translate(action, word)) / norm
    tolerance = 8 * est.stderr_bound * len(F.labels) / F.dim
    for key in certificates:
        if float(sampled[key]) > float(certificates[key]) + tolerance:
            raise InternalInvariantError(
                f"sampled defect {sampled[key]} exceeds certificate "
                f"{certificates[key]} beyond the noise allowance"
            )
    return FunctionWitness(
        function=f,
        estimate=est,
        certificates=certificates,
        sampled_ratios=sampled,
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class AbsorbResult:
    """Report for a good core forced to absorb a finite piece."""

    report: FolnerReport
    bound: Fraction
    combined: Any  # the combined set (tuple) or subspace


def absorb_finite(F_core, U, S, action: GroupAction) -> AbsorbResult:
    """Combine a low-boundary core with a mandatory finite piece.

    The result contains U, and its union ratio is bounded by
    (boundary of the core + size of U with its translates) / size of
    the core; the bound is computed exactly and verified.
    """
    core_is_space = isinstance(F_core, LabeledSubspace)
    u_is_space = isinstance(U, LabeledSubspace)
    if core_is_space != u_is_space:
        raise ShapeError("core and absorbed piece must both be sets or both subspaces")

    if core_is_space:
        if F_core.field != U.field:
            raise ShapeError("core and absorbed piece live over different fields")
        combined = subspace_sum(F_core, U)
        report = subspace_report(combined, S, action)
        core_report = subspace_report(F_core, S, action)
        u_union = U
        for _, word in _normalize_acting(S):
            u_union = subspace_sum(u_union, act_subspace(U, action, word))
        bound = Fraction(
            (core_report.union_size - F_core.dim) + u_union.dim, F_core.dim
        )
        if not contains_subspace(U, combined):
            raise InternalInvariantError("the combined subspace lost the absorbed piece")
    else:
        core = set(F_core)
        extra = set(U)
        if not core:
            raise DegenerateInputError("the core must be non-empty")
        combined_set = core | extra
        report = set_report(combined_set, S, action)
        core_report = set_report(core, S, action)
        u_with_translates = set(extra)
        for _, word in _normalize_acting(S):
            u_with_translates |= {action.act_word(x, word) for x in extra}
        bound = Fraction(
            (core_report.union_size - len(core)) + len(u_with_translates), len(core)
        )
        combined = tuple(sorted(combined_set))
    if report.union_ratio > bound:
        raise InternalInvariantError("the absorb bound failed; this should be impossible")
    return AbsorbResult(report=report, bound=bound, combined=combined)
