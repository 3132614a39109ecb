"""Steiner points and exterior angles of matroid base polytopes.

The base polytope of a subspace matroid is the convex hull of the 0/1
indicator vectors of its bases.  The Steiner point is the average of
the vertices weighted by their exterior angles, equivalently the
expected minimizer of a uniformly random linear functional, so it is
estimated by drawing unit directions and taking the greedy minimum
basis for each.  Hit counts accumulate as integers and the estimate is
assembled in exact rationals with denominator N, which turns the key
monotonicity facts for nested subspaces into per-sample identities:
with shared directions the two greedy bases are nested, the estimates
compare coordinatewise, and their L1 gap is exactly the dimension gap.

Direction sampling is counter-based (Philox keyed by (seed, chunk)), so
sample i depends only on (seed, i) and never on scheduling or worker
count.  ``AMEN_THREADS`` sets the worker count; results are identical
for any value.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import (
    ContainmentError,
    DegenerateInputError,
    InternalInvariantError,
    ShapeError,
)
from .linalg import align_pair, contains_subspace
from .matroid import SubspaceMatroid, is_basis

CHUNK = 512  # samples per Philox stream; fixed, part of the algorithm

_SEED_LIMIT = 2**64


def _worker_count() -> int:
    raw = os.environ.get("AMEN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class DirectionSampler:
    """Deterministic uniform directions on the unit sphere in R^n.

    Sample i is a pure function of (seed, i): chunk c = i // CHUNK is an
    independent Philox stream keyed by (seed, c), and each row is an
    n-vector of standard normals scaled to unit length.
    """

    seed: int
    dimension: int

    def __post_init__(self) -> None:
        if not (0 <= self.seed < _SEED_LIMIT):
            raise ShapeError("seed must fit in 64 bits")
        if self.dimension < 1:
            raise ShapeError("dimension must be at least 1")

    def chunk(self, c: int) -> np.ndarray:
        key = np.array([self.seed, c], dtype=np.uint64)
        gen = np.random.Generator(np.random.Philox(key=key))
        raw = gen.standard_normal((CHUNK, self.dimension))
        norms = np.linalg.norm(raw, axis=1, keepdims=True)
        return raw / norms

    def directions(self, start: int, stop: int) -> np.ndarray:
        """Rows start..stop-1 of the sample stream."""
        if start < 0 or stop < start:
            raise ShapeError("bad sample range")
        parts = []
        c = start // CHUNK
        while c * CHUNK < stop:
            block = self.chunk(c)
            lo = max(start - c * CHUNK, 0)
            hi = min(stop - c * CHUNK, CHUNK)
            parts.append(block[lo:hi])
            c += 1
        if not parts:
            return np.empty((0, self.dimension))
        return np.concatenate(parts, axis=0)

    def sample(self, i: int) -> np.ndarray:
        return self.directions(i, i + 1)[0]


@dataclass(frozen=True)
class SteinerEstimate:
    """Empirical Steiner point with exact-rational coordinates.

    Every sample contributes a 0/1 indicator with exactly rank ones, so
    the L1 norm of the vector equals the rank exactly and all entries
    lie in [0, 1]; the per-vertex hit counts sum to the sample count.
    """

    labels: tuple
    vector: tuple
    samples: int
    seed: int
    per_vertex_hits: Mapping[tuple, int] = field(default=None)
    stderr_bound: float = 0.0

    def l1(self) -> Fraction:
        return sum(self.vector, Fraction(0))

    def coordinate(self, label) -> Fraction:
        return self.vector[self.labels.index(label)]

    def as_mapping(self) -> dict:
        return dict(zip(self.labels, self.vector))


def _greedy_hits(M: SubspaceMatroid, N: int, seed: int) -> Counter:
    """Hit counts of the greedy minimum basis over N shared directions."""
    sampler = DirectionSampler(seed=seed, dimension=len(M.labels))
    kernel = M._kernel
    labels = M.labels

    def run_chunk(c: int) -> Counter:
        lo, hi = c * CHUNK, min((c + 1) * CHUNK, N)
        block = sampler.chunk(c)
        counts = Counter()
        for i in range(hi - lo):
            order = np.argsort(block[i], kind="stable").tolist()
            kept = kernel.greedy(order)
            counts[tuple(labels[j] for j in kept)] += 1
        return counts

    chunks = range((N + CHUNK - 1) // CHUNK)
    workers = _worker_count()
    total = Counter()
    if workers == 1:
        for c in chunks:
            total.update(run_chunk(c))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for counts in pool.map(run_chunk, chunks):
                total.update(counts)
    return total


def _vector_from_hits(labels, hits: Counter, N: int) -> tuple:
    acc = {lbl: 0 for lbl in labels}
    for basis, count in hits.items():
        for lbl in basis:
            acc[lbl] += count
    return tuple(Fraction(acc[lbl], N) for lbl in labels)


def _check_sampling_args(M: SubspaceMatroid, N: int) -> None:
    if N < 1:
        raise ShapeError("sample count must be at least 1")
    if M.rank < 1:
        raise DegenerateInputError("the zero subspace has no Steiner point")


def estimate_steiner(M: SubspaceMatroid, samples: int, seed: int) -> SteinerEstimate:
    """Monte-Carlo Steiner point of the base polytope of M.

    Unbiased: the expected value of each coordinate is the exterior-angle
    weighted average of the vertices.  Deterministic given (seed, samples).
    """
    _check_sampling_args(M, samples)
    hits = _greedy_hits(M, samples, seed)
    vector = _vector_from_hits(M.labels, hits, samples)
    return SteinerEstimate(
        labels=M.labels,
        vector=vector,
        samples=samples,
        seed=seed,
        per_vertex_hits=dict(sorted(hits.items())),
        stderr_bound=math.sqrt(0.25 / samples),
    )


def exterior_angles(M: SubspaceMatroid, samples: int, seed: int) -> dict:
    """Estimated exterior angle of each vertex: its fraction of directions.

    The fractions carry denominator ``samples`` and add up to 1 exactly;
    every key is verified to be a basis.
    """
    _check_sampling_args(M, samples)
    hits = _greedy_hits(M, samples, seed)
    for basis in hits:
        if not is_basis(M, basis):
            raise InternalInvariantError(f"greedy returned a non-basis {basis!r}")
    return {b: Fraction(c, samples) for b, c in sorted(hits.items())}


@dataclass(frozen=True)
class CoupledEstimate:
    low: SteinerEstimate
    high: SteinerEstimate
    l1_gap: int


def coupled_nested_estimate(
    E: SubspaceMatroid, F: SubspaceMatroid, samples: int, seed: int
) -> CoupledEstimate:
    """Steiner estimates of a nested pair E <= F on shared directions.

    Per direction the greedy basis of E is contained in the greedy basis
    of F, so the estimate of E is coordinatewise at most the estimate of
    F and the L1 distance between them is exactly dim F - dim E.  Both
    facts are asserted sample by sample, not statistically.
    """
    if not contains_subspace(E.space, F.space):
        raise ContainmentError("coupled estimates need E <= F")
    Esp, Fsp = align_pair(E.space, F.space)
    if Fsp.labels != F.space.labels:
        F = SubspaceMatroid(Fsp)
    E = SubspaceMatroid(Esp)
    _check_sampling_args(F, samples)
    if E.rank < 1:
        raise DegenerateInputError("the zero subspace has no Steiner point")

    sampler = DirectionSampler(seed=seed, dimension=len(F.labels))
    kern_e, kern_f = E._kernel, F._kernel
    labels = F.labels

    def run_chunk(c: int):
        lo, hi = c * CHUNK, min((c + 1) * CHUNK, samples)
        block = sampler.chunk(c)
        ce, cf = Counter(), Counter()
        for i in range(hi - lo):
            order = np.argsort(block[i], kind="stable").tolist()
            kept_e = kern_e.greedy(order)
            kept_f = kern_f.greedy(order)
            if not set(kept_e) <= set(kept_f):
                raise InternalInvariantError(
                    "greedy bases of a nested pair were not nested"
                )
            ce[tuple(labels[j] for j in kept_e)] += 1
            cf[tuple(labels[j] for j in kept_f)] += 1
        return ce, cf

    chunks = range((samples + CHUNK - 1) // CHUNK)
    workers = _worker_count()
    hits_e, hits_f = Counter(), Counter()
    if workers == 1:
        results = map(run_chunk, chunks)
        for ce, cf in results:
            hits_e.update(ce)
            hits_f.update(cf)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for ce, cf in pool.map(run_chunk, chunks):
                hits_e.update(ce)
                hits_f.update(cf)

    stderr = math.sqrt(0.25 / samples)
    est_e = SteinerEstimate(
        labels=labels,
        vector=_vector_from_hits(labels, hits_e, samples),
        samples=samples,
        seed=seed,
        per_vertex_hits=dict(sorted(hits_e.items())),
        stderr_bound=stderr,
    )
    est_f = SteinerEstimate(
        labels=labels,
        vector=_vector_from_hits(labels, hits_f, samples),
        samples=samples,
        seed=seed,
        per_vertex_hits=dict(sorted(hits_f.items())),
        stderr_bound=stderr,
    )
    gap = F.rank - E.rank
    if any(a > b for a, b in zip(est_e.vector, est_f.vector)):
        raise InternalInvariantError("coupled estimates were not monotone")
    if sum((b - a for a, b in zip(est_e.vector, est_f.vector)), Fraction(0)) != gap:
        raise InternalInvariantError("coupled L1 gap missed the dimension gap")
    return CoupledEstimate(low=est_e, high=est_f, l1_gap=gap)


@dataclass(frozen=True)
class MinkowskiCheck:
    equal: bool
    first: SteinerEstimate
    second: SteinerEstimate
    combined: tuple  # exact rational vector of the Minkowski combination


def minkowski_combination_check(
    M1: SubspaceMatroid,
    M2: SubspaceMatroid,
    alpha,
    samples: int,
    seed: int,
) -> MinkowskiCheck:
    """Check Steiner-point additivity under Minkowski combination.

    With shared directions, the minimizing vertex of a*P1 + (1-a)*P2 at
    direction v is a*x1 + (1-a)*x2 where x1, x2 minimize over P1, P2
    (normal cones intersect), so the per-sample accumulation of the
    combined vertex must equal the combination of the two estimates
    exactly.  Both accumulation paths are computed and compared.
    """
    if M1.labels != M2.labels:
        raise ShapeError("Minkowski combination needs a common ambient label list")
    alpha = Fraction(alpha)
    if not (0 <= alpha <= 1):
        raise ShapeError("the combination weight must lie in [0, 1]")
    _check_sampling_args(M1, samples)
    _check_sampling_args(M2, samples)
    labels = M1.labels
    sampler = DirectionSampler(seed=seed, dimension=len(labels))
    k1, k2 = M1._kernel, M2._kernel

    hits1, hits2 = Counter(), Counter()
    combined_acc = {lbl: Fraction(0) for lbl in labels}
    beta = 1 - alpha
    for c in range((samples + CHUNK - 1) // CHUNK):
        lo, hi = c * CHUNK, min((c + 1) * CHUNK, samples)
        block = sampler.chunk(c)
        for i in range(hi - lo):
            order = np.argsort(block[i], kind="stable").tolist()
            kept1 = k1.greedy(order)
            kept2 = k2.greedy(order)
            hits1[tuple(labels[j] for j in kept1)] += 1
            hits2[tuple(labels[j] for j in kept2)] += 1
            for j in kept1:
                combined_acc[labels[j]] += alpha
            for j in kept2:
                combined_acc[labels[j]] += beta

    stderr = math.sqrt(0.25 / samples)
    est1 = SteinerEstimate(
        labels=labels,
        vector=_vector_from_hits(labels, hits1, samples),
        samples=samples,
        seed=seed,
        per_vertex_hits=dict(sorted(hits1.items())),
        stderr_bound=stderr,
    )
    est2 = SteinerEstimate(
        labels=labels,
        vector=_vector_from_hits(labels, hits2, samples),
        samples=samples,
        seed=seed,
        per_vertex_hits=dict(sorted(hits2.items())),
        stderr_bound=stderr,
    )
    combined = tuple(combined_acc[lbl] / samples for lbl in labels)
    expected = tuple(
        alpha * a + beta * b for a, b in zip(est1.vector, est2.vector)
    )
    return MinkowskiCheck(
        equal=combined == expected, first=est1, second=est2, combined=combined
    )
