"""Column matroids of labeled subspaces.

A label set S is independent when the columns it indexes are linearly
independent; the bases (|S| = dim) are exactly the coordinate sets onto
which the subspace projects isomorphically.  Greedy minimization over
the bases is the hot loop of the Steiner-point sampler, so independence
testing runs on cached per-column data: bitmasks over GF(2), residues
mod p otherwise.  Rational subspaces are reduced mod a prime exceeding
the Hadamard bound on their minors, which preserves the matroid exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from sympy import nextprime

from .errors import (
    CapacityError,
    ContainmentError,
    DomainError,
    InternalInvariantError,
    InvalidBasisError,
    ShapeError,
)
from .linalg import (
    LabeledSubspace,
    align_pair,
    contains_subspace,
    rref,
    subspace_from_rows,
)

Basis = tuple  # a sorted tuple of labels


class _Gf2Kernel:
    """Columns as bitmasks; elimination by XOR."""

    __slots__ = ("cols", "rank")

    def __init__(self, columns, d):
        self.rank = d
        self.cols = [
            sum(1 << r for r, v in enumerate(col) if v) for col in columns
        ]

    def greedy(self, order) -> list:
        cols = self.cols
        d = self.rank
        table = {}
        kept = []
        for idx in order:
            c = cols[idx]
            while c:
                low = c & (-c)
                hit = table.get(low)
                if hit is None:
                    table[low] = c
                    kept.append(idx)
                    break
                c ^= hit
            if len(kept) == d:
                break
        kept.sort()
        return kept

    def rank_of(self, indices) -> int:
        table = {}
        r = 0
        for idx in indices:
            c = self.cols[idx]
            while c:
                low = c & (-c)
                hit = table.get(low)
                if hit is None:
                    table[low] = c
                    r += 1
                    break
                c ^= hit
        return r


class _ModPKernel:
    """Columns as residue tuples mod p; incremental Gaussian elimination."""

    __slots__ = ("cols", "rank", "p")

    def __init__(self, cols, d, p):
        self.cols = cols
        self.rank = d
        self.p = p

    def greedy(self, order) -> list:
        cols = self.cols
        d = self.rank
        p = self.p
        pivots = []
        kept = []
        for idx in order:
            c = list(cols[idx])
            for pos, row in pivots:
                f = c[pos]
                if f:
                    c = [(a - f * b) % p for a, b in zip(c, row)]
            pos = next((j for j, x in enumerate(c) if x), -1)
            if pos >= 0:
                inv = pow(c[pos], p - 2, p)
                pivots.append((pos, [(x * inv) % p for x in c]))
                kept.append(idx)
                if len(kept) == d:
                    break
        kept.sort()
        return kept

    def rank_of(self, indices) -> int:
        p = self.p
        pivots = []
        for idx in indices:
            c = list(self.cols[idx])
            for pos, row in pivots:
                f = c[pos]
                if f:
                    c = [(a - f * b) % p for a, b in zip(c, row)]
            pos = next((j for j, x in enumerate(c) if x), -1)
            if pos >= 0:
                inv = pow(c[pos], p - 2, p)
                pivots.append((pos, [(x * inv) % p for x in c]))
        return len(pivots)


def _rational_kernel(basis, d) -> _ModPKernel:
    # Clear denominators row by row (row scaling keeps the column matroid),
    # then reduce mod a prime larger than any d x d minor can be in absolute
    # value (Hadamard bound), so nonzero minors stay nonzero mod p.
    int_rows = []
    for row in basis:
        denom = math.lcm(*(x.denominator for x in row)) if row else 1
        int_rows.append([int(x * denom) for x in row])
    big = max((abs(x) for row in int_rows for x in row), default=1) or 1
    bound = math.isqrt((d * big * big) ** d) + 1
    p = int(nextprime(bound))
    n = len(int_rows[0]) if int_rows else 0
    cols = [tuple(int_rows[r][j] % p for r in range(d)) for j in range(n)]
    return _ModPKernel(cols, d, p)


@dataclass(frozen=True)
class SubspaceMatroid:
    """The column matroid of a labeled subspace."""

    space: LabeledSubspace

    @property
    def rank(self) -> int:
        return self.space.dim

    @property
    def labels(self) -> tuple:
        return self.space.labels

    @cached_property
    def _index(self) -> dict:
        return {lbl: j for j, lbl in enumerate(self.space.labels)}

    @cached_property
    def _kernel(self):
        d = self.space.dim
        char = self.space.field.characteristic
        if char == 0:
            return _rational_kernel(self.space.basis, d)
        n = len(self.space.labels)
        if d:
            columns = self.space.basis.T.tolist()
        else:
            columns = [[] for _ in range(n)]
        if char == 2:
            return _Gf2Kernel(columns, d)
        return _ModPKernel([tuple(col) for col in columns], d, char)

    def _positions(self, labels: Iterable) -> list:
        idx = self._index
        out = []
        for lbl in labels:
            if lbl not in idx:
                raise DomainError(f"label {lbl!r} is not a coordinate of this subspace")
            out.append(idx[lbl])
        return out


def is_independent(M: SubspaceMatroid, S: Iterable) -> bool:
    """True iff the columns indexed by S are linearly independent."""
    pos = M._positions(S)
    if len(set(pos)) != len(pos):
        return False
    if len(pos) > M.rank:
        return False
    return M._kernel.rank_of(pos) == len(pos)


def is_basis(M: SubspaceMatroid, S: Iterable) -> bool:
    S = list(S)
    return len(S) == M.rank and is_independent(M, S)


def initial_basis(M: SubspaceMatroid) -> Basis:
    """The deterministic basis given by the pivot columns of the RREF."""
    return tuple(M.labels[c] for c in M.space.pivot_columns())


def greedy_min_basis(M: SubspaceMatroid, weights: Sequence) -> Basis:
    """The basis minimizing total weight, by matroid greedy.

    Scans labels by ascending weight (ties broken by label order) and
    keeps each label whose column enlarges the rank.  For any direction
    vector this returns the vertex of the base polytope whose normal
    cone contains it.
    """
    if len(weights) != len(M.labels):
        raise ShapeError(
            f"need one weight per label: got {len(weights)} for {len(M.labels)}"
        )
    order = sorted(range(len(M.labels)), key=lambda i: (weights[i], i))
    kept = M._kernel.greedy(order)
    return tuple(M.labels[i] for i in kept)


def enumerate_bases(M: SubspaceMatroid, cap: int = 100_000) -> list:
    """All bases, in lexicographic label order; errors out beyond ``cap``."""
    if cap <= 0:
        raise ShapeError("cap must be positive")
    d = M.rank
    out = []
    for combo in combinations(range(len(M.labels)), d):
        if M._kernel.rank_of(combo) == d:
            out.append(tuple(M.labels[i] for i in combo))
            if len(out) > cap:
                raise CapacityError(
                    f"more than {cap} bases; raise the cap to enumerate them all"
                )
    return out


# ---------------------------------------------------------------------------
# nested-pair operations


def _check_nested(E: SubspaceMatroid, F: SubspaceMatroid) -> None:
    if not contains_subspace(E.space, F.space):
        raise ContainmentError("the first subspace is not contained in the second")


def _check_basis(M: SubspaceMatroid, S, what: str) -> None:
    if not is_basis(M, S):
        raise InvalidBasisError(f"{what} {tuple(S)!r} is not a basis")


def basis_extend(E: SubspaceMatroid, F: SubspaceMatroid, S: Iterable) -> Basis:
    """Grow a basis of E <= F into a basis of F containing it.

    Works inside D = {v in F : v vanishes on S}: the pivot labels of D
    are disjoint from S and complete it to a basis of F.
    """
    S = tuple(sorted(S))
    _check_nested(E, F)
    _check_basis(E, S, "basis of the smaller subspace")
    Fsp = F.space
    spos = set(Fsp.label_index()[lbl] for lbl in S)
    # RREF with the S-columns leading isolates the rows vanishing on S.
    n = len(Fsp.labels)
    order = sorted(range(n), key=lambda j: (j not in spos, j))
    permuted = [[row[j] for j in order] for row in Fsp.basis_rows()]
    reduced, rank, _ = rref(permuted, Fsp.field)
    k = len(S)
    inv = {pos: j for pos, j in enumerate(order)}
    d_rows = []
    for row in reduced:
        if all(x == 0 for x in row[:k]):
            back = [None] * n
            for pos, x in enumerate(row):
                back[inv[pos]] = x
            d_rows.append(back)
    D = subspace_from_rows(d_rows, Fsp.labels, Fsp.field)
    extension = initial_basis(SubspaceMatroid(D))
    T = tuple(sorted(set(S) | set(extension)))
    if not is_basis(F, T):
        raise InternalInvariantError("extension failed the independence recheck")
    return T


def basis_restrict(E: SubspaceMatroid, F: SubspaceMatroid, T: Iterable) -> Basis:
    """Shrink a basis of F down to a basis of E <= F contained in it.

    Projects E onto the coordinates of T and takes the pivot labels of
    the projection.
    """
    T = tuple(sorted(T))
    _check_nested(E, F)
    _check_basis(F, T, "basis of the larger subspace")
    Esp = E.space
    idx = Esp.label_index()
    zero = Fraction(0) if Esp.field.is_rational else 0
    projected = [
        [row[idx[lbl]] if lbl in idx else zero for lbl in T] for row in Esp.basis
    ]
    proj_space = subspace_from_rows(projected, list(T), Esp.field)
    S = initial_basis(SubspaceMatroid(proj_space))
    if not is_basis(E, S):
        raise InternalInvariantError("restriction failed the independence recheck")
    return S


def _dual_basis_rows(space: LabeledSubspace, S: Sequence) -> dict:
    """For each s in S, the unique basis vector whose S-coordinates are e_s."""
    n = len(space.labels)
    idx = space.label_index()
    spos = [idx[lbl] for lbl in S]
    sset = set(spos)
    order = spos + [j for j in range(n) if j not in sset]
    permuted = [[row[j] for j in order] for row in space.basis_rows()]
    reduced, rank, pivots = rref(permuted, space.field)
    if rank != len(S) or list(pivots) != list(range(len(S))):
        raise InvalidBasisError(f"{tuple(S)!r} is not a basis")
    out = {}
    for i, lbl in enumerate(S):
        back = [None] * n
        for pos, x in enumerate(reduced[i]):
            back[order[pos]] = x
        out[lbl] = back
    return out


def basis_exchange(E: SubspaceMatroid, F: SubspaceMatroid, S, T, k) -> object:
    """A label l of T that can swap with k in S, keeping both bases valid.

    Uses the coordinate pairing of dual bases: picks the smallest l in T
    whose dual-basis coefficients eps_k[l] and phi_l[k] are both nonzero;
    then S - {k} + {l} is a basis of E and T - {l} + {k} a basis of F.
    """
    S = tuple(sorted(S))
    T = tuple(sorted(T))
    _check_nested(E, F)
    _check_basis(E, S, "basis of the smaller subspace")
    _check_basis(F, T, "basis of the larger subspace")
    if k not in S:
        raise InvalidBasisError(f"{k!r} is not a member of the given basis")
    Esp, Fsp = align_pair(E.space, F.space)
    eps = _dual_basis_rows(Esp, S)[k]
    phi = _dual_basis_rows(Fsp, T)
    idx = {lbl: j for j, lbl in enumerate(Fsp.labels)}
    k_col = idx[k]
    for ell in T:
        if eps[idx[ell]] != 0 and phi[ell][k_col] != 0:
            new_S = tuple(sorted(set(S) - {k} | {ell}))
            new_T = tuple(sorted(set(T) - {ell} | {k}))
            if not (is_basis(E, new_S) and is_basis(F, new_T)):
                raise InternalInvariantError("exchange failed the independence recheck")
            return ell
    raise InternalInvariantError("no exchange label exists; this should be impossible")
