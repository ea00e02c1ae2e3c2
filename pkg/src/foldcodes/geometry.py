"""Affine dimension, flats and the weight/Loss functionals over F_p^k.

Vectors are tuples of ints mod ``p``; a vector set is any sequence of them
(duplicates tolerated).  Index sets refer to positions in such a sequence.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import EmptySet, InstanceTooLarge, NotDistinct, NotProperSubset, ZeroMissing

Vector = tuple[int, ...]

ORACLE_MAX_P = 5
ORACLE_MAX_K = 3
ORACLE_MAX_M = 4


def _reduce(row: list[int], basis: list[tuple[int, list[int]]], p: int) -> list[int]:
    """Reduce ``row`` against an echelon basis of (pivot column, normalized row)."""
    for col, b in basis:
        c = row[col]
        if c:
            row = [(x - c * y) % p for x, y in zip(row, b)]
    return row


class Echelon:
    """Incremental row-echelon basis over F_p (pivot = first nonzero entry)."""

    def __init__(self, p: int):
        self.p = p
        self.basis: list[tuple[int, list[int]]] = []

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence[int]) -> list[int]:
        return _reduce([x % self.p for x in v], self.basis, self.p)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[int]) -> bool:
        """Insert ``v``; return True iff it was independent of the current basis."""
        r = self.reduce(v)
        col = next((i for i, x in enumerate(r) if x), None)
        if col is None:
            return False
        inv = pow(r[col], -1, self.p)
        r = [x * inv % self.p for x in r]
        # keep the basis fully reduced so single-pass reduction stays valid
        self.basis = [
            (c, [(x - b[col] * y) % self.p for x, y in zip(b, r)]) for c, b in self.basis
        ]
        self.basis.append((col, r))
        return True


def rank(vectors: Iterable[Sequence[int]], p: int) -> int:
    e = Echelon(p)
    for v in vectors:
        e.add(v)
    return e.rank


def independent_prefix(vectors: Sequence[Sequence[int]], p: int) -> list[int]:
    """Indices of the greedy in-order basis of span(vectors)."""
    e = Echelon(p)
    return [i for i, v in enumerate(vectors) if e.add(v)]


def in_span(v: Sequence[int], vectors: Iterable[Sequence[int]], p: int) -> bool:
    e = Echelon(p)
    for w in vectors:
        e.add(w)
    return e.contains(v)


def affine_dim(vectors: Sequence[Sequence[int]], p: int, pivot: int = 0) -> int:
    """Dimension of the smallest affine subspace containing ``vectors``.

    Computed as the rank of the differences against ``vectors[pivot]``; the
    result does not depend on the pivot.
    """
    if not vectors:
        raise EmptySet("affine dimension of an empty set")
    base = vectors[pivot]
    return rank(([(x - y) % p for x, y in zip(v, base)] for v in vectors), p)


def affine_span(points: Sequence[Sequence[int]], p: int) -> set[Vector]:
    """All combinations sum(a_i * points[i]) with sum(a_i) = 1, by enumeration."""
    r = len(points)
    k = len(points[0])
    out = set()
    for head in itertools.product(range(p), repeat=r - 1):
        last = (1 - sum(head)) % p
        coeffs = head + (last,)
        out.add(tuple(sum(c * v[t] for c, v in zip(coeffs, points)) % p for t in range(k)))
    return out


def affine_dim_oracle(vectors: Sequence[Sequence[int]], p: int) -> int:
    """Brute-force affine dimension straight from the affine-span definition.

    Finds the smallest r such that some r of the given vectors affinely span
    all of them.  Only for tiny instances.
    """
    if not vectors:
        raise EmptySet("affine dimension of an empty set")
    m, k = len(vectors), len(vectors[0])
    if p > ORACLE_MAX_P or k > ORACLE_MAX_K or m > ORACLE_MAX_M:
        raise InstanceTooLarge(f"oracle capped at p<={ORACLE_MAX_P}, k<={ORACLE_MAX_K}, m<={ORACLE_MAX_M}")
    target = {tuple(x % p for x in v) for v in vectors}
    for r in range(1, m + 1):
        for idx in itertools.combinations(range(m), r):
            if target <= affine_span([vectors[i] for i in idx], p):
                return r - 1
    raise AssertionError("the full set always spans itself")


def is_flat(subset: Iterable[int], vectors: Sequence[Sequence[int]], p: int) -> bool:
    """True iff adding any vector outside ``subset`` raises the affine dimension."""
    sub = sorted(set(subset))
    if not sub or len(sub) >= len(vectors) or not set(sub) <= set(range(len(vectors))):
        raise NotProperSubset("a flat must be a proper nonempty subset")
    members = set(sub)
    inside = [vectors[i] for i in sub]
    d = affine_dim(inside, p)
    return all(
        affine_dim(inside + [vectors[j]], p) > d for j in range(len(vectors)) if j not in members
    )


def flats_partition(vectors: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Partition {0, f_1, ..., f_L} into l+1 parts whose transversals have affine dim l.

    ``vectors`` must contain the zero vector once plus pairwise distinct nonzero
    vectors spanning a space of dimension l >= 1.  Parts are index lists;
    part 0 is always the zero vector alone.
    """
    vecs = [tuple(x % p for x in v) for v in vectors]
    if len(set(vecs)) != len(vecs):
        raise NotDistinct("vectors must be pairwise distinct")
    zero_idx = next((i for i, v in enumerate(vecs) if not any(v)), None)
    if zero_idx is None:
        raise ZeroMissing("the zero vector must be present")
    others = [i for i in range(len(vecs)) if i != zero_idx]
    if rank((vecs[i] for i in others), p) < 1:
        raise ValueError("the nonzero vectors must span a space of dimension >= 1")
    return _partition(vecs, zero_idx, others, p)


def _partition(vecs, zero_idx: int, others: list[int], p: int) -> list[list[int]]:
    prefix = [others[i] for i in independent_prefix([vecs[j] for j in others], p)]
    ell = len(prefix)
    if ell == 1:
        return [[zero_idx], list(others)]
    e = Echelon(p)
    for i in prefix[:-1]:
        e.add(vecs[i])
    flat = [i for i in others if e.contains(vecs[i])]
    rest = [i for i in others if not e.contains(vecs[i])]
    return _partition(vecs, zero_idx, flat, p) + [rest]


def edge_loss(edge: Sequence[Sequence[int]], p: int) -> int:
    """max(0, |e| - 1 - affine_dim(e)); 0 for the empty edge."""
    if not edge:
        return 0
    return max(0, len(edge) - 1 - affine_dim(edge, p))


def weight(edges: Iterable[Sequence]) -> int:
    """Sum of max(|e| - 1, 0) over the edges."""
    return sum(max(len(e) - 1, 0) for e in edges)
