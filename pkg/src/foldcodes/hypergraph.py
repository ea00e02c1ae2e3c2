"""Geometric agreement hypergraphs and plurality received words."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import geometry
from .codes import CodeSpec, Codeword, CoeffVec, encode, hamming_distance
from .errors import EmptySubset, SpecMismatch


@dataclass(frozen=True)
class AgreementHypergraph:
    """Vertices are coefficient vectors; edge i holds the indices of vertices
    whose codeword equals the received word on block i."""

    spec: CodeSpec
    vertices: tuple[CoeffVec, ...]
    edges: tuple[frozenset[int], ...]

    def edge_vectors(self, i: int) -> list[CoeffVec]:
        return [self.vertices[v] for v in sorted(self.edges[i])]

    @property
    def weight(self) -> int:
        return geometry.weight(self.edges)

    def total_loss(self) -> int:
        p = self.spec.p
        return sum(geometry.edge_loss(self.edge_vectors(i), p) for i in range(len(self.edges)))

    def affine_dims(self) -> list[int]:
        p = self.spec.p
        return [
            geometry.affine_dim(self.edge_vectors(i), p) if e else 0
            for i, e in enumerate(self.edges)
        ]

    def translate(self, shift: Sequence[int]) -> AgreementHypergraph:
        """Subtract ``shift`` from every vertex; by linearity the edges stay valid
        for the received word y - C(shift)."""
        p = self.spec.p
        verts = tuple(tuple((x - y) % p for x, y in zip(v, shift)) for v in self.vertices)
        return AgreementHypergraph(self.spec, verts, self.edges)


def _check_word(spec: CodeSpec, y: Codeword):
    if len(y) != spec.n or any(len(b) != spec.s for b in y):
        raise SpecMismatch("received word does not match the code shape")


def _vec(spec: CodeSpec, m: Sequence[int]) -> CoeffVec:
    if len(m) != spec.k:
        raise SpecMismatch(f"message length {len(m)} != k={spec.k}")
    return tuple(int(x) % spec.p for x in m)


def build_hypergraph(
    spec: CodeSpec, y: Codeword, msgs: Sequence[Sequence[int]]
) -> AgreementHypergraph:
    if not msgs:
        raise ValueError("need at least one message")
    _check_word(spec, y)
    verts = tuple(_vec(spec, m) for m in msgs)
    words = [encode(spec, v) for v in verts]
    edges = tuple(
        frozenset(j for j, c in enumerate(words) if c[i] == y[i]) for i in range(spec.n)
    )
    return AgreementHypergraph(spec, verts, edges)


def restrict(h: AgreementHypergraph, subset: Iterable[int]) -> AgreementHypergraph:
    keep = frozenset(subset)
    if not keep:
        raise EmptySubset("restriction to an empty vertex set")
    return AgreementHypergraph(h.spec, h.vertices, tuple(e & keep for e in h.edges))


def plurality_word(spec: CodeSpec, msgs: Sequence[Sequence[int]]) -> Codeword:
    """Per position, the most frequent block among the encodings (ties: smallest block)."""
    if not msgs:
        raise ValueError("need at least one message")
    words = [encode(spec, _vec(spec, m)) for m in msgs]
    out = []
    for i in range(spec.n):
        counts = Counter(w[i] for w in words)
        best = max(counts.values())
        out.append(min(b for b, c in counts.items() if c == best))
    return tuple(out)


def average_distance(spec: CodeSpec, msgs: Sequence[Sequence[int]], y: Codeword) -> Fraction:
    """Mean relative block distance between ``y`` and the encodings of ``msgs``."""
    if not msgs:
        raise ValueError("need at least one message")
    _check_word(spec, y)
    total = sum(hamming_distance(encode(spec, _vec(spec, m)), y) for m in msgs)
    return Fraction(total, len(msgs) * spec.n)
