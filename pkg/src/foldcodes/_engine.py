"""Vectorized exhaustive scan over (L+1)-subsets of messages.

Message index j encodes the coefficient vector whose base-p digits (a_0 least
significant) are the digits of j.  Subsets are ranked in colexicographic
order through the combinatorial number system, rank = sum_i C(c_i, i) for
c_1 < ... < c_m, so any rank range can be unranked independently.  For each
subset the scan computes the total block distance to its plurality word,
sum over positions of (m - largest block multiplicity), and keeps the first
minimum in rank order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .codes import CodeSpec, generator_matrix

_CLAMP = 1 << 62
_CHUNK_CELLS = 1 << 22


def message_vector(index: int, p: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        index, d = divmod(index, p)
        out.append(d)
    return tuple(out)


def message_index(vec, p: int) -> int:
    return sum(int(x) * p**t for t, x in enumerate(vec))


def block_table(spec: CodeSpec) -> np.ndarray:
    """(p^k, n) array; entry [j, i] identifies block i of the codeword of message j."""
    p, k, s, n = spec.p, spec.k, spec.s, spec.n
    N = p**k
    digits = np.arange(N, dtype=np.int64)[:, None] // (p ** np.arange(k, dtype=np.int64)) % p
    gen = np.array(generator_matrix(spec), dtype=np.int64).reshape(k, n * s)
    words = np.zeros((N, n * s), dtype=np.int64)
    for t in range(k):
        words = (words + digits[:, t : t + 1] * gen[t]) % p
    table = np.empty((N, n), dtype=np.int64)
    for i in range(n):
        _, inverse = np.unique(words[:, i * s : (i + 1) * s], axis=0, return_inverse=True)
        table[:, i] = inverse.reshape(-1)
    return table


def colex_unrank(rank: int, m: int) -> tuple[int, ...]:
    out = []
    for i in range(m, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rank:
            c += 1
        rank -= math.comb(c, i)
        out.append(c)
    return tuple(reversed(out))


def colex_rank(combo) -> int:
    return sum(math.comb(c, i) for i, c in enumerate(sorted(combo), 1))


def _binom_tables(N: int, m: int) -> list[np.ndarray]:
    return [
        np.array([min(math.comb(c, i), _CLAMP) for c in range(N)], dtype=np.int64)
        for i in range(m + 1)
    ]


def _unrank_block(ranks: np.ndarray, m: int, tables) -> np.ndarray:
    r = ranks.copy()
    out = np.empty((len(ranks), m), dtype=np.int64)
    for i in range(m, 0, -1):
        c = np.searchsorted(tables[i], r, side="right") - 1
        r -= tables[i][c]
        out[:, i - 1] = c
    return out


def plurality_distances(table: np.ndarray, combos: np.ndarray) -> np.ndarray:
    """Total plurality distance for each row of message indices."""
    ids = table[combos]  # (B, m, n)
    m = combos.shape[1]
    mult = (ids[:, :, None, :] == ids[:, None, :, :]).sum(axis=2)
    return (m - mult.max(axis=1)).sum(axis=1)


def scan_range(table: np.ndarray, m: int, lo: int, hi: int) -> tuple[int, int]:
    """(min distance, first rank attaining it) over colex ranks [lo, hi)."""
    N, n = table.shape
    tables = _binom_tables(N, m)
    step = max(1024, _CHUNK_CELLS // (m * m * n))
    best = (m * n + 1, -1)
    for start in range(lo, hi, step):
        ranks = np.arange(start, min(start + step, hi), dtype=np.int64)
        dist = plurality_distances(table, _unrank_block(ranks, m, tables))
        j = int(np.argmin(dist))
        if int(dist[j]) < best[0]:
            best = (int(dist[j]), start + j)
    return best


def scan_all(table: np.ndarray, m: int, workers: int = 1) -> tuple[int, int]:
    """Scan every m-subset; identical result for any worker count."""
    total = math.comb(table.shape[0], m)
    if workers <= 1 or total < 2 * workers:
        return scan_range(table, m, 0, total)
    bounds = [total * w // workers for w in range(workers + 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(scan_range, table, m, bounds[w], bounds[w + 1]) for w in range(workers)
        ]
        results = [f.result() for f in futures]
    return min((r for r in results if r[1] >= 0), key=lambda r: (r[0], r[1]))
