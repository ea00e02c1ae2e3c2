"""Executable checks for the list-decoding theorems and their supporting lemmas.

Every checker returns a :class:`VerifyReport`.  Randomized sweeps draw from
:class:`~foldcodes.rng.SplitMix64` so a seed pins the whole run.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _engine, geometry
from .codes import FRS, CodeSpec, Codeword, encode, radius_bound
from .errors import (
    BadM,
    InstanceTooLarge,
    ListExceedsFolding,
    NotDistinct,
    VertexCountTooLarge,
    ZeroMissing,
)
from .field_poly import (
    Field,
    Poly,
    binomial_mod,
    hasse_derivative,
    poly_eval,
    root_multiplicity,
    total_roots_with_multiplicity,
)
from .hypergraph import (
    AgreementHypergraph,
    average_distance,
    build_hypergraph,
    plurality_word,
)
from .rng import SplitMix64
from .wronskian import CLASSICAL, FOLDED, geometric_poly, independence_test

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"

MAX_EXHAUSTIVE_MESSAGES = 2500
MAX_EXHAUSTIVE_SUBSETS = 10**8
MAX_LOSS_VERTICES = 6


def _frac(x: Fraction | None):
    if x is None:
        return None
    return {"num": x.numerator, "den": x.denominator}


@dataclass
class VerifyReport:
    theorem: str
    passed: bool
    instances: int
    margin: Fraction | None = None
    worst: dict | None = None
    elapsed: float = 0.0
    skipped: int = 0

    def to_dict(self, stable: bool = False) -> dict:
        return {
            "theorem": self.theorem,
            "pass": self.passed,
            "instances": self.instances,
            "margin": _frac(self.margin),
            "worst": self.worst,
            "elapsed_ms": 0 if stable else int(round(self.elapsed * 1000)),
        }

    def to_json(self, stable: bool = False) -> str:
        return json.dumps(self.to_dict(stable), sort_keys=False)


def wronskian_mode(spec: CodeSpec) -> str:
    return FOLDED if spec.family == FRS else CLASSICAL


# -- list decodability ------------------------------------------------------


def _check_caps(spec: CodeSpec, m: int):
    N = spec.num_messages
    if N > MAX_EXHAUSTIVE_MESSAGES:
        raise InstanceTooLarge(f"p^k = {N} exceeds {MAX_EXHAUSTIVE_MESSAGES}")
    if math.comb(N, m) > MAX_EXHAUSTIVE_SUBSETS:
        raise InstanceTooLarge(f"C({N}, {m}) exceeds {MAX_EXHAUSTIVE_SUBSETS}")


def _witness(spec: CodeSpec, indices: Sequence[int]) -> dict:
    msgs = [_engine.message_vector(j, spec.p, spec.k) for j in sorted(indices)]
    y = plurality_word(spec, msgs)
    value = average_distance(spec, msgs, y)
    return {
        "indices": sorted(indices),
        "messages": [list(v) for v in msgs],
        "received": [list(b) for b in y],
        "value": _frac(value),
    }


def _witness_value(w: dict) -> Fraction:
    return Fraction(w["value"]["num"], w["value"]["den"])


def recheck_witness(spec: CodeSpec, worst: dict) -> Fraction:
    """Recompute the average distance of a reported witness from scratch."""
    y = tuple(tuple(b) for b in worst["received"])
    return average_distance(spec, [tuple(v) for v in worst["messages"]], y)


def _sampled_min(spec, m, count, seed, include):
    """Evaluate ``include`` subsets then ``count`` random ones; first minimum wins."""
    N = spec.num_messages
    rng = SplitMix64(seed)
    cache: dict[int, Codeword] = {}

    def word(j):
        if j not in cache:
            cache[j] = encode(spec, _engine.message_vector(j, spec.p, spec.k))
        return cache[j]

    def dist(subset):
        words = [word(j) for j in subset]
        total = 0
        for i in range(spec.n):
            counts: dict = {}
            for w in words:
                counts[w[i]] = counts.get(w[i], 0) + 1
            total += m - max(counts.values())
        return total

    best = None
    seen = 0
    subsets = [tuple(sorted(s)) for s in include]
    for subset in itertools.chain(subsets, (tuple(sorted(rng.distinct(N, m))) for _ in range(count))):
        if len(set(subset)) != m:
            raise NotDistinct("subset entries must be distinct message indices")
        d = dist(subset)
        seen += 1
        if best is None or d < best[0]:
            best = (d, subset)
    return best, seen


def _min_subset(spec, L, mode, count, seed, workers, include):
    """(min total distance, subset indices, subsets examined) or None when vacuous."""
    m = L + 1
    N = spec.num_messages
    if mode == EXHAUSTIVE:
        _check_caps(spec, m)
        if m > N:
            return None
        table = _engine.block_table(spec)
        best, rank = _engine.scan_all(table, m, workers)
        return best, _engine.colex_unrank(rank, m), math.comb(N, m)
    if mode == SAMPLED:
        if m > N:
            return None
        best, seen = _sampled_min(spec, m, count, seed, include)
        if best is None:
            return None
        return best[0], best[1], seen
    raise ValueError(f"unknown mode {mode!r}")


def verify_list_decodability(
    spec: CodeSpec,
    L: int,
    rho: Fraction,
    mode: str = EXHAUSTIVE,
    count: int = 10_000,
    seed: int = 0,
    workers: int = 1,
    include: Sequence[Sequence[int]] = (),
) -> VerifyReport:
    """Search for L+1 distinct codewords whose average distance to their
    plurality word is at most ``rho``; pass iff none exists.

    ``include`` lists message-index subsets evaluated before the random draws
    in sampled mode.
    """
    start = time.perf_counter()
    rho = Fraction(rho)
    if L > spec.s:
        raise ListExceedsFolding(f"L={L} exceeds s={spec.s}")
    found = _min_subset(spec, L, mode, count, seed, workers, include)
    if found is None:
        return VerifyReport("main", True, 0, None, None, time.perf_counter() - start)
    best, subset, seen = found
    worst = _witness(spec, subset)
    value = _witness_value(worst)
    if value != Fraction(best, (L + 1) * spec.n):
        raise AssertionError("vectorized and scalar distances disagree")
    return VerifyReport("main", value > rho, seen, value - rho, worst, time.perf_counter() - start)


def search_worst(
    spec: CodeSpec,
    L: int,
    mode: str = EXHAUSTIVE,
    count: int = 10_000,
    seed: int = 0,
    workers: int = 1,
    include: Sequence[Sequence[int]] = (),
) -> VerifyReport:
    """Report the (L+1)-subset with the smallest average plurality distance.

    Never fails; ``margin`` is the gap to the radius bound when the bound
    applies (L <= s), else ``None``.
    """
    start = time.perf_counter()
    found = _min_subset(spec, L, mode, count, seed, workers, include)
    if found is None:
        return VerifyReport("search", True, 0, None, None, time.perf_counter() - start)
    _, subset, seen = found
    worst = _witness(spec, subset)
    margin = None
    if 1 <= L <= spec.s:
        margin = _witness_value(worst) - radius_bound(L, spec.s, spec.rate)
    return VerifyReport("search", True, seen, margin, worst, time.perf_counter() - start)


# -- root count and Loss bound ----------------------------------------------


def _split_zero(vertices: Sequence[Sequence[int]]):
    vecs = [tuple(v) for v in vertices]
    if len(set(vecs)) != len(vecs):
        raise NotDistinct("vertices must be pairwise distinct")
    zero = next((i for i, v in enumerate(vecs) if not any(v)), None)
    if zero is None:
        raise ZeroMissing("the zero vector must be a vertex")
    return vecs, zero


def check_root_count(h: AgreementHypergraph) -> VerifyReport:
    """The geometric polynomial of the nonzero vertices has at least
    (s - l + 1) * sum_i affine_dim(e_i) roots counting multiplicity."""
    start = time.perf_counter()
    spec = h.spec
    vecs, zero = _split_zero(h.vertices)
    fs = [v for i, v in enumerate(vecs) if i != zero]
    if not fs:
        raise ValueError("need at least one nonzero vertex")
    ell = geometry.rank(fs, spec.p)
    P = geometric_poly(spec.field, fs, wronskian_mode(spec))
    roots = total_roots_with_multiplicity(P)
    required = (spec.s - ell + 1) * sum(h.affine_dims())
    worst = {
        "vertices": [list(v) for v in vecs],
        "edges": [sorted(e) for e in h.edges],
        "roots": roots,
        "required": required,
        "degree": P.degree,
    }
    return VerifyReport(
        "root-count", roots >= required, 1, Fraction(roots - required), worst,
        time.perf_counter() - start,
    )


def loss_precondition(vertices, edges, s: int, k: int) -> bool:
    """Every proper vertex subset H with |H| >= 2 has wt < (|H|-1)k / (s-|H|+2)."""
    V = len(vertices)
    for size in range(2, V):
        bound = Fraction((size - 1) * k, s - size + 2)
        for sub in itertools.combinations(range(V), size):
            keep = frozenset(sub)
            if geometry.weight([e & keep for e in edges]) >= bound:
                return False
    return True


def check_loss_bound(vertices, edges, s: int, k: int, p: int) -> VerifyReport:
    """sum_i Loss(e_i) <= (L - l) k / (s - L + 1) whenever the subset-weight
    precondition holds; instances failing it are reported as skipped."""
    start = time.perf_counter()
    vecs, zero = _split_zero(vertices)
    L = len(vecs) - 1
    if L > MAX_LOSS_VERTICES:
        raise VertexCountTooLarge(f"L={L} exceeds {MAX_LOSS_VERTICES}")
    if L > s:
        raise ListExceedsFolding(f"L={L} exceeds s={s}")
    edges = [frozenset(e) for e in edges]
    if not loss_precondition(vecs, edges, s, k):
        return VerifyReport("loss", True, 0, None, None, time.perf_counter() - start, skipped=1)
    ell = geometry.rank((v for i, v in enumerate(vecs) if i != zero), p)
    loss = sum(geometry.edge_loss([vecs[j] for j in sorted(e)], p) for e in edges)
    bound = Fraction((L - ell) * k, s - L + 1)
    worst = {
        "vertices": [list(v) for v in vecs],
        "edges": [sorted(e) for e in edges],
        "loss": loss,
        "bound": _frac(bound),
    }
    return VerifyReport("loss", loss <= bound, 1, bound - loss, worst, time.perf_counter() - start)


def vanishing_poly(spec: CodeSpec, i: int) -> Poly:
    """Monic polynomial vanishing on the whole of block ``i``."""
    a, p = spec.alphas[i], spec.p
    if spec.family == FRS:
        return Poly.from_roots(spec.field, [a * pow(spec.field.gamma, t, p) % p for t in range(spec.s)])
    return Poly.from_roots(spec.field, [a] * spec.s)


def random_vec(rng: SplitMix64, p: int, k: int) -> tuple[int, ...]:
    return tuple(rng.randbelow(p) for _ in range(k))


def clustered_messages(spec: CodeSpec, rng: SplitMix64, m: int) -> list[tuple[int, ...]]:
    """m distinct messages biased towards agreeing on whole blocks.

    Each new message is an earlier one plus a random multiple of some block's
    vanishing polynomial (when that fits below degree k), or a fresh random
    vector.
    """
    k, p = spec.k, spec.p
    if m > p**k:
        raise ValueError("not enough messages")
    vanish = [vanishing_poly(spec, i) for i in range(spec.n)]
    usable = [v for v in vanish if v.degree < k]
    out = [random_vec(rng, p, k)]
    while len(out) < m:
        parent = rng.choice(out)
        if usable and rng.randbelow(4):
            v = rng.choice(usable)
            shift = v * Poly(spec.field, random_vec(rng, p, k - len(v.coeffs) + 1))
            cand = (Poly(spec.field, parent) + shift).to_vec(k)
        else:
            cand = random_vec(rng, p, k)
        if cand not in out:
            out.append(cand)
    return out


def mixed_word(spec: CodeSpec, rng: SplitMix64, msgs) -> Codeword:
    """Each block copied from a randomly chosen message's codeword."""
    words = [encode(spec, v) for v in msgs]
    return tuple(rng.choice(words)[i] for i in range(spec.n))


def random_hypergraph(spec: CodeSpec, rng: SplitMix64, L: int) -> AgreementHypergraph:
    """Hypergraph on {0, f_1..f_L} from a real received word, translated by -f_0."""
    msgs = clustered_messages(spec, rng, L + 1)
    y = plurality_word(spec, msgs) if rng.randbelow(2) else mixed_word(spec, rng, msgs)
    return build_hypergraph(spec, y, msgs).translate(msgs[0])


def _merge(theorem: str, reports: list[VerifyReport], start: float) -> VerifyReport:
    checked = [r for r in reports if r.instances]
    failing = [r for r in checked if not r.passed]
    pool = failing or checked
    worst = min(pool, key=lambda r: r.margin) if pool else None
    return VerifyReport(
        theorem,
        not failing,
        len(checked),
        worst.margin if worst else None,
        worst.worst if worst else None,
        time.perf_counter() - start,
        skipped=sum(r.skipped for r in reports),
    )


def sweep_root_count(spec: CodeSpec, count: int = 200, L_max: int = 3, seed: int = 0) -> VerifyReport:
    start = time.perf_counter()
    rng = SplitMix64(seed)
    L_max = min(L_max, spec.s, spec.num_messages - 1)
    reports = [check_root_count(random_hypergraph(spec, rng, 1 + t % L_max)) for t in range(count)]
    return _merge("root-count", reports, start)


def sweep_loss_bound(
    spec: CodeSpec, count: int = 200, L_max: int = 3, seed: int = 0, max_attempts: int | None = None
) -> VerifyReport:
    """Collect ``count`` precondition-satisfying instances (skips are tallied)."""
    start = time.perf_counter()
    rng = SplitMix64(seed)
    L_max = min(L_max, spec.s, spec.num_messages - 1, MAX_LOSS_VERTICES)
    attempts = max_attempts if max_attempts is not None else 50 * count
    reports: list[VerifyReport] = []
    checked = t = 0
    while checked < count and t < attempts:
        h = random_hypergraph(spec, rng, 1 + t % L_max)
        r = check_loss_bound(h.vertices, h.edges, spec.s, spec.k, spec.p)
        checked += r.instances
        reports.append(r)
        t += 1
    return _merge("loss", reports, start)


# -- distinctness lemma -----------------------------------------------------


def distinctness_bound(spec: CodeSpec, m: int) -> Fraction:
    return Fraction((m - 1) * spec.k, spec.s - m + 2)


def check_distinctness_lemma(
    spec: CodeSpec, m: int, mode: str = EXHAUSTIVE, count: int = 10_000, seed: int = 0,
    workers: int = 1,
) -> VerifyReport:
    """Pairwise-distinct m-tuples always give hypergraph weight below (m-1)k/(s-m+2).

    Exhaustive mode scans every m-subset against its plurality word, which
    maximizes the weight.  Sampled mode draws clustered tuples and checks both
    the plurality word and a randomly mixed word.
    """
    start = time.perf_counter()
    if not 2 <= m <= spec.s + 1:
        raise BadM(f"need 2 <= m <= s+1, got m={m}")
    bound = distinctness_bound(spec, m)
    if mode == EXHAUSTIVE:
        found = _min_subset(spec, m - 1, EXHAUSTIVE, 0, 0, workers, ())
        if found is None:
            return VerifyReport("distinct", True, 0, None, None, time.perf_counter() - start)
        best, subset, seen = found
        msgs = [_engine.message_vector(j, spec.p, spec.k) for j in subset]
        y = plurality_word(spec, msgs)
        wt = build_hypergraph(spec, y, msgs).weight
        if wt != m * spec.n - best - spec.n:
            raise AssertionError("plurality weight disagrees with the scan")
        worst = {"messages": [list(v) for v in msgs], "received": [list(b) for b in y], "weight": wt}
        return VerifyReport("distinct", wt < bound, seen, bound - wt, worst, time.perf_counter() - start)
    if mode != SAMPLED:
        raise ValueError(f"unknown mode {mode!r}")
    rng = SplitMix64(seed)
    best = None
    seen = 0
    for _ in range(count):
        msgs = clustered_messages(spec, rng, m)
        for y in (plurality_word(spec, msgs), mixed_word(spec, rng, msgs)):
            wt = build_hypergraph(spec, y, msgs).weight
            seen += 1
            if best is None or wt > best[0]:
                best = (wt, msgs, y)
    wt, msgs, y = best
    worst = {"messages": [list(v) for v in msgs], "received": [list(b) for b in y], "weight": wt}
    return VerifyReport("distinct", wt < bound, seen, bound - wt, worst, time.perf_counter() - start)


# -- algebraic property sweeps ----------------------------------------------


def random_poly(field: Field, rng: SplitMix64, max_deg: int) -> Poly:
    return Poly(field, random_vec(rng, field.p, rng.randint(0, max_deg + 1)))


def check_hasse_identities(field: Field, count: int = 500, seed: int = 0, max_deg: int = 10) -> VerifyReport:
    """Additivity, homogeneity, composition, product rule, the block-multiplicity
    claim, and agreement of both root-multiplicity algorithms."""
    start = time.perf_counter()
    rng = SplitMix64(seed)
    p = field.p
    failures = []
    for t in range(count):
        f, g = random_poly(field, rng, max_deg), random_poly(field, rng, max_deg)
        a = rng.randbelow(p)
        i, j = rng.randint(0, 6), rng.randint(0, 6)
        H = hasse_derivative
        checks = {
            "sum": H(f, i) + H(g, i) == H(f + g, i),
            "scalar": H(f, i).scale(a) == H(f.scale(a), i),
            "compose": H(H(f, i), j) == H(f, i + j).scale(binomial_mod(i + j, i, p)),
            "product": H(f * g, i)
            == sum((H(f, u) * H(g, i - u) for u in range(i + 1)), Poly.zero(field)),
        }
        alpha = rng.randbelow(p)
        s = rng.randint(1, 5)
        base = random_poly(field, rng, 4)
        while not base or poly_eval(base, alpha) == 0:
            base = random_poly(field, rng, 4)
        F = Poly(field, (-alpha, 1)) ** s * base
        checks["claim"] = all(
            not H(F, jj) or root_multiplicity(H(F, jj), alpha) >= s - jj for jj in range(s)
        )
        if f:
            checks["multiplicity"] = root_multiplicity(f, alpha, "division") == root_multiplicity(
                f, alpha, "hasse"
            )
        bad = [name for name, ok in checks.items() if not ok]
        if bad:
            failures.append({"instance": t, "failed": bad, "f": list(f.coeffs), "g": list(g.coeffs), "i": i, "j": j})
    return VerifyReport(
        "hasse", not failures, count, None, failures[0] if failures else None,
        time.perf_counter() - start,
    )


def _random_tuple(field: Field, rng: SplitMix64, r: int, k: int) -> list[tuple[int, ...]]:
    p = field.p
    vecs = [random_vec(rng, p, k) for _ in range(r)]
    if r > 1 and rng.randbelow(2):
        # force a dependency: last vector is a combination of the others
        coeffs = [rng.randbelow(p) for _ in range(r - 1)]
        vecs[-1] = tuple(sum(c * v[t] for c, v in zip(coeffs, vecs)) % p for t in range(k))
    return vecs


def check_wronskian_criterion(
    field: Field, count: int = 1000, seed: int = 0, mode: str = FOLDED, r_max: int = 3, k_max: int = 4
) -> VerifyReport:
    """Wronskian independence test against the Gaussian-elimination rank."""
    start = time.perf_counter()
    rng = SplitMix64(seed)
    k_max = min(k_max, field.p - 1)
    mismatches = []
    for t in range(count):
        r, k = rng.randint(1, r_max), rng.randint(1, k_max)
        vecs = _random_tuple(field, rng, r, k)
        if independence_test(field, vecs, mode) != (geometry.rank(vecs, field.p) == r):
            mismatches.append({"instance": t, "vectors": [list(v) for v in vecs]})
    return VerifyReport(
        f"wronskian-{mode}", not mismatches, count, None, mismatches[0] if mismatches else None,
        time.perf_counter() - start,
    )


def _random_invertible(rng: SplitMix64, ell: int, p: int) -> list[list[int]]:
    while True:
        A = [[rng.randbelow(p) for _ in range(ell)] for _ in range(ell)]
        if geometry.rank(A, p) == ell:
            return A


def rebase(rng: SplitMix64, basis, p: int, extra: int = 2) -> list[tuple[int, ...]]:
    """A shuffled, rescaled generating set of span(basis) with redundant members."""
    ell, k = len(basis), len(basis[0])
    A = _random_invertible(rng, ell, p)
    gens = [tuple(sum(A[r][c] * basis[c][t] for c in range(ell)) % p for t in range(k)) for r in range(ell)]
    for _ in range(rng.randbelow(extra + 1)):
        coeffs = [rng.randbelow(p) for _ in range(ell)]
        gens.append(tuple(sum(c * b[t] for c, b in zip(coeffs, basis)) % p for t in range(k)))
    scales = [rng.randint(1, p - 1) for _ in gens]
    gens = [tuple(c * x % p for x in v) for c, v in zip(scales, gens)]
    rng.shuffle(gens)
    return gens


def check_basis_invariance(
    field: Field, spans: int = 100, rebasings: int = 100, seed: int = 0, mode: str = FOLDED,
    l_max: int = 3, k_max: int = 4,
) -> VerifyReport:
    """Geometric polynomial is identical across random generating sets of one span."""
    start = time.perf_counter()
    rng = SplitMix64(seed)
    p = field.p
    k_max = min(k_max, p - 1)
    failures = []
    for t in range(spans):
        k = rng.randint(1, k_max)
        ell = rng.randint(1, min(l_max, k))
        basis = [random_vec(rng, p, k) for _ in range(ell)]
        while geometry.rank(basis, p) != ell:
            basis = [random_vec(rng, p, k) for _ in range(ell)]
        ref = geometric_poly(field, basis, mode)
        for _ in range(rebasings):
            gens = rebase(rng, basis, p)
            if geometric_poly(field, gens, mode) != ref:
                failures.append({"span": t, "basis": [list(b) for b in basis], "generators": [list(g) for g in gens]})
                break
    return VerifyReport(
        f"basis-invariance-{mode}", not failures, spans * rebasings, None,
        failures[0] if failures else None, time.perf_counter() - start,
    )


def transversals_ok(vectors, parts, p: int, ell: int) -> bool:
    return all(
        geometry.affine_dim([vectors[i] for i in pick], p) == ell
        for pick in itertools.product(*parts)
    )


def check_partition_lemma(count: int = 500, seed: int = 0, primes=(2, 3, 5, 7), k_max: int = 4, L_max: int = 5) -> VerifyReport:
    """Every transversal of the flats partition has affine dimension l."""
    start = time.perf_counter()
    rng = SplitMix64(seed)
    failures = []
    for t in range(count):
        p = rng.choice(primes)
        k = rng.randint(1, k_max)
        L = rng.randint(1, min(L_max, p**k - 1))
        idx = rng.distinct(p**k - 1, L)
        vecs = [(0,) * k] + [_engine.message_vector(j + 1, p, k) for j in idx]
        rng.shuffle(vecs)
        ell = geometry.rank(vecs, p)
        parts = geometry.flats_partition(vecs, p)
        ok = (
            len(parts) == ell + 1
            and sorted(i for part in parts for i in part) == list(range(len(vecs)))
            and all(parts)
            and transversals_ok(vecs, parts, p, ell)
        )
        if not ok:
            failures.append({"instance": t, "p": p, "vectors": [list(v) for v in vecs], "parts": parts})
    return VerifyReport(
        "partition", not failures, count, None, failures[0] if failures else None,
        time.perf_counter() - start,
    )


def check_affine_oracle(p: int, k: int = 2, max_size: int = 4) -> VerifyReport:
    """affine_dim against the affine-span brute force on all small subsets of F_p^k."""
    start = time.perf_counter()
    space = list(itertools.product(range(p), repeat=k))
    failures = []
    n = 0
    for size in range(1, max_size + 1):
        for sub in itertools.combinations(space, size):
            n += 1
            if geometry.affine_dim(sub, p) != geometry.affine_dim_oracle(sub, p):
                failures.append([list(v) for v in sub])
    return VerifyReport(
        "affine-oracle", not failures, n, None, {"subset": failures[0]} if failures else None,
        time.perf_counter() - start,
    )


__all__ = [
    "VerifyReport",
    "verify_list_decodability",
    "search_worst",
    "check_root_count",
    "check_loss_bound",
    "check_distinctness_lemma",
    "sweep_root_count",
    "sweep_loss_bound",
    "check_hasse_identities",
    "check_wronskian_criterion",
    "check_basis_invariance",
    "check_partition_lemma",
    "check_affine_oracle",
    "recheck_witness",
]
