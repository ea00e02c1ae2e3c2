import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from foldcodes import _engine
from foldcodes.codes import encode, hamming_distance, make_spec, radius_bound
from foldcodes.errors import (
    BadM,
    InstanceTooLarge,
    ListExceedsFolding,
    NotDistinct,
    VertexCountTooLarge,
    ZeroMissing,
)
from foldcodes.field_poly import Field, Poly
from foldcodes.hypergraph import average_distance, build_hypergraph, plurality_word
from foldcodes.rng import SplitMix64
from foldcodes.verify import (
    SAMPLED,
    check_affine_oracle,
    check_basis_invariance,
    check_distinctness_lemma,
    check_loss_bound,
    check_partition_lemma,
    check_root_count,
    check_wronskian_criterion,
    recheck_witness,
    search_worst,
    sweep_loss_bound,
    sweep_root_count,
    verify_list_decodability,
)

@pytest.fixture(scope="module")
def small():
    """FRS over F_5, s=2, n=2, k=2: 25 messages."""
    return make_spec("frs", 5, 2, 2, 2)


@pytest.fixture(scope="module")
def small_mult():
    return make_spec("mult", 5, 2, 2, 2)


# -- rng ---------------------------------------------------------------------


def test_splitmix_reference_values():
    r = SplitMix64(0)
    assert r.next_u64() == 0xE220A8397B1DCDAF
    assert r.next_u64() == 0x6E789E6AA1B965F4


def test_rng_bounded_draws():
    r = SplitMix64(5)
    draws = [r.randbelow(7) for _ in range(2000)]
    assert set(draws) == set(range(7))
    assert all(0 <= r.randbelow(3**50) < 3**50 for _ in range(50))
    picks = r.distinct(10, 10)
    assert sorted(picks) == list(range(10))
    with pytest.raises(ValueError):
        r.randbelow(0)


# -- engine ------------------------------------------------------------------


def test_message_index_roundtrip():
    for j in range(125):
        v = _engine.message_vector(j, 5, 3)
        assert _engine.message_index(v, 5) == j
    assert _engine.message_vector(7, 5, 2) == (2, 1)


def test_colex_against_itertools():
    for N, m in [(6, 1), (7, 3), (9, 4)]:
        combos = sorted(itertools.combinations(range(N), m), key=lambda c: c[::-1])
        for r, c in enumerate(combos):
            assert _engine.colex_rank(c) == r
            assert _engine.colex_unrank(r, m) == c
        tables = _engine._binom_tables(N, m)
        block = _engine._unrank_block(np.arange(len(combos), dtype=np.int64), m, tables)
        assert [tuple(row) for row in block] == combos


def scalar_distance(spec, subset):
    msgs = [_engine.message_vector(j, spec.p, spec.k) for j in subset]
    y = plurality_word(spec, msgs)
    return sum(sum(a != b for a, b in zip(encode(spec, m), y)) for m in msgs)


@pytest.mark.parametrize("fixture", ["small", "small_mult"])
def test_vectorized_matches_scalar(fixture, request):
    spec = request.getfixturevalue(fixture)
    table = _engine.block_table(spec)
    combos = np.array(list(itertools.combinations(range(spec.num_messages), 3))[::37])
    dists = _engine.plurality_distances(table, combos)
    assert [int(d) for d in dists] == [scalar_distance(spec, c) for c in combos]


def test_scan_workers_agree(small):
    table = _engine.block_table(small)
    single = _engine.scan_all(table, 3, 1)
    assert _engine.scan_all(table, 3, 3) == single
    lo = _engine.scan_range(table, 3, 0, 1000)
    hi = _engine.scan_range(table, 3, 1000, math.comb(25, 3))
    assert min([lo, hi], key=lambda r: (r[0], r[1])) == single


# -- list decodability -------------------------------------------------------


@pytest.mark.parametrize("fixture", ["small", "small_mult"])
def test_main_passes_at_radius_bound(fixture, request):
    spec = request.getfixturevalue(fixture)
    for L in (1, 2):
        rho = radius_bound(L, spec.s, spec.rate)
        rep = verify_list_decodability(spec, L, rho)
        assert rep.passed and rep.margin > 0
        assert rep.instances == math.comb(25, L + 1)
        assert recheck_witness(spec, rep.worst) == rho + rep.margin


def test_rho_monotonicity(small):
    grid = [Fraction(t, 8) for t in range(1, 9, 2)] + [Fraction(1)]
    results = [verify_list_decodability(small, 1, rho).passed for rho in grid]
    for a, b in zip(results, results[1:]):
        assert a or not b  # pass at a larger rho implies pass at smaller
    assert results[0] and not results[-1]


def test_rho_one_fails(small):
    rep = verify_list_decodability(small, 1, Fraction(1))
    assert not rep.passed
    assert rep.worst is not None and rep.margin <= 0


def test_vacuous_pass():
    # MULT allows s >= p: two messages, L+1 = 3
    spec = make_spec("mult", 2, 5, 1, 1)
    rep = verify_list_decodability(spec, 2, Fraction(0))
    assert rep.passed and rep.instances == 0 and rep.worst is None
    assert verify_list_decodability(spec, 2, Fraction(0), SAMPLED, count=10).passed
    rep = search_worst(make_spec("frs", 5, 2, 2, 1), 5)
    assert rep.passed and rep.instances == 0 and rep.worst is None


def test_sampled_agrees_when_it_draws_the_worst(small):
    L = 2
    ex = verify_list_decodability(small, L, Fraction(1, 2))
    sa = verify_list_decodability(
        small, L, Fraction(1, 2), SAMPLED, count=50, seed=3, include=[ex.worst["indices"]]
    )
    assert sa.passed == ex.passed
    assert sa.margin == ex.margin
    assert sa.instances == 51


def test_sampled_deterministic(small):
    a = search_worst(small, 2, SAMPLED, count=200, seed=9)
    b = search_worst(small, 2, SAMPLED, count=200, seed=9)
    assert a.to_json(stable=True) == b.to_json(stable=True)


def test_search_constants():
    spec = make_spec("frs", 13, 3, 4, 1)
    rep = search_worst(spec, 1)
    msgs = [tuple(v) for v in rep.worst["messages"]]
    # distinct constants disagree on every block ...
    assert hamming_distance(encode(spec, msgs[0]), encode(spec, msgs[1])) == spec.n
    # ... so the plurality word sits at distance n from exactly one of them
    assert recheck_witness(spec, rep.worst) == Fraction(1, 2)
    assert rep.worst["indices"] == [0, 1]


def test_search_reports_gap(small):
    rep = search_worst(small, 2)
    assert rep.margin == recheck_witness(small, rep.worst) - radius_bound(2, 2, small.rate)
    assert rep.margin > 0
    assert search_worst(small, 3).margin is None  # L > s: bound does not apply


def test_main_errors(small, frs13):
    with pytest.raises(ListExceedsFolding):
        verify_list_decodability(small, 3, Fraction(1, 2))
    big = make_spec("frs", 13, 3, 4, 4)
    with pytest.raises(InstanceTooLarge):
        verify_list_decodability(big, 1, Fraction(1, 2))
    with pytest.raises(InstanceTooLarge):
        verify_list_decodability(make_spec("frs", 13, 3, 4, 3), 3, Fraction(1, 2))
    with pytest.raises(NotDistinct):
        verify_list_decodability(small, 1, Fraction(1, 2), SAMPLED, count=0, include=[[1, 1]])


def test_report_json_shape(small):
    rep = verify_list_decodability(small, 1, Fraction(1, 2))
    d = rep.to_dict(stable=True)
    assert list(d) == ["theorem", "pass", "instances", "margin", "worst", "elapsed_ms"]
    assert d["elapsed_ms"] == 0
    assert set(d["margin"]) == {"num", "den"}


# -- root count and loss -----------------------------------------------------


def test_root_count_example():
    """All edges full at block 0: f = prod (X - gamma^i alpha_1), k = s+1."""
    spec = make_spec("frs", 13, 3, 4, 4)
    a = spec.alphas[0]
    f = Poly.from_roots(spec.field, [a * pow(2, i, 13) % 13 for i in range(3)]).to_vec(4)
    zero = (0, 0, 0, 0)
    y = encode(spec, zero)
    h = build_hypergraph(spec, y, [zero, f])
    rep = check_root_count(h)
    assert h.edges[0] == {0, 1}
    assert rep.passed
    assert rep.worst["required"] == 3 and rep.worst["roots"] >= 3


def test_root_count_requires_zero(frs13k4):
    y = encode(frs13k4, (1, 0, 0, 0))
    with pytest.raises(ZeroMissing):
        check_root_count(build_hypergraph(frs13k4, y, [(1, 0, 0, 0), (2, 0, 0, 0)]))


def test_loss_examples():
    e1, e2 = (1, 0), (0, 1)
    rep = check_loss_bound([(0, 0), e1], [{0, 1}], s=3, k=4, p=13)
    assert rep.passed and rep.worst["loss"] == 0
    # precondition fails: the pair {0, e1} already has weight 2 >= 4/3
    rep = check_loss_bound([(0, 0), e1, e2], [{0, 1}, {0, 1}, set()], s=3, k=2, p=13)
    assert rep.skipped == 1 and rep.instances == 0 and rep.passed
    with pytest.raises(ZeroMissing):
        check_loss_bound([e1, e2], [], 3, 2, 13)
    with pytest.raises(NotDistinct):
        check_loss_bound([(0, 0), e1, e1], [], 3, 2, 13)
    with pytest.raises(ListExceedsFolding):
        check_loss_bound([(0, 0), e1, e2, (1, 1)], [], 2, 2, 13)
    verts = [(0,)] + [(i,) for i in range(1, 8)]
    with pytest.raises(VertexCountTooLarge):
        check_loss_bound(verts, [], 9, 2, 13)


def test_loss_degenerate_edge_counts():
    # three collinear points through 0 in one edge: loss 1, l = 1, L = 2
    verts = [(0, 0), (1, 0), (2, 0)]
    rep = check_loss_bound(verts, [{0, 1, 2}], s=3, k=4, p=13)
    assert rep.worst["loss"] == 1
    assert rep.passed and rep.margin == Fraction(4, 2) - 1


@pytest.mark.parametrize("family", ["frs", "mult"])
def test_sweeps(family):
    spec = make_spec(family, 13, 3, 4, 4)
    a = sweep_root_count(spec, 60, 3, seed=1)
    b = sweep_loss_bound(spec, 60, 3, seed=1)
    assert a.passed and a.instances == 60
    assert b.passed and b.instances == 60
    assert sweep_root_count(spec, 60, 3, seed=1).to_json(True) == a.to_json(True)


# -- distinctness ------------------------------------------------------------


def test_distinctness_pairs_exhaustive(frs13):
    rep = check_distinctness_lemma(frs13, 2)
    assert rep.passed
    assert rep.instances == math.comb(169, 2)
    assert rep.worst["weight"] == 0
    assert rep.margin == Fraction(2, 3)


def test_distinctness_sampled():
    spec = make_spec("frs", 13, 3, 4, 3)
    rep = check_distinctness_lemma(spec, 3, SAMPLED, count=2000, seed=4)
    assert rep.passed and rep.instances == 4000


def test_distinctness_bad_m(frs13):
    for m in (1, 5):
        with pytest.raises(BadM):
            check_distinctness_lemma(frs13, m)


# -- witnesses and property sweeps --------------------------------------------


def test_witness_recheck(small):
    rep = search_worst(small, 1)
    w = rep.worst
    msgs = [tuple(v) for v in w["messages"]]
    assert [_engine.message_index(v, 5) for v in msgs] == w["indices"]
    assert tuple(tuple(b) for b in w["received"]) == plurality_word(small, msgs)
    assert Fraction(w["value"]["num"], w["value"]["den"]) == average_distance(
        small, msgs, plurality_word(small, msgs)
    )


def test_property_sweeps_small():
    F13 = Field(13)
    assert check_wronskian_criterion(F13, 100, 1, "folded").passed
    assert check_wronskian_criterion(F13, 100, 1, "classical").passed
    assert check_basis_invariance(F13, 5, 5, 1).passed
    assert check_partition_lemma(50, 1).passed
    rep = check_affine_oracle(3)
    assert rep.passed and rep.instances == sum(math.comb(9, t) for t in range(1, 5))
