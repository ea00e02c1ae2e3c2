import itertools
import random
from fractions import Fraction

import pytest

from foldcodes.codes import encode, hamming_distance, make_spec
from foldcodes.errors import EmptySubset, SpecMismatch
from foldcodes.hypergraph import (
    average_distance,
    build_hypergraph,
    plurality_word,
    restrict,
)


def all_blocks(p, s):
    return list(itertools.product(range(p), repeat=s))


def test_build_examples(frs13):
    f = (0, 1)
    y = encode(frs13, f)
    h = build_hypergraph(frs13, y, [f, (0, 0)])
    assert all(e == {0} for e in h.edges)
    assert h.weight == 0
    h2 = build_hypergraph(frs13, y, [f, f])
    assert h2.weight == frs13.n


def test_build_shape_errors(frs13):
    y = encode(frs13, (0, 1))
    with pytest.raises(SpecMismatch):
        build_hypergraph(frs13, y[:3], [(0, 1)])
    with pytest.raises(SpecMismatch):
        build_hypergraph(frs13, y, [(0, 1, 2)])


def test_block_agreement_needs_degree_s():
    # messages differing by a multiple of the block-0 vanishing polynomial agree there
    spec = make_spec("frs", 13, 3, 4, 4)
    a = spec.alphas[0]
    roots = [a * pow(2, i, 13) % 13 for i in range(3)]
    from foldcodes.field_poly import Poly

    v = Poly.from_roots(spec.field, roots).to_vec(4)
    f, g = (1, 2, 3, 4), tuple((x + y) % 13 for x, y in zip((1, 2, 3, 4), v))
    y = encode(spec, f)
    h = build_hypergraph(spec, y, [f, g])
    assert h.edges[0] == {0, 1}
    assert h.weight == 1


def test_restrict(frs13k4):
    rng = random.Random(1)
    msgs = [tuple(rng.randrange(13) for _ in range(4)) for _ in range(5)]
    y = plurality_word(frs13k4, msgs)
    h = build_hypergraph(frs13k4, y, msgs)
    sub = restrict(h, [0, 2, 3])
    assert all(a <= b for a, b in zip(sub.edges, h.edges))
    assert sub.weight <= h.weight
    assert restrict(h, range(5)).edges == h.edges
    with pytest.raises(EmptySubset):
        restrict(h, [])


def test_weight_vs_edge_sizes(mult13k4):
    rng = random.Random(2)
    for _ in range(100):
        msgs = [tuple(rng.randrange(13) for _ in range(4)) for _ in range(rng.randint(1, 4))]
        h = build_hypergraph(mult13k4, plurality_word(mult13k4, msgs), msgs)
        assert h.weight >= sum(len(e) for e in h.edges) - mult13k4.n


def test_plurality_tie_break(frs13):
    msgs = [(0, 1), (0, 2)]
    y = plurality_word(frs13, msgs)
    words = [encode(frs13, m) for m in msgs]
    assert y == tuple(min(a, b) for a, b in zip(*words))


def test_average_distance_examples(frs13):
    f = (3, 5)
    y = encode(frs13, f)
    assert average_distance(frs13, [f], y) == 0
    assert average_distance(frs13, [(0, 0), (0, 1)], encode(frs13, (0, 0))) == Fraction(1, 2)


@pytest.mark.parametrize("family", ["frs", "mult"])
def test_plurality_minimizes_average_distance(family):
    """Exhaustive over every received word for p=5, s=1, n<=3."""
    p = 5
    for n in (1, 2, 3):
        spec = make_spec(family, p, 1, n, 1)
        blocks = all_blocks(p, 1)
        words = list(itertools.product(blocks, repeat=n))
        for msgs in itertools.combinations([(a,) for a in range(p)], 2):
            best = min(average_distance(spec, msgs, y) for y in words)
            assert average_distance(spec, msgs, plurality_word(spec, msgs)) == best


def test_plurality_minimality_randomized(frs13k4):
    rng = random.Random(8)
    for _ in range(200):
        msgs = [tuple(rng.randrange(13) for _ in range(4)) for _ in range(3)]
        y = plurality_word(frs13k4, msgs)
        d = average_distance(frs13k4, msgs, y)
        words = [encode(frs13k4, m) for m in msgs]
        for _ in range(5):
            z = list(y)
            i = rng.randrange(frs13k4.n)
            z[i] = rng.choice([w[i] for w in words] + [tuple(rng.randrange(13) for _ in range(3))])
            assert average_distance(frs13k4, msgs, tuple(z)) >= d


def test_translate_preserves_agreement(frs13k4):
    rng = random.Random(3)
    msgs = [tuple(rng.randrange(13) for _ in range(4)) for _ in range(3)]
    y = plurality_word(frs13k4, msgs)
    h = build_hypergraph(frs13k4, y, msgs)
    shift = msgs[0]
    moved = h.translate(shift)
    ys = encode(frs13k4, shift)
    y2 = tuple(tuple((a - b) % 13 for a, b in zip(B, S)) for B, S in zip(y, ys))
    again = build_hypergraph(frs13k4, y2, moved.vertices)
    assert again.edges == h.edges
    assert moved.vertices[0] == (0, 0, 0, 0)
    assert hamming_distance(encode(frs13k4, moved.vertices[1]), y2) == hamming_distance(
        encode(frs13k4, msgs[1]), y
    )
