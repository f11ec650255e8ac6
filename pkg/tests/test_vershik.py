import math
import random
from fractions import Fraction

import pytest

from adic.errors import NotInBase, UndeterminedTail
from adic.matrixseq import constant, from_int_matrices
from adic.diagram import BratteliDiagram, enumerate_paths
from adic.measures import classify_measures, CentralMeasure
from adic.vershik import (
    LazyPath,
    min_word_into,
    max_word_into,
    successor,
    predecessor,
    extremal_paths,
    SubdiagramEmbedding,
    anti_lex_rank,
    return_time,
    cyclic_return_time,
    kac_partial_sum,
    kac_partial_sum_brute,
    simulate_orbit,
)
from adic.gallery import chacon, ics, odometer

from conftest import random_reduced_sequence


def dyadic():
    return odometer(2)


# ---------------------------------------------------------------------------
# paths and ranks


def test_min_max_word_into():
    d = BratteliDiagram(constant([[2]], ["0"]))
    assert min_word_into(d, "0", 2) == ((0, "0", "0", 0), (1, "0", "0", 0))
    assert max_word_into(d, "0", 2) == ((0, "0", "0", 1), (1, "0", "0", 1))


def test_rank_is_bijective_per_endpoint_class_random():
    rng = random.Random(13)
    for _ in range(15):
        seq = random_reduced_sequence(rng, max_dim=3)
        d = BratteliDiagram(seq)
        for depth in (2, 4):
            classes = {}
            for w in enumerate_paths(d, depth):
                classes.setdefault(w[-1][2], []).append(
                    anti_lex_rank(d, w))
            for ranks in classes.values():
                assert sorted(ranks) == list(range(len(ranks)))


def _any_tail(d, vertex, level):
    """Some valid periodic continuation from `vertex` at `level`: follow
    first available edges until a (phase, vertex) state repeats."""
    seq = d.seq
    P, T = seq.prefix_len, seq.period
    seen = {}
    edges = []
    k, cur = level, vertex
    while True:
        key = ((k - P) % T, cur)
        if key in seen:
            i = seen[key]
            return tuple(edges[:i]), tuple(edges[i:])
        seen[key] = len(edges)
        m = seq.matrix(k)
        b = next(b for b in m.cols if m.entry(cur, b))
        edges.append((k, cur, b, 0))
        k += 1
        cur = b


def test_successor_matches_rank_plus_one_random():
    rng = random.Random(19)
    for _ in range(10):
        seq = random_reduced_sequence(rng, max_dim=3)
        d = BratteliDiagram(seq)
        depth = 4
        classes = {}
        for w in enumerate_paths(d, depth):
            classes.setdefault(w[-1][2], []).append(w)
        for words in classes.values():
            size = len(words)
            for w in words:
                r = anti_lex_rank(d, w)
                if r == size - 1:
                    continue  # class-maximal word
                pad, cycle = _any_tail(d, w[-1][2], depth)
                p = LazyPath(d, list(w) + list(pad), tail_cycle=cycle)
                s = successor(p)
                sw = s.word(depth)
                assert sw[-1][2] == w[-1][2]
                assert anti_lex_rank(d, sw) == r + 1
                # predecessor inverts the step
                back = predecessor(s)
                assert back.word(depth) == tuple(w)


def test_dyadic_orbit_counts_in_binary():
    d = dyadic()
    p = LazyPath(d, [], tail="min", start_vertex="0")
    for n in range(8):
        bits = tuple((n >> k) & 1 for k in range(3))
        assert tuple(e[3] for e in p.word(3)) == bits
        p = successor(p)


def test_successor_none_on_all_max():
    d = chacon()
    top = LazyPath(d, [], tail_cycle=[(0, "1", "1", 2)])
    assert successor(top) is None
    fixed = LazyPath(d, [], tail_cycle=[(0, "0", "0", 0)])
    assert successor(fixed) is None  # the isolated fixed path


def test_extremal_paths_chacon():
    d = chacon()
    mins, maxs = extremal_paths(d)
    min_pats = sorted(p.tail_cycle[0][1:] for p in mins)
    max_pats = sorted(p.tail_cycle[0][1:] for p in maxs)
    assert min_pats == [("0", "0", 0), ("1", "1", 0)]
    assert max_pats == [("0", "0", 0), ("1", "1", 2)]


def test_extremal_paths_bounded_by_alphabet():
    rng = random.Random(37)
    for _ in range(15):
        seq = random_reduced_sequence(rng, max_dim=3)
        d = BratteliDiagram(seq)
        mins, maxs = extremal_paths(d)
        bound = seq.liminf_alphabet_size()
        assert 1 <= len(mins) <= bound
        assert 1 <= len(maxs) <= bound
        for p in mins + maxs:
            # the tails really are extremal edge by edge
            for k in range(p.tail_start, p.tail_start + len(p.tail_cycle)):
                e = p.edge(k)
                if p in mins:
                    assert d.order.is_min(e)
                else:
                    assert d.order.is_max(e)


# ---------------------------------------------------------------------------
# embeddings and return times


def test_embedding_rejects_non_nested():
    amb = BratteliDiagram(constant([[2]], ["0"]))
    with pytest.raises(NotInBase):
        SubdiagramEmbedding(amb, constant([[3]], ["0"]))


def test_return_time_identity_embedding_is_one():
    d = dyadic()
    emb = SubdiagramEmbedding(d, d.seq)
    assert return_time(emb, [(0, "0", "0", 0)]) == 1


def test_cyclic_return_times_triadic():
    emb = ics("triadic")
    # base edges are the ambient indices 0 and 2; 0 -> 2 takes two steps,
    # 2 wraps around to 0 in one
    assert cyclic_return_time(emb, ((0, "0", "0", 0),)) == 2
    assert cyclic_return_time(emb, ((0, "0", "0", 2),)) == 1


def test_return_time_infinite_on_base_maximal_path():
    emb = ics("triadic")
    p = LazyPath(emb.ambient, [], tail_cycle=[(0, "0", "0", 2)])
    assert return_time(emb, p) == math.inf


def test_return_time_undetermined_on_short_maximal_word():
    emb = ics("triadic")
    with pytest.raises(UndeterminedTail):
        return_time(emb, [(0, "0", "0", 2)])


def _base_measure(seq):
    cls = classify_measures(seq)
    (e,) = cls.measures
    return CentralMeasure(cls.seq, e.ray)


def test_kac_sums_triadic_growth():
    emb = ics("triadic")
    mu = _base_measure(emb.base_seq)
    prev = Fraction(0)
    for d in range(1, 7):
        s = kac_partial_sum(emb, mu, d)
        assert s == Fraction(3, 2) ** d
        assert s >= prev
        prev = s
        if d <= 5:
            assert s == kac_partial_sum_brute(emb, mu, d)
    assert kac_partial_sum(emb, mu, 18) > 10 ** 3


def test_kac_sums_finite_pair_stabilize():
    amb = from_int_matrices([[[3]], [[2]]], cycle_from=1,
                            labels=[("0",), ("0",), ("0",)])
    emb = SubdiagramEmbedding(BratteliDiagram(amb), constant([[2]], ["0"]))
    mu = _base_measure(emb.base_seq)
    for d in range(1, 11):
        assert kac_partial_sum(emb, mu, d) == Fraction(3, 2)
    assert kac_partial_sum_brute(emb, mu, 4) == Fraction(3, 2)


# ---------------------------------------------------------------------------
# orbit simulation


def test_simulate_dyadic_uniform():
    d = dyadic()
    p = LazyPath(d, [], tail="min", start_vertex="0")
    out = simulate_orbit(p, 3, depth=2)
    assert out["steps_performed"] == 3
    assert len(out["visits"]) == 4
    assert all(f == Fraction(1, 4) for f in out["frequencies"].values())


def test_simulate_stops_at_top():
    d = chacon()
    top = LazyPath(d, [], tail_cycle=[(0, "1", "1", 2)])
    out = simulate_orbit(top, 10, depth=1)
    assert out["steps_performed"] == 0


def test_simulate_chacon_frequencies_track_measure():
    d = chacon()
    p = LazyPath(d, [], tail="min", start_vertex="1")
    out = simulate_orbit(p, 2000, depth=1)
    cls = classify_measures(d.seq)
    ray = [e.ray for e in cls.measures if not e.atomic][0]
    mu = CentralMeasure(cls.seq, ray)
    for w, f in out["frequencies"].items():
        assert abs(f - mu.cylinder_mass(list(w))) < Fraction(1, 50)
