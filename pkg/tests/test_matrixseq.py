import random

import pytest

from adic.errors import (
    IncompatibleAlphabets,
    HorizonExceeded,
    ShapeMismatch,
)
from adic import matrixseq
from adic.matrixseq import (
    GenMatrix,
    Truncated,
    constant,
    from_int_matrices,
    partial_product,
    submatrix_leq,
    gather,
    reduce_sequence,
    is_reduced,
    is_primitive,
    wielandt_bound,
    state_split,
)

from conftest import random_ep_sequence, random_reduced_sequence


def test_matrix_multiplication_hand_oracle():
    a = GenMatrix.from_lists(("x", "y"), ("p", "q"), [[1, 2], [0, 3]])
    b = GenMatrix.from_lists(("p", "q"), ("u",), [[5], [7]])
    c = a.mul(b)
    # [1*5+2*7, 0*5+3*7]
    assert c.entry("x", "u") == 19
    assert c.entry("y", "u") == 21


def test_matrix_alphabet_mismatch():
    a = GenMatrix.from_lists(("x",), ("p",), [[1]])
    b = GenMatrix.from_lists(("z",), ("u",), [[1]])
    with pytest.raises(IncompatibleAlphabets):
        a.mul(b)


def test_partial_product_inclusive():
    seq = constant([[2]], ["0"])
    # product over levels 1..3 inclusive: 2^3
    assert partial_product(seq, 1, 3).entry("0", "0") == 8
    # single level
    assert partial_product(seq, 5, 5).entry("0", "0") == 2


def test_partial_product_associativity_random():
    rng = random.Random(7)
    for _ in range(20):
        seq = random_ep_sequence(rng)
        p = partial_product(seq, 0, 3)
        q = partial_product(seq, 0, 1).mul(partial_product(seq, 2, 3))
        assert p == q


def test_truncated_horizon():
    t = Truncated([GenMatrix.from_lists(("0",), ("0",), [[2]])] * 3)
    assert t.horizon == 3
    with pytest.raises(HorizonExceeded):
        t.matrix(3)


def test_eventually_periodic_phase_and_alphabets():
    seq = from_int_matrices([[[1, 1]], [[1], [1]], [[1, 1]], [[1], [1]]],
                            cycle_from=2,
                            labels=[("0",), ("0", "1"), ("0",), ("0", "1"),
                                    ("0",)])
    assert seq.prefix_len == 2 and seq.period == 2
    assert seq.alphabet(2) == seq.alphabet(4)
    assert seq.matrix(3) == seq.matrix(5)


def test_submatrix_leq_exact():
    base = constant([[2]], ["0"])
    amb = constant([[3]], ["0"])
    assert submatrix_leq(base, amb).is_yes()
    assert submatrix_leq(amb, base).is_no()


def test_submatrix_leq_truncated_undecided():
    base = Truncated([GenMatrix.from_lists(("0",), ("0",), [[2]])] * 2)
    amb = constant([[3]], ["0"])
    v = submatrix_leq(base, amb)
    assert not v.is_decided()
    assert v.horizon == 2


def test_gather_times():
    seq = constant([[2]], ["0"])
    g = gather(seq, times=[0, 2, 5])
    assert g.matrix(0).entry("0", "0") == 4
    assert g.matrix(1).entry("0", "0") == 8


def test_gather_blocks_periodic():
    seq = constant([[1, 1], [1, 0]], ["0", "1"])
    g = gather(seq, blocks=([], [2]))
    assert g.is_eventually_periodic
    # [[1,1],[1,0]]^2 = [[2,1],[1,1]]
    assert g.matrix(0).to_lists() == [[2, 1], [1, 1]]


def test_gather_blocks_validation():
    seq = constant([[2]], ["0"])
    with pytest.raises(ShapeMismatch):
        gather(seq)
    with pytest.raises(ShapeMismatch):
        gather(seq, times=[1, 2])


def test_reduce_drops_dead_symbol():
    # symbol "1" has no outgoing edges on the cycle
    seq = constant([[2, 1], [0, 0]], ["0", "1"])
    red, log = reduce_sequence(seq)
    assert list(red.alphabet(0)) == ["0"]
    assert is_reduced(red)
    assert not is_reduced(seq)


def test_reduce_constant_triangular_is_already_reduced():
    seq = constant([[3, 1], [0, 2]], ["0", "1"])
    red, _ = reduce_sequence(seq)
    assert red.prefix_len == 0
    assert red.matrix(0).to_lists() == [[3, 1], [0, 2]]


def test_reduce_left_dead_symbol():
    # symbol "1" unreachable from level 0: first matrix has zero column
    seq = from_int_matrices([[[1, 0]], [[2, 1], [0, 2]]], cycle_from=1,
                            labels=[("0",), ("0", "1"), ("0", "1")])
    red, _ = reduce_sequence(seq)
    alphas = [set(red.alphabet(i)) for i in range(3)]
    assert alphas[0] == {"0"}
    assert "1" not in alphas[1]


def test_reduce_idempotent_random():
    rng = random.Random(11)
    for _ in range(25):
        red = random_reduced_sequence(rng)
        red2, _ = reduce_sequence(red)
        P = red.prefix_len + 2 * red.period
        for i in range(P):
            assert red2.matrix(i) == red.matrix(i)


def test_is_primitive_positive():
    v = is_primitive(constant([[1, 1], [1, 1]], ["0", "1"]))
    assert v.is_yes()


def test_is_primitive_periodic_cycle_is_no():
    # permutation matrix: irreducible but never positive
    v = is_primitive(constant([[0, 1], [1, 0]], ["0", "1"]))
    assert v.is_no()
    # the witness records the repeated boolean state
    assert v.witness


def test_is_primitive_golden_mean():
    v = is_primitive(constant([[1, 1], [1, 0]], ["0", "1"]))
    assert v.is_yes()


def test_is_primitive_truncated_undecided():
    t = Truncated([GenMatrix.from_lists(("0", "1"), ("0", "1"),
                                        [[1, 1], [1, 0]])] * 2)
    v = is_primitive(t)
    assert not v.is_decided()


def test_wielandt_bound():
    assert wielandt_bound(1) == 1
    assert wielandt_bound(2) == 2
    assert wielandt_bound(3) == 5


def test_state_split_roundtrip_counts():
    seq = constant([[1, 2], [1, 1]], ["0", "1"])
    sp = state_split(seq)
    for i in range(3):
        A, B = sp.pair(i)
        # split factors are 0-1 and recompose to the original matrix
        assert A.is_zero_one() and B.is_zero_one()
        assert A.mul(B) == seq.matrix(i)
        # link matrices connect consecutive edge alphabets
        assert set(sp.link(i).rows) == set(sp.edge_alphabet(i))
        assert set(sp.link(i).cols) == set(sp.edge_alphabet(i + 1))


def test_json_roundtrip_ep():
    seq = from_int_matrices([[[1, 1]], [[2], [1]], [[3]]], cycle_from=2,
                            labels=[("0",), ("0", "1"), ("0",), ("0",)])
    back = matrixseq.from_json(matrixseq.to_json(seq))
    assert back.prefix_len == seq.prefix_len
    assert back.period == seq.period
    for i in range(4):
        assert back.matrix(i) == seq.matrix(i)


def test_json_roundtrip_truncated():
    t = Truncated([GenMatrix.from_lists(("0",), ("0", "1"), [[1, 2]]),
                   GenMatrix.from_lists(("0", "1"), ("0",), [[1], [3]])])
    back = matrixseq.from_json(matrixseq.to_json(t))
    assert back.horizon == 2
    for i in range(2):
        assert back.matrix(i) == t.matrix(i)


def test_reduce_preserves_path_counts_into_surviving():
    rng = random.Random(23)
    for _ in range(15):
        seq = random_ep_sequence(rng)
        try:
            red, _ = reduce_sequence(seq)
        except Exception:
            continue
        if not all(red.alphabet(i) for i in range(red.prefix_len + 2)):
            continue
        # reduced matrices are restrictions: entries agree on kept symbols
        for i in range(red.prefix_len + red.period):
            m, r = seq.matrix(i), red.matrix(i)
            for a in r.rows:
                for b in r.cols:
                    assert r.entry(a, b) == m.entry(a, b)
