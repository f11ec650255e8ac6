import random
from fractions import Fraction

from adic.matrixseq import constant
from adic.frobenius import stream_decompose
from adic.cones import (
    in_convex_hull,
    simplex_image,
    raw_extreme_count,
    extreme_count,
    periodic_pf,
    exact_ray,
    stream_base_ray,
    stream_period_eigenvalue,
    DEFAULT_EPS,
)

from conftest import random_reduced_sequence


def test_in_convex_hull_exact():
    pts = [{"x": Fraction(1), "y": Fraction(0)},
           {"x": Fraction(0), "y": Fraction(1)}]
    mid = {"x": Fraction(1, 2), "y": Fraction(1, 2)}
    out = {"x": Fraction(2), "y": Fraction(-1)}
    assert in_convex_hull(mid, pts, ["x", "y"])
    assert not in_convex_hull(out, pts, ["x", "y"])


def test_simplex_image_dedups_directions():
    seq = constant([[2]], ["0"])
    img = simplex_image(seq, 0, 5)
    assert len(img) == 1


def test_raw_extreme_count_triangular():
    seq = constant([[3, 1], [0, 2]], ["0", "1"])
    assert raw_extreme_count(seq, 6) == 2


def test_extreme_count_exact_ep():
    count, info = extreme_count(constant([[1, 1], [0, 3]], ["0", "1"]), 8)
    assert count == 2
    assert info["exact"] == 2
    count2, _ = extreme_count(constant([[3, 1], [0, 2]], ["0", "1"]), 8)
    assert count2 == 1  # only one finite ergodic measure


def test_extreme_count_positive_primitive_is_one():
    count, _ = extreme_count(constant([[2, 1], [1, 1]], ["0", "1"]), 4)
    assert count == 1


def test_extreme_count_bounded_by_liminf_random():
    rng = random.Random(3)
    for _ in range(30):
        seq = random_reduced_sequence(rng)
        count, info = extreme_count(seq, 6)
        assert count <= seq.liminf_alphabet_size()
        for d in range(1, 6):
            assert raw_extreme_count(seq, d) <= max(
                len(seq.alphabet(i)) for i in range(d + 1))


def test_periodic_pf_integer_eigenvalue():
    pf = periodic_pf(constant([[6]], ["0"]).matrix(0), DEFAULT_EPS)
    lo, hi = pf["eigenvalue"]
    assert lo <= 6 <= hi
    assert hi - lo <= DEFAULT_EPS


def test_periodic_pf_golden_mean():
    pf = periodic_pf(constant([[1, 1], [1, 0]], ["0", "1"]).matrix(0),
                     Fraction(1, 10 ** 12))
    lo, hi = pf["eigenvalue"]
    # phi is the positive root of x^2 = x + 1
    assert lo * lo < lo + 1
    assert hi * hi > hi + 1
    assert hi - lo <= Fraction(1, 10 ** 12)
    box = pf["eigenvector_box"]
    # eigenvector ratio w0/w1 = phi: w0 > w1 strictly
    assert box["0"][0] > box["1"][1]


def test_stream_period_eigenvalues_triangular():
    seq = constant([[3, 1], [0, 2]], ["0", "1"])
    dec = stream_decompose(seq)
    lams = sorted(stream_period_eigenvalue(s) for s in dec.streams)
    assert lams == [Fraction(2), Fraction(3)]


def test_exact_ray_satisfies_relations():
    seq = constant([[1, 1], [0, 3]], ["0", "1"])
    dec = stream_decompose(seq)
    # the stream containing symbol "1" carries the nonatomic measure
    target = [s for s in dec.streams
              if "1" in s.members_at(dec.valid_from)][0]
    ray = exact_ray(dec, target)
    assert ray.check()
    assert ray.ray0 == {"0": Fraction(1, 3), "1": Fraction(2, 3)}
    assert ray.eigenvalue == Fraction(3)


def test_stream_base_ray_supported_on_stream():
    seq = constant([[3, 1], [0, 2]], ["0", "1"])
    dec = stream_decompose(seq)
    target = [s for s in dec.streams
              if "1" in s.members_at(dec.valid_from)][0]
    ray = stream_base_ray(dec, target)
    assert ray.check()
    assert ray.ray0 == {"0": Fraction(0), "1": Fraction(1)}


def test_exact_rays_random_check():
    rng = random.Random(41)
    checked = 0
    for _ in range(30):
        seq = random_reduced_sequence(rng, max_dim=3)
        dec = stream_decompose(seq)
        for s in dec.streams:
            lam = stream_period_eigenvalue(s)
            if lam is None:
                continue  # irrational eigenvalue: no rational ray
            try:
                ray = exact_ray(dec, s)
            except Exception:
                continue
            assert ray.check()
            checked += 1
    assert checked >= 10
