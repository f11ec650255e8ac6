"""Nested diagrams: does the base's invariant measure extend finitely?

A base diagram sitting entrywise inside an ambient one defines a tower;
its total mass is decided exactly via the canonical cover construction.
Scalar nested families (adding machines, rotation diagrams) are decided
in pure integer arithmetic.
"""

from adic import canonical_cover, classify_subdiagram, two_by_two_series
from adic.matrixseq import constant
from adic.gallery import (
    nested_odometer,
    nested_rotation,
    rotation_lambda_interval,
)


def main():
    # the canonical cover of [2] inside [3] is the familiar [[3,1],[0,2]]
    cov = canonical_cover(constant([[2]], ["0"]), constant([[3]], ["0"]))
    print("cover of [2] <= [3]:", cov.cover.matrix(0).to_lists())

    res = classify_subdiagram(constant([[2]], ["0"]), constant([[3]], ["0"]))
    print("tower of [2] inside [3]:", res[0])

    # the scalar series behind the 2x2 verdicts
    s = two_by_two_series(2, 3, 1)
    print("series(2,3,1):", s.verdict, "limit", s.limit)
    s = two_by_two_series(3, 2, 1)
    print("series(3,2,1):", s.verdict,
          "partial sum at n=40:", s.partial_sums[-1])

    # nested adding machines: digits (2,1) inside constant 2 grow apart
    print("odometer (2,1) in 2:", nested_odometer(2, [2, 1]).verdict)
    print("odometer equal tails:", nested_odometer(([3], [2]), 2).verdict)

    # nested rotation diagrams from continued-fraction partial quotients;
    # the frequencies are enclosed in certified rational intervals
    r = nested_rotation(1, 2)
    print("rotation 1 in 2:", r.verdict)
    lo, hi = rotation_lambda_interval(1, 20)
    print("lambda([1;1,1,...]) in [%s, %s], width %s"
          % (lo, hi, float(hi - lo)))


if __name__ == "__main__":
    main()
