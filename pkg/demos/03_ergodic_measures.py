"""Classify the ergodic invariant measures of a diagram, exactly.

Each primitive stream carries one ergodic measure; it is a finite
(probability) measure exactly when the stream outgrows everything that
feeds into it.  Rays are exact rational eigenvector sequences whenever
the per-period eigenvalue is rational, and every verdict ships a witness
that re-verifies.
"""

from adic import classify_measures, CentralMeasure, constant
from adic.gallery import chacon


def main():
    for mat in ([[2, 1], [0, 3]], [[3, 1], [0, 2]], [[1, 1], [0, 3]]):
        cls = classify_measures(constant(mat, ["0", "1"]))
        print("%s: %d finite, %d infinite"
              % (mat, cls.finite_count, cls.infinite_count))
        for e in cls.measures:
            tag = "atomic, " if e.atomic else ""
            print("   stream %d: %s(%s) ray0=%s"
                  % (e.stream.index, tag,
                     "Finite" if e.finite else "Infinite",
                     dict(e.ray.ray0) if e.ray is not None else None))

    # Chacon in detail: the distinguished ray is exactly (1/3, 2/3)
    d = chacon()
    cls = classify_measures(d.seq)
    nonatomic = [e for e in cls.measures if not e.atomic][0]
    mu = CentralMeasure(cls.seq, nonatomic.ray)
    print("chacon nonatomic ray:", dict(nonatomic.ray.ray0))
    print("ray re-verifies:", nonatomic.ray.check())
    word = [(0, "1", "1", 0), (1, "1", "1", 2)]
    print("mass of a depth-2 cylinder:", mu.cylinder_mass(word))
    atomic = [e for e in cls.measures if e.atomic][0]
    print("atomic measure sits on:", atomic.atom)


if __name__ == "__main__":
    main()
