"""Built-in example diagrams used by the golden tests and the CLI.

Each constructor returns ready-made objects (diagrams, orders, nested
pairs) together with the expected classification data recorded next to
them, so tests can compare against fixed targets.
"""

import math
from fractions import Fraction

from .errors import NotNested
from .verdict import Verdict
from .matrixseq import constant, from_int_matrices
from .diagram import BratteliDiagram, substitution_order
from .vershik import SubdiagramEmbedding


def odometer(ns=2):
    """Adding-machine diagram: 1x1 matrices [n_i] with the index order.
    `ns` may be an int (constant), a list (repeated cycle), or a
    (prefix, cycle) pair."""
    if isinstance(ns, int):
        seq = constant([[ns]], ["0"])
    else:
        if isinstance(ns, tuple) and len(ns) == 2 and \
                isinstance(ns[0], (list, tuple)):
            prefix, cycle = ns
        else:
            prefix, cycle = [], list(ns)
        mats = [[[int(n)]] for n in list(prefix) + list(cycle)]
        labels = [("0",)] * (len(mats) + 1)
        seq = from_int_matrices(mats, cycle_from=len(prefix), labels=labels)
    return BratteliDiagram(seq)


def chacon():
    """The Chacon substitution diagram: matrix [[1,1],[0,3]] with the edge
    order read off rho(0) = 0, rho(1) = 1101."""
    seq = constant([[1, 1], [0, 3]], ["0", "1"])
    order = substitution_order(seq, {"0": "0", "1": "1101"})
    diagram = BratteliDiagram(seq, order)
    diagram.expected = {
        "ergodic_measures": 2,
        "distinguished_ray": {"0": Fraction(1, 3), "1": Fraction(2, 3)},
        "atomic_ray": {"0": Fraction(1), "1": Fraction(0)},
    }
    return diagram


def ics(model="cover"):
    """The integer Cantor set inside the triadic odometer.

    model="triadic": the nested pair ([2] <= [3]) with base edges the first
    and third ambient edges (substitution 101 inside an alphabet of three).
    model="cover": the one-diagram model [[3,1],[0,2]] with the order from
    rho(0) = 000, rho(1) = 101."""
    if model == "triadic":
        ambient = BratteliDiagram(constant([[3]], ["0"]))
        base_seq = constant([[2]], ["0"])
        emb = SubdiagramEmbedding(ambient, base_seq,
                                  index_map={("cycle", 0, "0", "0"): [0, 2]})
        return emb
    if model == "cover":
        seq = constant([[3, 1], [0, 2]], ["0", "1"])
        order = substitution_order(seq, {"0": "000", "1": "101"})
        diagram = BratteliDiagram(seq, order)
        diagram.expected = {"finite": 1, "infinite": 1}
        return diagram
    raise ValueError("model must be 'triadic' or 'cover'")


# ---------------------------------------------------------------------------
# nested rotations


def _cf_scalars(spec):
    """Normalize a partial-quotient spec (int | list | (prefix, cycle)) to
    a (prefix, cycle) pair of int lists."""
    if isinstance(spec, int):
        return [], [spec]
    if isinstance(spec, tuple) and len(spec) == 2 and \
            isinstance(spec[0], (list, tuple)):
        return [int(x) for x in spec[0]], [int(x) for x in spec[1]]
    return [], [int(x) for x in spec]


def _cf_term(prefix, cycle, i):
    if i < len(prefix):
        return prefix[i]
    return cycle[(i - len(prefix)) % len(cycle)]


def rotation_matrices(n_prefix, n_cycle, upto):
    """The alternating unipotent matrices of the rotation diagram: level i
    carries [[1,0],[n_i,1]] for even i and [[1,n_i],[0,1]] for odd i."""
    mats = []
    for i in range(upto):
        n = _cf_term(n_prefix, n_cycle, i)
        if i % 2 == 0:
            mats.append([[1, 0], [n, 1]])
        else:
            mats.append([[1, n], [0, 1]])
    return mats


def rotation_diagram(spec):
    prefix, cycle = _cf_scalars(spec)
    P = len(prefix)
    # the alternation has period 2, so the matrix cycle is the scalar cycle
    # stretched to even length
    T = len(cycle) if len(cycle) % 2 == 0 else len(cycle) * 2
    mats = rotation_matrices(prefix, cycle, P + T)
    labels = [("0", "1")] * (P + T + 1)
    return BratteliDiagram(from_int_matrices(mats, cycle_from=P,
                                             labels=labels))


def cf_convergents(prefix, cycle, count):
    """Convergents p_k/q_k of the continued fraction [n_0; n_1, n_2, ...]."""
    p0, q0 = 1, 0
    p1, q1 = _cf_term(prefix, cycle, 0), 1
    out = [Fraction(p1, q1)]
    for k in range(1, count):
        n = _cf_term(prefix, cycle, k)
        p0, p1 = p1, n * p1 + p0
        q0, q1 = q1, n * q1 + q0
        out.append(Fraction(p1, q1))
    return out


def rotation_lambda_interval(spec, index):
    """Enclosure of lambda = [n_0; n_1, n_2, ...] from consecutive
    convergents p_{index-1}/q_{index-1} and p_index/q_index; the width is
    at most 1/(q_{index-1} q_index)."""
    prefix, cycle = _cf_scalars(spec)
    conv = cf_convergents(prefix, cycle, index + 1)
    lo, hi = sorted((conv[index - 1], conv[index]))
    return lo, hi


def _period_matrix(prefix, cycle, start, length):
    """Product of [[n_i,1],[1,0]] over one scalar period from `start`."""
    a, b, c, d = 1, 0, 0, 1
    for i in range(start, start + length):
        n = _cf_term(prefix, cycle, i)
        a, b, c, d = n * a + c, n * b + d, a, b
    return a, b, c, d


def _perron_2x2(a, b, c, d):
    """(t, D) with Perron eigenvalue (t + sqrt(D)) / 2 of a nonnegative
    integer 2x2 matrix."""
    t = a + d
    D = t * t - 4 * (a * d - b * c)
    return t, D


def _compare_quadratic(t1, D1, t2, D2):
    """Sign of (t1 + sqrt(D1)) - (t2 + sqrt(D2)), in exact integer
    arithmetic (D1, D2 >= 0)."""
    dt = t1 - t2
    if D1 == D2:
        return (dt > 0) - (dt < 0)
    u_neg = dt < 0 and dt * dt > D1  # u = dt + sqrt(D1) < 0
    if u_neg:
        return -1
    # u >= 0: sign(u - sqrt(D2)) = sign(u^2 - D2) = sign(A + B sqrt(D1))
    A = dt * dt + D1 - D2
    B = 2 * dt
    if B >= 0 and A >= 0:
        return 1 if (A > 0 or B * B * D1 > 0) else 0
    if B <= 0 and A <= 0:
        return -1 if (A < 0 or B * B * D1 > 0) else 0
    lhs, rhs = (B * B * D1, A * A) if B > 0 else (A * A, B * B * D1)
    return (lhs > rhs) - (lhs < rhs)


class NestedRotation:
    def __init__(self, base, ambient, verdict, detail):
        self.base = base
        self.ambient = ambient
        self.verdict = verdict
        self.detail = detail


def nested_rotation(n_spec, nhat_spec):
    """Nested pair of rotation diagrams from partial quotients n <= nhat.
    The verdict is Yes for a finite invariant measure on the subdiagram's
    tower (per-period product of lambda-hat/lambda at most 1), No for
    infinite.  The per-period products are Perron eigenvalues of integer
    2x2 continuant matrices, compared exactly."""
    np_, nc = _cf_scalars(n_spec)
    hp, hc = _cf_scalars(nhat_spec)
    P = max(len(np_), len(hp))
    L = len(nc) * len(hc) // math.gcd(len(nc), len(hc))
    for i in range(P + L):
        if _cf_term(np_, nc, i) > _cf_term(hp, hc, i):
            raise NotNested("n_%d = %d exceeds nhat_%d = %d"
                            % (i, _cf_term(np_, nc, i), i,
                               _cf_term(hp, hc, i)))
        if _cf_term(np_, nc, i) < 1:
            raise NotNested("partial quotients must be at least 1")
    base = rotation_diagram((np_, nc))
    ambient = rotation_diagram((hp, hc))
    # identical tails: bounded ratio regardless of eigenvalues
    tails_equal = all(_cf_term(np_, nc, P + j) == _cf_term(hp, hc, P + j)
                      for j in range(L))
    t1, D1 = _perron_2x2(*_period_matrix(np_, nc, P, L))
    t2, D2 = _perron_2x2(*_period_matrix(hp, hc, P, L))
    detail = {
        "period": L,
        "lambda_period_eigenvalue": (t1, D1),
        "lambda_hat_period_eigenvalue": (t2, D2),
    }
    if tails_equal:
        verdict = Verdict.yes({"reason": "identical tails", **detail})
    else:
        s = _compare_quadratic(t2, D2, t1, D1)  # lambda-hat vs lambda
        if s <= 0:
            verdict = Verdict.yes({"reason": "per-period ratio <= 1",
                                   **detail})
        else:
            verdict = Verdict.no({"reason": "per-period ratio > 1",
                                  **detail})
    return NestedRotation(base, ambient, verdict, detail)


# ---------------------------------------------------------------------------
# nested odometers


class NestedOdometer:
    def __init__(self, base, ambient, embedding, verdict):
        self.base = base
        self.ambient = ambient
        self.embedding = embedding
        self.verdict = verdict


def nested_odometer(a_spec, b_spec):
    """Nested pair of adding machines with digit counts b_i <= a_i; the
    verdict is the finiteness of the tower measure over the base, decided
    by classifying the canonical cover."""
    ap, ac = _cf_scalars(a_spec)
    bp, bc = _cf_scalars(b_spec)
    P = max(len(ap), len(bp))
    L = len(ac) * len(bc) // math.gcd(len(ac), len(bc))
    for i in range(P + L):
        if _cf_term(bp, bc, i) > _cf_term(ap, ac, i):
            raise NotNested("b_%d exceeds a_%d" % (i, i))
    ambient = odometer((ap, ac))
    base = odometer((bp, bc))
    from .measures import classify_subdiagram
    results = classify_subdiagram(base.seq, ambient.seq)
    emb = SubdiagramEmbedding(ambient, base.seq)
    # an odometer base carries a single ergodic measure
    return NestedOdometer(base, ambient, emb, results[0].verdict)


# ---------------------------------------------------------------------------
# stationary and worked examples


def three_cycle():
    """Stationary cycle example: M = [[0,1,0],[0,0,2],[3,0,0]], irreducible
    of period 3 with M^3 diagonal."""
    return BratteliDiagram(constant([[0, 1, 0], [0, 0, 2], [3, 0, 0]],
                                    ["0", "1", "2"]))


def seven_matrix_example():
    """The worked stream-decomposition sequence: five prefix matrices and a
    two-matrix cycle, with three primitive streams."""
    n0 = [[1, 1]]
    n1 = [[1, 0, 0, 0],
          [0, 1, 1, 1]]
    n2 = [[1, 0, 0, 0],
          [1, 0, 1, 0],
          [1, 0, 0, 1],
          [0, 1, 1, 0]]
    n3 = [[1, 0, 0],
          [0, 1, 0],
          [0, 0, 1],
          [0, 0, 1]]
    n4 = [[1, 0, 1, 0],
          [0, 1, 0, 1],
          [0, 0, 1, 1]]
    n5 = [[1, 0, 1, 0],
          [0, 1, 0, 0],
          [0, 0, 1, 1],
          [0, 0, 0, 1]]
    n6 = [[1, 1, 0, 0],
          [0, 1, 1, 0],
          [0, 0, 1, 0],
          [0, 0, 1, 1]]
    mats = [n0, n1, n2, n3, n4, n5, n6]
    labels = [tuple(str(j) for j in range(len(m))) for m in mats]
    labels.append(tuple(str(j) for j in range(len(mats[-1][0]))))
    seq = from_int_matrices(mats, cycle_from=5, labels=labels)
    diagram = BratteliDiagram(seq)
    diagram.expected = {
        "streams": 3,
        "block_matrices": [
            [[1]],
            [[1, 1]],
            [[1, 0, 1], [0, 1, 1]],
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 0, 1], [0, 1, 1], [0, 0, 1]],
            [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
            [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
        ],
    }
    return diagram


def full_shift(n=2):
    """The full n-shift as a stationary diagram: single vertex, n edges."""
    return BratteliDiagram(constant([[n]], ["0"]))


EXAMPLES = {
    "dyadic": lambda: odometer(2),
    "triadic": lambda: odometer(3),
    "chacon": chacon,
    "ics-cover": lambda: ics("cover"),
    "ics-triadic": lambda: ics("triadic"),
    "three-cycle": three_cycle,
    "seven-matrix": seven_matrix_example,
    "golden-mean": lambda: BratteliDiagram(
        constant([[1, 1], [1, 0]], ["0", "1"])),
}
