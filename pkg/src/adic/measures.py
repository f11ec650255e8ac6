"""Central (shift-like invariant) measures on path spaces, the canonical
two-to-one cover of a nested pair of sequences, convergence tests for the
coupled block series, and the finite/infinite classification of ergodic
measures.

All verdicts are exact for eventually periodic data: per-period growth
rates of blocks are compared as exact algebraic numbers (integers for 1x1
blocks), never as floats.
"""

from fractions import Fraction

from .errors import (
    NotNested,
    NonPositiveEntry,
    NoFiniteBaseMeasure,
    NotEigenvector,
    ShapeMismatch,
)
from .verdict import Verdict
from . import matrixseq, cones
from .matrixseq import (
    GenMatrix,
    EventuallyPeriodic,
    Truncated,
    submatrix_leq,
    reduce_sequence,
)
from .diagram import check_word
from .frobenius import stream_decompose


# ---------------------------------------------------------------------------
# central measures


class CentralMeasure:
    """A measure on the path space determined by an eigenvector sequence:
    the mass of the cylinder of a word ending at symbol s at level n is the
    s-coordinate of w_n.  Additivity and invariance under changing an
    initial segment with the same endpoint hold by construction."""

    def __init__(self, seq, eigvec):
        self.seq = seq
        self.eigvec = eigvec

    def cylinder_mass(self, word, start=0):
        if not word:
            if start != 0:
                raise ShapeMismatch("empty word only supported from level 0")
            return sum(self.eigvec.value(0).values())
        check_word(self.seq, word, start)
        end_level = start + len(word)
        end_symbol = word[-1][2]
        return Fraction(self.eigvec.value(end_level).get(end_symbol, 0))

    def total_mass(self):
        return sum(self.eigvec.value(0).values())


def measure_of_cylinder(measure, word, start=0):
    return measure.cylinder_mass(word, start)


# ---------------------------------------------------------------------------
# canonical cover


def primed(a):
    return a + "'"


class CanonicalCover:
    def __init__(self, cover, m, mhat, leq):
        self.cover = cover
        self.m = m
        self.mhat = mhat
        self.leq = leq  # the nesting verdict that was checked

    def ambient_labels(self, k):
        return tuple(primed(a) for a in self.mhat.alphabet(k))

    def base_labels(self, k):
        return tuple(self.mhat.alphabet(k))


def _cover_matrix(mh, mb):
    """One level of the cover: [[Mhat, Mhat - M], [0, M]] over doubled
    (primed + unprimed) ambient alphabets, with M zero-extended."""
    rows = tuple(primed(a) for a in mh.rows) + tuple(mh.rows)
    cols = tuple(primed(b) for b in mh.cols) + tuple(mh.cols)
    entries = {}
    for (a, b), v in mh.entries.items():
        entries[(primed(a), primed(b))] = v
        c = v - mb.entry(a, b)
        if c < 0:
            raise NotNested("entry (%r,%r): %d > %d" % (a, b, mb.entry(a, b), v))
        if c:
            entries[(primed(a), b)] = c
    for (a, b), v in mb.entries.items():
        if v > mh.entry(a, b):
            raise NotNested("entry (%r,%r): %d > %d" % (a, b, v, mh.entry(a, b)))
        entries[(a, b)] = v
    return GenMatrix(rows, cols, entries)


def canonical_cover(m, mhat):
    """The canonical cover of a nested pair m <= mhat: per level the block
    matrix [[Mhat, Mhat-M],[0, M]] over primed+unprimed ambient alphabets.
    Verified invariants: the nesting itself, and entry-sum doubling
    (sum of the cover matrix = 2 * sum of the ambient matrix)."""
    leq = submatrix_leq(m, mhat)
    if leq.is_no():
        raise NotNested("m is not a subsequence of mhat: %r" % (leq.witness,))
    if m.is_eventually_periodic and mhat.is_eventually_periodic:
        import math
        P = max(m.prefix_len, mhat.prefix_len)
        L = math.lcm(m.period, mhat.period)
        mats = [_cover_matrix(mhat.matrix(k), m.matrix(k))
                for k in range(P + L)]
        cover = EventuallyPeriodic(mats[:P], mats[P:])
    else:
        h = min(s.horizon for s in (m, mhat) if s.horizon is not None)
        mats = [_cover_matrix(mhat.matrix(k), m.matrix(k)) for k in range(h)]
        cover = Truncated(mats)
    for k, mat in enumerate(mats):
        assert mat.entry_sum() == 2 * mhat.matrix(k).entry_sum(), \
            "entry-sum doubling failed at level %d" % k
    return CanonicalCover(cover, m, mhat, leq)


# ---------------------------------------------------------------------------
# coupled block products


def _as_matrices(seq_like):
    out = []
    for x in seq_like:
        if isinstance(x, GenMatrix):
            out.append(x)
        else:
            out.append(GenMatrix(("0",), ("0",), {("0", "0"): x} if x else {}))
    return out


def chat_block(a, b, c, i, n):
    """Upper-right block of the product over levels i..n of the block
    matrices [[A_k, C_k], [0, B_k]], computed by the forward recursion and
    cross-checked against the assembled product."""
    A, B, C = _as_matrices(a), _as_matrices(b), _as_matrices(c)
    if not (len(A) > n and len(B) > n and len(C) > n):
        raise ShapeMismatch("need matrices through level %d" % n)
    chat = C[i]
    a_prod = A[i]
    for k in range(i + 1, n + 1):
        chat = a_prod.mul(C[k]).add(chat.mul(B[k]))
        a_prod = a_prod.mul(A[k])

    # independent cross-check: assemble and multiply the block matrices
    def assembled(k):
        rows = tuple(primed(x) for x in A[k].rows) + tuple(B[k].rows)
        cols = tuple(primed(x) for x in A[k].cols) + tuple(B[k].cols)
        entries = {}
        for (x, y), v in A[k].entries.items():
            entries[(primed(x), primed(y))] = v
        for (x, y), v in C[k].entries.items():
            entries[(primed(x), y)] = v
        for (x, y), v in B[k].entries.items():
            entries[(x, y)] = v
        return GenMatrix(rows, cols, entries)

    full = assembled(i)
    for k in range(i + 1, n + 1):
        full = full.mul(assembled(k))
    for x in A[i].rows:
        for y in B[n].cols:
            assert full.entry(primed(x), y) == chat.entry(x, y), \
                "chat recursion disagrees with the direct product"
    return chat


class SeriesResult:
    def __init__(self, verdict, partial_sums, limit, ratio):
        self.verdict = verdict
        self.partial_sums = partial_sums
        self.limit = limit
        self.ratio = ratio  # per-period ratio prod(a)/prod(b)

    def __repr__(self):
        return "SeriesResult(%s, limit=%r)" % (self.verdict.value, self.limit)


def _scalar_seq(x):
    """Accept an int (constant), a (prefix, cycle) pair of int lists, or a
    list (treated as the cycle)."""
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], (list, tuple)):
        return list(x[0]), list(x[1])
    if isinstance(x, (list, tuple)):
        return [], list(x)
    return [], [x]


def two_by_two_series(a, b, c, n=40):
    """The series sum_k (prod_{i<k} a_i/b_i) * c_k/a_k for eventually
    periodic positive scalar sequences a, b and nonnegative c.

    Returns a SeriesResult with the first n+1 partial sums, an exact
    convergence verdict, and the exact rational limit when convergent."""
    ap, ac = _scalar_seq(a)
    bp, bc = _scalar_seq(b)
    cp, cc = _scalar_seq(c)
    import math
    P = max(len(ap), len(bp), len(cp))
    T = math.lcm(len(ac), len(bc), len(cc))

    def term_at(seq_pc, k):
        pre, cyc = seq_pc
        if k < len(pre):
            return pre[k]
        return cyc[(k - len(pre)) % len(cyc)]

    def a_at(k):
        return term_at((ap, ac), k)

    def b_at(k):
        return term_at((bp, bc), k)

    def c_at(k):
        return term_at((cp, cc), k)

    for k in range(P + T):
        if a_at(k) <= 0 or b_at(k) <= 0:
            raise NonPositiveEntry("a and b must be positive")
        if c_at(k) < 0:
            raise NonPositiveEntry("c must be nonnegative")

    ratio = Fraction(1)
    for k in range(P, P + T):
        ratio *= Fraction(a_at(k), b_at(k))
    cycle_has_c = any(c_at(k) for k in range(P, P + T))

    partial = []
    s = Fraction(0)
    pi = Fraction(1)  # prod_{i<k} a_i/b_i
    for k in range(n + 1):
        s += pi * Fraction(c_at(k), a_at(k))
        partial.append(s)
        pi *= Fraction(a_at(k), b_at(k))

    if not cycle_has_c:
        limit = Fraction(0)
        pi = Fraction(1)
        for k in range(P + T):
            limit += pi * Fraction(c_at(k), a_at(k))
            pi *= Fraction(a_at(k), b_at(k))
        verdict = Verdict.yes({"limit": limit, "reason": "c vanishes on the cycle"})
        return SeriesResult(verdict, partial, limit, ratio)
    if ratio < 1:
        head = Fraction(0)
        pi = Fraction(1)
        for k in range(P):
            head += pi * Fraction(c_at(k), a_at(k))
            pi *= Fraction(a_at(k), b_at(k))
        tail_block = Fraction(0)
        for k in range(P, P + T):
            tail_block += pi * Fraction(c_at(k), a_at(k))
            pi *= Fraction(a_at(k), b_at(k))
        limit = head + tail_block / (1 - ratio)
        verdict = Verdict.yes({"limit": limit, "period_ratio": ratio})
        return SeriesResult(verdict, partial, limit, ratio)
    verdict = Verdict.no({"period_ratio": ratio,
                          "reason": "terms do not vanish"})
    return SeriesResult(verdict, partial, None, ratio)


# ---------------------------------------------------------------------------
# exact growth-rate comparison between blocks


def compare_streams(stream_a, stream_b):
    """Exact comparison of per-period Perron eigenvalues: -1, 0 or 1, with
    a machine-checkable witness (rational enclosures, or exact equality)."""
    la = cones.stream_period_eigenvalue(stream_a)
    lb = cones.stream_period_eigenvalue(stream_b)
    if la is not None and lb is not None:
        sign = (la > lb) - (la < lb)
        return sign, {"lambda": [la, lb], "exact": True}
    ea = cones.stream_exact_eigenvalue_expr(stream_a)
    eb = cones.stream_exact_eigenvalue_expr(stream_b)
    eq = ea.equals(eb)
    if eq:
        return 0, {"lambda_expr": [str(ea), str(eb)], "equal": True}
    # not equal: refine certified intervals until they separate
    eps = Fraction(1, 10 ** 8)
    while True:
        ia = cones.periodic_pf(stream_a.period_product(), eps)["eigenvalue"]
        ib = cones.periodic_pf(stream_b.period_product(), eps)["eigenvalue"]
        if ia[1] < ib[0]:
            return -1, {"intervals": [ia, ib]}
        if ib[1] < ia[0]:
            return 1, {"intervals": [ia, ib]}
        eps = eps * eps


def communicating_streams(decomp, stream):
    """Indices of the streams with an edge path into `stream` within the
    periodic part (transitively, possibly through the pool)."""
    out = set()
    P, L = decomp.valid_from, decomp.lcm_period
    for other in decomp.streams:
        if other.index == stream.index:
            continue
        for j in range(L):
            for a in other.members_at(P + j):
                if stream.index in decomp._reach.get((j, a), frozenset()):
                    out.add(other.index)
                    break
            if other.index in out:
                break
    return sorted(out)


def _finiteness_verdict(decomp, stream):
    """Finite iff every communicating stream has strictly smaller
    per-period growth (equality already diverges)."""
    if decomp.provisional:
        return Verdict.undecided(getattr(decomp.seq, "horizon", None) or
                                 decomp.valid_from,
                                 {"reason": "provisional decomposition"})
    comms = communicating_streams(decomp, stream)
    comparisons = []
    failed = None
    by_index = {s.index: s for s in decomp.streams}
    for i in comms:
        sign, wit = compare_streams(by_index[i], stream)
        comparisons.append({"stream": i, "sign": sign, "data": wit})
        if sign >= 0 and failed is None:
            failed = i
    if failed is None:
        return Verdict.yes({"communicating": comms,
                            "comparisons": comparisons})
    return Verdict.no({"communicating": comms,
                       "comparisons": comparisons,
                       "dominating_stream": failed})


# ---------------------------------------------------------------------------
# the distinguished test


def _check_eigvec(w, m):
    if isinstance(w, cones.ExactEigvec):
        if not w.check():
            raise NotEigenvector("relations w_i = M_i w_{i+1} fail")
        return
    levels = len(getattr(w, "levels", [])) - 1
    if levels < 1 or not w.check(m):
        raise NotEigenvector("relations w_i = M_i w_{i+1} fail")


def is_distinguished(w, m, mhat, bound=None):
    """Verdict on: the iterates of the cover of (m, mhat) applied to the
    extension-by-zero of the eigenvector sequence w converge (so w induces a
    finite measure on the ambient path space).

    Exact for eventually periodic pairs via per-period growth comparison of
    the cover's blocks.  Truncated data yields Undecided with the monotone
    partial vectors as a trace."""
    _check_eigvec(w, m)
    cov = canonical_cover(m, mhat)
    if not (m.is_eventually_periodic and mhat.is_eventually_periodic):
        return _distinguished_window(w, m, mhat, bound)
    red, _ = reduce_sequence(cov.cover)
    decomp = stream_decompose(red)
    K = decomp.valid_from
    support = {a for a, v in w.value(K).items() if v}
    carriers = [s for s in decomp.streams if support & set(s.members_at(K))]
    if not carriers:
        # w vanishes on the recurrent part: the series is a finite sum
        return Verdict.yes({"reason": "support leaves the recurrent part"})
    verdicts = [(_finiteness_verdict(decomp, s), s) for s in carriers]
    comparisons = [v.witness for v, _ in verdicts]
    bad = [s.index for v, s in verdicts if v.is_no()]
    if bad:
        return Verdict.no({"streams": bad, "comparisons": comparisons})
    witness = {"streams": [s.index for _, s in verdicts],
               "comparisons": comparisons}
    ray = cones.exact_ray(decomp, carriers[0])
    if ray is not None and len(carriers) == 1:
        witness["iota_ray0"] = ray.ray0
    return Verdict.yes(witness)


def _monotone_partials(w, m, mhat, upto):
    """Partial vectors Chat_0^n w_{n+1} of the cover series; componentwise
    nondecreasing in n."""
    A = [mhat.matrix(k) for k in range(upto)]
    # zero-extend the base matrices onto the ambient alphabets
    B = []
    for k in range(upto):
        mb = m.matrix(k)
        B.append(GenMatrix(mhat.alphabet(k), mhat.alphabet(k + 1),
                           dict(mb.entries)))
    C = [A[k].sub(B[k]) for k in range(upto)]
    out = []
    chat = C[0]
    a_prod = A[0]
    for n in range(upto):
        if n > 0:
            chat = a_prod.mul(C[n]).add(chat.mul(B[n]))
            a_prod = a_prod.mul(A[n])
        wn = {a: Fraction(w.value(n + 1).get(a, 0))
              for a in mhat.alphabet(n + 1)}
        out.append({a: Fraction(x) for a, x in chat.mul_vec(wn).items()})
    return out


def _distinguished_window(w, m, mhat, bound):
    hs = [s.horizon for s in (m, mhat) if s.horizon is not None]
    h = min(hs + [len(getattr(w, "levels", [0, 0])) - 1])
    partials = _monotone_partials(w, m, mhat, max(1, h - 1))
    witness = {"partial_vectors": partials}
    if bound is not None:
        worst = max((max(p.values(), default=Fraction(0)) for p in partials),
                    default=Fraction(0))
        witness["bound"] = bound
        witness["bound_exceeded"] = worst > bound
    return Verdict.undecided(h, witness)


# ---------------------------------------------------------------------------
# classification


class ErgodicMeasure:
    def __init__(self, stream, verdict, ray, atomic, atom=None):
        self.stream = stream
        self.verdict = verdict      # Yes = finite, No = infinite
        self.ray = ray              # exact or depth-limited eigvec sequence
        self.atomic = atomic
        self.atom = atom            # edge data of the single path, if atomic

    @property
    def finite(self):
        return self.verdict.is_yes()

    def __repr__(self):
        kind = ("finite" if self.verdict.is_yes()
                else "infinite" if self.verdict.is_no() else "undecided")
        if self.atomic:
            kind += ", atomic"
        return "ErgodicMeasure(stream %d, %s)" % (self.stream.index, kind)


class Classification:
    def __init__(self, seq, decomposition, measures):
        self.seq = seq
        self.decomposition = decomposition
        self.measures = measures

    @property
    def finite_count(self):
        return sum(1 for m in self.measures if m.verdict.is_yes())

    @property
    def infinite_count(self):
        return sum(1 for m in self.measures if m.verdict.is_no())

    def __repr__(self):
        return ("Classification(%d ergodic: %d finite, %d infinite)"
                % (len(self.measures), self.finite_count, self.infinite_count))


def _atom_path(decomp, stream):
    """Edge data of the unique path of a single-path stream."""
    P, L = decomp.valid_from, decomp.lcm_period
    start = stream.starting_time
    prefix_edges = []
    for k in range(start, P):
        (a,) = tuple(stream.members_at(k))
        (b,) = tuple(stream.members_at(k + 1))
        prefix_edges.append((k, a, b, 0))
    cycle_edges = []
    for j in range(L):
        (a,) = tuple(stream.members_at(P + j))
        (b,) = tuple(stream.members_at(P + j + 1))
        cycle_edges.append((P + j, a, b, 0))
    return {"start": start, "prefix_edges": prefix_edges,
            "cycle_edges": cycle_edges}


def classify_measures(seq):
    """One ergodic measure per stream of the reduced sequence: finite iff
    the stream is distinguished (all communicating streams grow strictly
    slower), atomic iff the stream carries a single path.  Rays are exact
    whenever the per-period eigenvalue is rational."""
    red, _ = reduce_sequence(seq)
    decomp = stream_decompose(red)
    measures = []
    for s in decomp.streams:
        verdict = _finiteness_verdict(decomp, s)
        atomic = s.has_single_path()
        if verdict.is_yes():
            ray = cones.exact_ray(decomp, s)
            if ray is None:
                ray = _approx_ray(red, decomp, s)
        else:
            ray = cones.stream_base_ray(decomp, s)
        atom = _atom_path(decomp, s) if atomic else None
        measures.append(ErgodicMeasure(s, verdict, ray, atomic, atom))
    return Classification(red, decomp, measures)


def _approx_ray(seq, decomp, stream, depth=None):
    if depth is None:
        depth = decomp.valid_from + 8 * decomp.lcm_period
    cands = cones.eigvec_sequences(seq, depth)
    K = decomp.valid_from
    members = stream.members_at(K)
    best = None
    for cand in cands:
        mass = sum(v for a, v in cand.value(K).items() if a in members)
        if best is None or mass > best[0]:
            best = (mass, cand)
    return best[1] if best else None


class SubdiagramResult:
    def __init__(self, base_measure, verdict, witness):
        self.base_measure = base_measure
        self.verdict = verdict  # Yes = extends to a finite ambient measure
        self.witness = witness

    def __repr__(self):
        kind = ("Finite" if self.verdict.is_yes()
                else "Infinite" if self.verdict.is_no() else "Undecided")
        return "SubdiagramResult(%s)" % kind


def classify_subdiagram(m, mhat):
    """For each finite ergodic measure of the base m, decide whether its
    invariant extension to the ambient mhat (the tower over the base) has
    finite or infinite total mass."""
    leq = submatrix_leq(m, mhat)
    if leq.is_no():
        raise NotNested(repr(leq.witness))
    base_cls = classify_measures(m)
    finite = [e for e in base_cls.measures if e.verdict.is_yes()]
    if not finite:
        raise NoFiniteBaseMeasure("the base carries no finite ergodic measure")
    cov = canonical_cover(m, mhat)
    if not (m.is_eventually_periodic and mhat.is_eventually_periodic):
        results = [SubdiagramResult(e, Verdict.undecided(
            cov.cover.horizon, {"reason": "truncated data"}), {})
            for e in finite]
        return results
    red, _ = reduce_sequence(cov.cover)
    decomp = stream_decompose(red)
    K = max(decomp.valid_from, base_cls.decomposition.valid_from)
    import math
    L = math.lcm(decomp.lcm_period, base_cls.decomposition.lcm_period)
    results = []
    for e in finite:
        target = None
        for s in decomp.streams:
            if all(set(s.members_at(K + j)) == set(e.stream.members_at(K + j))
                   for j in range(L)):
                target = s
                break
        if target is None:
            raise NoFiniteBaseMeasure(
                "base stream %d is not recurrent in the cover" % e.stream.index)
        verdict = _finiteness_verdict(decomp, target)
        witness = dict(verdict.witness)
        witness["cover_stream"] = target.index
        results.append(SubdiagramResult(e, verdict, witness))
    return results


# ---------------------------------------------------------------------------
# stationary Parry data


def parry_measure_stationary(m, word, eps=cones.DEFAULT_EPS):
    """Certified rational enclosures of the central and invariant (Parry)
    measures of a cylinder of a primitive stationary diagram.  `word` is a
    state word x_0..x_n (n edges).  Central: lambda^{-n} w_{x_n} with w the
    normalized right Perron vector; invariant: lambda^{-n} v_{x_0} w_{x_n} /
    (v.w) with v the left Perron vector."""
    if isinstance(word, (list, tuple)) and word and isinstance(word[0], tuple):
        # an edge word: extract the state word
        states = [word[0][1]] + [e[2] for e in word]
    else:
        states = list(word)
    for i in range(len(states) - 1):
        if m.entry(states[i], states[i + 1]) == 0:
            return {"central": (Fraction(0), Fraction(0)),
                    "invariant": (Fraction(0), Fraction(0)),
                    "empty": True}
    n = len(states) - 1
    pf = cones.periodic_pf(m, eps)
    lam_lo, lam_hi = pf["eigenvalue"]
    w_box = pf["eigenvector_box"]
    pf_t = cones.periodic_pf(m.transpose(), eps)
    v_box = pf_t["eigenvector_box"]
    x0, xn = states[0], states[-1]

    def inv_pow(lo, hi, k):
        if k == 0:
            return (Fraction(1), Fraction(1))
        return (Fraction(1) / hi ** k, Fraction(1) / lo ** k)

    il, ih = inv_pow(lam_lo, lam_hi, n)
    central = (il * w_box[xn][0], ih * w_box[xn][1])
    vw_lo = sum(v_box[a][0] * w_box[a][0] for a in m.rows)
    vw_hi = sum(v_box[a][1] * w_box[a][1] for a in m.rows)
    inv_lo = il * v_box[x0][0] * w_box[xn][0] / vw_hi
    inv_hi = ih * v_box[x0][1] * w_box[xn][1] / vw_lo
    return {"central": central, "invariant": (inv_lo, inv_hi),
            "eigenvalue": (lam_lo, lam_hi), "empty": False}
