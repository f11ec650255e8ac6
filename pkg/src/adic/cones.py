"""Cones and simplices spanned by matrix products: extreme-point counting,
eigenvector sequences of eigenvalue one, and certified Perron data.

All verdict-relevant arithmetic is exact (Fraction); the Perron eigenvalue
of a primitive block is returned as a certified rational interval, never a
float.
"""

from fractions import Fraction

from .errors import EmptyCone, NotPrimitive, NonPositiveEntry, DepthExceeded
from . import matrixseq
from .matrixseq import (
    GenMatrix,
    EventuallyPeriodic,
    partial_product,
    is_primitive,
    wielandt_bound,
)


def normalize(vec):
    """Scale a nonnegative vector (dict) to have coordinate sum 1."""
    total = sum(vec.values())
    if total == 0:
        raise EmptyCone("cannot normalize the zero vector")
    return {k: Fraction(v, 1) / total for k, v in vec.items()}


# ---------------------------------------------------------------------------
# exact convex-hull membership (phase-1 simplex over Fraction)


def in_convex_hull(x, points, keys):
    """Exact test: is x a convex combination of `points`?  All vectors are
    dicts over `keys`."""
    if not points:
        return False
    n = len(points)
    rows = [[Fraction(p.get(k, 0)) for p in points] for k in keys]
    rhs = [Fraction(x.get(k, 0)) for k in keys]
    rows.append([Fraction(1)] * n)
    rhs.append(Fraction(1))
    return _phase1_feasible(rows, rhs)


def _phase1_feasible(rows, rhs):
    """Feasibility of A*lam = b, lam >= 0, via the phase-1 simplex method
    with Bland's rule.  Exact rational arithmetic."""
    m, n = len(rows), len(rows[0])
    # make rhs nonnegative
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # tableau: columns = original vars + artificials, objective = sum of
    # artificials (to be minimized)
    tab = [rows[i] + [Fraction(1) if j == i else Fraction(0)
                      for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    ncols = n + m
    # objective row: cost 1 on artificials, reduced through the basis
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(n, ncols):
        obj[j] = Fraction(1)
    for i in range(m):
        for j in range(ncols + 1):
            obj[j] -= tab[i][j]
    while True:
        enter = None
        for j in range(ncols):
            if obj[j] < 0:
                enter = j
                break
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][ncols] / tab[i][enter]
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded phase-1 cannot happen with artificial basis
            return False
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [tab[i][j] - f * tab[leave][j]
                          for j in range(ncols + 1)]
        if obj[enter]:
            f = obj[enter]
            obj = [obj[j] - f * tab[leave][j] for j in range(ncols + 1)]
        basis[leave] = enter
    return -obj[ncols] == 0


# ---------------------------------------------------------------------------
# simplex iteration


def simplex_image(seq, k, n):
    """Extreme points of the image of the level-(n+1) simplex at level k:
    the normalized columns of the product from level k to n, deduplicated
    and pruned by an exact convex-combination test.

    Returns a list of (vector, provenance) pairs, where provenance is the
    list of level-(n+1) column labels producing that point."""
    prod = partial_product(seq, k, n)
    keys = list(prod.rows)
    cols = {}
    for b in prod.cols:
        col = {a: prod.entry(a, b) for a in prod.rows}
        if sum(col.values()) == 0:
            continue
        point = normalize(col)
        sig = tuple(point[a] for a in keys)
        cols.setdefault(sig, (point, []))[1].append(b)
    if not cols:
        return []
    items = list(cols.values())
    extreme = []
    for i, (point, provenance) in enumerate(items):
        others = [p for j, (p, _) in enumerate(items) if j != i]
        if not in_convex_hull(point, others, keys):
            extreme.append((point, provenance))
    return extreme


def raw_extreme_count(seq, depth):
    """Number of extreme points of the depth-limited simplex at level 0."""
    return len(simplex_image(seq, 0, depth))


def extreme_count(seq, depth):
    """Count the surviving extreme directions at level 0.

    Returns (count, info).  For eventually periodic input the count is
    exact (one ergodic probability measure per distinguished stream, per
    the classification); for truncated input it is the depth-limited count
    together with the alphabet-size upper bound."""
    info = {"depth": depth}
    if seq.horizon is not None and depth >= seq.horizon:
        raise DepthExceeded("depth %d beyond horizon %d" % (depth, seq.horizon))
    raw = raw_extreme_count(seq, depth)
    info["count_at_depth"] = raw
    info["alphabet_bound"] = min(len(seq.alphabet(i))
                                 for i in range(1, depth + 2))
    if seq.is_eventually_periodic:
        from .measures import classify_measures
        cls = classify_measures(seq)
        exact = sum(1 for m in cls.measures if m.verdict.is_yes())
        info["exact"] = exact
        info["liminf_bound"] = seq.liminf_alphabet_size()
        info["streams"] = len(cls.measures)
        return exact, info
    return raw, info


# ---------------------------------------------------------------------------
# eigenvector sequences (depth-limited, exact relations)


class EigvecSeqApprox:
    """A finite eigenvector sequence w_0..w_{defect+1} with all relations
    w_i = M_i w_{i+1} holding exactly; the direction is only guaranteed to
    approximate a surviving extreme ray up to the recorded defect."""

    def __init__(self, levels, defect, provenance):
        self.levels = levels  # list of dicts, index = level
        self.defect = defect
        self.provenance = provenance

    def value(self, i):
        if i >= len(self.levels):
            raise DepthExceeded("level %d beyond defect %d" % (i, self.defect))
        return self.levels[i]

    @property
    def ray0(self):
        return self.levels[0]

    def check(self, seq):
        for i in range(len(self.levels) - 1):
            m = seq.matrix(i)
            img = m.mul_vec(self.levels[i + 1])
            if any(img.get(a, 0) != self.levels[i].get(a, 0) for a in m.rows):
                return False
        return True


def eigvec_sequences(seq, depth):
    """One depth-limited eigenvector sequence per extreme point of the
    depth-limited simplex, built by exact backward substitution through the
    recorded column provenance."""
    extreme = simplex_image(seq, 0, depth)
    out = []
    for point, provenance in extreme:
        b = provenance[0]
        col = {a: partial_product(seq, 0, depth).entry(a, b)
               for a in seq.alphabet(0)}
        scale = Fraction(1, sum(col.values()))
        levels = []
        for i in range(depth + 1):
            prod = partial_product(seq, i, depth)
            levels.append({a: scale * prod.entry(a, b)
                           for a in seq.alphabet(i)})
        levels.append({a: (scale if a == b else Fraction(0))
                       for a in seq.alphabet(depth + 1)})
        out.append(EigvecSeqApprox(levels, depth, provenance))
    return out


# ---------------------------------------------------------------------------
# certified Perron data for a primitive matrix


DEFAULT_EPS = Fraction(1, 10 ** 30)


def periodic_pf(mat_or_seq, eps=DEFAULT_EPS):
    """Certified enclosure of the Perron eigenvalue and eigenvector of a
    primitive square matrix (or of the one-period product of an eventually
    periodic sequence).  Returns a dict with exact rational interval bounds.

    The eigenvalue interval comes from the classical row-ratio bounds
    min_i (Mv)_i/v_i <= lambda <= max_i (Mv)_i/v_i for positive v; the
    eigenvector box is the componentwise hull of the normalized columns of
    M^n, which contains the Perron direction for every n."""
    if isinstance(mat_or_seq, GenMatrix):
        m = mat_or_seq
    else:
        seq = mat_or_seq
        m = partial_product(seq, seq.prefix_len,
                            seq.prefix_len + seq.period - 1)
    if set(m.rows) != set(m.cols):
        raise NonPositiveEntry("need a square matrix")
    if any(v < 0 for v in m.entries.values()):
        raise NonPositiveEntry("negative entry")
    stat = EventuallyPeriodic([], [m])
    prim = is_primitive(stat)
    if not prim.is_yes():
        raise NotPrimitive("matrix is not primitive")
    d = len(m.rows)
    # power up to strict positivity first so the ratio bounds apply
    power = m
    steps = 1
    while not power.is_positive():
        power = power.mul(m)
        steps += 1
        if steps > wielandt_bound(d) + 1:
            raise NotPrimitive("no positive power within the expected bound")
    v = {a: Fraction(1) for a in m.rows}
    iterations = 0
    while True:
        w = {a: Fraction(x) for a, x in m.mul_vec(v).items()}
        ratios = [w[a] / v[a] for a in m.rows]
        lo, hi = min(ratios), max(ratios)
        total = sum(w.values())
        v = {a: w[a] / total for a in m.rows}
        iterations += 1
        if hi - lo <= eps * lo:
            break
        if iterations > 100000:
            raise NotPrimitive("enclosure failed to contract")
    # eigenvector box from normalized columns of a high power
    box_power = power
    while True:
        cols = []
        for b in box_power.cols:
            col = {a: box_power.entry(a, b) for a in box_power.rows}
            cols.append(normalize(col))
        box = {a: (min(c[a] for c in cols), max(c[a] for c in cols))
               for a in m.rows}
        width = max(hi_ - lo_ for lo_, hi_ in box.values())
        if width <= eps:
            break
        box_power = box_power.mul(box_power)
    return {"eigenvalue": (lo, hi),
            "eigenvector_box": box,
            "iterations": iterations,
            "positivity_power": steps}


# ---------------------------------------------------------------------------
# exact rays for streams with rational per-period eigenvalue


def solve_kernel(rows_labels, matrix_rows, lam):
    """Kernel basis of (Q - lam*I) restricted to the given labels, exact.
    matrix_rows: dict (a,b) -> value.  Returns list of basis dicts."""
    n = len(rows_labels)
    idx = {a: i for i, a in enumerate(rows_labels)}
    A = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), v in matrix_rows.items():
        if a in idx and b in idx:
            A[idx[a]][idx[b]] += Fraction(v)
    for i in range(n):
        A[i][i] -= Fraction(lam)
    # gaussian elimination
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(n):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [A[i][j] - f * A[r][j] for j in range(n)]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -A[i][f]
        basis.append({rows_labels[j]: vec[j] for j in range(n)})
    return basis


class ExactEigvec:
    """An exact eigenvector sequence: w_i = M_i w_{i+1} for all i, with
    w_{n+L} = w_n / Lambda in the periodic region.  Values are exact
    rationals at every level."""

    def __init__(self, seq, valid_from, lcm_period, lam, base_levels,
                 prefix_levels, stream_index, rows_at=None):
        self.seq = seq
        self.valid_from = valid_from
        self.lcm_period = lcm_period
        self.eigenvalue = lam  # per-period scaling factor
        self._base = base_levels      # list of dicts for levels P..P+L-1
        self._prefix = prefix_levels  # dicts for levels 0..P-1
        self.stream_index = stream_index
        # optional restriction: the eigen-relation is asserted only on these
        # rows (used for stream-supported rays of infinite measures)
        self.rows_at = rows_at

    def value(self, i):
        P, L = self.valid_from, self.lcm_period
        if i < P:
            return dict(self._prefix[i])
        q, r = divmod(i - P, L)
        scale = Fraction(1) / (Fraction(self.eigenvalue) ** q)
        return {a: v * scale for a, v in self._base[r].items()}

    @property
    def ray0(self):
        return self.value(0)

    def check(self, levels=None):
        n = levels if levels is not None else self.valid_from + 2 * self.lcm_period
        for i in range(n):
            m = self.seq.matrix(i)
            img = m.mul_vec(self.value(i + 1))
            cur = self.value(i)
            rows = m.rows if self.rows_at is None else \
                [a for a in m.rows if a in self.rows_at(i)]
            if any(Fraction(img.get(a, 0)) != Fraction(cur.get(a, 0))
                   for a in rows):
                return False
        return True


def stream_period_eigenvalue(stream):
    """Per-period Perron eigenvalue of a stream, exact when rational.
    Returns a Fraction, or None when the eigenvalue is irrational."""
    q = stream.period_product()
    if len(q.rows) == 1:
        a = q.rows[0]
        return Fraction(q.entry(a, a))
    import sympy
    labels = list(q.rows)
    M = sympy.Matrix([[q.entry(a, b) for b in labels] for a in labels])
    poly = M.charpoly()
    roots = sympy.Poly(poly.as_expr(), poly.gens[0]).real_roots()
    top = max(roots, key=lambda r: r.evalf(50))
    if top.is_rational:
        return Fraction(int(sympy.numer(top)), int(sympy.denom(top)))
    return None


def stream_exact_eigenvalue_expr(stream):
    """The per-period Perron eigenvalue as an exact sympy expression (always
    available, used for exact comparisons between blocks)."""
    import sympy
    q = stream.period_product()
    if len(q.rows) == 1:
        a = q.rows[0]
        return sympy.Integer(q.entry(a, a))
    labels = list(q.rows)
    M = sympy.Matrix([[q.entry(a, b) for b in labels] for a in labels])
    poly = M.charpoly()
    roots = sympy.Poly(poly.as_expr(), poly.gens[0]).real_roots()
    return max(roots, key=lambda r: r.evalf(50))


def exact_ray(decomp, stream):
    """Exact eigenvector sequence spanning the surviving extreme ray that
    the given stream contributes, when its per-period eigenvalue is
    rational.  Returns an ExactEigvec or None.

    Construction: with L the decomposition's lcm period and Q the product
    over one L-block, any eigenvector sequence satisfying w_{n+L} = w_n /
    Lambda has w_P in the kernel of (Q - Lambda I).  Components on blocks
    that do not communicate to the stream are forced to zero; if the
    remaining kernel is one-dimensional and nonnegative, it determines the
    sequence completely."""
    seq = decomp.seq
    P, L = decomp.valid_from, decomp.lcm_period
    lam = stream_period_eigenvalue(stream)
    if lam is None:
        return None
    Q = partial_product(seq, P, P + L - 1)
    active = set(stream.members_at(P))
    for a in seq.alphabet(P):
        if stream.index in decomp._reach.get((0, a), frozenset()):
            active.add(a)
    labels = [a for a in seq.alphabet(P) if a in active]
    basis = solve_kernel(labels, Q.entries, lam)
    if len(basis) != 1:
        return None
    vec = basis[0]
    if all(v <= 0 for v in vec.values()):
        vec = {a: -v for a, v in vec.items()}
    if any(v < 0 for v in vec.values()):
        return None
    v_p = {a: vec.get(a, Fraction(0)) for a in seq.alphabet(P)}
    # fill one period backward from w_{P+L} = w_P / Lambda
    base = [None] * L
    base[0] = v_p
    nxt = {a: v / Fraction(lam) for a, v in v_p.items()}
    for r in range(L - 1, 0, -1):
        m = seq.matrix(P + r)
        cur = {a: Fraction(x) for a, x in m.mul_vec(nxt).items()}
        base[r] = cur
        nxt = cur
    m0 = seq.matrix(P)
    chk = m0.mul_vec(base[1] if L > 1 else
                     {a: v / Fraction(lam) for a, v in v_p.items()})
    assert all(Fraction(chk.get(a, 0)) == v_p.get(a, Fraction(0))
               for a in m0.rows), "eigen relation failed at the period seam"
    prefix = [None] * P
    nxt = v_p
    for k in range(P - 1, -1, -1):
        m = seq.matrix(k)
        prefix[k] = {a: Fraction(x) for a, x in m.mul_vec(nxt).items()}
        nxt = prefix[k]
    # normalize at the first level with mass
    level0 = prefix[0] if P > 0 else v_p
    total = sum(level0.values())
    if total:
        scale = Fraction(1) / total
        base = [{a: v * scale for a, v in lev.items()} for lev in base]
        prefix = [{a: v * scale for a, v in lev.items()} for lev in prefix]
    return ExactEigvec(seq, P, L, lam, base, prefix, stream.index)


def stream_base_ray(decomp, stream):
    """Exact eigenvector sequence supported on the stream itself (zero off
    the stream); always exists when the per-period eigenvalue is rational.
    This is the base ray of the stream's tower."""
    seq = decomp.seq
    P, L = decomp.valid_from, decomp.lcm_period
    lam = stream_period_eigenvalue(stream)
    if lam is None:
        return None
    q = stream.period_product()
    basis = solve_kernel(list(q.rows), q.entries, lam)
    if len(basis) != 1:
        return None
    vec = basis[0]
    if all(v <= 0 for v in vec.values()):
        vec = {a: -v for a, v in vec.items()}
    if any(v < 0 for v in vec.values()):
        return None
    v_p = {a: vec.get(a, Fraction(0)) for a in seq.alphabet(P)}
    total = sum(v_p.values())
    v_p = {a: v / total for a, v in v_p.items()}
    base = [None] * L
    base[0] = v_p
    nxt = {a: v / Fraction(lam) for a, v in v_p.items()}
    for r in range(L - 1, 0, -1):
        m = seq.matrix(P + r)
        sub = {a: (nxt[a] if a in stream.members_at(P + r + 1) else Fraction(0))
               for a in nxt}
        cur = {a: Fraction(x) for a, x in m.mul_vec(sub).items()}
        cur = {a: (cur[a] if a in stream.members_at(P + r) else Fraction(0))
               for a in cur}
        base[r] = cur
        nxt = cur
    prefix = [None] * P
    nxt = v_p
    for k in range(P - 1, -1, -1):
        m = seq.matrix(k)
        sub = {a: (nxt[a] if a in stream.members_at(k + 1) else Fraction(0))
               for a in nxt}
        cur = {a: Fraction(x) for a, x in m.mul_vec(sub).items()}
        prefix[k] = {a: (cur[a] if a in stream.members_at(k) else Fraction(0))
                     for a in cur}
        nxt = prefix[k]
    level0 = prefix[0] if P > 0 else base[0]
    total = sum(level0.values())
    if total:
        scale = Fraction(1) / total
        base = [{a: v * scale for a, v in lev.items()} for lev in base]
        prefix = [{a: v * scale for a, v in lev.items()} for lev in prefix]
    return ExactEigvec(seq, P, L, lam, base, prefix, stream.index,
                       rows_at=stream.members_at)
