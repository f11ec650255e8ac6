"""Nonnegative integer matrices over labeled alphabets, and infinite
sequences of them given either by an eventually periodic description or by a
finite truncation.

Conventions used throughout the package:

- a matrix maps level i to level i+1: rows are labeled by the level-i
  alphabet, columns by the level-(i+1) alphabet;
- alphabets are tuples of string labels; the tuple order is only for
  deterministic display, composability is checked set-wise;
- entries are plain Python ints (arbitrary precision); measure values are
  fractions.Fraction.  No floats anywhere on a decision path.
"""

import itertools

from .errors import (
    IncompatibleAlphabets,
    HorizonExceeded,
    ShapeMismatch,
)
from .verdict import Verdict


class GenMatrix:
    """A nonnegative integer matrix with labeled rows and columns.

    Absent entries are zero.  Empty alphabets ("virtual" matrices) are
    allowed; products with them are virtual or zero as dimensions dictate.
    """

    def __init__(self, rows, cols, entries=None):
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        if len(set(self.rows)) != len(self.rows):
            raise IncompatibleAlphabets("duplicate row labels: %r" % (self.rows,))
        if len(set(self.cols)) != len(self.cols):
            raise IncompatibleAlphabets("duplicate column labels: %r" % (self.cols,))
        self.entries = {}
        if entries:
            rowset, colset = set(self.rows), set(self.cols)
            for (a, b), v in entries.items():
                if a not in rowset or b not in colset:
                    raise ShapeMismatch("entry (%r,%r) outside alphabets" % (a, b))
                if v < 0:
                    raise ShapeMismatch("negative entry at (%r,%r)" % (a, b))
                if v:
                    self.entries[(a, b)] = v

    @classmethod
    def from_lists(cls, rows, cols, array):
        """Build from a row-major list of lists."""
        rows, cols = tuple(rows), tuple(cols)
        if len(array) != len(rows) or any(len(r) != len(cols) for r in array):
            raise ShapeMismatch("array shape does not match alphabets")
        entries = {}
        for i, a in enumerate(rows):
            for j, b in enumerate(cols):
                if array[i][j]:
                    entries[(a, b)] = array[i][j]
        return cls(rows, cols, entries)

    def entry(self, a, b):
        return self.entries.get((a, b), 0)

    def to_lists(self):
        return [[self.entry(a, b) for b in self.cols] for a in self.rows]

    def is_virtual(self):
        return not self.rows or not self.cols

    def is_zero(self):
        return not self.entries

    def is_positive(self):
        if self.is_virtual():
            return False
        return all((a, b) in self.entries for a in self.rows for b in self.cols)

    def is_zero_one(self):
        return all(v == 1 for v in self.entries.values())

    def boolean(self):
        return GenMatrix(self.rows, self.cols,
                         {k: 1 for k in self.entries})

    def transpose(self):
        return GenMatrix(self.cols, self.rows,
                         {(b, a): v for (a, b), v in self.entries.items()})

    def entry_sum(self):
        return sum(self.entries.values())

    def row_of(self, a):
        return {b: self.entry(a, b) for b in self.cols if self.entry(a, b)}

    def mul(self, other):
        if set(self.cols) != set(other.rows):
            raise IncompatibleAlphabets(
                "cannot multiply: cols %r vs rows %r" % (self.cols, other.rows))
        entries = {}
        # group other's entries by row once
        by_row = {}
        for (b, c), v in other.entries.items():
            by_row.setdefault(b, []).append((c, v))
        for (a, b), u in self.entries.items():
            for c, v in by_row.get(b, ()):
                key = (a, c)
                entries[key] = entries.get(key, 0) + u * v
        return GenMatrix(self.rows, other.cols, entries)

    def __mul__(self, other):
        return self.mul(other)

    def add(self, other):
        if set(self.rows) != set(other.rows) or set(self.cols) != set(other.cols):
            raise IncompatibleAlphabets("addition needs identical alphabets")
        entries = dict(self.entries)
        for k, v in other.entries.items():
            entries[k] = entries.get(k, 0) + v
        return GenMatrix(self.rows, self.cols, entries)

    def sub(self, other):
        """Entrywise difference; raises if any entry would go negative."""
        if set(self.rows) != set(other.rows) or set(self.cols) != set(other.cols):
            raise IncompatibleAlphabets("subtraction needs identical alphabets")
        entries = {}
        for a in self.rows:
            for b in self.cols:
                d = self.entry(a, b) - other.entry(a, b)
                if d < 0:
                    raise ShapeMismatch("negative difference at (%r,%r)" % (a, b))
                if d:
                    entries[(a, b)] = d
        return GenMatrix(self.rows, self.cols, entries)

    def restrict(self, rows, cols):
        rows, cols = tuple(rows), tuple(cols)
        entries = {(a, b): v for (a, b), v in self.entries.items()
                   if a in set(rows) and b in set(cols)}
        return GenMatrix(rows, cols, entries)

    def relabel(self, row_map=None, col_map=None):
        rm = row_map or {}
        cm = col_map or {}
        rows = tuple(rm.get(a, a) for a in self.rows)
        cols = tuple(cm.get(b, b) for b in self.cols)
        entries = {(rm.get(a, a), cm.get(b, b)): v
                   for (a, b), v in self.entries.items()}
        return GenMatrix(rows, cols, entries)

    def mul_vec(self, vec):
        """Apply to a column vector given as {col_label: value}."""
        out = {a: 0 for a in self.rows}
        for (a, b), v in self.entries.items():
            out[a] += v * vec.get(b, 0)
        return out

    def vec_mul(self, vec):
        """Left-multiply a row vector {row_label: value}."""
        out = {b: 0 for b in self.cols}
        for (a, b), v in self.entries.items():
            out[b] += vec.get(a, 0) * v
        return out

    @classmethod
    def identity(cls, labels):
        labels = tuple(labels)
        return cls(labels, labels, {(a, a): 1 for a in labels})

    def same_as(self, other):
        """Equality of alphabets-as-sets and all entries."""
        return (set(self.rows) == set(other.rows)
                and set(self.cols) == set(other.cols)
                and self.entries == other.entries)

    def __eq__(self, other):
        if not isinstance(other, GenMatrix):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash((frozenset(self.rows), frozenset(self.cols),
                     frozenset(self.entries.items())))

    def __repr__(self):
        return "GenMatrix(%r, %r, %r)" % (self.rows, self.cols, self.to_lists())


def _check_chain(mats):
    for i in range(len(mats) - 1):
        if set(mats[i].cols) != set(mats[i + 1].rows):
            raise IncompatibleAlphabets(
                "level %d cols %r do not match level %d rows %r"
                % (i, mats[i].cols, i + 1, mats[i + 1].rows))


class MatrixSequence:
    """Base class; see EventuallyPeriodic and Truncated."""

    def matrix(self, i):
        raise NotImplementedError

    def alphabet(self, i):
        raise NotImplementedError

    @property
    def is_eventually_periodic(self):
        return isinstance(self, EventuallyPeriodic)

    @property
    def horizon(self):
        return None

    def unroll(self, n):
        return [self.matrix(i) for i in range(n)]

    def alphabet_sizes(self, n):
        return [len(self.alphabet(i)) for i in range(n)]


class EventuallyPeriodic(MatrixSequence):
    def __init__(self, prefix, cycle):
        prefix, cycle = list(prefix), list(cycle)
        if not cycle:
            raise ShapeMismatch("cycle must be nonempty")
        _check_chain(prefix + cycle)
        if set(cycle[-1].cols) != set(cycle[0].rows):
            raise IncompatibleAlphabets("cycle does not close")
        self.prefix = prefix
        self.cycle = cycle

    @property
    def prefix_len(self):
        return len(self.prefix)

    @property
    def period(self):
        return len(self.cycle)

    def phase(self, i):
        if i < self.prefix_len:
            raise ValueError("level %d is in the prefix" % i)
        return (i - self.prefix_len) % self.period

    def matrix(self, i):
        if i < 0:
            raise IndexError(i)
        if i < self.prefix_len:
            return self.prefix[i]
        return self.cycle[self.phase(i)]

    def alphabet(self, i):
        return self.matrix(i).rows

    def liminf_alphabet_size(self):
        return min(len(m.rows) for m in self.cycle)

    def __repr__(self):
        return ("EventuallyPeriodic(prefix=%d mats, cycle=%d mats)"
                % (self.prefix_len, self.period))


class Truncated(MatrixSequence):
    def __init__(self, terms):
        terms = list(terms)
        if not terms:
            raise ShapeMismatch("need at least one term")
        _check_chain(terms)
        self.terms = terms

    @property
    def horizon(self):
        return len(self.terms)

    def matrix(self, i):
        if i < 0:
            raise IndexError(i)
        if i >= len(self.terms):
            raise HorizonExceeded("level %d beyond horizon %d" % (i, len(self.terms)))
        return self.terms[i]

    def alphabet(self, i):
        if i == len(self.terms):
            return self.terms[-1].cols
        return self.matrix(i).rows

    def __repr__(self):
        return "Truncated(%d terms)" % len(self.terms)


def from_int_matrices(mats, cycle_from=None, labels=None):
    """Convenience constructor from row-major int matrices.

    Labels default to "0","1",...  per level, sized to fit.  If `cycle_from`
    is given, matrices from that index on form the cycle; otherwise the
    result is Truncated.
    """
    dims = [len(m) for m in mats] + [len(mats[-1][0])]
    alphs = []
    for k, d in enumerate(dims):
        if labels is not None:
            alphs.append(tuple(labels[k]))
        else:
            alphs.append(tuple(str(j) for j in range(d)))
    gm = [GenMatrix.from_lists(alphs[i], alphs[i + 1], m)
          for i, m in enumerate(mats)]
    if cycle_from is None:
        return Truncated(gm)
    return EventuallyPeriodic(gm[:cycle_from], gm[cycle_from:])


def constant(mat_lists, labels=None):
    """The stationary sequence repeating one square matrix."""
    d = len(mat_lists)
    labs = tuple(labels) if labels is not None else tuple(str(j) for j in range(d))
    m = GenMatrix.from_lists(labs, labs, mat_lists)
    return EventuallyPeriodic([], [m])


def matmul(a, b):
    return a.mul(b)


def partial_product(seq, i, n):
    """The product matrix(i) * matrix(i+1) * ... * matrix(n), mapping level
    i to level n+1 (both endpoints inclusive)."""
    if n < i:
        raise ShapeMismatch("empty product range %d..%d" % (i, n))
    out = seq.matrix(i)
    for k in range(i + 1, n + 1):
        out = out.mul(seq.matrix(k))
    return out


def _compare_horizon(m, mhat):
    """Number of levels that must agree for two eventually periodic
    sequences to agree everywhere (prefixes plus one lcm of periods)."""
    import math
    p = max(m.prefix_len, mhat.prefix_len)
    return p + math.lcm(m.period, mhat.period)


def submatrix_leq(m, mhat):
    """Verdict on: m is a subsequence of mhat (alphabets contained, entries
    entrywise <=) at every level.  Exact for two eventually periodic
    sequences; Undecided(horizon) when only checkable to a horizon."""
    if m.is_eventually_periodic and mhat.is_eventually_periodic:
        levels, exact = _compare_horizon(m, mhat), True
    else:
        hs = [s.horizon for s in (m, mhat) if s.horizon is not None]
        levels, exact = min(hs), False
    for k in range(levels):
        a, ahat = m.matrix(k), mhat.matrix(k)
        if not set(a.rows) <= set(ahat.rows) or not set(a.cols) <= set(ahat.cols):
            return Verdict.no({"level": k, "reason": "alphabet not contained"})
        for (x, y), v in a.entries.items():
            if v > ahat.entry(x, y):
                return Verdict.no({"level": k, "entry": [x, y],
                                   "values": [v, ahat.entry(x, y)]})
    if exact:
        return Verdict.yes({"levels_checked": levels, "covers": "all levels"})
    return Verdict.undecided(levels, {"levels_checked": levels})


def gather(seq, times=None, blocks=None):
    """Gather consecutive matrices into products.

    Exactly one of `times` / `blocks` must be given.

    - times: strictly increasing level list starting at 0; output term j is
      the product over [times[j], times[j+1]).  The output is Truncated.
    - blocks = (prefix_blocks, cycle_blocks): lists of block lengths.  The
      cycle blocks must start at or after the input prefix and sum to a
      multiple of the period, so the output is EventuallyPeriodic.
    """
    if (times is None) == (blocks is None):
        raise ShapeMismatch("pass exactly one of times/blocks")
    if times is not None:
        if not times or times[0] != 0 or any(
                times[j] >= times[j + 1] for j in range(len(times) - 1)):
            raise ShapeMismatch("times must be strictly increasing from 0")
        if len(times) < 2:
            raise ShapeMismatch("need at least two times")
        if seq.horizon is not None and times[-1] > seq.horizon:
            raise HorizonExceeded("times reach %d beyond horizon %d"
                                  % (times[-1], seq.horizon))
        terms = [partial_product(seq, times[j], times[j + 1] - 1)
                 for j in range(len(times) - 1)]
        return Truncated(terms)

    if not seq.is_eventually_periodic:
        raise ShapeMismatch("block gathering needs an eventually periodic input")
    prefix_blocks, cycle_blocks = blocks
    if any(b <= 0 for b in itertools.chain(prefix_blocks, cycle_blocks)):
        raise ShapeMismatch("block lengths must be positive")
    if not cycle_blocks:
        raise ShapeMismatch("need at least one cycle block")
    start = sum(prefix_blocks)
    if start < seq.prefix_len:
        raise ShapeMismatch("prefix blocks must cover the input prefix")
    if sum(cycle_blocks) % seq.period != 0:
        raise ShapeMismatch("cycle blocks must sum to a multiple of the period")
    new_prefix, k = [], 0
    for b in prefix_blocks:
        new_prefix.append(partial_product(seq, k, k + b - 1))
        k += b
    new_cycle = []
    for b in cycle_blocks:
        new_cycle.append(partial_product(seq, k, k + b - 1))
        k += b
    return EventuallyPeriodic(new_prefix, new_cycle)


# ---------------------------------------------------------------------------
# reduction


def _right_alive_cycle(seq):
    """Greatest fixpoint of 'has an edge into a surviving next-phase symbol'
    on the cycle alphabets.  Returns one frozenset per cycle phase."""
    T = seq.period
    alive = [set(seq.cycle[p].rows) for p in range(T)]
    changed = True
    while changed:
        changed = False
        for p in range(T):
            nxt = alive[(p + 1) % T]
            keep = {a for a in alive[p]
                    if any(b in nxt for (x, b) in seq.cycle[p].entries if x == a)}
            if keep != alive[p]:
                alive[p] = keep
                changed = True
    return [frozenset(s) for s in alive]


def reduce_sequence(seq):
    """Remove symbols that cannot be extended infinitely to the right or
    reached from level 0 on the left.  Returns (reduced, log).

    The result keeps exactly the same infinite edge paths, is unique, and an
    eventually periodic input yields an eventually periodic output (possibly
    with a longer prefix).  For Truncated input the right-extendability test
    is optimistic at the horizon, and the log says so.
    """
    if seq.is_eventually_periodic:
        P, T = seq.prefix_len, seq.period
        cyc_alive = _right_alive_cycle(seq)
        right = {}
        # backward through the prefix, seeded by the cycle fixpoint
        nxt = set(cyc_alive[0])
        for k in range(P - 1, -1, -1):
            m = seq.prefix[k]
            right[k] = {a for a in m.rows
                        if any(b in nxt for (x, b) in m.entries if x == a)}
            nxt = right[k]

        def right_alive(k):
            if k < P:
                return right[k]
            return cyc_alive[(k - P) % T]

        # forward sweep with cycle detection on (phase, surviving set)
        survive = [frozenset(right_alive(0))]
        seen = {}
        k = 0
        while True:
            if k >= P:
                state = ((k - P) % T, survive[k])
                if state in seen:
                    loop_start = seen[state]
                    break
                seen[state] = k
            m = seq.matrix(k)
            cur = survive[k]
            nxt = frozenset(b for b in right_alive(k + 1)
                            if any(a in cur for (a, x) in m.entries if x == b))
            survive.append(nxt)
            k += 1
        loop_len = k - loop_start
        new_prefix = [seq.matrix(i).restrict(
            tuple(a for a in seq.matrix(i).rows if a in survive[i]),
            tuple(b for b in seq.matrix(i).cols if b in survive[i + 1]))
            for i in range(loop_start)]
        new_cycle = []
        for j in range(loop_len):
            i = loop_start + j
            tgt = survive[i + 1] if j < loop_len - 1 else survive[loop_start]
            new_cycle.append(seq.matrix(i).restrict(
                tuple(a for a in seq.matrix(i).rows if a in survive[i]),
                tuple(b for b in seq.matrix(i).cols if b in tgt)))
        reduced = EventuallyPeriodic(new_prefix, new_cycle)
        log = {
            "levels": {i: sorted(set(seq.matrix(i).rows) - set(survive[i]))
                       for i in range(loop_start)},
            "periodic": {j: sorted(set(seq.matrix(loop_start + j).rows)
                                   - set(survive[loop_start + j]))
                         for j in range(loop_len)},
            "horizon_limited": False,
        }
        return reduced, log

    # truncated: optimistic at the horizon
    h = seq.horizon
    right = {h: set(seq.alphabet(h))}
    for k in range(h - 1, -1, -1):
        m = seq.matrix(k)
        right[k] = {a for a in m.rows
                    if any(b in right[k + 1] for (x, b) in m.entries if x == a)}
    survive = [frozenset(right[0])]
    for k in range(h):
        m = seq.matrix(k)
        cur = survive[k]
        survive.append(frozenset(b for b in right[k + 1]
                                 if any(a in cur for (a, x) in m.entries if x == b)))
    terms = [seq.matrix(i).restrict(
        tuple(a for a in seq.matrix(i).rows if a in survive[i]),
        tuple(b for b in seq.matrix(i).cols if b in survive[i + 1]))
        for i in range(h)]
    log = {
        "levels": {i: sorted(set(seq.matrix(i).rows) - set(survive[i]))
                   for i in range(h)},
        "horizon_limited": True,
    }
    return Truncated(terms), log


def is_reduced(seq):
    reduced, log = reduce_sequence(seq)
    removed = any(v for v in log["levels"].values())
    if not removed and "periodic" in log:
        removed = any(v for v in log["periodic"].values())
    return not removed


# ---------------------------------------------------------------------------
# primitivity


def wielandt_bound(d):
    return (d - 1) ** 2 + 1


def _bool_key(m):
    return (m.rows, m.cols, frozenset(m.entries))


def _positivity_from(seq, k):
    """Iterate boolean partial products starting at level k until a strictly
    positive product appears or (for eventually periodic input) the state
    (phase, boolean matrix) repeats.  Returns ('yes', n) / ('no', n) /
    ('horizon', n)."""
    P = seq.prefix_len if seq.is_eventually_periodic else None
    B = seq.matrix(k).boolean()
    m = k + 1
    seen = set()
    while True:
        if B.is_positive():
            return ("yes", m - k)
        # an all-zero row can never fill in again
        if any(all(B.entry(a, b) == 0 for b in B.cols) for a in B.rows):
            return ("no", m - k)
        if seq.is_eventually_periodic:
            if m >= P:
                state = ((m - P) % seq.period, _bool_key(B))
                if state in seen:
                    return ("no", m - k)
                seen.add(state)
        else:
            if m >= seq.horizon:
                return ("horizon", m - k)
        B = B.mul(seq.matrix(m).boolean())
        m += 1


def is_primitive(seq):
    """Verdict on: for every level k there is n with the partial product
    from k to n strictly positive.  Exact for eventually periodic input;
    Truncated input can only be refuted (a zero row persists forever), never
    confirmed."""
    if seq.is_eventually_periodic:
        if any(not seq.matrix(i).rows for i in
               range(seq.prefix_len + seq.period)):
            return Verdict.no({"reason": "empty alphabet"})
        witness = {}
        for k in range(seq.prefix_len + seq.period):
            res, n = _positivity_from(seq, k)
            if res == "no":
                return Verdict.no({"start_level": k, "steps_explored": n})
            witness[k] = n
        d = max(len(seq.matrix(i).rows)
                for i in range(seq.prefix_len + seq.period))
        return Verdict.yes({"positive_after": witness,
                            "wielandt_bound": wielandt_bound(d)})
    hits = {}
    for k in range(seq.horizon):
        res, n = _positivity_from(seq, k)
        if res == "no":
            return Verdict.no({"start_level": k, "steps_explored": n})
        if res == "horizon":
            return Verdict.undecided(seq.horizon, {"positive_after": hits,
                                                   "stuck_at": k})
        hits[k] = n
    return Verdict.undecided(seq.horizon, {"positive_after": hits})


# ---------------------------------------------------------------------------
# state splitting


def edge_label(a, b, i):
    return "%s>%s.%d" % (a, b, i)


def split_matrix(m):
    """Factor m = A*B with A a 0-1 matrix (one 1 per column) over rows x
    edges and B a 0-1 matrix over edges x cols.  Edge labels carry source,
    target and index so the factorization is canonical."""
    edges = []
    a_entries, b_entries = {}, {}
    for a in m.rows:
        for b in m.cols:
            for i in range(m.entry(a, b)):
                e = edge_label(a, b, i)
                edges.append(e)
                a_entries[(a, e)] = 1
                b_entries[(e, b)] = 1
    edges = tuple(edges)
    A = GenMatrix(m.rows, edges, a_entries)
    B = GenMatrix(edges, m.cols, b_entries)
    return A, B


class StateSplit:
    """The result of splitting every matrix of a sequence: per level a pair
    (A_i, B_i) with A_i * B_i equal to the original matrix.  The link
    matrices B_i * A_{i+1} connect consecutive edge alphabets."""

    def __init__(self, seq):
        self.seq = seq
        if seq.is_eventually_periodic:
            self._prefix = [split_matrix(m) for m in seq.prefix]
            self._cycle = [split_matrix(m) for m in seq.cycle]
        else:
            self._terms = [split_matrix(m) for m in seq.terms]
        for i in range(seq.prefix_len + seq.period
                       if seq.is_eventually_periodic else seq.horizon):
            A, B = self.pair(i)
            assert A.mul(B).same_as(self.seq.matrix(i))

    def pair(self, i):
        if self.seq.is_eventually_periodic:
            P = self.seq.prefix_len
            if i < P:
                return self._prefix[i]
            return self._cycle[(i - P) % self.seq.period]
        if i >= self.seq.horizon:
            raise HorizonExceeded(i)
        return self._terms[i]

    def a(self, i):
        return self.pair(i)[0]

    def b(self, i):
        return self.pair(i)[1]

    def edge_alphabet(self, i):
        return self.a(i).cols

    def link(self, i):
        """B_i * A_{i+1}: the edge-to-edge matrix between levels i, i+1."""
        return self.b(i).mul(self.a(i + 1))


def state_split(seq):
    return StateSplit(seq)


# ---------------------------------------------------------------------------
# JSON


def matrix_to_json(m):
    return m.to_lists()


def to_json(seq):
    if seq.is_eventually_periodic:
        alphabets = [list(m.rows) for m in seq.prefix] + \
                    [list(m.rows) for m in seq.cycle]
        return {"kind": "eventually_periodic",
                "alphabets": alphabets,
                "prefix": [m.to_lists() for m in seq.prefix],
                "cycle": [m.to_lists() for m in seq.cycle]}
    alphabets = [list(m.rows) for m in seq.terms] + [list(seq.terms[-1].cols)]
    return {"kind": "truncated",
            "alphabets": alphabets,
            "terms": [m.to_lists() for m in seq.terms]}


def from_json(obj):
    kind = obj.get("kind", "eventually_periodic" if "cycle" in obj else "truncated")
    alphs = [tuple(a) for a in obj["alphabets"]]
    if kind == "eventually_periodic":
        prefix_arrays = obj.get("prefix", [])
        cycle_arrays = obj["cycle"]
        P, T = len(prefix_arrays), len(cycle_arrays)
        if len(alphs) != P + T:
            raise ShapeMismatch("need one alphabet per prefix/cycle matrix")
        mats = []
        for i, arr in enumerate(prefix_arrays + cycle_arrays):
            rows = alphs[i]
            if i < P + T - 1:
                cols = alphs[i + 1]
            else:
                cols = alphs[P]  # cycle closes
            mats.append(GenMatrix.from_lists(rows, cols, arr))
        return EventuallyPeriodic(mats[:P], mats[P:])
    arrays = obj["terms"]
    if len(alphs) != len(arrays) + 1:
        raise ShapeMismatch("need one alphabet per level incl. final")
    mats = [GenMatrix.from_lists(alphs[i], alphs[i + 1], arr)
            for i, arr in enumerate(arrays)]
    return Truncated(mats)
