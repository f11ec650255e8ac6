"""Graded graphs presented by matrix sequences, with stable edge orders.

An edge from symbol a at level k to symbol b at level k+1 is identified by
the tuple (k, a, b, i) with 0 <= i < M_k(a,b).  A stable order is, for every
level and every target symbol, a total order on the edges arriving at that
target.  The default order sorts edges by (source position, index).
"""

from .errors import (
    MalformedWord,
    InsufficientPrefix,
    AbelianizationMismatch,
    EmptyEdgeAlphabet,
    HorizonExceeded,
    ShapeMismatch,
)
from .verdict import Verdict
from . import matrixseq
from .matrixseq import partial_product


def edges_from_matrix(level, m):
    out = []
    for a in m.rows:
        for b in m.cols:
            for i in range(m.entry(a, b)):
                out.append((level, a, b, i))
    return out


class StableOrder:
    """Per-level, per-target edge orders for an eventually periodic (or
    truncated) diagram.  Orders are stored level-free as (source, index)
    pairs; for eventually periodic diagrams the cycle part repeats.
    """

    def __init__(self, seq, prefix_orders=None, cycle_orders=None,
                 term_orders=None):
        self.seq = seq
        if seq.is_eventually_periodic:
            self.prefix_orders = [self._fill(seq.matrix(i), o) for i, o in
                                  enumerate(prefix_orders
                                            or [None] * seq.prefix_len)]
            self.cycle_orders = [self._fill(seq.cycle[p], o) for p, o in
                                 enumerate(cycle_orders
                                           or [None] * seq.period)]
        else:
            self.term_orders = [self._fill(seq.matrix(i), o) for i, o in
                                enumerate(term_orders
                                          or [None] * seq.horizon)]

    @staticmethod
    def _fill(m, order):
        """Normalize/validate one level's order: {target: [(source, idx)]}."""
        full = {}
        for b in m.cols:
            expect = [(a, i) for a in m.rows for i in range(m.entry(a, b))]
            if order is None or b not in order:
                full[b] = list(expect)
            else:
                given = [tuple(e) for e in order[b]]
                if sorted(given) != sorted(expect):
                    raise MalformedWord(
                        "order for target %r is not a permutation of its "
                        "incoming edges" % (b,))
                full[b] = given
        return full

    def level_orders(self, k):
        if self.seq.is_eventually_periodic:
            if k < self.seq.prefix_len:
                return self.prefix_orders[k]
            return self.cycle_orders[self.seq.phase(k)]
        if k >= self.seq.horizon:
            raise HorizonExceeded(k)
        return self.term_orders[k]

    def incoming(self, k, b):
        """Ordered edge list into symbol b at level k+1."""
        order = self.level_orders(k)
        if b not in order:
            raise MalformedWord("no symbol %r at level %d" % (b, k + 1))
        return [(k, a, b, i) for (a, i) in order[b]]

    def position(self, edge):
        k, a, b, i = edge
        order = self.level_orders(k)[b]
        return order.index((a, i))

    def class_size(self, edge):
        k, a, b, i = edge
        return len(self.level_orders(k)[b])

    def is_max(self, edge):
        return self.position(edge) == self.class_size(edge) - 1

    def is_min(self, edge):
        return self.position(edge) == 0

    def next_edge(self, edge):
        k, a, b, i = edge
        order = self.level_orders(k)[b]
        pos = order.index((a, i))
        if pos + 1 >= len(order):
            return None
        na, ni = order[pos + 1]
        return (k, na, b, ni)

    def prev_edge(self, edge):
        k, a, b, i = edge
        order = self.level_orders(k)[b]
        pos = order.index((a, i))
        if pos == 0:
            return None
        na, ni = order[pos - 1]
        return (k, na, b, ni)

    def min_edge_into(self, k, b):
        order = self.level_orders(k)[b]
        if not order:
            raise EmptyEdgeAlphabet("no edges into %r at level %d" % (b, k + 1))
        a, i = order[0]
        return (k, a, b, i)

    def max_edge_into(self, k, b):
        order = self.level_orders(k)[b]
        if not order:
            raise EmptyEdgeAlphabet("no edges into %r at level %d" % (b, k + 1))
        a, i = order[-1]
        return (k, a, b, i)

    def to_json(self):
        def conv(levels):
            return [{b: [[a, i] for (a, i) in pairs]
                     for b, pairs in lo.items()} for lo in levels]
        if self.seq.is_eventually_periodic:
            return {"prefix": conv(self.prefix_orders),
                    "cycle": conv(self.cycle_orders)}
        return {"terms": conv(self.term_orders)}


class BratteliDiagram:
    def __init__(self, seq, order=None):
        self.seq = seq
        self.order = order if order is not None else StableOrder(seq)

    def matrix(self, i):
        return self.seq.matrix(i)

    def alphabet(self, i):
        return self.seq.alphabet(i)

    @property
    def is_eventually_periodic(self):
        return self.seq.is_eventually_periodic

    def edges_at(self, level):
        return edges_from_matrix(level, self.seq.matrix(level))

    def to_json(self):
        out = matrixseq.to_json(self.seq)
        out["order"] = self.order.to_json()
        return out

    @classmethod
    def from_json(cls, obj):
        seq = matrixseq.from_json(obj)
        order_obj = obj.get("order")
        if order_obj is None:
            return cls(seq)

        def conv(levels):
            return [{b: [tuple(e) for e in pairs] for b, pairs in lo.items()}
                    for lo in levels]
        if seq.is_eventually_periodic:
            order = StableOrder(seq,
                                prefix_orders=conv(order_obj.get("prefix", [])) or None,
                                cycle_orders=conv(order_obj.get("cycle", [])) or None)
        else:
            order = StableOrder(seq, term_orders=conv(order_obj.get("terms", [])) or None)
        return cls(seq, order)


def substitution_order(seq, substitutions, prefix_substitutions=None):
    """Build a stable order from substitution words.

    `substitutions` maps each target symbol to the word of source symbols
    read off in edge order, one dict per cycle phase (or a single dict used
    for every phase).  The letter counts must reproduce the matrix columns,
    otherwise AbelianizationMismatch is raised.
    """
    if not seq.is_eventually_periodic:
        raise ShapeMismatch("substitution orders need an eventually periodic input")
    if isinstance(substitutions, dict):
        substitutions = [substitutions] * seq.period

    def order_for(m, subs):
        out = {}
        for b in m.cols:
            word = list(subs[b])
            counts = {}
            pairs = []
            for a in word:
                i = counts.get(a, 0)
                counts[a] = i + 1
                pairs.append((a, i))
            for a in m.rows:
                if counts.get(a, 0) != m.entry(a, b):
                    raise AbelianizationMismatch(
                        "word for %r has %d occurrences of %r, matrix says %d"
                        % (b, counts.get(a, 0), a, m.entry(a, b)))
            out[b] = pairs
        return out

    cycle_orders = [order_for(seq.cycle[p], substitutions[p])
                    for p in range(seq.period)]
    prefix_orders = None
    if prefix_substitutions is not None:
        prefix_orders = [order_for(seq.prefix[i], prefix_substitutions[i])
                         for i in range(seq.prefix_len)]
    return StableOrder(seq, prefix_orders=prefix_orders,
                       cycle_orders=cycle_orders)


# ---------------------------------------------------------------------------
# words, cylinders, metric


def check_word(seq, word, start=0):
    """Validate an edge word starting at `start`; raises MalformedWord."""
    for j, edge in enumerate(word):
        k, a, b, i = edge
        if k != start + j:
            raise MalformedWord("edge %r at position %d should be at level %d"
                                % (edge, j, start + j))
        m = seq.matrix(k)
        if a not in m.rows or b not in m.cols:
            raise MalformedWord("edge %r uses unknown symbols" % (edge,))
        if not 0 <= i < m.entry(a, b):
            raise MalformedWord("edge %r index out of range (multiplicity %d)"
                                % (edge, m.entry(a, b)))
        if j > 0 and word[j - 1][2] != a:
            raise MalformedWord("edges %r and %r do not compose"
                                % (word[j - 1], edge))


def right_alive_symbols(seq, level):
    """Symbols at `level` from which an infinite path exists.  Exact for
    eventually periodic input; optimistic (everything alive) at the horizon
    of a Truncated input."""
    if seq.is_eventually_periodic:
        P, T = seq.prefix_len, seq.period
        cyc = matrixseq._right_alive_cycle(seq)
        if level >= P:
            return set(cyc[(level - P) % T])
        nxt = set(cyc[0])
        for k in range(P - 1, level - 1, -1):
            m = seq.prefix[k]
            nxt = {a for a in m.rows
                   if any(b in nxt for (x, b) in m.entries if x == a)}
        return nxt
    h = seq.horizon
    alive = set(seq.alphabet(h))
    for k in range(h - 1, level - 1, -1):
        m = seq.matrix(k)
        alive = {a for a in m.rows
                 if any(b in alive for (x, b) in m.entries if x == a)}
    return alive


class Cylinder:
    def __init__(self, seq, word, start=0):
        check_word(seq, word, start)
        self.seq = seq
        self.word = tuple(word)
        self.start = start

    @property
    def end_level(self):
        return self.start + len(self.word)

    @property
    def end_symbol(self):
        if self.word:
            return self.word[-1][2]
        return None

    def is_empty(self):
        """Verdict: the cylinder contains no infinite path."""
        if not self.word:
            # whole space: nonempty iff some symbol is right-alive
            alive = right_alive_symbols(self.seq, self.start)
            if self.seq.is_eventually_periodic:
                if alive:
                    return Verdict.no({"alive": sorted(alive)})
                return Verdict.yes({"reason": "no right-extendable symbol"})
            if alive:
                return Verdict.undecided(self.seq.horizon,
                                         {"alive_to_horizon": sorted(alive)})
            return Verdict.yes({"reason": "no extension within horizon"})
        alive = right_alive_symbols(self.seq, self.end_level)
        sym = self.end_symbol
        if self.seq.is_eventually_periodic:
            if sym in alive:
                return Verdict.no({"end_symbol": sym})
            return Verdict.yes({"end_symbol": sym,
                                "reason": "not right-extendable"})
        if sym in alive:
            return Verdict.undecided(self.seq.horizon, {"end_symbol": sym})
        return Verdict.yes({"end_symbol": sym,
                            "reason": "no extension within horizon"})

    def __repr__(self):
        return "Cylinder(start=%d, word=%r)" % (self.start, self.word)


def cylinder(seq_or_diagram, word, start=0):
    seq = getattr(seq_or_diagram, "seq", seq_or_diagram)
    return Cylinder(seq, word, start)


def count_words(seq, k, n):
    """Number of allowed edge words covering levels k..n inclusive."""
    return partial_product(seq, k, n).entry_sum()


def enumerate_paths(diagram, depth):
    """All allowed edge words covering levels 0..depth-1, sorted."""
    seq = getattr(diagram, "seq", diagram)
    if depth <= 0:
        return [()]
    words = [((e,), e[2]) for e in edges_from_matrix(0, seq.matrix(0))]
    for k in range(1, depth):
        m = seq.matrix(k)
        nxt = []
        for word, v in words:
            for b in m.cols:
                for i in range(m.entry(v, b)):
                    nxt.append((word + ((k, v, b, i),), b))
        words = nxt
    return sorted(w for w, _ in words)


def word_metric(seq_or_diagram, e, f):
    """Ultrametric distance between two paths given by prefixes e, f.

    Distance 1 when the first edges differ; otherwise 1/(number of words
    through the last agreeing level).  Raises InsufficientPrefix when the
    given prefixes agree throughout their common length."""
    seq = getattr(seq_or_diagram, "seq", seq_or_diagram)
    e, f = tuple(e), tuple(f)
    check_word(seq, e)
    check_word(seq, f)
    common = min(len(e), len(f))
    if common == 0:
        raise InsufficientPrefix("empty prefix")
    if e[0] != f[0]:
        from fractions import Fraction
        return Fraction(1)
    m = None
    for j in range(common):
        if e[j] != f[j]:
            break
        m = j
    else:
        raise InsufficientPrefix("prefixes agree on their common length")
    from fractions import Fraction
    return Fraction(1, count_words(seq, 0, m))
