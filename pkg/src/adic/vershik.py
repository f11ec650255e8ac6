"""Successor dynamics on ordered path spaces.

Paths are represented lazily: an explicit edge prefix plus, for eventually
periodic diagrams, a periodic tail (one period of edges, repeated).  The
successor map increments the least non-maximal edge and rewrites everything
below it minimally; paths whose edges are all maximal have no successor.
"""

import math
from fractions import Fraction

from .errors import (
    MalformedWord,
    UndeterminedTail,
    NotInBase,
    ShapeMismatch,
)
from .diagram import check_word
from .matrixseq import partial_product


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class LazyPath:
    """An infinite (or finite) path: explicit edges for levels
    start..tail_start-1, then an optional periodic tail.

    tail_cycle, when given, lists the edges of one tail period starting at
    level tail_start; the edge used at level k >= tail_start is the pattern
    at position (k - tail_start) % len(tail_cycle), shifted to level k.  The
    tail period must be a multiple of the diagram's period and start in the
    periodic region, so the shifted edges exist.

    tail="min" / tail="max" instead asks for a continuation all of whose
    edges are minimal (resp. maximal) in the order; it is resolved at
    construction into a concrete periodic tail (least vertex chosen at
    branches).  An empty prefix then needs start_vertex."""

    def __init__(self, diagram, prefix_edges, tail_cycle=None, start=0,
                 tail=None, start_vertex=None):
        self.diagram = diagram
        self.start = start
        self.prefix_edges = tuple(tuple(e) for e in prefix_edges)
        if self.prefix_edges:
            check_word(diagram.seq, self.prefix_edges, start)
        self.tail_rule = tail if tail in ("min", "max") else (
            "periodic" if tail_cycle else None)
        if tail in ("min", "max"):
            if tail_cycle is not None:
                raise ShapeMismatch("give either a tail rule or an explicit "
                                    "tail cycle, not both")
            if self.prefix_edges:
                v = self.prefix_edges[-1][2]
            elif start_vertex is not None:
                v = start_vertex
            else:
                raise MalformedWord("extremal tail from an empty prefix "
                                    "needs start_vertex")
            pad, cycle = _extremal_continuation(
                diagram, v, start + len(self.prefix_edges), tail)
            self.prefix_edges = self.prefix_edges + pad
            tail_cycle = cycle
        self.tail_cycle = tuple(tuple(e) for e in tail_cycle) if tail_cycle \
            else None
        if self.tail_cycle:
            seq = diagram.seq
            if not seq.is_eventually_periodic:
                raise UndeterminedTail("periodic tails need an eventually "
                                       "periodic diagram")
            ts = self.tail_start
            if ts < seq.prefix_len:
                raise ShapeMismatch("tail must start in the periodic region")
            if len(self.tail_cycle) % seq.period != 0:
                raise ShapeMismatch("tail period must be a multiple of the "
                                    "diagram period")
            check_word(seq, self.tail_cycle, ts)
            if self.prefix_edges and \
                    self.prefix_edges[-1][2] != self.tail_cycle[0][1]:
                raise MalformedWord("prefix does not compose with the tail")
            if self.tail_cycle[-1][2] != self.tail_cycle[0][1]:
                raise MalformedWord("tail cycle does not close")

    @property
    def tail_start(self):
        return self.start + len(self.prefix_edges)

    def edge(self, k):
        if k < self.start:
            raise IndexError(k)
        if k < self.tail_start:
            return self.prefix_edges[k - self.start]
        if self.tail_cycle is None:
            raise UndeterminedTail("level %d beyond the explicit prefix" % k)
        pos = (k - self.tail_start) % len(self.tail_cycle)
        _, a, b, i = self.tail_cycle[pos]
        return (k, a, b, i)

    def word(self, upto):
        """Edges for levels start..upto-1."""
        return tuple(self.edge(k) for k in range(self.start, upto))

    def vertex(self, k):
        if k == self.start:
            if self.prefix_edges:
                return self.prefix_edges[0][1]
            if self.tail_cycle:
                return self.tail_cycle[0][1]
            raise UndeterminedTail("empty path")
        return self.edge(k - 1)[2]

    def __repr__(self):
        tail = ("+%d-periodic tail" % len(self.tail_cycle)
                if self.tail_cycle else "")
        return "LazyPath(%r%s)" % (self.prefix_edges, tail)


def min_word_into(diagram, vertex, level, start=0):
    """The minimal edge word covering levels start..level-1 and ending at
    `vertex` (at `level`): built backward with minimal edges."""
    edges = []
    v = vertex
    for k in range(level - 1, start - 1, -1):
        e = diagram.order.min_edge_into(k, v)
        edges.append(e)
        v = e[1]
    edges.reverse()
    return tuple(edges)


def max_word_into(diagram, vertex, level, start=0):
    edges = []
    v = vertex
    for k in range(level - 1, start - 1, -1):
        e = diagram.order.max_edge_into(k, v)
        edges.append(e)
        v = e[1]
    edges.reverse()
    return tuple(edges)


def _extremal_continuation(diagram, vertex, level, kind):
    """A continuation from (level, vertex) using only edges that are
    minimal (kind="min") / maximal (kind="max") into their targets, found
    by depth-first lasso search over (phase, vertex) states.  Returns
    (pad_edges, cycle_edges); the pad covers the levels up to where the
    cycle begins.  Deterministic: branches are tried in (target, index)
    order."""
    seq = diagram.seq
    if not seq.is_eventually_periodic:
        raise UndeterminedTail("extremal tails need an eventually periodic "
                               "diagram")
    P, T = seq.prefix_len, seq.period
    sel = (diagram.order.min_edge_into if kind == "min"
           else diagram.order.max_edge_into)

    def options(k, v):
        mat = seq.matrix(k)
        out = []
        for b in mat.cols:
            if mat.entry(v, b):
                e = sel(k, b)
                if e[1] == v:
                    out.append(e)
        out.sort(key=lambda e: (e[2], e[3]))
        return out

    edges = []
    seen = {}

    def dfs(k, v):
        if k >= P:
            st = ((k - P) % T, v)
            if st in seen:
                return seen[st]
            seen[st] = len(edges)
        for e in options(k, v):
            edges.append(e)
            res = dfs(k + 1, e[2])
            if res is not None:
                return res
            edges.pop()
        if k >= P:
            del seen[((k - P) % T, v)]
        return None

    idx = dfs(level, vertex)
    if idx is None:
        raise MalformedWord("no all-%simal continuation from %r at level %d"
                            % (kind, vertex, level))
    return tuple(edges[:idx]), tuple(edges[idx:])


def _first_special(path, which):
    """Least level whose edge is non-maximal ('succ') / non-minimal ('pred'),
    or None if certified absent, scanning the prefix and then one full tail
    period (enough, by periodicity)."""
    order = path.diagram.order
    test = order.is_max if which == "succ" else order.is_min
    for k in range(path.start, path.tail_start):
        if not test(path.edge(k)):
            return k
    if path.tail_cycle is None:
        return None
    for j in range(len(path.tail_cycle)):
        k = path.tail_start + j
        if not test(path.edge(k)):
            return k
    return None


def successor(path):
    """The next path in the anti-lexicographic order, or None when every
    edge is maximal (the path has no successor)."""
    m = _first_special(path, "succ")
    if m is None:
        return None
    order = path.diagram.order
    new_edge = order.next_edge(path.edge(m))
    head = min_word_into(path.diagram, new_edge[1], m, path.start)
    return _rebuild(path, head + (new_edge,), m)


def predecessor(path):
    m = _first_special(path, "pred")
    if m is None:
        return None
    order = path.diagram.order
    new_edge = order.prev_edge(path.edge(m))
    head = max_word_into(path.diagram, new_edge[1], m, path.start)
    return _rebuild(path, head + (new_edge,), m)


def _rebuild(path, new_head, m):
    """Reassemble a path that changed at level m (new_head covers levels
    start..m), keeping everything beyond m."""
    if path.tail_cycle is None:
        rest = path.prefix_edges[m + 1 - path.start:]
        return LazyPath(path.diagram, new_head + rest, None, path.start)
    if m + 1 <= path.tail_start:
        rest = path.prefix_edges[m + 1 - path.start:]
        return LazyPath(path.diagram, new_head + rest, path.tail_cycle,
                        path.start)
    carry = tuple(path.edge(k) for k in range(m + 1, _next_tail_boundary(path, m)))
    ts = m + 1 + len(carry)
    rot = (ts - path.tail_start) % len(path.tail_cycle)
    cycle = tuple(path.tail_cycle[(rot + j) % len(path.tail_cycle)]
                  for j in range(len(path.tail_cycle)))
    # shift the rotated cycle so its stored levels are consistent patterns
    return LazyPath(path.diagram, new_head + carry,
                    [( ts + j, cycle[j][1], cycle[j][2], cycle[j][3])
                     for j in range(len(cycle))], path.start)


def _next_tail_boundary(path, m):
    L = len(path.tail_cycle)
    ts = path.tail_start
    n = m + 1
    while (n - ts) % L != 0:
        n += 1
    return n


def extremal_paths(diagram, kind=None):
    """The minimal and maximal path sets of an eventually periodic ordered
    diagram, as (minimal, maximal) lists of LazyPaths.  With kind="min" or
    "max", just the one list.  Each path is eventually periodic; the count
    of either set is at most the smallest cycle alphabet size."""
    if kind is None:
        return (extremal_paths(diagram, "min"),
                extremal_paths(diagram, "max"))
    seq = diagram.seq
    if not seq.is_eventually_periodic:
        raise UndeterminedTail("extremal paths need an eventually periodic "
                               "diagram")
    sel = (diagram.order.min_edge_into if kind == "min"
           else diagram.order.max_edge_into)
    P, T = seq.prefix_len, seq.period

    def down(vertex, level, stop):
        """Follow extremal edges backward from (level, vertex) to `stop`;
        returns (edges, vertex at stop)."""
        edges = []
        v = vertex
        for k in range(level - 1, stop - 1, -1):
            e = sel(k, v)
            edges.append(e)
            v = e[1]
        edges.reverse()
        return tuple(edges), v

    A0 = list(seq.alphabet(P))
    F = {}
    for b in A0:
        _, v = down(b, P + T, P)
        F[b] = v
    image = set(A0)
    while True:
        nxt = {F[b] for b in image}
        if nxt == image:
            break
        image = nxt
    # F restricted to `image` is a bijection; find its cycles
    paths = []
    seen = set()
    for s in sorted(image):
        if s in seen:
            continue
        orbit = [s]
        cur = F[s]
        while cur != s:
            orbit.append(cur)
            cur = F[cur]
        seen.update(orbit)
        # orbit[i] = F(orbit[i-1]) means orbit[i-1] sits one period above;
        # going up from level P the vertices are orbit reversed
        for start_pos in range(len(orbit)):
            v0 = orbit[start_pos]
            cycle_edges = []
            expect = v0
            for n in range(len(orbit)):
                v_above = orbit[(start_pos - n - 1) % len(orbit)]
                block, v_start = down(v_above, P + (n + 1) * T, P + n * T)
                assert v_start == expect
                cycle_edges.extend(block)
                expect = v_above
            prefix, _ = down(v0, P, 0)
            path = LazyPath(diagram, prefix, cycle_edges)
            paths.append(path)
    # deterministic order
    paths.sort(key=lambda p: p.word(P + 1))
    return paths


# ---------------------------------------------------------------------------
# nested subdiagrams: base successor, return times, Kac sums


class SubdiagramEmbedding:
    """A base diagram sitting inside an ambient ordered diagram: for every
    level and symbol pair, the list of ambient edge indices that belong to
    the base.  Default: the first M(a,b) of the ambient parallel edges.
    The base inherits the ambient order."""

    def __init__(self, ambient, base_seq, index_map=None):
        self.ambient = ambient
        self.base_seq = base_seq
        self.index_map = index_map or {}
        from .matrixseq import submatrix_leq
        leq = submatrix_leq(base_seq, ambient.seq)
        if leq.is_no():
            raise NotInBase("base is not nested in the ambient: %r"
                            % (leq.witness,))

    def base_indices(self, k, a, b):
        count = self.base_seq.matrix(k).entry(a, b) \
            if a in self.base_seq.matrix(k).rows and \
            b in self.base_seq.matrix(k).cols else 0
        key = None
        if self.base_seq.is_eventually_periodic and \
                k >= self.base_seq.prefix_len:
            key = ("cycle", self.base_seq.phase(k), a, b)
        if key not in self.index_map:
            key = (k, a, b)
        if key in self.index_map:
            idxs = list(self.index_map[key])
            if len(idxs) != count:
                raise ShapeMismatch("embedding at %r names %d edges, base "
                                    "multiplicity is %d" % (key, len(idxs), count))
            return idxs
        return list(range(count))

    def is_base_edge(self, edge):
        k, a, b, i = edge
        return i in self.base_indices(k, a, b)

    def base_edges_into(self, k, b):
        """Base edges into b at level k+1, in ambient order."""
        out = []
        for e in self.ambient.order.incoming(k, b):
            if self.is_base_edge(e):
                out.append(e)
        return out

    def base_is_max(self, edge):
        k, a, b, i = edge
        return self.base_edges_into(k, b)[-1] == edge

    def base_next(self, edge):
        k, a, b, i = edge
        edges = self.base_edges_into(k, b)
        pos = edges.index(edge)
        return edges[pos + 1] if pos + 1 < len(edges) else None

    def base_min_word_into(self, vertex, level, start=0):
        edges = []
        v = vertex
        for k in range(level - 1, start - 1, -1):
            e = self.base_edges_into(k, v)[0]
            edges.append(e)
            v = e[1]
        edges.reverse()
        return tuple(edges)

    def base_max_word_into(self, vertex, level, start=0):
        edges = []
        v = vertex
        for k in range(level - 1, start - 1, -1):
            e = self.base_edges_into(k, v)[-1]
            edges.append(e)
            v = e[1]
        edges.reverse()
        return tuple(edges)


def _check_in_base(embedding, word):
    for e in word:
        if not embedding.is_base_edge(e):
            raise NotInBase("edge %r is not a base edge" % (e,))


def _word_to_change_level(embedding, path):
    """For a LazyPath in the base: the edge word up to (and including) the
    first non-base-maximal level, or None when the path is certified
    base-maximal everywhere (scanning the prefix plus enough tail levels to
    cover both the tail period and the base sequence's periodicity)."""
    base = embedding.base_seq
    for k in range(path.start, path.tail_start):
        e = path.edge(k)
        if not embedding.is_base_edge(e):
            raise NotInBase("edge %r is not a base edge" % (e,))
        if not embedding.base_is_max(e):
            return path.word(k + 1)
    if path.tail_cycle is None:
        raise UndeterminedTail("all explicit edges base-maximal; tail "
                               "unknown")
    span = len(path.tail_cycle)
    if base.is_eventually_periodic:
        span = _lcm(span, base.period)
        extra = max(0, base.prefix_len - path.tail_start)
    else:
        raise UndeterminedTail("base sequence is not eventually periodic")
    for k in range(path.tail_start, path.tail_start + extra + span):
        e = path.edge(k)
        if not embedding.is_base_edge(e):
            raise NotInBase("edge %r is not a base edge" % (e,))
        if not embedding.base_is_max(e):
            return path.word(k + 1)
    return None


def anti_lex_rank(diagram, word):
    """Number of ambient words with the same final vertex that are strictly
    below `word` in the anti-lexicographic order."""
    seq = diagram.seq
    rank = 0
    for e in word:
        k = e[0]
        for low in diagram.order.incoming(k, e[2]):
            if low == e:
                break
            rank += _count_into(seq, k, low[1])
    return rank


def _count_into(seq, k, vertex):
    """Number of ambient words of levels 0..k-1 ending at vertex."""
    if k == 0:
        return 1
    ones = {a: 1 for a in seq.alphabet(0)}
    return partial_product(seq, 0, k - 1).vec_mul(ones)[vertex]


def return_time(embedding, p):
    """Return time of a base point under the ambient successor: 1 + the
    number of ambient paths strictly between the point and its base
    successor.  Accepts an edge word or a LazyPath.  Returns math.inf when
    the path is base-maximal everywhere (no base successor); a finite word
    with no non-base-maximal edge cannot certify either way and raises
    UndeterminedTail."""
    if isinstance(p, LazyPath):
        word = _word_to_change_level(embedding, p)
        if word is None:
            return math.inf
    else:
        word = tuple(p)
        _check_in_base(embedding, word)
    m = None
    for k, e in enumerate(word):
        if not embedding.base_is_max(e):
            m = k
            break
    if m is None:
        raise UndeterminedTail("all edges base-maximal within the word")
    new_edge = embedding.base_next(word[m])
    head = embedding.base_min_word_into(new_edge[1], m)
    succ_word = head + (new_edge,)
    diagram = embedding.ambient
    r = anti_lex_rank(diagram, succ_word) - anti_lex_rank(diagram, word[:m + 1])
    assert r >= 1
    return r


def cyclic_return_time(embedding, word):
    """Return time of a base word of depth d under the cyclic adic rotation
    on depth-d ambient words within its endpoint class: the number of
    ambient steps to the next base word, wrapping the maximal word to the
    minimal one."""
    _check_in_base(embedding, word)
    depth = len(word)
    m = None
    for k, e in enumerate(word):
        if not embedding.base_is_max(e):
            m = k
            break
    diagram = embedding.ambient
    if m is not None:
        new_edge = embedding.base_next(word[m])
        head = embedding.base_min_word_into(new_edge[1], m)
        succ = head + (new_edge,) + word[m + 1:]
        r = anti_lex_rank(diagram, succ) - anti_lex_rank(diagram, word)
    else:
        # wrap to the minimal base word ending at the same vertex
        v = word[-1][2]
        first = embedding.base_min_word_into(v, depth)
        r = _count_into(diagram.seq, depth, v) \
            - anti_lex_rank(diagram, word) + anti_lex_rank(diagram, first)
    assert r >= 1
    return r


def kac_partial_sum(embedding, base_measure, depth):
    """Kac sum at truncation depth d: sum of r(w) * nu(w) over all base
    words w of d edges, with r the cyclic return time at that depth.  For a
    central base measure (mass depending only on the endpoint) the cyclic
    return times within an endpoint class sum to the ambient class size, so
    the total collapses to sum_v N_ambient(v) * w_d[v] over endpoints v
    reached by base words; that aggregate is computed here exactly.
    Nondecreasing in depth; equals the tower mass when it is finite."""
    amb = embedding.ambient.seq
    base = embedding.base_seq
    ones = {a: 1 for a in amb.alphabet(0)}
    amb_counts = partial_product(amb, 0, depth - 1).vec_mul(ones)
    base_ones = {a: 1 for a in base.alphabet(0)}
    base_counts = partial_product(base, 0, depth - 1).vec_mul(base_ones)
    total = Fraction(0)
    for v, n in amb_counts.items():
        if base_counts.get(v, 0) > 0:
            # endpoint mass of a depth-`depth` base cylinder ending at v
            head = [(k, a, b, embedding.base_indices(k, a, b).index(i))
                    for (k, a, b, i)
                    in embedding.base_min_word_into(v, depth)]
            total += n * base_measure.cylinder_mass(head)
    return total


def kac_partial_sum_brute(embedding, base_measure, depth):
    """Same sum as kac_partial_sum, computed word by word.  Exponential in
    depth; for cross-checking only."""
    from .diagram import enumerate_paths
    total = Fraction(0)
    for w in enumerate_paths(embedding.ambient, depth):
        if all(embedding.is_base_edge(e) for e in w):
            # re-index the ambient edges as edges of the base diagram
            base_w = [(k, a, b, embedding.base_indices(k, a, b).index(i))
                      for (k, a, b, i) in w]
            total += cyclic_return_time(embedding, w) \
                * base_measure.cylinder_mass(base_w)
    return total


# ---------------------------------------------------------------------------
# orbit simulation


def simulate_orbit(path, steps, depth=2):
    """Iterate the successor map and collect exact statistics: visit counts
    and frequencies of the depth-limited cylinders, and the histogram of
    change levels."""
    visits = {}
    change_levels = {}
    cur = path
    performed = 0
    for _ in range(steps):
        word = cur.word(depth)
        visits[word] = visits.get(word, 0) + 1
        nxt = successor(cur)
        if nxt is None:
            break
        m = _first_special(cur, "succ")
        change_levels[m] = change_levels.get(m, 0) + 1
        cur = nxt
        performed += 1
    word = cur.word(depth)
    visits[word] = visits.get(word, 0) + 1
    n = sum(visits.values())
    freqs = {w: Fraction(c, n) for w, c in visits.items()}
    return {"visits": visits, "frequencies": freqs,
            "change_levels": change_levels, "steps_performed": performed,
            "final": cur}
