"""Brute-force ground truth used by the tests.

A second, independent route from expression text to canonical automata:
Thompson construction to an epsilon-NFA, subset construction to a
complete DFA (the empty subset is the dead state, present only when
reachable), product machines for the extended operators, and partition
refinement for minimal state counts.  Nothing here touches the
background or the derivative machinery.
"""

from __future__ import annotations

from .syntax import AlphabetMap, parse


class _NFA:
    """Epsilon-NFA under construction; letters are 1-based indices."""

    def __init__(self):
        self.eps = []
        self.delta = []

    def new(self):
        self.eps.append(set())
        self.delta.append({})
        return len(self.eps) - 1

    def edge(self, a, x, b):
        self.delta[a].setdefault(x, set()).add(b)

    def closure(self, states):
        out = set(states)
        stack = list(states)
        while stack:
            s = stack.pop()
            for t in self.eps[s]:
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)


def _fragment(nfa, raw, k):
    """Thompson fragment (start, accept) for ``raw``."""
    kind = raw[0]
    s, f = nfa.new(), nfa.new()
    if kind == "lit":
        if raw[1] == "1":
            nfa.eps[s].add(f)
        # '0': no edge at all
    elif kind == "sym":
        nfa.edge(s, raw[1], f)
    elif kind == "*":
        a, b = _fragment(nfa, raw[1], k)
        nfa.eps[s].update((a, f))
        nfa.eps[b].update((a, f))
    elif kind == ".":
        a, b = _fragment(nfa, raw[1], k)
        c, d = _fragment(nfa, raw[2], k)
        nfa.eps[s].add(a)
        nfa.eps[b].add(c)
        nfa.eps[d].add(f)
    elif kind == "+":
        a, b = _fragment(nfa, raw[1], k)
        c, d = _fragment(nfa, raw[2], k)
        nfa.eps[s].update((a, c))
        nfa.eps[b].add(f)
        nfa.eps[d].add(f)
    else:
        # extended operator: build the sub-DFA and embed it
        trans, accepts = _dfa(raw, k)
        base = len(nfa.eps)
        for _ in trans:
            nfa.new()
        for i, row in enumerate(trans):
            for x in range(1, k + 1):
                nfa.edge(base + i, x, base + row[x - 1])
        nfa.eps[s].add(base)  # DFA start is its state 0
        for i in accepts:
            nfa.eps[base + i].add(f)
    return s, f


def _determinize(nfa, start, accept, k):
    """Complete DFA: (transition table, accepting set); state 0 is start."""
    s0 = nfa.closure({start})
    index = {s0: 0}
    order = [s0]
    trans = []
    accepts = set()
    i = 0
    while i < len(order):
        cur = order[i]
        if accept in cur:
            accepts.add(i)
        row = []
        for x in range(1, k + 1):
            nxt = set()
            for s in cur:
                nxt.update(nfa.delta[s].get(x, ()))
            nxt = nfa.closure(nxt)
            j = index.get(nxt)
            if j is None:
                j = len(order)
                index[nxt] = j
                order.append(nxt)
            row.append(j)
        trans.append(row)
        i += 1
    return trans, accepts


def _dfa(raw, k):
    """Complete DFA of ``raw`` over letters 1..k."""
    kind = raw[0]
    if kind in ("\\", "&", "^"):
        t1, a1 = _dfa(raw[1], k)
        t2, a2 = _dfa(raw[2], k)
        op = {
            "\\": lambda p, q: p and not q,
            "&": lambda p, q: p and q,
            "^": lambda p, q: p != q,
        }[kind]
        index = {(0, 0): 0}
        order = [(0, 0)]
        trans = []
        accepts = set()
        i = 0
        while i < len(order):
            p, q = order[i]
            if op(p in a1, q in a2):
                accepts.add(i)
            row = []
            for x in range(k):
                nxt = (t1[p][x], t2[q][x])
                j = index.get(nxt)
                if j is None:
                    j = len(order)
                    index[nxt] = j
                    order.append(nxt)
                row.append(j)
            trans.append(row)
            i += 1
        return trans, accepts
    nfa = _NFA()
    s, f = _fragment(nfa, raw, k)
    return _determinize(nfa, s, f, k)


def _counterexample(d1, d2, k):
    """A word separating two complete DFAs, or None if equal."""
    t1, a1 = d1
    t2, a2 = d2
    seen = {(0, 0)}
    queue = [((0, 0), "")]
    letters = "abcdefghijklmnopqrstuvwxyz"
    qi = 0
    while qi < len(queue):
        (p, q), w = queue[qi]
        qi += 1
        if (p in a1) != (q in a2):
            return w
        for x in range(k):
            nxt = (t1[p][x], t2[q][x])
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, w + letters[x]))
    return None


def _parse_pair(t1, t2, letters=None):
    amap = AlphabetMap()
    if letters:
        for ch in letters:
            amap.index_of(ch)
    r1, amap = parse(t1, amap)
    r2, amap = parse(t2, amap)
    return r1, r2, amap


def oracle_equal(t1, t2, letters=None):
    """Language equality of two expression texts (shared alphabet)."""
    return oracle_witness(t1, t2, letters) is None


def oracle_witness(t1, t2, letters=None):
    """A word in exactly one of the two languages, or None when equal.

    The returned word uses the internal letter order (first occurrence
    across ``t1`` then ``t2``), remapped to the shared alphabet.
    """
    r1, r2, amap = _parse_pair(t1, t2, letters)
    k = amap.k
    d1 = _dfa(r1, k)
    d2 = _dfa(r2, k)
    w = _counterexample(d1, d2, k)
    if w is None:
        return None
    letters_az = "abcdefghijklmnopqrstuvwxyz"
    return "".join(amap.letter_of(letters_az.index(ch) + 1) for ch in w)


def oracle_member(t, w, letters=None):
    """Direct nondeterministic simulation of ``t`` on the word ``w``."""
    amap = AlphabetMap()
    if letters:
        for ch in letters:
            amap.index_of(ch)
    raw, amap = parse(t, amap)
    nfa = _NFA()
    s, f = _fragment(nfa, raw, amap.k)
    cur = nfa.closure({s})
    for ch in w:
        x = amap.to_index.get(ch)
        if x is None:
            return False
        nxt = set()
        for st in cur:
            nxt.update(nfa.delta[st].get(x, ()))
        cur = nfa.closure(nxt)
        if not cur:
            return False
    return f in cur


def oracle_min_states(t, letters=None):
    """Minimal complete-DFA state count (dead state iff reachable)."""
    amap = AlphabetMap()
    if letters:
        for ch in letters:
            amap.index_of(ch)
    raw, amap = parse(t, amap)
    k = amap.k
    trans, accepts = _dfa(raw, k)
    n = len(trans)
    block = [1 if i in accepts else 0 for i in range(n)]
    while True:
        sigs = {}
        for i in range(n):
            sig = (block[i],) + tuple(block[j] for j in trans[i])
            sigs.setdefault(sig, []).append(i)
        if len(sigs) == len(set(block)):
            return len(sigs)
        for b, members in enumerate(sigs.values()):
            for i in members:
                block[i] = b
