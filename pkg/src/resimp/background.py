"""The global store of interned normalized expressions and equations.

Every normalized expression lives in a fixed-capacity arena and is
identified by an integer.  Structurally identical expressions share one
identifier.  The store also keeps:

* a union-find over identifiers grouping language-equivalent expressions,
  electing the shortest member (ties: smallest id) as representative;
* equations ``E = o_E + x1.E_x1 + ... + xk.E_xk`` whose right parts are
  interned fixed-length identifier arrays;
* an occurrence index from (letter position, representative) to the right
  parts using that representative, so renaming after a class merge is
  linear in the number of occurrences;
* free/used identifier lists with constant-time membership, insertion,
  removal and pick, feeding a specialized mark-and-sweep collector.

Node encoding (tuples, interned via a hash table):

    ('0',) ('1',) ('L', i) ('*', c) ('.', h, t) ('+', m1, m2, ...)
    ('\\', l, r) ('&', l, r) ('^', l, r)

Union members are pairwise distinct non-zero non-union ids in strictly
increasing id order.  Concatenation heads are never concatenations
(right-spine form).  Star children are never 0, 1 or stars.  The three
extended kinds are meant for derivative queries; long-lived equations end
up with plain participants only.
"""

from __future__ import annotations

import sys

sys.setrecursionlimit(1_000_000)

DEFAULT_CAPACITY = 1_000_000

_EXT_KINDS = ("\\", "&", "^")


class ArenaFull(Exception):
    """No free identifier is available; the caller may garbage collect."""


class StaleIdError(ValueError):
    """An identifier that has been freed (or never allocated) was used."""


class InvariantError(AssertionError):
    """Internal inconsistency in the background; indicates a bug."""


class IdList:
    """Dense list of identifiers with O(1) add / remove / pick / contains."""

    def __init__(self, items=()):
        self.items = list(items)
        self.pos = {e: i for i, e in enumerate(self.items)}

    def __len__(self):
        return len(self.items)

    def __contains__(self, e):
        return e in self.pos

    def __iter__(self):
        return iter(self.items)

    def add(self, e):
        self.pos[e] = len(self.items)
        self.items.append(e)

    def remove(self, e):
        i = self.pos.pop(e)
        last = self.items.pop()
        if last != e:
            self.items[i] = last
            self.pos[last] = i

    def pick(self):
        e = self.items.pop()
        del self.pos[e]
        return e


class Background:
    """Single-owner mutable store; see the module docstring."""

    def __init__(self, n_letters, capacity=DEFAULT_CAPACITY):
        if n_letters < 0:
            raise ValueError("negative alphabet size")
        if capacity < n_letters + 2:
            raise ValueError("capacity too small for the alphabet")
        self.k = n_letters
        self.capacity = capacity
        self.node = [None] * capacity
        self._size = [0] * capacity
        self.ext = [False] * capacity
        self.parent = list(range(capacity))
        self.intern_tab = {}
        self.free = IdList(range(capacity - 1, -1, -1))
        self.used = IdList()

        # equations
        self.rhs_tab = {}      # cells tuple -> rhs id
        self.rhs_cells = {}    # rhs id -> cells tuple
        self.eq_tab = {}       # (lhs, rhs id) -> eq id
        self.eq_lhs = {}       # eq id -> lhs
        self.eq_rhs = {}       # eq id -> rhs id
        self.eq_by_lhs = {}    # lhs -> eq id
        self.eq_by_rhs = {}    # rhs id -> eq id
        self.occ = {}          # (pos, id) -> set of rhs ids
        self._next_rhs = 0
        self._next_eq = 0

        self.pending = []      # stack of id pairs awaiting normalize
        self.gc_count = 0
        self.gc_f_count = 0

        # caches cleared on gc
        self.nullable_cache = {}
        self.pd_cache = {}

        # ids already processed by the simplification pipeline
        self.processed = set()

        self.zero = self._intern(("0",))
        self.one = self._intern(("1",))
        self.letter_ids = [self._intern(("L", i)) for i in range(1, n_letters + 1)]

    # ------------------------------------------------------------------
    # arena

    def _alloc(self):
        if not self.free:
            raise ArenaFull("all %d identifiers in use" % self.capacity)
        e = self.free.pick()
        self.used.add(e)
        return e

    def _intern(self, n):
        e = self.intern_tab.get(n)
        if e is not None:
            return e
        e = self._alloc()
        kind = n[0]
        if kind in ("0", "1", "L"):
            sz, ex = 1, False
        elif kind == "*":
            sz, ex = self._size[n[1]] + 1, self.ext[n[1]]
        elif kind == "+":
            sz = sum(self._size[m] for m in n[1:]) + len(n) - 2
            ex = any(self.ext[m] for m in n[1:])
        else:  # '.', '\\', '&', '^'
            sz = self._size[n[1]] + self._size[n[2]] + 1
            ex = kind in _EXT_KINDS or self.ext[n[1]] or self.ext[n[2]]
        self.node[e] = n
        self._size[e] = sz
        self.ext[e] = ex
        self.parent[e] = e
        self.intern_tab[n] = e
        return e

    def is_live(self, e):
        return 0 <= e < self.capacity and self.node[e] is not None and e in self.used

    def check_live(self, e):
        if not self.is_live(e):
            raise StaleIdError("identifier %r is not live" % (e,))

    def size_of(self, e):
        return self._size[e]

    def is_extended(self, e):
        return self.ext[e]

    def kind_of(self, e):
        return self.node[e][0]

    @property
    def live_count(self):
        return len(self.used)

    # ------------------------------------------------------------------
    # smart constructors

    def intern_zero(self):
        return self.zero

    def intern_one(self):
        return self.one

    def intern_letter(self, i):
        if not 1 <= i <= self.k:
            raise ValueError("letter index %d out of range 1..%d" % (i, self.k))
        return self.letter_ids[i - 1]

    def union_many(self, ids):
        members = []
        for i in ids:
            n = self.node[i]
            if n[0] == "+":
                members.extend(n[1:])
            elif i != self.zero:
                members.append(i)
        ms = sorted(set(members))
        if not ms:
            return self.zero
        if len(ms) == 1:
            return ms[0]
        return self._intern(("+",) + tuple(ms))

    def union_of(self, a, b):
        return self.union_many((a, b))

    def concat_of(self, a, b):
        if a == self.zero or b == self.zero:
            return self.zero
        if a == self.one:
            return b
        if b == self.one:
            return a
        na = self.node[a]
        if na[0] == ".":
            return self.concat_of(na[1], self.concat_of(na[2], b))
        return self._intern((".", a, b))

    def star_of(self, a):
        if a == self.zero or a == self.one:
            return self.one
        if self.node[a][0] == "*":
            return a
        return self._intern(("*", a))

    def diff_of(self, a, b):
        if b == self.zero:
            return a
        if a == self.zero or a == b:
            return self.zero
        return self._intern(("\\", a, b))

    def and_of(self, a, b):
        if a == b:
            return a
        if a == self.zero or b == self.zero:
            return self.zero
        if b < a:
            a, b = b, a
        return self._intern(("&", a, b))

    def sym_of(self, a, b):
        if a == b:
            return self.zero
        if a == self.zero:
            return b
        if b == self.zero:
            return a
        if b < a:
            a, b = b, a
        return self._intern(("^", a, b))

    def normalize_expr(self, raw, amap=None):
        """Intern a raw parse tree bottom-up through the smart constructors."""
        kind = raw[0]
        if kind == "lit":
            return self.zero if raw[1] == "0" else self.one
        if kind == "sym":
            return self.intern_letter(raw[1])
        if kind == "*":
            return self.star_of(self.normalize_expr(raw[1], amap))
        a = self.normalize_expr(raw[1], amap)
        b = self.normalize_expr(raw[2], amap)
        if kind == ".":
            return self.concat_of(a, b)
        if kind == "+":
            return self.union_of(a, b)
        if kind == "\\":
            return self.diff_of(a, b)
        if kind == "&":
            return self.and_of(a, b)
        return self.sym_of(a, b)

    def children_of(self, e):
        n = self.node[e]
        kind = n[0]
        if kind in ("0", "1", "L"):
            return ()
        return n[1:]

    def concat_factors(self, e):
        """The right-spine factor list of a concatenation (or [e])."""
        out = []
        while True:
            n = self.node[e]
            if n[0] != ".":
                out.append(e)
                return out
            out.append(n[1])
            e = n[2]

    def concat_many(self, factors):
        out = self.one
        for f in reversed(factors):
            out = self.concat_of(f, out)
        return out

    # ------------------------------------------------------------------
    # union-find

    def rep(self, e):
        p = self.parent
        r = e
        while p[r] != r:
            r = p[r]
        while p[e] != r:
            p[e], e = r, p[e]
        return r

    def _elect_key(self, e):
        # plain expressions always beat extended ones, then shortest, then
        # smallest id
        return (self.ext[e], self._size[e], e)

    def merge(self, a, b):
        """Record that a and b denote the same language (applied lazily)."""
        ra, rb = self.rep(a), self.rep(b)
        if ra != rb:
            self.pending.append((ra, rb))

    # ------------------------------------------------------------------
    # equations

    def register_equation(self, lhs, cells):
        """Intern the equation ``lhs = cells``; returns an equation id.

        ``cells`` has length k+1, cell 0 is the id of 0 or 1, every other
        cell is a class representative.  Collisions on the left or right
        part queue the implied merges instead of duplicating equations.
        """
        cells = tuple(cells)
        if len(cells) != self.k + 1:
            raise ValueError(
                "equation row has %d cells, expected %d" % (len(cells), self.k + 1)
            )
        if cells[0] not in (self.zero, self.one):
            raise ValueError("cell 0 must be the id of 0 or 1")
        lhs = self.rep(lhs)
        cells = (cells[0],) + tuple(self.rep(c) for c in cells[1:])
        rhs = self.rhs_tab.get(cells)
        if rhs is not None:
            eq = self.eq_by_rhs.get(rhs)
            if eq is not None:
                other = self.eq_lhs[eq]
                if other != lhs:
                    # same right part: the two left parts are equivalent
                    self.merge(lhs, other)
                return eq
        existing = self.eq_by_lhs.get(lhs)
        if existing is not None:
            # same left part: derivatives agree letter by letter
            old = self.rhs_cells[self.eq_rhs[existing]]
            if old[0] != cells[0]:
                raise InvariantError("conflicting constant terms for one left part")
            for a, b in zip(old[1:], cells[1:]):
                if a != b:
                    self.merge(a, b)
            return existing
        if rhs is None:
            rhs = self._next_rhs
            self._next_rhs += 1
            self.rhs_tab[cells] = rhs
            self.rhs_cells[rhs] = cells
            for pos in range(1, self.k + 1):
                self.occ.setdefault((pos, cells[pos]), set()).add(rhs)
        eq = self._next_eq
        self._next_eq += 1
        self.eq_tab[(lhs, rhs)] = eq
        self.eq_lhs[eq] = lhs
        self.eq_rhs[eq] = rhs
        self.eq_by_lhs[lhs] = eq
        self.eq_by_rhs[rhs] = eq
        return eq

    def _delete_equation(self, eq):
        lhs = self.eq_lhs.pop(eq)
        rhs = self.eq_rhs.pop(eq)
        del self.eq_tab[(lhs, rhs)]
        if self.eq_by_lhs.get(lhs) == eq:
            del self.eq_by_lhs[lhs]
        if self.eq_by_rhs.get(rhs) == eq:
            del self.eq_by_rhs[rhs]
            self._delete_rhs(rhs)

    def _delete_rhs(self, rhs):
        cells = self.rhs_cells.pop(rhs)
        del self.rhs_tab[cells]
        for pos in range(1, self.k + 1):
            s = self.occ.get((pos, cells[pos]))
            if s is not None:
                s.discard(rhs)
                if not s:
                    del self.occ[(pos, cells[pos])]

    def equations(self):
        return list(self.eq_lhs)

    # ------------------------------------------------------------------
    # normalize

    def normalize_background(self):
        """Apply pending merges until the background invariant holds.

        Each iteration unites two classes, electing the shortest
        representative, and rewrites every equation cell or left part that
        held the loser.  Rewrites may expose new left/right collisions,
        which queue further merges; the number of distinct identifiers
        used by equations strictly decreases, so the loop terminates.
        """
        while self.pending:
            a, b = self.pending.pop()
            ra, rb = self.rep(a), self.rep(b)
            if ra == rb:
                continue
            if self._elect_key(ra) <= self._elect_key(rb):
                w, l = ra, rb
            else:
                w, l = rb, ra
            self.parent[l] = w
            self._rename(l, w)

    def _rename(self, loser, winner):
        # left parts
        eq = self.eq_by_lhs.pop(loser, None)
        if eq is not None:
            other = self.eq_by_lhs.get(winner)
            if other is not None:
                r1 = self.rhs_cells[self.eq_rhs[eq]]
                r2 = self.rhs_cells[self.eq_rhs[other]]
                if r1[0] != r2[0]:
                    raise InvariantError("merged classes disagree on nullability")
                for x, y in zip(r1[1:], r2[1:]):
                    if x != y:
                        self.pending.append((x, y))
                self.eq_by_lhs[loser] = eq  # keep maps sane for deletion
                self._delete_equation(eq)
            else:
                rhs = self.eq_rhs[eq]
                del self.eq_tab[(loser, rhs)]
                self.eq_tab[(winner, rhs)] = eq
                self.eq_lhs[eq] = winner
                self.eq_by_lhs[winner] = eq
        # right-part cells, via the occurrence index
        affected = set()
        for pos in range(1, self.k + 1):
            s = self.occ.get((pos, loser))
            if s:
                affected.update(s)
        for rhs in affected:
            cells = self.rhs_cells.get(rhs)
            if cells is None or loser not in cells[1:]:
                continue  # already rewritten or deleted on this pass
            new = (cells[0],) + tuple(
                winner if c == loser else c for c in cells[1:]
            )
            existing = self.rhs_tab.get(new)
            if existing is not None:
                # two equations now share a right part: their left parts
                # denote the same language
                eq1 = self.eq_by_rhs[rhs]
                eq2 = self.eq_by_rhs[existing]
                self.pending.append((self.eq_lhs[eq1], self.eq_lhs[eq2]))
                self._delete_equation(eq1)
            else:
                del self.rhs_tab[cells]
                self.rhs_tab[new] = rhs
                self.rhs_cells[rhs] = new
                for pos in range(1, self.k + 1):
                    if cells[pos] == loser:
                        s = self.occ.get((pos, loser))
                        if s is not None:
                            s.discard(rhs)
                            if not s:
                                del self.occ[(pos, loser)]
                        self.occ.setdefault((pos, winner), set()).add(rhs)

    # ------------------------------------------------------------------
    # garbage collection

    def gc(self, roots=()):
        """Mark from roots and all equation participants, sweep the rest.

        Returns the number of reclaimed identifiers.  Live identifiers are
        path-compressed onto their representatives before the sweep so the
        union-find never routes through freed cells.
        """
        if self.pending:
            self.normalize_background()
        self.gc_count += 1
        marked = set()
        stack = [self.zero, self.one]
        stack.extend(self.letter_ids)
        stack.extend(roots)
        for eq, lhs in self.eq_lhs.items():
            stack.append(lhs)
            stack.extend(self.rhs_cells[self.eq_rhs[eq]])
        while stack:
            e = stack.pop()
            if e in marked:
                continue
            marked.add(e)
            stack.extend(self.children_of(e))
            r = self.rep(e)
            if r != e:
                stack.append(r)
        for e in marked:
            self.parent[e] = self.rep(e)
        reclaimed = 0
        for e in list(self.used):
            if e in marked:
                continue
            del self.intern_tab[self.node[e]]
            self.node[e] = None
            self._size[e] = 0
            self.ext[e] = False
            self.parent[e] = e
            self.used.remove(e)
            self.free.add(e)
            reclaimed += 1
        self.nullable_cache.clear()
        self.pd_cache.clear()
        self.processed &= marked
        return reclaimed

    def drop_equations_not_rooted(self, roots):
        """Degraded-mode prelude: discard equations not reachable from roots."""
        keep = set()
        stack = list(roots)
        while stack:
            e = stack.pop()
            if e in keep:
                continue
            keep.add(e)
            stack.extend(self.children_of(e))
            r = self.rep(e)
            if r != e:
                stack.append(r)
        for eq in list(self.eq_lhs):
            if self.eq_lhs[eq] not in keep:
                self._delete_equation(eq)

    # ------------------------------------------------------------------
    # debug / invariants

    def check_invariants(self):
        """Full-scan assertion of the background invariant; test support."""
        if self.pending:
            raise InvariantError("pending merges not yet normalized")
        if len(self.used) + len(self.free) != self.capacity:
            raise InvariantError("used/free lists do not partition the ids")
        for n, e in self.intern_tab.items():
            if self.node[e] != n:
                raise InvariantError("intern table out of sync")
        seen_lhs = set()
        seen_rhs = set()
        for eq in self.eq_lhs:
            lhs = self.eq_lhs[eq]
            rhs = self.eq_rhs[eq]
            if lhs in seen_lhs:
                raise InvariantError("two equations share a left part")
            if rhs in seen_rhs:
                raise InvariantError("two equations share a right part")
            seen_lhs.add(lhs)
            seen_rhs.add(rhs)
            if self.rep(lhs) != lhs:
                raise InvariantError("equation left part is not a representative")
            cells = self.rhs_cells[rhs]
            if cells[0] not in (self.zero, self.one):
                raise InvariantError("cell 0 is not 0 or 1")
            for c in cells[1:]:
                if self.rep(c) != c:
                    raise InvariantError("equation cell is not a representative")
        rhs_seen = set(self.rhs_cells)
        if set(self.eq_by_rhs) != rhs_seen:
            raise InvariantError("dangling right-part arrays")
        # occurrence index exactness
        expected = {}
        for rhs, cells in self.rhs_cells.items():
            for pos in range(1, self.k + 1):
                expected.setdefault((pos, cells[pos]), set()).add(rhs)
        actual = {key: s for key, s in self.occ.items() if s}
        if actual != expected:
            raise InvariantError("occurrence index out of sync")
        # representative minimality
        classes = {}
        for e in self.used:
            classes.setdefault(self.rep(e), []).append(e)
        for r, members in classes.items():
            best = min(members, key=self._elect_key)
            if self._elect_key(best) < self._elect_key(r):
                raise InvariantError("representative is not a shortest member")
        return True
