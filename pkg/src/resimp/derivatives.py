"""Nullability, partial derivatives, complete equation sets and inclusion.

A complete set of equations is the DFA of an expression in equational
clothing: every expression used by a right part is the left part of an
equation.  States are representatives; rows are computed with partial
derivatives (sets of normalized suffixes whose union is the syntactic
derivative), so the closure stays finite.

The inclusion test explores the derivative closure of the extended
expression ``e1 \\ e2`` and refutes on the first nullable state.
"""

from __future__ import annotations

from .background import InvariantError


class StateBudgetExceeded(Exception):
    """A derivative closure grew past the caller's state budget."""


def nullable(bg, e):
    """1 iff the empty chain belongs to the language of ``e``."""
    cache = bg.nullable_cache
    hit = cache.get(e)
    if hit is not None:
        return hit
    n = bg.node[e]
    kind = n[0]
    if kind == "1":
        v = 1
    elif kind in ("0", "L"):
        v = 0
    elif kind == "*":
        v = 1
    elif kind == ".":
        v = nullable(bg, n[1]) and nullable(bg, n[2])
    elif kind == "+":
        v = 0
        for m in n[1:]:
            if nullable(bg, m):
                v = 1
                break
    elif kind == "\\":
        v = nullable(bg, n[1]) and not nullable(bg, n[2])
    elif kind == "&":
        v = nullable(bg, n[1]) and nullable(bg, n[2])
    else:  # '^'
        v = nullable(bg, n[1]) ^ nullable(bg, n[2])
    v = 1 if v else 0
    cache[e] = v
    return v


def pderiv(bg, e, x):
    """Partial derivatives of ``e`` w.r.t. letter index ``x`` (id tuple)."""
    key = (e, x)
    cache = bg.pd_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    n = bg.node[e]
    kind = n[0]
    if kind in ("0", "1"):
        out = ()
    elif kind == "L":
        out = (bg.one,) if n[1] == x else ()
    elif kind == "*":
        out = tuple(bg.concat_of(d, e) for d in pderiv(bg, n[1], x))
    elif kind == ".":
        h, t = n[1], n[2]
        parts = [bg.concat_of(d, t) for d in pderiv(bg, h, x)]
        if nullable(bg, h):
            parts.extend(pderiv(bg, t, x))
        out = tuple(dict.fromkeys(parts))
    elif kind == "+":
        out = tuple(
            dict.fromkeys(d for m in n[1:] for d in pderiv(bg, m, x))
        )
    else:
        l = bg.union_many(pderiv(bg, n[1], x))
        r = bg.union_many(pderiv(bg, n[2], x))
        if kind == "\\":
            d = bg.diff_of(l, r)
        elif kind == "&":
            d = bg.and_of(l, r)
        else:
            d = bg.sym_of(l, r)
        out = (d,) if d != bg.zero else ()
    cache[key] = out
    return out


def deriv(bg, e, x):
    """The full syntactic derivative: the union of the partial ones."""
    return bg.union_many(pderiv(bg, e, x))


def derivative_row(bg, e):
    """The equation row of ``e``: constant term plus one cell per letter."""
    r = bg.rep(e)
    cells = [bg.one if nullable(bg, r) else bg.zero]
    for x in range(1, bg.k + 1):
        cells.append(bg.rep(deriv(bg, r, x)))
    return tuple(cells)


def closure_scan(bg, e):
    """Walk equations reachable from rep(e).

    Returns ``(eq_ids, states, missing)`` where ``missing`` is the first
    reachable representative without an equation (None when the set is
    complete).
    """
    seen = set()
    stack = [bg.rep(e)]
    eq_ids = []
    while stack:
        r = bg.rep(stack.pop())
        if r in seen:
            continue
        seen.add(r)
        eq = bg.eq_by_lhs.get(r)
        if eq is None:
            return eq_ids, seen, r
        eq_ids.append(eq)
        stack.extend(bg.rhs_cells[bg.eq_rhs[eq]][1:])
    return eq_ids, seen, None


def complete_equations(bg, e, max_states=None):
    """Compute the complete equation set reachable from ``e``.

    New equations are registered one at a time, normalizing the
    background after each registration so merges shrink the state space
    as it is built.  Returns the set of equation ids of the closure.
    Raises :class:`StateBudgetExceeded` when more than ``max_states`` new
    equations would be needed.
    """
    bg.normalize_background()
    registered = 0
    while True:
        eq_ids, _states, missing = closure_scan(bg, e)
        if missing is None:
            return set(eq_ids)
        if max_states is not None and registered >= max_states:
            raise StateBudgetExceeded(
                "equation closure exceeded %d states" % max_states
            )
        row = derivative_row(bg, missing)
        bg.register_equation(missing, row)
        bg.normalize_background()
        registered += 1


def includes(bg, e1, e2, max_states=None):
    """True iff the language of ``e1`` is included in that of ``e2``.

    Explores the derivative closure of ``e1 \\ e2``; any nullable state
    refutes immediately, which makes failing queries fast.  Nothing is
    registered in the background: the intermediate extended expressions
    become garbage once the query returns.
    """
    start = bg.diff_of(bg.rep(e1), bg.rep(e2))
    stack = [start]
    seen = set()
    while stack:
        r = bg.rep(stack.pop())
        if r in seen:
            continue
        seen.add(r)
        if r == bg.zero:
            continue
        if nullable(bg, r):
            return False
        if max_states is not None and len(seen) > max_states:
            raise StateBudgetExceeded(
                "inclusion closure exceeded %d states" % max_states
            )
        for x in range(1, bg.k + 1):
            stack.append(deriv(bg, r, x))
    return True


def check_equation_soundness(bg, oracle_row):
    """Debug helper: assert every equation row against an oracle callback."""
    for eq in bg.equations():
        if not oracle_row(bg.eq_lhs[eq], bg.rhs_cells[bg.eq_rhs[eq]]):
            raise InvariantError("equation refuted by oracle")
