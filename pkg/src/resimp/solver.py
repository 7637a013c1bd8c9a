"""Equation solving: depth-first elimination with Salomaa's rule.

The solver treats equation left parts as variables and performs a
depth-first traversal of the complete equation set of the target.  At
each state the letter cells are accumulated into a linear form

    L(state) = const  +  sum over ancestor variables V of coef_V . L(V)

Back edges to the state itself are closed with Salomaa's (Arden's) rule:
``X = A.X + B`` with non-nullable ``A`` has the unique solution
``A*.B``; the side condition holds by construction because every
coefficient is letter-headed.  Recursion past the depth budget (or past
the size cap) substitutes the state's current representative instead of
descending, which bounds the traversal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .derivatives import closure_scan, complete_equations, nullable

_COMPRESS_THRESHOLD = 192


def _compress(bg, e):
    """Cheap size control for intermediate elimination entries.

    Factorization is sound by construction and often collapses the
    letter-by-letter unions that state elimination piles up; the
    threshold keeps it off the fast path.
    """
    if bg.size_of(e) <= _COMPRESS_THRESHOLD:
        return e
    from .rewriter import reduce_entry

    return reduce_entry(bg, e)


@dataclass
class SolveBudget:
    max_depth: int
    size_cap: int
    max_frames: int = 4000


def arden_close(bg, a, b):
    """The unique solution ``a*.b`` of ``X = a.X + b``; ``a`` non-nullable."""
    if nullable(bg, a):
        raise ValueError("Arden coefficient is nullable; solver bug")
    return bg.concat_of(bg.star_of(a), b)


class _Frames:
    __slots__ = ("left",)

    def __init__(self, n):
        self.left = n


def _eliminate(bg, state, path, budget, frames, letter_order, full):
    """Return (const_id, {ancestor_var: coef_id}) for ``state``."""
    frames.left -= 1
    eq = bg.eq_by_lhs.get(bg.rep(state))
    if eq is None:
        # incomplete reachability (possible after collector purges):
        # fall back to the representative's value
        return bg.rep(state), {}
    cells = bg.rhs_cells[bg.eq_rhs[eq]]
    const = cells[0]
    coef = {}
    in_path = set(path)
    in_path.add(state)
    for pos in letter_order:
        c = bg.rep(cells[pos])
        if c == bg.zero:
            continue
        letter = bg.letter_ids[pos - 1]
        if c in in_path:
            coef[c] = bg.union_of(coef.get(c, bg.zero), letter)
            continue
        descend = full or (
            len(path) < budget.max_depth
            and frames.left > 0
            and bg.size_of(const) <= budget.size_cap
        )
        if not descend and not bg.is_extended(c):
            const = bg.union_of(const, bg.concat_of(letter, c))
            continue
        sub_const, sub_coef = _eliminate(
            bg, c, path + (state,), budget, frames, letter_order, full
        )
        const = bg.union_of(const, bg.concat_of(letter, sub_const))
        for v, kv in sub_coef.items():
            term = bg.concat_of(letter, kv)
            coef[v] = bg.union_of(coef.get(v, bg.zero), term)
    a = coef.pop(state, None)
    if a is not None and a != bg.zero:
        a_star = bg.star_of(a)
        const = bg.concat_of(a_star, const)
        coef = {v: bg.concat_of(a_star, kv) for v, kv in coef.items()}
    return const, coef


def _system_of(bg, root):
    """The transition matrix and constant column of root's closure."""
    _, states, missing = closure_scan(bg, root)
    if missing is not None:
        raise ValueError("equation set is not complete")
    mat = {}
    out = {}
    for s in states:
        cells = bg.rhs_cells[bg.eq_rhs[bg.eq_by_lhs[s]]]
        out[s] = cells[0]
        row = {}
        for pos in range(1, bg.k + 1):
            c = bg.rep(cells[pos])
            if c == bg.zero:
                continue
            letter = bg.letter_ids[pos - 1]
            row[c] = bg.union_of(row.get(c, bg.zero), letter)
        mat[s] = row
    return mat, out


def eliminate_states(bg, root, order=None, size_cap=None):
    """Solve the whole system for ``root`` by state elimination.

    Eliminates every non-root state (by default cheapest first: fewest
    predecessor times successor edges, ties by id; or in the explicit
    ``order``) applying Salomaa's rule for self-loops, then closes the
    root.  Unlike the depth-first solver this never substitutes values,
    so extended states are fully eliminated and the result is a plain
    expression.  With ``size_cap`` the run is abandoned (returning None)
    as soon as any intermediate entry grows past the cap, which lets a
    caller race several orders cheaply.
    """
    mat, out = _system_of(bg, root)
    seq = iter(order) if order is not None else None
    while True:
        candidates = [s for s in mat if s != root]
        if not candidates:
            break
        if seq is not None:
            q = next(seq)
        else:
            preds = {s: 0 for s in mat}
            for u, row in mat.items():
                for v in row:
                    if v != u and v in preds:
                        preds[v] += 1

            def cost(s):
                fan_out = sum(1 for v in mat[s] if v != s)
                return (preds[s] * fan_out, bg.size_of(s), s)

            q = min(candidates, key=cost)
        row_q = mat.pop(q)
        loop = row_q.pop(q, None)
        if loop is not None and loop != bg.zero:
            r = bg.star_of(loop)
            row_q = {
                v: _compress(bg, bg.concat_of(r, kv))
                for v, kv in row_q.items()
            }
            out[q] = bg.concat_of(r, out[q])
        out[q] = _compress(bg, out[q])
        if size_cap is not None and bg.size_of(out[q]) > size_cap:
            return None
        for u, row in mat.items():
            c = row.pop(q, None)
            if c is None or c == bg.zero:
                continue
            out[u] = _compress(
                bg, bg.union_of(out[u], bg.concat_of(c, out[q]))
            )
            for v, kv in row_q.items():
                term = bg.concat_of(c, kv)
                row[v] = _compress(
                    bg, bg.union_of(row.get(v, bg.zero), term)
                )
            if size_cap is not None and bg.size_of(out[u]) > size_cap:
                return None
        del out[q]
    row = mat[root]
    result = out[root]
    loop = row.get(root)
    if loop is not None and loop != bg.zero:
        result = arden_close(bg, loop, result)
    return result


def best_elimination(bg, root, perm_limit=5):
    """State elimination, searching every order on small systems.

    The result of state elimination depends heavily on the elimination
    order; for systems with at most ``perm_limit`` non-root states every
    permutation is tried and the shortest result kept.  Larger systems
    fall back to the cheapest-first heuristic.
    """
    _, states, missing = closure_scan(bg, bg.rep(root))
    if missing is not None:
        raise ValueError("equation set is not complete")
    others = sorted(s for s in states if s != bg.rep(root))
    if len(others) > perm_limit:
        return eliminate_states(bg, root)
    best = None
    for perm in itertools.permutations(others):
        cand = eliminate_states(bg, root, order=perm)
        if best is None or bg.size_of(cand) < bg.size_of(best):
            best = cand
    return best


def _scc_order(succ, nodes):
    """Tarjan's strongly connected components, sinks first."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    out = []
    counter = [0]
    for start in nodes:
        if start in index:
            continue
        work = [(start, iter(succ.get(start, ())))]
        index[start] = low[start] = counter[0]
        counter[0] += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def resolve_all(bg, root, improve=None, perm_limit=4):
    """Give every state reachable from ``root`` a plain representative.

    Processes the strongly connected components of the (complete,
    preferably minimized) equation graph sinks first.  Within a
    component every member is solved against the component's subsystem,
    out-of-component successors entering as their (already plain)
    representatives; self-loops close with Salomaa's rule.  The computed
    plain values are merged, so the election makes them the
    representatives and upstream components build on short expressions
    instead of repeating eliminated subsystems.  ``improve`` is an
    optional callback applied to each freshly merged representative.

    Returns the representative of ``root``.
    """
    bg.normalize_background()
    _, states, missing = closure_scan(bg, bg.rep(root))
    if missing is not None:
        raise ValueError("equation set is not complete")
    succ = {}
    preds = {}
    for s in states:
        cells = bg.rhs_cells[bg.eq_rhs[bg.eq_by_lhs[s]]]
        succ[s] = sorted(
            {bg.rep(c) for c in cells[1:]} - {bg.zero, s}
        )
        for t in succ[s]:
            preds.setdefault(t, set()).add(s)
    for comp in _scc_order(succ, sorted(states)):
        comp = sorted({bg.rep(s) for s in comp})
        if all(not bg.is_extended(s) for s in comp):
            continue
        comp_set = set(comp)
        # only members visible from outside the component need a value
        needed = [
            s for s in comp
            if s == bg.rep(root)
            or any(bg.rep(p) not in comp_set for p in preds.get(s, ()))
        ]
        if not needed:
            needed = comp[:1]
        mat = {}
        out = {}
        for s in comp:
            cells = bg.rhs_cells[bg.eq_rhs[bg.eq_by_lhs[s]]]
            row = {}
            o = cells[0]
            for pos in range(1, bg.k + 1):
                c = bg.rep(cells[pos])
                if c == bg.zero:
                    continue
                letter = bg.letter_ids[pos - 1]
                if c in comp_set:
                    row[c] = bg.union_of(row.get(c, bg.zero), letter)
                else:
                    o = bg.union_of(o, bg.concat_of(letter, c))
            mat[s] = row
            out[s] = o
        values = {}
        for s in needed:
            values[s] = _solve_member(bg, s, mat, out, perm_limit)
        for s, v in values.items():
            bg.merge(s, v)
        bg.normalize_background()
        if improve is not None:
            for s in needed:
                improve(bg.rep(s))
            bg.normalize_background()
    return bg.rep(root)


def _depth_order(mat, root):
    """States of the subsystem by breadth-first depth from ``root``."""
    depth = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for s in frontier:
            for t in sorted(mat.get(s, ())):
                if t in mat and t not in depth:
                    depth[t] = depth[s] + 1
                    nxt.append(t)
        frontier = nxt
    for s in mat:
        depth.setdefault(s, len(mat))
    return depth


def _solve_member(bg, root, mat, out, perm_limit):
    """The shortest elimination result found for one subsystem member.

    Small subsystems are solved under every elimination order, in both
    directions (right languages by ordinary elimination, left languages
    by the mirrored rule).  Larger ones race a few deterministic orders
    per direction under an escalating size cap, so a hopeless order is
    abandoned early; if every capped attempt overflows, the
    cheapest-first forward order runs uncapped as a last resort.
    """
    others = [t for t in mat if t != root]
    if len(others) <= perm_limit:
        best = None
        for order in itertools.permutations(others) if others else [()]:
            for cand in (
                _solve_subsystem(bg, root, mat, out, order, None),
                _solve_subsystem_rev(
                    bg, root, mat, out, order + (root,), None
                ),
            ):
                if cand is not None and (
                    best is None or bg.size_of(cand) < bg.size_of(best)
                ):
                    best = cand
        return best
    depth = _depth_order(mat, root)
    fwd_orders = [
        None,
        tuple(sorted(others, key=lambda s: (-depth[s], s))),
        tuple(sorted(others, key=lambda s: (depth[s], s))),
    ]
    rev_orders = [
        None,
        tuple(sorted(others, key=lambda s: (-depth[s], s))) + (root,),
        tuple(sorted(others, key=lambda s: (depth[s], s))) + (root,),
    ]
    for cap in (4096, 65536):
        best = None
        for order in fwd_orders:
            cand = _solve_subsystem(bg, root, mat, out, order, cap)
            if cand is not None and (
                best is None or bg.size_of(cand) < bg.size_of(best)
            ):
                best = cand
        for order in rev_orders:
            cand = _solve_subsystem_rev(bg, root, mat, out, order, cap)
            if cand is not None and (
                best is None or bg.size_of(cand) < bg.size_of(best)
            ):
                best = cand
        if best is not None:
            return best
    return _solve_subsystem(bg, root, mat, out, None, None)


def _solve_subsystem(bg, root, mat, out, order, size_cap):
    """State elimination of one component's subsystem for ``root``."""
    mat = {s: dict(row) for s, row in mat.items()}
    out = dict(out)
    seq = iter(order) if order is not None else None
    while True:
        candidates = [s for s in mat if s != root]
        if not candidates:
            break
        if seq is not None:
            q = next(seq)
        else:
            preds = {s: 0 for s in mat}
            for u, row in mat.items():
                for v in row:
                    if v != u and v in preds:
                        preds[v] += 1
            q = min(
                candidates,
                key=lambda s: (
                    preds[s] * sum(1 for v in mat[s] if v != s),
                    bg.size_of(s),
                    s,
                ),
            )
        row_q = mat.pop(q)
        loop = row_q.pop(q, None)
        if loop is not None and loop != bg.zero:
            r = bg.star_of(loop)
            row_q = {
                v: _compress(bg, bg.concat_of(r, kv))
                for v, kv in row_q.items()
            }
            out[q] = bg.concat_of(r, out[q])
        out[q] = _compress(bg, out[q])
        if size_cap is not None and bg.size_of(out[q]) > size_cap:
            return None
        for u, row in mat.items():
            c = row.pop(q, None)
            if c is None or c == bg.zero:
                continue
            out[u] = _compress(
                bg, bg.union_of(out[u], bg.concat_of(c, out[q]))
            )
            if size_cap is not None and bg.size_of(out[u]) > size_cap:
                return None
            for v, kv in row_q.items():
                term = bg.concat_of(c, kv)
                nv = _compress(bg, bg.union_of(row.get(v, bg.zero), term))
                row[v] = nv
                if size_cap is not None and bg.size_of(nv) > size_cap:
                    return None
        del out[q]
    result = out[root]
    loop = mat[root].get(root)
    if loop is not None and loop != bg.zero:
        result = arden_close(bg, loop, result)
    return result


def _solve_subsystem_rev(bg, root, mat, out, order, size_cap):
    """Mirrored state elimination of one component's subsystem.

    Instead of the right languages X_s (words accepted from s), this
    eliminates the left languages R_s (words labelling the paths from
    ``root`` to s inside the subsystem):

        R_root  contains the empty word
        R_t  =  sum over s of  R_s . mat[s][t]

    and the value of ``root`` is the sum of R_s . out[s].  Self-loops
    close with the mirrored rule: ``X = X.A + B`` with non-nullable
    ``A`` has the unique solution ``B.A*``.  Systems whose forward
    elimination explodes are often near-acyclic in this direction.
    """
    rrow = {t: {} for t in mat}
    rconst = {t: (bg.one if t == root else bg.zero) for t in mat}
    for s, row in mat.items():
        for t, c in row.items():
            rrow[t][s] = bg.union_of(rrow[t].get(s, bg.zero), c)
    fin_coef = {s: o for s, o in out.items() if o != bg.zero}
    fin_const = bg.zero
    seq = iter(order) if order is not None else None
    while rrow:
        if seq is not None:
            q = next(seq)
        else:
            uses = {s: (1 if s in fin_coef else 0) for s in rrow}
            for t, row in rrow.items():
                for s in row:
                    if s != t and s in uses:
                        uses[s] += 1
            q = min(
                rrow,
                key=lambda s: (
                    uses[s] * sum(1 for u in rrow[s] if u != s),
                    bg.size_of(s),
                    s,
                ),
            )
        row_q = rrow.pop(q)
        const_q = rconst.pop(q)
        loop = row_q.pop(q, None)
        if loop is not None and loop != bg.zero:
            r = bg.star_of(loop)
            row_q = {
                u: _compress(bg, bg.concat_of(ku, r))
                for u, ku in row_q.items()
            }
            const_q = bg.concat_of(const_q, r)
        const_q = _compress(bg, const_q)
        if size_cap is not None and bg.size_of(const_q) > size_cap:
            return None
        targets = list(rrow.items()) + [(None, fin_coef)]
        for v, row in targets:
            c = row.pop(q, None)
            if c is None or c == bg.zero:
                continue
            if v is None:
                fin_const = _compress(
                    bg, bg.union_of(fin_const, bg.concat_of(const_q, c))
                )
                if size_cap is not None and bg.size_of(fin_const) > size_cap:
                    return None
            else:
                rconst[v] = _compress(
                    bg, bg.union_of(rconst[v], bg.concat_of(const_q, c))
                )
                if size_cap is not None and bg.size_of(rconst[v]) > size_cap:
                    return None
            for u, ku in row_q.items():
                term = bg.concat_of(ku, c)
                nv = _compress(bg, bg.union_of(row.get(u, bg.zero), term))
                row[u] = nv
                if size_cap is not None and bg.size_of(nv) > size_cap:
                    return None
    return fin_const


def solve(bg, target, budget=None, full=False):
    """Produce a short expression for ``target`` from its equations.

    Requires a complete equation set for ``target`` (one is computed on
    demand).  With ``full`` every state is eliminated, never substituted
    by value; this is how extended expressions are turned into plain
    ones.  Returns the smaller of the candidate and the current
    representative; a strictly smaller candidate is merged into the
    class.
    """
    complete_equations(bg, target)
    t = bg.rep(target)
    _, states, _ = closure_scan(bg, t)
    if budget is None:
        budget = SolveBudget(max_depth=len(states), size_cap=2 * bg.size_of(t))
    if full:
        best = best_elimination(bg, t)
        bg.merge(best, t)
        bg.normalize_background()
        return best
    best = None
    orders = [tuple(range(1, bg.k + 1))]
    if bg.k > 1:
        orders.append(tuple(range(bg.k, 0, -1)))
    for order in orders:
        cand, coef = _eliminate(
            bg, t, (), budget, _Frames(budget.max_frames), order, False
        )
        if coef:
            raise AssertionError("unresolved variables at solver root")
        if best is None or bg.size_of(cand) < bg.size_of(best):
            best = cand
    if len(states) <= 12:
        cand = best_elimination(bg, t)
        if bg.size_of(cand) < bg.size_of(best):
            best = cand
    if bg.size_of(best) < bg.size_of(t):
        bg.merge(best, t)
        bg.normalize_background()
        return bg.rep(target)
    return t
