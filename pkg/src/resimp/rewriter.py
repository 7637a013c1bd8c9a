"""Inclusion-driven simplification rules and factorization.

Rules are applied innermost-first, so sub-results are representatives
before their parents are examined.  Every candidate rewrite is verified
semantically (two-way inclusion) before it is accepted; a wrong proposal
can only cost time, never correctness.  Accepted rewrites merge the old
and new identifiers in the background, making the improvement visible to
every later lookup.

Rule families on a union U = E1 + ... + En:

* redundancy: drop Ei when its language is included in the rest;
* coverings: propose a bounded pool of covers (star closures of members,
  the star of the members' cores) and accept an equivalent smaller one.

Under a star (E1 + ... + En)* much more is possible: members may be
dropped when the rest's closure covers them, starred members lose their
star, and star-shaped factors buried inside members may be stripped,
because the outer closure re-absorbs them.  These edits are proposed
speculatively on the star body and each one is verified on the whole
star.

On concatenations: nullable factors that contribute nothing are dropped,
duplicate adjacent stars collapse, and adjacent pairs are replaced by a
shorter known-equivalent representative when the background owns one.

Factorization groups union members sharing a head factor
(``aX + aY -> a(X + Y)``) or a tail factor, recursing into the grouped
remainder; a grouping is kept only when the size strictly decreases.
"""

from __future__ import annotations

from .derivatives import StateBudgetExceeded, includes

DEFAULT_INCLUDE_BUDGET = 2000
_MAX_VARIANTS = 48
_MAX_ROUNDS = 30


_MAX_TERM_SIZE = 300


class _Ctx:
    def __init__(self, bg, include_budget, max_term_size=_MAX_TERM_SIZE):
        self.bg = bg
        self.include_budget = include_budget
        self.max_term_size = max_term_size
        self.memo = {}
        self.visiting = set()


def _safe_includes(ctx, a, b):
    try:
        return includes(ctx.bg, a, b, max_states=ctx.include_budget)
    except StateBudgetExceeded:
        return None


def _verified_equal(ctx, a, b):
    return bool(_safe_includes(ctx, a, b)) and bool(_safe_includes(ctx, b, a))


def _accept(ctx, old, new):
    ctx.bg.merge(old, new)
    ctx.bg.normalize_background()
    return ctx.bg.rep(old)


def simplify_rules(bg, e, include_budget=DEFAULT_INCLUDE_BUDGET,
                   max_term_size=_MAX_TERM_SIZE):
    """Apply the rule families to fixpoint; returns the representative."""
    ctx = _Ctx(bg, include_budget, max_term_size)
    return _rw(ctx, e)


def _rw(ctx, e):
    bg = ctx.bg
    r = bg.rep(e)
    hit = ctx.memo.get(r)
    if hit is not None:
        return bg.rep(hit)
    if r in ctx.visiting:
        return r
    ctx.visiting.add(r)
    try:
        kind = bg.kind_of(r)
        if kind in ("0", "1", "L"):
            out = r
        elif kind == "*":
            child = _rw(ctx, bg.node[r][1])
            s = bg.star_of(child)
            if s != r:
                s = _accept(ctx, r, s)  # identity rebuild from representatives
            out = _star_rules(ctx, s)
        elif kind == ".":
            out = _concat_rules(ctx, r)
        elif kind == "+":
            out = _union_rules(ctx, r)
        else:
            n = bg.node[r]
            a, b = _rw(ctx, n[1]), _rw(ctx, n[2])
            ctor = {"\\": bg.diff_of, "&": bg.and_of, "^": bg.sym_of}[kind]
            nb = ctor(a, b)
            out = _accept(ctx, r, nb) if nb != r else r
    finally:
        ctx.visiting.discard(r)
    out = ctx.bg.rep(out)
    ctx.memo[r] = out
    ctx.memo[out] = out
    return out


# ----------------------------------------------------------------------
# unions


def _union_rules(ctx, u):
    bg = ctx.bg
    members = [_rw(ctx, m) for m in bg.node[u][1:]]
    nu = bg.union_many(members)
    if nu != u:
        u = _accept(ctx, u, nu)
    changed = bg.size_of(u) <= ctx.max_term_size
    while changed and bg.kind_of(u) == "+":
        changed = False
        members = list(bg.node[u][1:])
        for m in sorted(members, key=bg.size_of, reverse=True):
            rest = bg.union_many(x for x in members if x != m)
            if _safe_includes(ctx, m, rest):
                u = _accept(ctx, u, rest)
                changed = True
                break
    if bg.kind_of(u) == "+" and bg.size_of(u) <= ctx.max_term_size:
        u = _union_covering(ctx, u)
    return bg.rep(u)


def _union_covering(ctx, u):
    """Try a bounded pool of candidate covers equivalent to the union."""
    bg = ctx.bg
    members = bg.node[u][1:]
    candidates = []
    for m in members[:8]:
        candidates.append(bg.star_of(m))
    cores = [bg.node[m][1] if bg.kind_of(m) == "*" else m for m in members]
    candidates.append(bg.star_of(bg.union_many(cores)))
    seen = set()
    pool = []
    for c in candidates:
        if c not in seen and c != u:
            seen.add(c)
            pool.append(c)
    best = u
    for c in pool[:16]:
        c2 = _rw(ctx, c)
        if bg.size_of(c2) < bg.size_of(bg.rep(best)) and _verified_equal(ctx, u, c2):
            best = _accept(ctx, u, c2)
    return bg.rep(best)


# ----------------------------------------------------------------------
# stars


def _star_rules(ctx, s):
    bg = ctx.bg
    rounds = 0
    while rounds < _MAX_ROUNDS:
        rounds += 1
        s = bg.rep(s)
        if bg.kind_of(s) != "*" or bg.size_of(s) > ctx.max_term_size:
            break
        body = bg.node[s][1]
        improved = False
        variants = sorted(
            _body_variants(bg, body, 2), key=bg.size_of
        )[:_MAX_VARIANTS]
        for nb in variants:
            ns = bg.star_of(nb)
            if bg.size_of(ns) >= bg.size_of(s):
                continue
            if _verified_equal(ctx, s, ns):
                s = _accept(ctx, s, ns)
                improved = True
                break
        if not improved:
            break
    return bg.rep(s)


def _body_variants(bg, t, depth):
    """Candidate rewrites of a star body; verified by the caller."""
    out = set()
    kind = bg.kind_of(t)
    if kind == "*":
        out.add(bg.node[t][1])
    elif kind == "+":
        members = bg.node[t][1:]
        for i, m in enumerate(members):
            others = members[:i] + members[i + 1 :]
            out.add(bg.union_many(others))
            mk = bg.kind_of(m)
            if mk == "*":
                out.add(bg.union_many(others + (bg.node[m][1],)))
                if depth > 0:
                    for v in _body_variants(bg, bg.node[m][1], depth - 1):
                        out.add(bg.union_many(others + (bg.star_of(v),)))
            if mk == ".":
                factors = bg.concat_factors(m)
                if all(bg.kind_of(f) == "*" for f in factors):
                    out.add(
                        bg.union_many(
                            others + tuple(bg.node[f][1] for f in factors)
                        )
                    )
            if depth > 0:
                for v in _body_variants(bg, m, depth - 1):
                    out.add(bg.union_many(others + (v,)))
    elif kind == ".":
        factors = bg.concat_factors(t)
        for i, f in enumerate(factors):
            rest = factors[:i] + factors[i + 1 :]
            out.add(bg.concat_many(rest))
            if bg.kind_of(f) == "*":
                out.add(bg.concat_many(factors[:i] + [bg.node[f][1]] + factors[i + 1 :]))
                if depth > 0:
                    for v in _body_variants(bg, bg.node[f][1], depth - 1):
                        out.add(
                            bg.concat_many(
                                factors[:i] + [bg.star_of(v)] + factors[i + 1 :]
                            )
                        )
            elif depth > 0:
                for v in _body_variants(bg, f, depth - 1):
                    out.add(bg.concat_many(factors[:i] + [v] + factors[i + 1 :]))
        if len(factors) > 1 and all(bg.kind_of(f) == "*" for f in factors):
            out.add(bg.union_many(bg.node[f][1] for f in factors))
    out.discard(t)
    return out


# ----------------------------------------------------------------------
# concatenations


def _concat_rules(ctx, c):
    from .derivatives import nullable

    bg = ctx.bg
    factors = [_rw(ctx, f) for f in bg.concat_factors(c)]
    nc = bg.concat_many(factors)
    if nc != c:
        c = _accept(ctx, c, nc)
    changed = True
    rounds = 0
    while changed and rounds < _MAX_ROUNDS:
        changed = False
        rounds += 1
        c = bg.rep(c)
        if bg.kind_of(c) != ".":
            break
        factors = bg.concat_factors(c)
        # duplicate adjacent stars: X*X* = X*
        for i in range(len(factors) - 1):
            if factors[i] == factors[i + 1] and bg.kind_of(factors[i]) == "*":
                c = _accept(ctx, c, bg.concat_many(factors[:i] + factors[i + 1 :]))
                changed = True
                break
        if changed:
            continue
        # drop a nullable factor (candidate is always included in c)
        for i, f in enumerate(factors):
            if bg.size_of(c) > ctx.max_term_size:
                break
            if nullable(bg, f):
                cand = bg.concat_many(factors[:i] + factors[i + 1 :])
                if _safe_includes(ctx, c, cand):
                    c = _accept(ctx, c, cand)
                    changed = True
                    break
        if changed:
            continue
        # a whole spine of stars may fold into one star of the bodies' union
        if len(factors) > 1 and all(bg.kind_of(f) == "*" for f in factors):
            cand = bg.star_of(bg.union_many(bg.node[f][1] for f in factors))
            if bg.size_of(cand) < bg.size_of(c) and _verified_equal(ctx, c, cand):
                c = _accept(ctx, c, cand)
                continue
        # edit a star factor's body; validity comes from the whole
        # concatenation, which may absorb what the star alone cannot
        if bg.size_of(c) <= ctx.max_term_size:
            for i, f in enumerate(factors):
                if bg.kind_of(f) != "*":
                    continue
                variants = sorted(
                    _body_variants(bg, bg.node[f][1], 2), key=bg.size_of
                )[:_MAX_VARIANTS]
                for v in variants:
                    cand = bg.concat_many(
                        factors[:i] + [bg.star_of(v)] + factors[i + 1 :]
                    )
                    if bg.size_of(cand) >= bg.size_of(c):
                        continue
                    if _verified_equal(ctx, c, cand):
                        c = _accept(ctx, c, cand)
                        changed = True
                        break
                if changed:
                    break
        if changed:
            continue
        # adjacent pair with a shorter known-equivalent representative
        for i in range(len(factors) - 1):
            pair = bg.concat_of(factors[i], factors[i + 1])
            rp = bg.rep(pair)
            if bg.size_of(rp) < bg.size_of(pair):
                cand = bg.concat_many(
                    factors[:i] + bg.concat_factors(rp) + factors[i + 2 :]
                )
                if bg.size_of(cand) < bg.size_of(c):
                    c = _accept(ctx, c, cand)
                    changed = True
                    break
    return bg.rep(c)


def reduce_entry(bg, e, include_budget=256, max_members=48):
    """Light-weight reduction for solver intermediates.

    Factorizes, then drops union members included in the rest (verified
    with a small state budget).  Much cheaper than the full rule set;
    meant to keep state-elimination entries from piling up.
    """
    e = factorize(bg, e)
    ctx = _Ctx(bg, include_budget)
    changed = True
    while changed and bg.kind_of(e) == "+":
        changed = False
        members = list(bg.node[e][1:])
        if len(members) > max_members:
            break
        for m in sorted(members, key=bg.size_of, reverse=True):
            rest = bg.union_many(x for x in members if x != m)
            if _safe_includes(ctx, m, rest):
                e = _accept(ctx, e, rest)
                e = bg.rep(e)
                changed = True
                break
    return bg.rep(factorize(bg, e))


# ----------------------------------------------------------------------
# factorization


def factorize(bg, e):
    """Group union members by shared head or tail factors, recursively.

    Groupings are sound by distributivity; one is kept only when the
    total size strictly decreases.  Accepted groupings are merged into
    the background like any other improvement.
    """
    return _fz(bg, bg.rep(e), {})


def _fz(bg, e, memo):
    r = bg.rep(e)
    hit = memo.get(r)
    if hit is not None:
        return bg.rep(hit)
    memo[r] = r  # break cycles through the union-find
    kind = bg.kind_of(r)
    if kind in ("0", "1", "L"):
        out = r
    elif kind == "*":
        out = bg.star_of(_fz(bg, bg.node[r][1], memo))
    elif kind == ".":
        out = bg.concat_many([_fz(bg, f, memo) for f in bg.concat_factors(r)])
    elif kind == "+":
        members = [_fz(bg, m, memo) for m in bg.node[r][1:]]
        flat = bg.union_many(members)
        out = flat
        if bg.kind_of(flat) == "+":
            cands = [
                _group(bg, flat, memo, by_head=True),
                _group(bg, flat, memo, by_head=False),
            ]
            for cand in cands:
                if cand is not None and bg.size_of(cand) < bg.size_of(out):
                    out = cand
    else:
        n = bg.node[r]
        ctor = {"\\": bg.diff_of, "&": bg.and_of, "^": bg.sym_of}[kind]
        out = ctor(_fz(bg, n[1], memo), _fz(bg, n[2], memo))
    if out != r:
        bg.merge(r, out)
        bg.normalize_background()
        out = bg.rep(r)
    memo[r] = out
    return out


def _group(bg, u, memo, by_head):
    members = bg.node[u][1:]
    groups = {}
    for m in members:
        factors = bg.concat_factors(m)
        if by_head:
            key = factors[0]
            rest = bg.concat_many(factors[1:]) if len(factors) > 1 else bg.one
        else:
            key = factors[-1]
            rest = bg.concat_many(factors[:-1]) if len(factors) > 1 else bg.one
        groups.setdefault(key, []).append(rest)
    if all(len(v) < 2 for v in groups.values()):
        return None
    parts = []
    for key, rests in groups.items():
        if len(rests) < 2:
            rest = rests[0]
            part = bg.concat_of(key, rest) if by_head else bg.concat_of(rest, key)
        else:
            inner = _fz(bg, bg.union_many(rests), memo)
            part = bg.concat_of(key, inner) if by_head else bg.concat_of(inner, key)
        parts.append(part)
    return bg.union_many(parts)
