"""Moore partition refinement over equation sets.

Used three ways: minimize one expression's equations, decide equivalence
of two expressions, and separate all equation-owning representatives so
that distinct representatives denote distinct languages.
"""

from __future__ import annotations

from .derivatives import closure_scan, complete_equations


def moore(bg, eq_ids, strict=True):
    """Refine the states of ``eq_ids`` and merge indistinguishable ones.

    The initial partition splits on the constant term; refinement splits
    on successor-block signatures until stable.  Every non-singleton
    block queues merges, after which the background is normalized.
    Returns the stable partition as a list of id tuples.

    With ``strict`` the equation set must be complete.  Otherwise cells
    without an equation act as their own frozen singleton blocks, which
    can only under-merge (used by :func:`separate_all` after the
    collector has purged part of the closure).
    """
    bg.normalize_background()
    rows = {}
    for eq in set(eq_ids):
        if eq not in bg.eq_lhs:
            continue  # discarded by an interleaved normalization
        cells = bg.rhs_cells[bg.eq_rhs[eq]]
        rows[bg.eq_lhs[eq]] = cells
    if strict:
        for cells in rows.values():
            for c in cells[1:]:
                if c not in rows and bg.rep(c) not in rows:
                    raise ValueError("equation set is not complete")
    block = {}
    for s, cells in rows.items():
        block[s] = 1 if cells[0] == bg.one else 0

    def succ_block(c):
        r = bg.rep(c)
        b = block.get(r)
        return b if b is not None else ("?", r)

    while True:
        sigs = {}
        for s, cells in rows.items():
            sig = (block[s],) + tuple(succ_block(c) for c in cells[1:])
            sigs.setdefault(sig, []).append(s)
        if len(sigs) == len(set(block.values())):
            partition = [tuple(sorted(v)) for v in sigs.values()]
            break
        for i, members in enumerate(sigs.values()):
            for s in members:
                block[s] = i
    for members in partition:
        first = members[0]
        for other in members[1:]:
            bg.merge(first, other)
    bg.normalize_background()
    return sorted(partition)


def minimize_expression(bg, e, max_states=None):
    """Complete and minimize the equations of ``e``; returns the partition."""
    eq_ids = complete_equations(bg, e, max_states=max_states)
    return moore(bg, eq_ids)


def equivalent(bg, e1, e2, max_states=None):
    """True iff ``e1`` and ``e2`` denote the same language.

    Both closures are completed, minimized together, and the verdict is
    read off the union-find.  The merges persist, so later queries about
    either class are answered by representative equality.
    """
    if bg.rep(e1) == bg.rep(e2):
        return True
    complete_equations(bg, e1, max_states=max_states)
    complete_equations(bg, e2, max_states=max_states)
    ids1, _, _ = closure_scan(bg, e1)
    ids2, _, _ = closure_scan(bg, e2)
    moore(bg, set(ids1) | set(ids2))
    return bg.rep(e1) == bg.rep(e2)


def separate_all(bg):
    """Moore over every equation in the background.

    Afterwards distinct equation-owning representatives are pairwise
    language-distinct.  Idempotent: a second run performs no merges.
    """
    eq_ids = bg.equations()
    if not eq_ids:
        return []
    return moore(bg, eq_ids, strict=False)
