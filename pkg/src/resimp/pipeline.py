"""The end-to-end simplification driver.

An input expression is normalized, then its distinct sub-expressions are
processed shortest first.  Each one is pre-simplified (rebuilt from the
representatives of its direct sub-expressions), its complete equation
set is computed with background normalization, and the configured passes
run:

    r   minimize the sub-expression's equations (Moore)
    s   inclusion-driven simplification rules
    S   equation solving (Salomaa / state elimination)
    f   factorization of the pre-simplified sub-expression
    n   suppress the standard finale (one Moore pass over all equations
        plus one last factorization of the result)

The letter ``a`` (exhaustive regrouping) is reserved and rejected.

On arena exhaustion the collector runs with the remaining stack as
roots; if too little is reclaimed, degraded mode drops the equations not
rooted in the stack and only pre-simplifies what remains.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import syntax
from .background import ArenaFull, Background, DEFAULT_CAPACITY
from .derivatives import (
    StateBudgetExceeded,
    closure_scan,
    complete_equations,
    includes,
)
from .minimize import moore, separate_all
from .rewriter import factorize, simplify_rules
from .solver import SolveBudget, resolve_all, solve

VALID_LETTERS = frozenset("nfrsS")
RESERVED_LETTERS = frozenset("a")
DEFAULT_ALG = "rsS"


class UnknownAlgorithmLetter(ValueError):
    pass


class CapacityError(RuntimeError):
    """The arena cannot hold even the mandatory working set."""


@dataclass
class PipelineConfig:
    letters: frozenset = frozenset(DEFAULT_ALG)
    capacity: int = DEFAULT_CAPACITY
    state_budget: int = 600          # equation states per sub-expression
    include_budget: int = 1500       # inclusion-query states (rules)
    solve_depth: int | None = None
    solve_cap: int | None = None
    finale_state_cap: int = 4000     # beyond this, the finale minimizes
                                     # the root's closure only

    @classmethod
    def from_letters(cls, letters, **kw):
        bad = set(letters) - VALID_LETTERS
        if bad:
            reserved = bad & RESERVED_LETTERS
            if reserved:
                raise UnknownAlgorithmLetter(
                    "algorithm letter 'a' (exhaustive regrouping) is reserved "
                    "and not implemented"
                )
            raise UnknownAlgorithmLetter(
                "unknown algorithm letter(s): %s" % "".join(sorted(bad))
            )
        return cls(letters=frozenset(letters), **kw)


def pre_simplify(bg, e):
    """Rebuild ``e`` from the representatives of its direct parts."""
    n = bg.node[e]
    kind = n[0]
    if kind in ("0", "1", "L"):
        return bg.rep(e)
    if kind == "*":
        return bg.star_of(bg.rep(n[1]))
    if kind == ".":
        return bg.concat_of(bg.rep(n[1]), bg.rep(n[2]))
    if kind == "+":
        return bg.union_many(bg.rep(m) for m in n[1:])
    ctor = {"\\": bg.diff_of, "&": bg.and_of, "^": bg.sym_of}[kind]
    return ctor(bg.rep(n[1]), bg.rep(n[2]))


def subexpression_order(bg, root):
    """Distinct sub-expressions of ``root``, shortest first (ties: id)."""
    seen = set()
    stack = [root]
    while stack:
        e = stack.pop()
        if e in seen:
            continue
        seen.add(e)
        stack.extend(bg.children_of(e))
    return sorted(seen, key=lambda e: (bg.size_of(e), e))


class Pipeline:
    """Drives simplification over one background."""

    def __init__(self, bg, cfg=None):
        self.bg = bg
        self.cfg = cfg or PipelineConfig()

    # ------------------------------------------------------------------

    def simplify_id(self, root):
        bg = self.bg
        cfg = self.cfg
        order = subexpression_order(bg, root)
        pending = [e for e in order if e not in bg.processed]
        degraded = False
        for i, e in enumerate(pending):
            bg.processed.add(e)
            roots = pending[i:] + [root]
            try:
                self._process(e, presimplify_only=degraded)
            except ArenaFull:
                degraded = self._recover(roots, degraded)
                try:
                    self._process(e, presimplify_only=degraded)
                except ArenaFull:
                    degraded = self._recover(roots, True)
                    try:
                        self._process(e, presimplify_only=True)
                    except ArenaFull:
                        raise CapacityError(
                            "capacity %d cannot hold the working set"
                            % bg.capacity
                        )
        if "n" not in cfg.letters:
            self._finale(root)
        return bg.rep(root)

    def _recover(self, roots, force_degraded):
        bg = self.bg
        bg.normalize_background()
        reclaimed = bg.gc(roots)
        if force_degraded or reclaimed < max(64, bg.capacity // 20):
            bg.drop_equations_not_rooted(roots)
            bg.gc(roots)
            bg.gc_f_count += 1
            return True
        return False

    def _process(self, e, presimplify_only=False):
        bg = self.bg
        cfg = self.cfg
        ep = pre_simplify(bg, e)
        if ep != e:
            bg.merge(e, ep)
            bg.normalize_background()
        r = bg.rep(e)
        if presimplify_only:
            return
        if bg.is_extended(r):
            self._process_extended(r)
            return
        try:
            complete_equations(bg, r, max_states=cfg.state_budget)
            have_eqs = True
        except StateBudgetExceeded:
            have_eqs = False
        if have_eqs and "r" in cfg.letters:
            eq_ids, _, _ = closure_scan(bg, bg.rep(e))
            moore(bg, eq_ids)
        if "s" in cfg.letters:
            simplify_rules(bg, bg.rep(e), include_budget=cfg.include_budget)
        if have_eqs and "S" in cfg.letters:
            budget = None
            if cfg.solve_depth is not None or cfg.solve_cap is not None:
                _, states, _ = closure_scan(bg, bg.rep(e))
                t = bg.rep(e)
                budget = SolveBudget(
                    max_depth=cfg.solve_depth or len(states),
                    size_cap=cfg.solve_cap or 2 * bg.size_of(t),
                )
            solve(bg, bg.rep(e), budget=budget)
        if "f" in cfg.letters:
            factorize(bg, bg.rep(e))

    def _process_extended(self, x):
        """Turn an extended expression into a plain equivalent.

        The derivative closure of the extended expression is registered
        (transiently), minimized, and solved by full state elimination,
        which yields a plain expression merged into the class.  The
        extended equations are then purged: the background's long-lived
        cache holds plain expressions only.
        """
        bg = self.bg
        cfg = self.cfg
        complete_equations(bg, x, max_states=max(cfg.state_budget, 2000))
        eq_ids, _, _ = closure_scan(bg, bg.rep(x))
        moore(bg, eq_ids)

        def improve(e):
            if bg.size_of(e) <= 200 and not bg.is_extended(e):
                simplify_rules(bg, e, include_budget=cfg.include_budget)

        plain = resolve_all(bg, bg.rep(x), improve=improve)
        if "s" in cfg.letters or "S" in cfg.letters:
            simplify_rules(bg, plain, include_budget=cfg.include_budget)
        if "f" in cfg.letters:
            factorize(bg, bg.rep(plain))
        for eq in list(bg.eq_lhs):
            lhs = bg.eq_lhs[eq]
            cells = bg.rhs_cells[bg.eq_rhs[eq]]
            if bg.is_extended(lhs) or any(bg.is_extended(c) for c in cells):
                bg._delete_equation(eq)
        bg.normalize_background()

    def _finale(self, root):
        bg = self.bg
        cfg = self.cfg
        if len(bg.eq_lhs) <= cfg.finale_state_cap:
            separate_all(bg)
        else:
            eq_ids, _, missing = closure_scan(bg, bg.rep(root))
            if missing is None and eq_ids:
                moore(bg, eq_ids)
        factorize(bg, bg.rep(root))


# ----------------------------------------------------------------------
# text-level entry points


def simplify(text, letters=DEFAULT_ALG, capacity=DEFAULT_CAPACITY,
             bg=None, amap=None, cfg=None):
    """Parse, simplify and print back in the caller's letters."""
    raw, amap = syntax.parse(text, amap)
    if bg is None:
        bg = Background(amap.k, capacity)
    if cfg is None:
        cfg = PipelineConfig.from_letters(letters, capacity=bg.capacity)
    try:
        root = bg.normalize_expr(raw)
    except ArenaFull:
        raise CapacityError("capacity %d cannot intern the input" % bg.capacity)
    out = Pipeline(bg, cfg).simplify_id(root)
    return syntax.to_text(out, bg, amap)


def check(text1, op, text2, letters=DEFAULT_ALG, capacity=DEFAULT_CAPACITY):
    """Equivalence / inclusion / difference of two expressions.

    ``op`` is one of ``equiv``, ``include``, ``diff``.  Both expressions
    are parsed over one alphabet map.  ``equiv`` simplifies the
    symmetric difference and answers True iff it is 0; ``include`` runs
    the derivative-based inclusion test; ``diff`` returns the simplified
    difference as text.
    """
    raw1, amap = syntax.parse(text1)
    raw2, amap = syntax.parse(text2, amap)
    bg = Background(amap.k, capacity)
    e1 = bg.normalize_expr(raw1)
    e2 = bg.normalize_expr(raw2)
    cfg = PipelineConfig.from_letters(letters, capacity=capacity)
    pipe = Pipeline(bg, cfg)
    if op == "include":
        return includes(bg, e1, e2)
    if op == "equiv":
        out = pipe.simplify_id(bg.sym_of(e1, e2))
        return out == bg.zero
    if op == "diff":
        out = pipe.simplify_id(bg.diff_of(e1, e2))
        return syntax.to_text(out, bg, amap)
    raise ValueError("unknown check operation %r" % op)
