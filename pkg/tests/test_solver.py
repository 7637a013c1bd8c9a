"""Equation solving: Arden closing, elimination, component resolution."""

import pytest

from resimp import oracle, randgen, syntax
from resimp.background import Background
from resimp.derivatives import closure_scan, complete_equations
from resimp.minimize import moore
from resimp.solver import (
    _solve_subsystem,
    _solve_subsystem_rev,
    _system_of,
    arden_close,
    best_elimination,
    eliminate_states,
    resolve_all,
    solve,
)

from helpers import seeded_amap


def _mk(text, amap=None, capacity=300_000):
    raw, amap = syntax.parse(text, amap or seeded_amap())
    bg = Background(max(amap.k, 1), capacity)
    return bg, bg.normalize_expr(raw), amap


def test_arden_close():
    bg, a, amap = _mk("a")
    raw, amap = syntax.parse("b", amap)
    b = bg.normalize_expr(raw)
    assert syntax.to_text(arden_close(bg, a, b), bg, amap) == "a*b"


def test_arden_rejects_nullable_coefficient():
    bg, a, amap = _mk("a + 1")
    with pytest.raises(ValueError):
        arden_close(bg, a, bg.one)


def test_solve_output_is_equivalent_and_no_larger():
    texts = [
        "(a + b)*a(a + b)",
        "a*b*a*",
        "(ab + ba)*(a + b)",
        "b + ab + aab + aaab + aaaab",
    ]
    for t in texts:
        bg, e, amap = _mk(t)
        out = solve(bg, e)
        assert bg.size_of(out) <= bg.size_of(e)
        assert oracle.oracle_equal(t, syntax.to_text(out, bg, amap),
                                   letters="ab"), t


def test_eliminate_states_is_equivalent():
    for t in ("(a + b)*ab", "a(ba)*b", "(aa + bb)*"):
        bg, e, amap = _mk(t)
        complete_equations(bg, e)
        out = eliminate_states(bg, bg.rep(e))
        assert oracle.oracle_equal(t, syntax.to_text(out, bg, amap),
                                   letters="ab"), t


def test_forward_and_reverse_subsystems_agree():
    for i in range(8):
        t = randgen.generate(10 + 5 * i, 2, 1700 + i)
        bg, e, amap = _mk(t)
        complete_equations(bg, e)
        eq_ids, _, _ = closure_scan(bg, bg.rep(e))
        moore(bg, eq_ids)
        bg.normalize_background()
        mat, out = _system_of(bg, bg.rep(e))
        fwd = _solve_subsystem(bg, bg.rep(e), mat, out, None, None)
        rev = _solve_subsystem_rev(bg, bg.rep(e), mat, out, None, None)
        tf = syntax.to_text(fwd, bg, amap)
        tr = syntax.to_text(rev, bg, amap)
        assert oracle.oracle_equal(t, tf, letters="ab"), t
        assert oracle.oracle_equal(tf, tr, letters="ab"), t


def test_best_elimination_never_worse_than_greedy():
    for t in ("(yx)*xx*y(yy*x + xx*y)*yy*", "(a + b)*ab(a + b)*"):
        bg, e, amap = _mk(t, seeded_amap("xyab"))
        complete_equations(bg, e)
        greedy = eliminate_states(bg, bg.rep(e))
        best = best_elimination(bg, bg.rep(e))
        assert bg.size_of(best) <= bg.size_of(greedy)


def test_resolve_all_turns_extended_plain():
    cases = [
        "(xy* + yx)* & (y*x + xy)*",
        "ab(a + b)* \\ abb(a + b)*",
        "(a + b)*a ^ (a + b)*b",
    ]
    for t in cases:
        amap = seeded_amap("xyab") if "x" in t else seeded_amap()
        bg, e, amap = _mk(t, amap)
        assert bg.is_extended(e)
        complete_equations(bg, e)
        eq_ids, _, _ = closure_scan(bg, bg.rep(e))
        moore(bg, eq_ids)
        plain = resolve_all(bg, bg.rep(e))
        assert not bg.is_extended(plain)
        letters = "xy" if "x" in t else "ab"
        assert oracle.oracle_equal(t, syntax.to_text(plain, bg, amap),
                                   letters=letters), t


def test_solver_is_deterministic():
    t = "(ab + ba)*(a + bb)"
    outs = set()
    for _ in range(2):
        bg, e, amap = _mk(t)
        outs.add(syntax.to_text(solve(bg, e), bg, amap))
    assert len(outs) == 1
