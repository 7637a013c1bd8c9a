"""Partial derivatives, equation closure and the inclusion test."""

import pytest

from resimp import oracle, randgen, syntax
from resimp.background import Background
from resimp.derivatives import (
    StateBudgetExceeded,
    closure_scan,
    complete_equations,
    includes,
    nullable,
    pderiv,
)

from helpers import fresh, seeded_amap


def test_nullable():
    cases = {
        "0": False, "1": True, "a": False, "a*": True,
        "ab + 1": True, "a(b + 1)": False, "(a + 1)(b + 1)": True,
    }
    for t, want in cases.items():
        bg, e, _ = fresh(t)
        assert bool(nullable(bg, e)) is want, t


def test_pderiv_concat():
    bg, e, amap = fresh("ab")
    parts = pderiv(bg, e, 1)
    assert {syntax.to_text(p, bg, amap) for p in parts} == {"b"}
    assert pderiv(bg, e, 2) == ()


def test_pderiv_star():
    bg, e, amap = fresh("(ab)*")
    parts = pderiv(bg, e, 1)
    assert {syntax.to_text(p, bg, amap) for p in parts} == {"b(ab)*"}


def test_complete_equations_closure():
    bg, e, _ = fresh("(a + b)*a")
    complete_equations(bg, e)
    _, states, missing = closure_scan(bg, bg.rep(e))
    assert missing is None
    # every cell of every closure equation owns an equation
    for s in states:
        assert bg.eq_by_lhs.get(bg.rep(s)) is not None


def test_state_budget():
    bg, e, _ = fresh("(a + b)(a + b)(a + b)(a + b)(a + b)(a + b)(a + b)")
    with pytest.raises(StateBudgetExceeded):
        complete_equations(bg, e, max_states=3)


def test_includes_basics():
    bg, e1, amap = fresh("a", amap=seeded_amap())
    raw, amap = syntax.parse("(a + b)*", amap)
    e2 = bg.normalize_expr(raw)
    assert includes(bg, e1, e2) is True
    assert includes(bg, e2, e1) is False


def test_includes_extended_operands():
    bg, e1, amap = fresh("ab & (a + b)b")
    raw, amap = syntax.parse("ab", amap)
    e2 = bg.normalize_expr(raw)
    assert includes(bg, e1, e2) is True
    assert includes(bg, e2, e1) is True


def test_includes_registers_no_equations():
    bg, e1, amap = fresh("a(a + b)*")
    raw, amap = syntax.parse("(a + b)*", amap)
    e2 = bg.normalize_expr(raw)
    before = len(bg.eq_lhs)
    includes(bg, e1, e2)
    assert len(bg.eq_lhs) == before


def test_includes_agrees_with_oracle_on_random_pairs():
    amap = seeded_amap()
    for i in range(30):
        t1 = randgen.generate(1 + (7 * i) % 25, 2, 300 + i)
        t2 = randgen.generate(1 + (11 * i) % 25, 2, 600 + i)
        raw1, amap = syntax.parse(t1, amap)
        raw2, amap = syntax.parse(t2, amap)
        bg = Background(2, 100_000)
        got = includes(bg, bg.normalize_expr(raw1), bg.normalize_expr(raw2))
        want = oracle.oracle_witness(
            "(%s) \\ (%s)" % (t1, t2), "0", letters="ab"
        ) is None
        assert got == want, (t1, t2)
