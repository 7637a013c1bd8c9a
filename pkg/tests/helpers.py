"""Shared helpers for the test suite."""

from resimp import syntax
from resimp.background import Background


def seeded_amap(letters="ab"):
    """An alphabet map already containing the given letters."""
    _, amap = syntax.parse("+".join(letters))
    return amap


def fresh(text, capacity=100_000, amap=None):
    """Parse ``text`` into a fresh background; (bg, id, amap)."""
    raw, amap = syntax.parse(text, amap)
    bg = Background(max(amap.k, 1), capacity)
    return bg, bg.normalize_expr(raw), amap


def norm_size(text, amap=None):
    """Size of the normalized form of ``text``."""
    bg, e, _ = fresh(text, amap=amap)
    return bg.size_of(e)
