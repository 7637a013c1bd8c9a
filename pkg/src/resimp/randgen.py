"""Fair (uniform) random generation of regular expressions by unranking.

The generation grammar is the raw-tree grammar of the syntax module with
binary union and concatenation:

    E ::= letter | 0 | 1 | E* | E.E | E+E

Size counts symbol occurrences (parentheses excluded): leaves are 1, a
star adds 1, each binary operator adds 1.  With k letters the number of
trees of size n satisfies

    C(1) = k + 2
    C(n) = C(n-1) + 2 * sum_{i=1}^{n-2} C(i) * C(n-1-i)      (n >= 2)

Counts are exact big integers; a uniform tree is obtained by drawing a
uniform rank below C(n) and unranking it: the rank selects the root
production with probability proportional to its count contribution, then
recursion splits the remaining rank between the children.
"""

from __future__ import annotations

import random
import string
import sys

from .syntax import AlphabetMap, raw_to_text

sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))

_tables = {}  # k -> list of counts, index = size


def _table(k):
    t = _tables.get(k)
    if t is None:
        t = [0, k + 2]
        _tables[k] = t
    return t


def count(n, k):
    """The exact number of expression trees of size ``n`` over ``k`` letters."""
    if n < 1:
        raise ValueError("size must be >= 1")
    if k < 1:
        raise ValueError("alphabet must have at least one letter")
    t = _table(k)
    while len(t) <= n:
        m = len(t)
        c = t[m - 1]
        for i in range(1, m - 1):
            c += 2 * t[i] * t[m - 1 - i]
        t.append(c)
    return t[n]


def _unrank(n, k, r):
    t = _table(k)
    if n == 1:
        if r < k:
            return ("sym", r + 1)
        return ("lit", "0") if r == k else ("lit", "1")
    if r < t[n - 1]:
        return ("*", _unrank(n - 1, k, r))
    r -= t[n - 1]
    for i in range(1, n - 1):
        block = t[i] * t[n - 1 - i]
        for op in (".", "+"):
            if r < block:
                q, s = divmod(r, t[n - 1 - i])
                return (op, _unrank(i, k, q), _unrank(n - 1 - i, k, s))
            r -= block
    raise AssertionError("rank out of range")


def generate_raw(n, k, rng):
    """One uniform raw tree of size ``n``, drawn from ``rng``."""
    total = count(n, k)
    return _unrank(n, k, rng.randrange(total))


def alphabet_map(k):
    """An alphabet map over the first ``k`` lowercase letters."""
    amap = AlphabetMap()
    for ch in string.ascii_lowercase[:k]:
        amap.index_of(ch)
    return amap


def generate(n, k, seed):
    """One uniform expression of size ``n`` as text; deterministic in seed."""
    rng = random.Random(seed)
    return raw_to_text(generate_raw(n, k, rng), alphabet_map(k))


def generate_many(n, k, seed, m):
    """``m`` independent uniform expressions from one seeded stream."""
    rng = random.Random(seed)
    amap = alphabet_map(k)
    return [raw_to_text(generate_raw(n, k, rng), amap) for _ in range(m)]
