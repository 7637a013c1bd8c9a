"""Command-line surface: simplify, check, gen, stats.

Exit codes: 0 success, 1 parse error, 2 capacity exhausted, 3 unknown
algorithm letter, 4 a strict check answered false.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from . import randgen, syntax
from .background import ArenaFull, Background, DEFAULT_CAPACITY
from .derivatives import includes
from .pipeline import (
    DEFAULT_ALG,
    CapacityError,
    Pipeline,
    PipelineConfig,
    UnknownAlgorithmLetter,
)

EXIT_PARSE = 1
EXIT_CAPACITY = 2
EXIT_LETTER = 3
EXIT_STRICT_FALSE = 4


def _read_corpus(path):
    """Expression lines from a corpus file; blank and '#' lines skipped."""
    out = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            s = line.strip()
            if s and not s.startswith("#"):
                out.append((lineno, s))
    return out


def _parse_all(items):
    amap = syntax.AlphabetMap()
    raws = []
    for lineno, text in items:
        try:
            raw, amap = syntax.parse(text, amap)
        except syntax.ParseError as e:
            print("line %d: %s" % (lineno, e), file=sys.stderr)
            raise SystemExit(EXIT_PARSE)
        raws.append(raw)
    return raws, amap


def _config(letters, capacity):
    try:
        return PipelineConfig.from_letters(letters, capacity=capacity)
    except UnknownAlgorithmLetter as e:
        print(str(e), file=sys.stderr)
        raise SystemExit(EXIT_LETTER)


# ----------------------------------------------------------------------


def cmd_simplify(args):
    if args.expr is not None:
        items = [(1, args.expr)]
    else:
        items = _read_corpus(args.input)
    cfg = _config(args.alg, args.capacity)
    raws, amap = _parse_all(items)
    bg = Background(amap.k, args.capacity)
    pipe = Pipeline(bg, cfg)
    try:
        for raw in raws:
            root = bg.normalize_expr(raw)
            out = pipe.simplify_id(root)
            print(syntax.to_text(out, bg, amap))
    except ArenaFull:
        print("capacity %d cannot intern the input" % args.capacity,
              file=sys.stderr)
        return EXIT_CAPACITY
    except CapacityError as e:
        print(str(e), file=sys.stderr)
        return EXIT_CAPACITY
    return 0


def cmd_check(args):
    cfg = _config(args.alg, args.capacity)
    items = [(1, args.expr1), (2, args.expr2)]
    (r1, r2), amap = _parse_all(items)
    bg = Background(amap.k, args.capacity)
    try:
        e1 = bg.normalize_expr(r1)
        e2 = bg.normalize_expr(r2)
    except ArenaFull:
        print("capacity %d cannot intern the input" % args.capacity,
              file=sys.stderr)
        return EXIT_CAPACITY
    pipe = Pipeline(bg, cfg)
    try:
        if args.include:
            verdict = includes(bg, e1, e2)
        elif args.equiv:
            verdict = pipe.simplify_id(bg.sym_of(e1, e2)) == bg.zero
        else:
            out = pipe.simplify_id(bg.diff_of(e1, e2))
            print(syntax.to_text(out, bg, amap))
            return 0
    except CapacityError as e:
        print(str(e), file=sys.stderr)
        return EXIT_CAPACITY
    print("true" if verdict else "false")
    if args.strict and not verdict:
        return EXIT_STRICT_FALSE
    return 0


def cmd_gen(args):
    for text in randgen.generate_many(args.size, args.letters, args.seed,
                                      args.count):
        print(text)
    return 0


# ----------------------------------------------------------------------
# statistics harness

STATS_COLUMNS = (
    "alg", "l_N", "n_min",
    "l_avg", "l_1/4", "l_1/2", "l_3/4",
    "t_avg", "t_1/4", "t_1/2", "t_3/4",
    "gc", "gc_f",
)


def _quartiles(xs):
    if len(xs) == 1:
        return [xs[0]] * 3
    return statistics.quantiles(xs, n=4, method="inclusive")


def stats_row(texts, letters, capacity=DEFAULT_CAPACITY, cfg=None):
    """One statistics row: the corpus simplified on one shared background."""
    items = list(enumerate(texts, 1))
    raws, amap = _parse_all(items)
    bg = Background(amap.k, capacity)
    if cfg is None:
        cfg = _config(letters, capacity)
    pipe = Pipeline(bg, cfg)
    full = bg.star_of(bg.union_many(bg.letter_ids)) if amap.k else bg.one
    in_sizes = []
    out_sizes = []
    times = []
    n_min = 0
    for raw in raws:
        root = bg.normalize_expr(raw)
        in_sizes.append(bg.size_of(root))
        t0 = time.perf_counter()
        out = pipe.simplify_id(root)
        times.append(time.perf_counter() - t0)
        out_sizes.append(bg.size_of(out))
        if out == bg.rep(full):
            n_min += 1
    lq = _quartiles(out_sizes)
    tq = _quartiles(times)
    return {
        "alg": letters or "(none)",
        "l_N": statistics.fmean(in_sizes),
        "n_min": n_min,
        "l_avg": statistics.fmean(out_sizes),
        "l_1/4": lq[0], "l_1/2": lq[1], "l_3/4": lq[2],
        "t_avg": statistics.fmean(times),
        "t_1/4": tq[0], "t_1/2": tq[1], "t_3/4": tq[2],
        "gc": bg.gc_count,
        "gc_f": bg.gc_f_count,
    }


def _format_cell(key, value):
    if key == "alg":
        return str(value)
    if key in ("n_min", "gc", "gc_f"):
        return str(value)
    if key.startswith("t"):
        return "%.3f" % value
    return "%.1f" % value


def render_table(rows):
    cells = [[_format_cell(c, r[c]) for c in STATS_COLUMNS] for r in rows]
    widths = [
        max(len(STATS_COLUMNS[i]), *(row[i].__len__() for row in cells))
        for i in range(len(STATS_COLUMNS))
    ]
    lines = ["  ".join(c.rjust(w) for c, w in zip(STATS_COLUMNS, widths))]
    for row in cells:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


def render_csv(rows):
    lines = [",".join(STATS_COLUMNS)]
    for r in rows:
        lines.append(",".join(_format_cell(c, r[c]) for c in STATS_COLUMNS))
    return "\n".join(lines)


def cmd_stats(args):
    items = _read_corpus(args.input)
    texts = [t for _, t in items]
    rows = []
    for letters in args.alg.split(","):
        cfg = _config(letters, args.capacity)
        rows.append(stats_row(texts, letters, args.capacity, cfg))
    if args.format == "csv":
        print(render_csv(rows))
    else:
        print(render_table(rows))
    return 0


# ----------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="resimp",
                                description="regular expression simplifier")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simplify", help="simplify expressions")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--expr", help="one expression")
    g.add_argument("--input", help="file with one expression per line")
    s.add_argument("--alg", default=DEFAULT_ALG,
                   help="algorithm letters (subset of nfrsS)")
    s.add_argument("--capacity", type=int, default=DEFAULT_CAPACITY)
    s.set_defaults(func=cmd_simplify)

    c = sub.add_parser("check", help="compare two expressions")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--equiv", action="store_true")
    g.add_argument("--include", action="store_true")
    g.add_argument("--diff", action="store_true")
    c.add_argument("expr1")
    c.add_argument("expr2")
    c.add_argument("--strict", action="store_true",
                   help="exit 4 when the answer is false")
    c.add_argument("--alg", default=DEFAULT_ALG)
    c.add_argument("--capacity", type=int, default=DEFAULT_CAPACITY)
    c.set_defaults(func=cmd_check)

    n = sub.add_parser("gen", help="generate uniform random expressions")
    n.add_argument("--size", type=int, required=True)
    n.add_argument("--letters", type=int, required=True)
    n.add_argument("--count", type=int, default=1)
    n.add_argument("--seed", type=int, default=0)
    n.set_defaults(func=cmd_gen)

    t = sub.add_parser("stats", help="simplification statistics over a corpus")
    t.add_argument("--input", required=True)
    t.add_argument("--alg", required=True,
                   help="comma-separated letter sets, one table row each")
    t.add_argument("--capacity", type=int, default=DEFAULT_CAPACITY)
    t.add_argument("--format", choices=("table", "csv"), default="table")
    t.set_defaults(func=cmd_stats)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
