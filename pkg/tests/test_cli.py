"""Command-line surface and exit codes."""

import pytest

from resimp.cli import main, render_csv, render_table, stats_row, STATS_COLUMNS


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    out = capsys.readouterr()
    return code or 0, out.out, out.err


def test_simplify_expr(capsys):
    code, out, _ = run(capsys, "simplify", "--expr", "a + a")
    assert code == 0
    assert out.strip() == "a"


def test_simplify_corpus(tmp_path, capsys):
    p = tmp_path / "corpus.txt"
    p.write_text("# comment\n\na + a\nb0 + ab\n")
    code, out, _ = run(capsys, "simplify", "--input", str(p))
    assert code == 0
    assert out.splitlines() == ["a", "ab"]


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "simplify", "--expr", "a +")
    assert code == 1
    assert "line 1" in err


def test_unknown_letter_exit_code(capsys):
    code, _, err = run(capsys, "simplify", "--expr", "a", "--alg", "rq")
    assert code == 3
    code, _, err = run(capsys, "simplify", "--expr", "a", "--alg", "a")
    assert code == 3
    assert "reserved" in err


def test_capacity_exit_code(capsys):
    from resimp.randgen import generate

    code, _, err = run(capsys, "simplify", "--expr",
                       generate(400, 2, 8), "--capacity", "30")
    assert code == 2


def test_check_equiv(capsys):
    code, out, _ = run(capsys, "check", "--equiv", "a(ba)*", "(ab)*a")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "check", "--equiv", "a", "b")
    assert code == 0 and out.strip() == "false"


def test_check_strict_false_exit_code(capsys):
    code, out, _ = run(capsys, "check", "--include", "--strict",
                       "(a + b)*", "a")
    assert code == 4 and out.strip() == "false"
    code, out, _ = run(capsys, "check", "--include", "--strict",
                       "a", "(a + b)*")
    assert code == 0 and out.strip() == "true"


def test_check_diff_prints_expression(capsys):
    code, out, _ = run(capsys, "check", "--diff", "ab + a", "a")
    assert code == 0 and out.strip() == "ab"


def test_gen_deterministic(capsys):
    code, out1, _ = run(capsys, "gen", "--size", "12", "--letters", "2",
                        "--count", "3", "--seed", "5")
    assert code == 0 and len(out1.splitlines()) == 3
    code, out2, _ = run(capsys, "gen", "--size", "12", "--letters", "2",
                        "--count", "3", "--seed", "5")
    assert out1 == out2


def test_stats_row_and_rendering():
    texts = ["a + a", "(a + b)(a + b)", "ab + ba"]
    row = stats_row(texts, "rsS")
    assert set(STATS_COLUMNS) <= set(row) | {"alg"}
    table = render_table([row])
    assert table.splitlines()[0].split() == list(STATS_COLUMNS)
    csv = render_csv([row])
    assert csv.splitlines()[0] == ",".join(STATS_COLUMNS)


def test_stats_command(tmp_path, capsys):
    p = tmp_path / "corpus.txt"
    p.write_text("a + a\nab + ba\n")
    code, out, _ = run(capsys, "stats", "--input", str(p),
                       "--alg", "s,rsS", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert lines[1].startswith("s,") and lines[2].startswith("rsS,")
