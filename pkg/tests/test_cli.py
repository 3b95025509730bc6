from realizab.cli import main


def run_cli(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def test_compile(capsys):
    assert run_cli(capsys, "compile", r"\x \y y") == (0, "(K) I\n")


def test_run_full_trace(capsys):
    rc, out = run_cli(capsys, "run", "(I) a", "--stack", "b.c", "--trace", "full")
    assert rc == 0
    assert out.splitlines()[:3] == ["0 init | (I) a | b.c.π0", "1 push | I | a.b.c.π0",
                                    "2 I | a | b.c.π0"]
    assert "done" in out


def test_parse_error_exit_code(capsys):
    rc, _ = run_cli(capsys, "compile", "(f")
    assert rc == 2


def test_gamma_synth(capsys):
    rc, out = run_cli(capsys, "gamma", "synth", "--from", "p^q", "--to", "q^p")
    assert rc == 0 and "VERIFIED" in out


def test_force_ascii(capsys):
    rc, out = run_cli(capsys, "force", "-p", "q", "-f", "n eps p", "--ascii")
    assert rc == 0 and out.strip() == "C[q^1] -> n eps p"


def test_pole_falsify_finds_counterexample(capsys):
    rc, out = run_cli(capsys, "--seed", "0", "pole", "falsify", "--term", "K",
                      "--formula", "((X -> Y) -> X) -> X", "--universes", "20")
    assert rc == 1
    assert "replay: realizab" in out


def test_pole_falsify_cc(capsys):
    rc, _ = run_cli(capsys, "pole", "falsify", "--term", "cc",
                    "--formula", "((X -> Y) -> X) -> X", "--universes", "3")
    assert rc == 0


def test_balg_check(capsys):
    rc, out = run_cli(capsys, "balg", "check", "lifted", "--case", "W")
    assert rc == 0 and "PASS" in out


def test_arith_apply(capsys):
    rc, out = run_cli(capsys, "arith", "d2", "--apply", "9")
    assert rc == 0 and "4" in out.split()


def test_corpus_replay(capsys):
    rc, out = run_cli(capsys, "--output", "tsv", "corpus", "replay", "Y")
    assert rc == 0 and "\tpass\t" in out


def test_nd(capsys):
    rc, out = run_cli(capsys, "nd")
    assert rc == 0 and "weakening" in out


def test_bad_subcommand_exits_with_usage(capsys):
    rc, _ = run_cli(capsys, "frobnicate")
    assert rc == 2
