from realizab.arith import numeral
from realizab.machine import Process, StackCodec, reaches, reaches_any, run, step
from realizab.terms import App, Atom, Const, Num, Stack, compile_term, parse_lterm

a, b, c = Const("a"), Const("b"), Const("c")


def P(head, *items, base="π0"):
    return Process(head, Stack(tuple(items), base))


def test_constant_head_is_done():
    final, tr = run(P(a, b))
    assert tr.status == "done" and final == P(a, b)
    assert tr.count == 0


def test_missing_arguments_are_stuck():
    _, tr = run(P(Atom("K"), a))
    assert tr.status == "stuck"


def test_rd_without_items_is_stuck():
    _, tr = run(P(Atom("rd"), a))
    assert tr.status == "stuck"


def test_budget_exhaustion():
    loop = compile_term(parse_lterm(r"(\x (x) x) \x (x) x"))
    _, tr = run(P(loop), budget=50)
    assert tr.status == "budget-exhausted" and tr.count == 50


def test_trace_lines_are_numbered():
    _, tr = run(P(App(Atom("I"), a), b))
    assert list(tr.lines()) == ["0 init | (I) a | b.π0", "1 push | I | a.b.π0", "2 I | a | b.π0"]


def test_cc_then_continuation_restores_stack():
    start = P(Atom("cc"), Atom("I"), a, b)
    final, tr = run(start)
    # I ⋆ k_π·a·b ≻ k_π ⋆ a·b ≻ a ⋆ π with π = a·b
    assert final == P(a, a, b)
    assert [r for r, _ in tr.steps] == ["init", "cc", "I", "k"]


def test_codec_numbers_stacks_injectively():
    codec = StackCodec()
    s1, s2 = Stack((a,)), Stack((b,))
    assert codec.encode(s1) == 0 and codec.encode(s2) == 1 and codec.encode(s1) == 0
    assert codec.decode(1) == s2 and codec.decode(5) is None


def test_qt_shares_codec_across_a_run():
    codec = StackCodec()
    _, p = step(P(Atom("qt"), a, b), codec)
    assert p == P(a, Num(0), b)
    assert codec.decode(0) == Stack((b,))


def test_numeral_literal_behaves_like_its_tower():
    f, x = Const("f"), Const("x")
    # 2 ⋆ f·x reaches f ⋆ (1 f) x
    assert reaches_any(P(Num(2), f, x), [P(f, App(App(Num(1), f), x))])[0]
    # the compiled tower goes the same way
    hit, _ = reaches_any(P(numeral(2), f, x), [P(f, App(App(numeral(1), f), x))])
    assert hit


def test_reaches_is_deterministic_and_bounded():
    start = P(Atom("W"), Atom("K"), a, b)
    assert reaches(start, P(a, b))
    assert not reaches(start, P(b))
