import random

import pytest

from ordarena import findings, ordinal
from ordarena.efgame import (
    BruteForceSolver,
    FiniteOrder,
    GameError,
    GamePosition,
    IdentityII,
    Move,
    OrdinalOrder,
    RandomI,
    RandomII,
    Side,
    Verdict,
    check_win,
    decide_equiv_finite_clock,
    efd_step,
    exhaustive_ii_check,
    play_match,
    transcript_json,
)
from ordarena.ordinal import OMEGA, ZERO, fin, parse


def ord_order(text):
    return OrdinalOrder(parse(text))


def test_efd_step_identity_round():
    a = FiniteOrder(7)
    b = FiniteOrder(7)
    pos = GamePosition(fin(2))
    pending = efd_step(pos, Move(fin(1), Side.A, 5), a, b)
    nxt = pending.complete(5, a, b)
    assert nxt.pairs() == ((5, 5),)
    assert nxt.clock == fin(1)


def test_efd_step_clock_must_decrease():
    a = FiniteOrder(3)
    pos = GamePosition(fin(2))
    with pytest.raises(GameError) as err:
        efd_step(pos, Move(fin(2), Side.A, 0), a, a)
    assert err.value.code == "CLOCK_NOT_DECREASING"


def test_clock_zero_game_over_immediately():
    a = FiniteOrder(3)
    pos = GamePosition(ZERO)
    assert pos.is_over
    assert check_win(pos, a, a) is Verdict.II_WINS
    with pytest.raises(GameError) as err:
        efd_step(pos, Move(ZERO, Side.A, 0), a, a)
    assert err.value.code == "GAME_OVER"


def test_check_win():
    a = FiniteOrder(3)
    over = GamePosition(fin(2)).with_round
    from ordarena.efgame.game import Round
    pos = GamePosition(fin(2), (Round(fin(1), Side.A, 0, 0), Round(ZERO, Side.A, 2, 2)))
    assert check_win(pos, a, a) is Verdict.II_WINS
    rev = GamePosition(fin(2), (Round(fin(1), Side.A, 0, 2), Round(ZERO, Side.A, 2, 0)))
    assert check_win(rev, a, a) is Verdict.I_WINS
    not_over = GamePosition(fin(2), (Round(fin(1), Side.A, 0, 0),))
    with pytest.raises(GameError) as err:
        check_win(not_over, a, a)
    assert err.value.code == "GAME_NOT_OVER"


def test_check_win_single_point_across_kinds():
    a = ord_order("w+1")
    b = ord_order("w")
    from ordarena.efgame.game import Round
    pos = GamePosition(fin(1), (Round(ZERO, Side.A, OMEGA, fin(100)),))
    assert check_win(pos, a, b) is Verdict.II_WINS


def test_brute_force_examples():
    assert BruteForceSolver(FiniteOrder(2), FiniteOrder(3)).solve(1).winner == "II"
    assert BruteForceSolver(FiniteOrder(2), FiniteOrder(3)).solve(2).winner == "I"
    assert BruteForceSolver(FiniteOrder(4), FiniteOrder(4)).solve(3).winner == "II"


def test_brute_force_certificate_replays():
    solver = BruteForceSolver(FiniteOrder(2), FiniteOrder(3))
    res = solver.solve(2)
    assert res.winner == "I"
    # the I certificate beats seeded random Player II every time
    a, b = FiniteOrder(2), FiniteOrder(3)
    for seed in range(50):
        match = play_match(a, b, fin(2), res.strategy_i, RandomII(seed))
        assert match.winner == "I"


def test_brute_force_ii_certificate_exhaustive():
    a, b = FiniteOrder(5), FiniteOrder(6)
    solver = BruteForceSolver(a, b)
    res = solver.solve(1)
    assert res.winner == "II"
    assert exhaustive_ii_check(a, b, 1, res.strategy_ii)


def test_decide_examples():
    assert not decide_equiv_finite_clock(parse("w"), parse("w+1"), 2).equivalent
    assert decide_equiv_finite_clock(parse("w"), parse("w"), 5).equivalent
    assert decide_equiv_finite_clock(fin(5), fin(6), 1).equivalent
    assert not decide_equiv_finite_clock(fin(5), fin(6), 4).equivalent
    assert decide_equiv_finite_clock(parse("w"), parse("w*2"), 2).equivalent
    assert not decide_equiv_finite_clock(parse("w"), parse("w*2"), 4).equivalent


def test_successor_vs_limit_inequivalent_at_two():
    for a_txt, b_txt in [("w", "w+1"), ("w*2", "w*2+1")]:
        res = decide_equiv_finite_clock(parse(a_txt), parse(b_txt), 2)
        assert not res.equivalent


def test_oracle_agreement_small():
    # subset of the acceptance sweep, for quick feedback
    for na in range(5):
        for nb in range(5):
            for clock in range(4):
                brute = BruteForceSolver(FiniteOrder(na), FiniteOrder(nb)).solve(clock)
                decided = decide_equiv_finite_clock(fin(na), fin(nb), clock)
                assert decided.equivalent == (brute.winner == "II"), (na, nb, clock)


def test_decide_monotone_in_clock():
    pairs = [("w", "w+1", 5), ("w", "w*2", 4), ("w*2+1", "w*3+1", 4),
             ("w^(2)", "w^(2)+w", 4), ("5", "6", 5), ("w+3", "w+4", 5),
             ("e0", "w^(w)", 3)]
    for a_txt, b_txt, cmax in pairs:
        a, b = parse(a_txt), parse(b_txt)
        results = [decide_equiv_finite_clock(a, b, c).equivalent for c in range(cmax + 1)]
        # equivalent at clock n implies equivalent at every smaller clock
        for lo, hi in zip(results, results[1:]):
            assert lo or not hi, (a_txt, b_txt, results)


def test_decide_certificates_beat_random_players():
    a, b = parse("w"), parse("w+1")
    res = decide_equiv_finite_clock(a, b, 2)
    assert not res.equivalent
    A, B = OrdinalOrder(a), OrdinalOrder(b)
    for seed in range(100):
        match = play_match(A, B, fin(2), res.strategy, RandomII(seed))
        assert match.winner == "I", transcript_json(match, A, B)

    eq = decide_equiv_finite_clock(parse("w*2"), parse("w*3"), 2)
    assert eq.equivalent
    A2, B2 = OrdinalOrder(parse("w*2")), OrdinalOrder(parse("w*3"))
    for seed in range(100):
        match = play_match(A2, B2, fin(2), RandomI(seed), eq.strategy)
        assert match.winner == "II", transcript_json(match, A2, B2)


def test_play_match_identity_on_omega_plus_one():
    A = ord_order("w+1")
    match = play_match(A, A, parse("w"), RandomI(7), IdentityII())
    assert match.winner == "II"
    data = transcript_json(match, A, A)
    assert data["initial_clock"] == "w"
    assert data["verdict"] == "II_WINS"
    for r in data["rounds"]:
        assert r["move"] == r["answer"]


def test_illegal_strategy_move_is_reported_with_round():
    class BadI(RandomI):
        def move(self, position, a, b):
            return Move(position.clock, Side.A, ordinal.ZERO)  # clock not decreasing

    A = ord_order("w")
    match = play_match(A, A, fin(3), BadI(0), IdentityII())
    assert match.forfeit is not None
    assert match.forfeit.by == "I"
    assert match.forfeit.round_index == 0
    assert "CLOCK_NOT_DECREASING" in match.forfeit.reason


def test_no_findings_accumulated():
    assert findings.all_findings() == []


def test_win_check_symmetric():
    rng = random.Random(31)
    a, b = ord_order("w*2"), ord_order("w+5")
    for _ in range(100):
        pairs = [(a.sample(rng), b.sample(rng)) for _ in range(rng.randint(0, 3))]
        flipped = [(y, x) for x, y in pairs]
        assert a.partial_iso_holds(b, pairs) == b.partial_iso_holds(a, flipped)
    fa, fb = FiniteOrder(4), FiniteOrder(6)
    for _ in range(100):
        pairs = [(fa.sample(rng), fb.sample(rng)) for _ in range(rng.randint(0, 3))]
        flipped = [(y, x) for x, y in pairs]
        assert fa.partial_iso_holds(fb, pairs) == fb.partial_iso_holds(fa, flipped)


def test_ii_certificate_beats_greedy_opponents():
    from ordarena.efgame import GreedyI

    res = decide_equiv_finite_clock(parse("w*2"), parse("w*3"), 2)
    assert res.equivalent
    A, B = OrdinalOrder(parse("w*2")), OrdinalOrder(parse("w*3"))
    for seed in range(200):
        match = play_match(A, B, fin(2), GreedyI(seed), res.strategy)
        assert match.winner == "II", transcript_json(match, A, B)


def test_certificates_on_richer_ordinal_instances():
    # regression net for the window alignment between decide and its
    # certificates: each gap is justified at clock m+1, answered at m
    from ordarena.efgame import EquivContext, GreedyI

    ctx = EquivContext()
    instances = [("w^(2)", "w^(2)+w", 3), ("w^(2)", "w^(2)*2", 2),
                 ("e0", "w^(w)", 2), ("w^(w)", "w^(w)+w^(2)", 2),
                 ("w^(2)+w", "w^(2)+w*2", 3)]
    for a_txt, b_txt, clock in instances:
        a, b = parse(a_txt), parse(b_txt)
        res = decide_equiv_finite_clock(a, b, clock, ctx)
        assert res.equivalent, (a_txt, b_txt)
        A, B = OrdinalOrder(a), OrdinalOrder(b)
        for seed in range(60):
            for opponent in (RandomI(seed), GreedyI(seed)):
                match = play_match(A, B, fin(clock), opponent, res.strategy)
                assert match.winner == "II", (a_txt, b_txt, seed)
    assert findings.all_findings() == []
