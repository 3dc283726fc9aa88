import os
from fractions import Fraction
from pathlib import Path

import pytest

import dualred

DATA = Path(os.environ.get("DUALRED_TEST_DATA", Path(__file__).resolve().parents[2] / "tests" / "data"))


def load(name):
    return dualred.parse_game((DATA / name).read_text())


def test_parse_and_round_trip():
    mp = load("matching_pennies.game")
    assert mp.action_counts == [2, 2]
    assert mp.payoff([0, 0], 0) == Fraction(1)
    assert dualred.parse_game(dualred.write_game(mp)) == mp
    with pytest.raises(dualred.ParseError):
        dualred.parse_game("game g\nplayers 2\nactions 2 2\npayoffs\n1 1\n")


def test_ce_report():
    report = dualred.analyze_ce(load("matching_pennies.game"))
    assert report["dimension"] == 0
    assert report["tight"]
    assert report["witness_ce"] == [Fraction(1, 4)] * 4


def test_iterate_matching_pennies():
    trace = dualred.iterate_to_elementary(load("matching_pennies.game"))
    assert len(trace.stages) == 1
    assert trace.terminal.num_profiles == 1
    assert trace.terminal.payoff([0, 0], 0) == 0
    assert trace.lift_to_base([Fraction(1)]) == [Fraction(1, 4)] * 4


def test_reduce_refuses_non_dual_vector():
    rescaled = load("matching_pennies_rescaled.game")
    half = [Fraction(1, 2), Fraction(1, 2)]
    alpha = [[half, half], [half, half]]
    assert not dualred.is_dual_vector(rescaled, alpha)
    with pytest.raises(dualred.AnalysisError):
        dualred.reduce(rescaled, alpha)


def test_three_column_redundancy():
    game = load("three_column.game")
    alpha, removed = dualred.redundancy_dual_vector(game)
    assert removed == [[], [0]]
    reduced = dualred.reduce(game, alpha)
    assert reduced.classification[1] == ["eliminated", "kept", "kept"]
    assert reduced.game.payoff([0, 0], 0) == 1


def test_nash_and_cli():
    coord = load("coordination.game")
    equilibria, degenerate = dualred.bimatrix_nash(coord)
    assert len(equilibria) == 3 and not degenerate
    for eq in equilibria:
        assert dualred.is_nash(coord, eq)
    code, out, err = dualred.run_cli(["--json", "iterate", str(DATA / "matching_pennies.game")])
    assert code == 0, err
    assert '"terminal_elementary": true' in out


def test_generator_is_deterministic():
    assert dualred.gen_game(7, [2, 2], -5, 5) == dualred.gen_game(7, [2, 2], -5, 5)
    g = dualred.gen_game(7, [2, 2], -5, 5)
    assert [g.payoff(g.profile_at(k), 0) for k in range(4)] == [-5, 4, 0, -4]
