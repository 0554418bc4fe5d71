import math

import pytest

from fibquilt.decomposition import is_fq_legal
from fibquilt.engine import (
    ALL_RULE_TAGS,
    GameState,
    IllegalMoveError,
    Move,
    MoveFormatError,
    apply_move,
    initial_state,
    is_terminal,
    legal_moves,
    monovariant,
    monovariant_delta,
    move_effect,
    parse_move,
    parse_state,
    replay,
    rule_table,
    serialize_move,
    serialize_state,
    state_from_counts,
)
from fibquilt.sequence import generate

R2A_DELTA = math.sqrt(2) + 2 - 1 - math.sqrt(5)


def state_of(counts):
    return state_from_counts(counts)


class TestInitialState:
    def test_opening_list(self):
        s = initial_state(4)
        assert s.counts == {1: 4} and s.total == 4

    def test_n_one_is_terminal(self):
        assert is_terminal(initial_state(1))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            initial_state(0)

    def test_monovariant_of_opening(self):
        assert monovariant(initial_state(9)) == pytest.approx(9.0)


class TestLegalMoves:
    def test_two_ones(self):
        assert legal_moves(state_of({1: 2})) == [Move("R3a")]

    def test_gate_fires_alone(self):
        assert legal_moves(state_of({1: 1, 5: 1})) == [Move("R2a")]

    def test_gate_suppressed_by_other_move(self):
        # {q1, q3, q5}: R5 exists, so R2a must not be offered
        assert legal_moves(state_of({1: 1, 3: 1, 5: 1})) == [Move("R5")]

    def test_player_choice_on_two_fours(self):
        assert legal_moves(state_of({4: 2})) == [
            Move("R3d", variant="A"),
            Move("R3d", variant="B"),
        ]

    def test_listed_once_regardless_of_multiplicity(self):
        assert legal_moves(state_of({1: 50})) == [Move("R3a")]

    def test_canonical_order_is_sorted(self):
        moves = legal_moves(state_of({1: 3, 2: 2, 3: 1, 6: 1, 9: 2}))
        assert moves == sorted(moves, key=lambda m: (m.rule, m.i or 0, m.variant or ""))

    def test_r4e_and_r3g_parameters(self):
        moves = legal_moves(state_of({7: 2, 10: 1}))
        assert Move("R3g", 7) in moves
        assert Move("R4e", 7) in moves


class TestApplyMove:
    def test_pair_of_ones(self):
        s = apply_move(initial_state(4), Move("R3a"))
        assert s.counts == {1: 2, 2: 1} and s.total == 4

    def test_gated_swap_values(self):
        s = apply_move(state_of({1: 1, 5: 1}), Move("R2a"))
        assert s.counts == {2: 1, 4: 1}
        assert s.total == 6  # 1 + 5 = 2 + 4

    def test_general_duplicate_split(self):
        s = apply_move(state_of({7: 2}), Move("R3g", 7))
        assert s.counts == {2: 1, 9: 1}
        seq = generate(13)
        assert 2 * seq.value(7) == seq.value(2) + seq.value(9) == 18

    def test_not_applicable_reason(self):
        with pytest.raises(IllegalMoveError) as err:
            apply_move(initial_state(4), Move("R1a"))
        assert err.value.reason == "not-applicable"

    def test_gated_reason(self):
        # q1 and q5 present but R3a also available: R2a is refused as gated
        with pytest.raises(IllegalMoveError) as err:
            apply_move(state_of({1: 3, 5: 1}), Move("R2a"))
        assert err.value.reason == "gated"

    def test_rejects_malformed_parameter(self):
        with pytest.raises(MoveFormatError):
            apply_move(state_of({1: 1, 2: 1}), Move("R1b", 1))

    def test_total_conserved_along_moves(self):
        seq = generate(40)
        state = initial_state(30)
        while not is_terminal(state):
            state = apply_move(state, legal_moves(state)[0])
            recomputed = sum(seq.value(i) * c for i, c in state.counts.items())
            assert recomputed == state.total == 30


class TestMoveTable:
    def test_every_rule_conserves_value(self):
        seq = generate(40)
        cases = []
        for i in range(2, 25):
            cases += [Move("R1b", i), Move("R2b", i)]
        for i in range(7, 25):
            cases += [Move("R3g", i), Move("R4e", i)]
        cases += [Move("R4a", 1), Move("R4a", 2), Move("R4c", 4), Move("R4c", 5)]
        cases += [Move(r) for r in ("R1a", "R2a", "R3a", "R3b", "R3c", "R3e", "R4b", "R4d", "R5")]
        cases += [Move("R3d", variant=v) for v in "AB"]
        cases += [Move("R3f", variant=v) for v in "AB"]
        for m in cases:
            consumed, produced = move_effect(m)
            assert sum(seq.value(j) for j in consumed) == sum(seq.value(j) for j in produced), m

    def test_every_rule_produces_legal_pair(self):
        for i in range(7, 25):
            for m in (Move("R3g", i), Move("R4e", i)):
                _, produced = move_effect(m)
                assert is_fq_legal(produced)
        for m in (Move("R2a"), Move("R3c"), Move("R3d", variant="A"),
                  Move("R3d", variant="B"), Move("R3e"), Move("R3f", variant="A"),
                  Move("R3f", variant="B"), Move("R4b"), Move("R4c", 4),
                  Move("R4c", 5), Move("R4d")):
            _, produced = move_effect(m)
            assert is_fq_legal(produced)

    def test_rule_table_lists_all_tags_and_correction(self):
        rows = rule_table()
        assert [r["rule"] for r in rows] == list(ALL_RULE_TAGS)
        r3f = next(r for r in rows if r["rule"] == "R3f")
        assert "q5 ^ q7" in r3f["pattern"]
        assert "conservation" in r3f["note"]


class TestMonovariant:
    def test_r2a_is_the_unique_increase(self):
        assert monovariant_delta(Move("R2a")) == pytest.approx(R2A_DELTA)
        assert R2A_DELTA > 0

    def test_example_values(self):
        before = state_of({1: 1, 5: 1})
        assert monovariant(before) == pytest.approx(1 + math.sqrt(5))
        after = apply_move(before, Move("R2a"))
        assert monovariant(after) == pytest.approx(math.sqrt(2) + 2)

    def test_r1b_two_decreases(self):
        assert monovariant_delta(Move("R1b", 2)) == pytest.approx(
            math.sqrt(5) - math.sqrt(3) - math.sqrt(2)
        )
        assert monovariant_delta(Move("R1b", 2)) < 0

    def test_all_non_gate_rules_decrease(self):
        moves = [Move(r) for r in ("R1a", "R3a", "R3b", "R3c", "R3e", "R4b", "R4d", "R5")]
        moves += [Move("R3d", variant=v) for v in "AB"]
        moves += [Move("R3f", variant=v) for v in "AB"]
        moves += [Move("R4a", 1), Move("R4a", 2), Move("R4c", 4), Move("R4c", 5)]
        for i in list(range(2, 40)):
            moves += [Move("R1b", i), Move("R2b", i)]
        for i in range(7, 40):
            moves += [Move("R3g", i), Move("R4e", i)]
        for m in moves:
            assert monovariant_delta(m) < 0, m


class TestTerminal:
    def test_examples(self):
        assert is_terminal(state_of({2: 1, 4: 1}))
        assert not is_terminal(state_of({1: 1, 5: 1}))  # R2a available
        assert is_terminal(state_of({1: 1}))

    def test_terminal_iff_fq_legal_support(self):
        # all multisets over indices 1..7, multiplicities 0..2, up to 4 terms
        import itertools

        for combo in itertools.combinations_with_replacement(range(1, 8), 3):
            counts = {}
            for i in combo:
                counts[i] = counts.get(i, 0) + 1
            s = state_of(counts)
            expect = all(c == 1 for c in counts.values()) and is_fq_legal(tuple(counts))
            assert is_terminal(s) == expect, counts


class TestSerialization:
    def test_move_round_trip(self):
        moves = [Move("R2a"), Move("R1b", 4), Move("R3d", variant="A"),
                 Move("R3f", variant="B"), Move("R3g", 11), Move("R4c", 5)]
        for m in moves:
            assert parse_move(serialize_move(m)) == m

    def test_expected_forms(self):
        assert serialize_move(Move("R1b", 4)) == "R1b:i=4"
        assert serialize_move(Move("R3d", variant="A")) == "R3d:A"
        assert serialize_move(Move("R2a")) == "R2a"

    def test_parse_rejects_bad_input(self):
        for bad in ("R9z", "R1b", "R1b:i=1", "R3d", "R3d:C", "R2a:i=3", "R3g:i=6", ""):
            with pytest.raises(MoveFormatError):
                parse_move(bad)

    def test_state_round_trip(self):
        s = state_of({1: 3, 4: 1, 6: 2})
        assert serialize_state(s) == "{1^3,4^1,6^2}"
        back = parse_state("{1^3,4^1,6^2}")
        assert back.counts == s.counts and back.total == s.total

    def test_parse_state_rejects_garbage(self):
        for bad in ("1^3", "{1^}", "{1^2,1^3}", "{}"):
            with pytest.raises(ValueError):
                parse_state(bad)


class TestExhaustiveSmallN:
    def all_reachable_states(self, n):
        seen = {initial_state(n).key()}
        stack = [initial_state(n)]
        while stack:
            state = stack.pop()
            for m in legal_moves(state):
                nxt = apply_move(state, m)
                if nxt.key() not in seen:
                    seen.add(nxt.key())
                    stack.append(nxt)
        return seen

    def test_gate_alone_in_every_reachable_state(self):
        for n in range(1, 11):
            for key in self.all_reachable_states(n):
                moves = legal_moves(GameState(counts=dict(key), total=n))
                if any(m.rule == "R2a" for m in moves):
                    assert moves == [Move("R2a")], key

    def test_r2a_at_most_once_in_every_game(self):
        from fibquilt.analysis import enumerate_games

        for n in range(1, 11):
            for game in enumerate_games(n).games:
                assert sum(1 for m in game.moves if m.rule == "R2a") <= 1

    def test_every_move_decreases_monovariant_except_gate(self):
        for n in range(1, 11):
            for key in self.all_reachable_states(n):
                state = GameState(counts=dict(key), total=n)
                before = monovariant(state)
                for m in legal_moves(state):
                    after = monovariant(apply_move(state, m))
                    if m.rule == "R2a":
                        assert after - before == pytest.approx(R2A_DELTA)
                    else:
                        assert after < before


class TestReplay:
    def test_known_odd_line_on_six(self):
        moves = [parse_move(t) for t in ("R3a", "R1a", "R5", "R4a:i=1", "R2a")]
        record = replay(6, moves)
        assert record.length == 5
        assert record.final == (4, 2)
        assert record.winner == "Player1"

    def test_gate_violation_reported(self):
        # R2a as the second move while R3a is still available
        moves = [Move("R3a"), Move("R2a")]
        with pytest.raises(IllegalMoveError) as err:
            replay(6, moves)
        assert "move 2" in str(err.value)

    def test_premature_stop_rejected(self):
        with pytest.raises(ValueError):
            replay(4, [Move("R3a")])

    def test_zero_move_game_awards_player2(self):
        record = replay(1, [])
        assert record.length == 0 and record.winner == "Player2"
