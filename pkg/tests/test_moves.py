"""Generator moves, reflection arithmetic and word certificates."""

import pytest
from hypothesis import given, settings, strategies as st

from symgenus import (
    S2XS2,
    AutoWord,
    CohClass,
    apply_move,
    apply_word,
    class_type,
    compose,
    divisibility,
    flip_e,
    format_class,
    generator_inventory,
    identity_word,
    invert,
    is_realizable_reflection,
    make_word,
    neg_id,
    pair,
    parse_class,
    rational,
    reflect,
    reflection,
    ruled,
    square,
    swap_e,
    verify_isometry,
    word_from_json,
    word_to_json,
)
from conftest import random_class, random_word, rng


class TestReflect:
    def test_fixed_axis(self):
        m = rational(1)
        e1 = parse_class("E1", m)
        assert reflect(e1, e1) == -e1

    def test_cremona_reflection(self):
        m = rational(3)
        gamma = parse_class("H-E1-E2-E3", m)
        beta = parse_class("3H-2E1-2E2-2E3", m)
        assert format_class(reflect(gamma, beta)) == "E1+E2+E3"

    def test_ruled_reflection(self):
        m = ruled(1, 1)
        assert format_class(reflect(parse_class("T-E1", m),
                                    parse_class("3U+2T-5E1", m))) == "3U-2T-E1"

    def test_square_guard(self):
        m = rational(1)
        with pytest.raises(ValueError, match="square -1 or -2"):
            reflect(parse_class("H", m), parse_class("E1", m))

    def test_involution(self):
        r = rng(2)
        m = rational(5)
        gammas = [parse_class(t, m) for t in
                  ("E2", "H-E1-E3", "H-E1-E2-E4", "2H-E1-E2-E3-E4-E5")]
        for gamma in gammas:
            assert square(gamma) in (-1, -2)
            for _ in range(250):
                beta = random_class(m, 50, r)
                assert reflect(gamma, reflect(gamma, beta)) == beta

    @settings(max_examples=300, derandomize=True)
    @given(st.tuples(st.integers(-50, 50), st.integers(-50, 50),
                     st.integers(-50, 50), st.integers(-50, 50)))
    def test_involution_hypothesis(self, coeffs):
        m = rational(3)
        gamma = parse_class("H-E1-E2-E3", m)
        beta = CohClass(m, coeffs)
        assert reflect(gamma, reflect(gamma, beta)) == beta

    def test_conjugation_identity(self):
        # R(psi(F0)) = psi . R(F0) . psi^{-1} on arbitrary classes
        r = rng(9)
        m = rational(4)
        f0s = [parse_class("E1", m), parse_class("H-E2-E3", m)]
        for _ in range(100):
            psi = random_word(m, 10, r)
            f0 = r.choice(f0s)
            f = apply_word(psi, f0)
            beta = random_class(m, 20, r)
            assert reflect(f, apply_word(psi, beta)) == \
                apply_word(psi, reflect(f0, beta))


class TestWhitelist:
    def test_accepted(self):
        m = rational(5)
        for text in ("E3", "H-E1-E2", "H-E2-E5", "H-E1-E2-E3", "H-E2-E4-E5"):
            reflection(m, text)
        mr = ruled(1, 3)
        for text in ("E2", "T-E1", "4T+E2", "7T-E3", "T+E1-E2", "T+E3-E1"):
            reflection(mr, text)
        reflection(S2XS2, "x-y")

    def test_rejected(self):
        m = rational(5)
        # square -1 but not a certified sphere class
        assert square(parse_class("2H-E1-E2-E3-E4-E5", m)) == -1
        with pytest.raises(ValueError, match="inventory"):
            reflection(m, "2H-E1-E2-E3-E4-E5")
        with pytest.raises(ValueError, match="square -1 or -2"):
            reflection(m, "H")
        with pytest.raises(ValueError, match="inventory"):
            reflection(ruled(1, 2), "U-E1")
        assert not is_realizable_reflection(m, parse_class("2H-E1-E2-E3-E4-E5", m))
        assert not is_realizable_reflection(m, parse_class("E1+E2", m))

    def test_raw_arithmetic_still_available(self):
        m = rational(5)
        gamma = parse_class("2H-E1-E2-E3-E4-E5", m)
        beta = parse_class("H", m)
        assert reflect(gamma, beta) == beta + 2 * pair(gamma, beta) * gamma

    def test_word_rejects_uncertified(self):
        m = rational(5)
        gamma = parse_class("2H-E1-E2-E3-E4-E5", m)
        from symgenus.moves import REFLECT, Move

        with pytest.raises(ValueError, match="cannot enter a word"):
            make_word(m, [Move(REFLECT, gamma=gamma)])


class TestApply:
    def test_swap(self):
        m = rational(2)
        assert format_class(apply_move(swap_e(1, 2),
                                       parse_class("3H-2E1-E2", m))) == "3H-E1-2E2"

    def test_negid(self):
        m = ruled(1, 2)
        e = parse_class("2U+3T-E1-4E2", m)
        assert apply_move(neg_id(), e) == -e

    def test_word_example(self):
        m = rational(3)
        w = make_word(m, [reflection(m, "H-E1-E2-E3"),
                          flip_e(1), flip_e(2), flip_e(3)])
        out = apply_word(w, parse_class("3H-2E1-2E2-2E3", m))
        assert out.coeffs == (0, 1, 1, 1)

    def test_index_out_of_range(self):
        m = rational(2)
        with pytest.raises(ValueError, match="out of range"):
            apply_move(flip_e(3), parse_class("H", m))
        with pytest.raises(ValueError, match="out of range"):
            make_word(m, [swap_e(2, 3)])

    def test_word_equals_fold(self):
        r = rng(4)
        for model in (rational(3), ruled(2, 2)):
            for _ in range(100):
                w = random_word(model, 12, r)
                x = random_class(model, 30, r)
                folded = x
                for mv in w.moves:
                    folded = apply_move(mv, folded)
                assert apply_word(w, x) == folded


class TestComposeInvert:
    def test_inverse_is_identity(self):
        r = rng(6)
        for model in (rational(4), ruled(1, 2)):
            ident = identity_word(model).matrix
            for _ in range(100):
                w = random_word(model, 12, r)
                assert compose(w, invert(w)).matrix == ident

    def test_swap_is_involution(self):
        m = rational(2)
        w = make_word(m, [swap_e(1, 2)])
        assert invert(w).moves == w.moves

    def test_compose_matrix(self):
        m = rational(3)
        w1 = make_word(m, [swap_e(1, 2)])
        w2 = make_word(m, [flip_e(3)])
        both = compose(w1, w2)
        assert both.moves == w1.moves + w2.moves
        x = parse_class("3H-2E1-E2-5E3", m)
        assert apply_word(both, x) == apply_word(w2, apply_word(w1, x))

    def test_model_mismatch(self):
        with pytest.raises(ValueError, match="model mismatch"):
            compose(identity_word(rational(1)), identity_word(rational(2)))


class TestIsometry:
    def test_single_moves(self):
        for model in (rational(4), ruled(2, 3), S2XS2):
            for mv in generator_inventory(model, r_max=3):
                assert verify_isometry(make_word(model, [mv]))

    def test_corrupted_matrix(self):
        m = rational(2)
        w = make_word(m, [swap_e(1, 2)])
        bad = tuple(tuple(v + (1 if i == j == 0 else 0) for j, v in enumerate(row))
                    for i, row in enumerate(w.matrix))
        assert not verify_isometry(AutoWord(m, w.moves, bad))

    def test_random_words(self):
        r = rng(8)
        for model in (rational(5), ruled(1, 3)):
            for _ in range(100):
                assert verify_isometry(random_word(model, 20, r))


class TestPreservation:
    def test_moves_preserve_invariants(self):
        r = rng(10)
        for model in (rational(4), ruled(2, 2), S2XS2):
            inventory = generator_inventory(model, r_max=3)
            for _ in range(300):
                x = random_class(model, 25, r)
                y = random_class(model, 25, r)
                mv = r.choice(inventory)
                assert pair(apply_move(mv, x), apply_move(mv, y)) == pair(x, y)
                assert square(apply_move(mv, x)) == square(x)
                assert divisibility(apply_move(mv, x)) == divisibility(x)
                assert class_type(apply_move(mv, x)) == class_type(x)


class TestJson:
    def test_round_trip(self):
        m = rational(3)
        w = make_word(m, [swap_e(1, 2), flip_e(3), neg_id(),
                          reflection(m, "H-E1-E2-E3")])
        data = word_to_json(w)
        assert data == [{"swap": [1, 2]}, {"flip": 3}, {"negid": True},
                        {"reflect": "H-E1-E2-E3"}]
        back = word_from_json(m, data)
        assert back.moves == w.moves and back.matrix == w.matrix
