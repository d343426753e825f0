"""Lattice arithmetic: pairing, invariants, K0, parsing."""

import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from symgenus import (
    S2XS2,
    CohClass,
    ClassSyntaxError,
    canonical_k0,
    class_type,
    divisibility,
    format_class,
    gram_matrix,
    hyperbolic_complement,
    is_characteristic,
    model_from_spec,
    pair,
    parse_class,
    rational,
    ruled,
    square,
)
from conftest import random_class, random_primitive_isotropic, rng


def C(model, *coeffs):
    return CohClass(model, coeffs)


class TestPairing:
    def test_pair_examples(self):
        m = rational(2)
        assert pair(parse_class("H-E1", m), parse_class("H-E1", m)) == 0
        mr = ruled(3, 1)
        assert pair(parse_class("U", mr), parse_class("T", mr)) == 1
        m3 = rational(3)
        assert pair(parse_class("3H-2E1-2E2-2E3", m3),
                    parse_class("H-E1-E2-E3", m3)) == -3

    def test_square_examples(self):
        assert square(parse_class("2H-E1-E2-E3-E4-E5", rational(5))) == -1
        m = ruled(1, 0)
        for a in range(-3, 4):
            for b in range(-3, 4):
                assert square(C(m, a, b)) == 2 * a * b
        for k in range(1, 5):
            assert square(parse_class(f"{k}H-{k}E1", rational(1))) == 0

    def test_rank_mismatch(self):
        with pytest.raises(ValueError, match="rank mismatch"):
            C(rational(2), 1, 2)
        with pytest.raises(ValueError, match="model mismatch"):
            pair(parse_class("H", rational(1)), parse_class("H", rational(2)))

    def test_bilinearity_symmetry_exact(self):
        r = rng(11)
        for model in (rational(4), ruled(2, 3), S2XS2):
            for _ in range(1000):
                x = random_class(model, 10**6, r)
                y = random_class(model, 10**6, r)
                z = random_class(model, 10**6, r)
                assert pair(x, y) == pair(y, x)
                assert pair(x + y, z) == pair(x, z) + pair(y, z)
                k = r.randint(-100, 100)
                assert pair(k * x, y) == k * pair(x, y)

    def test_gram_unimodular(self):
        for model in (rational(0), rational(5), ruled(2, 4), S2XS2):
            g = [[Fraction(v) for v in row] for row in gram_matrix(model)]
            n = len(g)
            det = Fraction(1)
            for col in range(n):
                piv = next((i for i in range(col, n) if g[i][col]), None)
                assert piv is not None
                if piv != col:
                    g[col], g[piv] = g[piv], g[col]
                    det = -det
                det *= g[col][col]
                for i in range(col + 1, n):
                    f = g[i][col] / g[col][col]
                    for j in range(col, n):
                        g[i][j] -= f * g[col][j]
            assert abs(det) == 1


class TestDivisibility:
    def test_examples(self):
        assert divisibility(parse_class("2H", rational(1))) == 2
        assert divisibility(parse_class("3H-2E1-E2", rational(2))) == 1
        for k in range(1, 6):
            assert divisibility(parse_class(f"{k}H-{k}E1", rational(1))) == k

    def test_zero_rejected(self):
        with pytest.raises(ValueError, match="divisibility undefined for zero class"):
            divisibility(C(rational(1), 0, 0))

    def test_primitive_quotient(self):
        r = rng(5)
        for _ in range(200):
            e = random_class(rational(4), 30, r)
            p = divisibility(e)
            assert divisibility(e // p) == 1


class TestCharacteristic:
    def test_rational_examples(self):
        assert is_characteristic(parse_class("H-E1-E2", rational(2)))
        assert not is_characteristic(parse_class("E1", rational(1)))
        assert is_characteristic(canonical_k0(rational(7)))

    def test_ruled_examples(self):
        # The definitional mod-2 check decides: on ruled(g, 1) the class E1
        # is characteristic (K0 = E1 mod 2) while T-E1 pairs oddly with U.
        m = ruled(2, 1)
        assert is_characteristic(parse_class("E1", m))
        assert not is_characteristic(parse_class("T-E1", m))
        assert is_characteristic(canonical_k0(m))

    def test_against_definitional_check(self):
        r = rng(7)
        for model in (rational(3), ruled(1, 2), S2XS2):
            basis = [CohClass(model, tuple(1 if i == k else 0 for i in range(model.rank)))
                     for k in range(model.rank)]
            for _ in range(1000):
                x = random_class(model, 50, r)
                definitional = all(
                    (pair(x, u) - pair(u, u)) % 2 == 0 for u in basis)
                assert is_characteristic(x) == definitional

    def test_class_type(self):
        assert class_type(parse_class("H-E1-E2", rational(2))) == "characteristic"
        assert class_type(parse_class("E1", rational(1))) == "ordinary"
        with pytest.warns(UserWarning):
            assert class_type(C(rational(1), 0, 0)) == "ordinary"


class TestCanonicalClass:
    def test_examples(self):
        assert format_class(canonical_k0(rational(2))) == "-3H+E1+E2"
        assert format_class(canonical_k0(ruled(1, 1))) == "-2U+E1"
        assert format_class(canonical_k0(ruled(2, 0))) == "-2U+2T"

    def test_squares(self):
        for n in range(0, 9):
            assert square(canonical_k0(rational(n))) == 9 - n
        for g in range(1, 4):
            for n in range(0, 5):
                assert square(canonical_k0(ruled(g, n))) == 8 - 8 * g - n

    def test_unsupported(self):
        with pytest.raises(ValueError, match="unsupported"):
            canonical_k0(S2XS2)


class TestHyperbolicComplement:
    def test_h_minus_e1(self):
        m = rational(2)
        y = parse_class("H-E1", m)
        x = hyperbolic_complement(y)
        assert pair(y, x) == 1 and square(x) == 1

    def test_rejects_non_isotropic(self):
        with pytest.raises(ValueError, match="square 0"):
            hyperbolic_complement(parse_class("2H-E1-E2", rational(2)))
        with pytest.raises(ValueError, match="primitive"):
            hyperbolic_complement(parse_class("2H-2E1", rational(1)))

    def test_worked_example(self):
        y = parse_class("3H-2E1-2E2-E3", rational(3))
        x = hyperbolic_complement(y)
        assert pair(y, x) == 1 and square(x) == 1

    def test_random_isotropic(self):
        r = rng(23)
        for n in (1, 2, 3, 6, 10):
            model = rational(n)
            for _ in range(40):
                y = random_primitive_isotropic(model, r)
                x = hyperbolic_complement(y)
                assert pair(y, x) == 1 and square(x) == 1


class TestParsing:
    def test_examples(self):
        assert parse_class("3H-2E1-E2", rational(2)).coeffs == (3, 2, 1)
        assert parse_class("2U+3T-E1", ruled(4, 1)).coeffs == (2, 3, 1)
        assert parse_class("H+E1", rational(1)).coeffs == (1, -1)
        assert parse_class(" 3H - 2E1\t- E2 ", rational(2)).coeffs == (3, 2, 1)
        assert parse_class("x+3y", S2XS2).coeffs == (1, 3)
        assert parse_class("0", rational(2)).is_zero

    def test_errors(self):
        with pytest.raises(ClassSyntaxError, match="not valid"):
            parse_class("U+T", rational(2))
        with pytest.raises(ClassSyntaxError, match="position"):
            parse_class("3H--E1", rational(1))
        with pytest.raises(ClassSyntaxError):
            parse_class("", rational(1))
        with pytest.raises(ClassSyntaxError):
            parse_class("H E1", rational(1))

    def test_format_examples(self):
        assert format_class(C(rational(2), 3, 2, 1)) == "3H-2E1-E2"
        assert format_class(C(rational(1), 1, -1)) == "H+E1"
        assert format_class(C(rational(1), 0, 1)) == "-E1"
        assert format_class(C(ruled(1, 1), -2, 0, -1)) == "-2U+E1"
        assert format_class(C(S2XS2, 0, 0)) == "0"

    def test_round_trip_random(self):
        r = rng(3)
        for model in (rational(3), ruled(2, 2), S2XS2, rational(0)):
            for _ in range(300):
                e = random_class(model, 99, r)
                assert parse_class(format_class(e), model) == e

    @settings(max_examples=200, derandomize=True)
    @given(st.lists(st.integers(-10**9, 10**9), min_size=4, max_size=4))
    def test_round_trip_large(self, coeffs):
        e = CohClass(rational(3), tuple(coeffs))
        assert parse_class(format_class(e), rational(3)) == e


class TestModelSpec:
    def test_round_trip(self):
        for text in ("rational:0", "rational:7", "ruled:1:3", "ruled:5:0", "s2xs2"):
            assert model_from_spec(text).spec() == text

    def test_bad_specs(self):
        for text in ("rational", "ruled:2", "torus", "rational:x", "ruled:0:1"):
            with pytest.raises(ValueError):
                model_from_spec(text)

    def test_b_minus(self):
        assert rational(2).b_minus == 2
        assert ruled(1, 1).b_minus == 2
        assert ruled(3, 2).b_minus == 3
        assert S2XS2.b_minus == 1
