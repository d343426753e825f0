"""Canonical orbit representatives, orbit equivalence, censuses."""

import pytest

from symgenus import (
    S2XS2,
    CohClass,
    apply_move,
    canonical_rep,
    format_class,
    generator_inventory,
    invariant_triple,
    is_spherical,
    orbit_census,
    parse_class,
    rational,
    ruled,
    same_orbit,
)
from conftest import random_class_square_at_least, random_word, rng


class TestCanonicalRep:
    def test_examples(self):
        m = rational(2)
        assert format_class(canonical_rep(
            parse_class("3H-2E1-E2", m)).rep) == "3H-2E1-E2"
        # any spherical class of square 7 lands on 4H-3E1
        e = parse_class("4H-3E1", rational(4))
        assert format_class(canonical_rep(e).rep) == "4H-3E1"
        assert format_class(canonical_rep(
            parse_class("2H-2E1", rational(1))).rep) == "2H-2E1"

    def test_square_minus_one(self):
        m = rational(2)
        assert format_class(canonical_rep(parse_class("E2", m)).rep) == "E1"
        assert format_class(canonical_rep(
            parse_class("H-E1-E2", m)).rep) == "H-E1-E2"
        mr = ruled(1, 1)
        assert format_class(canonical_rep(parse_class("4T-E1", mr)).rep) == "E1"
        assert format_class(canonical_rep(parse_class("3T+E1", mr)).rep) == "T-E1"

    def test_minimal_models(self):
        assert format_class(canonical_rep(parse_class("-2H", rational(0))).rep) == "2H"
        assert format_class(canonical_rep(CohClass(S2XS2, (-3, 0))).rep) == "3x"
        assert format_class(canonical_rep(CohClass(S2XS2, (4, 1))).rep) == "x+4y"
        assert format_class(canonical_rep(CohClass(ruled(3, 0), (0, -2))).rep) == "2T"

    def test_sign_normalization(self):
        r = rng(40)
        for model in (rational(3), ruled(1, 1)):
            for _ in range(100):
                e = random_class_square_at_least(model, 6, r, -1)
                if not is_spherical(e):
                    continue
                assert canonical_rep(e).rep == canonical_rep(-e).rep

    def test_rejects_non_spherical(self):
        with pytest.raises(ValueError, match="not spherically representable"):
            canonical_rep(parse_class("3H", rational(2)))

    def test_needs_blowups(self):
        # a square 2 representative needs E1 and E2
        with pytest.raises(ValueError):
            canonical_rep(parse_class("9H", rational(0)))

    def test_rep_is_in_same_orbit(self):
        r = rng(41)
        for model in (rational(3), rational(2), ruled(1, 1), S2XS2):
            for _ in range(200):
                e = random_class_square_at_least(model, 6, r, -1)
                if not is_spherical(e):
                    continue
                rep = canonical_rep(e)
                assert is_spherical(rep.rep)
                assert same_orbit(e, rep.rep)
                assert invariant_triple(rep.rep) == invariant_triple(e)

    def test_constant_on_generator_orbits(self):
        r = rng(42)
        for model in (rational(3), ruled(1, 2)):
            inventory = generator_inventory(model, r_max=3)
            for _ in range(150):
                e = random_class_square_at_least(model, 6, r, -1)
                if not is_spherical(e):
                    continue
                mv = r.choice(inventory)
                assert canonical_rep(apply_move(mv, e)).rep == canonical_rep(e).rep


class TestSameOrbit:
    def test_divisibility_separates(self):
        m = rational(2)
        assert not same_orbit(parse_class("2H", m), parse_class("3H-2E1-E2", m))

    def test_type_separates(self):
        m = rational(2)
        assert not same_orbit(parse_class("E1", m), parse_class("H-E1-E2", m))

    def test_swap_orbit(self):
        m = rational(3)
        assert same_orbit(parse_class("E1", m), parse_class("E2", m))

    def test_word_images_stay_equivalent(self):
        r = rng(43)
        for model in (rational(3), ruled(1, 1)):
            for _ in range(150):
                e = random_class_square_at_least(model, 6, r, -1)
                if not is_spherical(e):
                    continue
                w = random_word(model, 12, r)
                from symgenus import apply_word

                assert same_orbit(e, apply_word(w, e))

    def test_guards(self):
        m = rational(2)
        with pytest.raises(ValueError, match="not spherically"):
            same_orbit(parse_class("3H", m), parse_class("E1", m))
        with pytest.raises(ValueError, match="model mismatch"):
            same_orbit(parse_class("E1", m), parse_class("E1", rational(3)))


class TestCensus:
    def test_square_minus_one(self):
        assert orbit_census(rational(1), -1).count == 1
        assert orbit_census(rational(2), -1).count == 2
        assert orbit_census(rational(5), -1).count == 1
        assert orbit_census(ruled(1, 1), -1).count == 2
        assert orbit_census(ruled(1, 2), -1).count == 1
        assert orbit_census(ruled(1, 0), -1).count == 0

    def test_rational_lists(self):
        assert orbit_census(rational(5), 4).count == 2
        assert orbit_census(rational(1), 4).count == 1
        assert orbit_census(rational(5), 3).count == 1
        assert orbit_census(rational(5), 2).count == 1
        assert orbit_census(rational(1), 2).count == 0
        census = orbit_census(rational(5), 0)
        assert census.count is None and "divisibility" in census.family

    def test_minimal_models(self):
        assert orbit_census(rational(0), 1).count == 1
        assert orbit_census(rational(0), 4).count == 1
        assert orbit_census(rational(0), 3).count == 0
        assert orbit_census(S2XS2, 6).count == 1
        assert orbit_census(S2XS2, 5).count == 0
        assert orbit_census(S2XS2, 0).count is None
        assert orbit_census(ruled(2, 0), 0).count is None
        assert orbit_census(ruled(2, 0), 2).count == 0

    def test_ruled_positive_square(self):
        assert orbit_census(ruled(1, 3), 2).count == 0
        assert orbit_census(ruled(1, 3), 0).count is None

    def test_representatives_are_spherical(self):
        for model in (rational(2), rational(5), ruled(1, 1), S2XS2, rational(0)):
            for s in range(-1, 9):
                census = orbit_census(model, s)
                for rep in census.representatives:
                    assert is_spherical(rep)
                    assert invariant_triple(rep)[0] == s

    def test_guard(self):
        with pytest.raises(ValueError, match="squares >= -1"):
            orbit_census(rational(2), -2)
