import random

import pytest

from braidbands.invariants import alexander_from_braid
from braidbands.stars import (
    Ray,
    Star,
    StarError,
    check_star,
    classify_ray,
    delta_b,
    minimize,
    reduce_step,
    reduce_to_disc,
)
from braidbands.surfaces import BraidedSurface, from_word, to_word
from braidbands.words import closure_components, is_homogeneous, parse_word

from corpus import random_homogeneous_surface, random_star, valid_star_instances

GOLDEN_SURFACE = from_word(parse_word("b(1,2) b(1,3) b(1,2)", strands=3))
GOLDEN_STAR = Star(3, [Ray(((1, "R", "L"),), 1, 3)])


def test_star_json_round_trip():
    text = GOLDEN_STAR.to_json()
    assert Star.from_json(text) == GOLDEN_STAR


def test_check_star_rejects_bad_rays():
    with pytest.raises(StarError):
        # step chain hops discs without a band
        check_star(GOLDEN_SURFACE, Star(3, [Ray(((0, "L", "R"),), 1, 0)]))
    with pytest.raises(StarError):
        check_star(GOLDEN_SURFACE, Star(3, [Ray((), 1, 9)]))
    with pytest.raises(StarError):
        check_star(GOLDEN_SURFACE, Star(9, []))


def test_delta_b_counts():
    assert delta_b(GOLDEN_STAR) == 1
    star = Star(1, [Ray((), 1, 0), Ray(((0, "L", "R"),), 2, 0),
                    Ray(((0, "L", "R"), (1, "R", "L")), 1, 0)])
    assert delta_b(star) == 3
    assert delta_b(star.rays[0]) == 0
    assert delta_b(star.rays[2]) == 2


def test_classification_golden():
    cls = classify_ray(GOLDEN_SURFACE, GOLDEN_STAR, 0)
    assert cls.long and not cls.slack and not cls.loose


def test_slack_detection():
    s = from_word(parse_word("b(1,2) b(1,2)", strands=2))
    u_turn = Star(1, [Ray(((0, "L", "L"),), 1, 0)])
    cls = classify_ray(s, u_turn, 0)
    assert cls.slack
    assert delta_b(minimize(s, u_turn)) == 0


def test_loose_detection_and_minimize():
    s = from_word(parse_word("b(1,2) b(1,2)", strands=2))
    star = Star(1, [Ray(((1, "L", "R"),), 2, 2)])
    check_star(s, star)
    cls = classify_ray(s, star, 0)
    assert cls.long and cls.loose
    reduced = minimize(s, star)
    assert delta_b(reduced) == 0
    # minimize is a fixpoint on the golden minimal star
    assert minimize(GOLDEN_SURFACE, GOLDEN_STAR) == GOLDEN_STAR


def test_reduce_step_golden_trace():
    s2, star2 = reduce_step(GOLDEN_SURFACE, GOLDEN_STAR)
    w2 = to_word(s2)
    assert w2 == parse_word("b(1,3) b(2,4) b(3,4) b(1,2)", strands=4)
    assert star2 == Star(4, [Ray((), 4, 1)])
    assert s2.discs == GOLDEN_SURFACE.discs + 1
    assert s2.band_count == GOLDEN_SURFACE.band_count + 1
    assert delta_b(star2) == 0
    assert is_homogeneous(w2)
    w1 = to_word(GOLDEN_SURFACE)
    assert alexander_from_braid(w2) == alexander_from_braid(w1)
    assert closure_components(w2) == closure_components(w1)


def test_reduce_step_preconditions():
    with pytest.raises(StarError):
        reduce_step(GOLDEN_SURFACE, Star(3, [Ray((), 3, 0)]))  # delta_b == 0
    loose_surface = from_word(parse_word("b(1,2) b(1,2)", strands=2))
    loose_star = Star(1, [Ray(((1, "L", "R"),), 2, 2)])
    with pytest.raises(StarError):
        reduce_step(loose_surface, loose_star)  # not minimal
    inhom = from_word(parse_word("b(1,2) b(1,2)^-1", strands=2))
    with pytest.raises(StarError):
        reduce_step(inhom, Star(1, [Ray(((0, "L", "R"),), 2, 0)]))


def test_reduce_to_disc_golden():
    s2, star2 = reduce_to_disc(GOLDEN_SURFACE, GOLDEN_STAR)
    assert delta_b(star2) == 0
    assert s2.discs == 4 and s2.band_count == 4
    # already-in-disc star is untouched
    s3, star3 = reduce_to_disc(GOLDEN_SURFACE, Star(2, [Ray((), 2, 0)]))
    assert s3 == GOLDEN_SURFACE and delta_b(star3) == 0


def test_reduce_to_disc_random_contracts():
    completed = 0
    refused = 0
    for s, star in valid_star_instances(seed=20250809, count=150):
        w0 = to_word(s)
        a0 = alexander_from_braid(w0)
        c0 = closure_components(w0)
        try:
            budget = delta_b(minimize(s, star))
            s2, star2 = reduce_to_disc(s, star)
        except StarError:
            refused += 1
            continue
        w2 = to_word(s2)
        assert delta_b(star2) == 0
        assert is_homogeneous(w2) == is_homogeneous(w0)
        assert alexander_from_braid(w2) == a0
        assert closure_components(w2) == c0
        assert s2.discs - s.discs == s2.band_count - s.band_count <= budget
        completed += 1
    assert completed >= 120
    assert refused <= 10


def test_reduce_step_contract_per_step():
    stepped = 0
    for s, star in valid_star_instances(seed=777, count=140):
        try:
            star_m = minimize(s, star)
            if delta_b(star_m) == 0:
                continue
            before = delta_b(star_m)
            w0 = to_word(s)
            s2, star2 = reduce_step(s, star_m)
        except StarError:
            continue
        assert delta_b(star2) < before
        assert s2.discs == s.discs + 1
        assert s2.band_count == s.band_count + 1
        assert is_homogeneous(to_word(s2)) == is_homogeneous(w0)
        assert alexander_from_braid(to_word(s2)) == alexander_from_braid(w0)
        assert closure_components(to_word(s2)) == closure_components(w0)
        stepped += 1
    assert stepped >= 35


def test_known_hard_shape_fails_loud():
    # A ray weaving twice through one band with another parallel ray: the
    # slot-level model refuses rather than guessing an embedding.
    s = BraidedSurface(2, ((1, 2, -1), (1, 2, -1), (1, 2, -1), (1, 2, -1)))
    star = Star(
        1,
        (
            Ray(((2, "L", "R"), (3, "R", "L"), (2, "L", "R")), 2, 1),
            Ray(((1, "L", "R"), (2, "R", "L"), (2, "L", "R")), 2, 0),
        ),
    )
    check_star(s, star)
    with pytest.raises(StarError):
        reduce_to_disc(s, star)
