import random

import pytest
from hypothesis import given, settings, strategies as st

from braidbands.surfaces import (
    BraidedSurface,
    MoveSpec,
    apply_move,
    deflate,
    euler_genus,
    flip_vertical,
    from_word,
    incidence_connected,
    inflate,
    mirror,
    render_svg,
    slide_down,
    slide_up,
    slip,
    to_word,
    turn,
    twirl,
    MoveError,
)
from braidbands.words import braids_equal, closure_components, is_homogeneous, parse_word

from corpus import WORD_SURFACE_GOLDEN, random_bkl_word


def test_from_word_golden():
    s = from_word(WORD_SURFACE_GOLDEN)
    assert s.discs == 5
    z1 = s.bands[0]
    z6 = s.bands[5]
    assert (z1[0], z1[1], z1[2]) == (2, 5, -1)
    assert (z6[0], z6[1], z6[2]) == (1, 3, 1)
    assert to_word(s) == WORD_SURFACE_GOLDEN


def test_word_surface_bijection_random():
    rng = random.Random(2)
    for _ in range(1000):
        w = random_bkl_word(rng)
        assert to_word(from_word(w)) == w


def test_empty_word_surface():
    s = from_word(parse_word("e", strands=3, kind="bkl"))
    assert s.discs == 3 and s.band_count == 0


def test_turn_twirl_slide_examples():
    s = from_word(parse_word("b(1,3) b(1,2)^-1 b(1,3)^-1", strands=3))
    assert to_word(turn(s)) == parse_word("b(1,3)^-1 b(1,3) b(1,2)^-1", strands=3)
    s2 = from_word(parse_word("b(1,3) b(1,2)", strands=3))
    assert to_word(twirl(s2)) == parse_word("b(2,3) b(1,3)", strands=3)
    s3 = from_word(parse_word("b(2,3) b(1,2)", strands=3))
    assert to_word(slide_up(s3, 0)) == parse_word("b(1,3) b(2,3)", strands=3)


def test_inflate_deflate():
    s = from_word(parse_word("b(1,3) b(1,2)", strands=3))
    s2 = inflate(s, 1, 1, height=1)
    assert s2.discs == 4 and s2.band_count == 3
    assert to_word(s2) == parse_word("b(1,4) b(1,2) b(1,3)", strands=4)
    assert deflate(s2, 1) == s
    with pytest.raises(MoveError):
        deflate(s2, 0)  # not an adjacent pair
    s3 = inflate(s, 3, -1, height=0)
    assert to_word(s3) == parse_word("b(3,4)^-1 b(1,3) b(1,2)", strands=4)
    with pytest.raises(MoveError):
        inflate(s, 5, 1)


def test_slip_preconditions():
    s = from_word(parse_word("b(1,2) b(3,4)", strands=4))
    assert to_word(slip(s, 0)) == parse_word("b(3,4) b(1,2)", strands=4)
    linked = from_word(parse_word("b(1,3) b(2,4)", strands=4))
    with pytest.raises(MoveError):
        slip(linked, 0)
    shared = from_word(parse_word("b(1,2) b(2,3)", strands=3))
    with pytest.raises(MoveError):
        slip(shared, 0)


def test_slides_preserve_braid_and_invert():
    rng = random.Random(14)
    checked = 0
    while checked < 300:
        s = from_word(random_bkl_word(rng, max_strands=5, max_len=6))
        w = to_word(s)
        for pos in range(s.band_count - 1):
            for fwd, back in ((slide_up, slide_down), (slide_down, slide_up)):
                try:
                    s2 = fwd(s, pos)
                except MoveError:
                    continue
                assert braids_equal(to_word(s2), w)
                assert back(s2, pos) == s
                checked += 1


def test_flip_vertical_involution_and_reverse():
    rng = random.Random(15)
    for _ in range(100):
        s = from_word(random_bkl_word(rng))
        f = flip_vertical(s)
        assert to_word(f).letters == tuple(reversed(to_word(s).letters))
        assert flip_vertical(f) == s


def test_mirror_shape():
    s = from_word(parse_word("b(1,3) b(2,4)^-1", strands=4))
    assert to_word(mirror(s)) == parse_word("b(2,4)^-1 b(1,3)", strands=4)
    assert mirror(mirror(s)) == s


def test_moves_preserve_homogeneity():
    # Every kind except the slides; a slide can merge a fresh generator with
    # an existing opposite-sign occurrence elsewhere in the word.
    rng = random.Random(16)
    for _ in range(200):
        w = random_bkl_word(rng, homogeneous=True)
        s = from_word(w)
        assert is_homogeneous(to_word(turn(s)))
        assert is_homogeneous(to_word(twirl(s)))
        assert is_homogeneous(to_word(flip_vertical(s)))
        assert is_homogeneous(to_word(mirror(s)))
        strand = rng.randint(1, s.discs)
        assert is_homogeneous(
            to_word(inflate(s, strand, rng.choice((1, -1)), rng.randint(0, s.band_count)))
        )
        for pos in range(s.band_count - 1):
            try:
                s2 = slip(s, pos)
            except MoveError:
                continue
            assert is_homogeneous(to_word(s2))


def test_slide_can_break_homogeneity():
    w = parse_word("b(2,3) b(1,2) b(1,3)^-1", strands=3)
    assert is_homogeneous(w)
    s2 = slide_up(from_word(w), 0)
    assert not is_homogeneous(to_word(s2))


def test_euler_genus():
    assert euler_genus(from_word(parse_word("b(1,2)^3", strands=2))) == (-1, 1, 1)
    assert euler_genus(from_word(parse_word("e", strands=1, kind="bkl"))) == (1, 1, 0)
    assert euler_genus(from_word(parse_word("b(1,2)", strands=2))) == (1, 1, 0)
    disconnected = from_word(parse_word("b(1,2)", strands=3))
    assert not incidence_connected(disconnected)
    with pytest.raises(ValueError):
        euler_genus(disconnected)


def test_apply_move_dispatch():
    s = from_word(parse_word("b(1,2) b(2,3)", strands=3))
    assert apply_move(s, MoveSpec("turn")) == turn(s)
    assert apply_move(s, MoveSpec("inflate", strand=2, sign=1, height=0)) == inflate(s, 2, 1, 0)
    with pytest.raises(MoveError):
        apply_move(s, MoveSpec("unknown"))


def test_svg_smoke():
    svg = render_svg(from_word(parse_word("b(1,3) b(1,2)^-1", strands=3)))
    assert svg.startswith("<svg") and "path" in svg


def test_json_round_trip():
    s = from_word(parse_word("b(1,3) b(1,2)^-1", strands=3))
    assert BraidedSurface.from_json(s.to_json()) == s
