"""Shared fixtures: golden words, PD codes, and seeded random generators."""

from __future__ import annotations

import random

from braidbands.diagrams import Diagram, closure_diagram
from braidbands.pipeline import fatgraph_of_word, flat_diagram
from braidbands.stars import Ray, Star, StarError, check_star
from braidbands.surfaces import BraidedSurface
from braidbands.words import ArtinWord, BKLWord, parse_word

# The inequivalent-presentations example: a 4-strand braid whose closure is
# the knot 9_48, inhomogeneous as an Artin word but homogeneous in band
# generators.
WORD_948_ARTIN = parse_word("s3^2 s2 s3^-1 s2 s3 s1^-1 s2 s3^-1 s2 s1^-1", strands=4)
WORD_948_BKL = parse_word(
    "b(3,4) b(2,4) b(2,3) b(1,2)^-1 b(2,4) b(2,3) b(1,2)^-1", strands=4
)

# Golden braided surface word and the plumbing example words.
WORD_SURFACE_GOLDEN = parse_word(
    "b(2,5)^-1 b(1,5) b(2,4) b(1,5) b(3,4)^-1 b(1,3) b(2,5)^-1", strands=5
)
PLUMB_W1 = parse_word("b(1,3) b(1,2)^-1 b(1,3)^-1", strands=3)
PLUMB_W2 = parse_word("b(1,4)^-1 b(1,3) b(2,3)^-1 b(1,4)^-1", strands=4)
PLUMB_RESULT = parse_word(
    "b(3,6)^-1 b(1,3) b(3,5) b(1,2)^-1 b(4,5)^-1 b(1,3)^-1 b(3,6)^-1", strands=6
)

# Standard PD codes (arc labels consecutive along each component).
TREFOIL = Diagram([[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])
FIG8 = Diagram([[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])
K5_2 = Diagram([[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]])

# Mirror trefoil: the flat diagram of the all-negative 2-circle bundle.
TREFOIL_NEG = flat_diagram(fatgraph_of_word(parse_word("b(1,2)^-3", strands=2)))

# A 9-crossing homogeneous closed-braid diagram of the knot 9_43: the
# closure of a homogeneous 4-strand word with the right Alexander
# polynomial (determinant 13, genus 3).
WORD_943_BRAID = parse_word("s1 s1 s1 s2 s1 s1 s3^-1 s2 s3^-1", strands=4)
K9_43 = closure_diagram(WORD_943_BRAID)


def random_bkl_word(rng: random.Random, max_strands=5, max_len=8, homogeneous=False) -> BKLWord:
    n = rng.randint(2, max_strands)
    sign_of: dict = {}
    letters = []
    for _ in range(rng.randint(0, max_len)):
        r = rng.randint(1, n - 1)
        s = rng.randint(r + 1, n)
        e = rng.choice((1, -1))
        if homogeneous:
            e = sign_of.setdefault((r, s), e)
        letters.append((r, s, e))
    return BKLWord(n, letters)


def random_artin_word(rng: random.Random, max_strands=5, max_len=8) -> ArtinWord:
    n = rng.randint(2, max_strands)
    letters = [
        (rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))
    ]
    return ArtinWord(n, letters)


def random_homogeneous_surface(rng: random.Random, max_n=4, max_b=6) -> BraidedSurface:
    n = rng.randint(2, max_n)
    sign_of: dict = {}
    bands = []
    for _ in range(rng.randint(1, max_b)):
        l = rng.randint(1, n - 1)
        r = rng.randint(l + 1, n)
        e = sign_of.setdefault((l, r), rng.choice((1, -1)))
        bands.append((l, r, e))
    return BraidedSurface(n, bands)


def random_star(rng: random.Random, s: BraidedSurface) -> Star:
    center = rng.randint(1, s.discs)
    rays = []
    for _ in range(rng.randint(1, 3)):
        disc = center
        steps = []
        for _ in range(rng.randint(0, 3)):
            attached = [
                (k, "L" if l == disc else "R")
                for k, (l, r, e) in enumerate(s.bands)
                if disc in (l, r)
            ]
            if not attached:
                break
            k, end = rng.choice(attached)
            other = "R" if end == "L" else "L"
            steps.append((k, end, other))
            l, r, _ = s.bands[k]
            disc = r if other == "R" else l
        regions = sum(1 for (l, r, e) in s.bands if disc in (l, r))
        rays.append(Ray(tuple(steps), disc, rng.randint(0, regions)))
    return Star(center, rays)


def valid_star_instances(seed: int, count: int):
    """Yield (surface, star) pairs that pass the embeddedness check."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        s = random_homogeneous_surface(rng)
        star = random_star(rng, s)
        try:
            check_star(s, star)
        except StarError:
            continue
        produced += 1
        yield s, star


def random_block_word(rng: random.Random) -> BKLWord:
    """A homogeneous word whose Seifert-style blocks are single-signed.

    Built from a random tree of bundles, optionally closed into one
    even-length single-sign ring, so its flat diagram is a homogeneous
    diagram.
    """
    n = rng.randint(2, 6)
    edges = []  # (u, v, size, sign) bundles, vertices 1..n
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        edges.append((u, v, rng.randint(1, 3), rng.choice((1, -1))))
    if n >= 4 and rng.random() < 0.4:
        # Close a ring through vertices at odd tree distance and force a
        # single sign along it so the resulting block stays homogeneous.
        parent = {1: None}
        depth = {1: 0}
        adj = {v: [] for v in range(1, n + 1)}
        for u, v, _k, _s in edges:
            adj[u].append(v)
            adj[v].append(u)
        order = [1]
        seen = {1}
        while order:
            x = order.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    order.append(y)
        candidates = [
            (a, b)
            for a in range(1, n + 1)
            for b in range(a + 1, n + 1)
            if (depth[a] + depth[b]) % 2 == 1
        ]
        if candidates:
            a, b = rng.choice(candidates)
            ring_sign = rng.choice((1, -1))
            # Recolour the tree path a..b to the ring's sign.
            path = set()
            for x in (a, b):
                while x is not None:
                    path.add(x)
                    x = parent[x]
            edges = [
                (u, v, k, ring_sign if (u in path and v in path) else s)
                for u, v, k, s in edges
            ]
            edges.append((a, b, rng.randint(1, 2), ring_sign))
    letters = []
    for u, v, k, s in edges:
        letters.extend([(min(u, v), max(u, v), s)] * k)
    rng.shuffle(letters)
    return BKLWord(n, letters)


def pseudoalternating_diagrams(seed: int, count: int):
    """Yield homogeneous diagrams built by plumbing flat single-sign pieces."""
    from braidbands.diagrams import is_homogeneous_diagram
    from braidbands.pipeline import PipelineError
    from braidbands.diagrams import DiagramError

    rng = random.Random(seed)
    produced = 0
    while produced < count:
        word = random_block_word(rng)
        if not word.letters:
            continue
        try:
            d = flat_diagram(fatgraph_of_word(word))
        except (PipelineError, DiagramError):
            continue
        if not is_homogeneous_diagram(d).homogeneous:
            continue
        produced += 1
        yield d, word
