"""Braided Seifert surfaces: parallel discs joined by height-ordered bands.

A surface is a disc count plus a band list in strictly decreasing height;
the k-th letter of the corresponding band-generator word is the k-th
highest band, which makes the word/surface correspondence a bijection.

The isotopy moves rewrite the word while keeping the boundary link:
inflation/deflation add or remove a disc-band pair, slips exchange
unlinked neighbouring bands, slides move a band over a neighbour sharing a
disc, twirls rotate the disc order cyclically, turns move the lowest band
to the top, and the two normalizations flip the surface upside down or
mirror it left to right.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .words import BKLWord, permutation_of


class MoveError(ValueError):
    """A move was applied where its precondition fails."""

    def __init__(self, kind: str, position, reason: str):
        self.kind = kind
        self.position = position
        self.reason = reason
        super().__init__(f"{kind} at {position}: {reason}")


@dataclass(frozen=True)
class BraidedSurface:
    """Discs 1..n left to right; bands (l, r, sign) from highest to lowest."""

    discs: int
    bands: tuple[tuple[int, int, int], ...]

    def __init__(self, discs: int, bands: Iterable[tuple[int, int, int]] = ()):
        bands = tuple((int(l), int(r), int(e)) for l, r, e in bands)
        if discs < 1:
            raise ValueError("a braided surface needs at least one disc")
        for l, r, e in bands:
            if not 1 <= l < r <= discs:
                raise ValueError(f"band ({l},{r}) out of range for {discs} discs")
            if e not in (1, -1):
                raise ValueError("band sign must be +1 or -1")
        object.__setattr__(self, "discs", discs)
        object.__setattr__(self, "bands", bands)

    @property
    def band_count(self) -> int:
        return len(self.bands)

    def to_json(self) -> str:
        return json.dumps(
            {"discs": self.discs, "bands": [{"l": l, "r": r, "e": e} for l, r, e in self.bands]}
        )

    @staticmethod
    def from_json(text: str) -> "BraidedSurface":
        data = json.loads(text)
        return BraidedSurface(
            data["discs"], [(b["l"], b["r"], b["e"]) for b in data.get("bands", [])]
        )


def from_word(w: BKLWord) -> BraidedSurface:
    return BraidedSurface(w.strands, w.letters)


def to_word(s: BraidedSurface) -> BKLWord:
    return BKLWord(s.discs, s.bands)


@dataclass(frozen=True)
class MoveSpec:
    """A move kind with exactly the parameters the kind requires."""

    kind: str
    position: Optional[int] = None  # pair index (slip, slides) or band index (deflate)
    strand: Optional[int] = None  # inflate
    sign: Optional[int] = None  # inflate
    height: Optional[int] = None  # inflate insertion index, default 0 (top)

    KINDS = (
        "inflate",
        "deflate",
        "slip",
        "slide_up",
        "slide_down",
        "twirl",
        "turn",
        "flip_vertical",
        "mirror",
    )


def _bands_commute(a: tuple[int, int, int], b: tuple[int, int, int]) -> bool:
    # Non-separation of the two strand pairs; shared endpoints do not commute.
    (r1, s1, _), (r2, s2, _) = a, b
    return (s1 - s2) * (s1 - r2) * (r1 - s2) * (r1 - r2) > 0


def inflate(s: BraidedSurface, strand: int, sign: int, height: int = 0) -> BraidedSurface:
    """Insert a fresh disc after ``strand`` and a band joining them at ``height``."""
    if not 1 <= strand <= s.discs:
        raise MoveError("inflate", strand, "strand out of range")
    if sign not in (1, -1):
        raise MoveError("inflate", strand, "sign must be +1 or -1")
    if not 0 <= height <= len(s.bands):
        raise MoveError("inflate", strand, "insertion height out of range")

    def f(a: int) -> int:
        return a if a <= strand else a + 1

    bands = [(f(l), f(r), e) for l, r, e in s.bands]
    bands.insert(height, (strand, strand + 1, sign))
    return BraidedSurface(s.discs + 1, bands)


def deflate(s: BraidedSurface, band_index: int) -> BraidedSurface:
    """Remove an inflation band: an adjacent pair whose right disc has degree 1."""
    if not 0 <= band_index < len(s.bands):
        raise MoveError("deflate", band_index, "no such band")
    l, r, _e = s.bands[band_index]
    if r != l + 1:
        raise MoveError("deflate", band_index, "band does not join adjacent discs")
    for k, (bl, br, _) in enumerate(s.bands):
        if k != band_index and (bl == r or br == r):
            raise MoveError("deflate", band_index, f"disc {r} carries another band")
    bands = [
        (bl if bl <= l else bl - 1, br if br <= l else br - 1, be)
        for k, (bl, br, be) in enumerate(s.bands)
        if k != band_index
    ]
    return BraidedSurface(s.discs - 1, bands)


def slip(s: BraidedSurface, position: int) -> BraidedSurface:
    """Exchange the heights of two consecutive unlinked bands."""
    if not 0 <= position < len(s.bands) - 1:
        raise MoveError("slip", position, "no adjacent pair there")
    a, b = s.bands[position], s.bands[position + 1]
    if not _bands_commute(a, b):
        raise MoveError("slip", position, "bands are linked")
    bands = list(s.bands)
    bands[position], bands[position + 1] = b, a
    return BraidedSurface(s.discs, bands)


def _slide_up_pair(upper, lower):
    """Rewrite (upper, lower) sliding the lower band over the upper one."""
    (l1, r1, e1), (l2, r2, e2) = upper, lower
    if l1 == r2 and e1 == 1:
        i, j, k = l2, r2, r1  # (jk)^{+1} (ij)^{±1} -> (ik)^{±1} (jk)^{+1}
        return (i, k, e2), (j, k, 1)
    if r1 == l2 and e1 == -1:
        i, j, k = l1, r1, r2  # (ij)^{-1} (jk)^{±1} -> (ik)^{±1} (ij)^{-1}
        return (i, k, e2), (i, j, -1)
    if l1 == l2 and r1 < r2 and e1 == 1:
        i, j, k = l1, r1, r2  # (ij)^{+1} (ik)^{±1} -> (jk)^{±1} (ij)^{+1}
        return (j, k, e2), (i, j, 1)
    if r1 == r2 and l1 > l2 and e1 == -1:
        i, j, k = l2, l1, r1  # (jk)^{-1} (ik)^{±1} -> (ij)^{±1} (jk)^{-1}
        return (i, j, e2), (j, k, -1)
    return None


def _slide_down_pair(upper, lower):
    """Inverse rewriting: slide the upper band down under its neighbour."""
    (l1, r1, e1), (l2, r2, e2) = upper, lower
    if r1 == r2 and l1 < l2 and e2 == 1:
        i, j, k = l1, l2, r2  # (ik)^{±1} (jk)^{+1} -> (jk)^{+1} (ij)^{±1}
        return (j, k, 1), (i, j, e1)
    if l1 == l2 and r1 > r2 and e2 == -1:
        i, j, k = l1, r2, r1  # (ik)^{±1} (ij)^{-1} -> (ij)^{-1} (jk)^{±1}
        return (i, j, -1), (j, k, e1)
    if l1 == r2 and e2 == 1:
        i, j, k = l2, r2, r1  # (jk)^{±1} (ij)^{+1} -> (ij)^{+1} (ik)^{±1}
        return (i, j, 1), (i, k, e1)
    if r1 == l2 and e2 == -1:
        i, j, k = l1, r1, r2  # (ij)^{±1} (jk)^{-1} -> (jk)^{-1} (ik)^{±1}
        return (j, k, -1), (i, k, e1)
    return None


def slide_up(s: BraidedSurface, position: int) -> BraidedSurface:
    if not 0 <= position < len(s.bands) - 1:
        raise MoveError("slide_up", position, "no adjacent pair there")
    new_pair = _slide_up_pair(s.bands[position], s.bands[position + 1])
    if new_pair is None:
        raise MoveError("slide_up", position, "pair matches no slide pattern")
    bands = list(s.bands)
    bands[position], bands[position + 1] = new_pair
    return BraidedSurface(s.discs, bands)


def slide_down(s: BraidedSurface, position: int) -> BraidedSurface:
    if not 0 <= position < len(s.bands) - 1:
        raise MoveError("slide_down", position, "no adjacent pair there")
    new_pair = _slide_down_pair(s.bands[position], s.bands[position + 1])
    if new_pair is None:
        raise MoveError("slide_down", position, "pair matches no slide pattern")
    bands = list(s.bands)
    bands[position], bands[position + 1] = new_pair
    return BraidedSurface(s.discs, bands)


def twirl(s: BraidedSurface) -> BraidedSurface:
    """Pass the leftmost disc to the rightmost position."""
    if s.band_count == 0 and s.discs == 1:
        return s
    n = s.discs
    bands = []
    for l, r, e in s.bands:
        if l != 1:
            bands.append((l - 1, r - 1, e))
        else:
            bands.append((r - 1, n, e))
    return BraidedSurface(n, bands)


def turn(s: BraidedSurface) -> BraidedSurface:
    """Slide the lowest band around the back to the highest position."""
    if s.band_count == 0:
        return s
    bands = (s.bands[-1],) + s.bands[:-1]
    return BraidedSurface(s.discs, bands)


def flip_vertical(s: BraidedSurface) -> BraidedSurface:
    """Turn the surface upside down: reverse the height order."""
    return BraidedSurface(s.discs, tuple(reversed(s.bands)))


def mirror(s: BraidedSurface) -> BraidedSurface:
    """Reverse the disc order and all band signs."""
    n = s.discs
    bands = [(n + 1 - r, n + 1 - l, -e) for l, r, e in s.bands]
    return BraidedSurface(n, bands)


_DISPATCH = {
    "slip": lambda s, m: slip(s, m.position),
    "slide_up": lambda s, m: slide_up(s, m.position),
    "slide_down": lambda s, m: slide_down(s, m.position),
    "deflate": lambda s, m: deflate(s, m.position),
    "inflate": lambda s, m: inflate(s, m.strand, m.sign, m.height or 0),
    "twirl": lambda s, m: twirl(s),
    "turn": lambda s, m: turn(s),
    "flip_vertical": lambda s, m: flip_vertical(s),
    "mirror": lambda s, m: mirror(s),
}


def apply_move(s: BraidedSurface, move: MoveSpec) -> BraidedSurface:
    if move.kind not in _DISPATCH:
        raise MoveError(move.kind, move.position, "unknown move kind")
    return _DISPATCH[move.kind](s, move)


def incidence_connected(s: BraidedSurface) -> bool:
    parent = list(range(s.discs + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for l, r, _ in s.bands:
        parent[find(l)] = find(r)
    return len({find(x) for x in range(1, s.discs + 1)}) == 1


def euler_genus(s: BraidedSurface) -> tuple[int, int, int]:
    """Return (euler characteristic, boundary components, genus) of a connected surface."""
    if not incidence_connected(s):
        raise ValueError("surface is disconnected")
    chi = s.discs - s.band_count
    mu = permutation_of(to_word(s)).cycle_count()
    twice_genus = 2 - chi - mu
    if twice_genus % 2:
        raise ValueError("inconsistent genus computation")
    return chi, mu, twice_genus // 2


def word_twirl(w: BKLWord) -> BKLWord:
    return to_word(twirl(from_word(w)))


def word_turn(w: BKLWord) -> BKLWord:
    return to_word(turn(from_word(w)))


def render_svg(s: BraidedSurface) -> str:
    """A band-diagram sketch: discs as vertical bars, bands as arcs with signs."""
    width = 80 * s.discs + 40
    height = 40 * (s.band_count + 2)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for d in range(1, s.discs + 1):
        x = 80 * d - 20
        parts.append(
            f'<rect x="{x - 4}" y="20" width="8" height="{height - 40}" fill="#444"/>'
        )
        parts.append(
            f'<text x="{x}" y="14" font-size="12" text-anchor="middle">{d}</text>'
        )
    for k, (l, r, e) in enumerate(s.bands):
        y = 40 * (k + 1)
        x1, x2 = 80 * l - 20, 80 * r - 20
        colour = "#c33" if e < 0 else "#383"
        parts.append(
            f'<path d="M {x1} {y} C {x1} {y + 24}, {x2} {y + 24}, {x2} {y}" '
            f'stroke="{colour}" stroke-width="4" fill="none"/>'
        )
        label = "+" if e > 0 else "−"
        parts.append(
            f'<text x="{(x1 + x2) / 2}" y="{y + 28}" font-size="12" '
            f'text-anchor="middle" fill="{colour}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
