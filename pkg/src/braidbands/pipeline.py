"""Homogeneous diagrams to homogeneous band words via plumbing.

The engine is a signed ribbon graph (fatgraph): one vertex per Seifert
circle carrying a cyclic order of its crossings, one signed edge per
crossing.  Both braided surfaces and projection surfaces of diagrams
reduce to this data: a band word orders each disc's letters from highest
to lowest, and a diagram orders each circle's crossings along its
traversal.  Link orientation alternates against nesting in exactly the
way that makes the two readings line up, so no per-circle correction is
needed.

Realizing a fatgraph as a word chooses a disc order and band heights whose
per-vertex orders reproduce the cyclic data; the converse emitter writes a
flat PD diagram for a planar fatgraph.  The pipeline splits a homogeneous
diagram into single-sign pieces at the cut circles of its Seifert graph,
realizes each piece, and reassembles with braided plumbing.  Soundness is
not assumed: callers compare Alexander polynomials and component counts of
both sides, and the test suite gates every construction on that agreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .diagrams import (
    Diagram,
    DiagramError,
    DiagramStructure,
    analyze,
    blocks,
    is_homogeneous_diagram,
    is_primitive_flat,
    subdiagram,
)
from .plumbing import plumb
from .surfaces import word_twirl
from .words import BKLWord


class PipelineError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Fatgraphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fatgraph:
    """Signed ribbon graph with page-counterclockwise cyclic orders."""

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]  # (u, v, sign), u != v
    orders: tuple[tuple[tuple[int, int], ...], ...]  # per vertex: (edge id, end)

    def degree(self, v: int) -> int:
        return len(self.orders[v])

    def check(self) -> None:
        seen: dict[tuple[int, int], int] = {}
        for v, order in enumerate(self.orders):
            for eid, end in order:
                u0, v0, _s = self.edges[eid]
                expected = (u0, v0)[end]
                if expected != v:
                    raise PipelineError(f"edge end ({eid},{end}) listed at wrong vertex")
                if (eid, end) in seen:
                    raise PipelineError(f"edge end ({eid},{end}) listed twice")
                seen[(eid, end)] = v
        if len(seen) != 2 * len(self.edges):
            raise PipelineError("missing edge ends in vertex orders")
        for u, v, _s in self.edges:
            if u == v:
                raise PipelineError("fatgraph edges must join distinct vertices")


def fatgraph_of_word(w: BKLWord) -> Fatgraph:
    edges = tuple((l - 1, r - 1, e) for l, r, e in w.letters)
    orders: list[list[tuple[int, int]]] = [[] for _ in range(w.strands)]
    for eid, (l, r, _e) in enumerate(w.letters):
        orders[l - 1].append((eid, 0))
        orders[r - 1].append((eid, 1))
    return Fatgraph(w.strands, edges, tuple(tuple(o) for o in orders))


def fatgraph_of_diagram(d: Diagram) -> Fatgraph:
    """Fatgraph of a connected diagram.

    Each circle's cyclic order is its traversal sequence; the link
    orientation alternates against nesting in exactly the way that makes
    this reading match the braided-surface convention at every circle.
    """
    st = analyze(d)
    if not d.crossings:
        raise PipelineError("empty diagram has no fatgraph")
    if len(set(st.circle_component)) != 1:
        raise PipelineError("fatgraph requires a connected diagram")
    edges = []
    end_at: dict[tuple[int, int], tuple[int, int]] = {}
    for eid, (u, v, sign, cid) in enumerate(st.graph.edges):
        edges.append((u, v, sign))
        end_at[(cid, u)] = (eid, 0)
        end_at[(cid, v)] = (eid, 1)
    orders = []
    for ci, passage in enumerate(st.passages):
        orders.append(tuple(end_at[(cid, ci)] for cid in passage))
    return Fatgraph(len(st.circles), tuple(edges), tuple(orders))


def fatgraphs_isomorphic(f: Fatgraph, g: Fatgraph) -> bool:
    """Isomorphism preserving signs and cyclic orders (up to rotation).

    Edge ends may swap: an edge (u, v) can match an edge stored as (v', u').
    """
    if f.vertex_count != g.vertex_count or len(f.edges) != len(g.edges):
        return False
    if sorted(len(o) for o in f.orders) != sorted(len(o) for o in g.orders):
        return False

    def try_assignment(vmap: dict[int, int], rotations: dict[int, int]) -> bool:
        emap: dict[int, int] = {}
        rmap: dict[int, int] = {}
        for v in range(f.vertex_count):
            fo = f.orders[v]
            go = g.orders[vmap[v]]
            if len(fo) != len(go):
                return False
            rot = rotations[v]
            for k, (eid, end) in enumerate(fo):
                geid, gend = go[(k + rot) % len(go)] if go else (None, None)
                fu, fv_, fs = f.edges[eid]
                gu, gv, gs = g.edges[geid]
                if fs != gs:
                    return False
                fpair = (vmap[(fu, fv_)[end]], vmap[(fu, fv_)[1 - end]])
                gpair = ((gu, gv)[gend], (gu, gv)[1 - gend])
                if fpair != gpair:
                    return False
                if emap.setdefault(eid, geid) != geid or rmap.setdefault(geid, eid) != eid:
                    return False
        return len(emap) == len(f.edges)

    def search_rot(v: int, vmap: dict[int, int], rotations: dict[int, int]) -> bool:
        if v == f.vertex_count:
            return try_assignment(vmap, rotations)
        for rot in range(max(1, len(f.orders[v]))):
            rotations[v] = rot
            if search_rot(v + 1, vmap, rotations):
                return True
        return False

    used: set[int] = set()
    vmap: dict[int, int] = {}

    def extend(v: int) -> bool:
        if v == f.vertex_count:
            return search_rot(0, vmap, {})
        for w in range(g.vertex_count):
            if w in used or g.degree(w) != f.degree(v):
                continue
            vmap[v] = w
            used.add(w)
            if extend(v + 1):
                return True
            del vmap[v]
            used.discard(w)
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# Realization: fatgraph -> band word
# ---------------------------------------------------------------------------

def _disc_positions(fat: Fatgraph, start_vertex: int) -> dict[int, int]:
    """Depth-first disc order following cyclic orders; start vertex is disc 1."""
    pos: dict[int, int] = {}
    stack = [start_vertex]
    while stack:
        v = stack.pop()
        if v in pos:
            continue
        pos[v] = len(pos) + 1
        for eid, end in reversed(fat.orders[v]):
            u0, v0, _s = fat.edges[eid]
            other = (u0, v0)[1 - end]
            if other not in pos:
                stack.append(other)
    if len(pos) != fat.vertex_count:
        raise PipelineError("fatgraph is disconnected")
    return pos


def realizations(fat: Fatgraph, start_vertex: int = 0, limit: int = 4096):
    """Yield (word, disc position map, edge order) realizing the fatgraph.

    A realization cuts each vertex's cyclic order so that the resulting
    linear orders embed in one global band-height order.  All cut
    combinations are enumerated (acyclicity-pruned, deterministic order);
    the fatgraph does not determine the braided embedding on its own, so
    callers pick the realization whose closure passes their invariant
    gate.
    """
    fat.check()
    n = fat.vertex_count
    if not 0 <= start_vertex < n:
        raise PipelineError("start vertex out of range")
    pos = _disc_positions(fat, start_vertex)

    m = len(fat.edges)
    vertices = sorted(range(n), key=lambda v: pos[v])
    adj: list[list[int]] = [[] for _ in range(m)]
    emitted = 0

    def acyclic(extra: list[tuple[int, int]]) -> bool:
        graph = [list(a) for a in adj]
        for a, b in extra:
            graph[a].append(b)
        state = [0] * m
        for s in range(m):
            if state[s]:
                continue
            stack2 = [(s, iter(graph[s]))]
            state[s] = 1
            while stack2:
                node, it = stack2[-1]
                advanced = False
                for nxt in it:
                    if state[nxt] == 1:
                        return False
                    if state[nxt] == 0:
                        state[nxt] = 1
                        stack2.append((nxt, iter(graph[nxt])))
                        advanced = True
                        break
                if not advanced:
                    state[node] = 2
                    stack2.pop()
        return True

    def constraints_for(v: int, cut: int) -> list[tuple[int, int]]:
        order = fat.orders[v]
        lin = [order[(cut + k) % len(order)][0] for k in range(len(order))]
        return [(lin[k], lin[k + 1]) for k in range(len(lin) - 1)]

    def topo_word():
        import heapq

        indeg = [0] * m
        for a in range(m):
            for b in adj[a]:
                indeg[b] += 1
        heap = [e for e in range(m) if indeg[e] == 0]
        heapq.heapify(heap)
        topo: list[int] = []
        while heap:
            e = heapq.heappop(heap)
            topo.append(e)
            for b in adj[e]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    heapq.heappush(heap, b)
        if len(topo) != m:
            return None
        letters = []
        for e in topo:
            u0, v0, s = fat.edges[e]
            a, b = pos[u0], pos[v0]
            letters.append((min(a, b), max(a, b), s))
        return BKLWord(n, tuple(letters)), topo

    def search(idx: int):
        nonlocal emitted
        if emitted >= limit:
            return
        if idx == len(vertices):
            built = topo_word()
            if built is not None:
                emitted += 1
                word, topo = built
                yield word, dict(pos), tuple(topo)
            return
        v = vertices[idx]
        for cut in range(max(1, len(fat.orders[v]))):
            extra = constraints_for(v, cut)
            if acyclic(extra):
                for a, b in extra:
                    adj[a].append(b)
                yield from search(idx + 1)
                for a, b in extra:
                    adj[a].remove(b)

    yield from search(0)


def realize_word(fat: Fatgraph, start_vertex: int = 0) -> tuple[BKLWord, dict[int, int]]:
    """First height-consistent realization of the fatgraph (no link gate)."""
    for word, pos, _topo in realizations(fat, start_vertex):
        return word, pos
    raise PipelineError("fatgraph admits no consistent band heights")


# ---------------------------------------------------------------------------
# Emission: planar fatgraph -> flat diagram
# ---------------------------------------------------------------------------

def _two_colour(fat: Fatgraph) -> list[int]:
    colour = [-1] * fat.vertex_count
    for start in range(fat.vertex_count):
        if colour[start] != -1:
            continue
        colour[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for eid, end in fat.orders[v]:
                u0, v0, _s = fat.edges[eid]
                other = (u0, v0)[1 - end]
                if colour[other] == -1:
                    colour[other] = 1 - colour[v]
                    queue.append(other)
                elif colour[other] == colour[v]:
                    raise PipelineError("fatgraph is not bipartite (odd circle cycle)")
    return colour


def flat_diagram(fat: Fatgraph) -> Diagram:
    """Write a flat PD diagram whose projection surface realizes the fatgraph.

    The fatgraph must be connected, planar and bipartite (all of which hold
    for fatgraphs read off diagrams).  Each circle is traversed in its
    stored order; at every crossing the edge's first endpoint supplies the
    under-in arc.  The emitted PD is validated structurally here and the
    callers' invariant gates keep the construction honest.
    """
    fat.check()
    if not fat.edges:
        raise PipelineError("cannot emit a diagram with no crossings")
    _disc_positions(fat, 0)  # connectivity: isolated discs have no PD trace
    _two_colour(fat)  # domain check: odd circle cycles never come from diagrams

    # Arc tokens: (vertex, k) is the arc leaving passage k toward passage k+1.
    where: dict[tuple[int, int], tuple[int, int]] = {}
    for v in range(fat.vertex_count):
        for k, (eid, end) in enumerate(fat.orders[v]):
            where[(eid, end)] = (v, k)

    entries: list[tuple] = []
    succ: dict = {}
    for eid, (u, v, sign) in enumerate(fat.edges):
        pu, ku = where[(eid, 0)]
        pv, kv = where[(eid, 1)]
        du, dv = fat.degree(pu), fat.degree(pv)
        a_u = (pu, (ku - 1) % du)
        o_u = (pu, ku)
        a_v = (pv, (kv - 1) % dv)
        o_v = (pv, kv)
        if sign > 0:
            entries.append((a_u, a_v, o_v, o_u))
        else:
            entries.append((a_u, o_u, o_v, a_v))
        succ[a_u] = o_v
        succ[a_v] = o_u

    from .diagrams import _renumber

    d = _renumber(entries, succ)
    try:
        st = analyze(d)
    except DiagramError as exc:
        raise PipelineError(f"fatgraph has no flat diagram: {exc}") from exc
    if st.signs != tuple(s for _u, _v, s in fat.edges):
        raise PipelineError("emitted diagram has wrong crossing signs")
    return d


# ---------------------------------------------------------------------------
# Pipeline operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlumbLeaf:
    diagram: Diagram
    crossings: tuple[int, ...]  # crossing ids in the source diagram
    circles: tuple[int, ...]  # circle ids in the source diagram

    def leaves(self):
        return [self]

    def to_obj(self):
        return {
            "leaf": {
                "crossings": list(self.crossings),
                "circles": list(self.circles),
                "diagram": {
                    "crossings": [list(x) for x in self.diagram.crossings],
                    "unknots": self.diagram.unknots,
                },
            }
        }


@dataclass(frozen=True)
class PlumbJoint:
    left: "PlumbTree"
    right: "PlumbTree"
    circle: int  # shared circle id in the source diagram

    def leaves(self):
        return self.left.leaves() + self.right.leaves()

    def to_obj(self):
        return {
            "joint": {
                "circle": self.circle,
                "left": self.left.to_obj(),
                "right": self.right.to_obj(),
            }
        }


PlumbTree = Union[PlumbLeaf, PlumbJoint]


def _closure_matches(word: BKLWord, d: Diagram) -> bool:
    from .invariants import alexander_from_braid, alexander_from_diagram
    from .diagrams import link_components
    from .words import closure_components

    if closure_components(word) != link_components(d):
        return False
    return alexander_from_braid(word) == alexander_from_diagram(d)


def braided_realization(d: Diagram, start_circle: int = 0):
    """Word, disc positions and crossing order realizing a diagram's surface.

    Candidate height assignments for the fatgraph are enumerated and the
    first one whose closure matches the diagram's component count and
    Alexander polynomial wins; band heights alone do not pin down the
    embedding, so the gate is what makes the construction sound.
    """
    fat = fatgraph_of_diagram(d)
    crossing_ids = [cid for (_u, _v, _s, cid) in analyze(d).graph.edges]
    tried = 0
    for word, pos, topo in realizations(fat, start_vertex=start_circle):
        tried += 1
        if _closure_matches(word, d):
            return word, pos, tuple(crossing_ids[e] for e in topo)
    raise PipelineError(
        f"no braided realization matches the diagram's invariants ({tried} candidates)"
    )


def primitive_flat_to_bkl(d: Diagram, start_circle: int = 0) -> BKLWord:
    """Single-sign band word for a primitive flat diagram.

    Discs correspond to Seifert circles and letters to crossings; the word
    carries the diagram's sign everywhere and its closure is verified
    against the diagram's oracles.
    """
    if not d.crossings:
        raise PipelineError("empty diagram: nothing to braid")
    if not is_primitive_flat(d):
        raise PipelineError("diagram is not primitive flat")
    word, _pos, _order = braided_realization(d, start_circle)
    return word


def _piece(d: Diagram, st: DiagramStructure, crossing_ids: Iterable[int]):
    """Extract a sub-diagram and the map from source circles to its circles."""
    keep = sorted(set(crossing_ids))
    piece = subdiagram(d, keep, keep_free_circles=False)
    pst = analyze(piece)
    circle_map: dict[int, int] = {}
    for k, cid in enumerate(keep):
        a = d.crossings[cid][0]
        pa = piece.crossings[k][0]
        circle_map[st.circle_of[a]] = pst.circle_of[pa]
        c = d.crossings[cid][2]
        pc = piece.crossings[k][2]
        circle_map[st.circle_of[c]] = pst.circle_of[pc]
    return piece, circle_map


def decompose_generalized_flat(d: Diagram) -> PlumbTree:
    """Split a homogeneous diagram into primitive flat pieces at cut circles.

    The result is a left-nested binary tree of plumbing joints.  Each block
    of the Seifert graph becomes one leaf; a leaf that stays nested for
    every outer-region choice of its own diagram is unsupported.
    """
    report = is_homogeneous_diagram(d)
    if not report.homogeneous:
        raise PipelineError("diagram is not homogeneous")
    st = analyze(d)
    if len(set(st.circle_component)) > 1:
        raise PipelineError("decomposition requires a connected diagram")
    dec = report.decomposition

    leaves: list[PlumbLeaf] = []
    for block in dec.blocks:
        ids = tuple(sorted(cid for (_u, _v, _s, cid) in block))
        verts = tuple(sorted({x for (u, v, _s, _c) in block for x in (u, v)}))
        piece, _cmap = _piece(d, st, ids)
        if not is_primitive_flat(piece):
            raise PipelineError("unsupported nesting pattern inside a block")
        leaves.append(PlumbLeaf(piece, ids, verts))

    order, _attach = _fold_order(leaves)
    tree: PlumbTree = order[0][0]
    for leaf, shared in order[1:]:
        tree = PlumbJoint(tree, leaf, shared)
    return tree


def _fold_order(leaves: list[PlumbLeaf]) -> tuple[list[tuple[PlumbLeaf, int]], dict]:
    """Arrange leaves so each one after the first attaches at a reached circle."""
    if not leaves:
        raise PipelineError("no blocks to fold")
    remaining = list(range(len(leaves)))
    first = remaining.pop(0)
    reached = set(leaves[first].circles)
    out: list[tuple[PlumbLeaf, int]] = [(leaves[first], -1)]
    while remaining:
        for k in list(remaining):
            shared = [v for v in leaves[k].circles if v in reached]
            if shared:
                if len(shared) > 1:
                    raise PipelineError("blocks share more than one circle")
                out.append((leaves[k], shared[0]))
                reached.update(leaves[k].circles)
                remaining.remove(k)
                break
        else:
            raise PipelineError("block structure is disconnected")
    return out, {}


def homogenize(d: Diagram, verify_steps: bool = True) -> BKLWord:
    """Band word of a homogeneous diagram: fold its plumbing tree.

    Each leaf is realized with the shared circle as its first disc, turned
    until its letters at the shared circle line up with the diagram's
    cyclic order there, and plumbed in with the shuffle pattern that
    reproduces that order.  Every intermediate word is checked against the
    partial diagram's oracles, so a construction that drifts from the
    diagram's link fails loudly instead of returning a wrong word.
    """
    tree = decompose_generalized_flat(d)
    st = analyze(d)
    order = _linear_joints(tree)

    first_leaf = order[0][0]
    cmap = _leaf_circle_map(d, st, first_leaf)
    word, pos, letter_cids = _realized_leaf(d, st, first_leaf, cmap, first_leaf.circles[0])
    disc_of = {orig: pos[cmap[orig]] for orig in first_leaf.circles}
    placed = set(first_leaf.crossings)

    for leaf, shared in order[1:]:
        # Rotate the running surface until the shared circle is rightmost.
        twirls = disc_of[shared] % word.strands
        for _ in range(twirls):
            word = word_twirl(word)
        if twirls:
            n = word.strands
            disc_of = {c: (p - twirls - 1) % n + 1 for c, p in disc_of.items()}

        cmap = _leaf_circle_map(d, st, leaf)
        piece_word, piece_pos, piece_cids = _realized_leaf(d, st, leaf, cmap, shared)

        # Schedule the shared circle's letters in the diagram's cyclic order.
        sigma = list(st.passages[shared])
        mine = [cid for cid in letter_cids if cid in set(sigma) and cid in placed]
        theirs_set = set(leaf.crossings) & set(sigma)
        schedule = _cut_at(sigma, mine, theirs_set)
        want_piece = [cid for cid in schedule if cid in theirs_set]
        piece_word, piece_cids = _turn_until(piece_word, piece_cids, theirs_set, want_piece)

        pattern = _merge_pattern(letter_cids, piece_cids, schedule, set(mine), theirs_set)
        n1 = word.strands
        word = plumb(word, piece_word, pattern)
        letter_cids = _merge_lists(letter_cids, piece_cids, pattern)
        for orig in leaf.circles:
            if orig == shared:
                continue
            disc_of[orig] = piece_pos[cmap[orig]] + n1 - 1
        placed.update(leaf.crossings)
        if verify_steps and not _closure_matches(word, subdiagram(d, placed, keep_free_circles=False)):
            raise PipelineError("plumbing step drifted from the diagram's link")
    return word


def _realized_leaf(d, st, leaf: PlumbLeaf, cmap: dict[int, int], start_circle_orig: int):
    """Realize one leaf; letters are tagged with source-diagram crossing ids."""
    piece_ids = sorted(leaf.crossings)
    word, pos, piece_order = braided_realization(
        leaf.diagram, start_circle=cmap[start_circle_orig]
    )
    letter_cids = [piece_ids[k] for k in piece_order]
    return word, pos, letter_cids


def _cut_at(sigma: list[int], mine: list[int], theirs: set) -> list[int]:
    """Linearize the cyclic order of the shared circle, compatibly with ``mine``."""
    relevant = [cid for cid in sigma if cid in theirs or cid in set(mine)]
    if not mine:
        return relevant
    k = relevant.index(mine[0])
    schedule = relevant[k:] + relevant[:k]
    if [cid for cid in schedule if cid in set(mine)] != mine:
        raise PipelineError("accumulated word is out of cyclic order at the shared circle")
    return schedule


def _turn_until(word: BKLWord, cids: list[int], at_shared: set, want: list[int]):
    from .surfaces import word_turn

    for _ in range(max(1, len(word.letters))):
        if [c for c in cids if c in at_shared] == want:
            return word, cids
        word = word_turn(word)
        cids = [cids[-1]] + cids[:-1]
    raise PipelineError("cannot align the piece with the shared circle's cyclic order")


def _merge_pattern(mine_cids, piece_cids, schedule, mine_set, theirs_set):
    marks: list[int] = []
    i = j = 0
    for cid in schedule:
        if cid in mine_set:
            while True:
                marks.append(1)
                i += 1
                if mine_cids[i - 1] == cid:
                    break
        elif cid in theirs_set:
            while True:
                marks.append(2)
                j += 1
                if piece_cids[j - 1] == cid:
                    break
    marks.extend([1] * (len(mine_cids) - i))
    marks.extend([2] * (len(piece_cids) - j))
    from .plumbing import ShufflePattern

    return ShufflePattern(marks)


def _merge_lists(a: list[int], b: list[int], pattern) -> list[int]:
    out: list[int] = []
    i = j = 0
    for m in pattern.marks:
        if m == 1:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    return out


def _linear_joints(tree: PlumbTree) -> list[tuple[PlumbLeaf, int]]:
    if isinstance(tree, PlumbLeaf):
        return [(tree, -1)]
    left = _linear_joints(tree.left)
    right = _linear_joints(tree.right)
    if len(right) != 1:
        raise PipelineError("plumbing tree is not left-nested")
    return left + [(right[0][0], tree.circle)]


def _leaf_circle_map(d: Diagram, st: DiagramStructure, leaf: PlumbLeaf) -> dict[int, int]:
    pst = analyze(leaf.diagram)
    cmap: dict[int, int] = {}
    for k, cid in enumerate(sorted(leaf.crossings)):
        a = d.crossings[cid][0]
        pa = leaf.diagram.crossings[k][0]
        cmap[st.circle_of[a]] = pst.circle_of[pa]
        c = d.crossings[cid][2]
        pc = leaf.diagram.crossings[k][2]
        cmap[st.circle_of[c]] = pst.circle_of[pc]
    return cmap
