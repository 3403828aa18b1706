"""Oriented link diagrams as PD codes, Seifert circles, and the Seifert graph.

A diagram is a list of crossing entries ``(a, b, c, d)`` listing the four
arc labels counterclockwise starting at the incoming under-arc.  Arc labels
run 1..2c, consecutively along each component in orientation order.  The
over-strand runs ``b -> d`` at a positive crossing and ``d -> b`` at a
negative one.

Seifert circles are the orbits of arcs under orientation-respecting
smoothing.  The planar embedding carried by the PD rotation system yields
faces, the regions of the smoothed picture, and a containment (nesting)
structure for the circles.  PD codes determine an embedding on the sphere
only, so containment is always computed relative to a choice of outer
region; the predicates below quantify over that choice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import ArtinWord


class DiagramError(ValueError):
    """Raised when a PD code violates the diagram invariants."""


@dataclass(frozen=True)
class Diagram:
    """A PD-coded oriented link diagram plus a count of free unknot components."""

    crossings: tuple[tuple[int, int, int, int], ...]
    unknots: int = 0

    def __init__(self, crossings: Iterable[Sequence[int]] = (), unknots: int = 0):
        entries = tuple(tuple(int(x) for x in entry) for entry in crossings)
        for entry in entries:
            if len(entry) != 4:
                raise DiagramError(f"crossing entry needs 4 arcs, got {entry}")
        if unknots < 0:
            raise DiagramError("unknot count must be >= 0")
        object.__setattr__(self, "crossings", entries)
        object.__setattr__(self, "unknots", int(unknots))

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def to_json(self) -> str:
        return json.dumps(
            {"crossings": [list(x) for x in self.crossings], "unknots": self.unknots}
        )

    @staticmethod
    def from_json(text: str) -> "Diagram":
        data = json.loads(text)
        return Diagram(data.get("crossings", []), data.get("unknots", 0))


@dataclass(frozen=True)
class Diagnostics:
    ok: bool
    problems: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def validate(d: Diagram) -> Diagnostics:
    """Check the PD invariants, reporting the first violated rule per category."""
    problems: list[str] = []
    if not d.crossings:
        return Diagnostics(True)
    counts: dict[int, int] = {}
    for entry in d.crossings:
        for arc in entry:
            counts[arc] = counts.get(arc, 0) + 1
    labels = sorted(counts)
    expected = list(range(1, 2 * len(d.crossings) + 1))
    bad = [a for a, k in counts.items() if k != 2]
    if bad:
        problems.append(f"arc multiplicity: arc {min(bad)} occurs {counts[min(bad)]} time(s)")
    elif labels != expected:
        problems.append("arc labels must be exactly 1..2c")
    if not problems:
        try:
            _build_successors(d)
        except DiagramError as exc:
            problems.append(str(exc))
    if not problems:
        try:
            analyze(d)
        except DiagramError as exc:
            problems.append(str(exc))
    return Diagnostics(not problems, tuple(problems))


# ---------------------------------------------------------------------------
# Core structure: successors, signs, circles, faces, regions
# ---------------------------------------------------------------------------

def _build_successors(d: Diagram) -> tuple[dict[int, int], list[int]]:
    """Return (succ, over direction per crossing).

    succ maps each arc to the next arc along the link.  The under-strand
    contributes a -> c at every crossing; over pairs are oriented first by
    bijection constraints and then by the label-successor convention.  The
    over direction doubles as the crossing sign: +1 means b -> d.
    """
    n_arcs = 2 * len(d.crossings)
    succ: dict[int, int] = {}
    pred: dict[int, int] = {}

    def link(x: int, y: int, why: str) -> None:
        if succ.get(x, y) != y or pred.get(y, x) != x:
            raise DiagramError(f"inconsistent successor structure at {why}")
        succ[x] = y
        pred[y] = x

    for idx, (a, b, c, dd) in enumerate(d.crossings):
        link(a, c, f"crossing {idx} under-strand")

    over_dir: dict[int, int] = {}
    unresolved = set(range(len(d.crossings)))
    while unresolved:
        progressed = False
        for idx in sorted(unresolved):
            a, b, c, dd = d.crossings[idx]
            forward_blocked = b in succ or dd in pred
            backward_blocked = dd in succ or b in pred
            if forward_blocked and backward_blocked:
                raise DiagramError(f"over-strand at crossing {idx} cannot be oriented")
            if not forward_blocked and not backward_blocked:
                continue
            if backward_blocked:
                link(b, dd, f"crossing {idx} over-strand")
                over_dir[idx] = 1
            else:
                link(dd, b, f"crossing {idx} over-strand")
                over_dir[idx] = -1
            unresolved.discard(idx)
            progressed = True
        if progressed:
            continue
        # Fall back to the numbering convention for one crossing, then re-propagate.
        idx = min(unresolved)
        a, b, c, dd = d.crossings[idx]
        if dd == b % n_arcs + 1:
            link(b, dd, f"crossing {idx} over-strand")
            over_dir[idx] = 1
        elif b == dd % n_arcs + 1:
            link(dd, b, f"crossing {idx} over-strand")
            over_dir[idx] = -1
        else:
            raise DiagramError(f"cannot orient over-strand at crossing {idx}")
        unresolved.discard(idx)

    if len(succ) != n_arcs:
        raise DiagramError("successor structure incomplete")
    return succ, [over_dir[i] for i in range(len(d.crossings))]


def _cycles_of(succ: dict[int, int]) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    cycles = []
    for start in sorted(succ):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = succ[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = succ[x]
        cycles.append(tuple(cyc))
    return cycles


class _UnionFind:
    def __init__(self, items: Iterable = ()):
        self.parent: dict = {x: x for x in items}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


@dataclass(frozen=True)
class SeifertGraph:
    """Signed multigraph: one vertex per Seifert circle, one edge per crossing."""

    vertex_count: int
    edges: tuple[tuple[int, int, int, int], ...]  # (u, v, sign, crossing id)


@dataclass
class DiagramStructure:
    """Derived combinatorial data of a valid diagram."""

    diagram: Diagram
    succ: dict[int, int]
    signs: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]  # arc cycles along the link
    circles: tuple[tuple[int, ...], ...]  # arc cycles after smoothing
    circle_of: dict[int, int]
    passages: tuple[tuple[int, ...], ...]  # crossing ids along each circle
    graph: SeifertGraph
    region_count: int
    circle_left: tuple[int, ...]  # region left of each circle's traversal
    circle_right: tuple[int, ...]
    circle_component: tuple[int, ...]  # connected component id per circle


def analyze(d: Diagram) -> DiagramStructure:
    """Compute the full derived structure; raises DiagramError when invalid."""
    if not d.crossings:
        return DiagramStructure(d, {}, (), (), (), {}, (), SeifertGraph(0, ()), 0, (), (), ())
    counts: dict[int, int] = {}
    for entry in d.crossings:
        for arc in entry:
            counts[arc] = counts.get(arc, 0) + 1
    if any(k != 2 for k in counts.values()) or sorted(counts) != list(
        range(1, 2 * len(d.crossings) + 1)
    ):
        raise DiagramError("invalid arc labels")

    succ, over_dir = _build_successors(d)
    components = tuple(_cycles_of(succ))
    signs = tuple(over_dir)

    # Seifert smoothing: positive pairs a->d, b->c; negative pairs a->b, d->c.
    smooth: dict[int, int] = {}
    step_crossing: dict[int, int] = {}
    for idx, (a, b, c, dd) in enumerate(d.crossings):
        if signs[idx] > 0:
            smooth[a] = dd
            smooth[b] = c
            step_crossing[a] = idx
            step_crossing[b] = idx
        else:
            smooth[a] = b
            smooth[dd] = c
            step_crossing[a] = idx
            step_crossing[dd] = idx
    circles = tuple(_cycles_of(smooth))
    circle_of = {arc: ci for ci, cyc in enumerate(circles) for arc in cyc}
    passages = tuple(
        tuple(step_crossing[arc] for arc in cyc if arc in step_crossing) for cyc in circles
    )

    edges = []
    for idx, (a, b, c, dd) in enumerate(d.crossings):
        u = circle_of[a]
        v = circle_of[c]
        if u == v:
            raise DiagramError(f"crossing {idx} joins a Seifert circle to itself")
        edges.append((u, v, signs[idx], idx))
    graph = SeifertGraph(len(circles), tuple(edges))

    # Occurrences of each arc among crossing slots.
    occ: dict[int, list[tuple[int, int]]] = {}
    for idx, entry in enumerate(d.crossings):
        for slot, arc in enumerate(entry):
            occ.setdefault(arc, []).append((idx, slot))

    def other_occurrence(idx: int, slot: int) -> tuple[int, int]:
        arc = d.crossings[idx][slot]
        first, second = occ[arc]
        return second if first == (idx, slot) else first

    # Connected components of the underlying 4-valent graph.
    cross_uf = _UnionFind(range(len(d.crossings)))
    for places in occ.values():
        (i1, _), (i2, _) = places
        cross_uf.union(i1, i2)
    comp_ids = sorted({cross_uf.find(i) for i in range(len(d.crossings))})
    comp_index = {root: k for k, root in enumerate(comp_ids)}
    n_graph_components = len(comp_ids)
    circle_component = tuple(
        comp_index[cross_uf.find(passages[ci][0])] if passages[ci] else 0
        for ci in range(len(circles))
    )

    # Face tracing.  A face dart (idx, slot) means: walking along the slot's
    # arc into the crossing, with the face on the left.  The next dart exits
    # through the clockwise-previous slot.
    face_of: dict[tuple[int, int], int] = {}
    face_count = 0
    for idx in range(len(d.crossings)):
        for slot in range(4):
            if (idx, slot) in face_of:
                continue
            fid = face_count
            face_count += 1
            cur = (idx, slot)
            while cur not in face_of:
                face_of[cur] = fid
                ci, cs = cur
                cur = other_occurrence(ci, (cs - 1) % 4)
    # Per sphere component: V - E + F = 2, so F = c + 2 per component.
    if face_count != len(d.crossings) + 2 * n_graph_components:
        raise DiagramError("not a planar diagram")

    # Smoothed regions: faces merged across the channel between the two
    # smoothed strands at each crossing.
    uf = _UnionFind(range(face_count))
    for idx in range(len(d.crossings)):
        if signs[idx] > 0:
            uf.union(face_of[(idx, 1)], face_of[(idx, 3)])
        else:
            uf.union(face_of[(idx, 0)], face_of[(idx, 2)])
    region_ids: dict[int, int] = {}
    region_of_face = []
    for f in range(face_count):
        root = uf.find(f)
        if root not in region_ids:
            region_ids[root] = len(region_ids)
        region_of_face.append(region_ids[root])
    region_count = len(region_ids)
    if region_count != len(circles) + n_graph_components:
        raise DiagramError("smoothed region count mismatch (embedding error)")

    # Sides of each circle.  The head occurrence of an arc (its under-in or
    # over-in slot) carries the face left of the arc's orientation.
    head_occ: dict[int, tuple[int, int]] = {}
    tail_occ: dict[int, tuple[int, int]] = {}
    for idx, (a, b, c, dd) in enumerate(d.crossings):
        head_occ[a] = (idx, 0)
        tail_occ[c] = (idx, 2)
        if signs[idx] > 0:
            head_occ[b] = (idx, 1)
            tail_occ[dd] = (idx, 3)
        else:
            head_occ[dd] = (idx, 3)
            tail_occ[b] = (idx, 1)

    circle_left = []
    circle_right = []
    for cyc in circles:
        lefts = {region_of_face[face_of[head_occ[arc]]] for arc in cyc}
        rights = {region_of_face[face_of[tail_occ[arc]]] for arc in cyc}
        if len(lefts) != 1 or len(rights) != 1:
            raise DiagramError("inconsistent circle sides (embedding error)")
        circle_left.append(lefts.pop())
        circle_right.append(rights.pop())

    return DiagramStructure(
        d,
        succ,
        signs,
        components,
        circles,
        circle_of,
        passages,
        graph,
        region_count,
        tuple(circle_left),
        tuple(circle_right),
        circle_component,
    )


def link_components(d: Diagram) -> int:
    """Number of link components, free unknots included."""
    if not d.crossings:
        return d.unknots
    return len(analyze(d).components) + d.unknots


def seifert_decompose(d: Diagram):
    """Return (circles, bands, SeifertGraph) for a valid diagram."""
    st = analyze(d)
    return list(st.circles), list(st.graph.edges), st.graph


# ---------------------------------------------------------------------------
# Blocks (biconnected components) of the Seifert multigraph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    cut_vertices: tuple[int, ...]
    blocks: tuple[tuple[tuple[int, int, int, int], ...], ...]  # edge tuples per block


def blocks(g: SeifertGraph) -> BlockDecomposition:
    """Biconnected components of a multigraph; bridges are single-edge blocks."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.vertex_count)}
    for eid, (u, v, _s, _c) in enumerate(g.edges):
        adj[u].append((v, eid))
        adj[v].append((u, eid))

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    timer = 0
    stack: list[int] = []
    out_blocks: list[tuple] = []
    cut: set[int] = set()

    for root in range(g.vertex_count):
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        work = [(root, -1, -1, iter(adj[root]))]
        while work:
            v, parent, pedge, it = work[-1]
            advanced = False
            for w, eid in it:
                if eid == pedge:
                    continue
                if w not in disc:
                    stack.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    work.append((w, v, eid, iter(adj[w])))
                    advanced = True
                    break
                elif disc[w] < disc[v]:
                    stack.append(eid)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            work.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    block = []
                    while True:
                        eid = stack.pop()
                        block.append(g.edges[eid])
                        if eid == pedge:
                            break
                    out_blocks.append(tuple(reversed(block)))
                    if parent != root or root_children > 1:
                        cut.add(parent)
    return BlockDecomposition(tuple(sorted(cut)), tuple(out_blocks))


@dataclass(frozen=True)
class BlockReport:
    homogeneous: bool
    mixed_blocks: tuple[int, ...]
    decomposition: BlockDecomposition

    def __bool__(self) -> bool:
        return self.homogeneous


def is_homogeneous_diagram(d: Diagram) -> BlockReport:
    """True iff every block of the Seifert graph carries a single sign."""
    st = analyze(d)
    dec = blocks(st.graph)
    mixed = tuple(
        i
        for i, block in enumerate(dec.blocks)
        if len({s for (_u, _v, s, _c) in block}) > 1
    )
    return BlockReport(not mixed, mixed, dec)


# ---------------------------------------------------------------------------
# Nesting of Seifert circles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NestingForest:
    parent: tuple[int, ...]  # -1 for roots
    depth: tuple[int, ...]
    root_regions: tuple[int, ...]

    @property
    def max_depth(self) -> int:
        return max(self.depth, default=0)


def _region_tree(st: DiagramStructure) -> dict[int, list[tuple[int, int]]]:
    """Adjacency of smoothed regions: region -> [(neighbor region, circle)]."""
    tree: dict[int, list[tuple[int, int]]] = {r: [] for r in range(st.region_count)}
    for ci in range(len(st.circles)):
        a, b = st.circle_left[ci], st.circle_right[ci]
        tree[a].append((b, ci))
        tree[b].append((a, ci))
    return tree


def _forest_from_root(st: DiagramStructure, tree, root: int, parent_circle, depth) -> None:
    seen = {root}
    queue = [(root, -1, 0)]
    while queue:
        region, above, dep = queue.pop()
        for nbr, circle in tree[region]:
            if nbr in seen:
                continue
            seen.add(nbr)
            parent_circle[circle] = above
            depth[circle] = dep
            queue.append((nbr, circle, dep + 1))


def nesting_forest(d: Diagram) -> NestingForest:
    """Containment forest of Seifert circles for the best outer-region choices.

    PD codes fix an embedding on the sphere only; per connected component the
    outer region is chosen to minimize nesting depth (then total, then id).
    """
    st = analyze(d)
    if not d.crossings:
        return NestingForest((), (), ())
    tree = _region_tree(st)
    # Group regions by diagram component (via any adjacent circle).
    region_component: dict[int, int] = {}
    for ci in range(len(st.circles)):
        region_component[st.circle_left[ci]] = st.circle_component[ci]
        region_component[st.circle_right[ci]] = st.circle_component[ci]
    n_comp = max(st.circle_component) + 1
    parent = [-1] * len(st.circles)
    depth = [0] * len(st.circles)
    roots = []
    for comp in range(n_comp):
        candidates = sorted(r for r, k in region_component.items() if k == comp)
        best = None
        for root in candidates:
            p = [-1] * len(st.circles)
            dp = [0] * len(st.circles)
            _forest_from_root(st, tree, root, p, dp)
            members = [ci for ci in range(len(st.circles)) if st.circle_component[ci] == comp]
            key = (max(dp[ci] for ci in members), sum(dp[ci] for ci in members), root)
            if best is None or key < best[0]:
                best = (key, root, p, dp)
        _key, root, p, dp = best
        roots.append(root)
        for ci in range(len(st.circles)):
            if st.circle_component[ci] == comp:
                parent[ci] = p[ci]
                depth[ci] = dp[ci]
    return NestingForest(tuple(parent), tuple(depth), tuple(roots))


def is_primitive_flat(d: Diagram) -> bool:
    """Single-sign diagram whose circles can all sit unnested in the plane."""
    if not d.crossings:
        return True
    st = analyze(d)
    if len(set(st.signs)) > 1:
        return False
    return nesting_forest(d).max_depth == 0


# ---------------------------------------------------------------------------
# Constructions: braid closures and sub-diagrams
# ---------------------------------------------------------------------------

def _renumber(entries: list[tuple], succ: dict, unknots: int = 0) -> Diagram:
    """Renumber arbitrary arc tokens to 1..2c, consecutive along each component."""
    if not entries:
        return Diagram((), unknots)
    rename: dict = {}
    next_label = 1
    for token in list(succ):
        if token in rename:
            continue
        x = token
        while x not in rename:
            rename[x] = next_label
            next_label += 1
            x = succ[x]
    out = [tuple(rename[t] for t in entry) for entry in entries]
    return Diagram(out, unknots)


def closure_diagram(w: ArtinWord) -> Diagram:
    """The PD diagram of the closure of an Artin braid word.

    Strands are oriented downward; strands meeting no crossing close into
    free unknot components.
    """
    n = w.strands
    cur: list = [("top", p) for p in range(1, n + 1)]
    touched = [False] * (n + 1)
    entries: list[tuple] = []
    succ: dict = {}
    fresh = 0

    def new_arc():
        nonlocal fresh
        fresh += 1
        return ("x", fresh)

    for i, e in w.letters:
        touched[i] = touched[i + 1] = True
        u, v = cur[i - 1], cur[i]
        new_l, new_r = new_arc(), new_arc()
        if e > 0:
            entries.append((v, u, new_l, new_r))
        else:
            entries.append((u, new_l, new_r, v))
        succ[u] = new_r
        succ[v] = new_l
        cur[i - 1], cur[i] = new_l, new_r

    unknots = sum(1 for p in range(1, n + 1) if not touched[p])
    alias = {cur[p - 1]: ("top", p) for p in range(1, n + 1) if touched[p]}

    def resolve(tok):
        return alias.get(tok, tok)

    final_succ = {resolve(src): resolve(dst) for src, dst in succ.items()}
    final_entries = [tuple(resolve(t) for t in entry) for entry in entries]
    return _renumber(final_entries, final_succ, unknots)


def subdiagram(d: Diagram, crossing_ids: Iterable[int], keep_free_circles: bool = True) -> Diagram:
    """The diagram obtained by smoothing every crossing not in ``crossing_ids``.

    Removing the other crossings' bands from the projection surface leaves
    the boundary re-closed along their smoothings.  Circles that lose all
    their crossings become free unknot components, or are dropped entirely
    with ``keep_free_circles=False`` (deplumbing semantics: they belong to
    the other plumband).
    """
    keep = sorted(set(crossing_ids))
    st = analyze(d)
    for idx in keep:
        if not 0 <= idx < len(d.crossings):
            raise DiagramError(f"no crossing {idx}")

    # Merge arcs across each removed crossing along its Seifert smoothing.
    uf = _UnionFind(st.succ)
    for idx, (a, b, c, dd) in enumerate(d.crossings):
        if idx in keep:
            continue
        if st.signs[idx] > 0:
            uf.union(a, dd)
            uf.union(b, c)
        else:
            uf.union(a, b)
            uf.union(dd, c)

    succ: dict = {}
    for idx in keep:
        a, b, c, dd = d.crossings[idx]
        succ[uf.find(a)] = uf.find(c)
        if st.signs[idx] > 0:
            succ[uf.find(b)] = uf.find(dd)
        else:
            succ[uf.find(dd)] = uf.find(b)
    entries = [tuple(uf.find(x) for x in d.crossings[idx]) for idx in keep]

    kept_circles = {st.circle_of[arc] for idx in keep for arc in d.crossings[idx]}
    extra = len(st.circles) - len(kept_circles) if keep_free_circles else 0
    unknots = d.unknots if keep_free_circles else 0
    return _renumber(entries, succ, unknots + extra)
