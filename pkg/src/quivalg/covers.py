"""Bounded tree unfoldings of zero-relation presentations.

A presentation with only zero relations unfolds into a tree: walks from a
chosen base vertex that never immediately reverse an arrow enumerate copies
of the vertices, and each zero relation reappears along every lift of its
path that fits inside.  Truncating at a finite depth keeps the slice
computable while preserving the local structure around the base vertex.

Two searches on a slice carry the weight.  find_euclidean_convex looks for
convex, relation-free vertex subsets whose underlying graph is an extended
Dynkin tree; one hit certifies that the base algebra has infinitely many
indecomposables.  find_critical_line scans relation-free walks for a
subwalk whose endpoints cover the same base vertex from asymmetric
directions, the combinatorial seed of a one-parameter family.
"""

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import NonMonomialError, QuiverStructureError
from .quiver import Quiver, graph_shape


@dataclass(frozen=True)
class TreeSlice:
    """A radius-bounded piece of the tree unfolding of a monomial algebra.

    `lifted` holds every lift of a zero relation that fits inside the
    slice, as paths in the slice quiver.  The covering maps send slice
    names back to base names; `vertex_map[base_vertex + ".0"]` is the
    base vertex itself.
    """

    quiver: Quiver
    lifted: tuple
    vertex_map: dict
    arrow_map: dict
    algebra: object
    base_vertex: str
    radius: int

    def depth(self, vertex: str) -> int:
        """Vertex depth along the unfolding, base vertex at depth 1."""
        return self._depths[vertex]


@dataclass(frozen=True)
class Line:
    """A relation-free walk in a tree slice.

    `steps` records, between consecutive vertices, the slice arrow walked
    and the direction: sign 1 from source to target, -1 backwards.
    `sources` and `sinks` mark the vertices whose incident walk edges all
    point away from, respectively into, the vertex.
    """

    vertices: tuple
    steps: tuple
    sources: tuple
    sinks: tuple

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ConvexPatch:
    """A convex relation-free subset with an extended Dynkin shape."""

    shape: str
    vertices: tuple


def expand_cover(algebra, base_vertex: str, radius: int) -> TreeSlice:
    """Unfold the algebra's quiver into a tree around a base vertex.

    Non-reversing walks from the base vertex are expanded breadth-first up
    to the given depth, counted in vertices with the base vertex at depth
    1 (so radius 1 is the bare base vertex and radius 2 adds its
    neighbours).  Copies are named "<base name>.<counter>" in creation
    order, which makes the construction deterministic and repeatable.
    Every relation path lift that fits inside the slice is attached.

    Only zero relations unfold this way; any relation with two or more
    terms raises NonMonomialError.
    """
    q = algebra.quiver
    if base_vertex not in q.vertices:
        raise QuiverStructureError("no vertex named %s" % base_vertex)
    if radius < 1:
        raise ValueError("radius must be at least 1, got %r" % (radius,))
    zero_paths = []
    for rel in algebra.relations:
        if len(rel) != 1:
            raise NonMonomialError(
                "tree unfolding needs zero relations; "
                "a %d-term relation does not unfold" % len(rel))
        zero_paths.append(rel[0][1])

    vertex_counts = {}
    arrow_counts = {}

    def copy_name(counts, base):
        k = counts.get(base, 0)
        counts[base] = k + 1
        return "%s.%d" % (base, k)

    root = copy_name(vertex_counts, base_vertex)
    verts = [root]
    arrows = []
    vertex_map = {root: base_vertex}
    arrow_map = {}
    depths = {root: 1}
    # queue rows: slice vertex, its base vertex, the step that would undo
    # the edge just walked, current depth
    queue = deque([(root, base_vertex, None, 1)])
    while queue:
        node, base, banned, depth = queue.popleft()
        if depth == radius:
            continue
        for a in q.arrows_from(base):
            if banned == (a.name, 1):
                continue
            w = copy_name(vertex_counts, a.target)
            nm = copy_name(arrow_counts, a.name)
            verts.append(w)
            vertex_map[w] = a.target
            depths[w] = depth + 1
            arrows.append((nm, node, w))
            arrow_map[nm] = a.name
            queue.append((w, a.target, (a.name, -1), depth + 1))
        for a in q.arrows_to(base):
            if banned == (a.name, -1):
                continue
            w = copy_name(vertex_counts, a.source)
            nm = copy_name(arrow_counts, a.name)
            verts.append(w)
            vertex_map[w] = a.source
            depths[w] = depth + 1
            arrows.append((nm, w, node))
            arrow_map[nm] = a.name
            queue.append((w, a.source, (a.name, 1), depth + 1))

    slice_q = Quiver(verts, arrows,
                     name=((q.name + "_") if q.name else "") + "cover")

    # In a non-reversing unfolding each slice vertex carries at most one
    # copy of a given base arrow leaving it, so forward lifting is a walk
    # through this table.
    forward = {}
    for nm, s, t in arrows:
        forward[(s, arrow_map[nm])] = (nm, t)
    lifted = []
    for p in zero_paths:
        for u in verts:
            if vertex_map[u] != p.source:
                continue
            cur = u
            names = []
            for base_arrow in p.arrows:
                hit = forward.get((cur, base_arrow))
                if hit is None:
                    break
                names.append(hit[0])
                cur = hit[1]
            else:
                lifted.append(slice_q.path(u, names))

    ts = TreeSlice(slice_q, tuple(lifted), vertex_map, arrow_map,
                   algebra, base_vertex, radius)
    object.__setattr__(ts, "_depths", depths)
    return ts


# ---------------------------------------------------------------------------
# shared walk helpers

def _adjacency(slice_q):
    """Undirected view: vertex -> list of (neighbour, arrow name, sign)."""
    adj = {v: [] for v in slice_q.vertices}
    for a in slice_q.arrows:
        adj[a.source].append((a.target, a.name, 1))
        adj[a.target].append((a.source, a.name, -1))
    return adj

def _relation_index(tslice):
    """Arrow name -> list of frozensets of arrow names, one per lift."""
    index = {}
    for p in tslice.lifted:
        arrs = frozenset(p.arrows)
        for nm in arrs:
            index.setdefault(nm, []).append(arrs)
    return index


def _blocked(used, new_arrow, rel_index):
    """Does adding new_arrow complete some lifted relation inside used?"""
    for arrs in rel_index.get(new_arrow, ()):
        if arrs <= used or arrs - used == {new_arrow}:
            return True
    return False


def _make_line(vertices, steps):
    sources = []
    sinks = []
    for i, v in enumerate(vertices):
        outgoing = []
        if i > 0:
            outgoing.append(steps[i - 1][1] < 0)
        if i < len(steps):
            outgoing.append(steps[i][1] > 0)
        if all(outgoing):
            sources.append(v)
        elif not any(outgoing):
            sinks.append(v)
    return Line(tuple(vertices), tuple(steps),
                tuple(sources), tuple(sinks))


def relation_free_lines(tslice) -> list:
    """All maximal relation-free walks in the slice.

    A walk is relation-free when no lifted relation has all its arrows on
    the walk; maximal when neither end extends without breaking that.
    Walks are returned once, not once per direction, sorted by point
    count and then by vertex names.  Enumeration visits every maximal
    walk, so this is meant for slices of modest size.
    """
    adj = _adjacency(tslice.quiver)
    rel_index = _relation_index(tslice)

    def extensions(vertices, used, at_end):
        v = vertices[-1] if at_end else vertices[0]
        seen = set(vertices)
        out = []
        for w, nm, sign in adj[v]:
            if w in seen or _blocked(used, nm, rel_index):
                continue
            out.append((w, nm, sign))
        return out

    found = {}
    stack = []
    for v in tslice.quiver.vertices:
        stack.append(((v,), (), frozenset()))
    while stack:
        vertices, steps, used = stack.pop()
        grown = extensions(vertices, used, True)
        for w, nm, sign in grown:
            stack.append((vertices + (w,), steps + ((nm, sign),),
                          used | {nm}))
        if grown or extensions(vertices, used, False):
            continue
        rev_vertices = tuple(reversed(vertices))
        if rev_vertices < vertices:
            key = rev_vertices
        else:
            key = vertices
        if key in found:
            continue
        found[key] = _make_line(vertices, steps)
    return sorted(found.values(), key=lambda l: (l.length, l.vertices))


def _critical(tslice, vertices, steps):
    """The line criterion: same base image at both ends, approached from
    the same side (both ends sources or both sinks in the line), with
    different base images one step in from each end."""
    if len(vertices) < 4:
        return False
    vm = tslice.vertex_map
    if vm[vertices[0]] != vm[vertices[-1]]:
        return False
    first_out = steps[0][1] > 0
    last_out = steps[-1][1] < 0
    if first_out != last_out:
        return False
    return vm[vertices[1]] != vm[vertices[-2]]


def find_critical_line(tslice):
    """The smallest critical line in the slice, or None.

    Every subwalk of every maximal relation-free walk is tested against
    the criterion; ties are broken by vertex names, so the result is
    deterministic for a given slice.
    """
    best = None
    seen = set()
    for line in relation_free_lines(tslice):
        n = line.length
        for i in range(n):
            for j in range(i + 3, n):
                vertices = line.vertices[i:j + 1]
                steps = line.steps[i:j]
                if not _critical(tslice, vertices, steps):
                    continue
                rev = tuple(reversed(vertices))
                if rev < vertices:
                    vertices = rev
                    steps = tuple((nm, -s) for nm, s in reversed(steps))
                if vertices in seen:
                    continue
                seen.add(vertices)
                cand = _make_line(vertices, steps)
                key = (cand.length, cand.vertices)
                if best is None or key < (best.length, best.vertices):
                    best = cand
    return best


# ---------------------------------------------------------------------------
# extended Dynkin patches

def _arms_from(adj, center, first, length):
    """All non-backtracking descents of the given edge length that leave
    `center` through `first`; each arm is the tuple of vertices after the
    center."""
    arms = [(first,)]
    for _ in range(length - 1):
        grown = []
        for arm in arms:
            back = arm[-2] if len(arm) > 1 else center
            for w, _nm, _sign in adj[arm[-1]]:
                if w != back:
                    grown.append(arm + (w,))
        arms = grown
    return arms


def _induced_arrows(slice_q, vertex_set):
    return [a for a in slice_q.arrows
            if a.source in vertex_set and a.target in vertex_set]


def _relation_free_subset(tslice, arrow_names):
    return not any(frozenset(p.arrows) <= arrow_names
                   for p in tslice.lifted)


def _convex_subset(slice_q, vertex_set):
    """Path-convexity: every directed walk between members stays inside.
    Slices are trees, so it is enough to check the unique undirected path
    between each pair when it happens to be consistently oriented."""
    adj = _adjacency(slice_q)
    members = sorted(vertex_set)
    for start in members:
        parent = {start: None}
        order = [start]
        for v in order:
            for w, _nm, sign in adj[v]:
                if w not in parent:
                    parent[w] = (v, sign)
                    order.append(w)
        for end in members:
            if end == start:
                continue
            walk = []
            cur = end
            while cur != start:
                prev, sign = parent[cur]
                walk.append((cur, sign))
                cur = prev
            if all(s > 0 for _v, s in walk):
                if any(v not in vertex_set for v, _s in walk[1:]):
                    return False
    return True


_SHAPE_ARMS = {"E~_6": (2, 2, 2), "E~_7": (3, 3, 1), "E~_8": (5, 2, 1)}


def find_euclidean_convex(tslice, max_vertices: int = 10) -> list:
    """Convex relation-free subsets shaped like extended Dynkin trees.

    The slice is a tree, so A~ shapes cannot occur and the remaining
    shapes are located directly: D~_4 as a degree-4 star, D~_n as two
    degree-3 forks joined by a path with two pendants each, and E~_6/7/8
    as a centre with arms of the right edge lengths (arms may turn
    wherever the tree does).  Shapes needing more than max_vertices
    vertices are not searched; every reported subset is re-checked for
    convexity, relation-freeness, and its graph shape.
    """
    slice_q = tslice.quiver
    adj = _adjacency(slice_q)
    results = {}

    def consider(vertex_set):
        if len(vertex_set) > max_vertices or vertex_set in results:
            return
        arrs = _induced_arrows(slice_q, vertex_set)
        sub = Quiver(sorted(vertex_set), arrs)
        shape = graph_shape(sub)
        if shape.kind != "euclidean":
            return
        if not _relation_free_subset(tslice,
                                     frozenset(a.name for a in arrs)):
            return
        if not _convex_subset(slice_q, vertex_set):
            return
        results[vertex_set] = ConvexPatch(shape.label,
                                          tuple(sorted(vertex_set)))

    degree = {v: len(adj[v]) for v in slice_q.vertices}

    # D~_4: a degree-4 star
    if max_vertices >= 5:
        for c in slice_q.vertices:
            if degree[c] < 4:
                continue
            neighbours = sorted({w for w, _nm, _s in adj[c]})
            for quad in combinations(neighbours, 4):
                consider(frozenset((c,) + quad))

    # D~_n, n >= 5: two forks joined by a path, two pendants per fork
    forks = [v for v in slice_q.vertices if degree[v] >= 3]
    parent_of = {}
    if forks and max_vertices >= 6:
        for u in forks:
            parent = {u: None}
            order = [u]
            for v in order:
                for w, _nm, _s in adj[v]:
                    if w not in parent:
                        parent[w] = v
                        order.append(w)
            parent_of[u] = parent
        for u, w in combinations(sorted(forks), 2):
            path = [w]
            while path[-1] != u:
                path.append(parent_of[u][path[-1]])
            if len(path) + 4 > max_vertices:
                continue
            u_next = path[-2]
            w_next = path[1]
            u_pend = sorted({x for x, _nm, _s in adj[u] if x != u_next})
            w_pend = sorted({x for x, _nm, _s in adj[w] if x != w_next})
            for up in combinations(u_pend, 2):
                for wp in combinations(w_pend, 2):
                    consider(frozenset(path) | set(up) | set(wp))

    # E~ shapes: a centre with three arms
    for label, lengths in sorted(_SHAPE_ARMS.items()):
        size = 1 + sum(lengths)
        if size > max_vertices:
            continue
        for c in slice_q.vertices:
            if degree[c] < 3:
                continue
            dirs = sorted({w for w, _nm, _s in adj[c]})
            for trio in combinations(dirs, 3):
                for perm in _assignments(lengths):
                    choices = []
                    for first, ln in zip(trio, perm):
                        arms = _arms_from(adj, c, first, ln)
                        if not arms:
                            break
                        choices.append(arms)
                    else:
                        _cross(choices, c, consider)

    return sorted(results.values(), key=lambda p: (p.shape, p.vertices))


def _assignments(lengths):
    seen = set()
    out = []
    for perm in _permutations3(lengths):
        if perm not in seen:
            seen.add(perm)
            out.append(perm)
    return out


def _permutations3(items):
    a, b, c = items
    return [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]


def _cross(choices, center, consider):
    for arm1 in choices[0]:
        s1 = set(arm1)
        for arm2 in choices[1]:
            s2 = set(arm2)
            if s1 & s2:
                continue
            for arm3 in choices[2]:
                s3 = set(arm3)
                if s3 & s1 or s3 & s2:
                    continue
                consider(frozenset((center,)) | s1 | s2 | s3)
