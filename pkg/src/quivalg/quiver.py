"""Quivers (finite directed multigraphs), paths, the text file format,
isomorphism search, separated quivers, and Dynkin/Euclidean shape detection.

Paths are stored in traversal order: arrows[0] is walked first.  The file
format and all displayed path strings use composition order instead ("f.g"
means g first, then f); the two ends of the package agree on that boundary
and nowhere else is composition order used.
"""

import re
from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product

from .errors import (InvalidRelationError, QuiverStructureError,
                     QuiverSyntaxError)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A directed path; arrows is a tuple of arrow names in traversal order.

    Length 0 paths (arrows == ()) are the stationary paths e_x with
    source == target == x.
    """

    source: str
    arrows: tuple
    target: str

    @property
    def length(self):
        return len(self.arrows)

    def composition_str(self) -> str:
        if not self.arrows:
            return "e_%s" % self.source
        return ".".join(reversed(self.arrows))

    def __str__(self):
        return self.composition_str()


class Quiver:
    """A finite directed multigraph with named vertices and arrows.

    Vertex and arrow order is significant (it is preserved by the file
    format and used for deterministic outputs) but not part of the
    mathematics.  Instances are immutable once built.
    """

    def __init__(self, vertices, arrows, name=None):
        self.name = name
        self.vertices = tuple(vertices)
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            arrs.append(a)
        self.arrows = tuple(arrs)

        if not self.vertices:
            raise QuiverStructureError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            dup = [v for v, c in Counter(self.vertices).items() if c > 1]
            raise QuiverStructureError("duplicate vertex name: %s" % dup[0])
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            dup = [v for v, c in Counter(names).items() if c > 1]
            raise QuiverStructureError("duplicate arrow name: %s" % dup[0])
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset:
                raise QuiverStructureError(
                    "arrow %s starts at unknown vertex %s" % (a.name, a.source))
            if a.target not in vset:
                raise QuiverStructureError(
                    "arrow %s ends at unknown vertex %s" % (a.name, a.target))

        self._by_name = {a.name: a for a in self.arrows}
        self._from = {v: [] for v in self.vertices}
        self._to = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._from[a.source].append(a)
            self._to[a.target].append(a)

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return "Quiver(%d vertices, %d arrows%s)" % (
            len(self.vertices), len(self.arrows),
            ", name=%r" % self.name if self.name else "")

    def arrow(self, name: str) -> Arrow:
        a = self._by_name.get(name)
        if a is None:
            raise QuiverStructureError("no arrow named %s" % name)
        return a

    def has_arrow(self, name):
        return name in self._by_name

    def arrows_from(self, v):
        return list(self._from[v])

    def arrows_to(self, v):
        return list(self._to[v])

    def out_degree(self, v):
        return len(self._from[v])

    def in_degree(self, v):
        return len(self._to[v])

    def mult(self, u, v) -> int:
        """Number of arrows u -> v."""
        return sum(1 for a in self._from[u] if a.target == v)

    def arrows_between(self, u, v):
        return sorted((a for a in self._from[u] if a.target == v),
                      key=lambda a: a.name)

    def sources(self):
        return [v for v in self.vertices if self.in_degree(v) == 0]

    def sinks(self):
        return [v for v in self.vertices if self.out_degree(v) == 0]

    def stationary(self, v) -> Path:
        if v not in self._from:
            raise QuiverStructureError("no vertex named %s" % v)
        return Path(v, (), v)

    def path(self, source, arrow_names) -> Path:
        """Build a validated path from a traversal-order name sequence."""
        arrow_names = tuple(arrow_names)
        if not arrow_names:
            return self.stationary(source)
        cur = source
        for nm in arrow_names:
            a = self.arrow(nm)
            if a.source != cur:
                raise InvalidRelationError(
                    "arrow %s starts at %s, expected %s" % (nm, a.source, cur))
            cur = a.target
        return Path(source, arrow_names, cur)

    def path_from_names(self, arrow_names) -> Path:
        """Like path() but the source is read off the first arrow."""
        arrow_names = tuple(arrow_names)
        if not arrow_names:
            raise InvalidRelationError("empty arrow sequence has no source")
        return self.path(self.arrow(arrow_names[0]).source, arrow_names)

    def is_connected(self) -> bool:
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


def relabel_quiver(q, vertex_map, arrow_map, name=None):
    verts = [vertex_map[v] for v in q.vertices]
    arrs = [Arrow(arrow_map[a.name], vertex_map[a.source], vertex_map[a.target])
            for a in q.arrows]
    return Quiver(verts, arrs, name=name if name is not None else q.name)


def relabel_path(p, vertex_map, arrow_map):
    return Path(vertex_map[p.source],
                tuple(arrow_map[a] for a in p.arrows),
                vertex_map[p.target])


def relabel_relations(relations, vertex_map, arrow_map):
    return [[(c, relabel_path(p, vertex_map, arrow_map)) for c, p in rel]
            for rel in relations]


# ---------------------------------------------------------------------------
# file format

_ID_RE = re.compile(r"[A-Za-z0-9_']+")


def _syntax(msg, line, col):
    raise QuiverSyntaxError(msg, line=line, col=col)


class _Cursor:
    def __init__(self, text, lineno):
        self.s = text
        self.i = 0
        self.lineno = lineno

    def col(self):
        return self.i + 1

    def skip_ws(self):
        while self.i < len(self.s) and self.s[self.i] in " \t":
            self.i += 1

    def done(self):
        self.skip_ws()
        return self.i >= len(self.s)

    def peek(self):
        self.skip_ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def word(self, what="identifier"):
        self.skip_ws()
        m = _ID_RE.match(self.s, self.i)
        if not m:
            _syntax("expected %s" % what, self.lineno, self.col())
        self.i = m.end()
        return m.group()


def _parse_relation_body(cur, lineno):
    """Parse `term (+|- term)*` into [(int coeff, [names in traversal order])]."""
    terms = []
    sign = 1
    if cur.take("-"):
        sign = -1
    elif cur.take("+"):
        pass
    while True:
        coeff = sign
        tok = cur.word("arrow name or coefficient")
        if tok.isdigit() and cur.peek() == "*":
            cur.take("*")
            coeff = sign * int(tok)
            if coeff == 0:
                _syntax("zero coefficient in relation", lineno, cur.col())
            tok = cur.word("arrow name")
        names = [tok]
        while cur.peek() == ".":
            cur.take(".")
            names.append(cur.word("arrow name"))
        # composition order in the file; traversal order internally
        terms.append((coeff, list(reversed(names))))
        if cur.done():
            return terms
        if cur.take("+"):
            sign = 1
        elif cur.take("-"):
            sign = -1
        else:
            _syntax("expected + or - between relation terms", lineno, cur.col())


_ARROW_LINE = re.compile(r"^arrow\s+(\S+)\s*:\s*(.+?)\s*->\s*(\S+)\s*$")


def parse_quiver_file(text):
    """Parse the line-oriented quiver format.

    Returns (Quiver, relations) where each relation is a list of
    (integer coefficient, Path) terms.  Relation terms are resolved against
    the quiver (unknown arrows or non-composable chains are rejected) but
    not checked for admissibility; that is the algebra builder's job.
    """
    name = None
    vertices = []
    arrows = []
    raw_relations = []
    for lineno, rawline in enumerate(text.splitlines(), 1):
        line = rawline.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        keyword = body.split(None, 1)[0]
        if keyword == "quiver":
            parts = body.split(None, 1)
            if len(parts) != 2 or len(parts[1].split()) != 1:
                _syntax("quiver header needs exactly one name",
                        lineno, indent + 1)
            if name is not None:
                _syntax("duplicate quiver header", lineno, indent + 1)
            name = parts[1].strip()
        elif keyword == "vertex":
            parts = body.split(None, 1)
            if len(parts) != 2 or len(parts[1].split()) != 1:
                _syntax("vertex line needs exactly one name",
                        lineno, indent + 1)
            vertices.append(parts[1].strip())
        elif keyword == "arrow":
            m = _ARROW_LINE.match(body)
            if not m:
                _syntax("expected `arrow NAME : SRC -> TGT`",
                        lineno, indent + 1)
            arrows.append(Arrow(m.group(1), m.group(2), m.group(3)))
        elif keyword == "relation":
            rest = body[len("relation"):]
            cur = _Cursor(rest, lineno)
            cur.i = 0
            if cur.done():
                _syntax("empty relation", lineno, indent + 1)
            raw_relations.append((lineno, _parse_relation_body(cur, lineno)))
        else:
            _syntax("unknown directive %r" % keyword, lineno, indent + 1)

    quiver = Quiver(vertices, arrows, name=name)
    relations = []
    for lineno, terms in raw_relations:
        rel = []
        for coeff, names in terms:
            try:
                path = quiver.path_from_names(names)
            except (InvalidRelationError, QuiverStructureError) as e:
                raise InvalidRelationError("line %d: %s" % (lineno, e))
            rel.append((coeff, path))
        relations.append(rel)
    return quiver, relations


def format_relation(rel) -> str:
    parts = []
    for i, (coeff, path) in enumerate(rel):
        c = int(coeff)
        mag = "%d*%s" % (abs(c), path.composition_str())
        if i == 0:
            parts.append(("-" if c < 0 else "") + mag)
        else:
            parts.append(("- " if c < 0 else "+ ") + mag)
    return " ".join(parts)


def emit_quiver_file(quiver, relations=(), name=None) -> str:
    lines = []
    header = name if name is not None else quiver.name
    if header:
        lines.append("quiver %s" % header)
    for v in quiver.vertices:
        lines.append("vertex %s" % v)
    for a in quiver.arrows:
        lines.append("arrow %s : %s -> %s" % (a.name, a.source, a.target))
    for rel in relations:
        lines.append("relation %s" % format_relation(rel))
    return "\n".join(lines) + "\n"


def to_dot(quiver, graph_name=None) -> str:
    """Emit the quiver as a DOT digraph, arrows labelled by name."""
    gname = graph_name or quiver.name or "quiver"
    out = ["digraph \"%s\" {" % gname]
    for v in quiver.vertices:
        out.append("  \"%s\";" % v)
    for a in quiver.arrows:
        out.append("  \"%s\" -> \"%s\" [label=\"%s\"];"
                   % (a.source, a.target, a.name))
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# isomorphism

def _joint_signatures(q1, q2):
    """Degree-refinement colors computed jointly so ranks are comparable."""
    verts = [(0, v) for v in q1.vertices] + [(1, v) for v in q2.vertices]
    qs = (q1, q2)

    def rerank(raw):
        ranks = {s: r for r, s in enumerate(sorted(set(raw.values())))}
        return {k: ranks[raw[k]] for k in raw}

    sig = rerank({(i, v): (qs[i].out_degree(v), qs[i].in_degree(v),
                           qs[i].mult(v, v))
                  for (i, v) in verts})
    for _ in range(len(verts)):
        raw = {}
        for (i, v) in verts:
            outs = tuple(sorted(sig[(i, a.target)]
                                for a in qs[i].arrows_from(v)))
            ins = tuple(sorted(sig[(i, a.source)]
                               for a in qs[i].arrows_to(v)))
            raw[(i, v)] = (sig[(i, v)], outs, ins)
        nxt = rerank(raw)
        if nxt == sig:
            break
        sig = nxt
    return ({v: sig[(0, v)] for v in q1.vertices},
            {v: sig[(1, v)] for v in q2.vertices})


def iter_quiver_isomorphisms(q1, q2):
    """Yield (vertex_map, arrow_map) pairs in a deterministic order."""
    if len(q1.vertices) != len(q2.vertices):
        return
    if len(q1.arrows) != len(q2.arrows):
        return
    sig1, sig2 = _joint_signatures(q1, q2)
    if sorted(sig1.values()) != sorted(sig2.values()):
        return

    order = sorted(q1.vertices, key=lambda v: (sig1[v], v))
    targets = sorted(q2.vertices)
    vmap = {}
    used = set()

    def vertex_maps(i):
        if i == len(order):
            yield dict(vmap)
            return
        v = order[i]
        for w in targets:
            if w in used or sig2[w] != sig1[v]:
                continue
            if q1.mult(v, v) != q2.mult(w, w):
                continue
            ok = True
            for u, x in vmap.items():
                if q1.mult(v, u) != q2.mult(w, x) or \
                        q1.mult(u, v) != q2.mult(x, w):
                    ok = False
                    break
            if not ok:
                continue
            vmap[v] = w
            used.add(w)
            yield from vertex_maps(i + 1)
            del vmap[v]
            used.discard(w)

    for vm in vertex_maps(0):
        classes = {}
        for a in q1.arrows:
            classes.setdefault((a.source, a.target), []).append(a)
        keys = sorted(classes)
        groups1 = [sorted(classes[k], key=lambda a: a.name) for k in keys]
        groups2 = [q2.arrows_between(vm[u], vm[t]) for (u, t) in keys]
        for choice in product(*(permutations(g2) for g2 in groups2)):
            amap = {}
            for g1, pg2 in zip(groups1, choice):
                for a1, a2 in zip(g1, pg2):
                    amap[a1.name] = a2.name
            yield vm, amap


def quiver_isomorphisms(q1, q2):
    """All incidence-preserving bijections (vertex map, arrow map)."""
    return list(iter_quiver_isomorphisms(q1, q2))


# ---------------------------------------------------------------------------
# separated quiver and graph shapes

def separated_quiver(q):
    """The bipartite doubling: x+ -> y- for every arrow x -> y."""
    verts = []
    for v in q.vertices:
        verts.append(v + "+")
        verts.append(v + "-")
    arrs = [Arrow(a.name, a.source + "+", a.target + "-") for a in q.arrows]
    return Quiver(verts, arrs,
                  name=(q.name + "_separated") if q.name else None)


@dataclass(frozen=True)
class GraphShape:
    kind: str            # "dynkin", "euclidean", or "other"
    letter: str = None   # "A", "D" or "E" when kind is not "other"
    rank: int = None

    @property
    def label(self):
        if self.kind == "other":
            return "Other"
        tilde = "~" if self.kind == "euclidean" else ""
        return "%s%s_%d" % (self.letter, tilde, self.rank)

    def __str__(self):
        return self.label


_OTHER = GraphShape("other")


def graph_shape(q) -> GraphShape:
    """Classify the underlying undirected graph as Dynkin, Euclidean
    (extended Dynkin), or Other.  Orientation is ignored; any loop gives
    Other; a double edge gives A~_1 when it is the whole graph."""
    if not q.is_connected():
        raise QuiverStructureError("graph_shape needs a connected quiver")
    n = len(q.vertices)
    if any(a.source == a.target for a in q.arrows):
        return _OTHER
    edge_mult = Counter(frozenset((a.source, a.target)) for a in q.arrows)
    if any(c >= 2 for c in edge_mult.values()):
        if n == 2 and len(q.arrows) == 2:
            return GraphShape("euclidean", "A", 1)
        return _OTHER
    m = len(edge_mult)
    adj = {v: [] for v in q.vertices}
    for a in q.arrows:
        adj[a.source].append(a.target)
        adj[a.target].append(a.source)
    deg = {v: len(adj[v]) for v in q.vertices}

    if m == n:
        if all(d == 2 for d in deg.values()):
            return GraphShape("euclidean", "A", n - 1)
        return _OTHER
    if m != n - 1:
        return _OTHER

    # tree
    big = [v for v in q.vertices if deg[v] >= 3]
    if not big:
        return GraphShape("dynkin", "A", n)
    if len(big) == 1:
        c = big[0]

        def branch_len(start):
            prev, cur, length = c, start, 1
            while deg[cur] == 2:
                nxt = [w for w in adj[cur] if w != prev][0]
                prev, cur = cur, nxt
                length += 1
            return length

        lens = sorted(branch_len(u) for u in adj[c])
        if deg[c] == 4:
            if lens == [1, 1, 1, 1]:
                return GraphShape("euclidean", "D", 4)
            return _OTHER
        if deg[c] != 3:
            return _OTHER
        l1, l2, l3 = lens
        if l1 == 1 and l2 == 1:
            return GraphShape("dynkin", "D", l3 + 3)
        table = {(1, 2, 2): ("dynkin", "E", 6),
                 (1, 2, 3): ("dynkin", "E", 7),
                 (1, 2, 4): ("dynkin", "E", 8),
                 (2, 2, 2): ("euclidean", "E", 6),
                 (1, 3, 3): ("euclidean", "E", 7),
                 (1, 2, 5): ("euclidean", "E", 8)}
        hit = table.get((l1, l2, l3))
        return GraphShape(*hit) if hit else _OTHER
    if len(big) == 2 and all(deg[v] == 3 for v in big):
        for c in big:
            leaves = [u for u in adj[c] if deg[u] == 1]
            if len(leaves) != 2:
                return _OTHER
        return GraphShape("euclidean", "D", n - 1)
    return _OTHER
