"""Identifying vertices of a presented algebra.

Three constructions live here.  glue() merges one source and one sink into
a single vertex x and kills every new length-2 path through x; separate()
is its inverse on nodes.  quotient_algebra() is the general construction:
any partition of the vertex set induces a quotient quiver, and the algebra
is cut out by the images of the zero-paths, the contour differences, and
every quotient path that cannot be lifted to a walk of the base quiver.

Arrows of the quotient quiver: arrows landing in the same (source block,
target block) slot are fused into one arrow class, except that a slot fed
entirely by one parallel family of the base keeps its arrows separate (so
the discrete partition returns the base quiver unchanged, and merging the
endpoints of a parallel pair yields several loops, matching glue()).

census_glueings() scans every proper partition of a base algebra and
groups the resulting quotients by isomorphism of their presentations.
"""

from dataclasses import dataclass

from .algebra import build_algebra, validate_relations
from .errors import GlueingError
from .lattice import is_node
from .quiver import Quiver, iter_quiver_isomorphisms, relabel_relations


def _fresh(name, taken):
    if name not in taken:
        return name
    i = 0
    while "%s%d" % (name, i) in taken:
        i += 1
    return "%s%d" % (name, i)


def _interior_vertices(quiver, path):
    seen = []
    v = path.source
    for a in path.arrows[:-1]:
        v = quiver.arrow(a).target
        seen.append(v)
    return seen


def glue(algebra, a, z):
    """Merge the source a and the sink z into one fresh vertex.

    Relations are transported and every length-2 path through the new
    vertex is added as a zero-relation; the dimension drops by exactly 1
    (the two stationary paths fuse and nothing else changes)."""
    q = algebra.quiver
    for v in (a, z):
        if v not in q.vertices:
            raise GlueingError("no vertex %r" % (v,))
    if a == z:
        raise GlueingError("cannot glue a vertex to itself")
    if q.in_degree(a):
        raise GlueingError("%r is not a source" % (a,))
    if q.out_degree(z):
        raise GlueingError("%r is not a sink" % (z,))

    keep = [v for v in q.vertices if v not in (a, z)]
    x = _fresh("x", set(keep))
    vmap = {v: v for v in keep}
    vmap[a] = x
    vmap[z] = x
    verts = []
    for v in q.vertices:
        if vmap[v] not in verts:
            verts.append(vmap[v])
    arrows = [(ar.name, vmap[ar.source], vmap[ar.target]) for ar in q.arrows]
    glued_q = Quiver(verts, arrows)

    amap = {ar.name: ar.name for ar in q.arrows}
    rels = relabel_relations(algebra.relations, vmap, amap)
    one = algebra.field.one()
    for into in q.arrows_to(z):
        for out in q.arrows_from(a):
            rels.append([(one, glued_q.path(vmap[into.source],
                                            (into.name, out.name)))])
    glued = build_algebra(glued_q, rels, field=algebra.field)
    assert glued.dim == algebra.dim - 1
    return glued


def separate(algebra, x):
    """Split a node x into a source (taking the outgoing arrows) and a
    sink (taking the incoming ones); inverse to glue up to renaming.

    Relation terms whose path crosses x in the interior are zero by the
    node property and are dropped; everything else is transported."""
    q = algebra.quiver
    if x not in q.vertices:
        raise GlueingError("no vertex %r" % (x,))
    if not (q.in_degree(x) and q.out_degree(x)):
        raise GlueingError("%r needs both incoming and outgoing arrows"
                           % (x,))
    if not is_node(algebra, x):
        raise GlueingError("%r is not a node: a length-2 path survives "
                           "through it" % (x,))

    keep = [v for v in q.vertices if v != x]
    a = _fresh("a", set(keep))
    z = _fresh("z", set(keep) | {a})
    verts = [a] + keep + [z]
    arrows = [(ar.name,
               a if ar.source == x else ar.source,
               z if ar.target == x else ar.target)
              for ar in q.arrows]
    split_q = Quiver(verts, arrows)

    rels = []
    for rel in algebra.relations:
        kept_terms = []
        for c, p in rel:
            if x in _interior_vertices(q, p):
                continue
            src = a if p.source == x else p.source
            kept_terms.append((c, split_q.path(src, p.arrows)))
        if kept_terms:
            rels.append(kept_terms)
    out = build_algebra(split_q, rels, field=algebra.field)
    assert out.dim == algebra.dim + 1
    return out


# ---------------------------------------------------------------------------
# partition quotients

class PointPartition:
    """A partition of a quiver's vertex set into named blocks.

    Blocks are kept in the order their first member appears in the quiver;
    the block containing v is named by joining its sorted members with '+'
    (singletons keep their own name, so the discrete partition does not
    rename anything)."""

    def __init__(self, quiver, blocks):
        self.quiver = quiver
        seen = {}
        for b in blocks:
            members = tuple(sorted(set(b)))
            if not members:
                raise GlueingError("empty block in partition")
            for v in members:
                if v not in quiver.vertices:
                    raise GlueingError("block member %r is not a vertex"
                                       % (v,))
                if v in seen:
                    raise GlueingError("vertex %r appears in two blocks"
                                       % (v,))
                seen[v] = members
        missing = [v for v in quiver.vertices if v not in seen]
        if missing:
            raise GlueingError("vertices %r not covered by the partition"
                               % (missing,))
        order = {v: i for i, v in enumerate(quiver.vertices)}
        self.blocks = tuple(sorted(
            {members for members in seen.values()},
            key=lambda m: min(order[v] for v in m)))
        self._block_of = {v: m for m in self.blocks for v in m}

    @property
    def is_discrete(self):
        return all(len(b) == 1 for b in self.blocks)

    def block_name(self, v):
        return "+".join(self._block_of[v])

    def __repr__(self):
        return "PointPartition(%s)" % "/".join(
            "+".join(b) for b in self.blocks)


def _quotient_quiver(partition):
    """The quotient quiver with its arrow-class map and properness flag."""
    q = partition.quiver
    bname = partition.block_name
    groups = {}
    for ar in q.arrows:
        groups.setdefault((bname(ar.source), bname(ar.target)),
                          []).append(ar)
    class_of = {}
    for (s, t), grp in groups.items():
        base_pairs = {(ar.source, ar.target) for ar in grp}
        if len(base_pairs) == 1:
            for ar in grp:
                class_of[ar.name] = ar.name
        else:
            fused = "+".join(sorted(ar.name for ar in grp))
            for ar in grp:
                class_of[ar.name] = fused

    verts = []
    for v in q.vertices:
        if bname(v) not in verts:
            verts.append(bname(v))
    arrows = []
    emitted = set()
    for ar in q.arrows:
        c = class_of[ar.name]
        if c not in emitted:
            emitted.add(c)
            arrows.append((c, bname(ar.source), bname(ar.target)))
    quot = Quiver(verts, arrows)

    proper = not partition.is_discrete
    if proper:
        for v in q.vertices:
            outs = [class_of[ar.name] for ar in q.arrows_from(v)]
            ins = [class_of[ar.name] for ar in q.arrows_to(v)]
            if len(set(outs)) != len(outs) or len(set(ins)) != len(ins):
                proper = False
                break
    return quot, class_of, proper


def _has_directed_cycle(q):
    state = {}

    def visit(v):
        state[v] = 1
        for ar in q.arrows_from(v):
            s = state.get(ar.target, 0)
            if s == 1 or (s == 0 and visit(ar.target)):
                return True
        state[v] = 2
        return False

    return any(state.get(v, 0) == 0 and visit(v) for v in q.vertices)


def _standard_relations(algebra):
    """Split the relations into zero-paths and contours, or refuse."""
    zeros, contours = [], []
    f = algebra.field
    for rel in algebra.relations:
        if len(rel) == 1:
            zeros.append(rel[0][1])
        elif len(rel) == 2 and f.eq(rel[0][0], f.neg(rel[1][0])):
            contours.append((rel[0][1], rel[1][1]))
        else:
            raise GlueingError("relations must be zero paths or two-term "
                               "contours; got %d terms" % len(rel))
    return zeros, contours


def _no_lift_relations(base_quiver, quot, class_of, partition):
    """Shortest quotient paths with no lifting to a walk of the base.

    Walks a breadth-first frontier of quotient paths, tracking the set of
    base vertices a partial lift can end at; a path whose set empties is
    recorded and not extended.  Termination needs an acyclic base."""
    members = {}
    for ar in base_quiver.arrows:
        members.setdefault(class_of[ar.name], []).append(
            (ar.source, ar.target))

    blocks = {}
    for v in base_quiver.vertices:
        blocks.setdefault(partition.block_name(v), set()).add(v)

    found = []
    for start in quot.vertices:
        frontier = [((), start, frozenset(blocks[start]))]
        while frontier:
            nxt = []
            for arrows, at, positions in frontier:
                for ar in quot.arrows_from(at):
                    ends = frozenset(t for s, t in members[ar.name]
                                     if s in positions)
                    walked = arrows + (ar.name,)
                    if ends:
                        nxt.append((walked, ar.target, ends))
                    else:
                        assert len(walked) >= 2
                        found.append(quot.path(start, walked))
            frontier = nxt
    # The walk only guarantees that no proper prefix of a recorded path is
    # unliftable; a proper suffix may be.  Keep the factor-minimal ones so
    # the generating set is canonical for a given quotient.
    def has_smaller_factor(p):
        big = p.arrows
        for q in found:
            small = q.arrows
            n = len(small)
            if n >= len(big):
                continue
            if any(big[i:i + n] == small
                   for i in range(len(big) - n + 1)):
                return True
        return False

    return [p for p in found if not has_smaller_factor(p)]


def quotient_algebra(algebra, partition):
    """The quotient of a zero-path/contour presented algebra by a vertex
    partition: quotient quiver, transported relations, and a zero-relation
    for every quotient path that has no lifting in the base quiver."""
    if partition.quiver != algebra.quiver:
        raise GlueingError("partition belongs to a different quiver")
    if _has_directed_cycle(algebra.quiver):
        raise GlueingError("lifting analysis needs an acyclic base quiver")
    zeros, contours = _standard_relations(algebra)

    quot, class_of, _ = _quotient_quiver(partition)
    bname = partition.block_name
    one = algebra.field.one()

    def image(p):
        return quot.path(bname(p.source),
                         tuple(class_of[a] for a in p.arrows))

    rels = [[(one, image(p))] for p in zeros]
    # A contour whose two routes fuse to the same quotient path is vacuous.
    rels += [[(one, image(u)), (algebra.field.neg(one), image(w))]
             for u, w in contours if image(u) != image(w)]
    rels += [[(one, p)] for p in _no_lift_relations(
        algebra.quiver, quot, class_of, partition)]
    return build_algebra(quot, rels, field=algebra.field)


# ---------------------------------------------------------------------------
# presentation isomorphism and the census

def _relation_key(quiver, relations, fld):
    """Canonical hashable form of a relation set: terms sorted, leading
    coefficient scaled to one."""
    out = set()
    for rel in validate_relations(quiver, relations, fld):
        scale = fld.inv(rel[0][0])
        out.add(tuple((fld.mul(scale, c), p.source, p.arrows)
                      for c, p in rel))
    return frozenset(out)


def presentations_isomorphic(q1, rels1, q2, rels2, fld):
    """Decide whether some quiver isomorphism carries the first relation
    set exactly onto the second."""
    target = _relation_key(q2, rels2, fld)
    for vmap, amap in iter_quiver_isomorphisms(q1, q2):
        moved = relabel_relations(rels1, vmap, amap)
        if _relation_key(q2, moved, fld) == target:
            return True
    return False


def _set_partitions(items):
    """All partitions of a list, by restricted-growth strings."""
    n = len(items)
    if n == 0:
        yield []
        return
    rgs = [0] * n

    def rec(i, top):
        if i == n:
            blocks = [[] for _ in range(top + 1)]
            for j, b in enumerate(rgs):
                blocks[b].append(items[j])
            yield blocks
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    yield from rec(1, 0)


@dataclass
class GlueingCensus:
    classes: int
    representatives: list
    proper_count: int
    improper_count: int


def census_glueings(algebra, max_vertices=8, jobs=None):
    """Count the proper glueings of an algebra up to isomorphism.

    A partition is proper when it is not discrete and the induced map is
    injective on arrows sharing a source and on arrows sharing a sink.
    Every proper quotient algebra is built, and quotients are grouped by
    quiver isomorphisms transporting the relation presentation exactly.
    Returns the class count with one (partition, algebra) representative
    per class."""
    q = algebra.quiver
    if len(q.vertices) > max_vertices:
        raise GlueingError("%d vertices exceed the census cap %d"
                           % (len(q.vertices), max_vertices))

    proper = []
    improper = 0
    for blocks in _set_partitions(list(q.vertices)):
        part = PointPartition(q, blocks)
        if part.is_discrete:
            continue
        _, _, ok = _quotient_quiver(part)
        if not ok:
            improper += 1
            continue
        proper.append(part)

    def build(part):
        return part, quotient_algebra(algebra, part)

    if jobs and jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            built = list(pool.map(build, proper))
    else:
        built = [build(part) for part in proper]

    fld = algebra.field
    buckets = {}
    reps = []
    for part, alg in built:
        key = (alg.dim,
               len(alg.quiver.vertices),
               len(alg.quiver.arrows),
               tuple(sorted((alg.quiver.in_degree(v),
                             alg.quiver.out_degree(v))
                            for v in alg.quiver.vertices)),
               tuple(sorted(len(r) for r in alg.relations)))
        bucket = buckets.setdefault(key, [])
        for prev_part, prev in bucket:
            if presentations_isomorphic(alg.quiver, alg.relations,
                                        prev.quiver, prev.relations, fld):
                break
        else:
            bucket.append((part, alg))
            reps.append((part, alg))
    return GlueingCensus(classes=len(reps), representatives=reps,
                         proper_count=len(proper),
                         improper_count=improper)
