"""Exact finite dimensional quotients of path algebras.

build_algebra enumerates paths stratum by stratum (all paths of one length
form a stratum), spans the two-sided closure of the relations by exact
Gaussian elimination, and stops at the first length where no path survives
outside that span.  For a nilpotent quotient this cut is exact: once one
stratum dies, every later one does too, so the returned algebra is the whole
quotient and not a truncation.  If no stratum dies below the length cap the
build refuses with PossiblyInfiniteDimensionalError instead of guessing.

Column order is (length, source, arrow names) ascending and pivots sit at
the smallest index of a row, so reductions rewrite a path into combinations
of *longer* normal paths.  That convention makes the radical filtration
readable straight off the basis: rad^i is spanned by the normal paths of
length at least i.
"""

from ._linalg import Eliminator, kernel_combos
from .errors import (ExplosionGuardError, InvalidRelationError,
                     NotAdmissibleError, PossiblyInfiniteDimensionalError)
from .fields import Rationals
from .quiver import Path

DEFAULT_LENGTH_CAP = 64
DEFAULT_MAX_PATHS = 200_000


def path_sort_key(p):
    return (p.length, p.source, p.arrows)


def validate_relations(quiver, relations, field):
    """Normalize relation input.

    Each relation is an iterable of (coefficient, Path) pairs.  Terms are
    re-walked against the quiver, coefficients coerced into the field,
    duplicate paths merged, and zero terms dropped.  All terms of one
    relation must be parallel (same source and target) and of length >= 2;
    relations that collapse to nothing are discarded.
    """
    out = []
    for rel in relations:
        acc = {}
        ends = None
        for coeff, path in rel:
            if not isinstance(path, Path):
                raise InvalidRelationError(
                    "relation term %r is not a path" % (path,))
            p = quiver.path(path.source, path.arrows)
            if p.target != path.target:
                raise InvalidRelationError(
                    "path %s claims target %s but walks to %s"
                    % (p, path.target, p.target))
            if p.length < 2:
                raise NotAdmissibleError(
                    "relation term %s has length %d; admissible ideals need "
                    "terms of length >= 2" % (p, p.length))
            c = field.coerce(coeff)
            if field.is_zero(c):
                continue
            if ends is None:
                ends = (p.source, p.target)
            elif ends != (p.source, p.target):
                raise InvalidRelationError(
                    "relation mixes terms %s -> %s and %s -> %s"
                    % (ends[0], ends[1], p.source, p.target))
            acc[p] = field.add(acc.get(p, field.zero()), c)
        terms = [(c, p) for p, c in acc.items() if not field.is_zero(c)]
        terms.sort(key=lambda t: path_sort_key(t[1]))
        if terms:
            out.append(terms)
    return out


def _enumerate_paths(quiver, cap, max_paths, monomials):
    """All paths of length <= cap that avoid every monomial relation as a
    consecutive factor, grouped by length, each stratum sorted.

    Paths containing a monomial factor are zero in the quotient, so leaving
    them out just works in a smaller coordinate system; it is also what
    keeps cyclic quivers from exploding.
    """
    strata = [sorted((quiver.stationary(v) for v in quiver.vertices),
                     key=path_sort_key)]
    total = len(strata[0])
    for _ in range(cap):
        cur = []
        for p in strata[-1]:
            for a in quiver.arrows_from(p.target):
                names = p.arrows + (a.name,)
                if any(names[len(names) - len(m):] == m
                       for m in monomials if len(m) <= len(names)):
                    continue
                cur.append(Path(p.source, names, a.target))
                total += 1
                if total > max_paths:
                    raise ExplosionGuardError(
                        "more than %d paths enumerated before the build "
                        "closed up" % max_paths)
        if not cur:
            break
        cur.sort(key=path_sort_key)
        strata.append(cur)
    return strata


def build_algebra(quiver, relations=(), field=None,
                  length_cap=DEFAULT_LENGTH_CAP, max_paths=DEFAULT_MAX_PATHS):
    """Construct the quotient of the path algebra kQ by the two-sided ideal
    generated by the relations, with an exact normal-path basis.

    relations: iterable of term lists [(coefficient, Path), ...].
    Raises NotAdmissibleError for terms of length < 2,
    PossiblyInfiniteDimensionalError when no radical power vanishes within
    length_cap, and ExplosionGuardError when path enumeration exceeds
    max_paths.
    """
    if field is None:
        field = Rationals()
    rels = validate_relations(quiver, relations, field)
    monomials = [rel[0][1].arrows for rel in rels if len(rel) == 1]
    cap = min(8, length_cap)
    while True:
        built = _attempt(quiver, rels, field, cap, max_paths, monomials)
        if built is not None:
            return built
        if cap >= length_cap:
            raise PossiblyInfiniteDimensionalError(
                "no radical power vanished within length cap %d; the "
                "algebra may be infinite dimensional" % length_cap)
        cap = min(2 * cap, length_cap)


def _attempt(quiver, rels, field, cap, max_paths, monomials):
    """One build attempt with a fixed working length cap.

    Returns the finished Algebra, or None when no stratum died within the
    cap (caller then retries with a larger one).
    """
    strata = _enumerate_paths(quiver, cap, max_paths, monomials)
    top = len(strata) - 1
    cols = [p for stratum in strata for p in stratum]
    index = {p: i for i, p in enumerate(cols)}

    ending = {}
    starting = {}
    for p in cols:
        ending.setdefault(p.target, []).append(p)
        starting.setdefault(p.source, []).append(p)

    # Rows span the image of the two-sided ideal: u.g.v for every relation
    # g and all flanking paths u, v, truncated to the working cap.
    elim = Eliminator(field)
    for rel in rels:
        src = rel[0][1].source
        tgt = rel[0][1].target
        minlen = rel[0][1].length
        for u in ending.get(src, ()):
            if u.length + minlen > cap:
                continue
            for v in starting.get(tgt, ()):
                room = cap - u.length - v.length
                if room < minlen:
                    continue
                row = {}
                for c, p in rel:
                    if p.length > room:
                        break
                    full = Path(u.source, u.arrows + p.arrows + v.arrows,
                                v.target)
                    col = index.get(full)
                    if col is not None:
                        row[col] = c
                if row:
                    elim.add(row)

    pivots = elim.pivot_indices()
    alive = [any(index[p] not in pivots for p in stratum)
             for stratum in strata]
    n = None
    for length, ok in enumerate(alive):
        if not ok:
            n = length
            break
    if n is None:
        if top < cap:
            n = top + 1          # the quiver ran out of paths on its own
        else:
            return None          # no dead stratum yet; cap was too small

    # Death must propagate upward; a violation would mean the elimination
    # is wrong, so it is a hard assertion, not an input error.
    assert not any(alive[n:]), "a stratum above the first dead one survived"

    normal = [p for stratum in strata[:n] for p in stratum
              if index[p] not in pivots]
    reduction = {}
    for piv, row in elim.rows.items():
        p = cols[piv]
        if p.length >= n:
            assert len(row) == 1, "pivot beyond the cut still has a tail"
            continue
        tail = {}
        for col, c in row.items():
            if col != piv:
                q = cols[col]
                assert q.length < n
                tail[q] = field.neg(c)
        reduction[p] = tail
    return Algebra(quiver, rels, field, normal, reduction, n)


class Algebra:
    """A finite dimensional path algebra quotient with exact arithmetic.

    Instances are immutable; every query is pure.  The basis consists of
    the normal paths, graded by length, and `nilpotency` is the least n
    with rad^n = 0.
    """

    def __init__(self, quiver, relations, field, normal_paths, reduction,
                 nilpotency):
        self.quiver = quiver
        self.relations = relations
        self.field = field
        self.normal_paths = list(normal_paths)
        self.nilpotency = nilpotency
        self._reduction = reduction
        self._index = {p: i for i, p in enumerate(self.normal_paths)}
        self._slots = {}
        for p in self.normal_paths:
            self._slots.setdefault((p.source, p.target), []).append(p)

    @property
    def dim(self) -> int:
        return len(self.normal_paths)

    def __repr__(self):
        return "Algebra(dim=%d, nilpotency=%d, field=%s)" % (
            self.dim, self.nilpotency, self.field.name)

    def slot_basis(self, source, target):
        """Normal paths spanning the slot e_target . A . e_source."""
        return list(self._slots.get((source, target), ()))

    def slot_dims(self):
        """{(source, target): dimension} over the nonzero slots."""
        return {k: len(v) for k, v in sorted(self._slots.items())}

    # -- reduction ---------------------------------------------------------

    def _reduce_path(self, path):
        """Normal form of a path image as {normal path: coefficient}."""
        if path.length >= self.nilpotency:
            return {}
        if path in self._index:
            return {path: self.field.one()}
        tail = self._reduction.get(path)
        if tail is None:
            # not enumerated: the path contains a monomial relation factor
            return {}
        return dict(tail)

    def path_is_zero(self, path) -> bool:
        return not self._reduce_path(path)

    # -- element constructors ----------------------------------------------

    def element(self, path, coeff=None):
        """The image of a path, optionally scaled."""
        comps = self._reduce_path(path)
        if coeff is not None:
            c = self.field.coerce(coeff)
            comps = {p: self.field.mul(c, v) for p, v in comps.items()}
        return Element(self, path.source, path.target, comps)

    def stationary_element(self, v):
        return self.element(self.quiver.stationary(v))

    def arrow_element(self, name):
        a = self.quiver.arrow(name)
        return self.element(Path(a.source, (a.name,), a.target))

    def zero_element(self, source, target):
        return Element(self, source, target, {})

    def combine(self, terms):
        """Linear combination of parallel path images."""
        f = self.field
        ends = None
        comps = {}
        for coeff, path in terms:
            if ends is None:
                ends = (path.source, path.target)
            elif ends != (path.source, path.target):
                raise InvalidRelationError(
                    "combination mixes %s -> %s and %s -> %s"
                    % (ends[0], ends[1], path.source, path.target))
            c = f.coerce(coeff)
            for q, v in self._reduce_path(path).items():
                val = f.add(comps.get(q, f.zero()), f.mul(c, v))
                if f.is_zero(val):
                    comps.pop(q, None)
                else:
                    comps[q] = val
        if ends is None:
            raise InvalidRelationError("empty combination has no vertex pair")
        return Element(self, ends[0], ends[1], comps)

    # -- path scans ----------------------------------------------------------

    def nonzero_paths(self, max_count=10_000, include_stationary=False):
        """All paths with nonzero image, shortest first.

        BFS with pruning: extensions of a path that already died are dead
        too, so the scan terminates below the nilpotency bound.  More than
        max_count survivors raise ExplosionGuardError.
        """
        out = []
        frontier = [self.quiver.stationary(v) for v in self.quiver.vertices]
        if include_stationary:
            out.extend(frontier)
        while frontier:
            nxt = []
            for p in frontier:
                for a in self.quiver.arrows_from(p.target):
                    q = Path(p.source, p.arrows + (a.name,), a.target)
                    if self.path_is_zero(q):
                        continue
                    nxt.append(q)
                    if len(out) + len(nxt) > max_count:
                        raise ExplosionGuardError(
                            "more than %d nonzero paths" % max_count)
            out.extend(sorted(nxt, key=path_sort_key))
            frontier = nxt
        return out


class Element:
    """A slot-homogeneous algebra element: a linear combination of normal
    paths sharing one (source, target) pair.  The zero element still knows
    its slot."""

    __slots__ = ("algebra", "source", "target", "comps")

    def __init__(self, algebra, source, target, comps):
        self.algebra = algebra
        self.source = source
        self.target = target
        self.comps = {p: c for p, c in comps.items()
                      if not algebra.field.is_zero(c)}

    def is_zero(self) -> bool:
        return not self.comps

    def _check_compatible(self, other):
        if not isinstance(other, Element) or self.algebra is not other.algebra:
            raise ValueError("elements belong to different algebras")
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError(
                "elements live in different slots: %s->%s vs %s->%s"
                % (self.source, self.target, other.source, other.target))

    def __add__(self, other):
        self._check_compatible(other)
        f = self.algebra.field
        comps = dict(self.comps)
        for p, c in other.comps.items():
            val = f.add(comps.get(p, f.zero()), c)
            if f.is_zero(val):
                comps.pop(p, None)
            else:
                comps[p] = val
        return Element(self.algebra, self.source, self.target, comps)

    def __neg__(self):
        f = self.algebra.field
        return Element(self.algebra, self.source, self.target,
                       {p: f.neg(c) for p, c in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, coeff):
        f = self.algebra.field
        c = f.coerce(coeff)
        return Element(self.algebra, self.source, self.target,
                       {p: f.mul(c, v) for p, v in self.comps.items()})

    def __mul__(self, other):
        """Composition product: in f * g the factor g is walked first."""
        if not isinstance(other, Element):
            return NotImplemented
        if self.algebra is not other.algebra:
            raise ValueError("elements belong to different algebras")
        if other.target != self.source:
            raise ValueError(
                "cannot compose: %s->%s after %s->%s"
                % (self.source, self.target, other.source, other.target))
        f = self.algebra.field
        comps = {}
        for pg, cg in other.comps.items():
            for pf, cf in self.comps.items():
                c = f.mul(cg, cf)
                full = Path(pg.source, pg.arrows + pf.arrows, pf.target)
                for q, v in self.algebra._reduce_path(full).items():
                    val = f.add(comps.get(q, f.zero()), f.mul(c, v))
                    if f.is_zero(val):
                        comps.pop(q, None)
                    else:
                        comps[q] = val
        return Element(self.algebra, other.source, self.target, comps)

    def vector(self):
        """Sparse coordinates over the algebra's whole normal-path basis."""
        idx = self.algebra._index
        return {idx[p]: c for p, c in self.comps.items()}

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if self.algebra is not other.algebra:
            return False
        if (self.source, self.target) != (other.source, other.target):
            return False
        if set(self.comps) != set(other.comps):
            return False
        f = self.algebra.field
        return all(f.eq(c, other.comps[p]) for p, c in self.comps.items())

    __hash__ = None

    def __repr__(self):
        if not self.comps:
            return "<0 : %s->%s>" % (self.source, self.target)
        bits = ["%s*%s" % (self.comps[p], p)
                for p in sorted(self.comps, key=path_sort_key)]
        return "<%s>" % " + ".join(bits)


def multiply(algebra, f, g):
    """Product f.g in the algebra; g is walked first, then f."""
    if f.algebra is not algebra or g.algebra is not algebra:
        raise ValueError("elements do not belong to the given algebra")
    return f * g


def slot_radical_dims(algebra, source, target):
    """Dimensions of the bimodule radical powers of one slot, ending at 0.

    The radical of a subbimodule J of e_y A e_x is (rad of the y corner
    ring) . J + J . (rad of the x corner ring); iterating from the full
    slot gives the filtration whose layer sizes drive the distributivity
    analysis."""
    base = [algebra.element(p) for p in algebra.slot_basis(source, target)]
    if not base:
        return [0]
    lefts = [algebra.element(p)
             for p in algebra.slot_basis(target, target) if p.length]
    rights = [algebra.element(p)
              for p in algebra.slot_basis(source, source) if p.length]
    dims = [len(base)]
    cur = base
    while cur:
        elim = Eliminator(algebra.field)
        nxt = []
        for v in cur:
            for l in lefts:
                w = l * v
                if not w.is_zero() and elim.add(w.vector()) is not None:
                    nxt.append(w)
            for r in rights:
                w = v * r
                if not w.is_zero() and elim.add(w.vector()) is not None:
                    nxt.append(w)
        dims.append(len(nxt))
        cur = nxt
    return dims


def radical_power_dims(algebra):
    """{(source, target): [dim rad^i of the slot bimodule]} over all vertex
    pairs; each sequence is weakly decreasing and ends with 0."""
    out = {}
    for x in algebra.quiver.vertices:
        for y in algebra.quiver.vertices:
            out[(x, y)] = slot_radical_dims(algebra, x, y)
    return out


def socle(algebra):
    """Basis of the two-sided socle S = {f in N : N f = f N = 0}.

    N is the radical, spanned by the normal paths of positive length.  It
    is enough to test annihilation by single arrows on both sides, because
    every element of N is a combination of arrow products.  Returned slot
    by slot in sorted order."""
    out = []
    stride = max(algebra.dim, 1)
    for (x, y) in sorted(algebra._slots):
        cand = [p for p in algebra._slots[(x, y)] if p.length]
        if not cand:
            continue
        lefts = [algebra.arrow_element(a.name)
                 for a in algebra.quiver.arrows_from(y)]
        rights = [algebra.arrow_element(a.name)
                  for a in algebra.quiver.arrows_to(x)]
        stacked = []
        for p in cand:
            v = algebra.element(p)
            row = {}
            for k, l in enumerate(lefts):
                for col, c in (l * v).vector().items():
                    row[k * stride + col] = c
            off = len(lefts)
            for k, r in enumerate(rights):
                for col, c in (v * r).vector().items():
                    row[(off + k) * stride + col] = c
            stacked.append(row)
        for combo in kernel_combos(algebra.field, stacked):
            comps = {cand[j]: c for j, c in combo.items()}
            out.append(Element(algebra, x, y, comps))
    return out
