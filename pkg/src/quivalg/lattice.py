"""Distributivity analysis of slot bimodules.

A slot e_y A e_x carries the filtration by bimodule radical powers; the
layer dimensions (the "profile") decide distributivity of its subbimodule
lattice: every layer has dimension <= 1 exactly when the lattice is a
chain.  A pair with a fat layer is critical, and the classification of the
almost-distributive cases splits into three shapes checked by trichotomy().

slot_lattice_distributive() is the independent brute-force oracle: over
GF(2) and in dimension <= 6 it enumerates the whole subbimodule lattice and
checks the distributive law on all triples.
"""

from dataclasses import dataclass

from .algebra import radical_power_dims, slot_radical_dims, socle
from .errors import QuivalgError
from .quiver import Path


@dataclass(frozen=True)
class BimoduleProfile:
    """Radical layer dimensions dim(rad^i / rad^{i+1}) of one slot.

    The last entry is always 0 (the filtration has terminated); the sum of
    the entries is the slot dimension."""

    source: str
    target: str
    dims: tuple

    @property
    def pair(self):
        return (self.source, self.target)

    def critical_index(self):
        """Smallest layer of dimension >= 2, or None when the slot is thin
        all the way down."""
        for i, d in enumerate(self.dims):
            if d >= 2:
                return i
        return None


@dataclass(frozen=True)
class CriticalPair:
    source: str
    target: str
    index: int


@dataclass(frozen=True)
class TrichotomyReport:
    """Outcome of the necessary-conditions classification.

    verdict is one of "Distributive", "Type1", "Type2", "Type3",
    "NotMinimalNonDistributive"; in the last case `witness` names the
    condition that failed.  Passing is necessary, not sufficient: only the
    recognizer certifies membership in a family."""

    verdict: str
    critical_pair: CriticalPair = None
    socle_dim: int = 0
    witness: str = None


def profiles(algebra):
    """BimoduleProfile for every nonzero slot, sorted by vertex pair."""
    out = []
    for (x, y), dims in sorted(radical_power_dims(algebra).items()):
        if dims == [0]:
            continue
        layers = tuple(dims[i] - dims[i + 1]
                       for i in range(len(dims) - 1)) + (0,)
        out.append(BimoduleProfile(x, y, layers))
    return out


def is_distributive(algebra):
    """(flag, profiles): flag is True iff every radical layer of every slot
    has dimension at most 1."""
    profs = profiles(algebra)
    flag = all(d <= 1 for pr in profs for d in pr.dims)
    return flag, profs


def critical_pairs(algebra):
    """All vertex pairs whose slot has a layer of dimension >= 2, each with
    the index of the first such layer."""
    out = []
    for pr in profiles(algebra):
        i = pr.critical_index()
        if i is not None:
            out.append(CriticalPair(pr.source, pr.target, i))
    return out


def thick_points(algebra):
    """Vertices x with dim e_x A e_x >= 2."""
    return [v for v in algebra.quiver.vertices
            if len(algebra.slot_basis(v, v)) >= 2]


def is_node(algebra, x):
    """True when every length-2 path through x is zero in the algebra."""
    for a in algebra.quiver.arrows_to(x):
        for b in algebra.quiver.arrows_from(x):
            if not algebra.path_is_zero(
                    Path(a.source, (a.name, b.name), b.target)):
                return False
    return True


def _annihilated_by_arrows(algebra, v):
    for a in algebra.quiver.arrows_from(v.target):
        if not (algebra.arrow_element(a.name) * v).is_zero():
            return False
    for a in algebra.quiver.arrows_to(v.source):
        if not (v * algebra.arrow_element(a.name)).is_zero():
            return False
    return True


def long_paths(algebra, max_paths=10_000):
    """All paths with nonzero image lying in the socle."""
    return [p for p in algebra.nonzero_paths(max_count=max_paths)
            if _annihilated_by_arrows(algebra, algebra.element(p))]


def _fail(pair, socle_dim, witness):
    return TrichotomyReport("NotMinimalNonDistributive", pair, socle_dim,
                            witness)


def trichotomy(algebra):
    """Classify a built algebra as Distributive, one of the three
    non-distributive candidate shapes, or NotMinimalNonDistributive with
    the failed necessary condition named.

    The checks run in order: unique critical pair; the critical layer is
    2-dimensional and final; the socle is that layer's slot and has
    dimension 2; then the shape conditions of the matching type.
    """
    flag, _ = is_distributive(algebra)
    pairs = critical_pairs(algebra)
    soc = socle(algebra)
    sdim = len(soc)
    if flag:
        return TrichotomyReport("Distributive", None, sdim, None)
    if len(pairs) != 1:
        return _fail(None, sdim, "%d critical pairs instead of one"
                     % len(pairs))
    pair = pairs[0]
    a, z, i = pair.source, pair.target, pair.index

    rd = slot_radical_dims(algebra, a, z)
    radl = lambda k: rd[k] if k < len(rd) else 0
    if radl(i) != 2:
        return _fail(pair, sdim,
                     "critical layer has dimension %d, not 2" % radl(i))
    if radl(i + 1) != 0:
        return _fail(pair, sdim,
                     "the slot radical does not vanish above the critical "
                     "index")
    if sdim != 2:
        return _fail(pair, sdim, "socle dimension is %d, not 2" % sdim)
    if any((s.source, s.target) != (a, z) for s in soc):
        return _fail(pair, sdim,
                     "socle not concentrated at the critical pair")

    corner_a = slot_radical_dims(algebra, a, a)
    corner_z = slot_radical_dims(algebra, z, z)

    if a == z:
        if i != 1:
            return _fail(pair, sdim,
                         "one-point critical pair with index %d, not 1" % i)
        if corner_a != [3, 2, 0]:
            return _fail(pair, sdim,
                         "corner ring is not 3-dimensional with square-zero "
                         "radical")
        if not is_node(algebra, a):
            return _fail(pair, sdim, "critical point is not a node")
        return TrichotomyReport("Type1", pair, sdim, None)

    if i == 0:
        if algebra.quiver.in_degree(a):
            return _fail(pair, sdim, "critical source has incoming arrows")
        if algebra.quiver.out_degree(z):
            return _fail(pair, sdim, "critical sink has outgoing arrows")
        if corner_a != [1, 0] or corner_z != [1, 0]:
            return _fail(pair, sdim, "corner rings are not both trivial")
        if algebra.slot_basis(z, a):
            return _fail(pair, sdim, "paths run from the sink back to the "
                                     "source")
        return TrichotomyReport("Type2", pair, sdim, None)

    if i == 1:
        if corner_a != [2, 1, 0] or corner_z != [2, 1, 0]:
            return _fail(pair, sdim,
                         "corner rings are not both 2-dimensional local "
                         "with square-zero radical")
        if rd[0] != 3:
            return _fail(pair, sdim,
                         "critical slot has dimension %d, not 3" % rd[0])
        if algebra.slot_basis(z, a):
            return _fail(pair, sdim, "paths run from the target corner back")
        s = algebra.element([p for p in algebra.slot_basis(a, a)
                             if p.length][0])
        r = algebra.element([p for p in algebra.slot_basis(z, z)
                             if p.length][0])
        t = _slot_top_element(algebra, a, z)
        if t is None:
            return _fail(pair, sdim, "critical slot has no top generator")
        ts = t * s
        rt = r * t
        if not (s * s).is_zero() or not (r * r).is_zero():
            return _fail(pair, sdim, "a corner generator does not square to "
                                     "zero")
        if ts.is_zero() or rt.is_zero():
            return _fail(pair, sdim, "a one-sided corner product vanishes")
        if not (r * ts).is_zero():
            return _fail(pair, sdim, "the two-sided corner product does not "
                                     "vanish")
        return TrichotomyReport("Type3", pair, sdim, None)

    return _fail(pair, sdim, "critical index %d matches no type" % i)


def _slot_top_element(algebra, x, y):
    """A basis path of the slot lying outside its bimodule radical."""
    from ._linalg import Eliminator

    lefts = [algebra.element(p) for p in algebra.slot_basis(y, y) if p.length]
    rights = [algebra.element(p) for p in algebra.slot_basis(x, x)
              if p.length]
    elim = Eliminator(algebra.field)
    for p in algebra.slot_basis(x, y):
        v = algebra.element(p)
        for l in lefts:
            elim.add((l * v).vector())
        for r in rights:
            elim.add((v * r).vector())
    for p in algebra.slot_basis(x, y):
        if not elim.contains({algebra._index[p]: algebra.field.one()}):
            return algebra.element(p)
    return None


# ---------------------------------------------------------------------------
# brute-force oracle over GF(2)

_BRUTE_DIM = 6
_BRUTE_LATTICE = 1 << _BRUTE_DIM


def slot_lattice_distributive(algebra, source, target):
    """Exhaustively decide distributivity of one slot's subbimodule lattice.

    Only over GF(2) and slot dimension <= 6: vectors become bitmasks,
    subbimodules become frozensets of masks.  The lattice is generated from
    the cyclic subbimodules by joins; a distributive lattice of height <= 6
    has at most 64 elements, so growing past that is already a verdict.
    """
    if algebra.field.char != 2:
        raise QuivalgError("the brute-force oracle runs over PrimeField(2)")
    basis = algebra.slot_basis(source, target)
    k = len(basis)
    if k == 0:
        return True
    if k > _BRUTE_DIM:
        raise QuivalgError("slot dimension %d exceeds the brute-force "
                           "bound %d" % (k, _BRUTE_DIM))
    pos = {p: j for j, p in enumerate(basis)}

    def as_mask(el):
        m = 0
        for p in el.comps:
            m |= 1 << pos[p]
        return m

    mats = []
    for p in algebra.slot_basis(target, target):
        if p.length:
            l = algebra.element(p)
            mats.append([as_mask(l * algebra.element(b)) for b in basis])
    for p in algebra.slot_basis(source, source):
        if p.length:
            r = algebra.element(p)
            mats.append([as_mask(algebra.element(b) * r) for b in basis])

    def apply(mat, m):
        out = 0
        j = 0
        while m:
            if m & 1:
                out ^= mat[j]
            m >>= 1
            j += 1
        return out

    def closure(v):
        elems = {0, v}
        grew = True
        while grew:
            grew = False
            for e in list(elems):
                for mat in mats:
                    w = apply(mat, e)
                    if w not in elems:
                        elems |= {x ^ w for x in list(elems)}
                        grew = True
        return frozenset(elems)

    def join(u, v):
        return frozenset(x ^ y for x in u for y in v)

    zero = frozenset({0})
    lattice = {zero}
    queue = [closure(v) for v in range(1, 1 << k)]
    for c in queue:
        lattice.add(c)
    grew = True
    while grew:
        grew = False
        items = list(lattice)
        for i1 in range(len(items)):
            for i2 in range(i1 + 1, len(items)):
                j = join(items[i1], items[i2])
                if j not in lattice:
                    lattice.add(j)
                    grew = True
        if len(lattice) > _BRUTE_LATTICE:
            return False

    items = sorted(lattice, key=lambda s: (len(s), sorted(s)))
    n = len(items)
    where = {s: i for i, s in enumerate(items)}
    joins = [[where[join(items[i1], items[i2])] for i2 in range(n)]
             for i1 in range(n)]
    meets = [[where[items[i1] & items[i2]] for i2 in range(n)]
             for i1 in range(n)]
    for x in range(n):
        mx = meets[x]
        for y in range(n):
            for z in range(n):
                if mx[joins[y][z]] != joins[mx[y]][mx[z]]:
                    return False
    return True


def brute_force_distributive(algebra):
    """Oracle verdict for the whole algebra: every slot lattice passes the
    exhaustive check."""
    for x in algebra.quiver.vertices:
        for y in algebra.quiver.vertices:
            if algebra.slot_basis(x, y) and \
                    not slot_lattice_distributive(algebra, x, y):
                return False
    return True
