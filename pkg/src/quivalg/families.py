"""Generators for the five named families and the dimension enumerator.

Each family lives on a fixed quiver shape with relation coefficients in
{-1, 0, 1}, so one instance makes sense over any exact field; the default
is the rationals.  Unglued instances always run from the unique source a to
the unique sink z, and the glued version merges those two endpoints.
"""

from dataclasses import dataclass

from .algebra import build_algebra
from .errors import FamilyParameterError, MonotonicityError
from .glueing import glue, presentations_isomorphic
from .quiver import Quiver, format_relation


@dataclass
class FamilyInstance:
    """One built member of a family: tag, parameter tuple, glued flag, and
    the algebra carrying its canonical presentation."""

    family: str
    params: tuple
    glued: bool
    algebra: object

    @property
    def quiver(self):
        return self.algebra.quiver

    @property
    def relations(self):
        return self.algebra.relations

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def label(self):
        name = "%s(%s)" % (self.family, ",".join(map(str, self.params)))
        return name + " glued" if self.glued else name

    def as_dict(self):
        q = self.quiver
        return {"family": self.family,
                "params": list(self.params),
                "glued": self.glued,
                "dim": self.dim,
                "vertices": list(q.vertices),
                "arrows": [[a.name, a.source, a.target] for a in q.arrows],
                "relations": [format_relation(r) for r in self.relations]}


def _chain(prefix, stops):
    """Arrows prefix1, prefix2, ... walking stops front to back."""
    return [("%s%d" % (prefix, i + 1), stops[i], stops[i + 1])
            for i in range(len(stops) - 1)]


def _cycle(prefix, stops):
    """Arrows walking stops front to back and wrapping around."""
    n = len(stops)
    return [("%s%d" % (prefix, i + 1), stops[i], stops[(i + 1) % n])
            for i in range(n)]


def _quiver_a(p, q):
    if not p >= q >= 0:
        raise FamilyParameterError(
            "A(p,q) needs p >= q >= 0; got (%d, %d)" % (p, q))
    top = ["a"] + ["a%d" % i for i in range(1, p + 1)] + ["z"]
    bot = ["a"] + ["b%d" % i for i in range(1, q + 1)] + ["z"]
    verts = ["a"] + top[1:-1] + bot[1:-1] + ["z"]
    return Quiver(verts, _chain("f", top) + _chain("g", bot)), []


def _quiver_b(p, q):
    if not ((q == 1 and p >= 1) or (q == 2 and 2 <= p <= 4)):
        raise FamilyParameterError(
            "B(p,q) allows q = 1 with p >= 1, or q = 2 with 2 <= p <= 4; "
            "got (%d, %d)" % (p, q))
    top = ["a"] + ["a%d" % i for i in range(1, p + 1)] + ["z"]
    mid = ["a"] + ["b%d" % i for i in range(1, q + 1)] + ["z"]
    verts = ["a"] + top[1:-1] + mid[1:-1] + ["c", "z"]
    quiv = Quiver(verts, _chain("f", top) + _chain("g", mid)
                  + _chain("h", ["a", "c", "z"]))
    rel = [(1, quiv.path("a", ["f%d" % i for i in range(1, p + 2)])),
           (1, quiv.path("a", ["g%d" % i for i in range(1, q + 2)])),
           (1, quiv.path("a", ["h1", "h2"]))]
    return quiv, [rel]


def _quiver_c(p):
    if p < 1:
        raise FamilyParameterError("C(p) needs p >= 1; got %d" % p)
    cyc = ["b"] + ["c%d" % i for i in range(1, p)]
    quiv = Quiver(["a"] + cyc + ["z"],
                  [("al", "a", "b")] + _cycle("rho", cyc)
                  + [("be", "b", "z")])
    # re-entering the cycle after a full turn is zero
    rel = [(1, quiv.path(cyc[-1], ["rho%d" % p, "rho1"]))]
    return quiv, [rel]


def _quiver_d(p, q):
    if p < 1 or q < 1:
        raise FamilyParameterError(
            "D(p,q) needs p, q >= 1; got (%d, %d)" % (p, q))
    cyc = ["b"] + ["c%d" % i for i in range(1, p)]
    arm = ["a"] + ["d%d" % i for i in range(1, q + 1)] + ["z"]
    quiv = Quiver(["a"] + cyc + arm[1:-1] + ["z"],
                  [("al", "a", "b")] + _cycle("rho", cyc)
                  + [("be", "b", "z")] + _chain("de", arm))
    # the long arm agrees with the short route through the cycle vertex
    rels = [[(1, quiv.path(cyc[-1], ["rho%d" % p, "rho1"]))],
            [(1, quiv.path("a", ["de%d" % i for i in range(1, q + 2)])),
             (-1, quiv.path("a", ["al", "be"]))]]
    return quiv, rels


def _quiver_e(p, q, r):
    if min(p, q, r) < 1:
        raise FamilyParameterError(
            "E(p,q,r) needs p, q, r >= 1; got (%d, %d, %d)" % (p, q, r))
    acyc = ["a"] + ["u%d" % i for i in range(1, q)]
    brid = ["a"] + ["t%d" % i for i in range(1, r)] + ["z"]
    zcyc = ["z"] + ["w%d" % i for i in range(1, p)]
    quiv = Quiver(acyc + brid[1:-1] + zcyc,
                  _cycle("al", acyc) + _chain("be", brid)
                  + _cycle("ga", zcyc))
    # both cycle wraps die, and so does the full sweep across the bridge
    sweep = ["al%d" % q] + ["be%d" % j for j in range(1, r + 1)] + ["ga1"]
    rels = [[(1, quiv.path(acyc[-1], ["al%d" % q, "al1"]))],
            [(1, quiv.path(zcyc[-1], ["ga%d" % p, "ga1"]))],
            [(1, quiv.path(acyc[-1], sweep))]]
    return quiv, rels


_SHAPES = {"A": ("(p, q)", _quiver_a),
           "B": ("(p, q)", _quiver_b),
           "C": ("(p,)", _quiver_c),
           "D": ("(p, q)", _quiver_d),
           "E": ("(p, q, r)", _quiver_e)}


def gen_family(family, params, glued=False, field=None):
    """Build one family instance over the given field.

    params is the parameter tuple (a bare int is accepted for C); glued
    merges the source and the sink after building.  Raises
    FamilyParameterError for unknown tags, out-of-range parameters, or an
    attempt to glue family E, whose endpoints both sit on cycles.
    """
    if isinstance(params, int):
        params = (params,)
    params = tuple(params)
    if family not in _SHAPES:
        raise FamilyParameterError("unknown family %r" % (family,))
    shape, builder = _SHAPES[family]
    if len(params) != builder.__code__.co_argcount:
        raise FamilyParameterError(
            "%s takes parameters %s; got %r" % (family, shape, params))
    if not all(isinstance(x, int) for x in params):
        raise FamilyParameterError(
            "parameters must be integers; got %r" % (params,))
    if glued and family == "E":
        raise FamilyParameterError(
            "family E cannot be glued: both endpoints lie on cycles")
    quiv, rels = builder(*params)
    alg = build_algebra(quiv, rels, field=field)
    if glued:
        alg = glue(alg, "a", "z")
    return FamilyInstance(family, params, bool(glued), alg)


def dimension(family, params, glued=False):
    """Dimension of the named instance (independent of the field)."""
    return gen_family(family, params, glued=glued).dim


def enumerate_dimension(d, field=None, jobs=None):
    """All family instances of dimension exactly d, glued versions
    included, pruned to one representative per isomorphism class.

    Each parameter sweep walks upward while the dimension stays within
    range, and the walk verifies at every step that the dimension really
    climbed; a violation raises MonotonicityError rather than silently
    truncating the list.  jobs > 1 runs the per-family sweeps in a thread
    pool; deduplication is always single threaded.
    """
    if d < 1:
        raise FamilyParameterError(
            "dimension must be a positive integer; got %r" % (d,))
    cap = d + 1  # a glued instance sits one below its unglued parent

    def walk(make, lo, hi=None):
        prev = None
        k = lo
        while hi is None or k <= hi:
            inst = make(k)
            if prev is not None and inst.dim <= prev:
                raise MonotonicityError(
                    "%s: dimension %d -> %d did not increase"
                    % (inst.label, prev, inst.dim))
            prev = inst.dim
            if inst.dim > cap:
                return
            yield inst
            k += 1

    def sweep_a():
        out = []
        for base in walk(lambda n: gen_family("A", (n, n), field=field), 0):
            q = base.params[1]
            out.extend(walk(
                lambda p, q=q: gen_family("A", (p, q), field=field), q))
        return out

    def sweep_b():
        out = list(walk(lambda p: gen_family("B", (p, 1), field=field), 1))
        out.extend(walk(lambda p: gen_family("B", (p, 2), field=field),
                        2, hi=4))
        return out

    def sweep_c():
        return list(walk(lambda p: gen_family("C", (p,), field=field), 1))

    def sweep_d():
        out = []
        for base in walk(lambda n: gen_family("D", (1, n), field=field), 1):
            q = base.params[1]
            out.extend(walk(
                lambda p, q=q: gen_family("D", (p, q), field=field), 1))
        return out

    def sweep_e():
        out = []
        for outer in walk(lambda n: gen_family("E", (1, 1, n), field=field),
                          1):
            r = outer.params[2]
            for mid in walk(
                    lambda n, r=r: gen_family("E", (1, n, r), field=field),
                    1):
                q = mid.params[1]
                out.extend(walk(
                    lambda p, q=q, r=r: gen_family("E", (p, q, r),
                                                   field=field), 1))
        return out

    sweeps = [sweep_a, sweep_b, sweep_c, sweep_d, sweep_e]
    if jobs and jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(lambda f: f(), sweeps))
    else:
        batches = [f() for f in sweeps]

    candidates = []
    for inst in (i for batch in batches for i in batch):
        if inst.dim == d:
            candidates.append(inst)
        elif inst.dim == d + 1 and inst.family != "E":
            candidates.append(gen_family(inst.family, inst.params,
                                         glued=True, field=field))

    kept = []
    for inst in candidates:
        dup = any(presentations_isomorphic(inst.quiver, inst.relations,
                                           other.quiver, other.relations,
                                           inst.algebra.field)
                  for other in kept)
        if not dup:
            kept.append(inst)
    kept.sort(key=lambda i: (i.family, i.glued, i.params))
    return kept
