"""Decide whether a built algebra is a family instance or a glued one.

The pipeline runs the trichotomy first, then shape probes matched to the
verdict.  Every positive answer is confirmed by rebuilding the named model
and transporting it onto the input: the probe's arrow assignment must send
every model relation to zero and the model basis to a spanning set, which
together force an isomorphism.  Negative answers come back as Refusal
values naming the failed condition, never as exceptions.
"""

from dataclasses import dataclass

from .errors import FamilyParameterError
from .families import gen_family
from .glueing import separate
from .lattice import thick_points, trichotomy
from .quiver import Path


@dataclass
class FamilyMatch:
    """A positive identification: tag, parameters, glued flag, and the
    correspondence (model vertex -> input vertex; model arrow -> linear
    combination of input paths given as (coefficient, arrow names))."""

    family: str
    params: tuple
    glued: bool
    vertex_map: dict
    arrow_images: dict

    @property
    def matched(self):
        return True

    @property
    def label(self):
        name = "%s(%s)" % (self.family, ",".join(map(str, self.params)))
        return name + " glued" if self.glued else name


@dataclass
class Refusal:
    """A negative answer carrying the probe that failed and why."""

    stage: str
    reason: str

    @property
    def matched(self):
        return False


# -- linear algebra over the coefficient field ------------------------------

def _reduce_with_combo(vectors, field):
    """Gaussian elimination over sparse vectors, tracking how each reduced
    row was combined from the inputs.  Returns the kernel combinations,
    one dict {input index: coefficient} per dependent vector."""
    rows = []
    kernels = []
    for i, vec in enumerate(vectors):
        row = dict(vec)
        combo = {i: field.one()}
        for pivot, prow, pcombo in rows:
            c = row.get(pivot)
            if c is None:
                continue
            for j, v in prow.items():
                val = field.sub(row.get(j, field.zero()), field.mul(c, v))
                if field.is_zero(val):
                    row.pop(j, None)
                else:
                    row[j] = val
            for j, v in pcombo.items():
                val = field.sub(combo.get(j, field.zero()),
                                field.mul(c, v))
                if field.is_zero(val):
                    combo.pop(j, None)
                else:
                    combo[j] = val
        if not row:
            kernels.append(combo)
        else:
            pivot = min(row)
            inv = field.inv(row[pivot])
            rows.append((pivot,
                         {j: field.mul(inv, v) for j, v in row.items()},
                         {j: field.mul(inv, v) for j, v in combo.items()}))
    return kernels


def _rank(vectors, field):
    return len(vectors) - len(_reduce_with_combo(vectors, field))


# -- transport confirmation --------------------------------------------------

def _materialize(algebra, recipe):
    terms = [(coeff, algebra.quiver.path_from_names(names))
             for coeff, names in recipe]
    return algebra.combine(terms)


def _image_of_path(algebra, vertex_map, images, path):
    if not path.arrows:
        return algebra.stationary_element(vertex_map[path.source])
    el = images[path.arrows[0]]
    for name in path.arrows[1:]:
        el = images[name] * el
    return el


def _transport_confirms(model, algebra, vertex_map, recipes):
    """True when the arrow assignment extends to an isomorphism from the
    model onto the input: equal dimension, model relations killed, and the
    model basis mapped to a spanning set."""
    if model.dim != algebra.dim:
        return False
    if sorted(vertex_map.values()) != sorted(algebra.quiver.vertices):
        return False
    images = {name: _materialize(algebra, recipe)
              for name, recipe in recipes.items()}
    for rel in model.relations:
        total = None
        for coeff, path in rel:
            term = _image_of_path(algebra, vertex_map, images,
                                  path).scaled(coeff)
            total = term if total is None else total + term
        if not total.is_zero():
            return False
    vectors = [_image_of_path(algebra, vertex_map, images, p).vector()
               for p in model.normal_paths]
    return _rank(vectors, algebra.field) == model.dim


# -- shape walking ------------------------------------------------------------

def _walk_chain(quiver, first, stops):
    """Follow the unique continuation of an arrow until a stop vertex.
    Interior vertices must be thin (one arrow in, one out); a branch,
    a merge, or a repeated vertex aborts the walk."""
    arrows = [first]
    seen = {first.source}
    v = first.target
    while v not in stops:
        if v in seen:
            return None
        seen.add(v)
        if quiver.in_degree(v) != 1 or quiver.out_degree(v) != 1:
            return None
        nxt = quiver.arrows_from(v)[0]
        arrows.append(nxt)
        v = nxt.target
    return arrows


def _covers(quiver, endpoints, walks):
    """The walks and endpoints account for every vertex and arrow exactly
    once (walk interiors are the targets of all but the last arrow)."""
    verts = list(endpoints)
    names = []
    for walk in walks:
        names.extend(ar.name for ar in walk)
        verts.extend(ar.target for ar in walk[:-1])
    return (len(set(verts)) == len(verts) == len(quiver.vertices)
            and len(set(names)) == len(names) == len(quiver.arrows))


def _walk_path(walk):
    return Path(walk[0].source,
                tuple(ar.name for ar in walk),
                walk[-1].target)


def _map_chain(model_quiver, prefix, walk, vertex_map, recipes, scale=None):
    """Bind the model chain prefix1..prefixN to an input walk arrow by
    arrow; the optional scale multiplies the first arrow's image."""
    for i, ar in enumerate(walk):
        name = "%s%d" % (prefix, i + 1)
        model_arrow = model_quiver.arrow(name)
        coeff = scale if (i == 0 and scale is not None) else 1
        recipes[name] = [(coeff, (ar.name,))]
        vertex_map[model_arrow.source] = ar.source
        vertex_map[model_arrow.target] = ar.target


# -- the probes, one family each ---------------------------------------------

def _match_a(algebra, a, z):
    q = algebra.quiver
    arms = []
    for first in q.arrows_from(a):
        walk = _walk_chain(q, first, {z})
        if walk is None:
            return Refusal("A", "the arm starting with %s does not run "
                           "cleanly to the sink" % first.name)
        arms.append(walk)
    arms.sort(key=len, reverse=True)
    if not _covers(q, [a, z], arms):
        return Refusal("A", "the two arms do not account for the whole "
                       "quiver")
    p, qq = len(arms[0]) - 1, len(arms[1]) - 1
    model = gen_family("A", (p, qq), field=algebra.field)
    vmap, recipes = {}, {}
    _map_chain(model.quiver, "f", arms[0], vmap, recipes)
    _map_chain(model.quiver, "g", arms[1], vmap, recipes)
    if not _transport_confirms(model.algebra, algebra, vmap, recipes):
        return Refusal("A", "the rebuilt two-arm model disagrees with the "
                       "input")
    return FamilyMatch("A", (p, qq), False, vmap, recipes)


def _match_b(algebra, a, z):
    q = algebra.quiver
    arms = []
    for first in q.arrows_from(a):
        walk = _walk_chain(q, first, {z})
        if walk is None:
            return Refusal("B", "the arm starting with %s does not run "
                           "cleanly to the sink" % first.name)
        arms.append(walk)
    arms.sort(key=len, reverse=True)
    if not _covers(q, [a, z], arms):
        return Refusal("B", "the three arms do not account for the whole "
                       "quiver")
    if len(arms[2]) != 2:
        return Refusal("B", "the shortest arm has length %d, not 2"
                       % len(arms[2]))
    p, qq = len(arms[0]) - 1, len(arms[1]) - 1
    try:
        model = gen_family("B", (p, qq), field=algebra.field)
    except FamilyParameterError as e:
        return Refusal("B", str(e))
    fld = algebra.field
    vectors = [algebra.element(_walk_path(w)).vector() for w in arms]
    kernels = _reduce_with_combo(vectors, fld)
    if len(kernels) != 1:
        return Refusal("B", "the three arm paths satisfy %d independent "
                       "relations instead of one" % len(kernels))
    combo = kernels[0]
    if any(i not in combo for i in range(3)):
        return Refusal("B", "an arm path drops out of the linear relation")
    vmap, recipes = {}, {}
    _map_chain(model.quiver, "f", arms[0], vmap, recipes, scale=combo[0])
    _map_chain(model.quiver, "g", arms[1], vmap, recipes, scale=combo[1])
    _map_chain(model.quiver, "h", arms[2], vmap, recipes, scale=combo[2])
    if not _transport_confirms(model.algebra, algebra, vmap, recipes):
        return Refusal("B", "the rebuilt three-arm model disagrees with "
                       "the input")
    return FamilyMatch("B", (p, qq), False, vmap, recipes)


def _cycle_at(algebra, b, z):
    """The thick point's outgoing pair: (arrow to the sink, cycle walk),
    or a Refusal."""
    q = algebra.quiver
    outs = q.arrows_from(b)
    if len(outs) != 2:
        return Refusal("cycle", "%d arrows leave the thick point, not 2"
                       % len(outs))
    to_sink = [ar for ar in outs if ar.target == z]
    if len(to_sink) != 1:
        return Refusal("cycle", "the thick point needs exactly one arrow "
                       "to the sink")
    be = to_sink[0]
    rho1 = outs[0] if outs[1] is be else outs[1]
    cycle = _walk_chain(q, rho1, {b})
    if cycle is None:
        return Refusal("cycle", "the arrows at the thick point do not "
                       "close into a clean cycle")
    return be, cycle


def _match_c(algebra, a, z, b):
    q = algebra.quiver
    al = q.arrows_from(a)[0]
    if al.target != b:
        return Refusal("C", "the single source arrow misses the thick "
                       "point")
    found = _cycle_at(algebra, b, z)
    if isinstance(found, Refusal):
        return found
    be, cycle = found
    if not _covers(q, [a, b, z], [[al], [be], cycle]):
        return Refusal("C", "the cycle and the two connecting arrows do "
                       "not account for the whole quiver")
    p = len(cycle)
    model = gen_family("C", (p,), field=algebra.field)
    vmap = {"a": a, "b": b, "z": z}
    recipes = {"al": [(1, (al.name,))], "be": [(1, (be.name,))]}
    _map_chain(model.quiver, "rho", cycle, vmap, recipes)
    if not _transport_confirms(model.algebra, algebra, vmap, recipes):
        return Refusal("C", "the rebuilt cycle model disagrees with the "
                       "input")
    return FamilyMatch("C", (p,), False, vmap, recipes)


def _match_d(algebra, a, z, b):
    q = algebra.quiver
    starts = q.arrows_from(a)
    to_thick = [ar for ar in starts if ar.target == b]
    if len(to_thick) != 1:
        return Refusal("D", "expected exactly one source arrow into the "
                       "thick point")
    al = to_thick[0]
    de1 = starts[0] if starts[1] is al else starts[1]
    found = _cycle_at(algebra, b, z)
    if isinstance(found, Refusal):
        return found
    be, cycle = found
    arm = _walk_chain(q, de1, {z})
    if arm is None:
        return Refusal("D", "the second source arrow does not start a "
                       "clean arm to the sink")
    if not _covers(q, [a, b, z], [[al], [be], cycle, arm]):
        return Refusal("D", "cycle plus arm do not account for the whole "
                       "quiver")
    p, qq = len(cycle), len(arm) - 1
    try:
        model = gen_family("D", (p, qq), field=algebra.field)
    except FamilyParameterError as e:
        return Refusal("D", str(e))
    fld = algebra.field
    direct = Path(a, (al.name, be.name), z)
    long = Path(a, (al.name,) + tuple(ar.name for ar in cycle)
                + (be.name,), z)
    vectors = [algebra.element(direct).vector(),
               algebra.element(long).vector(),
               algebra.element(_walk_path(arm)).vector()]
    kernels = _reduce_with_combo(vectors, fld)
    if len(kernels) != 1 or 2 not in kernels[0]:
        return Refusal("D", "the arm path is not a combination of the two "
                       "routes through the thick point")
    combo = kernels[0]
    inv = fld.neg(fld.inv(combo[2]))
    x0 = fld.mul(inv, combo.get(0, fld.zero()))
    x1 = fld.mul(inv, combo.get(1, fld.zero()))
    if fld.is_zero(x0):
        return Refusal("D", "the arm path has no component on the direct "
                       "route through the thick point")
    vmap = {"a": a, "b": b, "z": z}
    recipes = {"al": [(1, (al.name,))],
               "be": [(x0, (be.name,)),
                      (x1, tuple(ar.name for ar in cycle) + (be.name,))]}
    _map_chain(model.quiver, "rho", cycle, vmap, recipes)
    _map_chain(model.quiver, "de", arm, vmap, recipes)
    if not _transport_confirms(model.algebra, algebra, vmap, recipes):
        return Refusal("D", "the rebuilt cycle-and-arm model disagrees "
                       "with the input")
    return FamilyMatch("D", (p, qq), False, vmap, recipes)


def _match_type2(algebra, pair):
    a, z = pair.source, pair.target
    thick = thick_points(algebra)
    if len(thick) > 1:
        return Refusal("type2", "%d thick points; the classified shapes "
                       "have at most one" % len(thick))
    starts = algebra.quiver.arrows_from(a)
    if not thick:
        if len(starts) == 2:
            return _match_a(algebra, a, z)
        if len(starts) == 3:
            return _match_b(algebra, a, z)
        return Refusal("type2", "%d arrows leave the source; two or three "
                       "are allowed without a thick point" % len(starts))
    if len(starts) == 1:
        return _match_c(algebra, a, z, thick[0])
    if len(starts) == 2:
        return _match_d(algebra, a, z, thick[0])
    return Refusal("type2", "%d arrows leave the source alongside a thick "
                   "point" % len(starts))


def _match_e(algebra, pair):
    a, z = pair.source, pair.target
    q = algebra.quiver
    outs = q.arrows_from(a)
    if len(outs) != 2:
        return Refusal("E", "%d arrows leave the source corner, not 2"
                       % len(outs))
    acycle = bridge = None
    for ar in outs:
        walk = _walk_chain(q, ar, {a, z})
        if walk is None:
            return Refusal("E", "the walk starting with %s neither closes "
                           "up nor reaches the sink corner" % ar.name)
        if walk[-1].target == a:
            if acycle is not None:
                return Refusal("E", "two cycles close up through the "
                               "source corner")
            acycle = walk
        else:
            if bridge is not None:
                return Refusal("E", "two bridges reach the sink corner")
            bridge = walk
    zouts = q.arrows_from(z)
    if len(zouts) != 1:
        return Refusal("E", "%d arrows leave the sink corner, not 1"
                       % len(zouts))
    zcycle = _walk_chain(q, zouts[0], {z})
    if zcycle is None:
        return Refusal("E", "the arrows at the sink corner do not close "
                       "into a clean cycle")
    if not _covers(q, [a, z], [acycle, bridge, zcycle]):
        return Refusal("E", "the two cycles and the bridge do not account "
                       "for the whole quiver")
    p, qq, r = len(zcycle), len(acycle), len(bridge)
    model = gen_family("E", (p, qq, r), field=algebra.field)
    vmap = {"a": a, "z": z}
    recipes = {}
    _map_chain(model.quiver, "al", acycle, vmap, recipes)
    _map_chain(model.quiver, "be", bridge, vmap, recipes)
    _map_chain(model.quiver, "ga", zcycle, vmap, recipes)
    if not _transport_confirms(model.algebra, algebra, vmap, recipes):
        return Refusal("E", "the rebuilt two-cycle model disagrees with "
                       "the input")
    return FamilyMatch("E", (p, qq, r), False, vmap, recipes)


def _match_glued(algebra, pair):
    x = pair.source
    q = algebra.quiver
    apart = separate(algebra, x)
    inner = recognize(apart)
    if not inner.matched:
        return Refusal("glued", "after separating %s: %s"
                       % (x, inner.reason))
    if inner.glued:
        return Refusal("glued", "separation left another glued point")
    split_src = apart.quiver.arrow(q.arrows_from(x)[0].name).source
    split_snk = apart.quiver.arrow(q.arrows_to(x)[0].name).target
    model = gen_family(inner.family, inner.params, glued=True,
                       field=algebra.field)
    vmap = {}
    for mv in model.quiver.vertices:
        if mv == "x":
            vmap[mv] = x
        else:
            iv = inner.vertex_map[mv]
            vmap[mv] = x if iv in (split_src, split_snk) else iv
    recipes = dict(inner.arrow_images)
    if not _transport_confirms(model.algebra, algebra, vmap, recipes):
        return Refusal("glued", "the rebuilt glued model disagrees with "
                       "the input")
    return FamilyMatch(inner.family, inner.params, True, vmap, recipes)


def recognize(algebra):
    """Identify a built algebra as a family instance, a glued family
    instance, or neither.  Returns FamilyMatch or Refusal; every match has
    been confirmed by transporting the rebuilt model onto the input."""
    rep = trichotomy(algebra)
    if rep.verdict == "Distributive":
        return Refusal("trichotomy", "the algebra is distributive")
    if rep.verdict == "NotMinimalNonDistributive":
        return Refusal("trichotomy", rep.witness)
    if rep.verdict == "Type1":
        return _match_glued(algebra, rep.critical_pair)
    if rep.verdict == "Type2":
        return _match_type2(algebra, rep.critical_pair)
    return _match_e(algebra, rep.critical_pair)
