"""The eight acceptance gates, one test per criterion.

Each criterion prints a single PASS or FAIL line straight to the terminal
(bypassing pytest's capture) so the verdicts are visible in a plain run.
Two gates are expected to fail and are marked strict-xfail rather than
weakened: the glueing census of the branching tree (the stated construction
yields 61 classes, not the quoted 53; both readings are computed and
printed) and the bent six-vertex patch for the direct-composite bridge
algebra (that slice provably carries no Euclidean patch at all; the three
star configurations all succeed and are asserted separately).
"""

import itertools
import random
import time

import pytest

from conftest import (alternating_square, deep_loop_bridge_loop, h_tree,
                      hub_loop_detour, hub_round_trip_detour,
                      hub_two_round_trips, loop_cubed_bridge)
from quivalg import (PrimeField, Quiver, brute_force_distributive,
                     build_algebra, census_glueings, critical_pairs,
                     enumerate_bands, enumerate_dimension, expand_cover,
                     field_by_name, find_euclidean_convex, gen_family, glue,
                     is_distributive, presentations_isomorphic,
                     radical_power_dims, recognize, relabel_quiver,
                     relabel_relations, rep_type_special_biserial, separate,
                     socle, trichotomy)
from quivalg.errors import FamilyParameterError, QuivalgError
from quivalg.recognize import _transport_confirms

_INSTANCES = None


def all_instances_to_dim_40():
    global _INSTANCES
    if _INSTANCES is None:
        found = []
        for d in range(1, 41):
            found.extend(enumerate_dimension(d))
        _INSTANCES = found
    return _INSTANCES


def say(capsys, line):
    with capsys.disabled():
        print(line, flush=True)


# -- criterion 1 -------------------------------------------------------------


def random_admissible_f2(rng, field):
    """A random admissible presentation over GF(2): up to 5 vertices and
    6 arrows (loops, cycles and parallels included), monomial and two-term
    relations, total dimension at most 12.  Samples whose slots exceed
    dimension 6 are redrawn, since the exhaustive lattice oracle is only
    defined up to that bound."""
    while True:
        nv = rng.randint(1, 5)
        verts = ["v%d" % i for i in range(nv)]
        arrows = [("a%d" % k, rng.choice(verts), rng.choice(verts))
                  for k in range(rng.randint(1, 6))]
        q = Quiver(verts, arrows)
        paths = []
        frontier = [q.path(a.source, [a.name]) for a in q.arrows]
        for _ in range(2):
            nxt = []
            for p in frontier:
                for a in q.arrows_from(p.target):
                    nxt.append(q.path(p.source, p.arrows + (a.name,)))
                if len(paths) + len(nxt) > 300:
                    break
            paths.extend(nxt)
            frontier = nxt
        if not paths:
            continue
        by_ends = {}
        for p in paths:
            by_ends.setdefault((p.source, p.target), []).append(p)
        buckets = list(by_ends.values())
        rows = []
        for _ in range(rng.randint(1, 7)):
            bucket = rng.choice(buckets)
            if len(bucket) >= 2 and rng.random() < 0.3:
                one, two = rng.sample(bucket, 2)
                rows.append([(1, one), (1, two)])
            else:
                rows.append([(1, rng.choice(bucket))])
        try:
            alg = build_algebra(q, rows, field=field,
                                length_cap=24, max_paths=4000)
        except QuivalgError:
            continue
        if alg.dim > 12:
            continue
        if any(len(alg.slot_basis(x, y)) > 6 for x in verts for y in verts):
            continue
        return alg


def test_criterion_1_distributivity_oracle_agreement(capsys):
    rng = random.Random(20260819)
    field = PrimeField(2)
    start = time.monotonic()
    flags = []
    for _ in range(200):
        alg = random_admissible_f2(rng, field)
        fast = is_distributive(alg)[0]
        assert fast == brute_force_distributive(alg)
        flags.append(fast)
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    say(capsys, "criterion 1: PASS (200/200 oracle agreements, "
                "%d distributive / %d not, %.1fs)"
        % (flags.count(True), flags.count(False), elapsed))


# -- criterion 2 -------------------------------------------------------------


def test_criterion_2_trichotomy_conformance(capsys):
    count = 0
    for inst in all_instances_to_dim_40():
        report = trichotomy(inst.algebra)
        want = "Type1" if inst.glued else \
            ("Type3" if inst.family == "E" else "Type2")
        assert report.verdict == want, (inst.family, inst.params, inst.glued)
        assert report.socle_dim == 2
        assert len(critical_pairs(inst.algebra)) == 1
        count += 1
    say(capsys, "criterion 2: PASS (%d instances of dim <= 40, "
                "every verdict as the family predicts)" % count)


# -- criterion 3 -------------------------------------------------------------


def rad2_perturb(quiver, relations, rng):
    """Rewrite the presentation without moving the ideal: up to three row
    operations, each adding a path multiple of some row (a radical-square
    tail when the row is reused) to another row."""
    rows = [list(r) for r in relations]
    if not rows:
        return rows
    paths = {}
    for v in quiver.vertices:
        paths.setdefault((v, v), []).append(quiver.stationary(v))
    for a in quiver.arrows:
        paths.setdefault((a.source, a.target), []).append(
            quiver.path(a.source, [a.name]))
        for b in quiver.arrows_from(a.target):
            paths.setdefault((a.source, b.target), []).append(
                quiver.path(a.source, [a.name, b.name]))
    ops = attempts = 0
    while ops < 3 and attempts < 60:
        attempts += 1
        i = rng.randrange(len(rows))
        j = rng.randrange(len(rows))
        si, ti = rows[i][0][1].source, rows[i][0][1].target
        sj, tj = rows[j][0][1].source, rows[j][0][1].target
        lefts = paths.get((si, sj), [])
        rights = paths.get((tj, ti), [])
        if not lefts or not rights:
            continue
        left = rng.choice(lefts)
        right = rng.choice(rights)
        if i == j and left.length + right.length == 0:
            continue
        scale = rng.choice([1, 2, 3])
        rows[i] = rows[i] + [
            (scale * coeff,
             quiver.path(left.source,
                         left.arrows + mid.arrows + right.arrows))
            for coeff, mid in rows[j]]
        ops += 1
    return rows


def test_criterion_3_recognizer_round_trip(capsys):
    rng = random.Random(42)
    count = 0
    for inst in all_instances_to_dim_40():
        verts = list(inst.quiver.vertices)
        arrs = [a.name for a in inst.quiver.arrows]
        shuffled_v, shuffled_a = verts[:], arrs[:]
        rng.shuffle(shuffled_v)
        rng.shuffle(shuffled_a)
        vmap = {v: "V" + s for v, s in zip(verts, shuffled_v)}
        amap = {a: "R" + s for a, s in zip(arrs, shuffled_a)}
        quiver = relabel_quiver(inst.quiver, vmap, amap)
        rows = rad2_perturb(quiver,
                            relabel_relations(inst.relations, vmap, amap),
                            rng)
        algebra = build_algebra(quiver, rows)
        match = recognize(algebra)
        assert match.matched, (inst.family, inst.params, inst.glued,
                               getattr(match, "reason", None))
        assert (match.family, match.params, match.glued) \
            == (inst.family, inst.params, inst.glued)
        # rebuild-and-compare: the named model transports onto the input
        model = gen_family(match.family, match.params, glued=match.glued,
                           field=algebra.field)
        assert model.algebra.dim == algebra.dim
        moved = {(match.vertex_map[u], match.vertex_map[v]): dims
                 for (u, v), dims in
                 radical_power_dims(model.algebra).items()}
        assert moved == radical_power_dims(algebra)
        assert _transport_confirms(model.algebra, algebra, match.vertex_map,
                                   match.arrow_images)
        count += 1
    say(capsys, "criterion 3: PASS (%d instances recovered through "
                "relabeling plus radical-tail rewrites, all rebuilds "
                "confirmed)" % count)


# -- criterion 4 -------------------------------------------------------------


def test_criterion_4_dimension_enumeration(capsys):
    per_dim = {}
    for d in range(1, 26):
        entries = enumerate_dimension(d)
        per_dim[d] = [(i.family, i.params, i.glued) for i in entries]
        for inst in entries:
            assert inst.algebra.dim == d
        for one, two in itertools.combinations(entries, 2):
            assert not presentations_isomorphic(
                one.quiver, one.relations, two.quiver, two.relations,
                one.algebra.field), (one.family, one.params,
                                     two.family, two.params)
    assert per_dim[1] == [] and per_dim[2] == []
    assert per_dim[3] == [("A", (0, 0), True)]
    assert ("A", (0, 0), False) in per_dim[4]
    for name in ("f2", "f3"):
        fld = field_by_name(name)
        for d in range(1, 26):
            entries = enumerate_dimension(d, field=fld)
            assert [(i.family, i.params, i.glued) for i in entries] \
                == per_dim[d]
            assert all(i.algebra.dim == d for i in entries)
    total = sum(len(v) for v in per_dim.values())
    say(capsys, "criterion 4: PASS (%d instances across dims 1..25, "
                "pairwise non-isomorphic, spot values hold, identical "
                "over q/f2/f3)" % total)


# -- criterion 5 -------------------------------------------------------------


@pytest.mark.xfail(strict=True,
                   reason="the stated census construction yields 61 "
                          "isomorphism classes on the branching tree, not "
                          "the quoted 53; both readings are computed and "
                          "printed before the equality is asserted")
def test_criterion_5_glueing_census(capsys):
    q, rels = h_tree()
    algebra = build_algebra(q, rels)
    start = time.monotonic()
    census = census_glueings(algebra)
    elapsed = time.monotonic() - start
    assert elapsed < 30.0
    # alternative properness reading: additionally drop the all-in-one
    # partition; it merges the sibling arms, so it is already improper
    # and the count cannot move
    alternative = sum(1 for part, _ in census.representatives
                      if len(part.blocks) >= 2)
    # the two-point representative with a loop dying at the fourth power
    # and a crossing arrow dying after three turns builds to dimension 8
    found_dim8 = False
    for _, rep in census.representatives:
        loops = [a for a in rep.quiver.arrows if a.source == a.target]
        cross = [a for a in rep.quiver.arrows if a.source != a.target]
        if len(rep.quiver.vertices) == 2 and len(loops) == 1 \
                and len(cross) == 1 and rep.dim == 8:
            walked = {r[0][1].arrows for r in rep.relations}
            lo, cr = loops[0].name, cross[0].name
            if walked == {(lo, lo, lo, lo), (lo, lo, lo, cr)}:
                found_dim8 = True
    assert found_dim8
    say(capsys, "criterion 5: FAIL (documented reading counts %d classes, "
                "alternative reading %d, quoted value 53; dim-8 "
                "loop-and-arrow representative present, %.1fs)"
        % (census.classes, alternative, elapsed))
    assert census.classes == 53


# -- criterion 6 -------------------------------------------------------------


def test_criterion_6_band_uniqueness_and_socle_quotients(capsys):
    instances = quotients = 0
    for total in range(3, 8):
        for p in range(1, total - 1):
            for q_par in range(1, total - p):
                r = total - p - q_par
                if r < 1:
                    continue
                inst = gen_family("E", (p, q_par, r))
                algebra = inst.algebra
                bands = enumerate_bands(algebra, 2 * algebra.dim)
                assert len(bands) == 1, (p, q_par, r)
                quiver = inst.quiver
                acycle = ["al%d" % i for i in range(1, q_par + 1)]
                bridge = ["be%d" % i for i in range(1, r + 1)]
                zcycle = ["ga%d" % i for i in range(1, p + 1)]
                first = quiver.path("a", acycle + bridge)
                second = quiver.path("a", bridge + zcycle)
                assert len(socle(algebra)) == 2
                base_rows = [list(row) for row in algebra.relations]
                for extra in ([(1, first)], [(1, second)],
                              [(1, first), (1, second)]):
                    quo = build_algebra(quiver, base_rows + [extra])
                    assert quo.dim == algebra.dim - 1
                    report = rep_type_special_biserial(quo)
                    assert report.verdict == "Finite"
                    assert report.band is None
                    quotients += 1
                instances += 1
    say(capsys, "criterion 6: PASS (%d cycle-bridge-cycle instances with "
                "exactly one band; %d socle quotients all Finite with "
                "zero bands)" % (instances, quotients))


# -- criterion 7 -------------------------------------------------------------


def test_criterion_7_division_stars():
    for maker in (hub_loop_detour, hub_two_round_trips,
                  hub_round_trip_detour):
        q, rels = maker()
        ts = expand_cover(build_algebra(q, rels), "b", 6)
        shapes = {p.shape for p in find_euclidean_convex(ts)}
        assert "D~_4" in shapes, maker.__name__


@pytest.mark.xfail(strict=True,
                   reason="the direct-composite bridge slice carries no "
                          "Euclidean patch at all: the dead through-path "
                          "sits inside every candidate subtree, so the "
                          "fourth shape cannot be produced")
def test_criterion_7_cover_searches(capsys):
    star_hits = []
    for maker in (hub_loop_detour, hub_two_round_trips,
                  hub_round_trip_detour):
        q, rels = maker()
        ts = expand_cover(build_algebra(q, rels), "b", 6)
        shapes = {p.shape for p in find_euclidean_convex(ts)}
        star_hits.append("D~_4" in shapes)
    q, rels = loop_cubed_bridge(0)
    ts = expand_cover(build_algebra(q, rels), "b", 6)
    bent = {p.shape for p in find_euclidean_convex(ts)}
    say(capsys, "criterion 7: FAIL (D~_4 found in %d/3 star "
                "configurations; bent E~_6 patch unattainable, the "
                "direct-composite slice carries %d Euclidean patches)"
        % (sum(star_hits), len(bent)))
    assert all(star_hits)
    assert "E~_6" in bent


# -- criterion 8 -------------------------------------------------------------


def test_criterion_8_glue_separate_round_trip(capsys):
    fused = split = 0
    for inst in all_instances_to_dim_40():
        algebra = inst.algebra
        flag = is_distributive(algebra)[0]
        if inst.glued:
            apart = separate(algebra, "x")
            assert apart.dim == algebra.dim + 1
            assert is_distributive(apart)[0] == flag
            back = glue(apart, "a", "z")
            assert back.dim == algebra.dim
            assert presentations_isomorphic(
                back.quiver, back.relations, algebra.quiver,
                algebra.relations, algebra.field)
            split += 1
        elif inst.family == "E":
            # both endpoints sit on cycles, so glueing does not apply
            with pytest.raises(FamilyParameterError):
                gen_family("E", inst.params, glued=True)
        else:
            glued = glue(algebra, "a", "z")
            assert glued.dim == algebra.dim - 1
            assert is_distributive(glued)[0] == flag
            apart = separate(glued, "x")
            assert presentations_isomorphic(
                apart.quiver, apart.relations, algebra.quiver,
                algebra.relations, algebra.field)
            fused += 1
    say(capsys, "criterion 8: PASS (%d glue round trips, %d separate "
                "round trips, dimension steps and distributivity "
                "preserved throughout)" % (fused, split))
