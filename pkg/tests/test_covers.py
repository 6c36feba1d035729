"""Tree unfoldings of monomial presentations and the searches run on them."""

import random
from collections import Counter

import pytest

from conftest import (alternating_square, deep_loop_bridge_loop,
                      dual_numbers, hub_loop_detour, hub_round_trip_detour,
                      hub_two_round_trips, kronecker, loop_bridge_loop,
                      loop_cubed_bridge, random_monomial_presentation)
from quivalg import (Quiver, build_algebra, expand_cover, find_critical_line,
                     find_euclidean_convex, gen_family, relation_free_lines)
from quivalg.covers import _convex_subset, _critical, _relation_free_subset
from quivalg.errors import NonMonomialError, QuiverStructureError


def build(pair):
    return build_algebra(*pair)


def loop_cubed():
    q = Quiver(["a"], [("x", "a", "a")])
    return q, [[(1, q.path("a", ["x", "x", "x"]))]]


def line_quiver(n):
    verts = ["v%d" % i for i in range(n)]
    arrows = [("e%d" % i, verts[i], verts[i + 1]) for i in range(n - 1)]
    return Quiver(verts, arrows)


# ---------------------------------------------------------------- unfolding


def test_radius_one_is_the_bare_base():
    ts = expand_cover(build(dual_numbers()), "a", 1)
    assert ts.quiver.vertices == ("a.0",)
    assert ts.quiver.arrows == ()
    assert ts.lifted == ()
    assert ts.base_vertex == "a" and ts.radius == 1
    assert ts.depth("a.0") == 1


def test_squared_loop_unrolls_to_a_three_point_path():
    ts = expand_cover(build(dual_numbers()), "a", 2)
    q = ts.quiver
    assert sorted(q.vertices) == ["a.0", "a.1", "a.2"]
    ends = {(a.source, a.target) for a in q.arrows}
    assert ends == {("a.0", "a.1"), ("a.2", "a.0")}
    assert all(ts.vertex_map[v] == "a" for v in q.vertices)
    assert all(ts.arrow_map[a.name] == "x" for a in q.arrows)
    # the one composite through the middle is the lifted zero relation
    assert len(ts.lifted) == 1
    lift = ts.lifted[0]
    assert lift.source == "a.2" and lift.target == "a.1"
    assert ts.depth("a.0") == 1
    assert ts.depth("a.1") == ts.depth("a.2") == 2


def test_squared_loop_radius_three():
    ts = expand_cover(build(dual_numbers()), "a", 3)
    assert len(ts.quiver.vertices) == 5
    assert len(ts.quiver.arrows) == 4
    assert len(ts.lifted) == 3


def test_unknown_base_vertex_is_refused():
    with pytest.raises(QuiverStructureError):
        expand_cover(build(dual_numbers()), "nope", 2)


def test_radius_below_one_is_refused():
    with pytest.raises(ValueError):
        expand_cover(build(dual_numbers()), "a", 0)


def test_sum_relations_are_refused():
    alg = gen_family("B", (1, 1)).algebra
    with pytest.raises(NonMonomialError):
        expand_cover(alg, alg.quiver.vertices[0], 3)


def test_slice_grows_with_radius_by_name():
    alg = build(loop_bridge_loop())
    prev = expand_cover(alg, "a", 1)
    for r in range(2, 7):
        cur = expand_cover(alg, "a", r)
        assert set(prev.quiver.vertices) <= set(cur.quiver.vertices)
        prev_arrows = {(a.name, a.source, a.target) for a in prev.quiver.arrows}
        cur_arrows = {(a.name, a.source, a.target) for a in cur.quiver.arrows}
        assert prev_arrows <= cur_arrows
        prev = cur


def test_acyclic_slice_stops_growing():
    alg = build_algebra(line_quiver(3), [])
    stable = expand_cover(alg, "v1", 3)
    for r in (4, 7, 12):
        again = expand_cover(alg, "v1", r)
        assert again.quiver.vertices == stable.quiver.vertices
        assert again.quiver.arrows == stable.quiver.arrows
    assert stable.depth("v1.0") == 1
    assert stable.depth("v0.0") == 2 and stable.depth("v2.0") == 2


def test_unfolding_is_deterministic():
    alg = build(hub_two_round_trips())
    a = expand_cover(alg, "b", 5)
    b = expand_cover(alg, "b", 5)
    assert a.quiver.vertices == b.quiver.vertices
    assert a.quiver.arrows == b.quiver.arrows
    assert a.lifted == b.lifted


def covering_defect(ts):
    """Interior slice vertices must copy the full arrow star of their base
    image; boundary ones at most a subset.  Returns offending vertices."""
    base = ts.algebra.quiver
    bad = []
    for v in ts.quiver.vertices:
        img = ts.vertex_map[v]
        out = Counter(ts.arrow_map[a.name] for a in ts.quiver.arrows_from(v))
        inc = Counter(ts.arrow_map[a.name] for a in ts.quiver.arrows_to(v))
        bout = Counter(a.name for a in base.arrows_from(img))
        binc = Counter(a.name for a in base.arrows_to(img))
        if ts.depth(v) < ts.radius:
            if out != bout or inc != binc:
                bad.append(v)
        elif (out - bout) or (inc - binc):
            bad.append(v)
    return bad


def lifting_defect(ts):
    """No slice vertex may have two out (or in) arrows with the same base
    image; that is what makes walk lifting unique."""
    bad = []
    for v in ts.quiver.vertices:
        out = Counter(ts.arrow_map[a.name] for a in ts.quiver.arrows_from(v))
        inc = Counter(ts.arrow_map[a.name] for a in ts.quiver.arrows_to(v))
        if any(c > 1 for c in out.values()) or any(c > 1 for c in inc.values()):
            bad.append(v)
    return bad


def test_covering_property_on_fixed_presentations():
    for pair, base in [(dual_numbers(), "a"), (loop_bridge_loop(), "a"),
                       (hub_loop_detour(), "b"), (kronecker(), "a")]:
        ts = expand_cover(build(pair), base, 4)
        assert covering_defect(ts) == []
        assert lifting_defect(ts) == []


def test_lifted_relations_project_onto_relation_walks():
    alg = build(loop_bridge_loop())
    ts = expand_cover(alg, "a", 5)
    rel_names = {tuple(p.arrows) for row in alg.relations for _, p in row}
    assert ts.lifted
    for lift in ts.lifted:
        image = tuple(ts.arrow_map[nm] for nm in lift.arrows)
        assert image in rel_names


def test_random_unfoldings_cover_and_lift_uniquely():
    rng = random.Random(20260819)
    for _ in range(60):
        q, rels = random_monomial_presentation(rng)
        alg = build_algebra(q, rels)
        base = rng.choice(q.vertices)
        r = rng.randint(1, 4)
        ts = expand_cover(alg, base, r)
        assert covering_defect(ts) == []
        assert lifting_defect(ts) == []
        bigger = expand_cover(alg, base, r + 1)
        names = set(ts.quiver.vertices)
        assert names <= set(bigger.quiver.vertices)
        assert all(ts.depth(v) <= r for v in names)


# ------------------------------------------------------------ patch search


def patch_shapes(alg, base, radius=6, **kw):
    ts = expand_cover(alg, base, radius)
    return ts, find_euclidean_convex(ts, **kw)


def test_squared_loop_has_no_euclidean_patch():
    _, hits = patch_shapes(build(dual_numbers()), "a")
    assert hits == []


def test_hub_loop_detour_contains_a_four_armed_star():
    ts, hits = patch_shapes(build(hub_loop_detour()), "b")
    assert "D~_4" in {p.shape for p in hits}
    for p in hits:
        assert _convex_subset(ts.quiver, set(p.vertices))


def test_hub_two_round_trips_contains_a_four_armed_star():
    _, hits = patch_shapes(build(hub_two_round_trips()), "b")
    assert "D~_4" in {p.shape for p in hits}


def test_hub_round_trip_detour_contains_a_four_armed_star():
    _, hits = patch_shapes(build(hub_round_trip_detour()), "b")
    assert "D~_4" in {p.shape for p in hits}


def test_loop_cubed_bridge_with_loop_factors_gives_a_star():
    for skip in (1, 2):
        _, hits = patch_shapes(build(loop_cubed_bridge(skip)), "b")
        assert "D~_4" in {p.shape for p in hits}, skip


def test_loop_cubed_bridge_direct_composite_blocks_every_patch():
    # the dead through-composite sits inside every candidate star, so the
    # slice carries no Euclidean patch at all
    _, hits = patch_shapes(build(loop_cubed_bridge(0)), "b")
    assert hits == []


def test_deep_loop_bridge_finds_a_bent_six_patch():
    ts, hits = patch_shapes(build(deep_loop_bridge_loop()), "b")
    shapes = {p.shape for p in hits}
    assert "E~_6" in shapes
    patch = next(p for p in hits if p.shape == "E~_6")
    assert len(patch.vertices) == 7
    induced = [a.name for a in ts.quiver.arrows
               if a.source in patch.vertices and a.target in patch.vertices]
    assert _relation_free_subset(ts, set(induced))
    assert _convex_subset(ts.quiver, set(patch.vertices))


def test_patch_search_respects_the_size_cap():
    ts = expand_cover(build(loop_cubed_bridge(1)), "b", 6)
    small = find_euclidean_convex(ts, max_vertices=5)
    assert {p.shape for p in small} == {"D~_4"}
    wide = find_euclidean_convex(ts, max_vertices=7)
    assert {p.shape for p in wide} >= {"D~_4", "D~_5", "D~_6"}
    as_sets = {p.vertices for p in small}
    assert as_sets <= {p.vertices for p in wide}


def test_patch_search_is_deterministic():
    ts = expand_cover(build(hub_loop_detour()), "b", 5)
    assert find_euclidean_convex(ts) == find_euclidean_convex(ts)


# ------------------------------------------------------------------- lines


def test_cubed_loop_lines_are_three_point_runs():
    alg = build(loop_cubed())
    ts = expand_cover(alg, "a", 4)
    lines = relation_free_lines(ts)
    assert lines
    for line in lines:
        assert line.length == 3
        assert len(line.sources) == 1 and len(line.sinks) == 1
    assert find_critical_line(ts) is None


def test_acyclic_line_quiver_has_no_critical_line():
    alg = build_algebra(line_quiver(4), [])
    ts = expand_cover(alg, "v0", 6)
    assert find_critical_line(ts) is None


def test_kronecker_slice_has_no_critical_line():
    # endpoint images alternate with parity, so the second and next-to-last
    # points of any candidate always agree
    ts = expand_cover(build(kronecker()), "a", 6)
    assert find_critical_line(ts) is None


def test_family_quotient_lines_stay_short():
    inst = gen_family("C", (1,))
    ts = expand_cover(inst.algebra, "b", 6)
    lines = relation_free_lines(ts)
    assert max(line.length for line in lines) < 2 * inst.algebra.dim + 1
    assert find_critical_line(ts) is None


def test_glued_family_quotient_has_no_critical_line():
    inst = gen_family("C", (2,), glued=True)
    base = inst.algebra.quiver.vertices[0]
    ts = expand_cover(inst.algebra, base, 6)
    assert find_critical_line(ts) is None


def test_alternating_square_yields_a_five_point_critical_line():
    ts = expand_cover(build(alternating_square()), "v1", 6)
    line = find_critical_line(ts)
    assert line is not None
    assert line.length == 5
    ends = (line.vertices[0], line.vertices[-1])
    assert ts.vertex_map[ends[0]] == ts.vertex_map[ends[1]]
    assert set(ends) <= set(line.sources) or set(ends) <= set(line.sinks)
    second, penult = line.vertices[1], line.vertices[-2]
    assert ts.vertex_map[second] != ts.vertex_map[penult]
    assert _critical(ts, line.vertices, line.steps)


def test_line_endpoints_classify_as_sources_and_sinks():
    ts = expand_cover(build(alternating_square()), "v1", 3)
    for line in relation_free_lines(ts):
        for i, v in enumerate(line.vertices):
            signs = []
            if i > 0:
                signs.append(-line.steps[i - 1][1])
            if i < len(line.steps):
                signs.append(line.steps[i][1])
            if all(s > 0 for s in signs):
                assert v in line.sources
            if all(s < 0 for s in signs):
                assert v in line.sinks
