"""Bimodule layer profiles, the trichotomy, and the brute-force check."""

import random

import pytest

from conftest import (cycle_with_tails, dual_numbers, kronecker,
                      loop_bridge_loop, one_point_double_loop,
                      random_monomial_presentation)
from quivalg import (PrimeField, Quiver, brute_force_distributive,
                     build_algebra, critical_pairs, is_distributive, is_node,
                     long_paths, slot_lattice_distributive, thick_points,
                     trichotomy)
from quivalg.errors import QuivalgError


def test_kronecker_profile_and_pair():
    q, rels = kronecker()
    alg = build_algebra(q, rels)
    flag, profs = is_distributive(alg)
    assert not flag
    by_pair = {p.pair: p.dims for p in profs}
    assert by_pair[("a", "z")] == (2, 0)
    assert by_pair[("a", "a")] == (1, 0)
    pairs = critical_pairs(alg)
    assert [(c.source, c.target, c.index) for c in pairs] == [("a", "z", 0)]


def test_dual_numbers_is_distributive():
    q, rels = dual_numbers()
    alg = build_algebra(q, rels)
    flag, profs = is_distributive(alg)
    assert flag
    assert profs[0].dims == (1, 1, 0)
    assert critical_pairs(alg) == []
    assert trichotomy(alg).verdict == "Distributive"


def test_loop_bridge_loop_profile():
    q, rels = loop_bridge_loop()
    alg = build_algebra(q, rels)
    flag, profs = is_distributive(alg)
    assert not flag
    by_pair = {p.pair: p.dims for p in profs}
    assert by_pair[("a", "z")] == (1, 2, 0)
    assert by_pair[("a", "a")] == (1, 1, 0)
    pairs = critical_pairs(alg)
    assert [(c.source, c.target, c.index) for c in pairs] == [("a", "z", 1)]


def test_trichotomy_type_two():
    q, rels = kronecker()
    rep = trichotomy(build_algebra(q, rels))
    assert rep.verdict == "Type2"
    assert rep.critical_pair.index == 0
    assert rep.socle_dim == 2

    q, rels = cycle_with_tails(3)
    rep = trichotomy(build_algebra(q, rels))
    assert rep.verdict == "Type2"
    assert (rep.critical_pair.source, rep.critical_pair.target) == ("a", "z")


def test_trichotomy_type_three():
    q, rels = loop_bridge_loop()
    rep = trichotomy(build_algebra(q, rels))
    assert rep.verdict == "Type3"
    assert rep.critical_pair.index == 1
    assert rep.socle_dim == 2


def test_trichotomy_type_one():
    q, rels = one_point_double_loop()
    alg = build_algebra(q, rels)
    rep = trichotomy(alg)
    assert rep.verdict == "Type1"
    assert rep.critical_pair == type(rep.critical_pair)("x", "x", 1)
    assert thick_points(alg) == ["x"]
    assert is_node(alg, "x")


def test_trichotomy_rejections_carry_witnesses():
    q = Quiver(["a", "z"], [("a1", "a", "z"), ("a2", "a", "z"),
                            ("a3", "a", "z")])
    rep = trichotomy(build_algebra(q, []))
    assert rep.verdict == "NotMinimalNonDistributive"
    assert rep.witness == "critical layer has dimension 3, not 2"

    # two independent critical slots
    q = Quiver(["a", "b", "z"], [("f1", "a", "b"), ("f2", "a", "b"),
                                 ("g1", "b", "z"), ("g2", "b", "z")])
    rels = [[(1, q.path("a", [i, j]))]
            for i in ("f1", "f2") for j in ("g1", "g2")]
    rep = trichotomy(build_algebra(q, rels))
    assert rep.verdict == "NotMinimalNonDistributive"
    assert rep.witness == "2 critical pairs instead of one"


def test_thick_points_and_long_paths():
    q, rels = cycle_with_tails(3)
    alg = build_algebra(q, rels)
    assert thick_points(alg) == ["b"]
    longs = long_paths(alg)
    assert sorted(p.arrows for p in longs) == [
        ("al", "be"), ("al", "rho1", "rho2", "rho3", "be")]

    q, rels = dual_numbers()
    assert thick_points(build_algebra(q, rels)) == ["a"]

    q, rels = kronecker()
    assert thick_points(build_algebra(q, rels)) == []


def test_is_node_cases():
    q = Quiver(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")])
    alg = build_algebra(q, [])
    assert is_node(alg, "a")        # no incoming arrows
    assert is_node(alg, "c")        # no outgoing arrows
    assert not is_node(alg, "b")    # g.f passes through

    q = Quiver(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")])
    alg = build_algebra(q, [[(1, q.path("a", ["f", "g"]))]])
    assert is_node(alg, "b")


def test_brute_force_agrees_with_profiles():
    rng = random.Random(20240818)
    f2 = PrimeField(2)
    checked = 0
    for _ in range(40):
        q, rels = random_monomial_presentation(rng)
        alg = build_algebra(q, rels, field=f2)
        flag, _ = is_distributive(alg)
        assert flag == brute_force_distributive(alg)
        checked += 1
    assert checked == 40


def test_slot_lattice_examples():
    f2 = PrimeField(2)
    q, rels = kronecker()
    alg = build_algebra(q, rels, field=f2)
    assert not slot_lattice_distributive(alg, "a", "z")
    assert slot_lattice_distributive(alg, "a", "a")

    q, rels = loop_bridge_loop()
    alg = build_algebra(q, rels, field=f2)
    assert not slot_lattice_distributive(alg, "a", "z")
    assert slot_lattice_distributive(alg, "a", "a")
    assert brute_force_distributive(alg) is False

    q, rels = dual_numbers()
    assert brute_force_distributive(build_algebra(q, rels, field=f2))


def test_slot_lattice_needs_characteristic_two():
    q, rels = kronecker()
    alg = build_algebra(q, rels)
    with pytest.raises(QuivalgError):
        slot_lattice_distributive(alg, "a", "z")
    alg3 = build_algebra(q, rels, field=PrimeField(3))
    with pytest.raises(QuivalgError):
        slot_lattice_distributive(alg3, "a", "z")


def test_profile_critical_index():
    q, rels = loop_bridge_loop()
    alg = build_algebra(q, rels)
    _, profs = is_distributive(alg)
    for prof in profs:
        if prof.pair == ("a", "z"):
            assert prof.critical_index() == 1
        else:
            assert prof.critical_index() is None
