"""Shared presentations for the test suite.

These are plain functions rather than fixtures so tests can call them with
parameters; everything returns a (quiver, relations) pair ready for
build_algebra.
"""

from quivalg import Quiver


def kronecker():
    """Two parallel arrows a -> z, no relations."""
    q = Quiver(["a", "z"], [("a1", "a", "z"), ("a2", "a", "z")])
    return q, []


def dual_numbers():
    """One loop with its square killed: k[X]/(X^2)."""
    q = Quiver(["a"], [("x", "a", "a")])
    return q, [[(1, q.path("a", ["x", "x"]))]]


def loop_bridge_loop():
    """Loops on both ends of a bridge; both squares and the full sweep
    through the bridge are zero.  Dimension 7."""
    q = Quiver(["a", "z"], [("al", "a", "a"), ("be", "a", "z"),
                            ("ga", "z", "z")])
    rels = [[(1, q.path("a", ["al", "al"]))],
            [(1, q.path("z", ["ga", "ga"]))],
            [(1, q.path("a", ["al", "be", "ga"]))]]
    return q, rels


def one_point_double_loop():
    """One vertex, two loops, every length-2 product zero."""
    q = Quiver(["x"], [("u", "x", "x"), ("v", "x", "x")])
    rels = [[(1, q.path("x", [i, j]))]
            for i in ("u", "v") for j in ("u", "v")]
    return q, rels


def cycle_with_tails(p):
    """An arrow into a p-cycle and an arrow out of it; re-entering the
    cycle after a full turn is zero."""
    cyc = ["b"] + ["c%d" % i for i in range(1, p)]
    verts = ["a"] + cyc + ["z"]
    arrows = [("al", "a", "b")]
    for i in range(p):
        arrows.append(("rho%d" % (i + 1), cyc[i], cyc[(i + 1) % p]))
    arrows.append(("be", "b", "z"))
    q = Quiver(verts, arrows)
    rels = [[(1, q.path(cyc[-1], ["rho%d" % p, "rho1"]))]]
    return q, rels


def h_tree():
    """A tree with two branch points: one arm into the first, an arm out of
    it, a bridge to the second, and two arms out of that.  No relations."""
    q = Quiver(["a", "b", "z1", "z2", "d", "e"],
               [("al", "a", "z1"), ("de", "z1", "b"), ("be", "z1", "z2"),
                ("ga", "z2", "d"), ("ep", "z2", "e")])
    return q, []


def all_paths_acyclic(q):
    """Every path of an acyclic quiver, stationary ones included."""
    paths = [q.stationary(v) for v in q.vertices]
    i = 0
    while i < len(paths):
        p = paths[i]
        i += 1
        for a in q.arrows_from(p.target):
            paths.append(q.path(p.source, p.arrows + (a.name,)))
    return paths


def hub_loop_detour():
    """A hub with a dead loop, an arrow in, an arrow out, and a two-step
    detour to the sink; every composite through the hub vanishes."""
    q = Quiver(["a", "b", "d", "z"],
               [("al", "a", "b"), ("be", "b", "z"), ("ze", "b", "d"),
                ("zp", "d", "z"), ("rho", "b", "b")])
    walks = [["rho", "rho"], ["rho", "be"], ["rho", "ze"], ["ze", "zp"]]
    return q, [[(1, q.path_from_names(w))] for w in walks]


def hub_two_round_trips():
    """A hub with round trips to two satellites plus an arrow in and an
    arrow out; every composite of two round-trip arrows vanishes, as does
    anything moving between the satellites."""
    q = Quiver(["a", "b", "c", "d", "z"],
               [("al", "a", "b"), ("be", "b", "z"), ("rp", "b", "c"),
                ("rpp", "c", "b"), ("ze", "b", "d"), ("zp", "d", "b")])
    walks = [["rp", "rpp"], ["ze", "zp"], ["rpp", "rp"], ["zp", "ze"],
             ["zp", "rp"], ["rpp", "ze"]]
    return q, [[(1, q.path_from_names(w))] for w in walks]


def hub_round_trip_detour():
    """A hub with a round trip to a satellite and a two-step detour to the
    sink; the round trip itself survives but dies after the outgoing arrow
    and cannot repeat or enter the detour."""
    q = Quiver(["a", "b", "c", "d", "z"],
               [("al", "a", "b"), ("be", "b", "z"), ("rp", "b", "c"),
                ("rpp", "c", "b"), ("ze", "b", "d"), ("zp", "d", "z")])
    walks = [["ze", "zp"], ["rp", "rpp", "be"], ["rpp", "rp"],
             ["rpp", "ze"]]
    return q, [[(1, q.path_from_names(w))] for w in walks]


def loop_cubed_bridge(skip):
    """a -> hub -> z with a loop on the hub whose cube vanishes; the
    through-composite with `skip` loop factors inserted is also zero."""
    q = Quiver(["a", "b", "z"],
               [("al", "a", "b"), ("be", "b", "z"), ("rho", "b", "b")])
    walks = [["rho", "rho", "rho"], ["al"] + ["rho"] * skip + ["be"]]
    return q, [[(1, q.path_from_names(w))] for w in walks]


def deep_loop_bridge_loop():
    """Like loop_bridge_loop but the start loop dies at the fourth power,
    the bridge survives one loop factor, and nothing follows the bridge.
    Dimension 8."""
    q = Quiver(["b", "z"],
               [("tau", "b", "b"), ("ga", "b", "z"), ("rho", "z", "z")])
    walks = [["tau"] * 4, ["rho", "rho"], ["tau", "tau", "ga"],
             ["ga", "rho"]]
    return q, [[(1, q.path_from_names(w))] for w in walks]


def alternating_square():
    """Four vertices on a cycle whose arrow directions alternate; no
    relations."""
    q = Quiver(["v1", "v2", "v3", "v4"],
               [("a1", "v1", "v2"), ("a2", "v3", "v2"),
                ("a3", "v3", "v4"), ("a4", "v1", "v4")])
    return q, []


def random_monomial_presentation(rng):
    """Small random acyclic quiver with random monomial relations.

    Kept small enough (at most 5 arrows between 4 vertices) that every slot
    has dimension <= 6, so the brute-force lattice oracle always applies.
    """
    nv = rng.randint(2, 4)
    verts = ["v%d" % i for i in range(nv)]
    arrows = []
    for k in range(rng.randint(1, 5)):
        i = rng.randint(0, nv - 2)
        j = rng.randint(i + 1, nv - 1)
        arrows.append(("a%d" % k, verts[i], verts[j]))
    q = Quiver(verts, arrows)
    rels = [[(1, p)] for p in all_paths_acyclic(q)
            if p.length >= 2 and rng.random() < 0.3]
    return q, rels
