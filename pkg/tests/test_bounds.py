import random
from fractions import Fraction

import pytest

from graphrepair.bounds import (
    CodeProfile,
    af_formula,
    cut_edges,
    ip_layer_formula,
    layer_bound,
    lp_bound,
    lp_certificate_check,
    multi_tree_bound,
    subset_bound,
    tree_bound,
)
from graphrepair.graphs import (
    RepairTree,
    complete_graph,
    random_recursive_tree,
    three_neighbor_example_graph,
    two_neighbor_graph,
)
from graphrepair.ratlp import InfeasibleError
from graphrepair.graphs import Graph


def test_profile_validation_and_beta():
    p = CodeProfile(k=3, d=4, l=2)
    assert p.beta == Fraction(1)
    assert CodeProfile.unit(k=5, d=6).l == 2
    assert CodeProfile(k=2, d=3, l=16).beta == Fraction(8)
    with pytest.raises(ValueError):
        CodeProfile(k=5, d=4)


def test_subset_bound_values():
    p = CodeProfile(k=3, d=4, l=2)
    assert subset_bound(p, 4) == Fraction(2)  # full column
    assert subset_bound(p, 1) == p.beta == Fraction(1)
    with pytest.raises(ValueError):
        subset_bound(p, 0)
    # two failures, d = k+1: a 2-subset must emit 4l/3
    p2 = CodeProfile(k=4, d=5, l=96, h=2)
    assert subset_bound(p2, 2) == Fraction(4 * 96, 3)
    assert subset_bound(p2, 5) == 2 * 96


def test_layer_bound_values():
    p = CodeProfile(k=3, d=4, l=2)
    assert layer_bound(p, [1]) == p.beta           # singleton outer layer
    assert layer_bound(p, [2, 2]) == Fraction(2)   # all helpers outside: l
    # wide fan-out: 5 inner, 20 outer, d = 25, unit symbols
    wide = CodeProfile.unit(k=24, d=25)
    assert layer_bound(wide, [20]) == min(Fraction(wide.l), Fraction(20 * wide.l, 2))


def star_tree(failed, center, leaves):
    parent = {center: failed}
    parent.update({v: center for v in leaves})
    return RepairTree(failed, parent)


def test_tree_bound_star_and_depth_one():
    pm = CodeProfile(k=3, d=4, l=2)
    # depth-1 tree: all helpers adjacent to the failed vertex
    flat = RepairTree(0, {v: 0 for v in range(1, 5)})
    assert tree_bound(flat, pm) == 4 * pm.beta
    # failed vertex as a star leaf: 3k-4 = 5
    tree = star_tree(0, 1, [2, 3, 4])
    assert tree_bound(tree, pm) == Fraction(5)


def test_af_formula_star_and_regular_tree():
    pm = CodeProfile(k=3, d=4, l=2)
    assert af_formula([4], pm) == 4 * pm.beta
    assert af_formula([1, 3], pm) == Fraction(7)  # 2d-1 with d = 4
    # 5-regular fan: 5 inner, 20 outer, unit symbols: td - (r+1)*(t-1 terms)
    reg = CodeProfile.unit(k=24, d=25)
    r, t, d = 4, 2, 25
    closed = t * d - (r + 1) * sum((t - i - 1) * r**i for i in range(t - 1))
    assert af_formula([5, 20], reg) == Fraction(closed) == Fraction(45)
    with pytest.raises(ValueError):
        af_formula([1, 2], pm)


def test_ip_layer_formula_matches_tree_bound_on_saturated_layers():
    # when every vertex in the first s layers has a saturated subtree, the
    # layered switch equals the per-vertex tree bound
    p = CodeProfile.unit(k=11, d=12)
    sizes = [2, 4, 6]
    assert ip_layer_formula(sizes, p, 0) == af_formula(sizes, p)
    got = ip_layer_formula(sizes, p, 1)
    assert got == Fraction(2 * p.l + 4 * 1 + 6 * 2)


def test_tree_bound_never_exceeds_af_on_random_trees():
    rng = random.Random(1)
    p = CodeProfile(k=4, d=6, l=3)
    for _ in range(50):
        tree = random_recursive_tree(0, list(range(1, 7)), rng)
        af = af_formula(tree.layer_sizes(), p)
        ip = tree_bound(tree, p)
        assert ip <= af
        if max(tree.subtree_size[v] for v in tree.non_root()) <= p.d - p.k:
            assert ip == af


def test_multi_tree_bound_star_and_singleton():
    p = CodeProfile(k=4, d=5, l=96, h=2)  # l = 3 * 2^5
    # star centered at the gateway: 4 non-root helpers, each 2l/3
    star = RepairTree(9, {v: 9 for v in (1, 2, 3, 4)})
    assert multi_tree_bound(star, p) == 4 * Fraction(2 * 96, 3)
    # single non-root helper
    lone = RepairTree(9, {1: 9})
    assert multi_tree_bound(lone, p) == Fraction(2 * 96, 3)


def test_lp_complete_graph_value_and_published_certificates():
    for d, k in ((4, 3), (6, 5)):
        g = complete_graph(d + 1)
        profile = CodeProfile.unit(k=k, d=d)
        lp = lp_bound(g, 0, range(1, d + 1), profile)
        assert lp.value == d * profile.beta
        assert lp_certificate_check(lp)
        # published pair: all helpers ship beta straight to the failed node,
        # dual puts weight 1 on every singleton
        primal = {e: Fraction(0) for e in lp.edges}
        for u in lp.helpers:
            primal[(u, 0)] = profile.beta
        dual = {s: Fraction(1 if len(s) == 1 else 0) for s in lp.subsets}
        assert lp_certificate_check(lp, primal, dual)
        # a perturbed dual must fail
        bad = dict(dual)
        bad[(1,)] = Fraction(2)
        assert not lp_certificate_check(lp, primal, bad)


def test_lp_two_neighbor_topology_value_and_certificates():
    k = 5
    d = k + 1
    g = two_neighbor_graph(k)
    profile = CodeProfile.unit(k=k, d=d)
    lp = lp_bound(g, 0, range(1, d + 1), profile)
    assert lp.value == (d + 1) * profile.beta == Fraction(7)
    assert lp_certificate_check(lp)

    beta = profile.beta
    primal = {e: Fraction(0) for e in lp.edges}
    for u in range(2, d + 1):          # v_2 and the outer layer all route via v_1
        primal[(u, 1)] = beta
    primal[(1, 0)] = 2 * beta
    dual = {s: Fraction(0) for s in lp.subsets}
    for s in lp.subsets:
        if len(s) == 2 and s != (1, 2):
            dual[s] = Fraction(1, d - 2)
    assert lp_certificate_check(lp, primal, dual)


def test_lp_three_neighbor_example_value_27_4():
    g = three_neighbor_example_graph()
    profile = CodeProfile.unit(k=5, d=6)
    lp = lp_bound(g, 0, range(1, 7), profile)
    assert lp.value == Fraction(27, 4)
    assert lp_certificate_check(lp)

    # published certificates (0-based vertices; the failed vertex is 0)
    primal = {e: Fraction(0) for e in lp.edges}
    for u in (1, 2, 3):
        primal[(u, 0)] = Fraction(1)
    for u in (4, 5, 6):
        for v in (4, 5, 6):
            if u != v:
                primal[(u, v)] = Fraction(1, 4)  # 1/2 per unordered pair
        for v in (1, 2, 3):
            primal[(u, v)] = Fraction(1, 4)
    dual = {}
    for s in lp.subsets:
        if len(s) == 2:
            dual[s] = Fraction(1, 8) if set(s) <= {1, 2, 3} else Fraction(1, 4)
        else:
            dual[s] = Fraction(0)
    assert sum(primal.values()) == Fraction(27, 4)
    assert lp_certificate_check(lp, primal, dual)

    report = lp.report()
    assert "value 27/4" in report


def test_lp_depth_one_equals_all_other_bounds():
    d, k = 5, 4
    g = complete_graph(d + 1)
    profile = CodeProfile.unit(k=k, d=d)
    lp = lp_bound(g, 0, range(1, d + 1), profile)
    flat = RepairTree(0, {v: 0 for v in range(1, d + 1)})
    assert lp.value == tree_bound(flat, profile) == af_formula([d], profile) == d * profile.beta


def test_lp_relaxes_the_tree_bound():
    g = three_neighbor_example_graph()
    profile = CodeProfile.unit(k=5, d=6)
    lp = lp_bound(g, 0, range(1, 7), profile)
    # IP on the best spanning tree costs 7; the LP may do better
    tree = RepairTree(0, {2: 0, 1: 2, 3: 2, 4: 2, 5: 2, 6: 2})
    assert tree_bound(tree, profile) == Fraction(7)
    assert lp.value <= tree_bound(tree, profile)


def test_lp_guards():
    g = complete_graph(4)
    profile = CodeProfile.unit(k=2, d=3)
    with pytest.raises(ValueError):
        lp_bound(g, 0, [1, 2], profile)  # helper count != d
    iso = Graph(4, [(1, 2), (2, 3), (1, 3)])
    with pytest.raises(InfeasibleError):
        lp_bound(iso, 0, [1, 2, 3], profile)
    assert cut_edges(g, 0, [1, 2, 3]) == (
        (1, 0), (1, 2), (1, 3), (2, 0), (2, 1), (2, 3), (3, 0), (3, 1), (3, 2))
