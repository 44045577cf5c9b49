"""Lower bounds on repair communication, from subset outflow to the cut LP.

The per-helper download of an optimal-bandwidth code is beta = l/(d-k+1)
field symbols.  Everything here is exact: bounds are Fractions, and the cut
LP is solved over the rationals so that optimality certificates come out as
equalities rather than approximations.

Bound family (h = number of simultaneously failed nodes, default 1):

* subset outflow: a set A of helpers must emit at least h|A|l/(d-k+h)
  symbols, saturating at hl once |A| >= d-k+h.
* layer bound: specialization of the above to the union of outer BFS layers.
* tree bound: summed subset bounds over all proper subtrees of a repair
  tree; matched with equality by the intermediate-processing protocol.
* accumulate-and-forward total: every helper's beta symbols are relayed raw
  along its tree path, so each helper at depth j costs j*beta.
* layered-switch total: layers deeper than s relay raw and every vertex in
  the first s layers forwards a combined l-symbol message.
* cut LP: for arbitrary repair subgraphs (helpers may talk to each other),
  minimize total traffic over directed edges subject to the subset-outflow
  constraint on every nonempty helper subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .graphs import Graph, RepairTree
from .ratlp import InfeasibleError, solve_min_ge

LP_MAX_D = 16  # 2^d - 1 constraint rows are materialized


@dataclass(frozen=True)
class CodeProfile:
    """The bound-relevant parameters of a storage code."""

    k: int
    d: int
    l: int = 0  # 0 means "unit per-helper symbols": l = (d-k+1) * h_factor below
    h: int = 1
    n: int | None = None

    def __post_init__(self):
        if not 1 <= self.k <= self.d:
            raise ValueError("need 1 <= k <= d")
        if self.h < 1:
            raise ValueError("h must be positive")
        if self.l == 0:
            object.__setattr__(self, "l", self.d - self.k + self.h)
        if self.l < 1:
            raise ValueError("l must be positive")

    @property
    def beta(self) -> Fraction:
        """Per-helper download toward one failed node."""
        return Fraction(self.l, self.d - self.k + self.h)

    @classmethod
    def unit(cls, k: int, d: int, h: int = 1) -> "CodeProfile":
        """Profile normalized to one symbol per helper per failed node."""
        return cls(k=k, d=d, h=h)


def subset_bound(profile: CodeProfile, subset_size: int) -> Fraction:
    """Minimum outflow of a helper subset of the given size."""
    if not 1 <= subset_size <= profile.d:
        raise ValueError("subset size must be in [1, d]")
    h = profile.h
    saturated = Fraction(h * profile.l)
    return min(saturated, Fraction(h * subset_size * profile.l, profile.d - profile.k + h))


def layer_bound(profile: CodeProfile, tail_layer_sizes: Sequence[int]) -> Fraction:
    """Minimum flow from layer j inward, given the sizes |G_j|, ..., |G_t|."""
    outer = sum(tail_layer_sizes)
    return subset_bound(profile, outer)


def _vertex_share(profile: CodeProfile, subtree: int) -> Fraction:
    """What one tree vertex with a subtree of the given size must forward;
    equals hl once the subtree saturates."""
    h = profile.h
    return Fraction(h * profile.l, profile.d - profile.k + h) * min(subtree, profile.d - profile.k + h)


def tree_bound(tree: RepairTree, profile: CodeProfile) -> Fraction:
    """Total traffic on a repair tree: every non-root vertex forwards at
    least the subset bound of its own subtree."""
    total = Fraction(0)
    for v in tree.non_root():
        total += _vertex_share(profile, tree.subtree_size[v])
    return total


def multi_tree_bound(tree: RepairTree, profile: CodeProfile) -> Fraction:
    """Tree bound for h simultaneous failures served through the tree's root
    (the root's own outflow toward the failed nodes is not a tree edge and
    is not counted)."""
    return tree_bound(tree, profile)


def af_formula(layer_sizes: Sequence[int], profile: CodeProfile) -> Fraction:
    """Raw relaying: each of the |G_j| helpers at depth j moves beta symbols
    over j hops."""
    if sum(layer_sizes) != profile.d:
        raise ValueError("layer sizes must cover exactly d helpers")
    hops = sum(j * size for j, size in enumerate(layer_sizes, start=1))
    return hops * profile.h * profile.beta


def ip_layer_formula(layer_sizes: Sequence[int], profile: CodeProfile, switch_depth: int) -> Fraction:
    """Layered switching: layers deeper than switch_depth relay raw; every
    vertex at depth <= switch_depth forwards one combined l-symbol message."""
    if sum(layer_sizes) != profile.d:
        raise ValueError("layer sizes must cover exactly d helpers")
    if not 0 <= switch_depth <= len(layer_sizes):
        raise ValueError("switch depth out of range")
    total = Fraction(profile.l) * sum(layer_sizes[:switch_depth])
    for j, size in enumerate(layer_sizes, start=1):
        if j > switch_depth:
            total += (j - switch_depth) * size * profile.beta
    return total


# -- the cut LP ---------------------------------------------------------------


@dataclass
class CutLP:
    """A solved instance of the min-traffic LP on a repair subgraph."""

    failed: int
    helpers: tuple[int, ...]
    profile: CodeProfile
    edges: tuple[tuple[int, int], ...]           # directed, fixed order
    subsets: tuple[tuple[int, ...], ...]         # by size then lexicographic
    rhs: tuple[Fraction, ...]
    primal: dict[tuple[int, int], Fraction]
    dual: dict[tuple[int, ...], Fraction]
    value: Fraction

    def report(self) -> str:
        """Text report; rationals rendered as p/q."""
        out = [
            f"failed {self.failed}",
            f"helpers {' '.join(map(str, self.helpers))}",
            f"value {self.value}",
            "primal:",
        ]
        for (u, v) in self.edges:
            x = self.primal[(u, v)]
            if x:
                out.append(f"  {u}->{v} {x}")
        out.append("dual:")
        for s in self.subsets:
            y = self.dual[s]
            if y:
                out.append(f"  {{{','.join(map(str, s))}}} {y}")
        return "\n".join(out) + "\n"


def cut_edges(g: Graph, failed: int, helpers: Iterable[int]) -> tuple[tuple[int, int], ...]:
    """Directed edge list of the repair subgraph: both directions between
    helpers, and one direction into the failed vertex."""
    hs = set(helpers)
    edges = []
    for u in sorted(hs):
        for v in g.neighbors(u):
            if v in hs:
                edges.append((u, v))
            elif v == failed:
                edges.append((u, failed))
    return tuple(sorted(edges))


def lp_bound(g: Graph, failed: int, helpers: Iterable[int], profile: CodeProfile) -> CutLP:
    """Solve the cut LP exactly; raises InfeasibleError when the subgraph
    cannot route the required flow (e.g. no edge into the failed vertex)."""
    helpers = tuple(sorted(helpers))
    if failed in helpers:
        raise ValueError("failed vertex cannot be a helper")
    d = len(helpers)
    if d != profile.d:
        raise ValueError(f"profile expects d={profile.d} helpers, got {d}")
    if d > LP_MAX_D:
        raise ValueError(f"d <= {LP_MAX_D} enforced (2^d - 1 constraint rows)")
    if not any(g.has_edge(u, failed) for u in helpers):
        raise InfeasibleError("no edge into the failed vertex")

    edges = cut_edges(g, failed, helpers)
    edge_index = {e: i for i, e in enumerate(edges)}
    subsets = []
    for size in range(1, d + 1):
        subsets.extend(combinations(helpers, size))
    rows = []
    rhs = []
    beta = profile.beta
    for s in subsets:
        inside = set(s)
        row = [0] * len(edges)
        for (u, v), idx in edge_index.items():
            if u in inside and v not in inside:
                row[idx] = 1
        rows.append(row)
        rhs.append(beta * min(profile.d - profile.k + 1, len(s)))
    x, y, value = solve_min_ge([1] * len(edges), rows, rhs)
    return CutLP(
        failed=failed,
        helpers=helpers,
        profile=profile,
        edges=edges,
        subsets=tuple(subsets),
        rhs=tuple(Fraction(v) for v in rhs),
        primal={e: x[i] for i, e in enumerate(edges)},
        dual={s: y[i] for i, s in enumerate(subsets)},
        value=value,
    )


def lp_certificate_check(lp: CutLP, primal=None, dual=None) -> bool:
    """Exact feasibility + strong duality of a primal/dual pair (defaults to
    the solver's own certificates)."""
    primal = lp.primal if primal is None else primal
    dual = lp.dual if dual is None else dual
    if any(x < 0 for x in primal.values()) or any(y < 0 for y in dual.values()):
        return False
    if set(primal) - set(lp.edges):
        return False
    # M x >= b
    for s, b in zip(lp.subsets, lp.rhs):
        inside = set(s)
        flow = sum(x for (u, v), x in primal.items() if u in inside and v not in inside)
        if flow < b:
            return False
    # M^T y <= 1
    for (u, v) in lp.edges:
        load = sum(y for s, y in dual.items() if u in set(s) and v not in set(s))
        if load > 1:
            return False
    primal_value = sum(primal.values())
    dual_value = sum(lp.rhs[i] * dual.get(s, Fraction(0)) for i, s in enumerate(lp.subsets))
    return primal_value == dual_value
