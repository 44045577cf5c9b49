"""Message-level repair protocols over repair trees.

Two single-failure protocols run over a rooted repair tree, producing a
Transcript whose per-edge counts are checked against the bound formulas:

* accumulate-and-forward: every vertex relays all raw symbols received from
  its children plus its own contribution, so each helper's symbols travel
  its full depth.
* intermediate processing: a vertex whose subtree holds at least d-k+1
  contributions stops relaying and forwards the partial linear combination
  instead, which is one combined vector of d-k+1 symbols per plane group.

Codes plug in through small adapters exposing, per plane group, the raw
helper symbol and the combining-matrix row of each helper, plus the final
column assembly.  One group means the combined message has d-k+1 symbols,
so protocol accounting is identical across code families; totals aggregate
over groups.

The two-failure run drives the cooperative code on the gateway topology:
step-1 sums flow up a spanning tree of the helper subgraph with the same
switch rule (threshold d-k+2 contributions, combined vectors of 3 symbols
per plane per failed node), the gateway ships the resolved triples down a
relay chain, and the failed pair exchanges cross-sums to finish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import CodeProfile
from .coop import CoopCode, CoopCodeword
from .dm import DmCode, DmCodeword
from .graphs import Graph, RepairTree, spanning_tree_rooted
from .pm import Codeword, PmCode
from .transcript import Transcript


class PmRepairAdapter:
    """One plane group; helper symbols are scalars, the combined message is
    the running sum of y_i U_i (length l = d-k+1)."""

    def __init__(self, code: PmCode, word: Codeword, failed: int, helpers) -> None:
        self.code = code
        self.word = word
        self.failed = failed
        self.helpers = tuple(sorted(helpers))
        self.group_count = 1
        self.vector_len = code.l
        self._u = code.repair_matrix(self.helpers, failed)
        self._index = {h: i for i, h in enumerate(self.helpers)}

    @property
    def profile(self) -> CodeProfile:
        c = self.code
        return CodeProfile(k=c.k, d=c.d, l=c.l, n=c.n)

    def symbol(self, helper: int, group: int) -> int:
        return self.code.helper_symbol(self.word, helper, self.failed)

    def row(self, helper: int, group: int) -> tuple[int, ...]:
        return self._u.row(self._index[helper])

    def assemble(self, combined: list[tuple[int, ...]]) -> tuple[int, ...]:
        return combined[0]


class DmRepairAdapter:
    """One group per canonical plane; combined messages have r = d-k+1
    symbols and land at the group's plane indices."""

    def __init__(self, code: DmCode, word: DmCodeword, failed: int, helpers=None) -> None:
        self.code = code
        self.word = word
        self.failed = failed
        expected = tuple(i for i in range(code.n) if i != failed)
        if helpers is not None and tuple(sorted(helpers)) != expected:
            raise ValueError("this family repairs from all n-1 survivors")
        self.helpers = expected
        self.planes = code.canonical_planes(failed)
        self.group_count = len(self.planes)
        self.vector_len = code.r
        self._index = {h: i for i, h in enumerate(self.helpers)}

    @property
    def profile(self) -> CodeProfile:
        c = self.code
        return CodeProfile(k=c.k, d=c.d, l=c.l, n=c.n)

    def symbol(self, helper: int, group: int) -> int:
        return self.code.helper_trace(self.word, helper, self.failed, self.planes[group])

    def row(self, helper: int, group: int) -> tuple[int, ...]:
        u = self.code.repair_matrix(self.failed, self.planes[group])
        return u.row(self._index[helper])

    def assemble(self, combined: list[tuple[int, ...]]) -> tuple[int, ...]:
        out = [0] * self.code.l
        for plane, vec in zip(self.planes, combined):
            for a, val in zip(self.code.group(plane, self.failed), vec):
                out[a] = val
        return tuple(out)


def _validate(tree: RepairTree, adapter) -> None:
    if tree.root != adapter.failed:
        raise ValueError("tree root must be the failed vertex")
    if set(tree.non_root()) != set(adapter.helpers):
        raise ValueError("tree vertices must be exactly the helper set")


def run_af(tree: RepairTree, adapter) -> tuple[tuple[int, ...], Transcript]:
    """Accumulate and forward: raw symbols only, relayed unmodified."""
    _validate(tree, adapter)
    field_add = lambda vec, other: tuple(a ^ b for a, b in zip(vec, other))
    transcript = Transcript()
    combined = []
    for g in range(adapter.group_count):
        carried: dict[int, list[int]] = {}  # vertex -> raw symbols from its subtree
        order: dict[int, list[int]] = {}    # helper ids in payload order
        for v in reversed(tree.topo_order()):
            if v == tree.root:
                continue
            syms = [adapter.symbol(v, g)]
            ids = [v]
            for child in tree.children[v]:
                syms.extend(carried[child])
                ids.extend(order[child])
            carried[v] = syms
            order[v] = ids
            transcript.send(v, tree.parent[v], syms)
        acc = (0,) * adapter.vector_len
        for child in tree.children[tree.root]:
            for helper, y in zip(order[child], carried[child]):
                if y:
                    acc = field_add(acc, _scale(adapter, helper, g, y))
        combined.append(acc)
    return adapter.assemble(combined), transcript


def _scale(adapter, helper, group, y):
    f = adapter.code.field
    return tuple(f.mul(y, u) for u in adapter.row(helper, group))


def run_ip(tree: RepairTree, adapter) -> tuple[tuple[int, ...], Transcript]:
    """Intermediate processing: a vertex whose subtree reaches d-k+1
    contributions forwards the combined vector instead of raw symbols."""
    _validate(tree, adapter)
    profile = adapter.profile
    threshold = profile.d - profile.k + 1
    f = adapter.code.field
    field_add = lambda vec, other: tuple(a ^ b for a, b in zip(vec, other))
    transcript = Transcript()
    combined = []
    for g in range(adapter.group_count):
        # message per vertex: ("raw", [(helper, symbol)...]) or ("vec", tuple)
        messages: dict[int, tuple] = {}
        for v in reversed(tree.topo_order()):
            if v == tree.root:
                continue
            raw = [(v, adapter.symbol(v, g))]
            vec = None
            for child in tree.children[v]:
                kind, payload = messages[child]
                if kind == "raw":
                    raw.extend(payload)
                else:
                    vec = payload if vec is None else field_add(vec, payload)
            if vec is not None or tree.subtree_size[v] >= threshold:
                acc = vec if vec is not None else (0,) * adapter.vector_len
                for helper, y in raw:
                    if y:
                        acc = field_add(acc, _scale(adapter, helper, g, y))
                messages[v] = ("vec", acc)
                transcript.send(v, tree.parent[v], list(acc))
            else:
                messages[v] = ("raw", raw)
                transcript.send(v, tree.parent[v], [y for _, y in raw])
        acc = (0,) * adapter.vector_len
        for child in tree.children[tree.root]:
            kind, payload = messages[child]
            if kind == "vec":
                acc = field_add(acc, payload)
            else:
                for helper, y in payload:
                    if y:
                        acc = field_add(acc, _scale(adapter, helper, g, y))
        combined.append(acc)
    return adapter.assemble(combined), transcript


@dataclass(frozen=True)
class TranscriptViolation:
    vertex: int
    count: int
    required: Fraction


@dataclass(frozen=True)
class TranscriptReport:
    violations: tuple[TranscriptViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_transcript(tree: RepairTree, transcript: Transcript, profile: CodeProfile) -> TranscriptReport:
    """Check every child->parent count against the subtree outflow minimum
    min(l, |subtree| * l/(d-k+1)); report-only, never raises."""
    violations = []
    for v in tree.non_root():
        required = min(
            Fraction(profile.l),
            tree.subtree_size[v] * Fraction(profile.l, profile.d - profile.k + 1),
        )
        got = transcript.count(v, tree.parent[v])
        if got < required:
            violations.append(TranscriptViolation(v, got, required))
    return TranscriptReport(tuple(violations))


# -- two simultaneous failures on the gateway topology -------------------------


@dataclass(frozen=True)
class GatewayLayout:
    """Repair topology for the failed pair (0, 1): helpers span a connected
    subgraph, all traffic leaves it through one gateway helper, and an
    optional relay chain carries the data to the failed pair.  The last
    relay (or the gateway itself) is adjacent to both failed vertices, which
    are adjacent to each other."""

    helpers: tuple[int, ...]
    helper_edges: tuple[tuple[int, int], ...]
    gateway: int
    relay_chain: tuple[int, ...] = ()

    def __post_init__(self):
        if self.gateway not in self.helpers:
            raise ValueError("gateway must be a helper")
        bad = {0, 1} & set(self.helpers) | {0, 1} & set(self.relay_chain)
        if bad:
            raise ValueError("failed vertices cannot help or relay")
        if set(self.relay_chain) & set(self.helpers):
            raise ValueError("relay vertices must be outside the helper set")


@dataclass(frozen=True)
class GatewayRepairResult:
    columns: tuple
    transcript: Transcript
    helper_tree: RepairTree
    helper_tree_total: int


def run_multi_ip(layout: GatewayLayout, code: CoopCode, word: CoopCodeword) -> GatewayRepairResult:
    """Repair columns 0 and 1 through the gateway, processing step-1 sums
    inside the helper tree and relaying untouched beyond it."""
    helpers = tuple(sorted(layout.helpers))
    if len(helpers) != code.d:
        raise ValueError(f"need exactly d={code.d} helpers")
    n_vertices = max(list(helpers) + list(layout.relay_chain)) + 1
    hg = Graph(n_vertices, layout.helper_edges)
    tree = spanning_tree_rooted(hg, layout.gateway, helpers)

    threshold = code.d - code.k + 2  # = 3 when d = k+1
    f = code.field
    field_add = lambda vec, other: tuple(a ^ b for a, b in zip(vec, other))
    transcript = Transcript()
    triples = ({}, {})
    for target in (0, 1):
        for plane in range(code.planes):
            u = code.step1_matrix(target, plane, helpers)
            col_of = {h: i for i, h in enumerate(helpers)}
            messages: dict[int, tuple] = {}
            for v in reversed(tree.topo_order()):
                if v == tree.root:
                    continue
                raw = [(v, code.step1_message(word, v, target, plane))]
                vec = None
                for child in tree.children[v]:
                    kind, payload = messages[child]
                    if kind == "raw":
                        raw.extend(payload)
                    else:
                        vec = payload if vec is None else field_add(vec, payload)
                if vec is not None or tree.subtree_size[v] >= threshold:
                    acc = vec if vec is not None else (0, 0, 0)
                    for helper, y in raw:
                        if y:
                            acc = field_add(acc, tuple(
                                f.mul(y, u.at(r, col_of[helper])) for r in range(3)))
                    messages[v] = ("vec", acc)
                    transcript.send(v, tree.parent[v], list(acc))
                else:
                    messages[v] = ("raw", raw)
                    transcript.send(v, tree.parent[v], [y for _, y in raw])
            acc = (0, 0, 0)
            raw = [(tree.root, code.step1_message(word, tree.root, target, plane))]
            for child in tree.children[tree.root]:
                kind, payload = messages[child]
                if kind == "vec":
                    acc = field_add(acc, payload)
                else:
                    raw.extend(payload)
            for helper, y in raw:
                if y:
                    acc = field_add(acc, tuple(
                        f.mul(y, u.at(r, col_of[helper])) for r in range(3)))
            triples[target][plane] = acc

    helper_edges = [(v, tree.parent[v]) for v in tree.non_root()]
    helper_tree_total = transcript.total_over(helper_edges)

    # gateway -> relays -> failed pair: triples travel unprocessed
    chain = [layout.gateway, *layout.relay_chain]
    for src, dst in zip(chain, chain[1:]):
        for target in (0, 1):
            for plane in range(code.planes):
                transcript.send(src, dst, list(triples[target][plane]))
    final = chain[-1]
    for target in (0, 1):
        for plane in range(code.planes):
            transcript.send(final, target, list(triples[target][plane]))

    col0, col1, _ = code.step2_exchange(triples[0], triples[1])
    for plane in range(code.planes):
        transcript.send(0, 1, [triples[0][plane][2]])
        transcript.send(1, 0, [triples[1][plane][2]])
    return GatewayRepairResult((col0, col1), transcript, tree, helper_tree_total)
