"""Cooperative repair of two failed nodes, and the two-neighbor exchange scheme.

Two constructions live here, both defined by per-plane parity checks with
binary plane digits (plane ``a`` has bit ``i`` selecting which of the two
field elements ``lam[i][0], lam[i][1]`` multiplies node i's symbol):

* ``CoopCode``: an [n, k, d=k+1] code with l = 3 * 2^n symbols per node,
  indexed (b, a) with b in {0,1,2}.  Nodes 0 and 1 fail together and are
  repaired through a common helper set of size k+1 drawn from {2..n-1}.
  Step 1: helper i sends, per plane a, the sums
      to node 0:  c_{i,0,a} + c_{i,1,a^1}       (flip bit 0)
      to node 1:  c_{i,0,a} + c_{i,2,a^2}       (flip bit 1)
  and each failed node solves a square linear system for its two own symbols
  plus one cross-sum about the other failed node.  Step 2 exchanges the
  cross-sums (one symbol per plane per direction), completing both columns.
  The combining matrix of step 1 is codeword independent, so intermediate
  vertices can forward partial 3-symbol combinations; the engine module
  drives that protocol.

* ``TwoNeighborCode``: an [n, k, d=k+1] code with l = 2^n used on the fixed
  topology: failed vertex 0 adjacent only to helpers 1 and 2, far helpers
  3..k+1 adjacent to both 1 and 2.  Helpers 1 and 2 exchange aggregated
  sums, each privately resolves half of vertex 0's plane groups, and both
  forward 4 symbols per group batch to vertex 0.  The total transcript is
  exactly (d+1) * 2^(n-1) symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
import random

from .galois import GF2m, Matrix, vandermonde, mat_vec
from .transcript import Transcript

MAX_COOP_N = 10


def _plane_solve(field, points_unknown, rhs):
    """Solve sum_j points[j]^t * u[j] = rhs[t], t = 0..len-1 (char 2)."""
    system = vandermonde(field, points_unknown, len(points_unknown))
    return system.solve(rhs)


class _BinaryPlaneCode:
    """Shared machinery: parity checks over binary plane digits."""

    planes_per_block: int

    def __init__(self, field: GF2m, n: int, k: int, blocks: int) -> None:
        if not 1 <= k < n:
            raise ValueError("need 1 <= k < n")
        if n > MAX_COOP_N:
            raise ValueError(f"n <= {MAX_COOP_N} enforced (2^n planes per block)")
        if field.order <= 2 * n:
            raise ValueError("field too small: need more than 2n elements")
        self.field = field
        self.n = n
        self.k = k
        self.d = k + 1
        self.blocks = blocks
        self.planes = 1 << n
        self.l = blocks * self.planes
        self.checks = n - k  # parity powers t = 0 .. n-k-1
        self.lam = tuple(
            (field.pow(field.alpha, 2 * i), field.pow(field.alpha, 2 * i + 1))
            for i in range(n)
        )

    def bit(self, a: int, i: int) -> int:
        return (a >> i) & 1

    def point(self, i: int, a: int) -> int:
        return self.lam[i][self.bit(a, i)]

    def _sample_columns(self, seed: int):
        """columns[i][b][a]; each (b, a) plane solves the parity checks with k
        uniformly chosen free coordinates."""
        rng = random.Random(seed)
        f = self.field
        cols = [[[0] * self.planes for _ in range(self.blocks)] for _ in range(self.n)]
        for b in range(self.blocks):
            for a in range(self.planes):
                free = set(rng.sample(range(self.n), self.k))
                for i in free:
                    cols[i][b][a] = rng.randrange(f.order)
                dep = sorted(set(range(self.n)) - free)
                rhs = []
                for t in range(self.checks):
                    acc = 0
                    for i in free:
                        acc ^= f.mul(f.pow(self.point(i, a), t), cols[i][b][a])
                    rhs.append(acc)
                for i, val in zip(dep, _plane_solve(f, [self.point(i, a) for i in dep], rhs)):
                    cols[i][b][a] = val
        return tuple(tuple(tuple(plane) for plane in col) for col in cols)

    def _check_columns(self, columns) -> bool:
        f = self.field
        for b in range(self.blocks):
            for a in range(self.planes):
                pts = [self.point(i, a) for i in range(self.n)]
                vals = [columns[i][b][a] for i in range(self.n)]
                power = [1] * self.n
                for _t in range(self.checks):
                    s = 0
                    for p, v in zip(power, vals):
                        s ^= f.mul(p, v)
                    if s != 0:
                        return False
                    power = [f.mul(p, pt) for p, pt in zip(power, pts)]
        return True


@dataclass(frozen=True)
class CoopCodeword:
    code: "CoopCode"
    columns: tuple  # columns[i][b][a]


class CoopCode(_BinaryPlaneCode):
    """[n, k, d=k+1] code for the joint repair of nodes 0 and 1."""

    FAILED = (0, 1)

    def __init__(self, field: GF2m, n: int, k: int) -> None:
        super().__init__(field, n, k, blocks=3)
        if n < k + 3:
            raise ValueError("need n >= k+3 so that k+1 helpers avoid both failed nodes")
        self._step1_cache: dict = {}

    def sample(self, seed: int) -> CoopCodeword:
        return CoopCodeword(self, self._sample_columns(seed))

    def check(self, word: CoopCodeword) -> bool:
        return self._check_columns(word.columns)

    def step1_message(self, word: CoopCodeword, helper: int, target: int, plane: int) -> int:
        """The symbol helper sends toward one failed node for one plane."""
        if helper in self.FAILED:
            raise ValueError("failed nodes do not send step-1 messages")
        col = word.columns[helper]
        if target == 0:
            return col[0][plane] ^ col[1][plane ^ 1]
        if target == 1:
            return col[0][plane] ^ col[2][plane ^ 2]
        raise ValueError("target must be 0 or 1")

    def _unknown_points(self, target: int, plane: int) -> list[int]:
        """Points of the unknowns: own symbol, own flipped-block symbol, the
        cross-sum at the other failed node, then non-helper sums (appended by
        the caller).  Order fixed; rows 0..2 of the combining matrix are the
        recovered triple."""
        a0, a1 = self.bit(plane, 0), self.bit(plane, 1)
        if target == 0:
            return [self.lam[0][a0], self.lam[0][a0 ^ 1], self.lam[1][a1]]
        return [self.lam[1][a1], self.lam[1][a1 ^ 1], self.lam[0][a0]]

    def step1_matrix(self, target: int, plane: int, helpers: tuple[int, ...]) -> Matrix:
        """Codeword-independent (n-k) x (k+1) matrix mapping the helper
        messages to [own, own-flipped, cross-sum, non-helper sums...]."""
        helpers = tuple(sorted(helpers))
        key = (target, plane, helpers)
        cached = self._step1_cache.get(key)
        if cached is not None:
            return cached
        if len(helpers) != self.d or len(set(helpers)) != self.d:
            raise ValueError(f"need {self.d} distinct helpers")
        if any(h in self.FAILED or not 2 <= h < self.n for h in helpers):
            raise ValueError("helpers must be drawn from {2..n-1}")
        non_helpers = [i for i in range(2, self.n) if i not in helpers]
        pts_unknown = self._unknown_points(target, plane) + [
            self.point(i, plane) for i in non_helpers
        ]
        v_unknown = vandermonde(self.field, pts_unknown, self.checks)
        v_known = vandermonde(self.field, [self.point(i, plane) for i in helpers], self.checks)
        u = v_unknown.inverse().mul(v_known)  # char 2: sign vanishes
        self._step1_cache[key] = u
        return u

    def step1_recover(self, target: int, plane: int, messages: dict[int, int]) -> tuple[int, int, int]:
        """(own symbol, own flipped-block symbol, cross-sum) for one plane."""
        helpers = tuple(sorted(messages))
        u = self.step1_matrix(target, plane, helpers)
        vec = mat_vec(u, [messages[h] for h in helpers])
        return vec[0], vec[1], vec[2]

    def step2_exchange(self, triples0: dict[int, tuple[int, int, int]],
                       triples1: dict[int, tuple[int, int, int]]):
        """Complete both columns from the per-plane step-1 triples.

        Returns (column0, column1, exchanged) where exchanged counts the
        cross-sum symbols moved between the failed nodes (one per plane per
        direction)."""
        if set(triples0) != set(range(self.planes)) or set(triples1) != set(range(self.planes)):
            raise ValueError("step 1 incomplete: need every plane for both targets")
        col0 = [[0] * self.planes for _ in range(3)]
        col1 = [[0] * self.planes for _ in range(3)]
        for a in range(self.planes):
            own0, flip0, _ = triples0[a]
            col0[0][a] = own0
            col0[1][a ^ 1] = flip0
            own1, flip1, _ = triples1[a]
            col1[0][a] = own1
            col1[2][a ^ 2] = flip1
        for a in range(self.planes):
            col1[1][a ^ 1] = triples0[a][2] ^ col1[0][a]  # node 0 forwards its cross-sum
            col0[2][a ^ 2] = triples1[a][2] ^ col0[0][a]  # node 1 forwards its cross-sum
        exchanged = 2 * self.planes
        freeze = lambda col: tuple(tuple(block) for block in col)
        return freeze(col0), freeze(col1), exchanged


@dataclass(frozen=True)
class TwoNeighborCodeword:
    code: "TwoNeighborCode"
    columns: tuple  # columns[i][a], block count 1 collapsed away


# bit triples (a_0, a_1, a_2) of each aggregation group, keyed by
# (receiver vertex, group index); the receiver resolves vertex 0's symbols
# at these planes
_GROUPS = {
    (1, 0): ((0, 0, 0), (0, 1, 0), (1, 0, 0)),
    (1, 1): ((0, 0, 1), (0, 1, 1), (1, 1, 1)),
    (2, 0): ((0, 0, 0), (1, 0, 0), (1, 0, 1)),
    (2, 1): ((0, 1, 1), (1, 1, 0), (1, 1, 1)),
}


def _triple_to_offset(tr):
    return tr[0] | (tr[1] << 1) | (tr[2] << 2)


class TwoNeighborCode(_BinaryPlaneCode):
    """[n, k, d=k+1] code repaired on the fixed two-neighbor topology."""

    def __init__(self, field: GF2m, n: int, k: int) -> None:
        super().__init__(field, n, k, blocks=1)
        if n < k + 2:
            raise ValueError("need n >= k+2 (far helpers 3..k+1 must exist)")
        if k < 2:
            raise ValueError("need k >= 2 for at least one far helper")

    @property
    def helpers(self) -> tuple[int, ...]:
        return tuple(range(1, self.k + 2))

    def sample(self, seed: int) -> TwoNeighborCodeword:
        cols = self._sample_columns(seed)
        return TwoNeighborCodeword(self, tuple(col[0] for col in cols))

    def check(self, word: TwoNeighborCodeword) -> bool:
        return self._check_columns(tuple((col,) for col in word.columns))

    def group_sum(self, word: TwoNeighborCodeword, sender: int, receiver: int,
                  group: int, base: int) -> int:
        """Sum of the sender's symbols over one aggregation group; base fixes
        the plane bits of vertices 3..n-1."""
        acc = 0
        for tr in _GROUPS[(receiver, group)]:
            acc ^= word.columns[sender][base | _triple_to_offset(tr)]
        return acc

    def _resolve(self, word, receiver: int, group: int, base: int, sums: dict[int, int]):
        """Solve one group at a direct helper: returns (pair, single) where
        pair is the two-plane sum and single the lone symbol of vertex 0."""
        f = self.field
        triples = _GROUPS[(receiver, group)]
        planes = [base | _triple_to_offset(tr) for tr in triples]
        bits0 = [tr[0] for tr in triples]
        # vertex 0 contributes a repeated bit (the pair) and a lone bit
        single_pos = 0 if bits0.count(bits0[0]) == 1 else (1 if bits0.count(bits0[1]) == 1 else 2)
        pair_bit = bits0[(single_pos + 1) % 3]
        single_bit = bits0[single_pos]

        non_helpers = list(range(self.k + 2, self.n))
        pts_unknown = [self.lam[0][pair_bit], self.lam[0][single_bit]] + [
            self.point(i, base) for i in non_helpers
        ]

        def sender_point(sender):
            # direct helpers appear at the bit their group fixes; everyone
            # else keeps the bit carried by base
            if sender in (1, 2):
                return self.lam[sender][triples[0][sender]]
            return self.point(sender, base)

        rhs = []
        for t in range(self.checks):
            acc = 0
            for plane in planes:
                own = word.columns[receiver][plane]
                acc ^= f.mul(f.pow(self.point(receiver, plane), t), own)
            for sender, value in sums.items():
                acc ^= f.mul(f.pow(sender_point(sender), t), value)
            rhs.append(acc)
        sol = _plane_solve(f, pts_unknown, rhs)
        return sol[0], sol[1]

    def repair(self, word: TwoNeighborCodeword):
        """Run the full exchange protocol; returns (column0, transcript).

        Transcript edges per group batch: every far helper sends 2 symbols to
        each of vertices 1 and 2; vertices 1 and 2 exchange 2 symbols each;
        each sends 4 resolved symbols to vertex 0."""
        transcript = Transcript()
        column = [0] * self.planes
        far = list(range(3, self.k + 2))
        for hi in range(1 << (self.n - 3)):
            base = hi << 3
            sums = {
                (receiver, group): {
                    i: self.group_sum(word, i, receiver, group, base)
                    for i in far + [3 - receiver]  # the other direct helper joins in
                }
                for receiver in (1, 2)
                for group in (0, 1)
            }
            for i in far:
                transcript.send(i, 1, [sums[(1, 0)][i], sums[(1, 1)][i]])
                transcript.send(i, 2, [sums[(2, 0)][i], sums[(2, 1)][i]])
            transcript.send(2, 1, [sums[(1, 0)][2], sums[(1, 1)][2]])
            transcript.send(1, 2, [sums[(2, 0)][1], sums[(2, 1)][1]])

            a_pair, a_single = self._resolve(word, 1, 0, base, sums[(1, 0)])
            c_pair, c_single = self._resolve(word, 1, 1, base, sums[(1, 1)])
            e_pair, e_single = self._resolve(word, 2, 0, base, sums[(2, 0)])
            g_pair, g_single = self._resolve(word, 2, 1, base, sums[(2, 1)])
            transcript.send(1, 0, [a_pair, a_single, c_pair, c_single])
            transcript.send(2, 0, [e_pair, e_single, g_pair, g_single])

            plane = lambda tr: base | _triple_to_offset(tr)
            column[plane((0, 0, 0))] = e_single
            column[plane((1, 0, 0))] = a_single
            column[plane((1, 1, 1))] = c_single
            column[plane((0, 1, 1))] = g_single
            column[plane((0, 1, 0))] = a_pair ^ e_single
            column[plane((0, 0, 1))] = c_pair ^ g_single
            column[plane((1, 0, 1))] = e_pair ^ a_single
            column[plane((1, 1, 0))] = g_pair ^ c_single
        return tuple(column), transcript

    def bandwidth_formula(self) -> int:
        """(d+1) * 2^(n-1): the exact transcript total of repair()."""
        return (self.d + 1) * (1 << (self.n - 1))
