"""Array codes with diagonal parity structure: d = n-1, l = r^n, r = n-k.

A codeword assigns to node i a vector (c_{i,a}, a in [0, r^n)) and the
defining parity checks, one per plane index a and power t, read

    sum_i lam[i][a_i]^(t-1) * c_{i,a} = 0,     t = 1..r,

where a_i is the i-th r-ary digit of a and the lam[i][j] are r*n distinct
field elements.  Repair of node i works group-by-group: the r planes whose
indices differ only in digit i form one group, each helper j contributes the
single symbol  mu_j = sum_u c_{j, a(i,u)},  and the erased group is a fixed
linear combination of the helper traces.  The combining matrix depends only
on (i, a), never on the codeword, so partial combinations can be forwarded
by intermediate vertices exactly as for the product-matrix family.

Plane groups are always addressed through their canonical representative,
the member with digit i equal to 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .galois import GF2m, Matrix, vandermonde, vec_mat

MAX_N = 8  # l = r^n grows too fast beyond desk scale


@dataclass(frozen=True)
class DmCodeword:
    code: "DmCode"
    columns: tuple[tuple[int, ...], ...]  # n columns of length l


class DmCode:
    """An [n, k] diagonal-parity array code over GF(2^m) with d = n-1."""

    def __init__(self, field: GF2m, n: int, k: int) -> None:
        if not 1 <= k < n:
            raise ValueError("need 1 <= k < n")
        if n > MAX_N:
            raise ValueError(f"n <= {MAX_N} enforced (l = r^n symbols per node)")
        self.field = field
        self.n = n
        self.k = k
        self.r = n - k
        self.d = n - 1
        self.l = self.r ** n
        if field.order <= self.r * n:
            raise ValueError("field too small: need more than r*n elements")
        self.lam = tuple(
            tuple(field.pow(field.alpha, i * self.r + j) for j in range(self.r))
            for i in range(n)
        )
        flat = [v for row in self.lam for v in row]
        if len(set(flat)) != self.r * n:
            raise ValueError("lam table entries collide")
        self._repair_cache: dict[tuple[int, int], Matrix] = {}

    # -- plane index helpers ------------------------------------------------

    def digit(self, a: int, i: int) -> int:
        return (a // self.r ** i) % self.r

    def with_digit(self, a: int, i: int, u: int) -> int:
        return a + (u - self.digit(a, i)) * self.r ** i

    def group(self, a: int, i: int) -> tuple[int, ...]:
        """Plane indices differing from a only in digit i, ordered by digit."""
        return tuple(self.with_digit(a, i, u) for u in range(self.r))

    def canonical_planes(self, i: int) -> tuple[int, ...]:
        """All a with digit i equal to 0; one representative per group."""
        return tuple(a for a in range(self.l) if self.digit(a, i) == 0)

    # -- sampling / checking -------------------------------------------------

    def sample(self, seed: int) -> DmCodeword:
        """Random codeword: per plane, k coordinates are drawn uniformly and
        the rest solve the r parity checks (deterministic per seed)."""
        rng = random.Random(seed)
        f = self.field
        cols = [[0] * self.l for _ in range(self.n)]
        for a in range(self.l):
            free = set(rng.sample(range(self.n), self.k))
            for i in free:
                cols[i][a] = rng.randrange(f.order)
            dep = sorted(set(range(self.n)) - free)
            rhs = []
            for t in range(self.r):
                acc = 0
                for i in free:
                    acc ^= f.mul(f.pow(self.lam[i][self.digit(a, i)], t), cols[i][a])
                rhs.append(acc)
            system = vandermonde(f, [self.lam[i][self.digit(a, i)] for i in dep], self.r)
            sol = system.solve(rhs)  # char 2: -rhs == rhs
            for i, val in zip(dep, sol):
                cols[i][a] = val
        return DmCodeword(self, tuple(tuple(col) for col in cols))

    def check(self, word: DmCodeword) -> bool:
        f = self.field
        for a in range(self.l):
            pts = [self.lam[i][self.digit(a, i)] for i in range(self.n)]
            vals = [word.columns[i][a] for i in range(self.n)]
            power = [1] * self.n
            for _t in range(self.r):
                s = 0
                for p, v in zip(power, vals):
                    s ^= f.mul(p, v)
                if s != 0:
                    return False
                power = [f.mul(p, pt) for p, pt in zip(power, pts)]
        return True

    # -- repair ---------------------------------------------------------------

    def helper_trace(self, word: DmCodeword, helper: int, failed: int, plane: int) -> int:
        """Sum of the helper's symbols over the failed node's plane group."""
        if helper == failed:
            raise ValueError("a failed vertex cannot help itself")
        if self.digit(plane, failed) != 0:
            raise ValueError("plane must be the canonical group representative")
        acc = 0
        for a in self.group(plane, failed):
            acc ^= word.columns[helper][a]
        return acc

    def repair_matrix(self, failed: int, plane: int) -> Matrix:
        """Codeword-independent (n-1) x r matrix; row order follows helper ids
        ascending.  The erased group equals traces @ matrix."""
        if self.digit(plane, failed) != 0:
            raise ValueError("plane must be the canonical group representative")
        key = (failed, plane)
        cached = self._repair_cache.get(key)
        if cached is not None:
            return cached
        helpers = [j for j in range(self.n) if j != failed]
        v1 = vandermonde(self.field, [self.lam[j][self.digit(plane, j)] for j in helpers], self.r)
        v2 = vandermonde(self.field, list(self.lam[failed]), self.r)
        u = v1.transpose().mul(v2.transpose().inverse())  # char 2: sign vanishes
        self._repair_cache[key] = u
        return u

    def repair_group(self, failed: int, plane: int, traces: dict[int, int]) -> tuple[int, ...]:
        """Erased symbols (c_{failed, a(i,0)}, ..., c_{failed, a(i,r-1)})."""
        helpers = [j for j in range(self.n) if j != failed]
        missing = [j for j in helpers if j not in traces]
        if missing:
            raise ValueError(f"missing helper traces: {missing}")
        u = self.repair_matrix(failed, plane)
        return vec_mat([traces[j] for j in helpers], u)

    def repair_column(self, word: DmCodeword, failed: int) -> tuple[int, ...]:
        """Full-column repair from all n-1 helpers, group by group."""
        out = [0] * self.l
        for plane in self.canonical_planes(failed):
            traces = {
                j: self.helper_trace(word, j, failed, plane)
                for j in range(self.n) if j != failed
            }
            for a, val in zip(self.group(plane, failed), self.repair_group(failed, plane, traces)):
                out[a] = val
        return tuple(out)
