"""Product-matrix minimum-storage codes with d = 2k-2 and l = k-1.

The message is a pair of symmetric l x l matrices (S1, S2), giving
k(k-1) free symbols.  Column i of a codeword is

    C_i = phi_i S1 + lam_i phi_i S2,

where phi_i = (1, x_i, ..., x_i^(l-1)) and lam_i = x_i^l for n distinct
evaluation points x_i.  A helper i contributes the single symbol
y_i = C_i . phi_f for the repair of column f, and the stacked download
over any d helpers satisfies  y = Psi_D [S1 phi_f^T ; S2 phi_f^T]  with
Psi_D an invertible d x d matrix.  Rewriting gives a codeword-independent
d x l combining matrix U with rows U_i such that

    C_f = sum_i y_i U_i,

which is what lets intermediate vertices of a repair tree forward partial
l-symbol combinations instead of raw symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .galois import GF2m, Matrix, mat_vec, vec_mat

MDS_CHECK_MAX_N = 12


@dataclass(frozen=True)
class PmMessage:
    """Symmetric message blocks; the data actually stored by the code."""

    s1: Matrix
    s2: Matrix

    def __post_init__(self):
        for block in (self.s1, self.s2):
            if block.rows != block.cols:
                raise ValueError("message blocks must be square")
            if block != block.transpose():
                raise ValueError("message blocks must be symmetric")
        if self.s1.rows != self.s2.rows:
            raise ValueError("message blocks must have equal size")


@dataclass(frozen=True)
class Codeword:
    code: "PmCode"
    columns: tuple[tuple[int, ...], ...]


class PmCode:
    """An [n, k] product-matrix code over GF(2^m); d = 2k-2 helpers."""

    def __init__(self, field: GF2m, n: int, k: int) -> None:
        if k < 2:
            raise ValueError("k must be at least 2")
        self.field = field
        self.n = n
        self.k = k
        self.l = k - 1
        self.d = 2 * k - 2
        if n <= self.d:
            raise ValueError(f"need n > d = {self.d}, got n = {n}")
        # evaluation points: consecutive powers of alpha
        self.x = tuple(field.pow(field.alpha, i) for i in range(n))
        self.lam = tuple(field.pow(xi, self.l) for xi in self.x)
        if len(set(self.x)) != n:
            raise ValueError("evaluation points collide; field too small for n")
        if len(set(self.lam)) != n:
            raise ValueError("lam values collide; field too small for this (n, k)")
        self._repair_cache: dict[tuple[tuple[int, ...], int], Matrix] = {}

    def phi(self, i: int) -> tuple[int, ...]:
        return self.field.powers(self.x[i], self.l)

    # -- encoding ---------------------------------------------------------

    def encode(self, msg: PmMessage) -> Codeword:
        if msg.s1.rows != self.l:
            raise ValueError(f"message blocks must be {self.l}x{self.l}")
        f = self.field
        cols = []
        for i in range(self.n):
            phi = self.phi(i)
            a = vec_mat(phi, msg.s1)
            b = vec_mat(phi, msg.s2)
            cols.append(tuple(x ^ f.mul(self.lam[i], y) for x, y in zip(a, b)))
        return Codeword(self, tuple(cols))

    def message_from_vector(self, free: list[int]) -> PmMessage:
        """Bijection from k(k-1) free symbols to (S1, S2): the vector fills the
        upper triangles (diagonal included) row-major, S1 first."""
        l = self.l
        per_block = l * (l + 1) // 2
        if len(free) != 2 * per_block:
            raise ValueError(f"need {2 * per_block} free symbols")
        blocks = []
        for off in (0, per_block):
            m = Matrix.zeros(self.field, l, l)
            idx = off
            for r in range(l):
                for c in range(r, l):
                    m.data[r * l + c] = free[idx]
                    m.data[c * l + r] = free[idx]
                    idx += 1
            blocks.append(m)
        return PmMessage(*blocks)

    def random_message(self, rng) -> PmMessage:
        count = self.k * (self.k - 1)
        return self.message_from_vector([rng.randrange(self.field.order) for _ in range(count)])

    def decode(self, columns: dict[int, tuple[int, ...]]) -> PmMessage:
        """Recover the message from any k columns by solving the linear system
        in the free message symbols."""
        if len(columns) < self.k:
            raise ValueError(f"need at least k={self.k} columns")
        chosen = sorted(columns)[: self.k]
        a = self._encoding_map(chosen)
        rhs = [sym for i in chosen for sym in columns[i]]
        free = a.solve(rhs)
        return self.message_from_vector(list(free))

    def _encoding_map(self, column_ids) -> Matrix:
        """Matrix of the linear map (free message symbols) -> (stacked columns)."""
        f = self.field
        l = self.l
        per_block = l * (l + 1) // 2
        nfree = 2 * per_block
        rows = []
        for i in column_ids:
            phi = self.phi(i)
            for c in range(l):
                row = [0] * nfree
                for block, off in ((0, 0), (1, per_block)):
                    scale = 1 if block == 0 else self.lam[i]
                    idx = off
                    for r in range(l):
                        for cc in range(r, l):
                            # S[r][cc] == S[cc][r] contributes phi[r] to column cc
                            # and phi[cc] to column r.
                            coeff = 0
                            if cc == c:
                                coeff ^= phi[r]
                            if r == c and cc != r:
                                coeff ^= phi[cc]
                            if coeff:
                                row[idx] ^= f.mul(scale, coeff)
                            idx += 1
                rows.append(row)
        return Matrix.from_rows(f, rows)

    # -- repair -----------------------------------------------------------

    def helper_symbol(self, word: Codeword, helper: int, failed: int) -> int:
        """The one field symbol helper sends for the repair of column failed."""
        if helper == failed:
            raise ValueError("a failed vertex cannot help itself")
        if not (0 <= helper < self.n and 0 <= failed < self.n):
            raise ValueError("vertex index out of range")
        return self.field.dot(word.columns[helper], self.phi(failed))

    def repair_matrix(self, helpers, failed: int) -> Matrix:
        """Codeword-independent d x l matrix U with C_f = sum_i y_i U_i, rows
        ordered like the sorted helper list."""
        helpers = tuple(sorted(helpers))
        if len(helpers) != self.d or len(set(helpers)) != self.d:
            raise ValueError(f"need {self.d} distinct helpers")
        if failed in helpers or not 0 <= failed < self.n:
            raise ValueError("failed vertex must be outside the helper set")
        key = (helpers, failed)
        cached = self._repair_cache.get(key)
        if cached is not None:
            return cached
        f = self.field
        l = self.l
        psi_rows = []
        for i in helpers:
            phi = self.phi(i)
            psi_rows.append(list(phi) + [f.mul(self.lam[i], p) for p in phi])
        psi_t_inv = Matrix.from_rows(f, psi_rows).transpose().inverse()
        # stack [I_l ; lam_f I_l]
        stack = Matrix.zeros(f, 2 * l, l)
        for j in range(l):
            stack.data[j * l + j] = 1
            stack.data[(l + j) * l + j] = self.lam[failed]
        u = psi_t_inv.mul(stack)
        self._repair_cache[key] = u
        return u

    def repair_from_symbols(self, helpers, failed: int, symbols: dict[int, int]) -> tuple[int, ...]:
        """Direct repair: combine the helpers' symbols into column failed."""
        helpers = tuple(sorted(helpers))
        u = self.repair_matrix(helpers, failed)
        ys = [symbols[i] for i in helpers]
        return vec_mat(ys, u)

    # -- structural checks --------------------------------------------------

    def mds_check(self) -> bool:
        """Every k-subset of columns determines the message.  Enumerates all
        subsets, so capped at small n."""
        if self.n > MDS_CHECK_MAX_N:
            raise ValueError(f"mds_check enumerates subsets; capped at n <= {MDS_CHECK_MAX_N}")
        nfree = self.k * (self.k - 1)
        for subset in combinations(range(self.n), self.k):
            if self._encoding_map(subset).rank() != nfree:
                return False
        return True
