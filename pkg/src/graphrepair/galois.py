"""Exact arithmetic over GF(2^m) and the small dense linear algebra built on it.

Field elements are plain Python ints in ``[0, 2^m)``: the binary digits of an
int are the coefficients of a polynomial over GF(2), reduced modulo a fixed
primitive polynomial.  Addition is XOR (characteristic 2).  Multiplication
and inversion go through log/antilog tables built once per field by repeated
multiplication with the generator ``alpha = x`` (the int 2).

Moduli, one fixed constant per supported extension degree:

    m=8  : x^8 + x^4 + x^3 + x^2 + 1   -> 0x11D
    m=16 : x^16 + x^12 + x^3 + x + 1   -> 0x1100B

Both moduli make ``alpha = x`` a generator of the multiplicative group; the
constructor re-verifies this (``alpha^(2^m - 1) = 1`` and ``alpha^e != 1``
for every maximal proper divisor exponent ``e`` of ``2^m - 1``).

Matrices are dense and row-major with int entries, sized for the code
constructions in this package (at most a few hundred entries), so clarity
wins over asymptotics: plain Gauss-Jordan elimination throughout.
"""

from __future__ import annotations

from typing import Iterable, Sequence

_MODULI = {
    8: 0x11D,
    16: 0x1100B,
}


class SingularMatrixError(ValueError):
    """Raised when inverting or solving with a singular matrix."""


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class GF2m:
    """The finite field GF(2^m) for m in {8, 16}, elements as ints."""

    def __init__(self, m: int) -> None:
        if m not in _MODULI:
            raise ValueError(f"unsupported extension degree m={m}; supported: {sorted(_MODULI)}")
        self.m = m
        self.modulus = _MODULI[m]
        self.order = 1 << m
        self.alpha = 2

        # log/antilog tables via repeated multiplication by alpha.
        q1 = self.order - 1
        exp = [0] * (2 * q1)
        log = [0] * self.order
        val = 1
        for i in range(q1):
            exp[i] = val
            log[val] = i
            val = self._mul_notable(val, self.alpha)
        if val != 1:
            raise ValueError(f"modulus {self.modulus:#x} does not close alpha's cycle at 2^m-1")
        for i in range(q1, 2 * q1):
            exp[i] = exp[i - q1]
        self._exp = exp
        self._log = log

        # alpha must generate the full multiplicative group: no proper
        # divisor exponent 2^m-1 / prime may already give 1.
        for prime in _prime_factors(q1):
            if self.pow(self.alpha, q1 // prime) == 1:
                raise ValueError(f"alpha=2 is not primitive modulo {self.modulus:#x}")

    def _mul_notable(self, a: int, b: int) -> int:
        """Carry-less multiply + reduction; used to build the tables and as a
        table-free reference in tests."""
        p = 0
        for _ in range(self.m):
            if b & 1:
                p ^= a
            a <<= 1
            if a & self.order:
                a ^= self.modulus
            b >>= 1
        return p

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add  # characteristic 2

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self._exp[self.order - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def dot(self, xs: Sequence[int], ys: Sequence[int]) -> int:
        if len(xs) != len(ys):
            raise ValueError("dot: length mismatch")
        acc = 0
        for x, y in zip(xs, ys):
            acc ^= self.mul(x, y)
        return acc

    def powers(self, x: int, count: int) -> tuple[int, ...]:
        """(1, x, x^2, ..., x^(count-1))."""
        out = []
        v = 1
        for _ in range(count):
            out.append(v)
            v = self.mul(v, x)
        return tuple(out)

    def __repr__(self) -> str:
        return f"GF2m({self.m})"


class Matrix:
    """Dense row-major matrix over a GF2m field."""

    def __init__(self, field: GF2m, rows: int, cols: int, data: Sequence[int]) -> None:
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        data = list(data)
        if len(data) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(data)}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def zeros(cls, field: GF2m, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, field: GF2m, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i * n + i] = 1
        return m

    @classmethod
    def from_rows(cls, field: GF2m, rows: Iterable[Sequence[int]]) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("no rows")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), width, [x for r in rows for x in r])

    def at(self, i: int, j: int) -> int:
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(self.data[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "Matrix":
        out = Matrix.zeros(self.field, self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out.data[j * self.rows + i] = self.at(i, j)
        return out

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        out = Matrix.zeros(f, self.rows, other.cols)
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.data[base + k]
                if a == 0:
                    continue
                obase = k * other.cols
                tbase = i * other.cols
                for j in range(other.cols):
                    b = other.data[obase + j]
                    if b:
                        out.data[tbase + j] ^= f.mul(a, b)
        return out

    __matmul__ = mul

    def _eliminate(self, augment: "Matrix | None") -> tuple[int, "Matrix | None"]:
        """Gauss-Jordan on a copy; returns (rank, reduced augment)."""
        f = self.field
        a = [list(self.row(i)) for i in range(self.rows)]
        aug = [list(augment.row(i)) for i in range(augment.rows)] if augment is not None else None
        rank = 0
        for col in range(self.cols):
            pivot = next((r for r in range(rank, self.rows) if a[r][col]), None)
            if pivot is None:
                continue
            a[rank], a[pivot] = a[pivot], a[rank]
            if aug is not None:
                aug[rank], aug[pivot] = aug[pivot], aug[rank]
            pinv = f.inv(a[rank][col])
            a[rank] = [f.mul(pinv, x) for x in a[rank]]
            if aug is not None:
                aug[rank] = [f.mul(pinv, x) for x in aug[rank]]
            for r in range(self.rows):
                if r != rank and a[r][col]:
                    factor = a[r][col]
                    a[r] = [x ^ f.mul(factor, y) for x, y in zip(a[r], a[rank])]
                    if aug is not None:
                        aug[r] = [x ^ f.mul(factor, y) for x, y in zip(aug[r], aug[rank])]
            rank += 1
            if rank == self.rows:
                break
        reduced = Matrix.from_rows(f, aug) if aug is not None else None
        return rank, reduced

    def rank(self) -> int:
        return self._eliminate(None)[0]

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices invert")
        rank, reduced = self._eliminate(Matrix.identity(self.field, self.rows))
        if rank != self.rows:
            raise SingularMatrixError("matrix is singular")
        return reduced

    def solve(self, rhs: Sequence[int]) -> tuple[int, ...]:
        """Solve A x = rhs for square A."""
        if self.rows != self.cols:
            raise ValueError("solve needs a square matrix")
        if len(rhs) != self.rows:
            raise ValueError("rhs length mismatch")
        rank, reduced = self._eliminate(Matrix(self.field, self.rows, 1, list(rhs)))
        if rank != self.rows:
            raise SingularMatrixError("matrix is singular")
        return reduced.col(0)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"


def vandermonde(field: GF2m, points: Sequence[int], rows: int) -> Matrix:
    """rows x len(points) matrix with entry (i, j) = points[j]^i."""
    if not points:
        raise ValueError("need at least one point")
    if rows < 1:
        raise ValueError("need at least one row")
    data = []
    current = [1] * len(points)
    for _ in range(rows):
        data.extend(current)
        current = [field.mul(c, p) for c, p in zip(current, points)]
    return Matrix(field, rows, len(points), data)


def mat_vec(m: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    """m @ v for a column vector v."""
    if m.cols != len(v):
        raise ValueError("dimension mismatch")
    return tuple(m.field.dot(m.row(i), v) for i in range(m.rows))


def vec_mat(v: Sequence[int], m: Matrix) -> tuple[int, ...]:
    """v @ m for a row vector v."""
    if m.rows != len(v):
        raise ValueError("dimension mismatch")
    return tuple(m.field.dot(v, m.col(j)) for j in range(m.cols))
