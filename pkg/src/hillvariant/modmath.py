"""Exact scalar and matrix arithmetic over Z_m.

Matrices and row vectors are immutable and carry their modulus.  Public
indexing is 1-based (``K.at(i, j)``) to line up with the usual textbook
formulas; storage is a tuple of row tuples.

Arithmetic that the cost model cares about (modular multiplications,
additions, inversions) can be tallied by running it inside ``counting()``.
Outside a counting block the vector routines take a fast path that does
not touch the tally at all.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

MAX_MODULUS = 2**31


class NotInvertible(ArithmeticError):
    """Raised when an element or matrix has no inverse modulo m."""


class DimensionMismatch(ValueError):
    pass


class ModulusMismatch(ValueError):
    pass


class NotPrime(ValueError):
    pass


# ---------------------------------------------------------------------------
# operation tally
# ---------------------------------------------------------------------------


@dataclass
class OpCount:
    """Tally of modular multiplications, additions, inversions and hashes."""

    mul: int = 0
    add: int = 0
    inv: int = 0
    hash: int = 0

    def __post_init__(self) -> None:
        if min(self.mul, self.add, self.inv, self.hash) < 0:
            raise ValueError("operation counts must be non-negative")

    def __add__(self, other: OpCount) -> OpCount:
        return OpCount(
            self.mul + other.mul,
            self.add + other.add,
            self.inv + other.inv,
            self.hash + other.hash,
        )

    def scaled(self, k: int) -> OpCount:
        return OpCount(self.mul * k, self.add * k, self.inv * k, self.hash * k)

    def divided(self, k: int) -> OpCount:
        """Exact division of every count by ``k`` (raises if not exact)."""
        parts = (self.mul, self.add, self.inv, self.hash)
        if any(x % k for x in parts):
            raise ValueError(f"counts {parts} are not divisible by {k}")
        return OpCount(*(x // k for x in parts))


_active: contextvars.ContextVar[OpCount | None] = contextvars.ContextVar(
    "hillvariant_opcount", default=None
)


@contextlib.contextmanager
def counting() -> Iterator[OpCount]:
    """Tally every counted operation performed inside the block."""
    tally = OpCount()
    token = _active.set(tally)
    try:
        yield tally
    finally:
        _active.reset(token)


def tally(mul: int = 0, add: int = 0, inv: int = 0, hash: int = 0) -> None:
    t = _active.get()
    if t is not None:
        t.mul += mul
        t.add += add
        t.inv += inv
        t.hash += hash


def is_counting() -> bool:
    return _active.get() is not None


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------


def is_prime(p: int) -> bool:
    """Deterministic trial division; fine for p < 2**31."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def _check_modulus(m: int) -> None:
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if m >= MAX_MODULUS:
        raise ValueError(f"modulus must be < 2**31, got {m}")


def mod_mul(a: int, b: int, m: int) -> int:
    tally(mul=1)
    return a * b % m


def mod_add(a: int, b: int, m: int) -> int:
    tally(add=1)
    return (a + b) % m


def mod_sub(a: int, b: int, m: int) -> int:
    tally(add=1)
    return (a - b) % m


def mod_inv(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    tally(inv=1)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise NotInvertible(f"{a} is not invertible mod {m} (gcd={r0})")
    return s0 % m


# ---------------------------------------------------------------------------
# vectors and matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RowVector:
    entries: tuple[int, ...]
    modulus: int

    def __init__(self, entries: Iterable[int], modulus: int) -> None:
        _check_modulus(modulus)
        object.__setattr__(self, "entries", tuple(int(x) % modulus for x in entries))
        object.__setattr__(self, "modulus", modulus)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    @classmethod
    def zeros(cls, n: int, modulus: int) -> RowVector:
        return cls((0,) * n, modulus)

    def tolist(self) -> list[int]:
        return list(self.entries)


@dataclass(frozen=True)
class Matrix:
    rows: tuple[tuple[int, ...], ...]
    modulus: int
    _cols: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __init__(self, rows: Iterable[Iterable[int]], modulus: int) -> None:
        _check_modulus(modulus)
        data = tuple(tuple(int(x) % modulus for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionMismatch("matrix must be non-empty")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_cols", tuple(zip(*data)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def n(self) -> int:
        r, c = self.shape
        if r != c:
            raise DimensionMismatch(f"matrix is {r}x{c}, not square")
        return r

    def at(self, i: int, j: int) -> int:
        """Entry k_ij with 1-based row i and column j."""
        if i < 1 or j < 1:
            raise IndexError(f"1-based index expected, got ({i}, {j})")
        return self.rows[i - 1][j - 1]

    def column(self, j: int) -> tuple[int, ...]:
        return self._cols[j - 1]

    @classmethod
    def identity(cls, n: int, modulus: int) -> Matrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], modulus)

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int) -> Matrix:
        return cls([[0] * cols for _ in range(rows)], modulus)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _same_modulus(a: int, b: int) -> None:
    if a != b:
        raise ModulusMismatch(f"moduli differ: {a} vs {b}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    _same_modulus(a.modulus, b.modulus)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    m = a.modulus
    return Matrix(
        [[sum(x * y for x, y in zip(row, col)) % m for col in b._cols] for row in a.rows],
        m,
    )


def vec_mat_mul(x: RowVector, k: Matrix) -> RowVector:
    """Row vector times matrix, reduced mod m."""
    _same_modulus(x.modulus, k.modulus)
    if len(x) != k.shape[0]:
        raise DimensionMismatch(f"vector of length {len(x)} vs matrix {k.shape}")
    m = x.modulus
    if not is_counting():
        return RowVector([sum(map(int.__mul__, x.entries, col)) % m for col in k._cols], m)
    out = []
    for col in k._cols:
        acc = mod_mul(x.entries[0], col[0], m)
        for xi, kij in zip(x.entries[1:], col[1:]):
            acc = mod_add(acc, mod_mul(xi, kij, m), m)
        out.append(acc)
    return RowVector(out, m)


def vec_scale(c: int, x: RowVector) -> RowVector:
    m = x.modulus
    if not is_counting():
        return RowVector([c * v for v in x.entries], m)
    return RowVector([mod_mul(c, v, m) for v in x.entries], m)


def vec_add(x: RowVector, y: RowVector) -> RowVector:
    _same_modulus(x.modulus, y.modulus)
    if len(x) != len(y):
        raise DimensionMismatch(f"vector lengths {len(x)} and {len(y)} differ")
    m = x.modulus
    if not is_counting():
        return RowVector(map(int.__add__, x.entries, y.entries), m)
    return RowVector([mod_add(a, b, m) for a, b in zip(x, y)], m)


def vec_sub(x: RowVector, y: RowVector) -> RowVector:
    _same_modulus(x.modulus, y.modulus)
    if len(x) != len(y):
        raise DimensionMismatch(f"vector lengths {len(x)} and {len(y)} differ")
    m = x.modulus
    if not is_counting():
        return RowVector(map(int.__sub__, x.entries, y.entries), m)
    return RowVector([mod_sub(a, b, m) for a, b in zip(x, y)], m)


def _rational_inverse(rows: Sequence[Sequence[int]]) -> tuple[Fraction, list[list[Fraction]] | None]:
    """Gauss-Jordan over Q.  Returns (det, inverse or None if singular)."""
    n = len(rows)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0), None
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        pv = a[c][c]
        det *= pv
        a[c] = [v / pv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [v - f * w for v, w in zip(a[r], a[c])]
    return det, [row[n:] for row in a]


def _gauss_jordan_prime(rows: Sequence[Sequence[int]], p: int) -> tuple[int, list[list[int]] | None]:
    n = len(rows)
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] % p), None)
        if piv is None:
            return 0, None
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        pv = a[c][c]
        det = det * pv % p
        inv = pow(pv, -1, p)
        a[c] = [v * inv % p for v in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [(v - f * w) % p for v, w in zip(a[r], a[c])]
    return det % p, [row[n:] for row in a]


def mat_det(a: Matrix) -> int:
    """Determinant mod m.

    Prime moduli use elimination in the field; composite moduli compute the
    integer determinant exactly over Q so no non-unit is ever divided by.
    """
    a.n  # raises unless square
    m = a.modulus
    if is_prime(m):
        return _gauss_jordan_prime(a.rows, m)[0]
    det, _ = _rational_inverse(a.rows)
    return int(det) % m


def mat_inv(a: Matrix) -> Matrix:
    n = a.n
    m = a.modulus
    if is_prime(m):
        det, inv = _gauss_jordan_prime(a.rows, m)
        if inv is None:
            raise NotInvertible(f"matrix is singular mod {m}")
        return Matrix(inv, m)
    det, inv = _rational_inverse(a.rows)
    d = int(det) % m
    if math.gcd(d, m) != 1:
        raise NotInvertible(f"det {d} shares a factor with {m}")
    # A^-1 = adj(A)/det; adj(A) = det * A^-1 is integral.
    dinv = pow(d, -1, m)
    adj = [[int(v * det) for v in row] for row in inv]  # type: ignore[union-attr]
    return Matrix([[x * dinv for x in row] for row in adj], m)


def is_valid_key(a: Matrix) -> bool:
    return math.gcd(mat_det(a), a.modulus) == 1


def keyspace_size(n: int, p: int) -> int:
    """Number of invertible n x n matrices over Z_p, i.e. |GL(n, p)|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    q = p**n
    return math.prod(q - p**k for k in range(n))


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_matrix(a: Matrix) -> str:
    """``n m`` header line followed by n rows of residues."""
    n = a.n
    lines = [f"{n} {a.modulus}"]
    lines += [" ".join(str(v) for v in row) for row in a.rows]
    return "\n".join(lines) + "\n"


def parse_matrix_rows(lines: Sequence[str], n: int, modulus: int) -> Matrix:
    body = [ln.split() for ln in lines if ln.strip()]
    if len(body) != n or any(len(r) != n for r in body):
        raise DimensionMismatch(f"expected {n} rows of {n} entries")
    rows = [[int(v) for v in r] for r in body]
    if any(not 0 <= v < modulus for r in rows for v in r):
        raise ValueError(f"matrix entries must lie in [0, {modulus})")
    return Matrix(rows, modulus)


def parse_matrix(text: str) -> Matrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("matrix header must be 'n m'")
    n, m = int(header[0]), int(header[1])
    return parse_matrix_rows(lines[1:], n, m)
