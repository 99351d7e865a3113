"""Small finite fields GF(q) and exact linear algebra over them.

Fields are table driven: addition, multiplication, negation and inversion
are precomputed dense lookup tables, so every operation is exact integer
arithmetic and bit-for-bit reproducible.  Supported sizes are the primes
up to 13 plus the two characteristic-2 extension fields GF(4) and GF(8).
Elements are represented as plain ints in ``range(q)``; for the extension
fields the int is the coefficient bitmask of the polynomial representative.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, UnsupportedField

_PRIME_SIZES = (2, 3, 5, 7, 11, 13)

# q -> (characteristic, degree, irreducible polynomial bitmask).
# GF(4) is built from x^2 + x + 1, GF(8) from x^3 + x + 1.
_EXTENSION_FIELDS = {4: (2, 2, 0b111), 8: (2, 3, 0b1011)}

SUPPORTED_SIZES = tuple(sorted(_PRIME_SIZES + tuple(_EXTENSION_FIELDS)))


def _poly_mul_mod2(a: int, b: int, modulus: int, degree: int) -> int:
    """Carry-less product of two GF(2)[x] bitmasks reduced mod ``modulus``."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> degree & 1:
            a ^= modulus
    return acc


class FieldSpec:
    """Arithmetic tables for one GF(q).

    Attributes
    ----------
    q : int
        Field size.
    characteristic : int
        Additive order of 1.
    degree : int
        Extension degree over the prime field.
    add, sub, mul : numpy.ndarray
        Dense ``(q, q)`` uint8 tables.
    neg, inv : numpy.ndarray
        Dense ``(q,)`` uint8 tables; ``inv[0]`` is unused and set to 0.
    """

    __slots__ = ("q", "characteristic", "degree", "add", "sub", "mul", "neg", "inv")

    def __init__(self, q: int):
        if q in _PRIME_SIZES:
            p, k = q, 1
            idx = np.arange(q, dtype=np.int64)
            add = (idx[:, None] + idx[None, :]) % q
            mul = (idx[:, None] * idx[None, :]) % q
        elif q in _EXTENSION_FIELDS:
            p, k, modulus = _EXTENSION_FIELDS[q]
            add = np.bitwise_xor(np.arange(q)[:, None], np.arange(q)[None, :])
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(q):
                    mul[a, b] = _poly_mul_mod2(a, b, modulus, k)
        else:
            raise UnsupportedField(
                f"GF({q}) is not supported; sizes are {SUPPORTED_SIZES}"
            )
        self.q = q
        self.characteristic = p
        self.degree = k
        self.add = add.astype(np.uint8)
        self.mul = mul.astype(np.uint8)

        neg = np.zeros(q, dtype=np.uint8)
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(q):
            neg[a] = int(np.where(add[a] == 0)[0][0])
            if a:
                inv[a] = int(np.where(mul[a] == 1)[0][0])
        self.neg = neg
        self.inv = inv
        self.sub = self.add[:, neg].astype(np.uint8)
        for t in (self.add, self.sub, self.mul, self.neg, self.inv):
            t.flags.writeable = False

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.q))


@functools.lru_cache(maxsize=None)
def field_make(q: int) -> FieldSpec:
    """Return the cached FieldSpec for GF(q).

    Raises UnsupportedField for sizes outside the supported set.
    """
    return FieldSpec(q)


class Matrix:
    """An immutable matrix over a FieldSpec.

    Entries are stored as a read-only uint8 numpy array of element indices.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        arr = np.array(data, dtype=np.uint8)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
        if arr.size and arr.max() >= field.q:
            raise DimensionMismatch(
                f"entry {int(arr.max())} is not an element of GF({field.q})"
            )
        arr.flags.writeable = False
        self.field = field
        self.data = arr

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.uint8))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.data.shape == self.data.shape
            and bool(np.array_equal(other.data, self.data))
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.data.tobytes(), self.data.shape))

    def __repr__(self) -> str:
        return f"Matrix(GF({self.field.q}), {self.rows}x{self.cols})"


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Exact matrix product over the common field."""
    if a.field != b.field:
        raise DimensionMismatch("operands live over different fields")
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    f = a.field
    out = np.zeros((a.rows, b.cols), dtype=np.uint8)
    for k in range(a.cols):
        # out += a[:, k] * b[k, :], evaluated through the lookup tables
        term = f.mul[a.data[:, k][:, None], b.data[k, :][None, :]]
        out = f.add[out, term]
    return Matrix(f, out)


def _eliminate(field: FieldSpec, work: np.ndarray) -> int:
    """In-place Gaussian elimination; returns the rank.

    Pivot choice is the first nonzero entry in each column, scanning
    columns left to right, which keeps runs reproducible.
    """
    rows, cols = work.shape
    rank = 0
    for col in range(cols):
        pivot = -1
        for r in range(rank, rows):
            if work[r, col]:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        inv_p = field.inv[work[rank, col]]
        for r in range(rank + 1, rows):
            if work[r, col]:
                factor = field.mul[work[r, col], inv_p]
                work[r] = field.sub[work[r], field.mul[factor, work[rank]]]
        rank += 1
        if rank == rows:
            break
    return rank


def rank(m: Matrix) -> int:
    """Rank of ``m``, by exact Gaussian elimination on a mutable copy."""
    if m.data.size == 0:
        return 0
    work = np.array(m.data, dtype=np.uint8)
    return _eliminate(m.field, work)


def column_block(m: Matrix, users: Iterable[int], t: int = 1) -> Matrix:
    """Submatrix of the ``t`` columns belonging to each listed user.

    User ``l`` owns columns ``(l-1)*t .. l*t-1`` (0-based).  Users are taken
    in ascending order regardless of input order.
    """
    if t < 1:
        raise DimensionMismatch(f"block width t must be positive, got {t}")
    sel = sorted(set(users))
    for l in sel:
        if l < 1 or l * t > m.cols:
            raise IndexOutOfRange(
                f"user {l} has no column block in a matrix with {m.cols} columns at t={t}"
            )
    if not sel:
        return Matrix(m.field, np.zeros((m.rows, 0), dtype=np.uint8))
    parts = [m.data[:, (l - 1) * t : l * t] for l in sel]
    return Matrix(m.field, np.concatenate(parts, axis=1))


def dot(field: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    """Exact inner product of two coefficient vectors."""
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    acc = 0
    for a, b in zip(u, v):
        acc = int(field.add[acc, field.mul[a, b]])
    return acc


def nullspace(m: Matrix) -> list[tuple[int, ...]]:
    """Deterministic basis of the right null space ``{x : m x = 0}``."""
    f = m.field
    rows, cols = m.data.shape
    work = np.array(m.data, dtype=np.uint8)
    pivots: list[int] = []
    rank_ = 0
    for col in range(cols):
        pivot = -1
        for r in range(rank_, rows):
            if work[r, col]:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank_:
            work[[rank_, pivot]] = work[[pivot, rank_]]
        inv_p = f.inv[work[rank_, col]]
        work[rank_] = f.mul[inv_p, work[rank_]]
        for r in range(rows):
            if r != rank_ and work[r, col]:
                work[r] = f.sub[work[r], f.mul[work[r, col], work[rank_]]]
        pivots.append(col)
        rank_ += 1
    basis = []
    pivot_set = set(pivots)
    for free in range(cols):
        if free in pivot_set:
            continue
        vec = [0] * cols
        vec[free] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = int(f.neg[work[r, free]])
        basis.append(tuple(vec))
    return basis


def solve(a: Matrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One exact solution of ``a x = b``, or None when inconsistent."""
    f = a.field
    rows, cols = a.data.shape
    if len(b) != rows:
        raise DimensionMismatch("right-hand side length does not match")
    work = np.zeros((rows, cols + 1), dtype=np.uint8)
    work[:, :cols] = a.data
    work[:, cols] = np.array(list(b), dtype=np.uint8)
    pivots: list[int] = []
    rank_ = 0
    for col in range(cols):
        pivot = -1
        for r in range(rank_, rows):
            if work[r, col]:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank_:
            work[[rank_, pivot]] = work[[pivot, rank_]]
        inv_p = f.inv[work[rank_, col]]
        work[rank_] = f.mul[inv_p, work[rank_]]
        for r in range(rows):
            if r != rank_ and work[r, col]:
                work[r] = f.sub[work[r], f.mul[work[r, col], work[rank_]]]
        pivots.append(col)
        rank_ += 1
    for r in range(rank_, rows):
        if work[r, cols]:
            return None
    x = [0] * cols
    for r, pc in enumerate(pivots):
        x[pc] = int(work[r, cols])
    return tuple(x)


def matrix_to_text(m: Matrix) -> str:
    """Serialize to the interchange format: header ``rows cols q``, then rows."""
    lines = [f"{m.rows} {m.cols} {m.field.q}"]
    for r in range(m.rows):
        lines.append(" ".join(str(int(v)) for v in m.data[r]))
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> Matrix:
    """Parse the interchange format produced by :func:`matrix_to_text`."""
    toks = text.split()
    if len(toks) < 3:
        raise DimensionMismatch("matrix text is missing its header")
    rows, cols, q = int(toks[0]), int(toks[1]), int(toks[2])
    body = toks[3:]
    if len(body) != rows * cols:
        raise DimensionMismatch(
            f"matrix text declares {rows}x{cols} but carries {len(body)} entries"
        )
    f = field_make(q)
    data = np.array([int(v) for v in body], dtype=np.int64).reshape(rows, cols)
    if data.size and (data.min() < 0 or data.max() >= q):
        raise DimensionMismatch("matrix entry outside the field's element range")
    return Matrix(f, data)


def rate_of(r: int, t: int) -> Fraction:
    """Broadcast rate r/t as an exact rational."""
    return Fraction(r, t)
