"""Exact linear algebra over Q and over a prime field F_p.

Rational arithmetic is delegated to FLINT (``python-flint``), which does exact
multimodular elimination.  Prime-field elimination runs on the int64 kernels in
:mod:`jacring._kernels`.  No floating point is used anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint
import numpy as np

from . import _kernels
from .errors import DimensionMismatch, InvalidParameter

DEFAULT_PRIME = 2**31 - 1
_MIN_PRIME = 2**20
# kernels keep residues in int64 and form products of two residues
_MAX_PRIME = 2**31


def _is_prime(p: int) -> bool:
    from sympy import isprime

    return bool(isprime(p))


@dataclass(frozen=True)
class FieldMode:
    """Coefficient field: ``rational`` (Q) or ``prime`` with a modulus."""

    kind: str = "rational"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.modulus is not None:
                raise InvalidParameter("rational field takes no modulus")
        elif self.kind == "prime":
            p = self.modulus
            if not isinstance(p, int) or not (_MIN_PRIME < p < _MAX_PRIME) or not _is_prime(p):
                raise InvalidParameter(
                    f"prime modulus must be a prime in (2^20, 2^31), got {p!r}")
        else:
            raise InvalidParameter(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldMode":
        return cls("rational")

    @classmethod
    def prime(cls, modulus: int = DEFAULT_PRIME) -> "FieldMode":
        return cls("prime", modulus)

    @classmethod
    def parse(cls, text: str) -> "FieldMode":
        """Parse ``rational``, ``prime`` or ``prime:<p>``."""
        text = text.strip().lower()
        if text == "rational":
            return cls.rational()
        if text == "prime":
            return cls.prime()
        if text.startswith("prime:"):
            try:
                p = int(text[6:])
            except ValueError:
                raise InvalidParameter(f"bad modulus in {text!r}") from None
            return cls.prime(p)
        raise InvalidParameter(f"unknown field {text!r}")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    def __str__(self) -> str:
        return "rational" if self.kind == "rational" else f"prime:{self.modulus}"

    def describe(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        return {"kind": "prime", "modulus": self.modulus}

    # -- elements ---------------------------------------------------------

    def element(self, x):
        """Coerce an int, Fraction or fmpq into the internal representation."""
        if self.kind == "rational":
            if isinstance(x, flint.fmpq):
                return x
            if isinstance(x, Fraction):
                return flint.fmpq(x.numerator, x.denominator)
            if isinstance(x, (int, np.integer)):
                return flint.fmpq(int(x))
            if isinstance(x, flint.fmpz):
                return flint.fmpq(x)
            raise TypeError(f"cannot coerce {x!r} to a rational")
        p = self.modulus
        if isinstance(x, (int, np.integer, flint.fmpz)):
            return int(x) % p
        if isinstance(x, (Fraction, flint.fmpq)):
            num, den = (x.numerator, x.denominator) if isinstance(x, Fraction) else (int(x.p), int(x.q))
            if den % p == 0:
                raise InvalidParameter(f"denominator {den} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {x!r} to F_{p}")

    def export(self, x):
        """Internal element -> ``Fraction`` (rational) or ``int`` (prime)."""
        if self.kind == "rational":
            return Fraction(int(x.p), int(x.q))
        return int(x)

    @property
    def zero(self):
        return flint.fmpq(0) if self.kind == "rational" else 0

    @property
    def one(self):
        return flint.fmpq(1) if self.kind == "rational" else 1

    def mul(self, a, b):
        return a * b if self.kind == "rational" else a * b % self.modulus

    def add(self, a, b):
        return a + b if self.kind == "rational" else (a + b) % self.modulus

    def neg(self, a):
        return -a if self.kind == "rational" else (-a) % self.modulus


RATIONAL = FieldMode.rational()


class Block:
    """Dense matrix over a :class:`FieldMode`, backed by fmpq_mat or int64 ndarray."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldMode, data):
        self.field = field
        self.data = data

    @classmethod
    def zeros(cls, field: FieldMode, nrows: int, ncols: int) -> "Block":
        if field.is_prime:
            return cls(field, np.zeros((nrows, ncols), dtype=np.int64))
        return cls(field, flint.fmpq_mat(nrows, ncols))

    @classmethod
    def from_rows(cls, field: FieldMode, rows: Sequence[Sequence], ncols: int) -> "Block":
        """Build from rows of already-internal field elements."""
        if field.is_prime:
            if not rows:
                return cls(field, np.zeros((0, ncols), dtype=np.int64))
            return cls(field, np.array(rows, dtype=np.int64).reshape(len(rows), ncols))
        flat = [x for r in rows for x in r]
        return cls(field, flint.fmpq_mat(len(rows), ncols, flat))

    @classmethod
    def from_sparse(cls, field: FieldMode, rows: Sequence[Mapping[int, object]],
                    ncols: int) -> "Block":
        if field.is_prime:
            a = np.zeros((len(rows), ncols), dtype=np.int64)
            for i, r in enumerate(rows):
                for j, v in r.items():
                    a[i, j] = v
            return cls(field, a)
        flat = [flint.fmpq(0)] * (len(rows) * ncols)
        for i, r in enumerate(rows):
            base = i * ncols
            for j, v in r.items():
                flat[base + j] = v
        return cls(field, flint.fmpq_mat(len(rows), ncols, flat))

    @classmethod
    def vstack(cls, field: FieldMode, blocks: Sequence["Block"], ncols: int) -> "Block":
        blocks = [b for b in blocks if b.nrows]
        if not blocks:
            return cls.zeros(field, 0, ncols)
        if field.is_prime:
            return cls(field, np.vstack([b.data for b in blocks]))
        flat = []
        for b in blocks:
            flat.extend(b.data.entries())
        return cls(field, flint.fmpq_mat(sum(b.nrows for b in blocks), ncols, flat))

    @property
    def nrows(self) -> int:
        return self.data.shape[0] if self.field.is_prime else self.data.nrows()

    @property
    def ncols(self) -> int:
        return self.data.shape[1] if self.field.is_prime else self.data.ncols()

    def rows(self) -> list[list]:
        if self.field.is_prime:
            return [[int(x) for x in r] for r in self.data]
        return self.data.tolist()

    def take_rows(self, idx: Sequence[int]) -> "Block":
        if self.field.is_prime:
            return Block(self.field, self.data[list(idx)])
        nc = self.ncols
        ent = self.data.entries()
        flat = []
        for i in idx:
            flat.extend(ent[i * nc:(i + 1) * nc])
        return Block(self.field, flint.fmpq_mat(len(idx), nc, flat))

    def __matmul__(self, other: "Block") -> "Block":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        if self.field.is_prime:
            return Block(self.field, _kernels.matmul_modp(self.data, other.data, self.field.modulus))
        if self.nrows == 0 or other.ncols == 0:
            return Block.zeros(self.field, self.nrows, other.ncols)
        return Block(self.field, self.data * other.data)

    def __add__(self, other: "Block") -> "Block":
        if self.field.is_prime:
            return Block(self.field, (self.data + other.data) % self.field.modulus)
        return Block(self.field, self.data + other.data)

    def scale(self, c) -> "Block":
        if self.field.is_prime:
            return Block(self.field, (self.data * c) % self.field.modulus)
        return Block(self.field, self.data * c)

    def transpose(self) -> "Block":
        if self.field.is_prime:
            return Block(self.field, np.ascontiguousarray(self.data.T))
        return Block(self.field, self.data.transpose())

    def rref(self) -> tuple["Block", tuple[int, ...]]:
        """Reduced row echelon form with zero rows dropped, plus pivot columns."""
        if self.field.is_prime:
            a = self.data.copy()
            r, piv = _kernels.rref_modp(a, self.field.modulus)
            return Block(self.field, a[:r].copy()), tuple(int(c) for c in piv)
        if self.nrows == 0 or self.ncols == 0:
            return Block.zeros(self.field, 0, self.ncols), ()
        red, r = self.data.rref()
        nc = self.ncols
        ent = red.entries()
        pivots = []
        for i in range(r):
            row = ent[i * nc:(i + 1) * nc]
            start = pivots[-1] + 1 if pivots else 0
            for j in range(start, nc):
                if row[j] != 0:
                    pivots.append(j)
                    break
        return Block(self.field, flint.fmpq_mat(r, nc, ent[:r * nc])), tuple(pivots)

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        if self.field.is_prime:
            r, _ = _kernels.rref_modp(self.data.copy(), self.field.modulus)
            return r
        return self.data.rank()

    def is_zero(self) -> bool:
        if self.field.is_prime:
            return not self.data.any()
        return all(x == 0 for x in self.data.entries())


# ---------------------------------------------------------------------------
# public sparse matrix type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExactMatrix:
    """Sparse exact matrix; ``entries`` holds only nonzero values."""

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], object] = dc_field(default_factory=dict)
    field: FieldMode = RATIONAL

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise DimensionMismatch(f"entry {(i, j)} outside {self.rows}x{self.cols}")
            v = self.field.element(v)
            if v != 0:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldMode = RATIONAL,
                  cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("rows of unequal length")
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v != 0}
        return cls(len(rows), cols, ent, field)

    @classmethod
    def identity(cls, n: int, field: FieldMode = RATIONAL) -> "ExactMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, field)

    def to_rows(self) -> list[list]:
        out = [[self.field.export(self.field.zero)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = self.field.export(v)
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           {(j, i): v for (i, j), v in self.entries.items()}, self.field)

    def _block(self) -> Block:
        sparse = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            sparse[i][j] = v
        return Block.from_sparse(self.field, sparse, self.cols)


def _from_block(b: Block) -> ExactMatrix:
    ent = {}
    for i, r in enumerate(b.rows()):
        for j, v in enumerate(r):
            if v != 0:
                ent[(i, j)] = v
    return ExactMatrix(b.nrows, b.ncols, ent, b.field)


def rank(m: ExactMatrix) -> int:
    """Rank of ``m`` over its field."""
    if not m.entries:
        return 0
    return m._block().rank()


def rref(m: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    if not m.entries:
        return ExactMatrix(0, m.cols, {}, m.field), ()
    red, piv = m._block().rref()
    return _from_block(red), piv


def span_reduce(vectors: Iterable[Sequence], field: FieldMode = RATIONAL) -> list[tuple]:
    """Canonical basis (rref rows) of the span of ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("vectors of different lengths")
    rows = [[field.element(x) for x in v] for v in vectors]
    red, _ = Block.from_rows(field, rows, n).rref()
    return [tuple(field.export(x) for x in r) for r in red.rows()]
