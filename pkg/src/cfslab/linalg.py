"""Dense GF(2) vectors, matrices and permutations.

Vectors and matrix rows are packed into Python integers: coordinate i of a
vector is bit i of the integer, so XOR of rows is word-parallel for free.
The byte/hex serialization is a separate, fixed convention: coordinate 0
maps to the most significant bit of the first byte, which keeps files
big-endian and byte-aligned regardless of length.

Everything is immutable after construction; operations return new values.
"""

from __future__ import annotations

from .errors import DimensionError
from .metering import tick_matvec


def _parity(x: int) -> int:
    return x.bit_count() & 1


class BitVector:
    __slots__ = ("n", "_bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise DimensionError("negative length")
        if bits < 0 or bits >> n:
            raise ValueError("value has bits outside the vector length")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_bits", bits)

    def __setattr__(self, *_):
        raise AttributeError("BitVector is immutable")

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        """From an iterable of 0/1 values (ints or '0'/'1' characters)."""
        acc = 0
        n = 0
        for b in bits:
            b = int(b)
            if b not in (0, 1):
                raise ValueError("bits must be 0 or 1")
            acc |= b << n
            n += 1
        return cls(n, acc)

    @classmethod
    def from_indices(cls, n: int, indices) -> "BitVector":
        acc = 0
        for i in indices:
            if not 0 <= i < n:
                raise DimensionError(f"index {i} out of range for length {n}")
            acc |= 1 << i
        return cls(n, acc)

    @classmethod
    def from_bytes(cls, data: bytes, n: int) -> "BitVector":
        if len(data) != (n + 7) // 8:
            raise DimensionError("byte string has the wrong length")
        acc = 0
        for i in range(n):
            if data[i >> 3] >> (7 - (i & 7)) & 1:
                acc |= 1 << i
        return cls(n, acc)

    @classmethod
    def from_hex(cls, s: str, n: int) -> "BitVector":
        return cls.from_bytes(bytes.fromhex(s), n)

    def to_bytes(self) -> bytes:
        out = bytearray((self.n + 7) // 8)
        bits = self._bits
        while bits:
            i = (bits & -bits).bit_length() - 1
            out[i >> 3] |= 1 << (7 - (i & 7))
            bits &= bits - 1
        return bytes(out)

    def to_hex(self) -> str:
        return self.to_bytes().hex()

    def to_int(self) -> int:
        """The raw packed value (bit i of the int = coordinate i)."""
        return self._bits

    @property
    def weight(self) -> int:
        return self._bits.bit_count()

    def support(self) -> tuple[int, ...]:
        out = []
        bits = self._bits
        while bits:
            i = (bits & -bits).bit_length() - 1
            out.append(i)
            bits &= bits - 1
        return tuple(out)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self._bits >> i) & 1

    def __iter__(self):
        return ((self._bits >> i) & 1 for i in range(self.n))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if other.n != self.n:
            raise DimensionError("length mismatch in xor")
        return BitVector(self.n, self._bits ^ other._bits)

    def flip(self, i: int) -> "BitVector":
        if not 0 <= i < self.n:
            raise IndexError(i)
        return BitVector(self.n, self._bits ^ (1 << i))

    def is_zero(self) -> bool:
        return self._bits == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and other.n == self.n
            and other._bits == self._bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self._bits))

    def __repr__(self) -> str:
        return f"BitVector({''.join(str(b) for b in self)!r})"


class BitMatrix:
    """r x c matrix over GF(2), rows packed as integers."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int, row_ints=None):
        if rows < 0 or cols < 0:
            raise DimensionError("negative shape")
        if row_ints is None:
            row_ints = [0] * rows
        row_ints = list(row_ints)
        if len(row_ints) != rows:
            raise DimensionError("row count mismatch")
        for r in row_ints:
            if r < 0 or r >> cols:
                raise ValueError("row has bits outside the column range")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_rows", row_ints)

    def __setattr__(self, *_):
        raise AttributeError("BitMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_rows(cls, vectors) -> "BitMatrix":
        vectors = list(vectors)
        if not vectors:
            raise DimensionError("a matrix needs at least one row")
        cols = vectors[0].n
        if any(v.n != cols for v in vectors):
            raise DimensionError("ragged rows")
        return cls(len(vectors), cols, [v.to_int() for v in vectors])

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self._rows[i])

    def row_int(self, i: int) -> int:
        return self._rows[i]

    def column_int(self, j: int) -> int:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        acc = 0
        for i, r in enumerate(self._rows):
            acc |= ((r >> j) & 1) << i
        return acc

    def columns_as_ints(self) -> list[int]:
        return [self.column_int(j) for j in range(self.cols)]

    def column(self, j: int) -> BitVector:
        return BitVector(self.rows, self.column_int(j))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self._rows[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.cols, self.rows, self.columns_as_ints())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and other.rows == self.rows
            and other.cols == self.cols
            and other._rows == self._rows
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(self._rows)))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    # --- serialization: "rows cols" header, then one hex row per line ---

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines.extend(self.row(i).to_hex() for i in range(self.rows))
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        try:
            r, c = (int(tok) for tok in lines[0].split())
        except (ValueError, IndexError) as exc:
            raise DimensionError("bad matrix header") from exc
        if len(lines) != r + 1:
            raise DimensionError("bad matrix row count")
        return cls(r, c, [BitVector.from_hex(ln, c).to_int() for ln in lines[1:]])


class Permutation:
    """Permutation of n coordinates, stored as an index array.

    mapping[j] is the source coordinate feeding target coordinate j under
    right multiplication: (v * P)[j] = v[mapping[j]], and column j of H * P
    is column mapping[j] of H.
    """

    __slots__ = ("mapping",)

    def __init__(self, mapping):
        mapping = tuple(mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError("mapping is not a bijection on 0..n-1")
        object.__setattr__(self, "mapping", mapping)

    def __setattr__(self, *_):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def random(cls, n: int, rng) -> "Permutation":
        idx = list(range(n))
        rng.shuffle(idx)
        return cls(idx)

    @property
    def n(self) -> int:
        return len(self.mapping)

    def apply(self, v: BitVector) -> BitVector:
        """Right multiplication v * P."""
        if v.n != self.n:
            raise DimensionError("length mismatch in permutation")
        bits = v.to_int()
        acc = 0
        for j, src in enumerate(self.mapping):
            acc |= ((bits >> src) & 1) << j
        return BitVector(self.n, acc)

    def permute_columns(self, mat: BitMatrix) -> BitMatrix:
        """H * P: column j of the result is column mapping[j] of H."""
        if mat.cols != self.n:
            raise DimensionError("column count mismatch in permutation")
        rows = []
        for r in mat._rows:
            acc = 0
            for j, src in enumerate(self.mapping):
                acc |= ((r >> src) & 1) << j
            rows.append(acc)
        return BitMatrix(mat.rows, mat.cols, rows)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, src in enumerate(self.mapping):
            inv[src] = j
        return Permutation(inv)

    def as_matrix(self) -> BitMatrix:
        inv = self.inverse().mapping
        return BitMatrix(self.n, self.n, [1 << inv[i] for i in range(self.n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and other.mapping == self.mapping

    def __hash__(self) -> int:
        return hash(self.mapping)

    def __repr__(self) -> str:
        return f"Permutation({list(self.mapping)})"

    def to_text(self) -> str:
        return " ".join(str(i) for i in self.mapping)

    @classmethod
    def from_text(cls, text: str) -> "Permutation":
        return cls(int(tok) for tok in text.split())


def mat_vec(mat: BitMatrix, v: BitVector) -> BitVector:
    """H * v^T as a length-rows(H) vector."""
    if mat.cols != v.n:
        raise DimensionError(f"{mat.cols}-column matrix times length-{v.n} vector")
    tick_matvec()
    bits = v.to_int()
    acc = 0
    for i, r in enumerate(mat._rows):
        acc |= _parity(r & bits) << i
    return BitVector(mat.rows, acc)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2); row i of the result is the XOR of the
    rows of b selected by row i of a."""
    if a.cols != b.rows:
        raise DimensionError(f"{a.cols}-column times {b.rows}-row product")
    out = []
    for r in a._rows:
        acc = 0
        bits = r
        while bits:
            j = (bits & -bits).bit_length() - 1
            acc ^= b._rows[j]
            bits &= bits - 1
        out.append(acc)
    return BitMatrix(a.rows, b.cols, out)


def _rref(row_ints: list[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form in place on a copy; returns (rows, pivot cols).

    Augmented columns may ride along above `cols`; they are eliminated with
    the rest of the row but never chosen as pivots.
    """
    rows = list(row_ints)
    pivots = []
    r = 0
    for c in range(cols):
        mask = 1 << c
        pivot = next((i for i in range(r, len(rows)) if rows[i] & mask), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & mask:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(mat: BitMatrix) -> int:
    return len(_rref(mat._rows, mat.cols)[1])


def gaussian_solve(mat: BitMatrix, b: BitVector) -> BitVector | None:
    """Some x with mat * x = b, or None when the system is inconsistent.

    Free variables are set to zero.
    """
    if mat.rows != b.n:
        raise DimensionError("right-hand side length mismatch")
    n = mat.cols
    aug = [r | (((b.to_int() >> i) & 1) << n) for i, r in enumerate(mat._rows)]
    rows, pivots = _rref(aug, n)
    for i in range(len(pivots), len(rows)):
        if rows[i] >> n:
            return None
    x = 0
    for i, c in enumerate(pivots):
        x |= ((rows[i] >> n) & 1) << c
    return BitVector(n, x)


def kernel_basis(mat: BitMatrix) -> list[BitVector]:
    """Basis of the right kernel {x : mat * x = 0}."""
    n = mat.cols
    rows, pivots = _rref(mat._rows, n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = 1 << free
        for i, c in enumerate(pivots):
            if (rows[i] >> free) & 1:
                v |= 1 << c
        basis.append(BitVector(n, v))
    return basis


def inverse(mat: BitMatrix) -> BitMatrix | None:
    """Inverse of a square matrix, or None when singular."""
    if mat.rows != mat.cols:
        raise DimensionError("only square matrices can be inverted")
    n = mat.cols
    aug = [r | (1 << (n + i)) for i, r in enumerate(mat._rows)]
    rows, pivots = _rref(aug, n)
    if len(pivots) != n:
        return None
    return BitMatrix(n, n, [r >> n for r in rows])


def rand_invertible(r: int, rng) -> tuple[BitMatrix, BitMatrix]:
    """A uniformly random invertible r x r matrix and its inverse."""
    if r < 1:
        raise DimensionError("size must be positive")
    while True:
        m = BitMatrix(r, r, [rng.getrandbits(r) for _ in range(r)])
        m_inv = inverse(m)
        if m_inv is not None:
            return m, m_inv
