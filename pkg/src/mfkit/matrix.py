"""Dense matrices over :class:`~mfkit.poly.Polynomial` and permutation matrices.

Storage is a row-major tuple of polynomials. Products iterate only over the
nonzero entries of each row, which is what keeps verification of the large
block matrices produced by the tensor constructions cheap.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .poly import ONE, ZERO, Polynomial


class PolyMatrix:
    __slots__ = ("rows", "cols", "entries", "_row_nz", "_hash")

    def __init__(self, rows: int, cols: int, entries: Sequence[Polynomial]):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._row_nz = None
        self._hash = None

    @classmethod
    def _with_nz(cls, rows: int, cols: int, entries, row_nz) -> "PolyMatrix":
        """Trusted constructor for callers that already know the nonzero layout."""
        m = cls(rows, cols, entries)
        m._row_nz = tuple(tuple(r) for r in row_nz)
        return m

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "PolyMatrix":
        data = [[Polynomial.coerce(e) for e in row] for row in rows]
        if not data:
            raise DimensionMismatch("matrix needs at least one row")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged rows")
        return cls(len(data), ncols, [e for r in data for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls.scalar(ONE, n)

    @classmethod
    def scalar(cls, f, n: int) -> "PolyMatrix":
        if n < 1:
            raise DimensionMismatch("size must be at least 1")
        f = Polynomial.coerce(f)
        out = [ZERO] * (n * n)
        if f:
            for i in range(n):
                out[i * n + i] = f
        return cls(n, n, out)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx) -> Polynomial:
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def row_nonzeros(self) -> tuple:
        """Per row, the ``(col, entry)`` pairs with nonzero entry (cached)."""
        if self._row_nz is None:
            c = self.cols
            self._row_nz = tuple(
                tuple((j, e) for j, e in enumerate(self.entries[i * c:(i + 1) * c]) if e)
                for i in range(self.rows)
            )
        return self._row_nz

    def nnz(self) -> int:
        return sum(len(r) for r in self.row_nonzeros())

    def map(self, fn) -> "PolyMatrix":
        """Apply ``fn`` to the nonzero entries; ``fn`` must map nonzero to nonzero."""
        out = list(self.entries)
        c = self.cols
        nz = []
        for i, row in enumerate(self.row_nonzeros()):
            new = []
            for j, e in row:
                v = fn(e)
                out[i * c + j] = v
                new.append((j, v))
            nz.append(new)
        return PolyMatrix._with_nz(self.rows, c, out, nz)

    def __neg__(self):
        return self.map(lambda e: -e)

    def scale(self, c) -> "PolyMatrix":
        c = Polynomial.coerce(c)
        if c.is_zero():
            return PolyMatrix.zeros(self.rows, self.cols)
        return self.map(lambda e: e * c)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return mat_mul(self, other)

    def transpose(self) -> "PolyMatrix":
        r, c = self.rows, self.cols
        return PolyMatrix(c, r, [self.entries[i * c + j] for j in range(c) for i in range(r)])

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def first_difference(self, other: "PolyMatrix"):
        """Row-major first ``(i, j)`` where the matrices differ, or ``None``."""
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot compare {self.shape} and {other.shape}")
        for idx, (a, b) in enumerate(zip(self.entries, other.entries)):
            if a != b:
                return divmod(idx, self.cols)
        return None

    def to_json(self) -> list:
        return [[str(e) for e in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data) -> "PolyMatrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix must be an array of arrays")
        return cls.from_rows([[Polynomial.parse(str(e)) for e in r] for r in data])

    def render(self) -> str:
        return "\n".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    n = b.cols
    b_nz = b.row_nonzeros()
    out = []
    nz = []
    for a_row in a.row_nonzeros():
        acc: dict = {}
        for k, aik in a_row:
            for j, bkj in b_nz[k]:
                prod = aik * bkj
                if j in acc:
                    acc[j] = acc[j] + prod
                else:
                    acc[j] = prod
        row = [ZERO] * n
        kept = []
        for j in sorted(acc):
            v = acc[j]
            if v:
                row[j] = v
                kept.append((j, v))
        out.extend(row)
        nz.append(kept)
    return PolyMatrix._with_nz(a.rows, n, out, nz)


def kron(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Kronecker product: entry ``a_ij`` is replaced by the block ``a_ij * B``."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = [ZERO] * (rows * cols)
    nz = [[] for _ in range(rows)]
    b_nz = b.row_nonzeros()
    for i, a_row in enumerate(a.row_nonzeros()):
        for j, aij in a_row:
            for k, b_row in enumerate(b_nz):
                r = i * b.rows + k
                base = r * cols
                c0 = j * b.cols
                for l, bkl in b_row:
                    v = aij * bkl
                    out[base + c0 + l] = v
                    nz[r].append((c0 + l, v))
    return PolyMatrix._with_nz(rows, cols, out, nz)


def direct_sum(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return block([[a, None], [None, b]])


def block(grid: Sequence[Sequence]) -> PolyMatrix:
    """Assemble a block matrix; ``None`` marks a zero block whose shape is inferred."""
    heights = []
    for brow in grid:
        hs = {m.rows for m in brow if m is not None}
        if len(hs) != 1:
            raise DimensionMismatch("block row heights disagree or are undetermined")
        heights.append(hs.pop())
    widths = []
    for j in range(len(grid[0])):
        ws = {brow[j].cols for brow in grid if brow[j] is not None}
        if len(ws) != 1:
            raise DimensionMismatch("block column widths disagree or are undetermined")
        widths.append(ws.pop())
    rows, cols = sum(heights), sum(widths)
    out = [ZERO] * (rows * cols)
    row_nz = [[] for _ in range(rows)]
    r0 = 0
    for bi, brow in enumerate(grid):
        c0 = 0
        for bj, m in enumerate(brow):
            if m is not None:
                for i, nz in enumerate(m.row_nonzeros()):
                    base = (r0 + i) * cols + c0
                    dst = row_nz[r0 + i]
                    for j, e in nz:
                        out[base + j] = e
                        dst.append((c0 + j, e))
            c0 += widths[bj]
        r0 += heights[bi]
    return PolyMatrix._with_nz(rows, cols, out, row_nz)


class PermutationMatrix:
    """Permutation stored as an index map: row ``i`` has its 1 in column ``image[i]``."""

    __slots__ = ("image",)

    def __init__(self, image: Sequence[int]):
        image = tuple(int(i) for i in image)
        if sorted(image) != list(range(len(image))):
            raise ValueError("image is not a bijection")
        self.image = image

    @classmethod
    def identity(cls, n: int) -> "PermutationMatrix":
        return cls(range(n))

    @property
    def size(self) -> int:
        return len(self.image)

    def transpose(self) -> "PermutationMatrix":
        inv = [0] * self.size
        for i, j in enumerate(self.image):
            inv[j] = i
        return PermutationMatrix(inv)

    inverse = transpose

    def __matmul__(self, other: "PermutationMatrix") -> "PermutationMatrix":
        # (PQ)[i, image_Q[image_P[i]]] = 1
        return PermutationMatrix(other.image[j] for j in self.image)

    def __eq__(self, other):
        return isinstance(other, PermutationMatrix) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def to_polymatrix(self) -> PolyMatrix:
        n = self.size
        out = [ZERO] * (n * n)
        for i, j in enumerate(self.image):
            out[i * n + j] = ONE
        return PolyMatrix(n, n, out)

    def __repr__(self):
        return f"PermutationMatrix({list(self.image)})"


def perm_kron(p: PermutationMatrix, q: PermutationMatrix) -> PermutationMatrix:
    m = q.size
    return PermutationMatrix(pi * m + qk for pi in p.image for qk in q.image)


def perfect_shuffle(m: int, n: int) -> PermutationMatrix:
    """``S_{m,n} = sum_i e_i^T (x) I_n (x) e_i`` with ``e_i`` in ``K^m``.

    Row ``a*m + i`` carries its 1 in column ``i*n + a``. For square ``A``
    (m x m) and ``B`` (n x n), ``S (A (x) B) S^T == B (x) A``.
    """
    if m < 1 or n < 1:
        raise ValueError("shuffle dimensions must be positive")
    return PermutationMatrix(i * n + a for a in range(n) for i in range(m))


def apply_perm(p: PermutationMatrix, a: PolyMatrix, side: str = "left") -> PolyMatrix:
    """``P A`` for ``side='left'``, ``A P`` for ``side='right'``."""
    if side == "left":
        if p.size != a.rows:
            raise DimensionMismatch(f"permutation of size {p.size} cannot act on {a.rows} rows")
        c = a.cols
        return PolyMatrix(a.rows, c, [e for i in p.image for e in a.entries[i * c:(i + 1) * c]])
    if side == "right":
        if p.size != a.cols:
            raise DimensionMismatch(f"permutation of size {p.size} cannot act on {a.cols} columns")
        inv = p.transpose().image
        c = a.cols
        return PolyMatrix(a.rows, c, [a.entries[i * c + inv[j]] for i in range(a.rows) for j in range(c)])
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def conjugate(p: PermutationMatrix, a: PolyMatrix) -> PolyMatrix:
    """``P A P^T`` as a pure index shuffle."""
    if not (a.rows == a.cols == p.size):
        raise DimensionMismatch(f"cannot conjugate {a.shape} by a size-{p.size} permutation")
    n, img = a.cols, p.image
    return PolyMatrix(n, n, [a.entries[r * n + c] for r in img for c in img])
