"""Small dense matrices over a :class:`~pbwdeform.field.Field` with exact elimination."""
from __future__ import annotations

from .field import Field


class Matrix:
    """Immutable rectangular matrix of raw field values."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_hash")

    def __init__(self, field: Field, rows):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        self._hash = None

    @classmethod
    def _raw(cls, field, rows):
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = len(rows[0]) if rows else 0
        m._hash = None
        return m

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: Field, r: int, c: int) -> "Matrix":
        return cls._raw(field, tuple((field.zero,) * c for _ in range(r)))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.render(x) for x in r) for r in self.rows)
        return f"Matrix({self.field}, [{body}])"

    def _check(self, other):
        if self.field != other.field:
            from .errors import FieldMismatchError
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix._raw(f, tuple(tuple(f.add(a, b) for a, b in zip(r, s))
                                    for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix._raw(f, tuple(tuple(f.sub(a, b) for a, b in zip(r, s))
                                    for r, s in zip(self.rows, other.rows)))

    def __matmul__(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.char
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = sum(a * b for a, b in zip(r, c))
                row.append(s % p if p else s)
            out.append(tuple(row))
        if not cols:
            out = [() for _ in self.rows]
        return Matrix._raw(self.field, tuple(out))

    def scale(self, c):
        f = self.field
        c = f(c)
        return Matrix._raw(f, tuple(tuple(f.mul(c, a) for a in r) for r in self.rows))

    def transpose(self):
        return Matrix._raw(self.field, tuple(zip(*self.rows)) if self.rows else ())

    def apply(self, vec):
        """Matrix times a column vector given as a sequence of raw values."""
        p = self.field.char
        out = []
        for r in self.rows:
            s = sum(a * b for a, b in zip(r, vec))
            out.append(s % p if p else s)
        return tuple(out)

    def is_identity(self):
        return self == Matrix.identity(self.field, self.nrows) and self.nrows == self.ncols

    def rref(self):
        """Return (reduced rows, pivot columns)."""
        return rref(self.field, [list(r) for r in self.rows], self.ncols)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self):
        """Basis of the right null space, one tuple per vector, in reduced form."""
        return nullspace(self.field, [list(r) for r in self.rows], self.ncols)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices are invertible")
        n = self.nrows
        f = self.field
        aug = [list(r) + [f.one if i == j else f.zero for j in range(n)]
               for i, r in enumerate(self.rows)]
        red, piv = rref(f, aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix._raw(f, tuple(tuple(r[n:]) for r in red[:n]))

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows


def rref(field: Field, rows, ncols):
    """Gauss-Jordan elimination in place, first-nonzero pivoting."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(field: Field, rows, ncols):
    red, piv = rref(field, rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for i, pc in enumerate(piv):
            vec[pc] = field.neg(red[i][fc])
        basis.append(tuple(vec))
    return basis


def rank_of(field: Field, vectors, ncols) -> int:
    if not vectors:
        return 0
    return len(rref(field, vectors, ncols)[1])


class EchelonBasis:
    """Incrementally maintained reduced basis of a subspace of field^n.

    Vectors are sparse dicts ``column -> value``; columns are compared with the
    supplied ``key`` so that the pivot of a row is its *smallest* column.
    """

    def __init__(self, field: Field, key=None):
        self.field = field
        self.key = key or (lambda c: c)
        self.rows = {}  # pivot column -> row dict with row[pivot] == 1

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        f = self.field
        vec = {c: v for c, v in vec.items() if v != 0}
        while vec:
            changed = False
            for c in sorted(vec, key=self.key):
                row = self.rows.get(c)
                if row is None:
                    continue
                a = vec[c]
                for rc, rv in row.items():
                    nv = f.sub(vec.get(rc, f.zero), f.mul(a, rv))
                    if nv == 0:
                        vec.pop(rc, None)
                    else:
                        vec[rc] = nv
                changed = True
                break
            if not changed:
                break
        return vec

    def add(self, vec) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        f = self.field
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = min(vec, key=self.key)
        inv = f.inv(vec[piv])
        vec = {c: f.mul(inv, v) for c, v in vec.items()}
        self.rows[piv] = vec
        return True
