"""Immutable dense matrices over a ring descriptor."""

from .errors import UsageError


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "rows", "_hash")

    def __init__(self, ring, rows, nrows=None, ncols=None):
        rows = tuple(tuple(ring.coerce(x) for x in r) for r in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            if not rows:
                raise UsageError("give ncols for a matrix without rows")
            ncols = len(rows[0])
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise UsageError(f"entries do not form a {nrows}x{ncols} matrix")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    @classmethod
    def raw(cls, ring, rows, nrows, ncols):
        # trusted constructor: rows already a tuple of tuples of ring elements
        m = cls.__new__(cls)
        m.ring = ring
        m.nrows = nrows
        m.ncols = ncols
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def zero(cls, ring, m, n):
        z = ring.zero
        return cls.raw(ring, tuple((z,) * n for _ in range(m)), m, n)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls.raw(ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diagonal(cls, ring, entries, m=None, n=None):
        k = len(entries)
        m = k if m is None else m
        n = k if n is None else n
        z = ring.zero
        rows = [[z] * n for _ in range(m)]
        for i, d in enumerate(entries):
            rows[i][i] = ring.coerce(d)
        return cls.raw(ring, tuple(map(tuple, rows)), m, n)

    @classmethod
    def vstack(cls, ring, blocks, ncols):
        rows = []
        for b in blocks:
            if b.ncols != ncols:
                raise UsageError("blocks of a vertical stack need equal column counts")
            rows.extend(b.rows)
        return cls.raw(ring, tuple(rows), len(rows), ncols)

    @classmethod
    def hstack(cls, ring, blocks, nrows):
        for b in blocks:
            if b.nrows != nrows:
                raise UsageError("blocks of a horizontal stack need equal row counts")
        rows = tuple(sum((b.rows[i] for b in blocks), ()) for i in range(nrows))
        return cls.raw(ring, rows, nrows, sum(b.ncols for b in blocks))

    @classmethod
    def block_diagonal(cls, ring, blocks):
        m = sum(b.nrows for b in blocks)
        n = sum(b.ncols for b in blocks)
        z = ring.zero
        rows = []
        col = 0
        for b in blocks:
            left = (z,) * col
            right = (z,) * (n - col - b.ncols)
            rows.extend(left + r + right for r in b.rows)
            col += b.ncols
        return cls.raw(ring, tuple(rows), m, n)

    # Rows_R view: a matrix is a morphism nrows -> ncols
    @property
    def source(self):
        return self.nrows

    @property
    def range(self):
        return self.ncols

    @property
    def category(self):
        from .additive import rows
        return rows(self.ring)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def submatrix(self, rows=None, cols=None):
        rs = range(self.nrows) if rows is None else rows
        cs = range(self.ncols) if cols is None else cols
        cs = list(cs)
        out = tuple(tuple(self.rows[i][j] for j in cs) for i in rs)
        return Matrix.raw(self.ring, out, len(out), len(cs))

    def transpose(self):
        cols = tuple(zip(*self.rows)) if self.nrows else ((),) * self.ncols
        return Matrix.raw(self.ring, cols, self.ncols, self.nrows)

    T = property(transpose)

    def _check_ring(self, other):
        if not isinstance(other, Matrix):
            raise UsageError(f"expected a matrix, got {type(other).__name__}")
        if other.ring != self.ring:
            raise UsageError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise UsageError(f"cannot add {self.shape} and {other.shape} matrices")
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix.raw(self.ring, rows, self.nrows, self.ncols)

    def __sub__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise UsageError(f"cannot subtract {self.shape} and {other.shape} matrices")
        rows = tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix.raw(self.ring, rows, self.nrows, self.ncols)

    def __neg__(self):
        rows = tuple(tuple(-a for a in r) for r in self.rows)
        return Matrix.raw(self.ring, rows, self.nrows, self.ncols)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            c = self.ring.coerce(other)
            rows = tuple(tuple(a * c for a in r) for r in self.rows)
            return Matrix.raw(self.ring, rows, self.nrows, self.ncols)
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise UsageError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.ring.zero
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                s = z
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return Matrix.raw(self.ring, tuple(out), self.nrows, other.ncols)

    def __rmul__(self, c):
        return self * c

    def kron(self, other):
        self._check_ring(other)
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append(tuple(a * b for a in r for b in s))
        return Matrix.raw(self.ring, tuple(rows), self.nrows * other.nrows, self.ncols * other.ncols)

    def flatten(self):
        """Row-major flattening into a 1 x (m*n) matrix."""
        row = tuple(a for r in self.rows for a in r)
        return Matrix.raw(self.ring, (row,), 1, len(row))

    def reshape(self, m, n):
        flat = [a for r in self.rows for a in r]
        if len(flat) != m * n:
            raise UsageError(f"cannot reshape {self.shape} into {(m, n)}")
        rows = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(m))
        return Matrix.raw(self.ring, rows, m, n)

    def is_zero(self):
        return all(not a for r in self.rows for a in r)

    def map(self, fn, ring=None):
        ring = ring or self.ring
        return Matrix(ring, [[fn(a) for a in r] for r in self.rows], self.nrows, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.nrows, self.ncols, self.rows))
        return self._hash

    def __iter__(self):
        return iter(self.rows)

    def tolist(self):
        return [list(r) for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.format(a, compact=True) for a in r) for r in self.rows)
        return f"Matrix<{self.ring} {self.nrows}x{self.ncols}>[{body}]"
