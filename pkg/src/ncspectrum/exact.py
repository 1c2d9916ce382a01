"""Exact Gaussian-rational scalars and matrices.

Scalars live in Q(i): complex numbers whose real and imaginary parts are
arbitrary-precision rationals.  Every projection, permutation unitary and
Pythagorean rotation used elsewhere in the package is exactly
representable here, so equality checks are genuine algebraic identities
rather than floating-point comparisons.

All values are immutable after construction and all operations are pure,
so they can be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise ValueError(f"cannot interpret {x!r} as an exact rational")


class GaussianRational:
    """A complex number re + im*i with exact rational parts.

    Fraction keeps itself in lowest terms, so structural equality is
    exact equality.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, tuple) and len(x) == 2:
            return cls(x[0], x[1])
        return cls(x)

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other):
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_pair(self) -> list:
        """Serialize as a ["re", "im"] pair of rational strings."""
        return [str(self.re), str(self.im)]

    @classmethod
    def from_json(cls, data) -> "GaussianRational":
        """Parse "3/5" or ["3/5", "-4/5"]."""
        if isinstance(data, str):
            return cls(data)
        if isinstance(data, (list, tuple)) and len(data) == 2:
            return cls(data[0], data[1])
        if isinstance(data, int):
            return cls(data)
        raise ValueError(f"cannot parse scalar from {data!r}")


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


class MatrixClass:
    """Result of classifying a square matrix; reports both flags."""

    __slots__ = ("projection", "unitary")

    def __init__(self, projection: bool, unitary: bool):
        self.projection = projection
        self.unitary = unitary

    @property
    def label(self) -> str:
        if self.projection:
            return "projection"
        if self.unitary:
            return "unitary"
        return "neither"

    def __repr__(self):
        return f"MatrixClass(projection={self.projection}, unitary={self.unitary})"

    def __eq__(self, other):
        if not isinstance(other, MatrixClass):
            return NotImplemented
        return self.projection == other.projection and self.unitary == other.unitary


class ExactMatrix:
    """An immutable matrix with GaussianRational entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(GaussianRational.coerce(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValidationError(
                f"entry count {len(entries)} != {rows}x{cols}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._hash = None

    @classmethod
    def from_rows(cls, rows) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValidationError("ragged rows")
        return cls(nrows, ncols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [GR_ONE if i == j else GR_ZERO
                          for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, [GR_ZERO] * (rows * cols))

    @classmethod
    def diagonal(cls, values) -> "ExactMatrix":
        values = [GaussianRational.coerce(v) for v in values]
        n = len(values)
        return cls(n, n, [values[i] if i == j else GR_ZERO
                          for i in range(n) for j in range(n)])

    def entry(self, i: int, j: int) -> GaussianRational:
        return self.entries[i * self.cols + j]

    def row_list(self, i: int):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self):
        return [self.row_list(i) for i in range(self.rows)]

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValidationError(
                f"shape mismatch in add: {self.rows}x{self.cols} vs "
                f"{other.rows}x{other.cols}"
            )
        return ExactMatrix(
            self.rows, self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValidationError(
                f"shape mismatch in sub: {self.rows}x{self.cols} vs "
                f"{other.rows}x{other.cols}"
            )
        return ExactMatrix(
            self.rows, self.cols,
            [a - b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, [-e for e in self.entries])

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        """Matrix product, skipping zero entries of the left factor."""
        if self.cols != other.rows:
            raise ValidationError(
                f"shape mismatch in mul: {self.rows}x{self.cols} times "
                f"{other.rows}x{other.cols}"
            )
        out = [GR_ZERO] * (self.rows * other.cols)
        oc = other.cols
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if a.is_zero():
                    continue
                obase = k * oc
                rbase = i * oc
                for j in range(oc):
                    b = other.entries[obase + j]
                    if not b.is_zero():
                        out[rbase + j] = out[rbase + j] + a * b
        return ExactMatrix(self.rows, other.cols, out)

    def scale(self, c) -> "ExactMatrix":
        c = GaussianRational.coerce(c)
        return ExactMatrix(self.rows, self.cols, [c * e for e in self.entries])

    def adjoint(self) -> "ExactMatrix":
        """Conjugate transpose."""
        return ExactMatrix(
            self.cols, self.rows,
            [self.entry(i, j).conjugate()
             for j in range(self.cols) for i in range(self.rows)],
        )

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product, shape (p*r) x (q*s)."""
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        out = []
        for i in range(rows):
            i1, i2 = divmod(i, other.rows)
            for j in range(cols):
                j1, j2 = divmod(j, other.cols)
                out.append(self.entry(i1, j1) * other.entry(i2, j2))
        return ExactMatrix(rows, cols, out)

    def trace(self) -> GaussianRational:
        if self.rows != self.cols:
            raise ValidationError("trace of a non-square matrix")
        t = GR_ZERO
        for i in range(self.rows):
            t = t + self.entry(i, i)
        return t

    def rank(self) -> int:
        """Rank over Q(i) by exact Gaussian elimination."""
        work = [self.row_list(i) for i in range(self.rows)]
        rank = 0
        col = 0
        while rank < len(work) and col < self.cols:
            pivot = None
            for r in range(rank, len(work)):
                if not work[r][col].is_zero():
                    pivot = r
                    break
            if pivot is None:
                col += 1
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            pv = work[rank][col]
            for r in range(len(work)):
                if r == rank:
                    continue
                factor = work[r][col]
                if factor.is_zero():
                    continue
                ratio = factor / pv
                row = work[r]
                prow = work[rank]
                for c in range(col, self.cols):
                    row[c] = row[c] - ratio * prow[c]
            rank += 1
            col += 1
        return rank

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def classify(self) -> MatrixClass:
        """projection iff m = m* = m^2; unitary iff m m* = I."""
        if self.rows != self.cols:
            raise ValidationError("classify requires a square matrix")
        adj = self.adjoint()
        projection = (self == adj) and (self * self == self)
        unitary = (self * adj == ExactMatrix.identity(self.rows))
        return MatrixClass(projection, unitary)

    def diagonal_01_pattern(self):
        """If the matrix is diagonal with 0/1 entries, the tuple of its
        diagonal bits; otherwise None."""
        if self.rows != self.cols:
            return None
        bits = []
        for i in range(self.rows):
            for j in range(self.cols):
                e = self.entry(i, j)
                if i == j:
                    if e == GR_ONE:
                        bits.append(1)
                    elif e.is_zero():
                        bits.append(0)
                    else:
                        return None
                elif not e.is_zero():
                    return None
        return tuple(bits)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        body = "; ".join(
            ", ".join(repr(e) for e in self.row_list(i))
            for i in range(self.rows)
        )
        return f"ExactMatrix[{body}]"

    def to_json(self):
        """Rows of ["re", "im"] string pairs; round-trips exactly."""
        return [[self.entry(i, j).to_pair() for j in range(self.cols)]
                for i in range(self.rows)]

    @classmethod
    def from_json(cls, data) -> "ExactMatrix":
        if not isinstance(data, list) or not data:
            raise ValidationError("matrix JSON must be a non-empty list of rows")
        rows = [[GaussianRational.from_json(e) for e in row] for row in data]
        return cls.from_rows(rows)
