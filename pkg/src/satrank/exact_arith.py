"""Exact integer/rational linear algebra and rational points on the unit circle.

Everything here is pure and immutable.  Rationals are ``fractions.Fraction``;
integer matrices are :class:`IntMatrix`.  Determinants and linear solves use
Bareiss fraction-free elimination so intermediate values stay integral.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, total_ordering
from math import gcd
from typing import Iterable, Sequence

import sympy

from .errors import DimensionMismatch, SingularMatrix

Rational = Fraction

_Z = sympy.Symbol("z")


def parse_rational(text) -> Fraction:
    """Parse ``"a/b"`` (or a bare integer) into a reduced Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rationals must be 'a/b' strings, got {text!r}")
    s = text.strip()
    num, _, den = s.partition("/")
    try:
        value = Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc
    return value


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _bareiss_forward(a: list[list[int]], ncols: int) -> tuple[int, list[int]]:
    """In-place fraction-free elimination on the leading square block.

    Returns (sign, pivot_columns).  Rows are swapped for zero pivots; the
    last pivot of a nonsingular n x n block is sign * det.
    """
    n = len(a)
    sign = 1
    prev = 1
    pivots = []
    row = 0
    for col in range(min(n, ncols) if n else 0):
        if row >= n:
            break
        if a[row][col] == 0:
            for i in range(row + 1, n):
                if a[i][col] != 0:
                    a[row], a[i] = a[i], a[row]
                    sign = -sign
                    break
            else:
                continue
        piv = a[row][col]
        pivots.append(col)
        for i in range(row + 1, n):
            ai = a[i]
            f = ai[col]
            ar = a[row]
            for j in range(col + 1, len(ai)):
                ai[j] = (ai[j] * piv - f * ar[j]) // prev
            ai[col] = 0
        prev = piv
        row += 1
    return sign, pivots


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            ai = a[i]
            f = ai[k]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * piv - f * ak[j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank of an integer matrix (any shape)."""
    if not rows or not rows[0]:
        return 0
    a = [list(r) for r in rows]
    _, pivots = _bareiss_forward(a, len(a[0]))
    return len(pivots)


class IntMatrix:
    """Immutable integer matrix with exact determinant and inverse."""

    def __init__(self, data: Iterable[Iterable[int]] = (), *, cols: int | None = None):
        data = tuple(tuple(int(x) for x in r) for r in data)
        rows = len(data)
        if rows:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionMismatch("ragged matrix rows")
        else:
            width = cols or 0
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        if name in ("rows", "cols", "_data"):
            raise AttributeError("IntMatrix is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    @cached_property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self._data), cols=self.rows) if self.rows else IntMatrix.zeros(self.cols, 0)

    def _check_same_shape(self, other: IntMatrix):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-x for x in r] for r in self._data], cols=self.cols)

    def __mul__(self, k: int) -> IntMatrix:
        return IntMatrix([[k * x for x in r] for r in self._data], cols=self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._data)) if other.rows else [()] * other.cols
        return IntMatrix(
            [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in self._data], cols=other.cols
        )

    def direct_sum(self, other: IntMatrix) -> IntMatrix:
        n, m = self.cols, other.cols
        top = [list(r) + [0] * m for r in self._data]
        bottom = [[0] * n + list(r) for r in other._data]
        return IntMatrix(top + bottom, cols=n + m)

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.T

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    @cached_property
    def det(self) -> int:
        if not self.is_square:
            raise DimensionMismatch("determinant of a non-square matrix")
        return bareiss_det(self._data)

    def solve(self, b: Sequence[int]) -> list[Fraction]:
        """Exact solution x of M x = b for nonsingular square M."""
        n = self.rows
        if not self.is_square:
            raise DimensionMismatch("solve needs a square matrix")
        if len(b) != n:
            raise DimensionMismatch(f"vector of length {len(b)} for a {n}x{n} matrix")
        if n == 0:
            return []
        a = [list(r) + [int(x)] for r, x in zip(self._data, b)]
        _, pivots = _bareiss_forward(a, n)
        if len(pivots) < n:
            raise SingularMatrix("matrix is singular")
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            acc = Fraction(a[i][n]) - sum(a[i][j] * x[j] for j in range(i + 1, n))
            x[i] = acc / a[i][i]
        return x

    def inverse(self) -> list[list[Fraction]]:
        if self.det == 0:
            raise SingularMatrix("matrix is singular")
        n = self.rows
        columns = [self.solve([int(i == j) for i in range(n)]) for j in range(n)]
        return [[columns[j][i] for j in range(n)] for i in range(n)]

    def adjugate(self) -> IntMatrix:
        d = self.det
        if d == 0:
            # rank-deficient case via cofactors
            n = self.rows
            return IntMatrix(
                [
                    [
                        (-1) ** (i + j)
                        * bareiss_det(
                            [r[:i] + r[i + 1:] for k, r in enumerate(self._data) if k != j]
                        )
                        for j in range(n)
                    ]
                    for i in range(n)
                ],
                cols=n,
            )
        inv = self.inverse()
        return IntMatrix([[int(x * d) for x in r] for r in inv], cols=self.cols)


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def rational_bilinear(M: IntMatrix, v: Sequence[int], w: Sequence[int]) -> Fraction:
    """v . M^{-1} . w^T, exactly."""
    M = as_matrix(M)
    if not M.is_square:
        raise DimensionMismatch("matrix must be square")
    if len(v) != M.rows or len(w) != M.rows:
        raise DimensionMismatch(f"vectors of length {len(v)}, {len(w)} for dimension {M.rows}")
    if M.det == 0:
        raise SingularMatrix("matrix is singular")
    x = M.solve(w)
    return sum((vi * xi for vi, xi in zip(v, x)), Fraction(0))


def rational_inverse_apply(M: IntMatrix, v: Sequence[int]) -> Fraction:
    """v . M^{-1} . v^T for a nonsingular integer matrix."""
    return rational_bilinear(M, v, v)


@total_ordering
class CircleAngle:
    """The root of unity exp(2 pi i a/n), kept as the reduced fraction a/n in [0, 1)."""

    __slots__ = ("a", "n")

    def __init__(self, a: int, n: int = 1):
        if isinstance(a, Fraction) and n == 1:
            a, n = a.numerator, a.denominator
        a, n = int(a), int(n)
        if n <= 0:
            raise ValueError("angle denominator must be positive")
        a %= n
        g = gcd(a, n)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "n", n // g)

    def __setattr__(self, name, value):
        raise AttributeError("CircleAngle is immutable")

    @classmethod
    def parse(cls, text: str) -> CircleAngle:
        return cls(parse_rational(text))

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.n)

    @property
    def is_one(self) -> bool:
        return self.a == 0

    def conjugate(self) -> CircleAngle:
        return CircleAngle(-self.a, self.n)

    def __mul__(self, k: int) -> CircleAngle:
        return CircleAngle(self.a * k, self.n)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CircleAngle):
            return NotImplemented
        return (self.a, self.n) == (other.a, other.n)

    def __lt__(self, other):
        if not isinstance(other, CircleAngle):
            return NotImplemented
        return self.value < other.value

    def __hash__(self):
        return hash(("CircleAngle", self.a, self.n))

    def __float__(self):
        return self.a / self.n

    def __str__(self):
        return f"{self.a}/{self.n}"

    def __repr__(self):
        return f"CircleAngle({self.a}, {self.n})"


def alexander_polynomial(V: IntMatrix) -> tuple[int, ...]:
    """Coefficients (constant term first) of det(V - z V^T), length dim(V) + 1."""
    V = as_matrix(V)
    d = V.rows
    if d == 0:
        return (1,)
    rows, cols = V.tolist(), V.T.tolist()
    points = []
    for k in range(d + 1):
        points.append((k, bareiss_det([[x - k * y for x, y in zip(r, c)] for r, c in zip(rows, cols)])))
    poly = sympy.Poly(sympy.interpolate(points, _Z), _Z)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    coeffs += [0] * (d + 1 - len(coeffs))
    return tuple(coeffs)


def alexander_poly_sympy(V: IntMatrix) -> sympy.Poly:
    coeffs = alexander_polynomial(V)
    return sympy.Poly(list(reversed(coeffs)), _Z, domain="ZZ")


def alexander_nonvanishing(V: IntMatrix, zeta: CircleAngle) -> bool:
    """True iff det(V - z V^T) is nonzero at the primitive root of unity ``zeta``.

    Decided exactly by reducing the polynomial modulo the cyclotomic
    polynomial of order ``zeta.n``.
    """
    poly = alexander_poly_sympy(as_matrix(V))
    if poly.is_zero:
        return False
    n = zeta.n
    if poly.degree() < sympy.totient(n):
        return True
    phi = sympy.Poly(sympy.cyclotomic_poly(n, _Z), _Z, domain="ZZ")
    return not poly.rem(phi).is_zero
