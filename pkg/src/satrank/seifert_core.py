"""Patterns, Seifert forms and linking numbers in the branched double cover.

A winding-number-zero pattern is recorded by a Seifert matrix S of P(U)
together with the coordinates ``v`` of the solid-torus axis in the
Alexander dual basis.  The branched double cover of P(U) is surgery on a
link with linking matrix S + S^T, and the framed lift J of the axis has
rational self-linking

    l = -v (S + S^T)^{-1} v^T.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    DimensionMismatch,
    InvariantViolation,
    NonzeroWinding,
    NotAlexanderOne,
    SingularCover,
    SingularMatrix,
    UnknownCurve,
    ZeroQ,
)
from .exact_arith import IntMatrix, as_matrix, rational_bilinear, rational_inverse_apply


@dataclass(frozen=True)
class SeifertForm:
    """Seifert matrix of a knot; V - V^T must have determinant 1."""

    V: IntMatrix
    name: str = ""

    def __post_init__(self):
        V = as_matrix(self.V)
        object.__setattr__(self, "V", V)
        if not V.is_square:
            raise InvariantViolation(f"Seifert matrix must be square, got {V.shape}")
        if V.rows % 2:
            raise InvariantViolation(f"Seifert matrix must have even dimension, got {V.rows}")
        if (V - V.T).det != 1:
            raise InvariantViolation(f"det(V - V^T) = {(V - V.T).det}, expected 1")

    @classmethod
    def unknot(cls) -> SeifertForm:
        return cls(IntMatrix.zeros(0, 0), "unknot")

    @property
    def dim(self) -> int:
        return self.V.rows

    @property
    def genus(self) -> int:
        return self.V.rows // 2

    def mirror(self) -> SeifertForm:
        return SeifertForm(-self.V.T, f"m({self.name})" if self.name else "")

    def connected_sum(self, other: SeifertForm) -> SeifertForm:
        name = f"{self.name}#{other.name}" if self.name and other.name else ""
        return SeifertForm(self.V.direct_sum(other.V), name)

    def congruent(self, U: IntMatrix) -> SeifertForm:
        """The same form in the basis given by the rows of unimodular U."""
        return SeifertForm(U @ self.V @ U.T, self.name)


@dataclass(frozen=True)
class Pattern:
    seifert: SeifertForm
    winding: int
    axis_linking: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "axis_linking", tuple(int(x) for x in self.axis_linking))
        object.__setattr__(self, "winding", int(self.winding))
        if len(self.axis_linking) != self.seifert.dim:
            raise DimensionMismatch(
                f"axis linking vector has length {len(self.axis_linking)}, "
                f"Seifert matrix has dimension {self.seifert.dim}"
            )

    def mirror(self) -> Pattern:
        return Pattern(
            self.seifert.mirror(), self.winding, self.axis_linking, f"m({self.name})" if self.name else ""
        )

    def change_basis(self, U: IntMatrix) -> Pattern:
        """Re-express the pattern in the basis given by the rows of unimodular U.

        The entries of ``axis_linking`` are linking numbers of the axis with
        the basis curves, so they transform like the basis: v -> v U^T.
        """
        U = as_matrix(U)
        if abs(U.det) != 1:
            raise InvariantViolation("basis change must be unimodular")
        v = tuple(sum(u * x for u, x in zip(U.row(i), self.axis_linking)) for i in range(U.rows))
        return Pattern(self.seifert.congruent(U), self.winding, v, self.name)


def branched_cover_matrix(s: SeifertForm) -> IntMatrix:
    """Linking matrix S + S^T of a surgery presentation of the branched double cover."""
    A = s.V + s.V.T
    if A.det % 2 == 0:
        raise InvariantViolation(f"det(S + S^T) = {A.det} is even")
    return A


def axis_self_linking(p: Pattern) -> Fraction:
    """Rational self-linking l of the framed lift of the axis."""
    if p.winding != 0:
        raise NonzeroWinding(f"pattern {p.name!r} has winding number {p.winding}")
    if p.seifert.dim == 0:
        return Fraction(0)
    A = p.seifert.V + p.seifert.V.T
    if A.det == 0:
        raise SingularCover("det(S + S^T) = 0")
    return -rational_inverse_apply(A, p.axis_linking)


@dataclass(frozen=True)
class SurgeryPresentation:
    """Integral surgery on a framed link plus auxiliary curves in its complement.

    ``curves`` maps a curve id to its linking numbers with the link
    components; ``s3_linking`` holds S^3 linking numbers between auxiliary
    curves keyed by unordered pairs (a framing is the pair (c, c)).  Pairs
    not listed have S^3 linking number 0.
    """

    A: IntMatrix
    curves: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    s3_linking: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        A = as_matrix(self.A)
        object.__setattr__(self, "A", A)
        if not A.is_symmetric():
            raise InvariantViolation("linking matrix must be symmetric")
        if A.det == 0:
            raise SingularMatrix("surgery does not give a rational homology sphere (det A = 0)")
        curves = {k: tuple(int(x) for x in v) for k, v in self.curves.items()}
        for k, v in curves.items():
            if len(v) != A.rows:
                raise DimensionMismatch(f"curve {k!r} has {len(v)} linking numbers, expected {A.rows}")
        object.__setattr__(self, "curves", curves)
        object.__setattr__(self, "s3_linking", dict(self.s3_linking))

    def lk_s3(self, a: str, b: str) -> int:
        for key in ((a, b), (b, a)):
            if key in self.s3_linking:
                return self.s3_linking[key]
        return 0

    def with_block(self, B: IntMatrix) -> SurgeryPresentation:
        """Adjoin further link components (matrix B) unlinked from every curve."""
        B = as_matrix(B)
        curves = {k: v + (0,) * B.rows for k, v in self.curves.items()}
        return SurgeryPresentation(self.A.direct_sum(B), curves, self.s3_linking)


def surgery_linking(sp: SurgeryPresentation, eta: str, eta_prime: str) -> Fraction:
    """Rational linking number of two curves in the surgered manifold."""
    for c in (eta, eta_prime):
        if c not in sp.curves:
            raise UnknownCurve(c)
    return sp.lk_s3(eta, eta_prime) - rational_bilinear(sp.A, sp.curves[eta], sp.curves[eta_prime])


def cover_presentation(p: Pattern, p_: int, q_: int, companion_blocks: Sequence[IntMatrix] = ()) -> SurgeryPresentation:
    """Surgery data for the (p, q) curve on the boundary torus of the lifted axis and its pushoff.

    The curve is p meridians plus q longitudes of J, so it meets the link
    with q times the axis vector and links its torus pushoff p*q times in
    S^3.  Companion blocks carry no linking with either curve.
    """
    if p.winding != 0:
        raise NonzeroWinding(f"pattern {p.name!r} has winding number {p.winding}")
    vec = tuple(q_ * x for x in p.axis_linking)
    sp = SurgeryPresentation(
        p.seifert.V + p.seifert.V.T,
        {"eta": vec, "eta_prime": vec},
        {("eta", "eta_prime"): p_ * q_},
    )
    for B in companion_blocks:
        sp = sp.with_block(B)
    return sp


def cobordism_form(p_: int, q_: int, l: Fraction) -> Fraction:
    """The 1x1 intersection form p q + q^2 l of the two-handle cobordism."""
    if q_ == 0:
        raise ZeroQ("q must be nonzero")
    return p_ * q_ + q_ * q_ * Fraction(l)


def is_negative_definite(p_: int, q_: int, l: Fraction) -> bool:
    return cobordism_form(p_, q_, l) < 0


def _check_alexander_one(n: int, m: int, l: int):
    if n * l != m * (m - 1):
        raise NotAlexanderOne(f"n*l = {n * l} but m(m-1) = {m * (m - 1)}")


def genus1_seifert(n: int, m: int, l: int) -> SeifertForm:
    _check_alexander_one(n, m, l)
    return SeifertForm(IntMatrix([[n, m], [m - 1, l]]), f"genus1({n},{m},{l})")


def genus1_form(n: int, m: int, l: int) -> IntMatrix:
    """Quadratic form computing the axis self-linking of a genus-one Alexander-one pattern."""
    _check_alexander_one(n, m, l)
    return IntMatrix([[2 * l, 1 - 2 * m], [1 - 2 * m, 2 * n]])


def genus1_value(n: int, m: int, l: int, x: int, y: int) -> int:
    G = genus1_form(n, m, l)
    return G[0, 0] * x * x + 2 * G[0, 1] * x * y + G[1, 1] * y * y


def genus1_nonzero(n: int, m: int, l: int, x: int, y: int) -> bool:
    return genus1_value(n, m, l, x, y) != 0


def genus1_enumerate(max_m: int, max_l: int) -> list[tuple[int, int, int]]:
    """All (n, m, l) with |m| <= max_m, |l| <= max_l and n l = m (m - 1), sorted."""
    if max_m < 0 or max_l < 0:
        raise ValueError("bounds must be non-negative")
    out = set()
    for m in range(-max_m, max_m + 1):
        target = m * (m - 1)
        for l in range(-max_l, max_l + 1):
            if l != 0:
                if target % l == 0:
                    out.add((target // l, m, l))
            elif target == 0:
                out.update((n, m, 0) for n in range(-max_l, max_l + 1))
    return sorted(out)


def genus1_pattern(n: int, m: int, l: int, x: int, y: int) -> Pattern:
    return Pattern(genus1_seifert(n, m, l), 0, (x, y), f"genus1({n},{m},{l};{x},{y})")


def twist_pattern(k: int) -> Pattern:
    """Twist knot P_k in the complement of its clasp axis; k = 0 is the Whitehead pattern."""
    return Pattern(SeifertForm(IntMatrix([[k, 0], [-1, -1]]), f"twist_{k}"), 0, (1, 0), f"twist_{k}")
