"""Tristram-Levine signatures, jump functions and torus-knot Seifert forms.

Jumps are half the difference of the one-sided limits of the signature
function t -> sigma(exp(2 pi i t)).  Because sigma is invariant under
conjugation, the jump at 1 - t is minus the jump at t; spectra are stored on
the upper semicircle (0, 1/2] only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

from .circle_roots import IrrationalAngle, angle_sort_key, unit_circle_roots
from .errors import InvalidTorusParams
from .exact_arith import CircleAngle, IntMatrix, alexander_nonvanishing, format_rational, integer_rank
from .hermitian import DEFAULT_PRECISION, hermitian_signature
from .seifert_core import Pattern, SeifertForm

_HALF = Fraction(1, 2)


def _matrix(V) -> IntMatrix:
    return V.V if isinstance(V, SeifertForm) else V


class JumpSpectrum(Mapping):
    """Nonzero jumps of a signature function on the upper semicircle, sorted by angle."""

    def __init__(self, jumps: Mapping | Iterable = ()):
        items = jumps.items() if isinstance(jumps, Mapping) else jumps
        merged: dict = {}
        for key, value in items:
            merged[key] = merged.get(key, 0) + int(value)
        self._entries = tuple(
            sorted(((k, v) for k, v in merged.items() if v != 0), key=lambda kv: angle_sort_key(kv[0]))
        )
        self._index = dict(self._entries)

    def __getitem__(self, key):
        return self._index[key]

    def __iter__(self) -> Iterator:
        return (k for k, _ in self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if isinstance(other, JumpSpectrum):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        return hash(self._entries)

    def __add__(self, other: JumpSpectrum) -> JumpSpectrum:
        return JumpSpectrum(list(self.items()) + list(other.items()))

    def __neg__(self) -> JumpSpectrum:
        return JumpSpectrum((k, -v) for k, v in self.items())

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in self._entries)
        return f"JumpSpectrum({{{inner}}})"

    def to_json(self) -> list[dict]:
        out = []
        for key, jump in self._entries:
            if isinstance(key, CircleAngle):
                angle = str(key)
            else:
                angle = {"isolating": [format_rational(key.lo), format_rational(key.hi)]}
            out.append({"angle": angle, "jump": jump})
        return out


@dataclass(frozen=True)
class BraidWord:
    strands: int
    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(g) for g in self.word))
        if not self.word:
            raise ValueError("braid word must be nonempty")
        if any(not 1 <= g < self.strands for g in self.word):
            raise ValueError(f"generator indices must lie in [1, {self.strands - 1}]")

    def closure_components(self) -> int:
        perm = list(range(self.strands))
        for g in self.word:
            perm[g - 1], perm[g] = perm[g], perm[g - 1]
        seen, count = set(), 0
        for start in range(self.strands):
            if start in seen:
                continue
            count += 1
            i = start
            while i not in seen:
                seen.add(i)
                i = perm[i]
        return count


def braid_seifert(b: BraidWord, name: str = "") -> SeifertForm:
    """Seifert matrix of the canonical surface of a positive braid closure.

    The surface is one disk per strand joined by a half-twisted band per
    crossing.  H_1 has a basis of loops through consecutive bands of the
    same generator.
    """
    if b.closure_components() != 1:
        raise ValueError("braid closure is a link, not a knot")
    where: dict[int, list[int]] = {}
    for pos, g in enumerate(b.word):
        where.setdefault(g, []).append(pos)
    loops = [(g, ps[j], ps[j + 1]) for g in sorted(where) for ps in [where[g]] for j in range(len(ps) - 1)]
    n = len(loops)
    M = [[0] * n for _ in range(n)]
    for a, (g, x0, x1) in enumerate(loops):
        M[a][a] = -1
        for c, (h, y0, y1) in enumerate(loops):
            if h == g and y0 == x1:
                M[a][c] = 1
            elif h == g + 1:
                if x0 < y0 < x1 < y1:
                    M[a][c] = -1
                elif y0 < x0 < y1 < x1:
                    M[c][a] = 1
    return SeifertForm(IntMatrix(M, cols=n), name)


def torus_seifert(r: int, s: int) -> SeifertForm:
    """Seifert form of the positive torus knot T(r, s) as the closure of (s_1 ... s_{r-1})^s."""
    if r < 2 or s < 2 or gcd(r, s) != 1:
        raise InvalidTorusParams(f"T({r},{s}) needs coprime r, s >= 2")
    return braid_seifert(BraidWord(r, tuple(range(1, r)) * s), f"T({r},{s})")


def tl_signature(V, t: CircleAngle, *, precision_start: int = DEFAULT_PRECISION) -> int:
    return hermitian_signature(_matrix(V), t, precision_start=precision_start)


def jump_spectrum(V, *, precision_start: int = DEFAULT_PRECISION) -> JumpSpectrum:
    M = _matrix(V)
    roots = unit_circle_roots(M)
    sigmas = [hermitian_signature(M, t, precision_start=precision_start) for t in roots.samples]
    jumps = []
    for k, key in enumerate(roots.keys):
        diff = sigmas[k + 1] - sigmas[k]
        assert diff % 2 == 0, "signature jumps must be even"
        jumps.append((key, diff // 2))
    return JumpSpectrum(jumps)


def signature_samples(V, *, precision_start: int = DEFAULT_PRECISION) -> list[tuple[CircleAngle, int]]:
    """Signature at one certified sample angle inside each root-free arc of (0, 1/2]."""
    M = _matrix(V)
    roots = unit_circle_roots(M)
    return [(t, hermitian_signature(M, t, precision_start=precision_start)) for t in roots.samples]


def jump_at(V, t: CircleAngle) -> int:
    """Jump of the signature function at exp(2 pi i t); zero away from Alexander roots."""
    t = CircleAngle(t) if isinstance(t, Fraction) else t
    if t.is_one:
        return 0
    if t.value > _HALF:
        return -jump_at(V, CircleAngle(1 - t.value))
    M = _matrix(V)
    if M.rows == 0 or alexander_nonvanishing(M, t):
        return 0
    return jump_spectrum(M).get(t, 0)


def litherland_jump(p: Pattern, companion, t: CircleAngle) -> int:
    """Jump of the satellite P(K) at t: pattern jump at t plus companion jump at w t."""
    t = CircleAngle(t) if isinstance(t, Fraction) else t
    shifted = t * p.winding
    companion_part = 0 if shifted.is_one else jump_at(companion, shifted)
    return jump_at(p.seifert, t) + companion_part


def independence_rank(knots: Sequence) -> int:
    """Rank of the integer matrix of jump vectors over the union of all jump angles."""
    if not knots:
        raise ValueError("need at least one knot")
    spectra = [jump_spectrum(k) for k in knots]
    keys = sorted({k for s in spectra for k in s}, key=angle_sort_key)
    rows = [[s.get(k, 0) for k in keys] for s in spectra]
    return integer_rank(rows)


__all__ = [
    "BraidWord",
    "IrrationalAngle",
    "JumpSpectrum",
    "braid_seifert",
    "independence_rank",
    "jump_at",
    "jump_spectrum",
    "litherland_jump",
    "signature_samples",
    "tl_signature",
    "torus_seifert",
]
