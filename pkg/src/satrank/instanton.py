"""Instanton cobordism criterion and certified families of torus-knot companions.

For a winding-number-zero pattern with axis self-linking l < 0, fix odd
coprime p, q > 0 with l < -p/q < 0 and put rho(r, s) = q / (r s (p r s - q)).
Companions T(r_i, s_i) are chosen one at a time so that rho(r_i, s_i) is
strictly below 1/r_i, 1/s_i, 1/(p r_i s_i - q), tau(Y) and tau(+-Sigma_j) for
every earlier j.  The tau values (minimal Chern-Simons invariants) are not
computed here; they are read from a :class:`TauOracle` and every bound
consumed is recorded in the certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from math import gcd
from typing import Mapping, Sequence

from .errors import DomainError, MissingTau, NonNegativeL, NonzeroWinding, ZeroLinking
from .exact_arith import IntMatrix, format_rational, parse_rational
from .seifert_core import Pattern, SeifertForm, axis_self_linking


class TauOracle:
    """Externally supplied lower bounds for tau, keyed by manifold descriptor."""

    def __init__(self, bounds: Mapping[str, Fraction] | None = None):
        clean = {}
        for key, value in (bounds or {}).items():
            value = parse_rational(value) if isinstance(value, str) else Fraction(value)
            if not 0 < value <= 1:
                raise ValueError(f"tau bound for {key!r} must lie in (0, 1], got {value}")
            clean[str(key)] = value
        self._bounds = dict(sorted(clean.items()))

    def __getitem__(self, key: str) -> Fraction:
        try:
            return self._bounds[key]
        except KeyError:
            raise MissingTau(key) from None

    def __contains__(self, key):
        return key in self._bounds

    def keys(self):
        return self._bounds.keys()

    def to_json(self) -> dict:
        return {"bounds": {k: format_rational(v) for k, v in self._bounds.items()}}

    @classmethod
    def from_json(cls, data: dict) -> TauOracle:
        if set(data) != {"bounds"} or not isinstance(data["bounds"], dict):
            raise ValueError("tau table must be an object with a single 'bounds' field")
        return cls({k: parse_rational(v) for k, v in data["bounds"].items()})


def sigma_keys(i: int) -> tuple[str, str]:
    return f"+Sigma_{i}", f"-Sigma_{i}"


def rho(r: int, s: int, p: int, q: int) -> Fraction:
    if r < 2 or s < 2 or gcd(r, s) != 1:
        raise DomainError(f"(r, s) = ({r}, {s}) must be coprime with r, s >= 2")
    if p < 1 or q < 1:
        raise DomainError("p and q must be positive")
    if p * r * s <= q:
        raise DomainError(f"p r s = {p * r * s} must exceed q = {q}")
    return Fraction(q, r * s * (p * r * s - q))


def geometric_thresholds(r: int, s: int, p: int, q: int) -> list[tuple[str, Fraction]]:
    return [
        ("1/r", Fraction(1, r)),
        ("1/s", Fraction(1, s)),
        ("1/(prs-q)", Fraction(1, p * r * s - q)),
    ]


def criterion_holds(r: int, s: int, p: int, q: int, taus: Sequence[Fraction] = ()) -> tuple[bool, Fraction]:
    """Whether rho(r, s) lies strictly below every threshold, with the exact margin."""
    value = rho(r, s, p, q)
    for tau in taus:
        if not 0 < tau <= 1:
            raise DomainError(f"tau bound {tau} outside (0, 1]")
    bound = min([v for _, v in geometric_thresholds(r, s, p, q)] + [Fraction(t) for t in taus])
    margin = bound - value
    return margin > 0, margin


def select_pq(l: Fraction) -> tuple[int, int]:
    """p = 1 and the smallest odd q with 1/q < -l."""
    l = Fraction(l)
    if l >= 0:
        raise NonNegativeL(f"l = {l} is not negative")
    q = 1
    while Fraction(1, q) >= -l:
        q += 2
    return 1, q


def _check_pq(l: Fraction, p: int, q: int) -> str | None:
    if p < 1 or q < 1:
        return f"(p, q) = ({p}, {q}) must be positive"
    if p % 2 == 0 or q % 2 == 0:
        return f"(p, q) = ({p}, {q}) must both be odd"
    if gcd(p, q) != 1:
        return f"(p, q) = ({p}, {q}) must be coprime"
    if not l < -Fraction(p, q) < 0:
        return f"l = {l} does not satisfy l < -p/q = {-Fraction(p, q)}"
    return None


@dataclass(frozen=True)
class CertificateEntry:
    r: int
    s: int
    rho: Fraction
    thresholds: tuple[tuple[str, Fraction], ...]
    tau_keys_consumed: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "rho": format_rational(self.rho),
            "thresholds": [{"name": n, "value": format_rational(v)} for n, v in self.thresholds],
            "tau_keys_consumed": list(self.tau_keys_consumed),
        }

    @classmethod
    def from_json(cls, d: dict) -> CertificateEntry:
        return cls(
            int(d["r"]),
            int(d["s"]),
            parse_rational(d["rho"]),
            tuple((t["name"], parse_rational(t["value"])) for t in d["thresholds"]),
            tuple(d["tau_keys_consumed"]),
        )


@dataclass(frozen=True)
class RankCertificate:
    """Data making the instanton obstruction checkable for the first N companions.

    The input pattern's Seifert matrix and axis vector are embedded so that
    the linking number (and the need to mirror) can be re-derived during
    verification; ``l`` is the value after mirroring.
    """

    pattern: str
    seifert_matrix: tuple[tuple[int, ...], ...]
    axis_linking: tuple[int, ...]
    l: Fraction
    mirror_used: bool
    p: int
    q: int
    entries: tuple[CertificateEntry, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern,
            "seifert_matrix": [list(r) for r in self.seifert_matrix],
            "axis_linking": list(self.axis_linking),
            "l": format_rational(self.l),
            "mirror_used": self.mirror_used,
            "p": self.p,
            "q": self.q,
            "entries": [e.to_json() for e in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> RankCertificate:
        return cls(
            d["pattern"],
            tuple(tuple(int(x) for x in row) for row in d["seifert_matrix"]),
            tuple(int(x) for x in d["axis_linking"]),
            parse_rational(d["l"]),
            bool(d["mirror_used"]),
            int(d["p"]),
            int(d["q"]),
            tuple(CertificateEntry.from_json(e) for e in d["entries"]),
        )


def _required_tau_keys(i: int) -> list[str]:
    keys = ["Y"]
    for j in range(1, i):
        keys.extend(sigma_keys(j))
    return keys


def _thresholds(r, s, p, q, i, oracle: TauOracle) -> tuple[list[tuple[str, Fraction]], list[str]]:
    keys = _required_tau_keys(i)
    taus = [(f"tau({k})", oracle[k]) for k in keys]
    return geometric_thresholds(r, s, p, q) + taus, keys


def normalized_linking(pat: Pattern) -> tuple[Pattern, Fraction, bool]:
    """Mirror the pattern if needed so that its axis self-linking is negative."""
    if pat.winding != 0:
        raise NonzeroWinding(f"pattern {pat.name!r} has winding number {pat.winding}")
    l = axis_self_linking(pat)
    if l == 0:
        raise ZeroLinking(f"pattern {pat.name!r} has l = 0; the instanton criterion does not apply")
    if l > 0:
        mirrored = pat.mirror()
        return mirrored, axis_self_linking(mirrored), True
    return pat, l, False


def generate_family(
    pat: Pattern, N: int, oracle: TauOracle, *, p: int | None = None, q: int | None = None
) -> RankCertificate:
    """Greedily choose N torus knots certified independent by the instanton criterion.

    At step i the lexicographically smallest admissible (r, s) is taken.  Row
    r = 2 always contains admissible pairs because rho(2, s) decays like
    1/s^2 while every threshold other than 1/s is fixed, so the search
    never needs to leave it.
    """
    if N < 0:
        raise ValueError("family size must be non-negative")
    _, l, mirrored = normalized_linking(pat)
    if p is None and q is None:
        p, q = select_pq(l)
    elif p is None or q is None:
        raise ValueError("give both p and q or neither")
    problem = _check_pq(l, p, q)
    if problem:
        raise DomainError(problem)
    for key in _required_tau_keys(N):
        oracle[key]

    chosen: list[CertificateEntry] = []
    picked = set()
    for i in range(1, N + 1):
        r = 2
        for s in count(2):
            if gcd(r, s) != 1 or (r, s) in picked or p * r * s <= q:
                continue
            thresholds, keys = _thresholds(r, s, p, q, i, oracle)
            value = rho(r, s, p, q)
            if all(value < v for _, v in thresholds):
                break
        picked.add((r, s))
        chosen.append(CertificateEntry(r, s, value, tuple(thresholds), tuple(keys)))
    return RankCertificate(
        pattern=pat.name,
        seifert_matrix=tuple(tuple(row) for row in pat.seifert.V),
        axis_linking=pat.axis_linking,
        l=l,
        mirror_used=mirrored,
        p=p,
        q=q,
        entries=tuple(chosen),
    )


@dataclass(frozen=True)
class Verification:
    ok: bool
    failure: str | None = None

    def __bool__(self):
        return self.ok


def verify_certificate(cert: RankCertificate, oracle: TauOracle) -> Verification:
    """Re-derive every quantity in the certificate and check all inequalities exactly."""

    def fail(msg):
        return Verification(False, msg)

    try:
        seifert = SeifertForm(IntMatrix(cert.seifert_matrix, cols=len(cert.seifert_matrix)))
        _, l, mirrored = normalized_linking(Pattern(seifert, 0, cert.axis_linking))
    except Exception as exc:  # malformed embedded pattern or l = 0
        return fail(f"embedded pattern rejected: {exc}")
    if mirrored != cert.mirror_used:
        return fail(f"mirror flag should be {mirrored}")
    if l != cert.l:
        return fail(f"l recomputes to {l}, certificate says {cert.l}")
    problem = _check_pq(l, cert.p, cert.q)
    if problem:
        return fail(problem)
    p, q = cert.p, cert.q
    seen = set()
    for i, e in enumerate(cert.entries, start=1):
        tag = f"entry {i} (r, s) = ({e.r}, {e.s})"
        if e.r < 2 or e.s < 2 or gcd(e.r, e.s) != 1:
            return fail(f"{tag}: not a coprime pair with r, s >= 2")
        if (e.r, e.s) in seen or (e.s, e.r) in seen:
            return fail(f"{tag}: repeated torus knot")
        seen.add((e.r, e.s))
        if p * e.r * e.s <= q:
            return fail(f"{tag}: p r s <= q")
        if e.rho != rho(e.r, e.s, p, q):
            return fail(f"{tag}: rho recomputes to {rho(e.r, e.s, p, q)}, certificate says {e.rho}")
        expected_keys = _required_tau_keys(i)
        if list(e.tau_keys_consumed) != expected_keys:
            return fail(f"{tag}: tau keys {list(e.tau_keys_consumed)} but {expected_keys} are required")
        try:
            expected, _ = _thresholds(e.r, e.s, p, q, i, oracle)
        except MissingTau as exc:
            return fail(f"{tag}: {exc}")
        if list(e.thresholds) != expected:
            return fail(f"{tag}: thresholds do not match the recomputed values")
        for name, value in e.thresholds:
            if not e.rho < value:
                return fail(f"{tag}: rho = {e.rho} is not below {name} = {value}")
    return Verification(True)


@dataclass(frozen=True)
class Verdict:
    infinite_rank: bool
    route: str | None
    l: Fraction | None = None
    mirror_used: bool = False
    certificate: RankCertificate | None = None

    def summary(self) -> str:
        if self.route == "signature_jumps":
            return "infinite rank via signature jumps"
        if self.route == "instanton":
            mirror = "yes" if self.mirror_used else "no"
            return f"infinite rank via instanton criterion: l = {self.l}, mirror used: {mirror}"
        return f"inconclusive: l = {self.l}"


def verdict(pat: Pattern, oracle: TauOracle | None = None, family: int = 1) -> Verdict:
    """Decide which criterion certifies infinite rank; never claims finite rank."""
    if pat.winding != 0:
        return Verdict(True, "signature_jumps")
    l = axis_self_linking(pat)
    if l == 0:
        return Verdict(False, None, l)
    cert = generate_family(pat, family, oracle) if oracle is not None else None
    return Verdict(True, "instanton", l, l > 0, cert)
