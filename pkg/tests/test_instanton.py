import dataclasses
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satrank.errors import DomainError, MissingTau, NonNegativeL, ZeroLinking
from satrank.exact_arith import IntMatrix
from satrank.instanton import (
    RankCertificate,
    TauOracle,
    criterion_holds,
    generate_family,
    rho,
    select_pq,
    sigma_keys,
    verdict,
    verify_certificate,
)
from satrank.seifert_core import Pattern, SeifertForm, genus1_pattern, twist_pattern

WHITEHEAD = twist_pattern(0)
FIGURE = genus1_pattern(1, 2, 2, -1, 1)
ITERATED = Pattern(WHITEHEAD.seifert, 0, (0, 0), "iterated double")


def desk_oracle(n: int = 5) -> TauOracle:
    bounds = {"Y": Fraction(1, 2)}
    for i in range(1, n):
        for key in sigma_keys(i):
            bounds[key] = Fraction(1, 30 * 2**i)
    return TauOracle(bounds)


@st.composite
def oracles(draw, n):
    bounds = {"Y": draw(st.fractions(min_value=Fraction(1, 10**4), max_value=1, max_denominator=10**4))}
    for i in range(1, n):
        for key in sigma_keys(i):
            bounds[key] = draw(st.fractions(min_value=Fraction(1, 10**5), max_value=1, max_denominator=10**5))
    return TauOracle({k: v for k, v in bounds.items() if v > 0})


def tampered_rationals(cert: RankCertificate):
    """Every certificate obtained by nudging exactly one rational (or p, q) by a small amount."""
    bump = Fraction(1, 10**6)
    yield dataclasses.replace(cert, l=cert.l + bump)
    yield dataclasses.replace(cert, p=cert.p + 2)
    yield dataclasses.replace(cert, q=cert.q + 2)
    for i, e in enumerate(cert.entries):
        variants = [dataclasses.replace(e, rho=e.rho + bump), dataclasses.replace(e, rho=e.rho - bump)]
        for j, (name, value) in enumerate(e.thresholds):
            th = list(e.thresholds)
            th[j] = (name, value - bump)
            variants.append(dataclasses.replace(e, thresholds=tuple(th)))
        for v in variants:
            entries = list(cert.entries)
            entries[i] = v
            yield dataclasses.replace(cert, entries=tuple(entries))


class TestArithmetic:
    def test_rho(self):
        assert rho(2, 3, 1, 1) == Fraction(1, 30)
        assert rho(3, 5, 1, 1) == Fraction(1, 210)
        with pytest.raises(DomainError):
            rho(2, 3, 1, 7)

    def test_criterion(self):
        assert criterion_holds(2, 3, 1, 1, [Fraction(1, 2)]) == (True, Fraction(1, 6))
        assert criterion_holds(2, 3, 1, 1, [Fraction(1, 30)])[0] is False
        assert criterion_holds(2, 3, 1, 1, [])[0] is True

    def test_select_pq(self):
        assert select_pq(Fraction(-2)) == (1, 1)
        assert select_pq(Fraction(-2, 9)) == (1, 5)
        assert select_pq(Fraction(-1)) == (1, 3)
        with pytest.raises(NonNegativeL):
            select_pq(Fraction(0))

    @settings(max_examples=100, deadline=None)
    @given(st.fractions(max_value=Fraction(-1, 500), min_value=-50, max_denominator=500))
    def test_select_pq_admissible(self, l):
        p, q = select_pq(l)
        assert p % 2 == q % 2 == 1
        assert l < -Fraction(p, q) < 0
        assert q == 1 or Fraction(1, q - 2) >= -l


class TestOracle:
    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            TauOracle({"Y": 0})
        with pytest.raises(ValueError):
            TauOracle({"Y": Fraction(3, 2)})

    def test_missing_key_named(self):
        with pytest.raises(MissingTau) as info:
            TauOracle()["+Sigma_3"]
        assert info.value.key == "+Sigma_3"
        assert "+Sigma_3" in str(info.value)

    def test_json_round_trip(self):
        o = desk_oracle()
        assert TauOracle.from_json(o.to_json()).to_json() == o.to_json()


class TestFamily:
    def test_first_entry(self):
        cert = generate_family(WHITEHEAD, 1, TauOracle({"Y": Fraction(1, 2)}))
        (e,) = cert.entries
        assert (e.r, e.s, e.rho) == (2, 3, Fraction(1, 30))
        assert (cert.p, cert.q, cert.l, cert.mirror_used) == (1, 1, -2, False)

    def test_second_entry(self):
        oracle = TauOracle({"Y": Fraction(1, 2), "+Sigma_1": Fraction(1, 40), "-Sigma_1": Fraction(1, 40)})
        cert = generate_family(WHITEHEAD, 2, oracle)
        assert (cert.entries[1].r, cert.entries[1].s, cert.entries[1].rho) == (2, 5, Fraction(1, 90))

    def test_desk_family(self):
        cert = generate_family(WHITEHEAD, 5, desk_oracle())
        assert [(e.r, e.s) for e in cert.entries] == [(2, 3), (2, 5), (2, 7), (2, 9), (2, 13)]
        assert verify_certificate(cert, desk_oracle())

    def test_zero_linking(self):
        with pytest.raises(ZeroLinking):
            generate_family(ITERATED, 1, desk_oracle())

    def test_missing_tau_checked_up_front(self):
        with pytest.raises(MissingTau) as info:
            generate_family(WHITEHEAD, 3, TauOracle({"Y": Fraction(1, 2)}))
        assert info.value.key == "+Sigma_1"

    def test_explicit_pq(self):
        cert = generate_family(twist_pattern(2), 2, desk_oracle(), p=1, q=5)
        assert (cert.p, cert.q) == (1, 5)
        with pytest.raises(DomainError):
            generate_family(WHITEHEAD, 1, desk_oracle(), p=2, q=1)

    def test_mirror(self):
        cert = generate_family(FIGURE, 2, desk_oracle())
        assert cert.mirror_used and cert.l == -12
        assert verify_certificate(cert, desk_oracle())

    @settings(max_examples=50, deadline=None)
    @given(st.integers(-6, 6), st.integers(1, 6), st.data())
    def test_random_oracles_verify_and_rho_decreases(self, k, n, data):
        oracle = data.draw(oracles(n))
        cert = generate_family(twist_pattern(k), n, oracle)
        assert verify_certificate(cert, oracle)
        rhos = [e.rho for e in cert.entries]
        assert all(a > b for a, b in zip(rhos, rhos[1:]))

    def test_deterministic(self):
        a = generate_family(WHITEHEAD, 5, desk_oracle()).dumps()
        b = generate_family(WHITEHEAD, 5, desk_oracle()).dumps()
        assert a == b
        assert RankCertificate.from_json(json.loads(a)).dumps() == a


class TestVerify:
    def test_every_single_tamper_detected(self):
        oracle = desk_oracle()
        cert = generate_family(WHITEHEAD, 5, oracle)
        tampered = list(tampered_rationals(cert))
        assert len(tampered) > 20
        assert not any(verify_certificate(t, oracle) for t in tampered)

    def test_rho_equal_to_threshold_rejected(self):
        # the oracle and the recorded threshold agree, so only strictness can fail
        oracle = TauOracle({"Y": Fraction(1, 30)})
        cert = generate_family(WHITEHEAD, 1, TauOracle({"Y": Fraction(1, 2)}))
        (e,) = cert.entries
        th = tuple((n, Fraction(1, 30)) if n == "tau(Y)" else (n, v) for n, v in e.thresholds)
        cert = dataclasses.replace(cert, entries=(dataclasses.replace(e, thresholds=th),))
        result = verify_certificate(cert, oracle)
        assert not result and "not below tau(Y)" in result.failure

    def test_even_p_rejected(self):
        cert = dataclasses.replace(generate_family(WHITEHEAD, 1, desk_oracle()), p=2, q=1)
        assert not verify_certificate(cert, desk_oracle())

    def test_mirror_flag_checked(self):
        cert = generate_family(FIGURE, 1, desk_oracle())
        assert not verify_certificate(dataclasses.replace(cert, mirror_used=False), desk_oracle())

    def test_missing_tau_reported(self):
        cert = generate_family(WHITEHEAD, 2, desk_oracle())
        result = verify_certificate(cert, TauOracle({"Y": Fraction(1, 2)}))
        assert not result and "+Sigma_1" in result.failure

    def test_repeated_pair_rejected(self):
        cert = generate_family(WHITEHEAD, 2, desk_oracle())
        dup = dataclasses.replace(cert, entries=(cert.entries[0], cert.entries[0]))
        assert not verify_certificate(dup, desk_oracle())


class TestVerdict:
    @pytest.mark.parametrize("k", range(0, 8))
    def test_twist_patterns(self, k):
        v = verdict(twist_pattern(k))
        assert v.infinite_rank and v.route == "instanton"

    def test_iterated_double(self):
        v = verdict(ITERATED)
        assert not v.infinite_rank and v.summary() == "inconclusive: l = 0"

    def test_winding_three(self):
        pat = Pattern(SeifertForm(IntMatrix([[-1, 1], [0, -1]])), 3, (0, 0))
        v = verdict(pat)
        assert v.route == "signature_jumps" and v.summary() == "infinite rank via signature jumps"

    def test_figure_needs_mirror(self):
        v = verdict(FIGURE)
        assert v.mirror_used and v.summary() == "infinite rank via instanton criterion: l = 12, mirror used: yes"
