import json
import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from fuzex.errors import ParameterError
from fuzex.params import (Params, check, correctness_bound, correctness_terms, key_length_bound,
                          mac_length, max_key_length, minimal_mac_length, output_length,
                          params_digest, report, robustness_bound, solve_ell, solve_t, validate)
from oracles import brute_force_ell, miss_term


def test_output_length():
    assert output_length(1, 8, 12) == 20
    assert output_length(2, 8, 12, 16) == 52


def test_mac_length_rounds_up_to_3_mod_4():
    assert minimal_mac_length(8, 48, 16) == 28
    assert mac_length(8, 48, 16) == 31
    for ell in range(1, 20):
        for nu in range(1, 60):
            L = mac_length(ell, nu, 8)
            assert L % 4 == 3 and 0 <= L - minimal_mac_length(ell, nu, 8) <= 3


def test_worked_key_length_example():
    assert max_key_length(180, 256, Fraction(1, 2**32), 64) == 36
    assert max_key_length(180, 256, Fraction(1, 2**32), 64, lam=128, construction=2) == 0


def test_key_length_degenerate_cancellation():
    # sigma = 2*ell makes the log term vanish
    assert max_key_length(50, 3, 6, 0) == 52


@given(st.floats(10, 4000), st.integers(1, 1000), st.integers(1, 120), st.integers(0, 128),
       st.sampled_from([3, 8, 16, 128]))
def test_construction2_tax(alpha, ell, k, t, lam):
    sigma = Fraction(1, 2**k)
    c1 = key_length_bound(alpha, ell, sigma, t, 0, 1)
    c2 = key_length_bound(alpha, ell, sigma, t, lam, 2)
    assert abs((c1 - c2) - (2 * lam + 2)) < mpmath.mpf(2) ** -200


def test_correctness_bound_direct_formula():
    p = Params.build(1, 1024, 64, 32, 32, 8, t_err=16)
    expected = mpmath.mpf(miss_term(1024, 64, 16, 32).numerator) / miss_term(1024, 64, 16, 32).denominator
    expected += mpmath.mpf(32) / 2**32
    assert correctness_bound(p) == pytest.approx(float(expected), rel=1e-14)


def test_collision_only_when_no_noise():
    p = Params.build(1, 100, 10, 7, 9, 4, t_err=0)
    assert correctness_bound(p) == pytest.approx(7 / 2**9, rel=1e-15)
    p2 = Params.build(2, 100, 10, 7, 9, 4, lam=8, t_err=0)
    assert correctness_bound(p2) == pytest.approx(7 / 2**9 * p2.L / 256, rel=1e-15)


def test_monotonicity():
    base = Params.build(1, 1024, 64, 10, 20, 8, t_err=16)
    terms = [correctness_terms(base.with_(ell=e)) for e in range(1, 40)]
    for a, b in zip(terms, terms[1:]):
        assert b.miss < a.miss and b.collision > a.collision
    bounds = [correctness_bound(base.with_(t_err=e)) for e in range(0, 900, 7)]
    assert all(b >= a for a, b in zip(bounds, bounds[1:]))


def test_correctness_rejects_large_noise():
    with pytest.raises(ParameterError):
        correctness_bound(Params.build(1, 100, 10, 4, 4, 4, t_err=90))


def test_solve_ell_closed_form_and_scan():
    n, m, t_err, t, target = 1024, 64, 16, 32, 1e-2
    q = (1 - t_err / (n - m)) ** m
    closed = math.ceil(math.log(target / 2) / math.log(1 - q))
    assert solve_ell(n, m, t_err, t, target) == closed == brute_force_ell(n, m, t_err, t, target)


def test_solve_ell_edge_cases():
    assert solve_ell(100, 10, 0, 10, 0.01) == 1
    assert solve_ell(100, 10, 5, 3, 0.01) is None


def test_solve_ell_minimality_random():
    r = random.Random(7)
    for _ in range(50):
        n = r.randint(64, 4096)
        m = r.randint(4, min(128, n // 4))
        t_err = r.randint(0, (n - m) // (2 * m))  # keeps ell within the scan range
        t = r.randint(4, 40)
        target = r.choice([0.3, 0.1, 0.05, 1e-2, 1e-3])
        assert solve_ell(n, m, t_err, t, target) == brute_force_ell(n, m, t_err, t, Fraction(target))


def test_solve_t():
    assert solve_t(13, 0.01) == 12  # 13 * 2^-12 <= 0.005 < 13 * 2^-11
    assert solve_t(8, 0.01, 2, 16, 31) == 0


def test_robustness_bound_value():
    p = Params.build(2, 24576, 128, 8, 8, 8, lam=16, sigma=2**-36, q_e=4, q_d=16)
    eps = 2**-36 / 32
    expected = 20 * 8 * eps + 16 * 2**-16 * 8 * 32
    assert robustness_bound(p) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(ParameterError):
        robustness_bound(Params.build(1, 100, 10, 2, 4, 4, sigma=0.1))


def _ok():
    return Params.build(1, 2048, 32, 4, 12, 8, t_err=8, alpha=32, sigma=2**-4, N=2016, eta=8,
                        eps_prime=0.5)


def test_validate_accepts_consistent_record():
    assert validate(_ok()) == []
    check(_ok())


def test_validate_names_source_budget():
    bad = _ok().with_(N=1024)
    (v,) = validate(bad)
    assert v.constraint == "source budget" and v.lhs == 1024 and v.rhs == 1024


def test_validate_mac_congruence_suggests_round_up():
    p = Params.build(2, 4096, 64, 4, 8, 8, lam=8, t_err=8)
    bad = p.with_(L=p.L + 2)
    assert bad.L % 4 == 1 and bad.L >= minimal_mac_length(4, p.nu, 8)
    names = {v.constraint: v for v in validate(bad)}
    assert names["MAC congruence"].suggestion["L"] == bad.L + 2


def test_validate_key_length_and_others():
    names = {v.constraint for v in validate(_ok().with_(xi=9, nu=21))}
    assert "key length" in names
    names = {v.constraint for v in validate(_ok().with_(t_err=5000))}
    assert "error tolerance" in names
    names = {v.constraint for v in validate(_ok().with_(nu=3))}
    assert "output length" in names
    p2 = Params.build(2, 4096, 64, 4, 8, 8, lam=8, N=1000, q_e=1, q_d=4)
    names = {v.constraint for v in validate(p2)}
    assert "source budget (reproduction)" in names
    with pytest.raises(ParameterError):
        check(p2)


def test_json_roundtrip_and_digest():
    p = _ok()
    assert Params.from_dict(json.loads(p.to_json())) == p
    assert p.digest == params_digest(2048, 32, 4, 20)
    assert p.with_(m=33).digest != p.digest
    with pytest.raises(ParameterError):
        Params.from_dict({**p.to_dict(), "bogus": 1})


def test_report_mentions_status():
    assert "status            ok" in report(_ok())
    assert "VIOLATED" in report(_ok().with_(N=10))
