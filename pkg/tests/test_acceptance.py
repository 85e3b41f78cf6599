"""Acceptance gate: one test per criterion, each reporting PASS/FAIL."""

import json
import math
import random
import time

import jsonschema
import numpy as np
import pytest

from oracles import _normal_order_word, hermite_from_generating_function, pairwise_normal_product
from opherm.boson import (
    OperatorExpr,
    apply_to_vacuum,
    hermite_of_operator,
    make_linear_form,
    normal_order_multiply,
    normal_symbol_power,
)
from opherm.cli import load_report_schema, main
from opherm.identities import IDENTITIES, verify_identity
from opherm.integrals import (
    CLOSED_FORM_KINDS,
    closed_form_rhs,
    gauss_hermite_rule,
    integral_lhs,
    quadrature_check,
    random_exact_point,
    random_float_point,
)
from opherm.polynomials import wavefunction_eval
from opherm.scalars import I, ONE, SQRT2, as_scalar

pytestmark = pytest.mark.acceptance


def report(number, ok, detail):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.mark.criterion(1, "full exact suite passes with 0 failures in < 60 s")
def test_c1_full_exact_suite(capsys):
    start = time.perf_counter()
    code = main(["suite", "--ids", "all", "--mode", "exact", "--max-n", "12", "--max-two-index", "8", "--json"])
    elapsed = time.perf_counter() - start
    doc = json.loads(capsys.readouterr().out)
    covered = {r["id"] for r in doc["reports"]}
    ok = code == 0 and doc["summary"]["fail"] == 0 and elapsed < 60 and covered == set(IDENTITIES)
    report(1, ok, f"{doc['summary']} in {elapsed:.1f} s over {len(covered)} identities")
    assert covered == set(IDENTITIES)
    assert doc["summary"]["fail"] == 0
    assert code == 0
    assert elapsed < 60


def _oracle_hermite_X(n):
    """H_n(X) via generating-function coefficients and pairwise rewriting of (a + ad)^k."""
    powers = [{(0, 0): 1}]
    for _ in range(n):
        nxt = {}
        for (p, q), c in powers[-1].items():
            nxt[(p, q + 1)] = nxt.get((p, q + 1), 0) + c  # right factor a
            for key, m in _normal_order_word(("ad",) * p + ("a",) * q + ("ad",)).items():
                nxt[key] = nxt.get(key, 0) + c * m
        powers.append(nxt)
    half_sqrt2 = SQRT2 * as_scalar("1/2")
    out = OperatorExpr()
    for k, hk in enumerate(hermite_from_generating_function(n)):
        if not hk:
            continue
        scale = as_scalar(hk) * half_sqrt2 ** k  # X^k = (sqrt2/2)^k (a + ad)^k
        for (p, q), c in powers[k].items():
            out = out + OperatorExpr.monomial(p, q, 0, 0, scale * c)
    return out


@pytest.mark.criterion(2, "H_2(X) = 2ad^2 + 4ad*a + 2a^2 = 4:X^2:, and H_n(X) = 2^n:X^n: for n <= 12")
def test_c2_hermite_of_X():
    X = make_linear_form("X")
    h2 = hermite_of_operator(2, X)
    ok = h2.to_text() == "2*ad^2 + 4*ad*a + 2*a^2"
    for n in range(0, 13):
        h = hermite_of_operator(n, X)
        ok &= h == normal_symbol_power(X.to_expr(), n).scale(as_scalar(2 ** n))
        ok &= h == _oracle_hermite_X(n)
    report(2, ok, "term maps compared exactly for n = 0..12")
    assert h2.to_text() == "2*ad^2 + 4*ad*a + 2*a^2"
    assert h2 == normal_symbol_power(X.to_expr(), 2).scale(as_scalar(4))
    assert ok


@pytest.mark.criterion(3, "f = 3/5: H_n(fX) != 2^n:(fX)^n: for 2 <= n <= 12, scaled Hermite form holds")
def test_c3_scaled_negative_control():
    f = as_scalar("3/5")
    X = make_linear_form("X")
    results = []
    for n in range(2, 13):
        lhs = hermite_of_operator(n, X * f)
        naive = normal_symbol_power((X * f).to_expr(), n).scale(as_scalar(2 ** n))
        r = verify_identity("SCALED-X", {"n": n, "f": f})
        results.append((lhs != naive, r.equal, r.diagnostics["naive_equal"] is False))
    ok = all(all(t) for t in results)
    report(3, ok, "naive form rejected and scaled form exact at every n")
    assert ok, results


@pytest.mark.criterion(4, "closed forms equal the moment engine exactly at 20 random points per kind")
def test_c4_exact_integrals():
    bad = []
    for kind in CLOSED_FORM_KINDS:
        rng = random.Random(f"acceptance-4-{kind}")
        for _ in range(20):
            cf = random_exact_point(kind, rng, max_n=10)
            if closed_form_rhs(cf) != integral_lhs(cf):
                bad.append(cf)
    report(4, not bad, f"{20 * len(CLOSED_FORM_KINDS)} points, {len(bad)} mismatches")
    assert not bad


@pytest.mark.criterion(5, "quadrature (N=64) matches closed forms at 50 float points per kind, rel 1e-9, < 10 s")
def test_c5_quadrature_oracle():
    start = time.perf_counter()
    worst = 0.0
    bad = []
    for kind in CLOSED_FORM_KINDS:
        rng = random.Random(f"acceptance-5-{kind}")
        for _ in range(50):
            rep = quadrature_check(random_float_point(kind, rng, max_n=10), tol=1e-9, nodes=64)
            if rep.criterion == "relative":
                worst = max(worst, rep.rel_error)
            if not rep.passed:
                bad.append(rep)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    report(5, ok, f"worst relative error {worst:.2e}, {len(bad)} failures, {elapsed:.2f} s")
    assert not bad
    assert elapsed < 10


@pytest.mark.criterion(6, "Wick closed form equals pairwise-rewrite oracle on 500 random pairs, exponents <= 10")
def test_c6_wick_oracle():
    rng = random.Random("acceptance-6")
    mismatches = 0
    for _ in range(500):
        m1 = tuple(rng.randint(0, 10) for _ in range(4))
        m2 = tuple(rng.randint(0, 10) for _ in range(4))
        got = normal_order_multiply(OperatorExpr.monomial(*m1), OperatorExpr.monomial(*m2))
        ref = {k: as_scalar(v) for k, v in pairwise_normal_product(m1, m2).items()}
        if {tuple(k): v for k, v in got.terms.items()} != ref:
            mismatches += 1
    report(6, mismatches == 0, f"500 pairs, {mismatches} mismatches")
    assert mismatches == 0


@pytest.mark.criterion(7, "vacuum actions of H_n(X), H_n(P) exact for n <= 12; amplitudes to 1e-12")
def test_c7_vacuum():
    X, P = make_linear_form("X"), make_linear_form("P")
    ok = True
    worst = 0.0
    for n in range(0, 13):
        kx = apply_to_vacuum(hermite_of_operator(n, X))
        kp = apply_to_vacuum(hermite_of_operator(n, P))
        ok &= kx.coeffs == {(n, 0): SQRT2 ** n}
        ok &= kp.coeffs == {(n, 0): I ** n * SQRT2 ** n if n else ONE}
        target = math.sqrt(math.factorial(n) * 2 ** n)
        for ket, phase in ((kx, 1), (kp, 1j ** n)):
            amp = complex(ket.amplitudes()[(n, 0)])
            worst = max(worst, abs(amp - phase * target) / target)
    ok &= worst <= 1e-12
    report(7, ok, f"exact kets match, worst amplitude error {worst:.1e}")
    assert ok


@pytest.mark.criterion(8, "<psi_m|psi_n> = delta_mn within 1e-8 by quadrature, m, n <= 8")
def test_c8_orthonormality():
    t, w = gauss_hermite_rule(64)
    # the rule integrates against exp(-t^2)/sqrt(pi); undo that weight
    weight = np.asarray(w) * math.sqrt(math.pi) * np.exp(np.asarray(t) ** 2)
    psi = [wavefunction_eval(n, np.asarray(t)) for n in range(9)]
    worst = 0.0
    for m in range(9):
        for n in range(9):
            overlap = float(np.dot(weight, psi[m] * psi[n]))
            worst = max(worst, abs(overlap - (1.0 if m == n else 0.0)))
    report(8, worst <= 1e-8, f"worst deviation {worst:.1e}")
    assert worst <= 1e-8


@pytest.mark.criterion(9, "suite --json validates; exit codes 0/1/2/3 for pass/falsified/syntax/over-limit")
def test_c9_cli_contract(capsys):
    schema = load_report_schema()
    codes = {}
    codes["pass"] = main(["suite", "--ids", "OP-HERMITE-X,INT-8", "--max-n", "6", "--json"])
    doc_pass = json.loads(capsys.readouterr().out)
    codes["falsified"] = main(["suite", "--ids", "OP-HERMITE-X", "--max-n", "4", "--perturb", "1/3", "--json"])
    doc_fail = json.loads(capsys.readouterr().out)
    codes["syntax"] = main(["normal-order", "H(2, X"])
    codes["limit"] = main(["hermite", "coeffs", "1000"])
    capsys.readouterr()
    for doc in (doc_pass, doc_fail):
        jsonschema.validate(doc, schema)
    ok = codes == {"pass": 0, "falsified": 1, "syntax": 2, "limit": 3}
    report(9, ok, f"exit codes {codes}")
    assert ok
