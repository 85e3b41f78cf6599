"""Both kernel backends agree with each other and with independent references."""

import importlib
import os
import random
import subprocess
import sys

import numpy as np
import pytest

from oracles import hermite_value_by_recurrence, pairwise_normal_product
from opherm import _pykernels, kernels

BACKENDS = [pytest.param(_pykernels, id="python")]
try:
    _ck = importlib.import_module("opherm._ckernels")
    BACKENDS.append(pytest.param(_ck, id="cython"))
except ImportError:  # extension not built
    _ck = None


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    if _ck is not None:
        assert kernels.BACKEND == "cython"


@pytest.mark.parametrize("impl", BACKENDS)
@pytest.mark.parametrize("n", [1, 2, 5, 20, 64, 100])
def test_gauss_hermite_against_numpy(impl, n):
    t, w = impl.gauss_hermite(n)
    tr, wr = np.polynomial.hermite.hermgauss(n)
    assert np.max(np.abs(np.sort(t) - tr)) < 1e-12 * max(1.0, np.max(np.abs(tr)))
    order = np.argsort(t)
    assert np.allclose(np.asarray(w)[order], wr, rtol=1e-10, atol=1e-300)
    assert abs(np.sum(w) - np.sqrt(np.pi)) < 1e-13


@pytest.mark.parametrize("impl", BACKENDS)
def test_gauss_hermite_exactness(impl):
    t, w = impl.gauss_hermite(16)
    t, w = np.asarray(t), np.asarray(w) / np.sqrt(np.pi)
    # int x^{2k} e^{-x^2}/sqrt(pi) = (2k-1)!!/2^k, exact up to degree 31
    for k in range(16):
        ref = np.prod(np.arange(1, 2 * k, 2, dtype=float)) / 2.0 ** k
        assert abs(np.dot(w, t ** (2 * k)) - ref) <= 1e-12 * max(ref, 1.0)


@pytest.mark.parametrize("impl", BACKENDS)
def test_hermite_values(impl):
    xs = np.linspace(-3, 3, 13)
    for n in (0, 1, 4, 11):
        got = impl.hermite_values(n, xs)
        ref = [hermite_value_by_recurrence(n, float(x)) for x in xs]
        assert np.allclose(got, ref, rtol=1e-13, atol=1e-12)


@pytest.mark.parametrize("impl", BACKENDS)
def test_wavefunction_values_normalised(impl):
    t, w = np.polynomial.hermite.hermgauss(60)
    for n in (0, 3, 9):
        psi = np.asarray(impl.wavefunction_values(n, t))
        assert abs(np.dot(w, psi ** 2 * np.exp(t ** 2)) - 1.0) < 1e-10


def test_backends_agree():
    if _ck is None:
        pytest.skip("extension not built")
    xs = np.linspace(-5, 5, 101)
    for n in (0, 7, 25):
        assert np.allclose(_ck.wavefunction_values(n, xs), _pykernels.wavefunction_values(n, xs), rtol=1e-13, atol=1e-300)
        assert np.allclose(_ck.hermite_values(n, xs), _pykernels.hermite_values(n, xs), rtol=1e-13)
    for n in (3, 64, 128):
        t1, w1 = _ck.gauss_hermite(n)
        t2, w2 = _pykernels.gauss_hermite(n)
        assert np.max(np.abs(np.asarray(t1) - np.asarray(t2))) < 1e-12
        assert np.allclose(w1, w2, rtol=1e-10, atol=1e-300)


@pytest.mark.parametrize("impl", BACKENDS)
def test_wick_product_against_pairwise_oracle(impl):
    rng = random.Random(7)
    for _ in range(60):
        m1 = tuple(rng.randint(0, 5) for _ in range(4))
        m2 = tuple(rng.randint(0, 5) for _ in range(4))
        got = {}
        for p, q, r, s, c in impl.wick_product(*m1, *m2):
            got[(p, q, r, s)] = got.get((p, q, r, s), 0) + c
        assert got == pairwise_normal_product(m1, m2)


def test_pure_python_fallback_runs_suite():
    code = (
        "from opherm import kernels\n"
        "assert kernels.BACKEND == 'python', kernels.BACKEND\n"
        "from opherm.identities import run_suite\n"
        "assert run_suite('all', max_n=6, max_two_index=4).passed\n"
        "assert run_suite('all', 'numeric', max_n=6, max_two_index=4).passed\n"
    )
    env = dict(os.environ, OPHERM_PURE_PYTHON="1")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
