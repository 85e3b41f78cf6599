"""Pure-Python implementations of the numeric hot loops.

These mirror ``_ckernels.pyx`` function for function; :mod:`opherm.kernels`
picks the compiled module when it is importable and falls back to this one.
"""

import math

import numpy as np

_PI_M4 = math.pi ** -0.25


def wick_product(p1, q1, r1, s1, p2, q2, r2, s2):
    """Normal-ordered product of two normal monomials.

    ``(ad^p1 a^q1 bd^r1 b^s1) * (ad^p2 a^q2 bd^r2 b^s2)`` expanded with
    ``a^q ad^p = sum_k k! C(q,k) C(p,k) ad^(p-k) a^(q-k)`` in each mode.

    Returns
    -------
    list of tuple
        ``(p, q, r, s, multiplier)`` with integer multipliers.
    """
    mode_a = []
    mult = 1
    for k in range(min(q1, p2) + 1):
        if k:
            mult = mult * (q1 - k + 1) * (p2 - k + 1) // k
        mode_a.append((p1 + p2 - k, q1 + q2 - k, mult))
    mode_b = []
    mult = 1
    for k in range(min(s1, r2) + 1):
        if k:
            mult = mult * (s1 - k + 1) * (r2 - k + 1) // k
        mode_b.append((r1 + r2 - k, s1 + s2 - k, mult))
    return [(p, q, r, s, ma * mb) for p, q, ma in mode_a for r, s, mb in mode_b]


def hermite_values(n, xs):
    """Physicists' ``H_n`` at an array of points by the three-term recurrence."""
    x = np.asarray(xs, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


def wavefunction_values(n, xs):
    """Oscillator eigenfunctions ``psi_n`` via the orthonormal recurrence."""
    x = np.asarray(xs, dtype=float)
    psi_prev = np.zeros_like(x)
    psi = _PI_M4 * np.exp(-0.5 * x * x)
    for k in range(n):
        psi_prev, psi = psi, math.sqrt(2.0 / (k + 1)) * x * psi - math.sqrt(k / (k + 1)) * psi_prev
    return psi


def _orthonormal(k, x):
    """Orthonormal Hermite ``p_k`` and ``p_{k-1}`` at ``x`` (no Gaussian factor)."""
    p1 = np.full_like(x, _PI_M4)
    p2 = np.zeros_like(x)
    for j in range(1, k + 1):
        p3 = p2
        p2 = p1
        p1 = x * math.sqrt(2.0 / j) * p2 - math.sqrt((j - 1) / j) * p3
    return p1, p2


def gauss_hermite(n, tol=1e-15, max_iter=100):
    """Nodes and weights of the ``n``-point Gauss-Hermite rule.

    Roots of ``H_k`` are found for ``k = 1..n`` in turn; the roots of
    ``H_{k-1}`` interlace those of ``H_k`` and serve as brackets for a
    safeguarded Newton iteration. Weights sum to ``sqrt(pi)``.
    """
    if n < 1:
        raise ValueError("need at least one node")
    roots = np.zeros(1)
    for k in range(2, n + 1):
        outer = math.sqrt(2.0 * k + 1.0)
        edges = np.concatenate(([-outer], roots, [outer]))
        lo = edges[:-1].copy()
        hi = edges[1:].copy()
        x = 0.5 * (lo + hi)
        f_lo, _ = _orthonormal(k, lo)
        for _ in range(max_iter):
            f, f_prev = _orthonormal(k, x)
            df = math.sqrt(2.0 * k) * f_prev
            same = np.sign(f) == np.sign(f_lo)
            lo = np.where(same, x, lo)
            f_lo = np.where(same, f, f_lo)
            hi = np.where(same, hi, x)
            with np.errstate(divide="ignore", invalid="ignore"):
                step = x - f / df
            bad = ~np.isfinite(step) | (step < lo) | (step > hi)
            new = np.where(bad, 0.5 * (lo + hi), step)
            done = np.abs(new - x) <= tol * np.maximum(1.0, np.abs(x))
            x = new
            if done.all():
                break
        roots = x
    _, f_prev = _orthonormal(n, roots)
    weights = 2.0 / (2.0 * n * f_prev * f_prev)
    return roots.copy(), weights
