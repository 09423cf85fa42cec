"""Reference computations kept independent of the package code paths."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.integrate import simpson


def blade_sign_bruteforce(a, b):
    """Bubble-sort the concatenated index word, counting swaps, then contract pairs."""
    word = list(a) + list(b)
    sign = 1
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            if word[k] > word[k + 1]:
                word[k], word[k + 1] = word[k + 1], word[k]
                sign = -sign
                changed = True
    out = []
    for x in word:
        if out and out[-1] == x:
            out.pop()  # s_k s_k = 1
        else:
            out.append(x)
    return tuple(out), sign


def waveform(phasors: dict, omega: float, t):
    t = np.asarray(t, dtype=float)
    return sum(math.sqrt(2) * abs(x) * np.sin(n * omega * t + np.angle(x)) for n, x in phasors.items()) \
        if phasors else np.zeros_like(t)


def period_mean(values_fn, T, samples=4096):
    """Composite Simpson average of a T-periodic function."""
    t = np.linspace(0.0, T, samples + 1)
    return simpson(values_fn(t), x=t) / T


def fourier_phasors(fn, omega, orders, samples=4096):
    """Project a waveform onto sqrt(2) sin/cos of each order; returns rms phasors."""
    T = 2 * math.pi / omega
    out = {}
    for n in orders:
        a = period_mean(lambda t: fn(t) * math.sqrt(2) * np.sin(n * omega * t), T, samples)
        b = period_mean(lambda t: fn(t) * math.sqrt(2) * np.cos(n * omega * t), T, samples)
        # sqrt2 X sin(nwt + th) = sqrt2 X (cos th sin + sin th cos)
        out[n] = complex(a, b)
    return out


def golden_section_min(f, lo, hi, tol=1e-14, iters=400):
    g = ((lo * 0 + 5) ** 0.5 - 1) / 2  # stays in lo's number type (float or mpf)
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if abs(b - a) <= tol * max(abs(a), abs(b), 1e-30):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    return (a + b) / 2


def solve_exact(a, b):
    """Gauss-Jordan elimination in exact rational arithmetic."""
    n = len(b)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [float(m[r][n] / m[r][r]) for r in range(n)]
