"""Exact Ramanujan tau values from the weight-12 cusp form q*prod(1-q^n)^24.

The 24th power of the eta-type product is computed as ((eta^3)^2)^2)^2 using
Jacobi's sparse expansion prod(1-q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}.
Squarings are FFT convolutions carried out modulo several word-sized primes
and recombined by CRT, so every value is exact integer arithmetic end to end.
A much slower direct integer expansion lives in the test suite as the
independent oracle.
"""

from __future__ import annotations

import threading

import numpy as np
from scipy.signal import fftconvolve

from .arith import sieve_primes

# Seven primes just under 2**14.  Products of reduced values accumulate to at
# most len * m^2 ~ 8e12 < 2^53, so the float FFT is integer-exact after
# rounding, and the CRT modulus ~ 4.6e29 comfortably exceeds 2*max|tau(n)|
# for n up to ~3e4 (Deligne: |tau(n)| <= d(n) n^{11/2}).
_MODULI = [p for p in sieve_primes(1 << 14) if p > 16000][-7:]

_lock = threading.Lock()
_cache: list[int] = []


def _eta_cubed(length: int) -> np.ndarray:
    """Coefficients 0..length-1 of prod(1-q^n)^3 (Jacobi's identity)."""
    out = np.zeros(length, dtype=np.int64)
    k = 0
    while k * (k + 1) // 2 < length:
        out[k * (k + 1) // 2] = (2 * k + 1) * (-1 if k % 2 else 1)
        k += 1
    return out


def _square_mod(a: np.ndarray, length: int, mod: int) -> np.ndarray:
    raw = fftconvolve(a.astype(np.float64), a.astype(np.float64))[:length]
    rounded = np.rint(raw)
    # Guard the integer-exactness assumption behind the float FFT.
    drift = float(np.max(np.abs(raw - rounded))) if raw.size else 0.0
    if drift > 0.1:
        raise RuntimeError(f"FFT convolution drift {drift} too large for exact rounding")
    return rounded.astype(np.int64) % mod

def _eta24_mod(length: int, mod: int) -> np.ndarray:
    a = _eta_cubed(length) % mod
    for _ in range(3):  # eta^3 -> eta^6 -> eta^12 -> eta^24
        a = _square_mod(a, length, mod)
    return a


def ramanujan_tau(n_max: int) -> list[int]:
    """tau(1), ..., tau(n_max) as exact integers (cached, grow-on-demand)."""
    if n_max < 1:
        return []
    with _lock:
        if len(_cache) < n_max:
            residues = [_eta24_mod(n_max, m) for m in _MODULI]
            big_mod = 1
            for m in _MODULI:
                big_mod *= m
            basis = []
            for m in _MODULI:
                q = big_mod // m
                basis.append(q * pow(q, -1, m))
            values = []
            for i in range(n_max):
                x = sum(int(res[i]) * b for res, b in zip(residues, basis)) % big_mod
                if x > big_mod // 2:
                    x -= big_mod
                values.append(x)
            _cache.clear()
            _cache.extend(values)
        return _cache[:n_max]
