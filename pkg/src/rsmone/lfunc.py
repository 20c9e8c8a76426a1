"""Finite-part L-function machinery: local Euler-factor expansion into
prime-power Dirichlet coefficients, multiplicative assembly of global
coefficients, and evaluation of the Dirichlet series where it is known to
converge absolutely.

The coefficient of p^{-ks} in prod_j (1 - alpha_j p^{-s})^{-1} is the
complete homogeneous symmetric polynomial h_k(alpha).  Two independent
expansions are provided (elementary-symmetric recurrence and Newton power
sums) and cross-checked in the test suite; neither requires root finding.

Coefficients are stored as complex throughout, even when provably real;
reality is asserted in tests, never assumed in code paths.  Streams are
immutable once built and evaluation is pure, so everything here is safe
for concurrent readers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import divisor_bound_constant, sieve_primes
from .errors import ConvergenceDomainError, MissingLocalDataError
from .repspec import PlaceNorm, RankinSelbergPair, RepresentationSpec

__all__ = [
    "CoefficientStream",
    "hk_from_elementary",
    "hk_from_power_sums",
    "standard_prime_power_coeffs",
    "rs_prime_power_coeffs",
    "standard_coeffs",
    "rs_coeffs",
    "dirichlet_partial",
]


def hk_from_elementary(alphas, count: int) -> np.ndarray:
    """h_0..h_count of the multiset, via the elementary-symmetric recurrence.

    Builds e_i incrementally and uses sum_{i=0..k} (-1)^i e_i h_{k-i} = 0,
    i.e. the direct power-series reciprocal of prod (1 - alpha_j x).
    """
    alphas = [complex(a) for a in alphas]
    m = len(alphas)
    e = np.zeros(m + 1, dtype=complex)
    e[0] = 1.0
    for a in alphas:
        e[1:] = e[1:] + a * e[:-1].copy()
    h = np.zeros(count + 1, dtype=complex)
    h[0] = 1.0
    for k in range(1, count + 1):
        acc = 0.0 + 0.0j
        for i in range(1, min(k, m) + 1):
            acc += (-1) ** (i + 1) * e[i] * h[k - i]
        h[k] = acc
    return h


def hk_from_power_sums(alphas, count: int) -> np.ndarray:
    """h_0..h_count via Newton's identity k h_k = sum_{i<=k} p_i h_{k-i}."""
    alphas = np.asarray([complex(a) for a in alphas])
    h = np.zeros(count + 1, dtype=complex)
    h[0] = 1.0
    if count == 0:
        return h
    powers = np.array([np.sum(alphas**i) for i in range(count + 1)])
    for k in range(1, count + 1):
        h[k] = sum(powers[i] * h[k - i] for i in range(1, k + 1)) / k
    return h


def standard_prime_power_coeffs(
    spec: RepresentationSpec, p: "PlaceNorm | int", count: int
) -> np.ndarray:
    """Coefficients of 1, p^{-s}, ..., p^{-count*s} of the local factor of spec."""
    from .repspec import satake_at

    return hk_from_elementary(satake_at(spec, p), count)


def rs_prime_power_coeffs(
    pair: RankinSelbergPair, p: "PlaceNorm | int", count: int
) -> np.ndarray:
    """Local Rankin-Selberg coefficients at p: h_k over the m*m' products
    alpha_j(left) * conj(alpha_j'(right))."""
    return hk_from_elementary(pair.local_products(p), count)


@dataclass(frozen=True)
class CoefficientStream:
    """Dirichlet coefficients a(1..N) of a finite-part L-function.

    ``values`` has length N+1 with index 0 unused; a(1) = 1 always, and
    a(uv) = a(u) a(v) for coprime u, v by construction.
    """

    source: "RepresentationSpec | RankinSelbergPair"
    values: np.ndarray
    N: int

    def __post_init__(self):
        self.values.setflags(write=False)

    def coefficient(self, n: int) -> complex:
        if not 1 <= n <= self.N:
            raise IndexError(f"coefficient index {n} outside 1..{self.N}")
        return complex(self.values[n])


class _LocalCoefficientSource:
    """Adapter giving, per spec or pair, the local expansion at a place norm."""

    def __init__(self, source):
        self.source = source
        if isinstance(source, RankinSelbergPair):
            self.specs = (source.left, source.right)
            self.l = source.left.l
        else:
            self.specs = (source,)
            self.l = source.l

    def available_norms(self, limit: int) -> list[int]:
        norm_sets = [set(s.place_norms(limit)) for s in self.specs]
        union = set().union(*norm_sets)
        for n in sorted(union):
            for s, have in zip(self.specs, norm_sets):
                if n not in have:
                    raise MissingLocalDataError(
                        f"spec '{s.name}' is missing Satake data at place norm {n} "
                        "needed to form the pair",
                        norm=n,
                    )
        return sorted(union)

    def local_coeffs(self, v: PlaceNorm, count: int) -> np.ndarray:
        if isinstance(self.source, RankinSelbergPair):
            return rs_prime_power_coeffs(self.source, v, count)
        return standard_prime_power_coeffs(self.source, v, count)


def _series_by_prime(source, N: int) -> dict[int, np.ndarray]:
    """Combined coefficient series in p^{-s} per underlying prime p <= N.

    Places of norm p^f contribute at exponents f*k; distinct places above
    the same prime multiply.  Over the rationals (l = 1) every prime must
    carry data; over larger fields a prime with no listed place simply
    contributes no coefficients (its local factor in n is trivial).
    """
    src = _LocalCoefficientSource(source)
    norms = src.available_norms(N)
    by_prime: dict[int, list[PlaceNorm]] = {}
    for n in norms:
        place = PlaceNorm.from_value(n)
        by_prime.setdefault(place.prime, []).append(place)

    if src.l == 1:
        for p in sieve_primes(N):
            if p not in by_prime:
                name = " x ".join(s.name for s in src.specs)
                raise MissingLocalDataError(
                    f"no Satake data at prime {p} for {name}", norm=p
                )

    series: dict[int, np.ndarray] = {}
    for p, places in by_prime.items():
        kmax = int(math.log(N) / math.log(p) + 1e-9)
        combined = np.zeros(kmax + 1, dtype=complex)
        combined[0] = 1.0
        for place in places:
            f = place.exponent
            local = src.local_coeffs(place, kmax // f)
            widened = np.zeros(kmax + 1, dtype=complex)
            widened[:: f][: len(local)] = local
            combined = np.convolve(combined, widened)[: kmax + 1]
        series[p] = combined
    return series


def _assemble(source, N: int) -> CoefficientStream:
    if N < 1:
        raise ValueError("coefficient horizon N must be >= 1")
    series = _series_by_prime(source, N)

    # Smallest-prime-factor sieve, then one multiplicative pass.
    spf = np.zeros(N + 1, dtype=np.int64)
    for p in sieve_primes(N):
        spf[p::p][spf[p::p] == 0] = p
    values = np.zeros(N + 1, dtype=complex)
    values[1] = 1.0
    for n in range(2, N + 1):
        p = int(spf[n])
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        local = series.get(p)
        values[n] = (local[k] if local is not None and k < len(local) else 0.0) * values[m]
    return CoefficientStream(source=source, values=values, N=N)


def rs_coeffs(pair: RankinSelbergPair, N: int) -> CoefficientStream:
    """Global Rankin-Selberg coefficients a(1..N), assembled multiplicatively."""
    return _assemble(pair, N)


def standard_coeffs(spec: RepresentationSpec, N: int) -> CoefficientStream:
    """Global coefficients a(1..N) of the standard finite-part L-function."""
    return _assemble(spec, N)


def _tail_parameters(source) -> tuple[int, float]:
    """(r, theta) such that |a(n)| <= d_r(n) * n^theta from the trivial bound
    |alpha| <= sqrt(p) on each side."""
    if isinstance(source, RankinSelbergPair):
        return source.left.m * source.right.m, 1.0
    return source.m, 0.5


def dirichlet_partial(
    stream: CoefficientStream, s: complex, N: int | None = None
) -> tuple[complex, float]:
    """Partial sum sum_{n<=N} a(n) n^{-s} plus a rigorous tail majorant.

    Evaluation is refused for Re s <= 1 (outside guaranteed absolute
    convergence).  The majorant uses |a(n)| <= d_r(n) n^theta with the
    explicit bound d_r(n) <= C n^{1/4}; it is finite only for
    Re s > theta + 5/4 and reported as +inf below that, which for
    Rankin-Selberg streams means the trivial-bound tail certificate only
    exists for Re s > 9/4 even though the series itself converges earlier.
    """
    s = complex(s)
    if s.real <= 1.0:
        raise ConvergenceDomainError(
            f"Dirichlet evaluation restricted to Re s > 1, got Re s = {s.real}"
        )
    if N is None:
        N = stream.N
    if not 1 <= N <= stream.N:
        raise ValueError(f"N must lie in 1..{stream.N}")
    n = np.arange(1, N + 1, dtype=float)
    terms = stream.values[1 : N + 1] * np.exp(-s * np.log(n))
    value = complex(np.sum(terms))

    r, theta = _tail_parameters(stream.source)
    eps = 0.25
    exponent = theta + eps - s.real
    if exponent < -1.0:
        c = divisor_bound_constant(r, eps)
        tail = c * N ** (exponent + 1.0) / (-(exponent + 1.0))
    else:
        tail = math.inf
    return value, float(tail)
