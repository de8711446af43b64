"""High-precision twins of the double-precision engine, used as oracles.

Same Euler-Maclaurin formula, same auto rule for the direct-sum length,
run in mpmath arbitrary precision with more Bernoulli corrections.  The
point of reusing the algorithm (rather than calling a library zeta) is
that any structural bug shows up as a double-vs-oracle mismatch at the
working-precision level, while pure rounding differences sit thirty
digits down.  chi_hp, by contrast, evaluates the defining product
directly: mpmath's unbounded exponent range makes the overflow dance of
the double path unnecessary, which gives an independent route to the
same function.
"""

from __future__ import annotations

import math

import mpmath as mp

from .errors import DomainError, PoleError, PrecisionError

_MAX_TERMS = 1 << 22


def _remainder_bound(s: mp.mpc, n_terms: int, q: int) -> mp.mpf:
    sigma = mp.re(s)
    if sigma + 2 * q + 1 <= 0:
        return mp.inf
    bound = abs(mp.bernoulli(2 * q + 2)) / mp.factorial(2 * q + 2)
    for i in range(2 * q + 1):
        bound *= abs(s + i)
    bound *= mp.power(n_terms, -(sigma + 2 * q + 1))
    return bound * abs(s + 2 * q + 1) / (sigma + 2 * q + 1)


def zeta_hp(s, dps: int = 30, bernoulli_order: int = 24) -> mp.mpc:
    """zeta(s) by Euler-Maclaurin at dps digits (default 30)."""
    with mp.workdps(dps + 10):
        s = mp.mpc(s)
        if s == 1:
            raise PoleError("zeta has a pole at s = 1")
        if mp.re(s) < -1:
            raise DomainError(f"sigma < -1 unsupported, got {mp.re(s)}")
        q = bernoulli_order
        target = mp.mpf(10) ** (-(dps + 2))
        n = max(50, int(math.ceil(2 * abs(float(mp.im(s))))))
        while _remainder_bound(s, n, q) > target:
            n *= 2
            if n > _MAX_TERMS:
                raise PrecisionError(f"cannot reach {dps} digits at s = {s}")
        direct = mp.fsum(mp.power(k, -s) for k in range(1, n))
        n_to_minus_s = mp.power(n, -s)
        tail = n * n_to_minus_s / (s - 1) + n_to_minus_s / 2
        rise = s
        n_pow = n_to_minus_s / n
        for r in range(1, q + 1):
            tail += mp.bernoulli(2 * r) / mp.factorial(2 * r) * rise * n_pow
            if r < q:
                rise *= (s + (2 * r - 1)) * (s + 2 * r)
                n_pow /= n * n
        value = direct + tail
    return +value


def chi_hp(s, dps: int = 30) -> mp.mpc:
    """chi(s) = 2^s pi^(s-1) Gamma(1-s) sin(pi s/2) evaluated literally;
    mpmath's unbounded exponents need no log-domain detour."""
    with mp.workdps(dps + 10):
        s = mp.mpc(s)
        if mp.im(s) == 0 and mp.re(s) == mp.floor(mp.re(s)):
            m = int(mp.re(s))
            if m >= 1:
                raise PoleError(f"chi formula has a Gamma pole at s = {m}")
            if m % 2 == 0:
                return mp.mpc(0)
        value = (
            mp.power(2, s)
            * mp.power(mp.pi, s - 1)
            * mp.gamma(1 - s)
            * mp.sin(mp.pi * s / 2)
        )
    return +value


def smoothed_sum_hp(s, smoothing: float, truncation_multiplier: float, dps: int = 30) -> mp.mpc:
    """Brute-force sum_{n <= Y * multiplier} e^{-n/Y} n^{-s} at dps digits."""
    with mp.workdps(dps + 10):
        s = mp.mpc(s)
        y = mp.mpf(smoothing)
        m = int(mp.floor(y * truncation_multiplier))
        value = mp.fsum(mp.e ** (-k / y) * mp.power(k, -s) for k in range(1, m + 1))
    return +value


def fourth_moment_integrand_hp(t: float, sigma: float, j: int, dps: int = 30) -> mp.mpf:
    """|zeta(1/2+it)|^4 |zeta(sigma+it)|^{2j} at dps digits, for spot
    validation of quadrature grids."""
    with mp.workdps(dps + 10):
        value = abs(zeta_hp(mp.mpc(0.5, t), dps=dps)) ** 4
        if j:
            value *= abs(zeta_hp(mp.mpc(sigma, t), dps=dps)) ** (2 * j)
    return +value
