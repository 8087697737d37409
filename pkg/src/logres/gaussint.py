"""Gaussian-integer factoring support for the rational-root search.

Roots in Q(i) of a monic polynomial with Z[i] coefficients are Gaussian
integers dividing the constant term, so eigenvalue extraction reduces to
enumerating divisors of one Gaussian integer.  Gaussian integers are kept
as plain (a, b) int pairs here.
"""

from __future__ import annotations

import math

# deterministic Miller-Rabin bases, valid for n < 3.3 * 10**24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        f = lambda v: (v * v + c) % n
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def factorint(n: int) -> dict:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorint expects a positive integer")
    out: dict = {}
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


# -- Gaussian integer arithmetic on (a, b) pairs ---------------------------

def gi_mul(z, w):
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def gi_norm(z):
    return z[0] * z[0] + z[1] * z[1]


def gi_divmod(z, w):
    """Nearest-rounding division: z = q*w + r with N(r) <= N(w)/2."""
    nw = gi_norm(w)
    zc = (z[0] * w[0] + z[1] * w[1], z[1] * w[0] - z[0] * w[1])
    q = (_round_div(zc[0], nw), _round_div(zc[1], nw))
    r = (z[0] - (q[0] * w[0] - q[1] * w[1]), z[1] - (q[0] * w[1] + q[1] * w[0]))
    return q, r


def _round_div(a: int, b: int) -> int:
    # round(a/b) with ties toward +inf; any consistent rounding works
    return (2 * a + b) // (2 * b)


def gi_gcd(z, w):
    while w != (0, 0):
        _, r = gi_divmod(z, w)
        z, w = w, r
    return z


def gi_divides(d, z) -> bool:
    _, r = gi_divmod(z, d)
    return r == (0, 0)


def gi_exact_div(z, d):
    q, r = gi_divmod(z, d)
    if r != (0, 0):
        raise ArithmeticError("non-exact Gaussian division")
    return q


def _gaussian_primes_over(p: int):
    """Gaussian primes above the rational prime p (up to units)."""
    if p == 2:
        return [(1, 1)]
    if p % 4 == 3:
        return [(p, 0)]
    # p = 1 mod 4: find s with s^2 = -1 mod p, then gcd(p, s + i)
    for a in range(2, p):
        s = pow(a, (p - 1) // 4, p)
        if s * s % p == p - 1:
            pi = gi_gcd((p, 0), (s, 1))
            return [pi, (pi[0], -pi[1])]
    raise ArithmeticError("no sqrt(-1) mod %d" % p)  # unreachable for prime p


def gi_divisors(z, norm_cap=None):
    """Divisors of the nonzero Gaussian integer z, up to units.

    Enumerates unit-class representatives; callers wanting every divisor
    multiply by the four units.  norm_cap prunes the enumeration to
    divisors of norm at most the cap, which keeps highly composite
    constants tractable when a root bound is known.
    """
    if z == (0, 0):
        raise ValueError("zero has no finite divisor list")
    n = gi_norm(z)
    prime_powers = []
    for p in sorted(factorint(n)):
        for pi in _gaussian_primes_over(p):
            e = 0
            w = z
            while gi_divides(pi, w):
                w = gi_exact_div(w, pi)
                e += 1
            if e:
                prime_powers.append((pi, e))
    divisors = [(1, 0)]
    for pi, e in prime_powers:
        grown = []
        for d in divisors:
            cur = d
            for k in range(e + 1):
                if norm_cap is None or gi_norm(cur) <= norm_cap:
                    grown.append(cur)
                elif k:
                    break
                cur = gi_mul(cur, pi)
        divisors = grown
    # dedupe up to units (i^k scaling)
    seen = set()
    out = []
    for d in divisors:
        reps = {d, (-d[1], d[0]), (-d[0], -d[1]), (d[1], -d[0])}
        key = min(reps)
        if key not in seen:
            seen.add(key)
            out.append(d)
    return out


UNITS = ((1, 0), (0, 1), (-1, 0), (0, -1))
