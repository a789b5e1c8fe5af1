"""Primality checking and deterministic defining polynomials for F_{p^f}.

The degree-f default modulus is the Conway polynomial C_{p,f}: the first
monic primitive polynomial, in the classical word ordering, whose root is
norm-compatible with C_{p,d} for every proper divisor d of f.  Computing it
by direct search is cheap at the field sizes this package targets and keeps
serialized elements portable: any implementation that picks the same
polynomial produces bit-identical coefficients.
"""

from functools import lru_cache
from itertools import product

from .errors import NotPrime
from .polyarith import pp_gcd, pp_mod, pp_mul, pp_powmod, pp_trim

# Deterministic Miller-Rabin witness set, valid for all n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin primality test (exact below 3.3e24)."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n):
    """Sorted distinct prime factors, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(poly, p):
    """Is the monic integer polynomial irreducible over F_p?"""
    m = pp_trim([c % p for c in poly])
    f = len(m) - 1
    if f < 1:
        return False
    if f == 1:
        return True
    x = [0, 1]
    if pp_trim([a % p for a in _sub(pp_powmod(x, p ** f, m, p), x, p)]):
        return False
    for ell in prime_factors(f):
        d = f // ell
        if len(pp_gcd(_sub(pp_powmod(x, p ** d, m, p), x, p), m, p)) > 1:
            return False
    return True


def _sub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return pp_trim([(x - y) % p for x, y in zip(a, b)])


def smallest_primitive_root(p):
    g = 1  # 1 generates the trivial group F_2^*; never primitive for p > 2
    ells = prime_factors(p - 1)
    while True:
        if all(pow(g, (p - 1) // ell, p) != 1 for ell in ells):
            return g
        g += 1


@lru_cache(maxsize=None)
def conway_polynomial(p, f):
    """C_{p,f} as a tuple of f+1 ints in [0, p), ascending degree."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if f == 1:
        return ((-smallest_primitive_root(p)) % p, 1)
    q1 = p ** f - 1
    ells = prime_factors(q1)
    divisors = [d for d in range(1, f) if f % d == 0]
    x = [0, 1]
    # Word ordering: the tuple (b_{f-1}, ..., b_0) with b_i = (-1)^{f-i} a_i
    # is compared lexicographically; product() enumerates words in that order.
    for word in product(range(p), repeat=f):
        a = [0] * (f + 1)
        a[f] = 1
        for idx, b in enumerate(word):
            i = f - 1 - idx
            a[i] = b if (f - i) % 2 == 0 else (-b) % p
        m = a
        if pp_powmod(x, q1, m, p) != [1]:
            continue
        if any(pp_powmod(x, q1 // ell, m, p) == [1] for ell in ells):
            continue
        if all(_norm_compatible(m, p, f, d) for d in divisors):
            return tuple(m)
    raise ArithmeticError(f"no Conway polynomial found for p={p}, f={f}")


def _norm_compatible(m, p, f, d):
    """Does C_{p,d} vanish at x^((p^f-1)/(p^d-1)) modulo m?"""
    r = (p ** f - 1) // (p ** d - 1)
    y = pp_powmod([0, 1], r, m, p)
    sub = conway_polynomial(p, d)
    acc = []
    for c in reversed(sub):
        acc = pp_mod(pp_mul(acc, y, p), m, p)
        acc = _sub(acc, [(-c) % p], p)
    return not acc
