"""The Fermat quotient operator and the p-adic calculus built on it.

The operator  delta(u) = (phi(u) - u^p) / p  maps Z_q to Z_q and plays the
role of a derivation on numbers; it is not additive, but satisfies exact sum
and product laws (see the tests).  Each application consumes one digit of
absolute precision, so iterated quotients form a jet (u, delta u, ...,
delta^r u) of strictly decreasing precision.

On their convergence domains (p odd) the p-adic logarithm and exponential
are mutually inverse group isomorphisms between (1 + pZ_q, *) and (pZ_q, +),
and

    psi(u) = log(phi(u) / u^p) / p
           = sum_{n>=1} (-1)^(n-1) (p^(n-1)/n) (delta u / u^p)^n

is a group homomorphism from units to the additive group whose kernel at
full precision is exactly the Teichmuller units.  ``psi`` computes both
expressions and checks that they agree before returning.

Series truncation bounds come from exact valuation inequalities, never from
"iterate until small", so results are bit-reproducible:

* log:  v(t^n/n)   >= n - floor(log_p n); drop once that reaches the target;
* exp:  v(x^n/n!)  >= n - (n - s_p(n))/(p-1); same rule (not monotone in n,
  so terms are filtered up to a hard index rather than cut at the first hit);
* psi:  v(coeff_n) =  n - 1 - v_p(n).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import polyarith as pa
from .errors import (
    ArityMismatch,
    DomainError,
    NonUnit,
    ParamsMismatch,
    PrecisionExhausted,
    UnsupportedPrime,
)
from .zq import ZqElement, frobenius


def fermat_quotient(u):
    """delta(u) = (phi(u) - u^p)/p; the result has precision prec(u) - 1."""
    if u.prec < 2:
        raise PrecisionExhausted("fermat_quotient needs precision >= 2")
    return (frobenius(u) - u ** u.params.p).exact_div_p(1)


@dataclass(frozen=True)
class DeltaJet:
    """The vector (u, delta u, ..., delta^r u); entry i has precision prec-i."""

    entries: tuple

    @property
    def order(self):
        return len(self.entries) - 1

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def delta_jet(u, r):
    """Iterate the Fermat quotient r times; needs precision >= r + 1."""
    if r < 0:
        raise DomainError("jet order must be >= 0")
    if u.prec < r + 1:
        raise PrecisionExhausted(
            f"order-{r} jet needs precision >= {r + 1}, have {u.prec}")
    entries = [u]
    for _ in range(r):
        entries.append(fermat_quotient(entries[-1]))
    return DeltaJet(tuple(entries))


def _ilog(p, n):
    """floor(log_p n) for n >= 1."""
    k, t = 0, p
    while t <= n:
        k += 1
        t *= p
    return k


def _vp(p, n):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vp_factorial(p, n):
    s, m = 0, n
    while m:
        s += m % p
        m //= p
    return (n - s) // (p - 1)


def _require_odd(p):
    if p == 2:
        raise UnsupportedPrime("p = 2 is outside the convergence domain used here")


def padic_log(u):
    """log on 1 + pZ_q (p odd), exact at the precision of u.

    log(u) = sum_{n>=1} (-1)^(n-1) (u-1)^n / n; terms with
    n - floor(log_p n) >= prec vanish modulo p^prec and are dropped.
    """
    params = u.params
    _require_odd(params.p)
    t = u - 1
    if not t.is_zero() and t.valuation() < 1:
        raise DomainError("log is only defined on 1 + p*Z_q")
    target = u.prec
    p = params.p
    n_max = 1
    while n_max + 1 - _ilog(p, n_max + 1) < target:
        n_max += 1
    guard = _ilog(p, n_max)
    mod = p ** (target + guard)
    tv = t.coeffs  # exact lift of the canonical representative
    acc = pa.vec_zero(params.f)
    tp = pa.vec_one(params.f)
    for n in range(1, n_max + 1):
        tp = pa.vec_mul(tp, tv, params.poly, mod)
        if n - _ilog(p, n) >= target:
            continue
        v = _vp(p, n)
        unit = n // p ** v
        term = pa.vec_divexact_p(tp, p ** v)
        term = pa.vec_scale(term, pow(unit, -1, mod), mod)
        acc = pa.vec_add(acc, term, mod) if n % 2 else pa.vec_sub(acc, term, mod)
    return ZqElement(params, pa.vec_mask(acc, p ** target), target)


def padic_exp(x):
    """exp on pZ_q (p odd), exact at the precision of x.

    exp(x) = sum_{n>=0} x^n / n!; terms with n - v_p(n!) >= prec are dropped.
    """
    params = x.params
    _require_odd(params.p)
    if not x.is_zero() and x.valuation() < 1:
        raise DomainError("exp is only defined on p*Z_q")
    target = x.prec
    p = params.p
    # n - v_p(n!) >= n(p-2)/(p-1) + 1/(p-1): everything beyond n_hard is dead
    n_hard = ((p - 1) * target - 1 + (p - 3)) // (p - 2)
    guard = _vp_factorial(p, n_hard)
    mod = p ** (target + guard)
    xv = x.coeffs
    acc = pa.vec_one(params.f)
    xp = pa.vec_one(params.f)
    fact = 1
    for n in range(1, n_hard + 1):
        xp = pa.vec_mul(xp, xv, params.poly, mod)
        fact *= n
        v = _vp_factorial(p, n)
        if n - v >= target:
            continue
        unit = fact // p ** v
        term = pa.vec_divexact_p(xp, p ** v)
        term = pa.vec_scale(term, pow(unit % mod, -1, mod), mod)
        acc = pa.vec_add(acc, term, mod)
    return ZqElement(params, pa.vec_mask(acc, p ** target), target)


def psi(u):
    """The homomorphism (units, *) -> (Z_q, +); precision drops by one.

    Evaluates both the closed form log(phi(u)/u^p)/p and the direct series in
    delta(u)/u^p and insists they agree.
    """
    params = u.params
    _require_odd(params.p)
    if not u.is_unit():
        raise NonUnit("psi is defined on units only")
    if u.prec < 2:
        raise PrecisionExhausted("psi needs precision >= 2")
    inv_up = u.inv() ** params.p
    z = frobenius(u) * inv_up
    via_log = padic_log(z).exact_div_p(1)
    via_series = _psi_series_value(fermat_quotient(u) * inv_up, params)
    if via_log != via_series:
        raise ArithmeticError("psi computation paths disagree")
    return via_log


def _psi_series_value(w, params):
    # sum (-1)^(n-1) (p^(n-1)/n) w^n at the precision of w
    p = params.p
    target = w.prec
    mod = p ** target
    n_max = 1
    while n_max - _ilog(p, n_max + 1) < target:
        n_max += 1
    acc = pa.vec_zero(params.f)
    wp = pa.vec_one(params.f)
    for n in range(1, n_max + 1):
        wp = pa.vec_mul(wp, w.coeffs, params.poly, mod)
        v = _vp(p, n)
        if n - 1 - _ilog(p, n) >= target:
            continue
        unit = n // p ** v
        c = p ** (n - 1 - v) * pow(unit, -1, mod) % mod
        term = pa.vec_scale(wp, c, mod)
        acc = pa.vec_add(acc, term, mod) if n % 2 else pa.vec_sub(acc, term, mod)
    return ZqElement(params, acc, target)


@dataclass(frozen=True)
class RestrictedSeries:
    """A finite term list defining a delta-function of order r in m arguments.

    Variables are indexed j*(order+1) + i for argument j and jet level i, so a
    term's exponent vector has length (order+1)*arity.  When ``denominator``
    is set, exponents of the level-0 variables may be negative: the series is
    then a series in delta(u)/u^p style quotients and the affected arguments
    must be units.  At working precision any restricted series is congruent
    to such a finite sum; the truncation is the caller's responsibility and is
    reflected in the precision of the result.
    """

    order: int
    arity: int
    terms: tuple
    denominator: bool = False

    def __post_init__(self):
        if self.order < 0 or self.arity < 1:
            raise DomainError("need order >= 0 and arity >= 1")
        width = (self.order + 1) * self.arity
        seen = set()
        for exps, coeff in self.terms:
            if len(exps) != width:
                raise ArityMismatch(
                    f"exponent vector of length {len(exps)}, expected {width}")
            if exps in seen:
                raise DomainError(f"duplicate multi-index {exps}")
            seen.add(exps)
            if coeff.prec < 1:
                raise PrecisionExhausted("series coefficient carries no precision")
            for idx, e in enumerate(exps):
                if e < 0 and (not self.denominator or idx % (self.order + 1) != 0):
                    raise DomainError(
                        "negative exponents need the denominator flag and a level-0 variable")


def eval_delta_function(series, args):
    """Evaluate f(u) = F(u, delta u, ..., delta^r u) on a vector of arguments.

    The result is exact modulo p^k where k is the minimum over coefficient
    precisions and jet precisions (argument precision minus the order).
    """
    args = list(args)
    if len(args) != series.arity:
        raise ArityMismatch(f"expected {series.arity} arguments, got {len(args)}")
    if not args:
        raise ArityMismatch("need at least one argument")
    params = args[0].params
    for a in args:
        if a.params != params:
            raise ParamsMismatch("arguments live in different rings")
    r = series.order
    jets = [delta_jet(a, r) for a in args]
    prec = min(
        min((c.prec for _, c in series.terms), default=params.N),
        min(a.prec for a in args) - r,
    )
    if prec < 1:
        raise PrecisionExhausted("no precision left after taking jets")
    inv_cache = {}
    acc = params.zero(prec)
    for exps, coeff in series.terms:
        term = coeff.mask(min(prec, coeff.prec))
        for idx, e in enumerate(exps):
            if e == 0:
                continue
            j, i = divmod(idx, r + 1)
            x = jets[j][i]
            if e < 0:
                if j not in inv_cache:
                    if not args[j].is_unit():
                        raise NonUnit(f"argument {j} must be a unit")
                    inv_cache[j] = x.inv()
                x = inv_cache[j]
                e = -e
            term = term * x.mask(min(x.prec, prec)) ** e
        acc = acc + term
    return acc.mask(prec)


def psi_series_truncation(params, target_prec):
    """The finite truncation of psi's defining series, exact mod p^target_prec.

    Order 1, arity 1, denominator form: term n is
    (-1)^(n-1) (p^(n-1)/n) * x1^n * x0^(-p n).
    """
    _require_odd(params.p)
    p = params.p
    mod = p ** params.N
    n_max = 1
    while n_max - _ilog(p, n_max + 1) < target_prec:
        n_max += 1
    terms = []
    for n in range(1, n_max + 1):
        if n - 1 - _ilog(p, n) >= target_prec:
            continue
        v = _vp(p, n)
        unit = n // p ** v
        c = p ** (n - 1 - v) * pow(unit, -1, mod) % mod
        if n % 2 == 0:
            c = (-c) % mod
        coeff = params.from_coeffs((c,) + (0,) * (params.f - 1))
        terms.append(((-p * n, n), coeff))
    return RestrictedSeries(order=1, arity=1, terms=tuple(terms), denominator=True)
