"""Solvers and verifiers for three equation families over Z_q/p^N.

Multiplicative family (p odd):   psi(u) = beta   is equivalent to
phi(u) = eps * u^p  and to  delta(u) = alpha * u^p, where
eps = exp(p*beta) = 1 + p*alpha.  The solutions form a torsor under the
q-1 Teichmuller units: every solution is zeta * base with

    base = exp( sum_{n>=1} p^n phi^(-n)(beta) ),   delta(zeta) = 0.

Difference family:  phi(u) = eps * u.  Over Z_q this is genuinely
conditional: mod p it needs eps to be a (p-1)-st power residue, and every
lift step reduces to an Artin-Schreier equation h^p - h = c over F_q, which
is solvable iff the absolute trace of c vanishes.  Failures come back as
``Obstruction`` values carrying a recheckable witness, not as exceptions.

Matrix family:  delta(u) = beta * u^(p), entry-wise p-th powers, i.e.
phi(u) = (I + p*beta) * u^(p).  Mod p the equation is vacuous, so any
invertible residue seed works, and each seed lifts uniquely: the solution
set is an exact GL_n(F_q)-torsor over seeds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .conway import prime_factors
from .delta import eval_delta_function, fermat_quotient, padic_exp, padic_log, psi
from .errors import (
    DomainError,
    NonUnit,
    ParamsMismatch,
    PrecisionExhausted,
    SingularSeed,
    UnsupportedPrime,
)
from .zq import (
    FqElement,
    ZqElement,
    agreement_precision,
    frobenius,
    frobenius_inv,
    teichmuller,
)


# ---------------------------------------------------------------------------
# multiplicative / exponential family

@dataclass(frozen=True)
class ExponentialProblem:
    """The right-hand side beta along with eps = exp(p*beta) and alpha = (eps-1)/p."""

    beta: ZqElement
    epsilon: ZqElement
    alpha: ZqElement

    @property
    def params(self):
        return self.beta.params

    @classmethod
    def from_beta(cls, beta):
        if beta.params.p == 2:
            raise UnsupportedPrime("the multiplicative family needs p odd")
        eps = padic_exp(beta.mul_p_power(1))
        return cls(beta, eps, (eps - 1).exact_div_p(1))

    @classmethod
    def from_alpha(cls, alpha):
        if alpha.params.p == 2:
            raise UnsupportedPrime("the multiplicative family needs p odd")
        eps = alpha.mul_p_power(1) + 1
        return cls(padic_log(eps).exact_div_p(1), eps, alpha)

    @classmethod
    def from_epsilon(cls, eps):
        if eps.params.p == 2:
            raise UnsupportedPrime("the multiplicative family needs p odd")
        if not (eps - 1).is_zero() and (eps - 1).valuation() < 1:
            raise DomainError("eps must lie in 1 + p*Z_q")
        return cls(padic_log(eps).exact_div_p(1), eps, (eps - 1).exact_div_p(1))


@dataclass(frozen=True)
class ExponentialCertificate:
    """Achieved vs. available agreement precision for each equation form.

    ``available`` is the precision at which the residual is computable from
    the inputs; an exact family member achieves it.  ``ratio`` certifies
    membership: delta(u / base) must vanish, i.e. u / base is Teichmuller.
    """

    phi_form: tuple
    delta_form: tuple
    psi_form: tuple
    ratio: tuple
    constants_count: int

    @property
    def ok(self):
        return all(ach >= avail for ach, avail in
                   (self.phi_form, self.delta_form, self.psi_form, self.ratio))


@dataclass(frozen=True)
class SolutionFamily:
    """base plus the q-1 Teichmuller constants parameterizing all solutions."""

    problem: ExponentialProblem
    base: ZqElement
    constants: tuple

    def members(self):
        for zeta in self.constants:
            yield zeta * self.base


def enumerate_constants(params):
    """All q-1 solutions of delta(u) = 0 among units: the Teichmuller lifts.

    Ordered lexicographically by residue coefficient vector.
    """
    out = []
    for a in _fq_all(params):
        if not a.is_zero():
            out.append(teichmuller(a))
    return tuple(out)


def solve_exponential(beta):
    """Solve psi(u) = beta over Z_q; returns the full solution family.

    The distinguished solution is exp(sum_{n>=1} p^n phi^(-n)(beta)); the sum
    is exact since the n-th term has valuation >= n.  The base is verified
    against all three equation forms before returning.
    """
    params = beta.params
    if params.p == 2:
        raise UnsupportedPrime("the multiplicative family needs p odd")
    if beta.prec < 2:
        raise PrecisionExhausted("solve_exponential needs precision >= 2")
    problem = ExponentialProblem.from_beta(beta)
    s_prec = min(beta.prec + 1, params.N)
    s = params.zero(s_prec)
    term = beta
    for n in range(1, s_prec):
        term = frobenius_inv(term)
        s = s + term.mul_p_power(n)
    base = padic_exp(s)
    cert = verify_exponential(base, problem, base=base)
    if not cert.ok:
        raise ArithmeticError("base solution failed self-verification")
    return SolutionFamily(problem, base, enumerate_constants(params))


def verify_exponential(u, problem, base=None):
    """Certificate for u against psi(u)=beta and its two equivalent forms.

    When ``base`` is omitted it is recomputed from the problem, so the
    membership check (u/base Teichmuller) is always present.
    """
    if not u.is_unit():
        raise NonUnit("candidate solutions must be units")
    p = u.params.p
    beta, eps, alpha = problem.beta, problem.epsilon, problem.alpha
    up = u ** p
    phi_u = frobenius(u)
    phi_res = phi_u - eps * up
    delta_res = fermat_quotient(u) - alpha * up
    psi_res = psi(u) - beta
    if base is None:
        base = solve_exponential(beta).base
    ratio = u * base.inv()
    ratio_res = fermat_quotient(ratio)
    forms = tuple(
        (agreement_precision(r, r.params.zero(r.prec)), r.prec)
        for r in (phi_res, delta_res, psi_res, ratio_res))
    return ExponentialCertificate(
        phi_form=forms[0], delta_form=forms[1], psi_form=forms[2],
        ratio=forms[3],
        constants_count=p ** u.params.f - 1)


# ---------------------------------------------------------------------------
# residue-field machinery shared by the staged solvers

def _fq_all(params):
    """All residue-field elements in lexicographic coefficient order."""
    p, f = params.p, params.f
    total = p ** f
    for n in range(total):
        coeffs = []
        m = n
        for _ in range(f):
            m, r = divmod(m, p)
            coeffs.append(r)
        # big-endian lexicographic: leading basis coefficient varies slowest
        yield FqElement(params, tuple(reversed(coeffs)))


@lru_cache(maxsize=None)
def _fq_generator(params):
    """The lexicographically smallest generator of F_q^*."""
    q1 = params.p ** params.f - 1
    ells = prime_factors(q1) if q1 > 1 else []
    for a in _fq_all(params):
        if a.is_zero():
            continue
        if all((a ** (q1 // ell)).coeffs != (1,) + (0,) * (params.f - 1) for ell in ells):
            return a
    raise ArithmeticError("no generator found")


def _fq_dlog(gen, a):
    """Discrete log of a in base gen over F_q^*, by baby-step giant-step."""
    params = gen.params
    q1 = params.p ** params.f - 1
    m = isqrt(q1) + 1
    baby = {}
    x = params.fq_from_int(1)
    for j in range(m):
        baby.setdefault(x.coeffs, j)
        x = x * gen
    giant = gen.inv() ** m
    y = a
    for i in range(m + 1):
        j = baby.get(y.coeffs)
        if j is not None:
            return (i * m + j) % q1
        y = y * giant
    raise ArithmeticError("discrete log not found")


@lru_cache(maxsize=None)
def _artin_schreier_matrix(params):
    """Columns of the F_p-linear map h -> h^p - h on the basis 1, g, .., g^(f-1)."""
    cols = []
    for i in range(params.f):
        b = FqElement(params, tuple(1 if j == i else 0 for j in range(params.f)))
        cols.append((b.frobenius() - b).coeffs)
    return tuple(cols)


def _solve_artin_schreier(params, c):
    """A solution h of h^p - h = c over F_q, or None when Tr(c) != 0."""
    if c.trace() != 0:
        return None
    p, f = params.p, params.f
    cols = _artin_schreier_matrix(params)
    # Gaussian elimination on the augmented f x (f+1) system
    rows = [[cols[j][i] for j in range(f)] + [c.coeffs[i]] for i in range(f)]
    pivots = []
    r = 0
    for col in range(f):
        piv = next((i for i in range(r, f) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(f):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [(x - factor * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[f] % p for row in rows[r:]):
        return None  # inconsistent; cannot happen once the trace vanishes
    h = [0] * f
    for i, col in enumerate(pivots):
        h[col] = rows[i][f] % p
    return FqElement(params, tuple(h))


# ---------------------------------------------------------------------------
# difference family

@dataclass(frozen=True)
class Obstruction:
    """Why phi(u) = eps*u has no solution at some lifting stage.

    ``stage`` is "mod-p" or the lift step k >= 1.  The witness is the residue
    value whose recomputation reproduces the failure: for "power-residue" it
    is eps_bar^((q-1)/gcd(p-1, q-1)) != 1; for "trace" it is the
    Artin-Schreier right-hand side c with Tr(c) != 0, together with the
    partial solution it was derived from.
    """

    stage: object
    kind: str
    witness: FqElement
    exponent: int = 0
    trace: int = 0
    partial: ZqElement = None


def phi_norm(eps):
    """eps * phi(eps) * ... * phi^(f-1)(eps)."""
    acc = eps
    t = eps
    for _ in range(eps.params.f - 1):
        t = frobenius(t)
        acc = acc * t
    return acc


def solve_difference(eps):
    """Solve phi(u) = eps * u over Z_q, to the precision of eps.

    Staged lifting: solve u^(p-1) = eps mod p in F_q^*, then correct
    u <- u(1 + p^k h) where h solves an Artin-Schreier equation at each step.
    Returns a unit solution, or the first Obstruction as a value.
    """
    params = eps.params
    eps_bar = eps.residue()
    if eps_bar.is_zero():
        raise NonUnit("eps must be a unit")
    p, f, K = params.p, params.f, eps.prec
    q1 = p ** f - 1
    d = gcd(p - 1, q1)
    if q1 > 1:
        exponent = q1 // d
        power = eps_bar ** exponent
        if power != params.fq_from_int(1):
            return Obstruction(stage="mod-p", kind="power-residue",
                               witness=power, exponent=exponent)
        gen = _fq_generator(params)
        e = _fq_dlog(gen, eps_bar)
        step = (p - 1) // d
        modulus = q1 // d
        t = (e // d) * pow(step, -1, modulus) % modulus if modulus > 1 else 0
        u = (gen ** t).lift(K)
    else:
        u = params.one(K)
    for k in range(1, K):
        r = frobenius(u) * (eps * u).inv()
        d_el = (r - 1).exact_div_p(k)
        c = -d_el.residue()
        h = _solve_artin_schreier(params, c)
        if h is None:
            return Obstruction(stage=k, kind="trace", witness=c,
                               trace=c.trace(), partial=u)
        u = u * (h.lift(K).mul_p_power(k) + 1)
    if frobenius(u) != eps * u:
        raise ArithmeticError("difference lift lost the invariant")
    if phi_norm(eps) != eps.params.one(K):
        raise ArithmeticError("solution found although the phi-norm of eps is not 1")
    return u


# ---------------------------------------------------------------------------
# matrix family

class ZqMatrix:
    """A square matrix over Z_q with one common precision (the entry minimum)."""

    __slots__ = ("params", "entries", "n", "prec")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        n = len(entries)
        if n == 0 or any(len(row) != n for row in entries):
            raise DomainError("matrix must be square and non-empty")
        params = entries[0][0].params
        prec = min(e.prec for row in entries for e in row)
        for row in entries:
            for e in row:
                if e.params != params:
                    raise ParamsMismatch("matrix entries live in different rings")
        self.params = params
        self.n = n
        self.prec = prec
        self.entries = tuple(tuple(e.mask(prec) for e in row) for row in entries)

    @classmethod
    def identity(cls, params, n, prec=None):
        return cls(tuple(
            tuple(params.from_int(1 if i == j else 0, prec) for j in range(n))
            for i in range(n)))

    @classmethod
    def from_residues(cls, params, residues, prec=None):
        return cls(tuple(tuple(params.fq(e.coeffs if isinstance(e, FqElement) else e)
                               .lift(prec) for e in row) for row in residues))

    def map(self, fn):
        return ZqMatrix(tuple(tuple(fn(e) for e in row) for row in self.entries))

    def __add__(self, other):
        return ZqMatrix(tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other):
        return ZqMatrix(tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def __matmul__(self, other):
        if other.n != self.n or other.params != self.params:
            raise ParamsMismatch("matrix shapes or rings differ")
        n = self.n
        return ZqMatrix(tuple(
            tuple(sum((self.entries[i][k] * other.entries[k][j] for k in range(n)),
                      self.params.zero(min(self.prec, other.prec)))
                  for j in range(n))
            for i in range(n)))

    def pow_entries_p(self):
        p = self.params.p
        return self.map(lambda e: e ** p)

    def frobenius(self):
        return self.map(frobenius)

    def exact_div_p(self, k=1):
        return self.map(lambda e: e.exact_div_p(k))

    def mask(self, prec):
        return self.map(lambda e: e.mask(prec))

    def residues(self):
        return tuple(tuple(e.residue() for e in row) for row in self.entries)

    def __eq__(self, other):
        if not isinstance(other, ZqMatrix):
            return NotImplemented
        return self.n == other.n and all(
            a == b for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb))

    def __repr__(self):
        return f"ZqMatrix({self.n}x{self.n}, prec={self.prec})"


def _residue_invertible(params, residues):
    """Gaussian elimination over F_q on a residue grid."""
    n = len(residues)
    rows = [list(row) for row in residues]
    for col in range(n):
        piv = next((i for i in range(col, n) if not rows[i][col].is_zero()), None)
        if piv is None:
            return False
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inv()
        rows[col] = [x * inv for x in rows[col]]
        for i in range(n):
            if i != col and not rows[i][col].is_zero():
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[col])]
    return True


def solve_matrix_linear(beta, seed=None):
    """Solve delta(u) = beta * u^(p) with u invertible, from a mod-p seed.

    Rewritten as phi(u) = (I + p*beta) * u^(p) the equation is vacuous mod p,
    so the seed is free; the step-k correction u <- u + p^k * lift(h) with
    h = phi^(-1)(c), p^k c = (I + p*beta) u^(p) - phi(u), is always solvable
    and unique, so every invertible seed lifts to exactly one solution.
    """
    params = beta.params
    if beta.prec < 2:
        raise PrecisionExhausted("solve_matrix_linear needs precision >= 2")
    n = beta.n
    W = beta.prec
    if seed is None:
        seed_res = tuple(
            tuple(params.fq_from_int(1 if i == j else 0) for j in range(n))
            for i in range(n))
    else:
        seed_res = tuple(
            tuple(e if isinstance(e, FqElement) else params.fq(e) for e in row)
            for row in seed)
        if len(seed_res) != n or any(len(row) != n for row in seed_res):
            raise DomainError("seed shape does not match beta")
    if not _residue_invertible(params, seed_res):
        raise SingularSeed("seed matrix is not invertible over F_q")
    coupling = ZqMatrix.identity(params, n, W) + beta.mask(W).map(
        lambda e: e.mul_p_power(1).mask(W))
    u = ZqMatrix.from_residues(params, seed_res, W)
    for k in range(1, W):
        r = coupling @ u.pow_entries_p() - u.frobenius()
        c = r.exact_div_p(k)
        h = tuple(tuple(e.residue().frobenius_inv() for e in row) for row in c.entries)
        u = u + ZqMatrix.from_residues(params, h, W).map(
            lambda e: e.mul_p_power(k).mask(W))
    if coupling @ u.pow_entries_p() != u.frobenius():
        raise ArithmeticError("matrix lift lost the invariant")
    return u


def verify_matrix_linear(u, beta):
    """Achieved precision of the entry-wise residual delta(u) - beta * u^(p)."""
    res = u.map(fermat_quotient) - (beta @ u.pow_entries_p())
    return min(
        agreement_precision(e, e.params.zero(e.prec))
        for row in res.entries for e in row)


def solve_matrix_functional(beta, series_grid, seed=None):
    """Hook for connection-style equations delta(u) = beta * Phi(u).

    ``series_grid`` is an n x n grid of RestrictedSeries, each of arity n*n,
    evaluated on the flattened entries of u (row-major).  The same staged
    lifting applies because the p factor in front of beta*Phi(u) makes the
    equation vacuous mod p and evaluation is 1-Lipschitz.  Shipped for
    completeness; nothing in-repo constructs such a grid.
    """
    params = beta.params
    n = beta.n
    order = max(s.order for row in series_grid for s in row)
    target = beta.prec - order
    if target < 2:
        raise PrecisionExhausted("not enough precision for the series order")
    if seed is None:
        seed_res = tuple(
            tuple(params.fq_from_int(1 if i == j else 0) for j in range(n))
            for i in range(n))
    else:
        seed_res = tuple(tuple(e if isinstance(e, FqElement) else params.fq(e)
                               for e in row) for row in seed)
    if not _residue_invertible(params, seed_res):
        raise SingularSeed("seed matrix is not invertible over F_q")
    u = ZqMatrix.from_residues(params, seed_res, beta.prec)
    pbeta = beta.map(lambda e: e.mul_p_power(1))

    def residual(mat):
        flat = [e for row in mat.entries for e in row]
        phi_mat = ZqMatrix(tuple(
            tuple(eval_delta_function(series_grid[i][j], flat)
                  for j in range(n)) for i in range(n)))
        return (mat.pow_entries_p() + pbeta @ phi_mat) - mat.frobenius()

    for k in range(1, target):
        c = residual(u).exact_div_p(k)
        h = tuple(tuple(e.residue().frobenius_inv() for e in row) for row in c.entries)
        u = u + ZqMatrix.from_residues(params, h, beta.prec).map(
            lambda e: e.mul_p_power(k))
    if any(not e.is_zero() for row in residual(u).entries for e in row):
        raise ArithmeticError("matrix lift lost the invariant")
    return u
