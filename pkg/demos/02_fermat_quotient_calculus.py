"""The Fermat quotient as a derivation on numbers.

Run:  python3 demos/02_fermat_quotient_calculus.py
"""

from math import comb

from wittcalc import (
    delta_jet,
    fermat_quotient,
    new_params,
    padic_exp,
    padic_log,
    psi,
    teichmuller,
)

P = new_params(p=5, f=1, N=12)

# delta(u) = (phi(u) - u^p)/p.  On integers phi is the identity, so
# delta(2) = (2 - 32)/5 = -6.  One digit of precision is spent per
# application: the jet entries have precision N, N-1, N-2, ...
u = P.from_int(2)
print("delta(2)   =", fermat_quotient(u))
print("jet(2, 3)  =", list(delta_jet(u, 3)))

# delta is not additive.  It satisfies exact correction laws instead:
#   delta(u+v) = delta u + delta v - sum_{k=1}^{p-1} (1/p) C(p,k) u^k v^(p-k)
#   delta(uv)  = u^p delta v + v^p delta u + p delta u delta v
v = P.from_int(11)
du, dv = fermat_quotient(u), fermat_quotient(v)
cross = P.zero()
for k in range(1, 5):
    cross = cross + (comb(5, k) // 5) * u ** k * v ** (5 - k)
print("sum law    :", fermat_quotient(u + v) == du + dv - cross)
print("product law:", fermat_quotient(u * v) == u ** 5 * dv + v ** 5 * du + (du * dv).mul_p_power(1))

# The constants of this calculus (delta = 0) are exactly the Teichmuller
# roots of unity.
z = teichmuller(P.fq_from_int(3))
print("delta(omega(3)) =", fermat_quotient(z))

# exp and log are exact mutually inverse isomorphisms between pZ_q and
# 1 + pZ_q for odd p; series are truncated by proved valuation bounds,
# never by "iterate until small".
x = P.from_int(35)
print("exp(35)          =", padic_exp(x))
print("log(exp(35)) == x:", padic_log(padic_exp(x)) == x)

# psi(u) = log(phi(u)/u^p)/p is a homomorphism from units to the additive
# group; it is computed along two independent routes (closed form and the
# direct series in delta u / u^p) which must agree.
a, b = P.from_int(7), P.from_int(13)
print("psi(7)           =", psi(a))
print("psi(7*13)        =", psi(a * b))
print("homomorphism     :", psi(a * b) == psi(a) + psi(b))
print("kernel           :", psi(teichmuller(P.fq_from_int(2))) == 0)
