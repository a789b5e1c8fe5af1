"""Solving psi(u) = beta and its two equivalent polynomial forms.

Run:  python3 demos/03_multiplicative_equation.py
"""

import random

from wittcalc import (
    ExponentialProblem,
    fermat_quotient,
    frobenius,
    new_params,
    psi,
    random_element,
    solve_exponential,
    verify_exponential,
)

P = new_params(p=5, f=2, N=12)
rng = random.Random(0)
beta = random_element(P, rng)

# One equation, three faces: psi(u) = beta, phi(u) = eps u^p, and
# delta(u) = alpha u^p, where eps = exp(p beta) = 1 + p alpha.
problem = ExponentialProblem.from_beta(beta)
print("beta  =", problem.beta)
print("eps   =", problem.epsilon)
print("alpha =", problem.alpha)

# The closed-form solution family: base = exp(sum p^n phi^(-n) beta),
# multiplied by any of the q-1 Teichmuller constants (delta zeta = 0).
family = solve_exponential(beta)
print("base  =", family.base)
print("family size =", len(family.constants))

u = family.base
print("phi(u) - eps u^p  =", frobenius(u) - problem.epsilon * u ** 5)
print("delta(u) - a u^p  =", fermat_quotient(u) - problem.alpha * u ** 5)
print("psi(u) - beta     =", psi(u) - beta)

# Certificates report the achieved agreement precision of each residual,
# plus the Teichmuller membership of u/base.
for member in list(family.members())[:3]:
    cert = verify_exponential(member, problem, base=family.base)
    print("member verifies:", cert.ok,
          "residual precisions:", cert.phi_form, cert.delta_form, cert.psi_form)

# A non-solution fails loudly: 1 + p is not Teichmuller, and the certificate
# pins the disagreement at precision 0.
bad = verify_exponential(1 + P.from_int(5), solve_exponential(P.zero()).problem)
print("1+p against beta=0:", bad.ok, "delta form:", bad.delta_form)

# At toy scale the family is provably everything: brute force over all 54
# units of Z/81 finds exactly the same solution set.
P3 = new_params(p=3, f=1, N=4)
alpha = random_element(P3, rng)
fam3 = solve_exponential(ExponentialProblem.from_alpha(alpha).beta)
a = alpha.coeffs[0]
brute = {u for u in range(81) if u % 3
         and ((u - u ** 3) // 3 - a * u ** 3) % 27 == 0}
print("brute force == family:",
      brute == {(z * fam3.base).coeffs[0] for z in fam3.constants})
