"""Probing computed values for integer polynomial relations.

A certificate P(u) = 0 mod p^M is evidence of algebraicity at precision M;
a None answer bounds what was searched and proves nothing.  Run:

    python3 demos/05_algebraicity_probe.py
"""

import random

from wittcalc import (
    RelationQuery,
    find_relation,
    minimal_polynomial,
    new_params,
    psi,
    random_element,
    solve_exponential,
    teichmuller,
    verify_relation,
)


def show(cert):
    if cert is None:
        return "None"
    terms = " + ".join(f"{c}*x^{e[0]}" for e, c in zip(cert.monomials, cert.coeffs))
    return f"{terms}   (verified mod p^{cert.verified_precision}, {cert.mode})"


# Roots of unity are algebraic and the probe recovers their cyclotomic
# relations at height 1.  omega(g) for a generator g of F_9 is a primitive
# 8th root of unity: x^4 + 1.
P9 = new_params(p=3, f=2, N=20)
w = teichmuller(P9.gen().residue())
print("omega(g) over F_9:", show(minimal_polynomial(w, 8, 1)))

# omega(2) in Z_5 has order 4, so its minimal relation is x^2 + 1 -- the
# degree is phi(order), not the order itself.
P5 = new_params(p=5, f=1, N=20)
print("omega(2) in Z_5:  ", show(minimal_polynomial(teichmuller(P5.fq_from_int(2)), 4, 1)))

# Both search modes see the same relations; the lattice route scales better.
for mode in ("exhaustive", "lattice"):
    cert = find_relation(RelationQuery(values=(w,), deg_bound=4, height_bound=1,
                                       mode=mode))
    print(f"x^4 + 1 via {mode:10s}:", show(cert))
    print("  re-verifies:", verify_relation(cert, [w], cert.verified_precision))

# Generic units, by contrast, admit no small relation: at 40 digits of
# precision the probe reports None for essentially every random unit.  That
# is NOT a transcendence proof -- only a statement about the searched box.
P40 = new_params(p=3, f=1, N=40)
rng = random.Random(0)
nones = sum(
    find_relation(RelationQuery(values=(random_element(P40, rng, unit=True),),
                                deg_bound=2, height_bound=10)) is None
    for _ in range(25))
print(f"random units with no relation found: {nones}/25")

# Solutions of the multiplicative equation sit on both sides of the divide.
# When beta = psi(u0) for an algebraic 1-unit u0, the distinguished solution
# IS u0 and the probe finds its linear relation; for generic beta the base
# point behaves like the random units above.
u0 = 1 + P5.from_int(5)
fam = solve_exponential(psi(u0))
print("base for beta = psi(1+p):", show(minimal_polynomial(fam.base, 3, 6)))
rng_beta = random_element(P5, rng)
fam2 = solve_exponential(rng_beta)
print("base for random beta:    ",
      show(find_relation(RelationQuery(values=(fam2.base,), deg_bound=3,
                                       height_bound=10))))
