"""A tour of exact arithmetic in Z_q/p^N.

Run:  python3 demos/01_witt_ring_tour.py
"""

from wittcalc import (
    digits,
    from_digits,
    frobenius,
    frobenius_inv,
    new_params,
    teichmuller,
)

# The ring Z_9 = Z_3[g]/(g^2 + 2g + 2), truncated at 3^12.  The defining
# polynomial defaults to the Conway polynomial, so serialized values are
# portable; precision is absolute and tracked per element.
P = new_params(p=3, f=2, N=12)
print("ring:", P)

g = P.gen()
u = 5 + 7 * g
print("u =", u)
print("u * u^(-1) =", u * u.inv())

# Precision follows the min rule: combining a 12-digit value with a 5-digit
# value can only be trusted to 5 digits.
v = P.from_int(40, prec=5)
print("u + (40 known mod 3^5) =", u + v)

# The Frobenius lift is the unique ring automorphism reducing to a -> a^3.
# Its order is f, and g, phi(g) are the two roots of the modulus, so their
# sum and product are the (negated) coefficients -- Vieta, exactly.
print("phi(g)           =", frobenius(g))
print("g + phi(g)       =", g + frobenius(g), "(= -2)")
print("g * phi(g)       =", g * frobenius(g), "(=  2)")
print("phi(phi(u)) == u :", frobenius(frobenius(u)) == u)
print("phi^(-1)(phi(u)) :", frobenius_inv(frobenius(u)) == u)

# Teichmuller lifts: the unique root-of-unity-or-zero section of reduction
# mod p.  omega(a)^(q-1) = 1 exactly, at full precision.
a = P.fq((2, 1))
w = teichmuller(a)
print("omega(2 + g)     =", w)
print("omega^8 == 1     :", w ** 8 == 1)

# Every element expands uniquely as sum omega(c_i) p^i.  The Frobenius acts
# on that expansion digit-by-digit via c -> c^p.
d = digits(u)
print("digits of u      =", [c.coeffs for c in d.digits])
print("round trip       :", from_digits(d) == u)
print("digit-wise phi   :", from_digits(d.frobenius()) == frobenius(u))
