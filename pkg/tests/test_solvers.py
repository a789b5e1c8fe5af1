"""Equation families: multiplicative, difference, and matrix solvers."""

import random
from fractions import Fraction

import pytest

from wittcalc import (
    ExponentialProblem,
    NonUnit,
    Obstruction,
    SingularSeed,
    UnsupportedPrime,
    ZqMatrix,
    RestrictedSeries,
    agreement_precision,
    enumerate_constants,
    fermat_quotient,
    frobenius,
    phi_norm,
    psi,
    random_element,
    solve_difference,
    solve_exponential,
    solve_matrix_functional,
    solve_matrix_linear,
    teichmuller,
    verify_exponential,
    verify_matrix_linear,
)

from conftest import get_params, oracle_exp


# ---------------------------------------------------------------------------
# multiplicative family

def test_beta_zero_family_is_teichmuller():
    P = get_params(3, 1, 6)
    fam = solve_exponential(P.zero())
    assert fam.base == 1
    assert [z.coeffs[0] for z in fam.constants] == [1, 3 ** 6 - 1]


def test_beta_one_base_matches_geometric_sum_oracle():
    # For f = 1, phi is the identity, so sum p^n beta = p*beta/(1-p); with
    # p = 3, beta = 1 this is -3/2 and base = exp(-3/2).
    N = 9
    P = get_params(3, 1, N)
    fam = solve_exponential(P.from_int(1))
    geometric = sum(3 ** n for n in range(1, N)) % 3 ** N
    assert geometric == -3 * pow(2, -1, 3 ** N) % 3 ** N
    assert fam.base == oracle_exp(Fraction(-3, 2), 3, N)


def test_three_forms_consistency():
    P = get_params(5, 2, 10)
    rng = random.Random(0)
    beta = random_element(P, rng)
    prob = ExponentialProblem.from_beta(beta)
    # eps = 1 + p*alpha ties the derived quantities together
    assert prob.epsilon == 1 + prob.alpha.mul_p_power(1)
    assert (prob.epsilon - 1).valuation() >= 1 or (prob.epsilon - 1).is_zero()
    u = solve_exponential(beta).base
    assert frobenius(u) == prob.epsilon * u ** 5
    assert agreement_precision(fermat_quotient(u), prob.alpha * u ** 5) >= 9
    assert agreement_precision(psi(u), beta) >= 9


def test_problem_constructors_agree():
    P = get_params(7, 1, 8)
    rng = random.Random(1)
    alpha = random_element(P, rng)
    prob = ExponentialProblem.from_alpha(alpha)
    via_eps = ExponentialProblem.from_epsilon(prob.epsilon)
    via_beta = ExponentialProblem.from_beta(prob.beta)
    assert via_eps.alpha == alpha
    assert via_eps.beta == prob.beta
    assert agreement_precision(via_beta.alpha, alpha) >= 7


def test_family_members_all_verify():
    rng = random.Random(2)
    for p, f in [(3, 1), (5, 2)]:
        P = get_params(p, f, 10)
        beta = random_element(P, rng)
        fam = solve_exponential(beta)
        assert len(fam.constants) == p ** f - 1
        for u in fam.members():
            cert = verify_exponential(u, fam.problem, base=fam.base)
            assert cert.ok
            assert cert.delta_form[0] >= 9


def test_family_closure_both_directions():
    P = get_params(5, 1, 10)
    rng = random.Random(3)
    fam = solve_exponential(random_element(P, rng))
    members = list(fam.members())
    for u in members[:3]:
        for v in members[:3]:
            ratio = u * v.inv()
            assert fermat_quotient(ratio) == 0
            assert ratio == teichmuller(ratio.residue())


def test_non_member_fails_with_reported_precision():
    P = get_params(5, 1, 8)
    fam = solve_exponential(P.zero())
    cert = verify_exponential(1 + P.from_int(5), fam.problem, base=fam.base)
    assert not cert.ok
    # delta(1+p) = 1 - p + O(p^2) is a unit, so agreement starts at 0
    assert cert.delta_form[0] == 0
    assert cert.ratio[0] == 0


def test_exhaustive_toy_scale_cross_check():
    # p=3, f=1, N=4: compare the family against brute force over all 54
    # units of Z/81, using plain integer arithmetic as the oracle.
    N = 4
    P = get_params(3, 1, N)
    rng = random.Random(4)
    for _ in range(5):
        alpha = random_element(P, rng)
        fam = solve_exponential(ExponentialProblem.from_alpha(alpha).beta)
        solver_set = {(z * fam.base).coeffs[0] for z in fam.constants}
        a = alpha.coeffs[0]
        brute = set()
        for u in range(81):
            if u % 3 == 0:
                continue
            if ((u - u ** 3) // 3 - a * u ** 3) % 27 == 0:
                brute.add(u)
        assert brute == solver_set


def test_solve_exponential_rejects_p2():
    with pytest.raises(UnsupportedPrime):
        solve_exponential(get_params(2, 1, 8).from_int(1))


def test_enumerate_constants_frozen_and_properties():
    P = get_params(5, 1, 2)
    assert sorted(z.coeffs[0] for z in enumerate_constants(P)) == [1, 7, 18, 24]
    P9 = get_params(3, 2, 8)
    consts = enumerate_constants(P9)
    assert len(consts) == 8
    for z in consts:
        assert z ** 8 == 1
        assert fermat_quotient(z) == 0
    # distinct mod p
    assert len({z.residue().coeffs for z in consts}) == 8


# ---------------------------------------------------------------------------
# difference family

def test_difference_eps_one_and_fixed_ring():
    P = get_params(3, 2, 3)
    assert solve_difference(P.one()) == 1
    # exhaustive: phi(u) = u on units of Z_9/27 picks out exactly the units
    # of Z/27 embedded as constant polynomials
    fixed = set()
    for a in range(27):
        for b in range(27):
            if a % 3 == 0 and b % 3 == 0:
                continue
            u = P.from_coeffs((a, b), prec=3)
            if frobenius(u) == u:
                fixed.add((a, b))
    expected = {(a, 0) for a in range(27) if a % 3 != 0}
    assert fixed == expected


def test_difference_teichmuller_identity():
    for p, f in [(3, 2), (5, 2)]:
        P = get_params(p, f, 8)
        zeta = teichmuller(P.gen().residue())
        eps = zeta ** (p - 1)
        assert frobenius(zeta) == eps * zeta
        u = solve_difference(eps)
        assert not isinstance(u, Obstruction)
        assert frobenius(u) == eps * u


def test_difference_mod_p_obstruction_for_generator():
    P = get_params(3, 2, 10)
    gbar = P.gen().residue()
    # oracle: no element of F_9 squares to the generator (exhaustive)
    squares = set()
    for a in range(3):
        for b in range(3):
            x = P.fq((a, b))
            squares.add((x * x).coeffs)
    assert gbar.coeffs not in squares
    result = solve_difference(P.gen() + 0)
    assert isinstance(result, Obstruction)
    assert result.stage == "mod-p"
    assert result.kind == "power-residue"
    # witness recheck: eps_bar^((q-1)/gcd) really is not 1
    assert gbar ** result.exponent == result.witness
    assert result.witness != P.fq_from_int(1)


def test_difference_trace_obstruction_witness_rechecks():
    P = get_params(3, 2, 8)
    rng = random.Random(5)
    seen_trace = False
    for _ in range(60):
        eps = random_element(P, rng, unit=True)
        result = solve_difference(eps)
        if isinstance(result, Obstruction) and result.kind == "trace":
            seen_trace = True
            k, u = result.stage, result.partial
            assert frobenius(u) * (eps * u).inv() - 1 == P.zero(k + 0)
            d = (frobenius(u) * (eps * u).inv() - 1).exact_div_p(k)
            assert -d.residue() == result.witness
            assert result.witness.trace() == result.trace != 0
            break
    assert seen_trace


def test_difference_phi_norm_consistency():
    P = get_params(3, 2, 4)
    rng = random.Random(6)
    for _ in range(40):
        eps = random_element(P, rng, unit=True)
        if phi_norm(eps) != 1:
            assert isinstance(solve_difference(eps), Obstruction)


def test_difference_rejects_non_units_and_works_at_p2():
    P = get_params(3, 2, 8)
    with pytest.raises(NonUnit):
        solve_difference(P.from_int(3))
    # no exp is involved, so p = 2 is allowed here
    P2 = get_params(2, 2, 6)
    u = solve_difference(P2.one())
    assert frobenius(u) == u
    zero = ZqMatrix(((P2.zero(),),))
    m = solve_matrix_linear(zero)
    assert m.entries[0][0] == 1


def test_difference_solution_survives_norm_one_inputs():
    # eps built as phi(v)/v always has norm 1 and must be solvable
    P = get_params(5, 2, 8)
    rng = random.Random(7)
    for _ in range(10):
        v = random_element(P, rng, unit=True)
        eps = frobenius(v) * v.inv()
        u = solve_difference(eps)
        assert not isinstance(u, Obstruction)
        assert frobenius(u) == eps * u


# ---------------------------------------------------------------------------
# matrix family

def _rand_matrix(P, rng, n):
    return ZqMatrix(tuple(tuple(random_element(P, rng) for _ in range(n))
                          for _ in range(n)))


def test_matrix_residual_and_determinism():
    P = get_params(5, 1, 10)
    rng = random.Random(8)
    beta = _rand_matrix(P, rng, 2)
    u1 = solve_matrix_linear(beta)
    u2 = solve_matrix_linear(beta)
    assert u1 == u2
    assert verify_matrix_linear(u1, beta) >= 9


def test_matrix_beta_zero_gives_teichmuller_entries():
    P = get_params(5, 1, 10)
    zero = ZqMatrix(tuple(tuple(P.zero() for _ in range(2)) for _ in range(2)))
    seed = ((P.fq_from_int(2), P.fq_from_int(0)),
            (P.fq_from_int(1), P.fq_from_int(3)))
    u = solve_matrix_linear(zero, seed)
    for i in range(2):
        for j in range(2):
            assert u.entries[i][j] == teichmuller(seed[i][j])
            assert fermat_quotient(u.entries[i][j]) == 0


def test_matrix_n1_matches_scalar_family():
    P = get_params(5, 1, 10)
    rng = random.Random(9)
    for _ in range(5):
        b = random_element(P, rng)
        beta = ZqMatrix(((b,),))
        fam = solve_exponential(ExponentialProblem.from_alpha(b).beta)
        for a in range(1, 5):
            u = solve_matrix_linear(beta, ((P.fq_from_int(a),),)).entries[0][0]
            member = teichmuller(P.fq_from_int(a)) * fam.base
            assert agreement_precision(u, member) >= 9


def test_matrix_singular_seed_rejected():
    P = get_params(5, 1, 10)
    rng = random.Random(10)
    beta = _rand_matrix(P, rng, 2)
    seed = ((P.fq_from_int(1), P.fq_from_int(2)),
            (P.fq_from_int(2), P.fq_from_int(4)))
    with pytest.raises(SingularSeed):
        solve_matrix_linear(beta, seed)


def test_matrix_solutions_form_torsor_over_seeds():
    # distinct invertible seeds give solutions distinct mod p
    P = get_params(3, 1, 6)
    rng = random.Random(11)
    beta = _rand_matrix(P, rng, 2)
    seeds = [((1, 0), (0, 1)), ((2, 0), (0, 1)), ((1, 1), (0, 1))]
    sols = []
    for s in seeds:
        grid = tuple(tuple(P.fq_from_int(x) for x in row) for row in s)
        u = solve_matrix_linear(beta, grid)
        assert u.residues() == grid
        sols.append(u)
    assert len({tuple(e.coeffs for row in u.entries for e in row) for u in sols}) == 3


def test_matrix_functional_hook_reproduces_linear_case():
    # Phi(u) = u^(p) expressed as order-0 series in the 4 matrix entries
    P = get_params(5, 1, 8)
    rng = random.Random(12)
    beta = _rand_matrix(P, rng, 2)
    n = 2
    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            exps = tuple(P.p if (i * n + j) == k else 0 for k in range(n * n))
            row.append(RestrictedSeries(order=0, arity=n * n,
                                        terms=((exps, P.one()),)))
        grid.append(tuple(row))
    u_hook = solve_matrix_functional(beta, tuple(grid))
    u_lin = solve_matrix_linear(beta)
    assert u_hook == u_lin
