"""Canonical JSON object forms for every value the CLI reads or writes.

Elements travel as {p, f, prec, poly, coeffs} with coefficients as decimal
strings (the canonical representatives in [0, p^prec)), so fixtures do not
depend on any integer-width convention.  Digit expansions, restricted
series, matrices, solution families, certificates and obstructions reuse
that element form.  These layouts are the package's stable wire format; see
the README for the full schema.
"""

from __future__ import annotations

from .delta import RestrictedSeries
from .errors import DomainError, ParamsMismatch
from .relations import RelationCertificate
from .solvers import ZqMatrix
from .zq import PadicParams, TeichmullerDigits


def element_to_obj(u):
    return {
        "p": u.params.p,
        "f": u.params.f,
        "prec": u.prec,
        "poly": list(u.params.poly),
        "coeffs": [str(c) for c in u.coeffs],
    }


def element_from_obj(obj, params=None):
    """Rebuild an element; with ``params`` given, the object must match it."""
    p, f, prec = int(obj["p"]), int(obj["f"]), int(obj["prec"])
    if params is None:
        params = PadicParams(p, f, max(prec, 2), obj.get("poly"))
    else:
        if (p, f) != (params.p, params.f):
            raise ParamsMismatch(
                f"element is over (p={p}, f={f}), ring is (p={params.p}, f={params.f})")
        if "poly" in obj and tuple(int(c) for c in obj["poly"]) != params.poly:
            raise ParamsMismatch("element was serialized over a different modulus")
        if prec > params.N:
            raise DomainError(f"element precision {prec} exceeds the ring's {params.N}")
    coeffs = [int(c) for c in obj["coeffs"]]
    return params.from_coeffs(coeffs, prec)


def digits_to_obj(d):
    return {
        "p": d.params.p,
        "f": d.params.f,
        "prec": d.prec,
        "digits": [list(c.coeffs) for c in d.digits],
    }


def digits_from_obj(obj, params):
    return TeichmullerDigits(
        params, tuple(params.fq(c) for c in obj["digits"]))


def series_to_obj(s):
    return {
        "order": s.order,
        "arity": s.arity,
        "denominator": s.denominator,
        "terms": [
            {"exponents": list(e), "coeff": element_to_obj(c)} for e, c in s.terms
        ],
    }


def series_from_obj(obj, params):
    terms = tuple(
        (tuple(int(x) for x in t["exponents"]), element_from_obj(t["coeff"], params))
        for t in obj["terms"])
    return RestrictedSeries(
        order=int(obj["order"]), arity=int(obj["arity"]), terms=terms,
        denominator=bool(obj.get("denominator", False)))


def matrix_to_obj(m):
    return {
        "n": m.n,
        "prec": m.prec,
        "entries": [[[str(c) for c in e.coeffs] for e in row] for row in m.entries],
    }


def matrix_from_obj(obj, params, prec=None):
    entries = obj["entries"] if isinstance(obj, dict) else obj
    if prec is None and isinstance(obj, dict) and "prec" in obj:
        prec = int(obj["prec"])
    return ZqMatrix(tuple(
        tuple(params.from_coeffs([int(c) for c in e], prec) for e in row)
        for row in entries))


def exponential_certificate_to_obj(cert):
    return {
        "ok": cert.ok,
        "constants_count": cert.constants_count,
        "residual_precisions": {
            "frobenius_form": {"achieved": cert.phi_form[0], "available": cert.phi_form[1]},
            "delta_form": {"achieved": cert.delta_form[0], "available": cert.delta_form[1]},
            "psi_form": {"achieved": cert.psi_form[0], "available": cert.psi_form[1]},
            "teichmuller_ratio": {"achieved": cert.ratio[0], "available": cert.ratio[1]},
        },
    }


def obstruction_to_obj(o):
    out = {
        "stage": o.stage,
        "kind": o.kind,
        "witness": list(o.witness.coeffs),
    }
    if o.kind == "power-residue":
        out["exponent"] = o.exponent
    if o.kind == "trace":
        out["trace"] = o.trace
        out["partial"] = element_to_obj(o.partial)
    return out


def relation_certificate_to_obj(cert):
    return {
        "monomials": [list(e) for e in cert.monomials],
        "coeffs": list(cert.coeffs),
        "verified_precision": cert.verified_precision,
        "bounds": {
            "d": cert.deg_bound,
            "H": cert.height_bound,
            "M": cert.precision_bound,
        },
        "mode": cert.mode,
        "status": cert.status,
    }


def relation_certificate_from_obj(obj):
    return RelationCertificate(
        monomials=tuple(tuple(int(x) for x in e) for e in obj["monomials"]),
        coeffs=tuple(int(c) for c in obj["coeffs"]),
        verified_precision=int(obj["verified_precision"]),
        deg_bound=int(obj["bounds"]["d"]),
        height_bound=int(obj["bounds"]["H"]),
        precision_bound=int(obj["bounds"]["M"]),
        mode=obj["mode"],
        status=obj.get("status", "proven-congruence"))
