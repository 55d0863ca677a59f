"""F_0, H, G, F_1 from the small-epsilon expansion of F = e1 e2 log Z, contact
terms, and the rank-2 comparisons with the Seiberg-Witten side.

Conventions for r = 2: a = a_1 = -a_2, q = Lambda^4 and v = q / a^4.  The
instanton part of F_0 at q^n is c_n a^{2-4n}; that of G and F_1 is c'_n a^{-4n}.
The perturbative parts come from :mod:`instanton.perturb`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .blowup import recursive_solve
from .exactalg import (DomainError, GradedPoly, PoleError, Poly, RatFunc, Series,
                       UnsupportedError, rational_sample)
from .localization import Params, coupling_ring, finst, zinst
from .perturb import LogPoly, perturbative_parts
from .swcurve import (genus_one_sw_series, mirror_map, push_forward, theta01_q,
                      u_over_a2)

Q = Fraction


def _ratfunc(c) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    return RatFunc.const(Q(c))


def _graded_items(c) -> dict:
    """{exponent tuple: coefficient} of a q-coefficient; () for a bare scalar."""
    if isinstance(c, GradedPoly):
        return dict(c.terms)
    return {(): c} if c != 0 else {}


def _mono_key(ring_names: Sequence[str], exps) -> tuple:
    return tuple((n, e) for n, e in zip(ring_names, exps) if e)


# ---------------------------------------------------------------------------
# the epsilon expansion


@dataclass
class EpsilonExpansion:
    """Taylor data of F^inst at e1 = e2 = 0, per a-sample and q-order.

    ``data[s][n]`` maps a coupling monomial (tuple of (name, power) pairs,
    empty for the constant part) to the Taylor polynomial in (e1, e2).
    """

    rank: int
    q_order: int
    tau_degree: int
    eps_degree: int
    samples: list
    data: list
    regular: bool = True
    violations: list = field(default_factory=list)

    def taylor(self, s: int, n: int, mono: tuple = ()) -> Poly:
        return self.data[s].get(n, {}).get(mono, Poly(2))

    def raw(self, s: int, n: int, i: int, j: int, mono: tuple = ()):
        return self.taylor(s, n, mono).coeff((i, j))

    def F0(self, s, n, mono=()):
        return self.raw(s, n, 0, 0, mono)

    def H(self, s, n, mono=()):
        return self.raw(s, n, 1, 0, mono)

    def G(self, s, n, mono=()):
        return self.raw(s, n, 2, 0, mono)

    def F1(self, s, n, mono=()):
        return self.raw(s, n, 1, 1, mono) - 2 * self.G(s, n, mono)

    def expansion_form_ok(self) -> bool:
        """Degree <= 2 data has the shape F0 + (e1+e2)H + (e1+e2)^2 G + e1 e2 F1."""
        for per in self.data:
            for by_mono in per.values():
                for p in by_mono.values():
                    if p.coeff((1, 0)) != p.coeff((0, 1)) or p.coeff((2, 0)) != p.coeff((0, 2)):
                        return False
        return True

    def as_dict(self) -> dict:
        out = {"rank": self.rank, "q_order": self.q_order, "tau_degree": self.tau_degree,
               "regular": self.regular, "violations": self.violations,
               "expansion_form": self.expansion_form_ok(), "samples": []}
        for s, a in enumerate(self.samples):
            rows = []
            for n in range(self.q_order + 1):
                rows.append({"n": n, "F0": str(self.F0(s, n)), "H": str(self.H(s, n)),
                             "G": str(self.G(s, n)), "F1": str(self.F1(s, n))})
            out["samples"].append({"a": [str(x) for x in a], "coefficients": rows})
        return out


def expand_F(r: int, a_samples: Sequence[Sequence], q_order: int, tau_degree: int = 0,
             eps_degree: int = 2, ring: GradedPoly | None = None) -> EpsilonExpansion:
    """Taylor data of e1 e2 log Z^inst at the origin, epsilon kept symbolic.

    A pole at e1 = e2 = 0 is recorded as a regularity violation instead of
    raising, since regularity is one of the things being tested.
    """
    if eps_degree < 2:
        raise DomainError("eps_degree must be at least 2")
    if ring is None:
        ring = coupling_ring(2 * r - 1, tau_degree)
    data, violations = [], []
    for a in a_samples:
        if len(a) != r or sum(a) != 0:
            raise DomainError(f"a-sample {a} must have {r} entries summing to 0")
        F = finst(r, Params.symbolic(a), q_order, ring=ring)
        per: dict = {}
        for n in range(q_order + 1):
            by_mono = {}
            for exps, c in _graded_items(F.coeff(n)).items():
                mono = _mono_key(ring.names, exps) if exps else ()
                try:
                    by_mono[mono] = _ratfunc(c).taylor(eps_degree)
                except PoleError as err:
                    violations.append({"a": [str(x) for x in a], "n": n,
                                       "monomial": str(mono), "factor": repr(err.factor)})
            per[n] = by_mono
        data.append(per)
    return EpsilonExpansion(r, q_order, tau_degree, eps_degree, [tuple(a) for a in a_samples],
                            data, not violations, violations)


def default_a_samples(r: int, count: int, seed: int = 0) -> list:
    return [rational_sample(seed + i, r, symbolic_eps=True).a for i in range(count)]


def check_H_vanishes(r: int, q_order: int, seed: int = 0, samples: int = 3,
                     tau_degree: int | None = None) -> dict:
    """Z^inst(e, -2e) = Z^inst(2e, -e) at sampled (e, a), through tau-degree 2r - 3."""
    tau_degree = max(2 * r - 3, 0) if tau_degree is None else tau_degree
    bad = []
    for i in range(samples):
        s = rational_sample(seed + i, r)
        e = s.e1
        z1 = zinst(r, Params(e, -2 * e, s.a), q_order, tau_degree=tau_degree)
        z2 = zinst(r, Params(2 * e, -e, s.a), q_order, tau_degree=tau_degree)
        d = z1.first_difference(z2)
        if d is not None:
            bad.append({"sample": s.as_dict(), "first_bad_exponent": str(d)})
    return {"check": "H-instanton-vanishes", "pass": not bad, "rank": r, "q_order": q_order,
            "tau_degree": tau_degree, "failures": bad}


# ---------------------------------------------------------------------------
# rank-2 reconstruction


def reconstruct_rank2(exp: EpsilonExpansion) -> dict:
    """Fit F0_n = c_n a^{2-4n}, G_n = g_n a^{-4n}, F1_n = h_n a^{-4n} at every sample.

    The fit is consistent when all samples give the same c_n, g_n, h_n.
    """
    if exp.rank != 2:
        raise UnsupportedError("monomial reconstruction is for rank 2")
    table = {"F0": [], "G": [], "F1": [], "H": []}
    consistent = True
    for n in range(exp.q_order + 1):
        vals = {k: set() for k in table}
        for s, a in enumerate(exp.samples):
            x = a[0]
            vals["F0"].add(exp.F0(s, n) / x ** (2 - 4 * n))
            vals["G"].add(exp.G(s, n) / x ** (-4 * n))
            vals["F1"].add(exp.F1(s, n) / x ** (-4 * n))
            vals["H"].add(exp.H(s, n) / x ** (1 - 4 * n))
        for k in table:
            if len(vals[k]) != 1:
                consistent = False
                table[k].append(None)
            else:
                table[k].append(vals[k].pop())
    euler = all((2 - 4 * n) + 4 * n == 2 for n in range(exp.q_order + 1))
    return {"consistent": consistent and len(exp.samples) >= 2, "euler_homogeneity": euler,
            "F0": table["F0"], "G": table["G"], "F1": table["F1"], "H": table["H"]}


def _series_in_v(coeffs: Sequence, order: int) -> Series:
    return Series({n: c for n, c in enumerate(coeffs) if n <= order}, order + 1, var="v")


def _first_mismatch(lhs: Series, rhs: Series):
    d = lhs.first_difference(rhs)
    if d is None:
        return None
    return {"exponent": str(d), "lhs": str(lhs.coeff(d)), "rhs": str(rhs.coeff(d))}


# ---------------------------------------------------------------------------
# contact terms


def contact_terms(r: int, a: Sequence, q_order: int, tau_degree: int = 2,
                  P: int | None = None) -> dict:
    """T_{p,q} = (1/2) d^2 F_0 / d tau_p d tau_q at tau = 0, as q-series.

    Only pairs whose weighted degree (p-1)+(q-1) fits in ``tau_degree`` are
    returned; tau_1 needs its power cap >= 2, which the default ring gives.
    """
    P = 2 * r - 1 if P is None else P
    ring = coupling_ring(P, tau_degree)
    exp = expand_F(r, [a], q_order, tau_degree, ring=ring)
    out = {}
    for p in range(1, P + 1):
        for s in range(p, P + 1):
            if (p - 1) + (s - 1) > tau_degree:
                continue
            mono = ((f"tau{p}", 2),) if p == s else ((f"tau{p}", 1), (f"tau{s}", 1))
            factor = 1 if p == s else Q(1, 2)
            coeffs = {n: exp.F0(0, n, mono) * factor for n in range(q_order + 1)}
            val = Series(coeffs, q_order + 1)
            out[(p, s)] = val
            out[(s, p)] = val
    return out


def contact_term_checks(a: Sequence, q_order: int) -> dict:
    """Rank 2: T_{1,1} = (1/32)(Lambda d/dLambda)^2 F_0 and dF_0/dtau_1 = -q dF_0/dq."""
    ring = coupling_ring(1, 2)
    exp = expand_F(2, [a], q_order, 2, ring=ring)
    F0 = Series({n: exp.F0(0, n) for n in range(q_order + 1)}, q_order + 1)
    T11 = Series({n: exp.F0(0, n, (("tau1", 2),)) for n in range(q_order + 1)}, q_order + 1)
    dtau = Series({n: exp.F0(0, n, (("tau1", 1),)) for n in range(q_order + 1)}, q_order + 1)
    # Lambda d/dLambda = 4 q d/dq; the tau-independent perturbative F_0 drops out at n >= 1
    inst = Series({n: c for n, c in F0.terms.items() if n >= 1}, q_order + 1)
    rhs_T = inst.D().D() * Q(16, 32)
    rhs_d = -inst.D()
    dtau_inst = Series({n: c for n, c in dtau.terms.items() if n >= 1}, q_order + 1)
    m1 = _first_mismatch(T11, rhs_T)
    m2 = _first_mismatch(dtau_inst, rhs_d)
    return {"check": "contact-terms", "pass": m1 is None and m2 is None,
            "a": [str(x) for x in a], "q_order": q_order,
            "T11_mismatch": m1, "dtau1_mismatch": m2,
            "dtau1_q0": str(dtau.coeff(0)), "expected_dtau1_q0": str(a[0] ** 2)}


# ---------------------------------------------------------------------------
# rank-2 comparisons with the Seiberg-Witten side


def _require_rank2(r: int):
    if r != 2:
        raise UnsupportedError("the Seiberg-Witten comparison is implemented for rank 2")


def nekrasov_check(q_order: int, samples: int = 3, seed: int = 0, r: int = 2) -> dict:
    """Instanton coefficients of F_0 against the SW side: u/a^2 = 1 - sum n c_n v^n."""
    _require_rank2(r)
    a_samples = default_a_samples(2, samples, seed)
    exp = expand_F(2, a_samples, q_order)
    rec = reconstruct_rank2(exp)
    sw = u_over_a2(q_order)
    sw_c = [Q(0)] + [-sw.coeff(n) / n for n in range(1, q_order + 1)]
    per_sample = []
    ok = rec["consistent"]
    for s, a in enumerate(exp.samples):
        x = a[0]
        row = []
        for n in range(1, q_order + 1):
            lhs = exp.F0(s, n)
            rhs = sw_c[n] * x ** (2 - 4 * n)
            row.append({"n": n, "localization": str(lhs), "sw": str(rhs), "match": lhs == rhs})
            ok = ok and lhs == rhs
        per_sample.append({"a": [str(v) for v in a], "orders": row})
    mono_ok = rec["F0"][1:] == sw_c[1:]
    return {"check": "nekrasov-F0", "pass": ok and mono_ok, "q_order": q_order,
            "reconstructed": [str(c) for c in rec["F0"]], "sw": [str(c) for c in sw_c],
            "monomials_match": mono_ok, "samples": per_sample}


def matone_check(r: int, q_order: int, samples: int = 2, seed: int = 0) -> dict:
    """Lambda dF_0/dLambda = -4u and dF_0/dtau_1 = u, as Laurent coefficients in a."""
    _require_rank2(r)
    a_samples = default_a_samples(2, samples, seed)
    ring = coupling_ring(1, 1)
    exp = expand_F(2, a_samples, q_order, 1, ring=ring)
    rec = reconstruct_rank2(exp)
    sw = u_over_a2(q_order)
    # Lambda d/dLambda: perturbative -4 a^2 (closed form) plus 4 n c_n a^{2-4n}
    pert = perturbative_parts()["lambda_dF0"]
    pert_ok = pert == LogPoly.x(2, -4)
    lam = _series_in_v([Q(-4)] + [4 * n * rec["F0"][n] for n in range(1, q_order + 1)], q_order)
    m1 = _first_mismatch(lam, sw * -4)
    # dF_0/dtau_1 / a^2 per order, fitted at each sample
    dt_ok = True
    dts = []
    for n in range(q_order + 1):
        vals = {exp.F0(s, n, (("tau1", 1),)) / a[0] ** (2 - 4 * n) for s, a in enumerate(exp.samples)}
        dt_ok = dt_ok and len(vals) == 1
        dts.append(vals.pop() if len(vals) == 1 else None)
    m2 = _first_mismatch(_series_in_v(dts, q_order), sw) if dt_ok else {"exponent": "sample-inconsistent"}
    return {"check": "matone", "pass": rec["consistent"] and pert_ok and m1 is None and m2 is None,
            "q_order": q_order, "lambda_mismatch": m1, "tau1_mismatch": m2,
            "perturbative_lambda_dF0": repr(pert),
            "u_over_a2": [str(sw.coeff(n)) for n in range(q_order + 1)]}


def genus_one_check(q_order: int, samples: int = 2, seed: int = 0) -> dict:
    """Instanton G and F_1 against the SW genus-one series in v, and exp(G - F_1) = theta_01."""
    a_samples = default_a_samples(2, samples, seed)
    exp = expand_F(2, a_samples, q_order)
    rec = reconstruct_rank2(exp)
    sw = genus_one_sw_series(q_order)
    G = _series_in_v([Q(0)] + rec["G"][1:], q_order)
    F1 = _series_in_v([Q(0)] + rec["F1"][1:], q_order)
    mG = _first_mismatch(G, sw["G"])
    mF = _first_mismatch(F1, sw["F1"])
    # perturbative G and F_1 share the log term, so G - F_1 is purely instanton
    pert = perturbative_parts()
    pert_ok = pert["G"] == pert["F1"] == LogPoly.L(Q(1, 6))
    theta = push_forward(theta01_q(q_order + 1), mirror_map(q_order + 1)).truncate(q_order + 1)
    lhs = (G - F1).exp()
    mT = _first_mismatch(lhs, theta)
    return {"check": "genus-one", "pass": rec["consistent"] and pert_ok and mG is None and mF is None and mT is None,
            "q_order": q_order, "G_mismatch": mG, "F1_mismatch": mF, "theta01_mismatch": mT,
            "G": [str(c) for c in rec["G"]], "F1": [str(c) for c in rec["F1"]],
            "perturbative_log_coefficient": "1/6",
            "sw_log_a_coefficient": str(sw["log_a_coefficient"])}


def recursion_agreement(r: int, q_order: int, seed: int = 0) -> dict:
    """The symbolic localization F^inst, evaluated at a sample, equals the
    blowup recursion's output there (constant coupling parts)."""
    s = rational_sample(seed, r)
    ring = coupling_ring(2 * r - 1, 0)
    F = finst(r, Params.symbolic(s.a), q_order, ring=ring)
    R = recursive_solve(r, Params.evaluated(s), q_order)
    bad = None
    for n in range(1, q_order + 1):
        c = F.coeff(n)
        val = (c.constant() if isinstance(c, GradedPoly) else c)
        lhs = _ratfunc(val)(s.e1, s.e2)
        rc = R.coeff(n)
        rhs = rc.constant() if isinstance(rc, GradedPoly) else rc
        if lhs != rhs:
            bad = {"n": n, "localization": str(lhs), "recursion": str(rhs)}
            break
    return {"check": "recursion-agreement", "pass": bad is None, "rank": r,
            "q_order": q_order, "sample": s.as_dict(), "mismatch": bad}
