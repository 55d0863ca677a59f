"""Blowup of C^2 at the origin: edge factors, fixed-point weights, the blowup
partition function in instanton coordinates, its gap bounds, and the
recursive determination of F^inst from the c_1 = 0 equation.

Couplings: the blowup ring carries tau_2..tau_P (deg p-1) and t_1..t_P
(deg p).  tau_1 has degree 0 and is left out; its dependence is fixed by the
q-shift law and including it would only repeat each identity with q -> q e^{-x}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .combinatorics import CorootVector, enumerate_coroots, norm
from .exactalg import DomainError, GradedPoly, Linear, RatFunc, Series
from .localization import Params, tangent_weights, zinst

Q = Fraction


# ---------------------------------------------------------------------------
# edge factors


def s_factor_forms(k: int, e1, e2, x) -> list:
    """Factors of s^k(e1, e2, x)."""
    out = []
    if k > 0:
        for i in range(k):
            for j in range(k - i):
                out.append(x - e1 * i - e2 * j)
    elif k < -1:
        for i in range(-k - 1):
            for j in range(-k - 1 - i):
                out.append(e1 * (i + 1) + e2 * (j + 1) + x)
    return out


def _product(factors, one):
    out = one
    for f in factors:
        out = out * f
    return out


def s_factor(k: int, e1, e2, x):
    """s^k(e1, e2, x): a Fraction for rational input, a RatFunc if any input is a Linear form."""
    forms = s_factor_forms(k, e1, e2, x)
    if any(isinstance(v, Linear) for v in (e1, e2, x)):
        p = RatFunc.const(1)
        for f in forms:
            p = p * (RatFunc.from_poly(f.poly()) if isinstance(f, Linear) else RatFunc.const(f))
        return p
    return _product(forms, Q(1))


def l_forms(kvec: Sequence[int], alpha: int, beta: int, params: Params) -> list:
    """Factors of l^k_{alpha,beta} = s^{k_alpha - k_beta}(e1, e2, a_beta - a_alpha)."""
    k = kvec[alpha - 1] - kvec[beta - 1]
    return s_factor_forms(k, params.e1, params.e2, params.a[beta - 1] - params.a[alpha - 1])


def l_all_forms(kvec: Sequence[int], params: Params) -> list:
    r = len(kvec)
    out = []
    for alpha in range(1, r + 1):
        for beta in range(1, r + 1):
            if alpha != beta:
                out.extend(l_forms(kvec, alpha, beta, params))
    return out


# ---------------------------------------------------------------------------
# fixed points of the blowup


@dataclass(frozen=True)
class BlowupFixedPoint:
    coroot: CorootVector
    first: tuple
    second: tuple

    def __post_init__(self):
        r = self.coroot.rank
        if len(self.first) != r or len(self.second) != r:
            raise DomainError("diagram tuples must have length r")

    @property
    def instanton_number(self) -> Fraction:
        e = self.coroot.entries
        r = len(e)
        lattice = Q(sum((e[a] - e[b]) ** 2 for a in range(r) for b in range(a + 1, r)), 2 * r)
        return sum(Y.size for Y in self.first) + sum(Y.size for Y in self.second) + lattice

    def check_condition(self) -> bool:
        """n - k(r-k)/(2r) is a nonnegative integer."""
        r, k = self.coroot.rank, self.coroot.sector % self.coroot.rank
        d = self.instanton_number - Q(k * (r - k), 2 * r)
        return d >= 0 and d.denominator == 1


def shifted_params(params: Params, shifted: Sequence, which: int) -> Params:
    """(e1, e2-e1, a+e1 k) for which = 1 and (e1-e2, e2, a+e2 k) for which = 2."""
    e1, e2 = params.e1, params.e2
    if which == 1:
        return params.substitute(e1, e2 - e1, [e1 * x for x in shifted])
    return params.substitute(e1 - e2, e2, [e2 * x for x in shifted])


def blowup_tangent_weights(fp: BlowupFixedPoint, alpha: int, beta: int, params: Params) -> list:
    """Weights of the (alpha, beta) summand of the tangent space at fp.

    L-part (the l-factor of the edge) followed by the two N-parts with the
    substituted parameters.  The shifted coroot is used inside a + e k so that
    the a's stay trace free; only differences enter the weights.
    """
    shifted = fp.coroot.shifted
    out = list(l_forms(fp.coroot.entries, alpha, beta, params))
    out.extend(tangent_weights(fp.first, alpha, beta, shifted_params(params, shifted, 1)))
    out.extend(tangent_weights(fp.second, alpha, beta, shifted_params(params, shifted, 2)))
    return out


def blowup_all_weights(fp: BlowupFixedPoint, params: Params) -> list:
    r = fp.coroot.rank
    out = []
    for alpha in range(1, r + 1):
        for beta in range(1, r + 1):
            out.extend(blowup_tangent_weights(fp, alpha, beta, params))
    return out


# ---------------------------------------------------------------------------
# blowup partition function


def blowup_ring(P: int, degree_bound: int) -> GradedPoly:
    """Zero of the ring in tau_2..tau_P, t_1..t_P truncated at weighted degree degree_bound."""
    names = [f"tau{p}" for p in range(2, P + 1)] + [f"t{p}" for p in range(1, P + 1)]
    weights = [p - 1 for p in range(2, P + 1)] + list(range(1, P + 1))
    return GradedPoly(names, weights, degree_bound, {})


def _couplings(ring: GradedPoly, P: int, eps, one) -> dict:
    """tau_p + eps t_p for p = 1..P, with tau_1 = 0."""
    out = {}
    for p in range(1, P + 1):
        c = ring.var(f"t{p}", one) * eps
        if p >= 2:
            c = c + ring.var(f"tau{p}", one)
        out[p] = c
    return out


def _tau_couplings(ring: GradedPoly, P: int, one) -> dict:
    return {p: ring.var(f"tau{p}", one) for p in range(2, P + 1)}


def zhat_inst(r: int, k: int, params: Params, q_order, degree_bound: int,
              P: int | None = None, coroots: list | None = None) -> Series:
    """Blowup partition function in sector k through q^q_order.

    Coefficients are GradedPolys in tau_2.., t_1.. keeping weighted degree
    <= degree_bound.  Exponents are recorded with denominator 2r.
    """
    if not 0 <= k < r:
        raise DomainError(f"sector must satisfy 0 <= k < r, got {k}")
    P = 2 * r - 1 if P is None else P
    ring = blowup_ring(P, degree_bound)
    one = params.one()
    q_order = Q(q_order)
    den = 2 * r
    if coroots is None:
        coroots = enumerate_coroots(r, k, q_order)
    terms: dict = {}
    for kv in coroots:
        half = norm(kv) / 2
        if half > q_order:
            continue
        lf = l_all_forms(kv.entries, params)
        inv_l = params.inverse_product(lf)
        room = int(q_order - half)
        pa = shifted_params(params, kv.shifted, 1)
        pb = shifted_params(params, kv.shifted, 2)
        za = zinst(r, pa, room, ring=ring, couplings=_couplings(ring, P, params.lift(pa.e1), one))
        zb = zinst(r, pb, room, ring=ring, couplings=_couplings(ring, P, params.lift(pb.e2), one))
        prod = za * zb
        base = half * den
        for e, c in prod.terms.items():
            key = int(base) + e * den
            val = c * inv_l
            terms[key] = terms[key] + val if key in terms else val
    return Series(terms, int(q_order * den) + 1, den)


def zinst_in_blowup_ring(r: int, params: Params, q_order: int, degree_bound: int,
                         P: int | None = None) -> Series:
    """Z^inst(e1, e2, a; q, tau) with coefficients in the blowup ring."""
    P = 2 * r - 1 if P is None else P
    ring = blowup_ring(P, degree_bound)
    z = zinst(r, params, q_order, ring=ring, couplings=_tau_couplings(ring, P, params.one()))
    return z.with_den(2 * r)


@dataclass
class GapReport:
    rank: int
    sector: int
    q_order: object
    degree_bound: int
    violations: list = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {"rank": self.rank, "sector": self.sector, "q_order": str(self.q_order),
                "degree_bound": self.degree_bound, "checked_coefficients": self.checked,
                "violations": [{"q_exponent": str(e), "monomial": m, "value": str(v)}
                               for e, m, v in self.violations],
                "pass": self.passed}


def gap_bound(r: int, k: int) -> int:
    """Weighted degree below which the sector-k equation is exact."""
    return 2 * r if k == 0 else k * (r - k)


def check_blowup_gap(r: int, k: int, params: Params, q_order, P: int | None = None) -> GapReport:
    """Compare Zhat with Z (k = 0) or with 0 (k > 0) below the gap degree."""
    bound = gap_bound(r, k)
    report = GapReport(r, k, q_order, bound)
    if bound == 0:
        return report
    zh = zhat_inst(r, k, params, q_order, bound - 1, P)
    diff = zh
    if k == 0:
        diff = zh - zinst_in_blowup_ring(r, params, int(q_order), bound - 1, P)
    for e in range(diff.prec):
        report.checked += 1
        c = diff.terms.get(e)
        if c is None:
            continue
        for mono, v in sorted(c.terms.items()):
            report.violations.append((Q(e, diff.den), c.monomial_str(mono), v))
    return report


# ---------------------------------------------------------------------------
# recursion


def _point_key(params: Params) -> tuple:
    return (params.e1, params.e2, tuple(params.a))


def _tau_ring(r: int, P: int) -> GradedPoly:
    names = [f"tau{p}" for p in range(2, P + 1)]
    return GradedPoly(names, [p - 1 for p in range(2, P + 1)], max(2 * r - 3, 0), {})


class _Recursion:
    """Memoized q-coefficients z_n(params) of Z^inst from the blowup equation.

    Only the q^0 term (the perturbative exponential) is used as input.  At
    order n the t_1 and t_1^2 coefficients of the c_1 = 0 equation (with
    tau_1 = 0 and t_p = 0 for p > 1) form a 2x2 system for the two unknown
    order-n coefficients of the shifted partition functions; the t_1^0
    coefficient then gives z_n.  The shift law
    Z(tau_1 = x) = exp(x sum a^2 / (2 e1 e2)) Z(q e^{-x}) turns the t_1
    dependence into explicit exponentials.
    """

    def __init__(self, r: int, P: int):
        self.r = r
        self.P = P
        self.ring = _tau_ring(r, P)
        self.cache: dict = {}

    def z0(self, params: Params) -> GradedPoly:
        ring = self.ring
        expo = ring.zero()
        ee = params.e1 * params.e2
        for p in range(2, self.P + 1):
            s = sum((x ** (p + 1) for x in params.a), Q(0)) / (factorial(p + 1) * ee)
            expo = expo + ring.var(f"tau{p}", Q(1)) * s
        return expo.exp()

    def coeff(self, n: int, params: Params) -> GradedPoly:
        key = (n, _point_key(params))
        if key in self.cache:
            return self.cache[key]
        val = self.z0(params) if n == 0 else self._solve(n, params)
        self.cache[key] = val
        return val

    def _pieces(self, n: int, params: Params, with_unknowns: bool):
        """Sum over coroots of t_1^j coefficients (j = 0, 1, 2) at q^n.

        The two terms that contain order-n unknowns are skipped unless
        ``with_unknowns``; they are returned separately.
        """
        r = self.r
        e1, e2 = params.e1, params.e2
        acc = [self.ring.zero() for _ in range(3)]
        for kv in enumerate_coroots(r, 0, n):
            half = norm(kv) / 2
            rest = n - int(half)
            ks = kv.entries
            inv_l = params.inverse_product(l_all_forms(ks, params))
            pa = shifted_params(params, ks, 1)
            pb = shifted_params(params, ks, 2)
            A = (sum(x * x for x in pa.a) - sum(x * x for x in pb.a)) / (2 * (e2 - e1))
            for m1 in range(rest + 1):
                m2 = rest - m1
                if not with_unknowns and half == 0 and (m1 == n or m2 == n):
                    continue
                prod = self.coeff(m1, pa) * self.coeff(m2, pb) * inv_l
                lam = A - e1 * m1 - e2 * m2
                acc[0] = acc[0] + prod
                acc[1] = acc[1] + prod * lam
                acc[2] = acc[2] + prod * (lam * lam / 2)
        return acc

    def _solve(self, n: int, params: Params) -> GradedPoly:
        e1, e2 = params.e1, params.e2
        if e1 == 0 or e2 == 0 or e1 == e2:
            raise DomainError("recursion needs e1, e2 nonzero and distinct")
        pa = shifted_params(params, [0] * self.r, 1)
        pb = shifted_params(params, [0] * self.r, 2)
        known = self._pieces(n, params, with_unknowns=False)
        # unknown terms: X = za_n zb_0, Y = za_0 zb_n contribute
        # X (-e1 n)^j / j! + Y (-e2 n)^j / j! to the t^j coefficient, which must vanish for j = 1, 2.
        r1 = known[1]
        r2 = known[2]
        # -n (e1 X + e2 Y) = -r1 ; n^2 (e1^2 X + e2^2 Y) / 2 = -r2
        s1 = r1 / n
        s2 = r2 * Q(-2) / (n * n)
        X = (s1 * e2 - s2) / (e1 * (e2 - e1))
        Y = (s1 * e1 - s2) / (e2 * (e1 - e2))
        za = X * self.coeff(0, pb).inverse()
        zb = Y * self.coeff(0, pa).inverse()
        self.cache[(n, _point_key(pa))] = za
        self.cache[(n, _point_key(pb))] = zb
        return known[0] + X + Y


def recursive_solve(r: int, params: Params, q_order: int, P: int | None = None) -> Series:
    """F^inst q-coefficients from the blowup recursion (evaluated mode).

    Returns e1 e2 log Z with Z rebuilt from the recursively determined
    coefficients; the q^0 term is the tau-linear perturbative piece.  Valid
    through tau-degree 2r - 3.
    """
    if params.symbolic_mode:
        raise DomainError("recursive_solve works at sampled parameters")
    if q_order < 0:
        raise DomainError("q_order must be nonnegative")
    P = 2 * r - 1 if P is None else P
    rec = _Recursion(r, P)
    coeffs = {m: rec.coeff(m, params) for m in range(q_order + 1)}
    z = Series(coeffs, q_order + 1)
    z0 = coeffs[0]
    ee = params.e1 * params.e2
    # log Z = log z0 + log(Z / z0); z0 = exp(linear) so its log is the exponent
    lin = rec.ring.zero()
    for p in range(2, P + 1):
        s = sum((x ** (p + 1) for x in params.a), Q(0)) / (factorial(p + 1))
        lin = lin + rec.ring.var(f"tau{p}", Q(1)) * s
    return (z * z0.inverse()).log() * ee + lin


def direct_finst(r: int, params: Params, q_order: int, P: int | None = None) -> Series:
    """finst by localization in the recursion's ring (tau_1 = 0)."""
    P = 2 * r - 1 if P is None else P
    ring = _tau_ring(r, P)
    return _finst(r, params, q_order, ring, P)


def _finst(r, params, q_order, ring, P):
    from .localization import finst
    return finst(r, params, q_order, ring=ring, couplings=_tau_couplings(ring, P, params.one()))
