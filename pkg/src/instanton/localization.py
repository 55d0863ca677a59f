"""Torus localization on the framed moduli spaces M(r, n).

Two evaluation modes share the same code path:

* evaluated: e1, e2 and the a's are Fractions, every quantity is a Fraction;
* symbolic: e1, e2 are formal (``Linear`` forms), the a's are rational, and
  quantities are ``RatFunc`` values.

The a's may themselves be ``Linear`` forms (shifted by multiples of e1, e2),
which is what the blowup formula needs in symbolic mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .combinatorics import YoungDiagram, arm_leg, enumerate_tuples
from .exactalg import (E1, E2, GradedPoly, Linear, PoleError, Poly, RatFunc, Sample,
                       Series)

Q = Fraction


@dataclass(frozen=True)
class Params:
    e1: object
    e2: object
    a: tuple

    @classmethod
    def evaluated(cls, sample: Sample) -> "Params":
        return cls(sample.e1, sample.e2, tuple(sample.a))

    @classmethod
    def symbolic(cls, a: Sequence) -> "Params":
        return cls(E1, E2, tuple(Q(x) for x in a))

    @property
    def rank(self) -> int:
        return len(self.a)

    @property
    def symbolic_mode(self) -> bool:
        return isinstance(self.e1, Linear) or isinstance(self.e2, Linear)

    def substitute(self, e1, e2, shift: Sequence = None) -> "Params":
        """Parameters (e1, e2, a + shift) used by the blowup formula."""
        a = self.a if shift is None else tuple(x + s for x, s in zip(self.a, shift))
        return Params(e1, e2, a)

    # ring helpers ----------------------------------------------------------
    def one(self):
        return RatFunc.const(1) if self.symbolic_mode else Q(1)

    def lift(self, x):
        """Fraction / Linear / Poly -> element of the working ring."""
        if not self.symbolic_mode:
            return x
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Linear):
            return RatFunc.from_poly(x.poly())
        if isinstance(x, Poly):
            return RatFunc.from_poly(x)
        return RatFunc.const(x)

    def inverse_product(self, weights: Sequence):
        if self.symbolic_mode:
            forms = [w if isinstance(w, Linear) else Linear(w) for w in weights]
            return RatFunc.inverse_of_forms(forms)
        prod = Q(1)
        for w in weights:
            if w == 0:
                raise PoleError("vanishing weight", factor=w)
            prod *= w
        return 1 / prod

    def eps_product(self):
        """e1 * e2 in the working ring."""
        if self.symbolic_mode:
            return RatFunc.from_poly(self._poly(self.e1) * self._poly(self.e2))
        return self.e1 * self.e2

    def _poly(self, x):
        if isinstance(x, Linear):
            return x.poly()
        if isinstance(x, Poly):
            return x
        return Poly.const(2, Q(x))


def tangent_weights(Ys: Sequence[YoungDiagram], alpha: int, beta: int, params: Params) -> list:
    """Weights of N_{alpha,beta} at the fixed point Ys (alpha, beta are 1-based)."""
    Ya, Yb = Ys[alpha - 1], Ys[beta - 1]
    e1, e2 = params.e1, params.e2
    d = params.a[beta - 1] - params.a[alpha - 1]
    out = []
    for i, j in Ya.boxes():
        a_arm = arm_leg(Ya, i, j)[0]
        b_leg = arm_leg(Yb, i, j)[2]
        out.append(e1 * (-b_leg) + e2 * (a_arm + 1) + d)
    for i, j in Yb.boxes():
        a_leg = arm_leg(Ya, i, j)[2]
        b_arm = arm_leg(Yb, i, j)[0]
        out.append(e1 * (a_leg + 1) + e2 * (-b_arm) + d)
    return out


def weight_coefficients(Ys: Sequence[YoungDiagram], alpha: int, beta: int) -> list:
    """Integer (c, d) with weight c*e1 + d*e2 + a_beta - a_alpha."""
    Ya, Yb = Ys[alpha - 1], Ys[beta - 1]
    out = []
    for i, j in Ya.boxes():
        out.append((-arm_leg(Yb, i, j)[2], arm_leg(Ya, i, j)[0] + 1))
    for i, j in Yb.boxes():
        out.append((arm_leg(Ya, i, j)[2] + 1, -arm_leg(Yb, i, j)[0]))
    return out


def all_weights(Ys: Sequence[YoungDiagram], params: Params) -> list:
    r = len(Ys)
    out = []
    for alpha in range(1, r + 1):
        for beta in range(1, r + 1):
            out.extend(tangent_weights(Ys, alpha, beta, params))
    return out


def euler_class(Ys: Sequence[YoungDiagram], params: Params):
    """Product of all tangent weights."""
    ws = all_weights(Ys, params)
    if params.symbolic_mode:
        return _product_ratfunc(ws)
    prod = Q(1)
    for w in ws:
        prod *= w
    return prod


def _product_ratfunc(ws):
    p = Poly.const(2, Q(1))
    for w in ws:
        p = p * (w.poly() if isinstance(w, Linear) else Poly.const(2, Q(w)))
    return RatFunc.from_poly(p)


def inverse_euler(Ys: Sequence[YoungDiagram], params: Params):
    return params.inverse_product(all_weights(Ys, params))


# ---------------------------------------------------------------------------
# characters


def _exp_series(x, order: int, zero):
    """[1, x, x^2/2, ...] up to degree ``order``."""
    out = [zero + 1]
    for k in range(1, order + 1):
        out.append(out[-1] * x * Q(1, k))
    return out


def fixed_point_character(Ys: Sequence[YoungDiagram], params: Params, s_order: int) -> Series:
    """Grading expansion of sum_a e^{a_a}(1 - (1-t1)(1-t2) sum_s t1^{l'} t2^{a'}), t_i = e^{-e_i}.

    Coefficient of s^p is the degree-p part.  Coefficients are Fractions in
    evaluated mode and polynomials in (e1, e2) in symbolic mode.

    The box monomials are written in t_i = e^{-e_i}: this is the reading
    compatible with the tangent weights of ``tangent_weights`` (with e^{+e_i}
    the blowup equations fail in the couplings odd in a).  Even-degree data,
    e.g. ch_2 = sum a^2/2 - n e1 e2, is the same in both readings.
    """
    zero = Poly(2) if params.symbolic_mode else Q(0)
    e1 = -(params._poly(params.e1) if params.symbolic_mode else params.e1)
    e2 = -(params._poly(params.e2) if params.symbolic_mode else params.e2)
    lift = (lambda x: params._poly(x)) if params.symbolic_mode else (lambda x: x)
    total = [zero for _ in range(s_order + 1)]
    x1 = _exp_series(e1, s_order, zero)
    x2 = _exp_series(e2, s_order, zero)
    # (1 - t1)(1 - t2) graded pieces
    f1 = [zero] + [-x1[k] for k in range(1, s_order + 1)]
    f2 = [zero] + [-x2[k] for k in range(1, s_order + 1)]
    box_factor = [zero for _ in range(s_order + 1)]
    for i in range(s_order + 1):
        for j in range(s_order + 1 - i):
            box_factor[i + j] = box_factor[i + j] + f1[i] * f2[j]
    for alpha, Y in enumerate(Ys):
        a = lift(params.a[alpha])
        ea = _exp_series(a, s_order, zero)
        inner = [zero for _ in range(s_order + 1)]
        inner[0] = zero + 1
        bsum = [zero for _ in range(s_order + 1)]
        for i, j in Y.boxes():
            _, ap, _, lp = arm_leg(Y, i, j)
            w = e1 * lp + e2 * ap
            ew = _exp_series(w, s_order, zero)
            for k in range(s_order + 1):
                bsum[k] = bsum[k] + ew[k]
        for i in range(s_order + 1):
            for j in range(s_order + 1 - i):
                inner[i + j] = inner[i + j] - box_factor[i] * bsum[j]
        for i in range(s_order + 1):
            for j in range(s_order + 1 - i):
                total[i + j] = total[i + j] + ea[i] * inner[j]
    return Series({k: c for k, c in enumerate(total)}, s_order + 1, var="s")


def ch_reduced(Ys: Sequence[YoungDiagram], params: Params, pmax: int) -> list:
    """[ch_{p+1}/[C^2]] at Ys minus its value at the empty tuple, p = 1..pmax.

    The difference is a polynomial: -sum_a sum_s [e^{a_a - l' e1 - a' e2}
    (1-e^{-e1})(1-e^{-e2})/(e1 e2)]_{p-1}.
    """
    symbolic = params.symbolic_mode
    zero = Poly(2) if symbolic else Q(0)
    # box monomials carry t_i = e^{-e_i}, see fixed_point_character
    e1 = -(params._poly(params.e1) if symbolic else params.e1)
    e2 = -(params._poly(params.e2) if symbolic else params.e2)
    m = max(pmax - 1, 0)
    # g(x) = (e^x - 1)/x graded pieces
    g1 = [zero + 1]
    g2 = [zero + 1]
    for k in range(1, m + 1):
        g1.append(g1[-1] * e1 * Q(1, k + 1))
        g2.append(g2[-1] * e2 * Q(1, k + 1))
    gg = [zero for _ in range(m + 1)]
    for i in range(m + 1):
        for j in range(m + 1 - i):
            gg[i + j] = gg[i + j] + g1[i] * g2[j]
    acc = [zero for _ in range(m + 1)]
    for alpha, Y in enumerate(Ys):
        a = params._poly(params.a[alpha]) if symbolic else params.a[alpha]
        for i, j in Y.boxes():
            _, ap, _, lp = arm_leg(Y, i, j)
            ew = _exp_series(a + e1 * lp + e2 * ap, m, zero)
            for x in range(m + 1):
                for y in range(m + 1 - x):
                    acc[x + y] = acc[x + y] + ew[x] * gg[y]
    return [params.lift(-acc[p - 1]) for p in range(1, pmax + 1)]


def ch_empty(params: Params, pmax: int) -> list:
    """[ch_{p+1}/[C^2]] at the empty tuple: sum_a a^{p+1}/((p+1)! e1 e2)."""
    symbolic = params.symbolic_mode
    out = []
    inv = 1 / params.eps_product() if not symbolic else RatFunc.inverse_of_forms(
        [params.e1 if isinstance(params.e1, Linear) else Linear(params.e1),
         params.e2 if isinstance(params.e2, Linear) else Linear(params.e2)])
    for p in range(1, pmax + 1):
        s = Poly(2) if symbolic else Q(0)
        for a in params.a:
            x = params._poly(a) if symbolic else a
            s = s + x ** (p + 1) * Q(1, factorial(p + 1))
        out.append(params.lift(s) * inv)
    return out


# ---------------------------------------------------------------------------
# partition function


def coupling_ring(P: int, tau_degree: int) -> GradedPoly:
    """Zero element of the ring in tau_1..tau_P, deg tau_p = p - 1."""
    names = [f"tau{p}" for p in range(1, P + 1)]
    weights = [p - 1 for p in range(1, P + 1)]
    return GradedPoly(names, weights, tau_degree, {}, cap0=tau_degree)


def default_couplings(ring: GradedPoly, P: int, one) -> dict:
    return {p: ring.var(f"tau{p}", one) for p in range(1, P + 1)}


def zinst_reduced(r: int, params: Params, q_order: int, ring: GradedPoly,
                  couplings: dict | None = None) -> Series:
    """sum_Y q^|Y| exp(sum_p tau_p [ch_{p+1}]_reduced) / e(T_Y), q^0 coefficient 1.

    ``couplings`` maps p to the ring element substituted for tau_p.
    """
    one = params.one()
    if couplings is None:
        couplings = default_couplings(ring, len(ring.names), one)
    pmax = max(couplings) if couplings else 0
    terms = {0: ring.const(one)}
    for n in range(1, q_order + 1):
        acc = ring.zero()
        for Ys in enumerate_tuples(r, n):
            inv = inverse_euler(Ys, params)
            if couplings:
                chs = ch_reduced(Ys, params, pmax)
                expo = ring.zero()
                for p, tp in couplings.items():
                    expo = expo + tp * chs[p - 1]
                acc = acc + expo.exp() * inv
            else:
                acc = acc + ring.const(inv)
        terms[n] = acc
    return Series(terms, q_order + 1)


def perturbative_exponent(params: Params, ring: GradedPoly, couplings: dict | None = None):
    """sum_p tau_p [ch_{p+1}/[C^2]] at the empty tuple."""
    one = params.one()
    if couplings is None:
        couplings = default_couplings(ring, len(ring.names), one)
    if not couplings:
        return ring.zero()
    chs = ch_empty(params, max(couplings))
    expo = ring.zero()
    for p, tp in couplings.items():
        expo = expo + tp * chs[p - 1]
    return expo


def zinst(r: int, params: Params, q_order: int, tau_degree: int = 0, P: int | None = None,
          ring: GradedPoly | None = None, couplings: dict | None = None) -> Series:
    """Z^inst through q^q_order with coupling-polynomial coefficients.

    With the default ring, tau_p (p = 1..P, P = 2r - 1) are graded by
    deg tau_p = p - 1, truncated at ``tau_degree``; the power of tau_1 is
    capped at ``tau_degree`` as well.
    """
    if q_order < 0 or tau_degree < 0:
        raise ValueError("orders must be nonnegative")
    if ring is None:
        ring = coupling_ring(P if P is not None else 2 * r - 1, tau_degree)
    red = zinst_reduced(r, params, q_order, ring, couplings)
    pre = perturbative_exponent(params, ring, couplings)
    if not pre.terms:
        return red
    return red * pre.exp()


def finst(r: int, params: Params, q_order: int, tau_degree: int = 0, P: int | None = None,
          ring: GradedPoly | None = None, couplings: dict | None = None) -> Series:
    """e1 e2 log Z^inst; its q^0 term is the tau-linear sum_p sum_a tau_p a^{p+1}/(p+1)!."""
    if ring is None:
        ring = coupling_ring(P if P is not None else 2 * r - 1, tau_degree)
    red = zinst_reduced(r, params, q_order, ring, couplings)
    pre = perturbative_exponent(params, ring, couplings)
    ee = params.eps_product()
    return (red.log() + pre) * ee


def constant_part(s: Series) -> Series:
    """Drop the coupling variables: keep the constant coefficient of each GradedPoly."""
    return s.map(lambda g: g.constant() if isinstance(g, GradedPoly) else g)


# ---------------------------------------------------------------------------
# closed forms and the tau_1 shift law


def rank_one_closed_form_check(params: Params, q_order: int) -> dict:
    """Z^inst for r = 1 equals exp(q / (e1 e2))."""
    if params.rank != 1:
        raise ValueError("rank-one check needs a single Coulomb parameter")
    z = zinst(1, params, q_order)
    ref = Series({1: 1 / params.eps_product()}, q_order + 1).exp()
    d = z.first_difference(ref)
    return {"check": "rank-one-closed-form", "pass": d is None, "q_order": q_order,
            "first_bad_exponent": None if d is None else str(d)}


def shift_law_check(r: int, params: Params, q_order: int, tau_degree: int = 2) -> dict:
    """Z^inst(tau + tau_1) = exp(tau_1 sum a^2 / (2 e1 e2)) Z^inst(q e^{-tau_1}, tau)."""
    P = 2 * r - 1
    ring = coupling_ring(P, tau_degree)
    one = params.one()
    full = default_couplings(ring, P, one)
    lhs = zinst(r, params, q_order, ring=ring, couplings=full)
    rest = {p: v for p, v in full.items() if p != 1}
    z0 = zinst(r, params, q_order, ring=ring, couplings=rest)
    t1 = ring.var("tau1", one)
    s2 = sum((x * x for x in params.a), Q(0)) / 2
    pref = (t1 * (params.lift(s2) / params.eps_product())).exp()
    terms = {}
    for n, c in z0.terms.items():
        c = c if isinstance(c, GradedPoly) else ring.const(c)
        terms[n] = pref * c * (t1 * (-n)).exp() if n else pref * c
    rhs = Series(terms, z0.prec)
    d = lhs.first_difference(rhs)
    return {"check": "shift-law", "pass": d is None, "rank": r, "q_order": q_order,
            "tau_degree": tau_degree, "first_bad_exponent": None if d is None else str(d)}
