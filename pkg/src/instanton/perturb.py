"""Formal expansions of the perturbation term gamma_{e1,e2}(x; Lambda) and
gamma_hbar(x; Lambda), and checks of the identities they satisfy.

Nothing transcendental is ever evaluated.  Logarithms live in a formal ring:

* ``L`` stands for log(x / Lambda),
* ``P`` stands for pi * sqrt(-1),
* ``u`` is a spare symbol used for the rescaling Lambda -> Lambda e^u.

A :class:`LogPoly` is a polynomial in L, P, u whose coefficients are Laurent
polynomials in x over the Gaussian rationals.  An :class:`EpsSeries` is a
polynomial in (e1, e2), truncated by total degree, with LogPoly coefficients.
Everything is scaled so that it stays polynomial in e1, e2: the basic object
is e1*e2*gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping

from .blowup import s_factor_forms
from .exactalg import DomainError, Gauss, Linear, Poly, Series, bernoulli_numbers

Q = Fraction
I = Gauss(0, 1)


def _zero(c) -> bool:
    return c == 0


def _clean(c):
    if isinstance(c, Gauss) and c.im == 0:
        return c.re
    return c


# ---------------------------------------------------------------------------
# the log ring


class LogPoly:
    """sum c * x^m L^l P^p u^w, keyed by (m, l, p, w)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {k: _clean(c) for k, c in (terms or {}).items() if not _zero(c)}

    @classmethod
    def monomial(cls, c=1, m=0, l=0, p=0, w=0):
        return cls({(m, l, p, w): Q(c) if isinstance(c, int) else c})

    @classmethod
    def x(cls, m=1, c=1):
        return cls.monomial(c, m=m)

    @classmethod
    def L(cls, c=1):
        return cls.monomial(c, l=1)

    @classmethod
    def P(cls, c=1):
        return cls.monomial(c, p=1)

    @classmethod
    def u(cls, c=1):
        return cls.monomial(c, w=1)

    def __add__(self, o):
        o = _lift_log(o)
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t.get(k, 0) + c
        return LogPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return LogPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-_lift_log(o))

    def __rsub__(self, o):
        return _lift_log(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, Gauss)):
            return LogPoly({k: c * o for k, c in self.terms.items()})
        if not isinstance(o, LogPoly):
            return NotImplemented
        t: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                t[k] = t.get(k, 0) + c1 * c2
        return LogPoly(t)

    __rmul__ = __mul__

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, Gauss)):
            o = _lift_log(o)
        if not isinstance(o, LogPoly):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def part(self, l=0, p=0, w=0) -> dict:
        """Laurent coefficients {m: c} of L^l P^p u^w."""
        return {k[0]: c for k, c in self.terms.items() if k[1:] == (l, p, w)}

    def log_free(self) -> "LogPoly":
        return LogPoly({k: c for k, c in self.terms.items() if k[1:] == (0, 0, 0)})

    def map_monomials(self, fn) -> "LogPoly":
        out = LogPoly()
        for k, c in self.terms.items():
            out = out + fn(k) * c
        return out

    def evaluate_x(self, x):
        """Substitute a number for x; only meaningful for the log-free part."""
        if any(k[1:] != (0, 0, 0) for k in self.terms):
            raise DomainError("cannot evaluate a term carrying L, P or u")
        total = Q(0)
        for (m, _, _, _), c in self.terms.items():
            total = total + c * Q(x) ** m
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, l, p, w), c in sorted(self.terms.items(), key=lambda kv: kv[0]):
            mono = [f"x^{m}" if m != 1 else "x"] if m else []
            mono += [s if e == 1 else f"{s}^{e}" for s, e in (("L", l), ("P", p), ("u", w)) if e]
            parts.append(f"({c})" + ("*" + "*".join(mono) if mono else ""))
        return " + ".join(parts)


def _lift_log(o) -> LogPoly:
    if isinstance(o, LogPoly):
        return o
    if isinstance(o, (int, Fraction, Gauss)):
        return LogPoly.monomial(o)
    raise TypeError(f"cannot lift {o!r} into the log ring")


# ---------------------------------------------------------------------------
# truncated polynomials in (e1, e2) over the log ring


class EpsSeries:
    """sum_{i+j <= order} e1^i e2^j * LogPoly."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: Mapping, order: int):
        self.order = order
        self.terms = {k: v for k, v in terms.items() if sum(k) <= order and not v.is_zero()}

    @classmethod
    def const(cls, c, order: int):
        return cls({(0, 0): _lift_log(c)}, order)

    @classmethod
    def form(cls, c1, c2, order: int, coeff=1):
        """(c1 e1 + c2 e2) * coeff."""
        coeff = _lift_log(coeff)
        return cls({(1, 0): coeff * c1, (0, 1): coeff * c2}, order)

    def _lift(self, o):
        if isinstance(o, EpsSeries):
            return o
        return EpsSeries.const(o, self.order)

    def __add__(self, o):
        o = self._lift(o)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t[k] + v if k in t else v
        return EpsSeries(t, min(self.order, o.order))

    __radd__ = __add__

    def __neg__(self):
        return EpsSeries({k: -v for k, v in self.terms.items()}, self.order)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, Gauss, LogPoly)):
            return EpsSeries({k: v * o for k, v in self.terms.items()}, self.order)
        if not isinstance(o, EpsSeries):
            return NotImplemented
        order = min(self.order, o.order)
        t: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1])
                if sum(k) > order:
                    continue
                t[k] = t[k] + v1 * v2 if k in t else v1 * v2
        return EpsSeries(t, order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = EpsSeries.const(1, self.order)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, o):
        if not isinstance(o, EpsSeries):
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, order: int) -> "EpsSeries":
        return EpsSeries(self.terms, min(order, self.order))

    def degree_part(self, d: int) -> dict:
        return {k: v for k, v in self.terms.items() if sum(k) == d}

    def coeff(self, i: int, j: int) -> LogPoly:
        return self.terms.get((i, j), LogPoly())

    def lowest_degree(self):
        return min((sum(k) for k in self.terms), default=None)

    # substitutions ----------------------------------------------------------
    def substitute_eps(self, f1, f2) -> "EpsSeries":
        """e1 -> f1[0] e1 + f1[1] e2, e2 -> f2[0] e1 + f2[1] e2."""
        f1, f2 = tuple(f1), tuple(f2)
        t: dict = {}
        for (i, j), v in self.terms.items():
            for k, c in _form_product(f1, i, f2, j).items():
                add = v * c
                t[k] = t[k] + add if k in t else add
        return EpsSeries(t, self.order)

    def map_log(self, fn) -> "EpsSeries":
        """Apply a LogPoly -> EpsSeries map monomial by monomial (e-degree added)."""
        t: dict = {}
        for (i, j), v in self.terms.items():
            for key, c in v.terms.items():
                for (a, b), w in fn(key, self.order - i - j).terms.items():
                    k = (a + i, b + j)
                    t[k] = t[k] + w * c if k in t else w * c
        return EpsSeries(t, self.order)

    def shift_x(self, d1, d2) -> "EpsSeries":
        """x -> x + d1 e1 + d2 e2, with L(x + delta) = L + log(1 + delta/x)."""
        def fn(key, room):
            return _shifted_monomial(key, d1, d2, room)
        return self.map_log(fn)

    def scale_x(self, c, log_shift: LogPoly | None = None) -> "EpsSeries":
        """x -> c x and L -> L + log_shift (the caller supplies log(c) in the formal ring)."""
        ls = LogPoly() if log_shift is None else log_shift

        def fn(key, room):
            m, l, p, w = key
            v = LogPoly.monomial(Gauss.lift(c) ** m if m >= 0 else Gauss.lift(c).inverse() ** (-m),
                                 m=m, p=p, w=w)
            base = LogPoly.L() + ls
            for _ in range(l):
                v = v * base
            return EpsSeries.const(v, room)
        return self.map_log(fn)

    def substitute_L(self, image: LogPoly) -> "EpsSeries":
        """L -> image (used for Lambda -> Lambda e^u, where image = L - u)."""
        def fn(key, room):
            m, l, p, w = key
            v = LogPoly.monomial(1, m=m, p=p, w=w)
            for _ in range(l):
                v = v * image
            return EpsSeries.const(v, room)
        return self.map_log(fn)

    def residual_summary(self) -> list:
        out = []
        for k in sorted(self.terms, key=lambda k: (sum(k), k)):
            out.append({"e1^i e2^j": list(k), "coefficient": repr(self.terms[k])})
        return out

    def __repr__(self):
        if not self.terms:
            return f"O(e^{self.order + 1})"
        parts = [f"e1^{i} e2^{j} [{v!r}]" for (i, j), v in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))]
        return " + ".join(parts) + f" + O(e^{self.order + 1})"


@lru_cache(maxsize=None)
def _form_power(f: tuple, n: int) -> tuple:
    """(f0 e1 + f1 e2)^n as ((i, j), c) pairs."""
    a, b = f
    out = []
    for i in range(n + 1):
        c = comb(n, i) * _gpow(a, i) * _gpow(b, n - i)
        if not _zero(c):
            out.append(((i, n - i), c))
    return tuple(out)


def _gpow(c, n):
    if n == 0:
        return Q(1)
    return c ** n


def _form_product(f1, i, f2, j) -> dict:
    out: dict = {}
    for k1, c1 in _form_power(f1, i):
        for k2, c2 in _form_power(f2, j):
            k = (k1[0] + k2[0], k1[1] + k2[1])
            out[k] = out.get(k, 0) + c1 * c2
    return out


@lru_cache(maxsize=None)
def _delta_over_x_power(d1, d2, n: int, room: int) -> EpsSeries:
    """(delta / x)^n."""
    return EpsSeries({k: LogPoly.x(-n, c) for k, c in _form_power((d1, d2), n)}, room)


@lru_cache(maxsize=None)
def _x_power_shift(m: int, d1, d2, room: int) -> EpsSeries:
    """(x + delta)^m = x^m sum_j binom(m, j) (delta/x)^j, any integer m."""
    out = EpsSeries({}, room)
    for j in range(room + 1):
        b = _gen_binom(m, j)
        if b:
            out = out + _delta_over_x_power(d1, d2, j, room) * b
    return out * LogPoly.x(m)


@lru_cache(maxsize=None)
def _log_shift(d1, d2, room: int) -> EpsSeries:
    """L + log(1 + delta/x)."""
    out = EpsSeries.const(LogPoly.L(), room)
    for j in range(1, room + 1):
        out = out + _delta_over_x_power(d1, d2, j, room) * Q((-1) ** (j + 1), j)
    return out


def _gen_binom(m: int, j: int) -> Fraction:
    num = Q(1)
    for t in range(j):
        num *= m - t
    return num / factorial(j)


def _shifted_monomial(key, d1, d2, room: int) -> EpsSeries:
    m, l, p, w = key
    out = _x_power_shift(m, d1, d2, room)
    for _ in range(l):
        out = out * _log_shift(d1, d2, room)
    return out * LogPoly.monomial(1, p=p, w=w)


# ---------------------------------------------------------------------------
# the coefficients c_n


@lru_cache(maxsize=None)
def c_coefficients(nmax: int) -> tuple:
    """e1 e2 c_n for n = 0..nmax, as polynomials in (e1, e2).

    1/((e^{e1 t} - 1)(e^{e2 t} - 1)) = sum_n c_n t^{n-2} / n!.  Writing
    e^{e t} - 1 = e t * h_e(t) with h_e(0) = 1, the series 1/(h_{e1} h_{e2})
    is inverted in t and e1 e2 c_n = n! [t^n] of it.
    """
    def h(i):
        return Series.from_list([Poly(2, {(k if i == 0 else 0, k if i == 1 else 0): Q(1, factorial(k + 1))})
                                 for k in range(nmax + 1)], var="t")
    inv = (h(0) * h(1)).inverse()
    out = []
    for n in range(nmax + 1):
        c = inv.coeff(n, Poly(2))
        out.append((c if isinstance(c, Poly) else Poly.const(2, Q(c))) * factorial(n))
    return tuple(out)


def c_coefficients_bernoulli(nmax: int) -> tuple:
    """Same polynomials from the product of two Bernoulli generating functions."""
    B = bernoulli_numbers(nmax)
    out = []
    for n in range(nmax + 1):
        t = {(i, n - i): Q(factorial(n), factorial(i) * factorial(n - i)) * B[i] * B[n - i]
             for i in range(n + 1)}
        out.append(Poly(2, t))
    return tuple(out)


def _poly_to_eps(p: Poly, order: int, coeff: LogPoly) -> EpsSeries:
    return EpsSeries({e: coeff * c for e, c in p.terms.items()}, order)


# ---------------------------------------------------------------------------
# gamma expansions


@dataclass(frozen=True)
class GammaExpansion:
    """e1 e2 * gamma_{e1,e2}(x; 1) through total e-degree ``eps_order``."""

    series: EpsSeries
    eps_order: int

    def degree(self, d: int) -> dict:
        return self.series.degree_part(d)

    def gamma_times(self, scale: EpsSeries) -> EpsSeries:
        return self.series * scale


def gamma2_expansion(eps_order: int) -> GammaExpansion:
    """e1 e2 gamma = (-x^2 L/2 + 3x^2/4) - e1e2 c_1 (-x L + x) - e1e2 c_2 L/2
    + sum_{n>=3} e1e2 c_n x^{2-n} / (n(n-1)(n-2))."""
    if eps_order < 2:
        raise DomainError("eps_order must be at least 2")
    c = c_coefficients(eps_order)
    x2 = LogPoly.x(2)
    lead = x2 * LogPoly.L() * Q(-1, 2) + x2 * Q(3, 4)
    out = _poly_to_eps(c[0], eps_order, lead)
    out = out + _poly_to_eps(c[1], eps_order, LogPoly.x(1) * LogPoly.L() - LogPoly.x(1))
    out = out + _poly_to_eps(c[2], eps_order, LogPoly.L() * Q(-1, 2))
    for n in range(3, eps_order + 1):
        out = out + _poly_to_eps(c[n], eps_order, LogPoly.x(2 - n, Q(1, n * (n - 1) * (n - 2))))
    return GammaExpansion(out, eps_order)


def gamma_hbar_expansion(eps_order: int) -> EpsSeries:
    """hbar^2 gamma_hbar(x; 1) with hbar stored as e1:

    (x^2 L/2 - 3x^2/4) - hbar^2 L/12 + sum_{g>=2} B_{2g}/(2g(2g-2)) hbar^{2g} x^{2-2g}.
    """
    B = bernoulli_numbers(eps_order + 1)
    x2 = LogPoly.x(2)
    t = {(0, 0): x2 * LogPoly.L() * Q(1, 2) - x2 * Q(3, 4)}
    if eps_order >= 2:
        t[(2, 0)] = LogPoly.L(Q(-1, 12))
    g = 2
    while 2 * g <= eps_order:
        t[(2 * g, 0)] = LogPoly.x(2 - 2 * g, B[2 * g] / (2 * g * (2 * g - 2)))
        g += 1
    return EpsSeries(t, eps_order)


def hbar_from_two_parameter(eps_order: int) -> EpsSeries:
    """hbar^2 gamma_hbar = -(e1 e2 gamma)|_{e1 = hbar, e2 = -hbar}."""
    g = gamma2_expansion(eps_order).series
    return -g.substitute_eps((1, 0), (-1, 0))


# ---------------------------------------------------------------------------
# checks


def _report(name: str, residual: EpsSeries, **extra) -> dict:
    rep = {"check": name, "pass": residual.is_zero(), "through_eps_degree": residual.order}
    if not residual.is_zero():
        d = residual.lowest_degree()
        rep["lowest_bad_degree"] = d
        rep["residual"] = [{"e1^i e2^j": list(k), "coefficient": repr(v)}
                           for k, v in sorted(residual.degree_part(d).items())]
    rep.update(extra)
    return rep


def difference2_residual(eps_order: int) -> EpsSeries:
    """e1e2 [gamma(x-e1) + gamma(x-e2) - gamma(x) - gamma(x-e1-e2)] - e1e2 L."""
    g = gamma2_expansion(eps_order).series
    lhs = g.shift_x(-1, 0) + g.shift_x(0, -1) - g - g.shift_x(-1, -1)
    rhs = EpsSeries({(1, 1): LogPoly.L()}, eps_order)
    return lhs - rhs


def difference1_residual(eps_order: int) -> EpsSeries:
    """hbar^2 [gamma(x+hbar) + gamma(x-hbar) - 2 gamma(x)] - hbar^2 L."""
    g = gamma_hbar_expansion(eps_order)
    lhs = g.shift_x(1, 0) + g.shift_x(-1, 0) - g * 2
    return lhs - EpsSeries({(2, 0): LogPoly.L()}, eps_order)


def check_difference2(eps_order: int) -> dict:
    two = _report("difference-two-parameter", difference2_residual(eps_order))
    one = _report("difference-one-parameter", difference1_residual(eps_order))
    return {"check": "difference", "pass": two["pass"] and one["pass"],
            "two_parameter": two, "one_parameter": one}


def log_s_factor(k: int, order: int) -> EpsSeries:
    """log s^k(e1, e2, x) = sum over factors (x + delta) of [L + log(1 + delta/x)]."""
    x = Linear(0, 0, 0)  # placeholder; only the e1, e2 parts of each form are read
    out = EpsSeries({}, order)
    for f in s_factor_forms(k, Linear(0, 1, 0), Linear(0, 0, 1), x):
        out = out + _log_shift(f.c1, f.c2, order)
    return out


def pert_shift_residual(k: int, eps_order: int) -> EpsSeries:
    """N [gamma_{e1,e2-e1}(x+e1 k) + gamma_{e1-e2,e2}(x+e2 k) - gamma(x) - log s^{-k}]
    with N = e1 e2 (e2 - e1), Lambda = 1.  Kept through e-degree eps_order + 3,
    i.e. the unscaled residual through eps_order."""
    g = gamma2_expansion(eps_order + 3).series
    first = g.substitute_eps((1, 0), (-1, 1)).shift_x(k, 0)     # e1(e2-e1) gamma_{e1,e2-e1}
    second = g.substitute_eps((1, -1), (0, 1)).shift_x(0, k)    # (e1-e2)e2 gamma_{e1-e2,e2}
    e1 = EpsSeries.form(1, 0, eps_order + 3)
    e2 = EpsSeries.form(0, 1, eps_order + 3)
    lhs = first * e2 - second * e1
    N = e1 * e2 * (e2 - e1)
    rhs = g * (e2 - e1) + N * log_s_factor(-k, eps_order + 3)
    return lhs - rhs


def check_pert_shift(k_range: int, eps_order: int) -> dict:
    per_k = {}
    ok = True
    for k in range(-k_range, k_range + 1):
        rep = _report(f"pert-shift k={k}", pert_shift_residual(k, eps_order), k=k)
        per_k[str(k)] = rep
        ok = ok and rep["pass"]
    return {"check": "pert-shift", "pass": ok, "k_range": k_range, "eps_order": eps_order, "per_k": per_k}


def sampled_shift_residual(k: int, e1, e2, x, eps_order: int):
    """Log-free part of the pert_shift residual evaluated at rational (e1, e2, x).

    Every e-monomial is evaluated at the sample, so this is a number; it is 0
    whenever the formal identity holds.
    """
    res = pert_shift_residual(k, eps_order)
    total = Q(0)
    for (i, j), v in res.terms.items():
        total = total + v.log_free().evaluate_x(x) * Q(e1) ** i * Q(e2) ** j
    return total


def e_u_residual(eps_order: int) -> EpsSeries:
    """e1e2 [gamma(x; Lambda e^u) - gamma(x; Lambda)] - u e1e2 {...}."""
    g = gamma2_expansion(eps_order).series
    shifted = g.substitute_L(LogPoly.L() - LogPoly.u())
    u = LogPoly.u()
    brace = EpsSeries({(0, 0): u * LogPoly.x(2) * Q(1, 2),
                       (1, 0): u * LogPoly.x(1) * Q(1, 2), (0, 1): u * LogPoly.x(1) * Q(1, 2),
                       (2, 0): u * Q(1, 12), (0, 2): u * Q(1, 12), (1, 1): u * Q(3, 12)},
                      eps_order)
    return shifted - g - brace


def double_rhs(eps_order: int) -> EpsSeries:
    """e1e2 times the displayed closed form of gamma(x) + gamma(-x); L denotes log(ix)."""
    c = c_coefficients(eps_order)
    L = LogPoly.L()
    x2 = LogPoly.x(2)
    out = EpsSeries({(0, 0): (x2 * L * Q(-1, 2) + x2 * Q(3, 4)) * 2}, eps_order)
    out = out + EpsSeries.form(1, 1, eps_order, LogPoly.P() * LogPoly.x(1) * Q(1, 2))
    out = out + EpsSeries({(2, 0): L * Q(-1, 6), (0, 2): L * Q(-1, 6), (1, 1): L * Q(-3, 6)}, eps_order)
    g = 2
    while 2 * g <= eps_order:
        coeff = LogPoly.x(2 - 2 * g, Q(2, 2 * g * (2 * g - 1) * (2 * g - 2)))
        out = out + _poly_to_eps(c[2 * g], eps_order, coeff)
        g += 1
    return out


def double_residual(eps_order: int) -> EpsSeries:
    """Branch: log x = log(ix) - P/2 and log(-x) = log(ix) + P/2."""
    g = gamma2_expansion(eps_order).series
    half_p = LogPoly.P(Q(1, 2))
    plus = g.scale_x(1, -half_p)
    minus = g.scale_x(-1, half_p)
    return plus + minus - double_rhs(eps_order)


def hbar_double_residual(eps_order: int) -> EpsSeries:
    """hbar^2 [gamma_hbar(x) + gamma_hbar(-x) - 2 gamma_{i hbar}(i x)]."""
    g = gamma_hbar_expansion(eps_order)
    half_p = LogPoly.P(Q(1, 2))
    lhs = g.scale_x(1, -half_p) + g.scale_x(-1, half_p)
    # (i hbar)^2 gamma_{i hbar}(y) with y = i x and log(y) -> L
    rot = g.substitute_eps((I, 0), (0, 1)).scale_x(I)
    return lhs + rot * 2


def check_e_u_and_double(eps_order: int) -> dict:
    eu = _report("e^u", e_u_residual(eps_order))
    db = _report("double", double_residual(eps_order))
    hb = _report("double-hbar", hbar_double_residual(eps_order))
    return {"check": "e^u-and-double", "pass": eu["pass"] and db["pass"] and hb["pass"],
            "e_u": eu, "double": db, "double_hbar": hb}


def check_hbar_tail(gmax: int = 5) -> dict:
    """Tail coefficients of hbar^2 gamma_hbar agree with the two-parameter expansion."""
    order = 2 * gmax
    direct = gamma_hbar_expansion(order)
    via = hbar_from_two_parameter(order)
    return _report("hbar-tail", direct - via, gmax=gmax)


def check_all(eps_order: int = 8, k_range: int = 3) -> dict:
    reps = {
        "difference": check_difference2(eps_order),
        "pert_shift": check_pert_shift(k_range, eps_order),
        "e_u_and_double": check_e_u_and_double(eps_order),
        "hbar_tail": check_hbar_tail(max(2, eps_order // 2)),
    }
    return {"check": "perturb", "pass": all(r["pass"] for r in reps.values()), "reports": reps}


# ---------------------------------------------------------------------------
# perturbative prepotential pieces


def perturbative_free_energy(eps_order: int, roots=((2,), (-2,))) -> EpsSeries:
    """-e1 e2 sum_{alpha != beta} gamma(a_alpha - a_beta) for SU(2), x = 2a, with
    L = log(2 i a) after the branch choice used in :func:`double_residual`.

    The returned series is in the variable a: x^m is replaced by (2a)^m, so a
    LogPoly monomial x^m here means a^m.
    """
    g = gamma2_expansion(eps_order).series
    half_p = LogPoly.P(Q(1, 2))
    pair = g.scale_x(1, -half_p) + g.scale_x(-1, half_p)
    return -pair.scale_x(2)


def perturbative_parts(eps_order: int = 2) -> dict:
    """F0, H, G, F1 of the SU(2) perturbative free energy (L = log(2ia), x^m = a^m)."""
    F = perturbative_free_energy(max(eps_order, 2))
    F0 = F.coeff(0, 0)
    H = F.coeff(1, 0)
    G = F.coeff(2, 0)
    F1 = F.coeff(1, 1) - G * 2
    return {"F0": F0, "H": H, "G": G, "F1": F1,
            "lambda_dF0": F0.map_monomials(lambda k: LogPoly.monomial(-k[1], m=k[0], l=k[1] - 1, p=k[2], w=k[3])
                                           if k[1] else LogPoly())}
