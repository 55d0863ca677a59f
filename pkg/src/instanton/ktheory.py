"""Characters of the coordinate rings of symmetric products of C^2, their
hbar-expansion, and the resolved-conifold Gromov-Witten coefficients C(g, d).

Characters are q-series whose coefficients are polynomials in (t1, t2),
truncated at total t-degree ``t_degree``.  The hbar side uses t1 = e^hbar,
t2 = e^-hbar; its q^n coefficients are computed from the fixed points of the
Hilbert scheme (hooks of partitions), independently of the exponential form.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .combinatorics import arm_leg, diagrams
from .exactalg import DomainError, Poly, Series, bernoulli_numbers

Q = Fraction


# ---------------------------------------------------------------------------
# bigraded characters


def _trunc(p: Poly, t_degree: int) -> Poly:
    return p.truncate(t_degree)


def _geometric_t(d: int, t_degree: int, which: int) -> Poly:
    """1 / (1 - t_which^d) truncated."""
    terms = {}
    j = 0
    while j * d <= t_degree:
        e = (j * d, 0) if which == 0 else (0, j * d)
        terms[e] = Q(1)
        j += 1
    return Poly(2, terms)


def exponential_form(q_order: int, t_degree: int) -> list:
    """q-coefficients of exp(sum_d q^d / (d (1 - t1^d)(1 - t2^d)))."""
    f = [Poly(2)] + [(_geometric_t(d, t_degree, 0) * _geometric_t(d, t_degree, 1)).truncate(t_degree) * Q(1, d)
                     for d in range(1, q_order + 1)]
    E = [Poly.const(2, Q(1))]
    # n E_n = sum_k k f_k E_{n-k}
    for n in range(1, q_order + 1):
        acc = Poly(2)
        for k in range(1, n + 1):
            acc = acc + _trunc(f[k] * E[n - k], t_degree) * k
        E.append(acc * Q(1, n))
    return E


def plethystic_product(q_order: int, t_degree: int) -> list:
    """q-coefficients of prod_{i+j <= t_degree} 1 / (1 - q t1^i t2^j)."""
    coeffs = [Poly.const(2, Q(1))] + [Poly(2) for _ in range(q_order)]
    for i in range(t_degree + 1):
        for j in range(t_degree + 1 - i):
            mono = Poly(2, {(i, j): Q(1)})
            # multiply by 1/(1 - q m): c_n += m c_{n-1}, in increasing n
            for n in range(1, q_order + 1):
                coeffs[n] = coeffs[n] + _trunc(mono * coeffs[n - 1], t_degree)
    return coeffs


def is_character(p: Poly) -> bool:
    return all(Q(c) >= 0 and Q(c).denominator == 1 for c in p.terms.values())


def hilbert_series_check(q_order: int, t_degree: int) -> dict:
    lhs = plethystic_product(q_order, t_degree)
    rhs = exponential_form(q_order, t_degree)
    bad = None
    for n in range(q_order + 1):
        if lhs[n] != rhs[n]:
            diff = lhs[n] - rhs[n]
            e = min(diff.terms, key=lambda x: (sum(x), x))
            bad = {"n": n, "monomial": list(e), "product": str(lhs[n].coeff(e)),
                   "exponential": str(rhs[n].coeff(e))}
            break
    positive = all(is_character(p) for p in lhs)
    return {"check": "hilbert-series", "pass": bad is None and positive and lhs[0] == 1,
            "q_order": q_order, "t_degree": t_degree, "character_positivity": positive,
            "mismatch": bad}


# ---------------------------------------------------------------------------
# hbar expansion


def _hook_factor(m: int, prec: int) -> Series:
    """1 / ((1 - e^{m hbar})(1 - e^{-m hbar})) as a Laurent series in hbar, exact below hbar^prec."""
    # (1 - e^x)(1 - e^-x) = 2 - 2 cosh x = -sum_{k>=1} 2 x^{2k} / (2k)!
    n = prec + 4
    terms = {2 * k: -Q(2 * m ** (2 * k), factorial(2 * k)) for k in range(1, n // 2 + 2)}
    return Series(terms, 2 * (n // 2 + 2) + 1, var="h").inverse().truncate(prec)


def hilbert_hbar_coefficients(q_order: int, hbar_order: int) -> list:
    """ch H^0(S^n C^2) at t1 = e^hbar, t2 = e^-hbar via hooks:
    sum over partitions of prod_boxes 1 / ((1 - e^{h(s) hbar})(1 - e^{-h(s) hbar}))."""
    prec = hbar_order + 2 * q_order + 2
    cache: dict = {}
    out = [Series({0: Q(1)}, prec, var="h")]
    for n in range(1, q_order + 1):
        acc = Series({}, prec, var="h")
        for Y in diagrams(n):
            term = Series({0: Q(1)}, prec + 2 * n, var="h")
            for (i, j) in Y.boxes():
                a, _, l, _ = arm_leg(Y, i, j)
                h = a + l + 1
                if h not in cache:
                    cache[h] = _hook_factor(h, prec + 2 * q_order + 2)
                term = term * cache[h]
            acc = acc + term
        out.append(acc)
    return out


def hbar_expansion(q_order: int, hbar_order: int) -> dict:
    """log of the character generating function at t1 = e^hbar, t2 = e^-hbar.

    Returns {d: Laurent series in hbar} for the q^d coefficient, d = 1..q_order,
    exact through hbar^hbar_order.
    """
    if hbar_order < 0:
        raise DomainError("hbar_order must be nonnegative")
    Z = hilbert_hbar_coefficients(q_order, hbar_order)
    L: list = [None]
    # n L_n = n Z_n - sum_{k<n} k L_k Z_{n-k}
    for n in range(1, q_order + 1):
        acc = Z[n] * n
        for k in range(1, n):
            acc = acc - L[k] * Z[n - k] * k
        L.append(acc * Q(1, n))
    out = {}
    for d in range(1, q_order + 1):
        if L[d].prec <= hbar_order:
            raise DomainError("insufficient hbar precision")
        out[d] = L[d].truncate(hbar_order + 1)
    return out


def displayed_families(q_order: int, hbar_order: int) -> dict:
    """-q^d/d^3 hbar^-2, (1/12) q^d/d hbar^0, B_2g/(2g(2g-2)!) d^{2g-3} q^d hbar^{2g-2}."""
    B = bernoulli_numbers(hbar_order + 2)
    out = {}
    for d in range(1, q_order + 1):
        t = {-2: -Q(1, d ** 3), 0: Q(1, 12 * d)}
        g = 2
        while 2 * g - 2 <= hbar_order:
            t[2 * g - 2] = B[2 * g] / (2 * g * factorial(2 * g - 2)) * Q(d) ** (2 * g - 3)
            g += 1
        out[d] = Series(t, hbar_order + 1, var="h")
    return out


def gw_conifold(g: int, d: int) -> Fraction:
    if g < 0 or d < 1:
        raise DomainError("need g >= 0 and d >= 1")
    if g == 0:
        return Q(1, d ** 3)
    if g == 1:
        return Q(1, 12 * d)
    B = bernoulli_numbers(2 * g)
    return (-1) ** (g - 1) * B[2 * g] / (2 * g * factorial(2 * g - 2)) * Q(d) ** (2 * g - 3)


def gw_generating(q_order: int, g_max: int) -> dict:
    """sum_g C(g, d) (i hbar)^{2g-2} per d, with (i hbar)^{2g-2} = (-1)^{g-1} hbar^{2g-2}."""
    out = {}
    for d in range(1, q_order + 1):
        t = {2 * g - 2: (-1) ** (g - 1) * gw_conifold(g, d) for g in range(g_max + 1)}
        out[d] = Series(t, 2 * g_max - 1, var="h")
    return out


def _compare(a: dict, b: dict):
    for d in sorted(a):
        x, y = a[d], b[d]
        e = x.first_difference(y)
        if e is not None:
            return {"d": d, "hbar_exponent": str(e), "lhs": str(x.coeff(e)), "rhs": str(y.coeff(e))}
    return None


def hbar_check(q_order: int, g_max: int) -> dict:
    hbar_order = 2 * g_max - 2
    hx = hbar_expansion(q_order, hbar_order)
    m1 = _compare(hx, displayed_families(q_order, hbar_order))
    m2 = _compare(hx, gw_generating(q_order, g_max))
    return {"check": "hbar-expansion", "pass": m1 is None and m2 is None,
            "q_order": q_order, "g_max": g_max,
            "families_mismatch": m1, "gromov_witten_mismatch": m2}


def check_all(q_order: int = 6, t_degree: int = 8, g_max: int = 4) -> dict:
    reps = {"hilbert": hilbert_series_check(q_order, t_degree),
            "hbar": hbar_check(q_order, g_max)}
    return {"check": "ktheory", "pass": all(r["pass"] for r in reps.values()), "reports": reps}
