"""Poincare polynomials of punctual quot-schemes and of the blowup fibers,
their product-form generating functions, the rank-2 alternative fixed-point
sum, the Ochiai identity, and the universal virtual Hodge ratio.

Generating functions are q-series (``exactalg.Series``) whose coefficients are
Laurent polynomials in t, stored as one-variable ``Poly``.  q exponents may be
fractional on the blowup side (n in Z + k(r-k)/2r), so series carry a
denominator.  Virtual Hodge data is written in s = (xy)^{1/2}, which makes
xy -> t^2 the identity on exponents of s and t.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .combinatorics import YoungDiagram, enumerate_coroots, enumerate_tuples, norm, rho_pairing
from .exactalg import DomainError, Poly, Series

Q = Fraction


def tpoly(exps: dict | None = None) -> Poly:
    """Laurent polynomial sum c t^e from {e: c}."""
    return Poly(1, {(e,): Q(c) for e, c in (exps or {}).items()})


def tmono(e: int, c=1) -> Poly:
    return tpoly({e: c})


def coefficients(p: Poly) -> dict:
    """{t-exponent: integer coefficient}."""
    out = {}
    for (e,), c in sorted(p.terms.items()):
        out[e] = int(c) if Q(c).denominator == 1 else c
    return out


def _qseries(terms: dict, q_order, den: int = 1) -> Series:
    """Series in q with exponents given as Fractions, truncated after q^q_order."""
    prec = int(Q(q_order) * den) + 1
    t = {}
    for e, c in terms.items():
        k = Q(e) * den
        if k.denominator != 1:
            raise DomainError("exponent does not fit the series denominator")
        k = int(k)
        if k < prec:
            t[k] = t[k] + c if k in t else c
    return Series(t, prec, den)


def _one(q_order, den: int = 1) -> Series:
    return _qseries({0: tmono(0)}, q_order, den)


def _geometric(t_exp: int, d: int, q_order, den: int = 1, sign: int = 1) -> Series:
    """1 / (1 - sign t^{t_exp} q^d)."""
    terms = {}
    j = 0
    while j * d <= q_order:
        terms[Q(j * d)] = tmono(t_exp * j, sign ** j)
        j += 1
    return _qseries(terms, q_order, den)


def _binomial(t_exp: int, d: int, q_order, den: int = 1) -> Series:
    """1 - t^{t_exp} q^d."""
    terms = {Q(0): tmono(0)}
    if d <= q_order:
        terms[Q(d)] = tmono(t_exp, -1)
    return _qseries(terms, q_order, den)


def coefficient(s: Series, exponent) -> Poly:
    c = s.coeff(Q(exponent), None)
    return c if isinstance(c, Poly) else tpoly()


def _diff_report(name: str, lhs: Series, rhs: Series, **extra) -> dict:
    d = lhs.first_difference(rhs)
    rep = {"check": name, "pass": d is None}
    if d is not None:
        e = d
        rep["first_bad_q_exponent"] = str(e)
        rep["lhs"] = str(coefficients(coefficient(lhs, e)))
        rep["rhs"] = str(coefficients(coefficient(rhs, e)))
    rep.update(extra)
    return rep


# ---------------------------------------------------------------------------
# punctual quot-scheme


def poincare_quot(r: int, n: int) -> Poly:
    """sum over r-tuples with |Y| = n of prod_alpha t^{2(r|Y_alpha| - alpha l(Y_alpha))}."""
    if r < 1 or n < 0:
        raise DomainError("need r >= 1 and n >= 0")
    acc: dict = {}
    for Ys in enumerate_tuples(r, n):
        e = sum(2 * (r * Y.size - alpha * Y.length) for alpha, Y in enumerate(Ys, start=1))
        acc[e] = acc.get(e, 0) + 1
    return tpoly(acc)


def quot_sum_series(r: int, q_order: int) -> Series:
    return _qseries({Q(n): poincare_quot(r, n) for n in range(q_order + 1)}, q_order)


def quot_product_series(r: int, q_order: int, den: int = 1) -> Series:
    """prod_alpha prod_d 1 / (1 - t^{2(rd - alpha)} q^d)."""
    out = _one(q_order, den)
    for alpha in range(1, r + 1):
        for d in range(1, int(q_order) + 1):
            out = out * _geometric(2 * (r * d - alpha), d, q_order, den)
    return out


def poincare_quot_gen(r: int, q_order: int) -> dict:
    lhs = quot_sum_series(r, q_order)
    rhs = quot_product_series(r, q_order)
    return _diff_report("quot-generating-function", lhs, rhs, rank=r, q_order=q_order)


# ---------------------------------------------------------------------------
# blowup fibers


def _sector_den(r: int) -> int:
    return 2 * r


def poincare_blowup_terms(r: int, k: int, q_order) -> dict:
    """{n: P_t} from the fixed-point sum over (k_vec, Y^1, Y^2) with n <= q_order."""
    if not 0 <= k < r:
        raise DomainError("sector must satisfy 0 <= k < r")
    acc: dict = {}
    for kv in enumerate_coroots(r, k, q_order):
        half = norm(kv) / 2
        e = kv.entries
        lat = sum((e[a] - e[b]) * (e[a] - e[b] + 1) for a in range(r) for b in range(a + 1, r))
        rest = Q(q_order) - half
        for m in range(int(rest) + 1):
            for s1 in range(m + 1):
                for Y1 in enumerate_tuples(r, s1):
                    w1 = sum(2 * (r * Y.size - alpha * Y.length) for alpha, Y in enumerate(Y1, start=1))
                    for Y2 in enumerate_tuples(r, m - s1):
                        w2 = sum(2 * r * Y.size for Y in Y2)
                        n = half + m
                        acc.setdefault(n, {})
                        key = lat + w1 + w2
                        acc[n][key] = acc[n].get(key, 0) + 1
    return {n: tpoly(c) for n, c in acc.items()}


def poincare_blowup(r: int, k: int, n) -> Poly:
    return poincare_blowup_terms(r, k, n).get(Q(n), tpoly())


def blowup_sum_series(r: int, k: int, q_order) -> Series:
    return _qseries(poincare_blowup_terms(r, k, q_order), q_order, _sector_den(r))


def lattice_theta_t(r: int, k: int, q_order) -> Series:
    """sum over k_vec of t^{2<k,rho>} (t^{2r} q)^{(k,k)/2}."""
    terms: dict = {}
    for kv in enumerate_coroots(r, k, q_order):
        half = norm(kv) / 2
        te = 2 * rho_pairing(kv) + 2 * r * half
        if te.denominator != 1:
            raise DomainError("non-integral t exponent")
        terms[half] = terms.get(half, tpoly()) + tmono(int(te))
    return _qseries(terms, q_order, _sector_den(r))


def blowup_product_series(r: int, k: int, q_order) -> Series:
    den = _sector_den(r)
    out = quot_product_series(r, q_order, den)
    for d in range(1, int(q_order) + 1):
        g = _geometric(2 * r * d, d, q_order, den)
        for _ in range(r):
            out = out * g
    return out * lattice_theta_t(r, k, q_order)


def poincare_blowup_gen(r: int, k: int, q_order) -> dict:
    lhs = blowup_sum_series(r, k, q_order)
    rhs = blowup_product_series(r, k, q_order)
    return _diff_report("blowup-generating-function", lhs, rhs, rank=r, sector=k, q_order=str(q_order))


# ---------------------------------------------------------------------------
# alternative fixed-point sum (one-parameter subgroup with t1 = t2)


def poincare_projective(m: int) -> Poly:
    """P_t(P^m) = 1 + t^2 + ... + t^{2m}."""
    return tpoly({2 * i: 1 for i in range(m + 1)})


def poincare_sym_product(Y: YoungDiagram) -> Poly:
    """P_t(S^Y P^1) = prod_i P_t(P^{m_i})."""
    out = tmono(0)
    for m in Y.multiplicities().values():
        out = out * poincare_projective(m)
    return out


def l_prime(ka: int, kb: int) -> int:
    if ka >= kb:
        return (ka - kb + 1) * (ka - kb) // 2
    return (kb - ka + 1) * (kb - ka) // 2 - 1


def n_prime(ka: int, kb: int, Ya: YoungDiagram, Yb: YoungDiagram) -> int:
    if ka >= kb:
        return sum(1 for c in Ya.columns if c > ka - kb)
    return sum(1 for c in Yb.columns if c > kb - ka - 1)


def _alt_weight(ks: Sequence[int], Ys: Sequence[YoungDiagram], reverse: bool = False) -> Poly:
    r = len(ks)
    out = tmono(0)
    for Y in Ys:
        out = out * tmono(2 * (Y.size - Y.length)) * poincare_sym_product(Y)
    e = 0
    for a in range(r):
        for b in range(a + 1, r):
            i, j = (b, a) if reverse else (a, b)
            e += 2 * (l_prime(ks[i], ks[j]) + Ys[i].size + Ys[j].size
                      - n_prime(ks[i], ks[j], Ys[i], Ys[j]))
    return out * tmono(e)


def alt_fixed_point_series(r: int, k: int, q_order, reverse: bool = False) -> Series:
    """The alternative sum over (k_vec, Y) with |Y| + (k,k)/2 = n.

    ``reverse`` applies the pair rule with the roles of alpha < beta swapped.
    """
    terms: dict = {}
    for kv in enumerate_coroots(r, k, q_order):
        half = norm(kv) / 2
        rest = Q(q_order) - half
        for m in range(int(rest) + 1):
            for Ys in enumerate_tuples(r, m):
                n = half + m
                terms[n] = terms.get(n, tpoly()) + _alt_weight(kv.entries, Ys, reverse)
    return _qseries(terms, q_order, _sector_den(r))


def alt_fixed_point_poincare_rank2(k: int, q_order: int) -> Series:
    return alt_fixed_point_series(2, k, q_order)


def _ochiai_lhs(q_order: int) -> Series:
    """The bracket of the rank-2, c_1 = 0 generating function."""
    out = _qseries({}, q_order)
    k = 0
    while k * k <= q_order:
        prod = _one(q_order)
        for d in range(1, 2 * k + 1):
            prod = prod * _binomial(4 * d - 4, d, q_order) * _geometric(4 * d, d, q_order)
        out = out + prod * _qseries({Q(k * k): tmono(2 * k * (2 * k + 1))}, q_order)
        if k > 0:
            prod = _one(q_order)
            for d in range(1, 2 * k):
                prod = prod * _binomial(4 * d - 4, d, q_order) * _geometric(4 * d, d, q_order)
            out = out + prod * _qseries({Q(k * k): tmono(2 * k * (2 * k + 1) - 2)}, q_order)
        k += 1
    return out


def _ochiai_rhs(q_order: int) -> Series:
    prod = _one(q_order)
    for d in range(1, q_order + 1):
        prod = prod * _binomial(4 * d - 2, d, q_order) * _geometric(4 * d, d, q_order)
    theta: dict = {}
    k = 0
    while k * k <= q_order:
        for kk in {k, -k}:
            theta[Q(k * k)] = theta.get(Q(k * k), tpoly()) + tmono(2 * kk * (2 * kk + 1))
        k += 1
    return prod * _qseries(theta, q_order)


def rank2_bracket_series(q_order: int) -> Series:
    """Full rank-2 c_1 = 0 generating function: prefactor times the bracket."""
    pre = _one(q_order)
    for d in range(1, q_order + 1):
        pre = pre * _geometric(4 * d, d, q_order) * _geometric(4 * d - 2, d, q_order) \
            * _geometric(4 * d - 2, d, q_order) * _geometric(4 * d - 4, d, q_order)
    return pre * _ochiai_lhs(q_order)


def ochiai_check(q_order: int) -> dict:
    return _diff_report("ochiai", _ochiai_lhs(q_order), _ochiai_rhs(q_order), q_order=q_order)


def rank2_alt_check(q_order: int) -> dict:
    """Alternative sum = bracket form = lattice-product form, rank 2, c_1 = 0."""
    alt = alt_fixed_point_poincare_rank2(0, q_order)
    bracket = rank2_bracket_series(q_order).with_den(alt.den)
    prod = blowup_product_series(2, 0, q_order)
    r1 = _diff_report("alt-vs-bracket", alt, bracket)
    r2 = _diff_report("alt-vs-product", alt, prod)
    return {"check": "rank2-alternative", "pass": r1["pass"] and r2["pass"],
            "q_order": q_order, "bracket": r1, "product": r2}


# ---------------------------------------------------------------------------
# virtual Hodge ratio


def virtual_hodge_ratio(r: int, k: int, q_order) -> Series:
    """(prod_d 1/(1 - (xy)^{rd} q^d))^r sum_k (xy)^{<k,rho>} ((xy)^r q)^{(k,k)/2},
    with coefficients polynomials in s = (xy)^{1/2}."""
    if not 0 <= k < r:
        raise DomainError("sector must satisfy 0 <= k < r")
    den = _sector_den(r)
    out = _one(q_order, den)
    for d in range(1, int(q_order) + 1):
        g = _geometric(2 * r * d, d, q_order, den)
        for _ in range(r):
            out = out * g
    terms: dict = {}
    for kv in enumerate_coroots(r, k, q_order):
        half = norm(kv) / 2
        xy = rho_pairing(kv) + r * half
        se = 2 * xy
        if se.denominator != 1:
            raise DomainError("non-integral exponent of (xy)^{1/2}")
        terms[half] = terms.get(half, tpoly()) + tmono(int(se))
    return out * _qseries(terms, q_order, den)


def virtual_hodge_consistency(r: int, k: int, q_order) -> dict:
    """At xy = t^2 the ratio equals (fixed-point blowup sum) / (fixed-point quot sum)."""
    den = _sector_den(r)
    ratio = virtual_hodge_ratio(r, k, q_order)
    quot = _qseries({Q(n): poincare_quot(r, n) for n in range(int(q_order) + 1)}, q_order, den)
    lhs = blowup_sum_series(r, k, q_order)
    rhs = ratio * quot
    return _diff_report("virtual-hodge-ratio", lhs, rhs, rank=r, sector=k, q_order=str(q_order))


def check_all(q_order: int = 4) -> dict:
    reps = {}
    for r in (1, 2, 3):
        reps[f"quot_r{r}"] = poincare_quot_gen(r, 5)
    reps["blowup_r2_k0"] = poincare_blowup_gen(2, 0, q_order)
    reps["blowup_r2_k1"] = poincare_blowup_gen(2, 1, q_order)
    reps["ochiai"] = ochiai_check(8)
    reps["rank2_alt"] = rank2_alt_check(q_order)
    reps["hodge_r2_k0"] = virtual_hodge_consistency(2, 0, q_order)
    reps["hodge_r2_k1"] = virtual_hodge_consistency(2, 1, q_order)
    return {"check": "betti", "pass": all(r["pass"] for r in reps.values()), "reports": reps}
