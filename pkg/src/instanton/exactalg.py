"""
Exact arithmetic kernel.

Rationals are ``fractions.Fraction``.  On top of them this module provides

* ``Gauss``      -- Gaussian rationals x + y*i,
* ``Poly``       -- sparse multivariate polynomials,
* ``Linear`` / ``RatFunc`` -- rational functions in (e1, e2) whose
  denominators are kept as multisets of linear forms,
* ``GradedPoly`` -- polynomials in coupling variables truncated by a
  weighted degree,
* ``Series``     -- truncated Laurent/Puiseux series in one variable over
  any of the rings above.

Everything is immutable after construction and exact.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from fractions import Fraction
from math import gcd, factorial
from typing import Iterable, Mapping, Sequence

Q = Fraction


class ArtifactError(Exception):
    """Base class for errors raised by the library."""


class DomainError(ArtifactError):
    pass


class PoleError(ArtifactError):
    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class SamplingError(ArtifactError):
    pass


class OrderError(ArtifactError):
    pass


class UnsupportedError(ArtifactError):
    pass


def is_zero(c) -> bool:
    return c == 0


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# Gaussian rationals


class Gauss:
    """x + y*i with rational x, y."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Q(re))
        object.__setattr__(self, "im", Q(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gauss is immutable")

    @staticmethod
    def lift(x) -> "Gauss":
        if isinstance(x, Gauss):
            return x
        return Gauss(x, 0)

    def __add__(self, o):
        if isinstance(o, Gauss):
            return Gauss(self.re + o.re, self.im + o.im)
        if isinstance(o, (int, Fraction)):
            return Gauss(self.re + o, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, Gauss):
            return Gauss(self.re * o.re - self.im * o.im,
                         self.re * o.im + self.im * o.re)
        if isinstance(o, (int, Fraction)):
            return Gauss(self.re * o, self.im * o)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self):
        return Gauss(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Gauss division by zero")
        return Gauss(self.re / n, -self.im / n)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return Gauss(self.re / o, self.im / o)
        return self * Gauss.lift(o).inverse()

    def __rtruediv__(self, o):
        return Gauss.lift(o) * self.inverse()

    def __pow__(self, n: int):
        result, base = Gauss(1), self
        if n < 0:
            base, n = base.inverse(), -n
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, o):
        if isinstance(o, Gauss):
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re} + {self.im}*i)"


I = Gauss(0, 1)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


class Poly:
    """Sparse polynomial in ``nvars`` variables: {exponent tuple: coefficient}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i, c=1):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Q(c)})

    def _lift(self, o):
        if isinstance(o, Poly):
            return o
        return Poly.const(self.nvars, o)

    def __add__(self, o):
        if not isinstance(o, (Poly, int, Fraction, Gauss)):
            return NotImplemented
        o = self._lift(o)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, Gauss)):
            return Poly(self.nvars, {e: c * o for e, c in self.terms.items()})
        if not isinstance(o, Poly):
            return NotImplemented
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.nvars, t)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction, Gauss)):
            inv = Q(1) / o if not isinstance(o, Gauss) else o.inverse()
            return self * inv
        return NotImplemented

    def __pow__(self, n: int):
        result = Poly.const(self.nvars, Q(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.terms == o.terms
        if isinstance(o, (int, Fraction, Gauss)):
            if o == 0:
                return not self.terms
            return self.terms == {(0,) * self.nvars: o}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coeff(self, e) -> object:
        return self.terms.get(tuple(e), 0)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, d: int) -> "Poly":
        return Poly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= d})

    def __call__(self, *point):
        total = 0
        for e, c in self.terms.items():
            m = c
            for x, k in zip(point, e):
                if k:
                    m = m * x ** k
            total = total + m
        return total

    def constant(self):
        return self.terms.get((0,) * self.nvars, 0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            parts.append(f"{self.terms[e]}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# linear forms and rational functions in (e1, e2)


class Linear:
    """c0 + c1*e1 + c2*e2 with rational coefficients."""

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0=0, c1=0, c2=0):
        self.c0, self.c1, self.c2 = Q(c0), Q(c1), Q(c2)

    def key(self):
        return (self.c0, self.c1, self.c2)

    def __add__(self, o):
        if isinstance(o, Linear):
            return Linear(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2)
        if isinstance(o, (int, Fraction)):
            return Linear(self.c0 + o, self.c1, self.c2)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Linear(-self.c0, -self.c1, -self.c2)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return Linear(self.c0 * o, self.c1 * o, self.c2 * o)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, o):
        if isinstance(o, Linear):
            return self.key() == o.key()
        if isinstance(o, (int, Fraction)):
            return self.c1 == 0 and self.c2 == 0 and self.c0 == o
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    def is_constant(self):
        return self.c1 == 0 and self.c2 == 0

    def normalized(self):
        """(scale, monic form) with the first nonzero of (c1, c2) equal to 1."""
        lead = self.c1 if self.c1 != 0 else self.c2
        if lead == 0:
            raise DomainError("constant form has no normalization")
        return lead, (self.c0 / lead, self.c1 / lead, self.c2 / lead)

    def poly(self) -> Poly:
        return Poly(2, {(0, 0): self.c0, (1, 0): self.c1, (0, 1): self.c2})

    def __call__(self, e1, e2):
        return self.c0 + self.c1 * e1 + self.c2 * e2

    def __repr__(self):
        return f"({self.c0} + {self.c1}*e1 + {self.c2}*e2)"


def _form_poly(key) -> Poly:
    c0, c1, c2 = key
    return Poly(2, {(0, 0): c0, (1, 0): c1, (0, 1): c2})


def _divide_by_form(num: Poly, key):
    """Exact quotient num / form, or None when the form does not divide num."""
    c0, c1, c2 = key
    if c1 != 0:
        # monic in e1: e1 - r(e2) with r = -(c0 + c2 e2)
        main, other = 0, 1
        r0, r1 = -c0, -c2
    else:
        main, other = 1, 0
        r0, r1 = -c0, Q(0)
    # group by power of the main variable: {k: {j: coeff}}
    rows: dict = {}
    for e, c in num.terms.items():
        rows.setdefault(e[main], {})[e[other]] = c
    if not rows:
        return Poly(2)
    deg = max(rows)
    quotient: dict = {}
    carry: dict = {}
    for k in range(deg, -1, -1):
        cur = dict(rows.get(k, {}))
        for j, c in carry.items():
            cur[j] = cur.get(j, 0) + c
        cur = {j: c for j, c in cur.items() if c != 0}
        if k == 0:
            if cur:
                return None
            break
        quotient[k - 1] = cur
        # carry = r(e2) * cur
        carry = {}
        for j, c in cur.items():
            if r0 != 0:
                carry[j] = carry.get(j, 0) + r0 * c
            if r1 != 0:
                carry[j + 1] = carry.get(j + 1, 0) + r1 * c
    terms = {}
    for k, row in quotient.items():
        for j, c in row.items():
            e = [0, 0]
            e[main], e[other] = k, j
            terms[tuple(e)] = c
    return Poly(2, terms)


class RatFunc:
    """Rational function num / prod(forms) in (e1, e2).

    Denominator forms are monic (see ``Linear.normalized``) and stored with
    multiplicity.  After every operation the numerator is trial-divided by
    the denominator factors, which makes the representation canonical.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | None = None, den: Mapping | None = None, reduce: bool = True):
        num = num if num is not None else Poly(2)
        den = Counter({k: m for k, m in (den or {}).items() if m})
        if reduce:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _reduce(num, den):
        if not num.terms:
            return num, Counter()
        den = Counter(den)
        for key in list(den):
            while den[key]:
                q = _divide_by_form(num, key)
                if q is None:
                    break
                num = q
                den[key] -= 1
        return num, +den

    @classmethod
    def const(cls, c):
        return cls(Poly.const(2, Q(c)), reduce=False)

    @classmethod
    def from_poly(cls, p: Poly):
        return cls(p, reduce=False)

    @classmethod
    def inverse_of_forms(cls, forms: Iterable[Linear]):
        scale = Q(1)
        den: Counter = Counter()
        for f in forms:
            if f.is_constant():
                if f.c0 == 0:
                    raise PoleError("vanishing weight", factor=f)
                scale *= f.c0
                continue
            lead, key = f.normalized()
            scale *= lead
            den[key] += 1
        return cls(Poly.const(2, 1 / scale), den, reduce=False)

    def _lift(self, o):
        if isinstance(o, RatFunc):
            return o
        if isinstance(o, Poly):
            return RatFunc(o, reduce=False)
        if isinstance(o, Linear):
            return RatFunc(o.poly(), reduce=False)
        if isinstance(o, (int, Fraction)):
            return RatFunc.const(o)
        raise TypeError(o)

    def __add__(self, o):
        if not isinstance(o, (RatFunc, Poly, Linear, int, Fraction)):
            return NotImplemented
        o = self._lift(o)
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        common = self.den | o.den
        a = self.num
        for key, m in (common - self.den).items():
            a = a * _form_poly(key) ** m
        b = o.num
        for key, m in (common - o.den).items():
            b = b * _form_poly(key) ** m
        return RatFunc(a + b, common)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return RatFunc(self.num * o, self.den, reduce=False) if o != 0 else RatFunc()
        if not isinstance(o, (RatFunc, Poly, Linear)):
            return NotImplemented
        o = self._lift(o)
        return RatFunc(self.num * o.num, self.den + o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return RatFunc(self.num * (Q(1) / o), self.den, reduce=False)
        if isinstance(o, Linear):
            return self * RatFunc.inverse_of_forms([o])
        if isinstance(o, RatFunc):
            if len(o.num.terms) == 1:
                (e, c), = o.num.terms.items()
                forms = [Linear(0, 1, 0)] * e[0] + [Linear(0, 0, 1)] * e[1]
                inv = RatFunc.inverse_of_forms(forms) * (Q(1) / c)
                return self * RatFunc(inv.num, inv.den + o.den)
        raise DomainError("division only by monomials or linear forms")

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative power of a rational function")
        result = RatFunc.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            if o == 0:
                return not self.num.terms
            o = RatFunc.const(o)
        if isinstance(o, Poly):
            o = RatFunc(o)
        if not isinstance(o, RatFunc):
            return NotImplemented
        return (self - o).num == 0

    def __hash__(self):
        return hash((self.num, frozenset(self.den.items())))

    def is_polynomial(self) -> bool:
        return not self.den

    def denominator_forms(self):
        return [Linear(*key) for key in self.den.elements()]

    def __call__(self, e1, e2):
        d = Q(1)
        for key, m in self.den.items():
            v = _form_poly(key)(e1, e2)
            if v == 0:
                raise PoleError("evaluation at a pole", factor=Linear(*key))
            d = d * v ** m
        return self.num(e1, e2) / d

    def taylor(self, degree: int) -> Poly:
        """Taylor polynomial at e1 = e2 = 0 through total degree ``degree``."""
        result = self.num.truncate(degree)
        for key, m in self.den.items():
            c0, c1, c2 = key
            if c0 == 0:
                raise PoleError("pole at the origin", factor=Linear(*key))
            # 1/(c0 + l) = (1/c0) sum (-l/c0)^k
            step = Poly(2, {(1, 0): -c1 / c0, (0, 1): -c2 / c0})
            geo = Poly.const(2, Q(1))
            acc = Poly.const(2, Q(1))
            for _ in range(degree):
                acc = (acc * step).truncate(degree)
                geo = geo + acc
            geo = geo * (1 / c0)
            for _ in range(m):
                result = (result * geo).truncate(degree)
        return result

    def __repr__(self):
        if not self.den:
            return f"RatFunc({self.num!r})"
        den = " * ".join(f"{Linear(*k)!r}^{m}" if m > 1 else repr(Linear(*k))
                         for k, m in sorted(self.den.items()))
        return f"RatFunc(({self.num!r}) / ({den}))"


def taylor_at_origin(f: RatFunc, total_degree: int) -> Poly:
    return f.taylor(total_degree)


E1 = Linear(0, 1, 0)
E2 = Linear(0, 0, 1)


# ---------------------------------------------------------------------------
# graded coupling polynomials


class GradedPoly:
    """Polynomial in named variables truncated by weighted degree.

    ``weights[i]`` is the degree of variable i; monomials of weighted degree
    above ``bound`` are dropped.  ``caps`` optionally limits the ordinary
    total degree in the weight-0 variables so that exponentials terminate.
    Coefficients live in any commutative ring (Fraction, RatFunc, ...).
    """

    __slots__ = ("names", "weights", "bound", "cap0", "terms")

    def __init__(self, names: Sequence[str], weights: Sequence[int], bound: int,
                 terms: Mapping | None = None, cap0: int | None = None):
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.bound = bound
        self.cap0 = cap0
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if c != 0 and self._admissible(e):
                clean[e] = c
        self.terms = clean

    def _admissible(self, e) -> bool:
        w = sum(x * y for x, y in zip(e, self.weights))
        if w > self.bound:
            return False
        if self.cap0 is not None:
            z = sum(x for x, y in zip(e, self.weights) if y == 0)
            if z > self.cap0:
                return False
        return True

    def _like(self, terms):
        return GradedPoly(self.names, self.weights, self.bound, terms, self.cap0)

    def zero(self):
        return self._like({})

    def const(self, c):
        return self._like({(0,) * len(self.names): c})

    def var(self, name, c=1):
        e = [0] * len(self.names)
        e[self.names.index(name)] = 1
        return self._like({tuple(e): c})

    def _lift(self, o):
        if isinstance(o, GradedPoly):
            return o
        return self.const(o)

    def __add__(self, o):
        o = self._lift(o)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t[e] + c if e in t else c
        return self._like(t)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, GradedPoly):
            if o == 0:
                return self.zero()
            return self._like({e: c * o for e, c in self.terms.items()})
        t: dict = {}
        w = self.weights
        for e1, c1 in self.terms.items():
            d1 = sum(x * y for x, y in zip(e1, w))
            for e2, c2 in o.terms.items():
                if d1 + sum(x * y for x, y in zip(e2, w)) > self.bound:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                p = c1 * c2
                t[e] = t[e] + p if e in t else p
        return self._like(t)

    def __rmul__(self, o):
        return self * o

    def __truediv__(self, o):
        return self._like({e: c / o for e, c in self.terms.items()})

    def __eq__(self, o):
        if isinstance(o, GradedPoly):
            return (self - o).terms == {}
        if o == 0:
            return not self.terms
        return (self - o).terms == {}

    def __hash__(self):
        return hash(frozenset(self.terms))

    def constant(self):
        return self.terms.get((0,) * len(self.names), 0)

    def coeff(self, mono: Mapping[str, int] | Sequence[int]):
        if isinstance(mono, Mapping):
            e = [0] * len(self.names)
            for k, v in mono.items():
                e[self.names.index(k)] = v
            mono = e
        return self.terms.get(tuple(mono), 0)

    def degree_of(self, e) -> int:
        return sum(x * y for x, y in zip(e, self.weights))

    def low_part(self, below: int) -> "GradedPoly":
        """Monomials of weighted degree < below."""
        return self._like({e: c for e, c in self.terms.items() if self.degree_of(e) < below})

    def map(self, fn):
        return self._like({e: fn(c) for e, c in self.terms.items()})

    def exp(self):
        """exp of an element; the constant term must be zero."""
        if self.constant() != 0:
            raise DomainError("exp needs zero constant term in a graded ring")
        if self.cap0 is None and any(w == 0 for w in self.weights):
            raise DomainError("weight-0 variables need a degree cap for exp")
        one = Q(1)
        result = self.const(one)
        power = self.const(one)
        k = 0
        while True:
            k += 1
            power = power * self
            if not power.terms:
                break
            result = result + power * Q(1, factorial(k))
        return result

    def inverse(self):
        """Inverse of an element with invertible constant term."""
        c0 = self.constant()
        if c0 == 0:
            raise DomainError("graded inverse needs a nonzero constant term")
        if self.cap0 is None and any(w == 0 for w in self.weights):
            raise DomainError("weight-0 variables need a degree cap for inverse")
        ci = _scalar_inverse(c0)
        x = self * ci - self.const(Q(1))
        result = self.const(Q(1))
        power = self.const(Q(1))
        while True:
            power = -(power * x)
            if not power.terms:
                break
            result = result + power
        return result * ci

    def monomial_str(self, e) -> str:
        parts = [f"{n}^{k}" if k > 1 else n for n, k in zip(self.names, e) if k]
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c!r})*{self.monomial_str(e)}" for e, c in sorted(self.terms.items()))


# ---------------------------------------------------------------------------
# truncated Laurent / Puiseux series


def _scalar_inverse(c):
    if c == 1:
        return Q(1)
    if isinstance(c, (int, Fraction)):
        return 1 / Q(c)
    if isinstance(c, Gauss):
        return c.inverse()
    raise DomainError(f"cannot invert coefficient {c!r}")


class Series:
    """Truncated series sum c_e * var^(e/den) + O(var^(prec/den)).

    ``terms`` maps integer exponent numerators to nonzero coefficients.
    """

    __slots__ = ("terms", "den", "prec", "var")

    def __init__(self, terms: Mapping, prec: int, den: int = 1, var: str = "q"):
        self.den = den
        self.prec = prec
        self.var = var
        self.terms = {e: c for e, c in terms.items() if e < prec and not is_zero(c)}

    # construction --------------------------------------------------------
    @classmethod
    def from_list(cls, coeffs: Sequence, start: int = 0, den: int = 1, var: str = "q",
                  prec: int | None = None):
        terms = {start + i: c for i, c in enumerate(coeffs)}
        return cls(terms, start + len(coeffs) if prec is None else prec, den, var)

    @classmethod
    def one(cls, prec: int, den: int = 1, var: str = "q", unit=Q(1)):
        return cls({0: unit}, prec, den, var)

    @classmethod
    def monomial(cls, c, exponent, prec: int, den: int = 1, var: str = "q"):
        exponent = Q(exponent)
        e = exponent * den
        if e.denominator != 1:
            raise OrderError("exponent not representable at this denominator")
        return cls({int(e): c}, prec, den, var)

    # bookkeeping -------------------------------------------------------------
    def with_den(self, den: int) -> "Series":
        if den % self.den:
            raise OrderError("new denominator must be a multiple of the old one")
        m = den // self.den
        return Series({e * m: c for e, c in self.terms.items()}, self.prec * m, den, self.var)

    def _align(self, o: "Series"):
        if self.var != o.var:
            raise OrderError(f"variable mismatch {self.var} vs {o.var}")
        if self.den == o.den:
            return self, o
        d = _lcm(self.den, o.den)
        return self.with_den(d), o.with_den(d)

    def simplify(self) -> "Series":
        """Re-encode at the smallest denominator that holds all exponents."""
        g = 0
        for e in self.terms:
            g = gcd(g, e)
        g = gcd(g, self.prec)
        g = gcd(g, self.den)
        if g <= 1:
            return self
        return Series({e // g: c for e, c in self.terms.items()}, self.prec // g, self.den // g, self.var)

    @property
    def order(self) -> Fraction:
        return Q(self.prec, self.den)

    def valuation(self) -> int:
        return min(self.terms) if self.terms else self.prec

    def coeff(self, exponent, default=0):
        e = Q(exponent) * self.den
        if e.denominator != 1:
            return default
        e = int(e)
        if e >= self.prec:
            raise OrderError(f"coefficient of {exponent} beyond truncation {self.order}")
        return self.terms.get(e, default)

    def items(self):
        """(rational exponent, coefficient) pairs in increasing order."""
        return [(Q(e, self.den), self.terms[e]) for e in sorted(self.terms)]

    def truncate(self, order) -> "Series":
        p = Q(order) * self.den
        p = min(self.prec, int(p) if p.denominator == 1 else int(p) + 1)
        return Series(self.terms, p, self.den, self.var)

    def map(self, fn) -> "Series":
        return Series({e: fn(c) for e, c in self.terms.items()}, self.prec, self.den, self.var)

    # arithmetic --------------------------------------------------------------
    def _lift(self, o):
        if isinstance(o, Series):
            return o
        return Series({0: o}, max(self.prec, 1), self.den, self.var) if not is_zero(o) else \
            Series({}, max(self.prec, 1), self.den, self.var)

    def __add__(self, o):
        if isinstance(o, Series):
            a, b = self._align(o)
            t = dict(a.terms)
            for e, c in b.terms.items():
                t[e] = t[e] + c if e in t else c
            return Series(t, min(a.prec, b.prec), a.den, a.var)
        if is_zero(o):
            return self
        if self.prec <= 0:
            return self
        t = dict(self.terms)
        t[0] = t[0] + o if 0 in t else o
        return Series(t, self.prec, self.den, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Series({e: -c for e, c in self.terms.items()}, self.prec, self.den, self.var)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Series):
            if is_zero(o):
                return Series({}, self.prec, self.den, self.var)
            return Series({e: c * o for e, c in self.terms.items()}, self.prec, self.den, self.var)
        a, b = self._align(o)
        prec = min(a.valuation() + b.prec, b.valuation() + a.prec)
        t: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = e1 + e2
                if e >= prec:
                    continue
                p = c1 * c2
                t[e] = t[e] + p if e in t else p
        return Series(t, prec, a.den, a.var)

    def __rmul__(self, o):
        return self * o

    def shift(self, exponent) -> "Series":
        """Multiply by var**exponent."""
        e = Q(exponent) * self.den
        if e.denominator != 1:
            return self.with_den(self.den * e.denominator).shift(exponent)
        e = int(e)
        return Series({k + e: c for k, c in self.terms.items()}, self.prec + e, self.den, self.var)

    def inverse(self) -> "Series":
        if not self.terms:
            raise DomainError("inverse of a series with no known nonzero term")
        v = self.valuation()
        c = self.terms[v]
        ci = _scalar_inverse(c)
        n = self.prec - v  # relative precision
        f = [self.terms.get(v + j, 0) for j in range(n)]
        h = [ci]
        for m in range(1, n):
            s = 0
            for j in range(1, m + 1):
                if not is_zero(f[j]) and not is_zero(h[m - j]):
                    s = s + f[j] * h[m - j]
            h.append(-(s * ci) if not is_zero(s) else 0)
        return Series({-v + m: h[m] for m in range(n)}, -v + n, self.den, self.var)

    def __truediv__(self, o):
        if isinstance(o, Series):
            return self * o.inverse()
        return self * _scalar_inverse(o)

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, n):
        if isinstance(n, Fraction) and n.denominator != 1:
            return self.rational_power(n)
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return Series.one(max(self.prec - self.valuation(), 1), self.den, self.var)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def D(self) -> "Series":
        """var * d/dvar."""
        return Series({e: c * Q(e, self.den) for e, c in self.terms.items()}, self.prec, self.den, self.var)

    def exp(self) -> "Series":
        if self.terms and min(self.terms) < 0:
            raise DomainError("exp of a series with negative exponents")
        if not is_zero(self.terms.get(0, 0)):
            raise DomainError("exp needs constant term 0")
        n = self.prec
        f = {e: c * e for e, c in self.terms.items()}  # numerators of D f times den
        E = [Q(1)]
        for m in range(1, n):
            s = 0
            for j, fj in f.items():
                if j <= m and not is_zero(E[m - j]):
                    s = s + fj * E[m - j]
            E.append(s * Q(1, m) if not is_zero(s) else 0)
        return Series({m: E[m] for m in range(n)}, n, self.den, self.var)

    def log(self) -> "Series":
        if self.terms and min(self.terms) < 0:
            raise DomainError("log of a series with negative exponents")
        if self.terms.get(0, 0) != 1:
            raise DomainError("log needs constant term 1")
        g = self.D() * self.inverse()
        return Series({e: c * Q(self.den, e) for e, c in g.terms.items() if e != 0}, self.prec, self.den, self.var)

    def rational_power(self, alpha) -> "Series":
        """(1 + ...)**alpha for a unit-leading series with constant term 1."""
        return (self.log() * Q(alpha)).exp()

    def subs_power(self, m) -> "Series":
        """var -> var**m for positive rational m."""
        m = Q(m)
        num, dd = m.numerator, m.denominator
        if num <= 0:
            raise DomainError("substitution power must be positive")
        return Series({e * num: c for e, c in self.terms.items()}, self.prec * num, self.den * dd, self.var)

    def rename(self, var: str) -> "Series":
        return Series(self.terms, self.prec, self.den, var)

    def compose(self, inner: "Series") -> "Series":
        """self(inner) for self with integral exponents >= 0 and inner of positive valuation."""
        if self.den != 1 or (self.terms and min(self.terms) < 0):
            raise DomainError("compose needs a power series outer function")
        if inner.terms and inner.valuation() <= 0:
            raise DomainError("compose needs an inner series of positive valuation")
        v = inner.valuation()
        prec = min(inner.prec, self.prec * v) if self.prec > 0 else inner.prec
        # Horner's scheme from the top coefficient down
        top = self.prec - 1
        acc = Series({}, prec, inner.den, inner.var)
        for k in range(top, -1, -1):
            acc = acc * inner + self.terms.get(k, 0)
            acc = Series(acc.terms, min(acc.prec, prec), acc.den, acc.var)
        return Series(acc.terms, prec, inner.den, inner.var)

    # comparison --------------------------------------------------------------
    def __eq__(self, o):
        if isinstance(o, Series):
            d = self - o
            return not d.terms
        return NotImplemented

    __hash__ = None

    def first_difference(self, o: "Series"):
        """Lowest exponent where two series differ within common precision, or None."""
        d = self - o
        if not d.terms:
            return None
        e = min(d.terms)
        return Q(e, d.den)

    def __repr__(self):
        parts = []
        for q, c in self.items():
            parts.append(f"{c}*{self.var}^{q}")
        parts.append(f"O({self.var}^{self.order})")
        return " + ".join(parts)

    # serialization -----------------------------------------------------------
    def to_json_obj(self) -> dict:
        terms = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if isinstance(c, Gauss):
                if c.im != 0:
                    raise DomainError("JSON encoding needs rational coefficients")
                c = c.re
            c = Q(c)
            terms.append({"pow": e, "num": str(c.numerator), "den": str(c.denominator)})
        return {"variable": self.var, "denom_exp": self.den, "order": self.prec, "terms": terms}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Series":
        terms = {int(t["pow"]): Q(int(t["num"]), int(t["den"])) for t in obj["terms"]}
        return cls(terms, int(obj["order"]), int(obj["denom_exp"]), obj["variable"])

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def series_exp(f: Series) -> Series:
    return f.exp()


def series_log(f: Series) -> Series:
    return f.log()


# ---------------------------------------------------------------------------
# rational sampling for identity testing


class Sample:
    """A rational point (e1, e2, a_1..a_r) with sum(a) = 0."""

    __slots__ = ("e1", "e2", "a")

    def __init__(self, e1, e2, a):
        self.e1, self.e2 = Q(e1), Q(e2)
        self.a = tuple(Q(x) for x in a)

    def __repr__(self):
        return f"Sample(e1={self.e1}, e2={self.e2}, a={list(map(str, self.a))})"

    def as_dict(self):
        return {"e1": str(self.e1), "e2": str(self.e2), "a": [str(x) for x in self.a]}


def generic(sample: Sample, spread: int) -> bool:
    """No small integer relation c1*e1 + c2*e2 + (a_b - a_a) vanishes, |c| <= spread."""
    diffs = {Q(0)}
    for x in sample.a:
        for y in sample.a:
            diffs.add(x - y)
    for c1 in range(-spread, spread + 1):
        for c2 in range(-spread, spread + 1):
            for d in diffs:
                if (c1, c2) == (0, 0) and d == 0:
                    continue
                if c1 * sample.e1 + c2 * sample.e2 + d == 0:
                    return False
    return True


def rational_sample(seed: int, r: int, spread: int = 12, retries: int = 200,
                    symbolic_eps: bool = False, extra=None) -> Sample:
    """Deterministic generic rational point for seed.

    ``spread`` bounds the integer combinations that must not vanish; ``extra``
    is an optional predicate the sample must also satisfy.
    """
    rng = random.Random(seed)
    for _ in range(retries):
        e1 = Q(rng.randint(1, 97), rng.randint(1, 61)) * rng.choice((1, -1))
        e2 = Q(rng.randint(1, 97), rng.randint(1, 61)) * rng.choice((1, -1))
        a = [Q(rng.randint(-500, 500), rng.randint(1, 73)) for _ in range(r - 1)]
        a.append(-sum(a, Q(0)))
        s = Sample(e1, e2, a)
        if symbolic_eps:
            ok = len(set(a)) == len(a)
        else:
            ok = generic(s, spread)
        if ok and (extra is None or extra(s)):
            return s
    raise SamplingError(f"no generic sample after {retries} tries (seed {seed})")


def bernoulli_numbers(n: int) -> list:
    """B_0..B_n from the series t/(e^t - 1)."""
    e = Series.from_list([Q(1, factorial(k + 1)) for k in range(n + 1)], var="t")
    inv = e.inverse()
    return [inv.terms.get(k, Q(0)) * factorial(k) for k in range(n + 1)]
