"""Univariate polynomials and rational functions in t over the rationals.

Coefficient lists are ascending in degree and never carry trailing zeros, so
the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable

from .arith import divisors, integer_nth_root
from .scalar import Scalar, div, exact
from .series import PowerSeries


class NotAPerfectPower(ValueError):
    """A rational function has no s-th root in Q(t) with value 1 at t = 0."""


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [exact(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Scalar, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Poly":
        return cls([0] * degree + [c])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [0] * max(0, len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = div(c, lead)
            quot[i - dq] = q
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= q * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def content(self) -> Fraction:
        """Positive rational c with self / c an integer polynomial of content 1."""
        if self.is_zero():
            return Fraction(0)
        den = lcm(*(Fraction(c).denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        return Fraction(gcd(*ints), den)

    def primitive(self) -> "Poly":
        """Integer polynomial of content 1 with positive leading coefficient."""
        if self.is_zero():
            return self
        p = Poly(exact(c / self.content()) for c in self.coeffs)
        return -p if p.leading < 0 else p

    def monic(self) -> "Poly":
        return Poly(div(c, self.leading) for c in self.coeffs)

    def substitute_power(self, s: int) -> "Poly":
        """p(t^s)."""
        if s < 1:
            raise ValueError("substitution exponent must be positive")
        out = [0] * (s * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * s] = c
        return Poly(out)

    def reversed(self, degree: int | None = None) -> "Poly":
        """t^d p(1/t) with d = ``degree`` (defaults to deg p)."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return Poly([self[d - i] for i in range(d + 1)])

    def series(self, order: int) -> PowerSeries:
        return PowerSeries(self.coeffs, order)

    def valuation(self) -> int:
        """Largest e with t^e dividing p (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor as a primitive integer polynomial (zero if both are zero)."""
    a, b = _as_poly(a), _as_poly(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.primitive()


def format_poly(coeffs, var: str = "t") -> str:
    """Render ascending coefficients as e.g. ``1 - t + 2*t^3``."""
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class RationalFunction:
    """Quotient of integer polynomials in canonical form.

    Canonical form: no common factor, denominator with positive leading
    coefficient, and the joint content of numerator and denominator equal to
    one.  Whenever the value admits it (always, for Lefschetz zeta functions)
    this makes numerator and denominator individually primitive, so equality is
    structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        scale = lcm(*(Fraction(c).denominator for c in num.coeffs + den.coeffs))
        nums = [int(c * scale) for c in num.coeffs]
        dens = [int(c * scale) for c in den.coeffs]
        g = gcd(*nums, *dens)
        if dens[-1] < 0:
            g = -g
        self.num = Poly(c // g for c in nums)
        self.den = Poly(c // g for c in dens)

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(1)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({list(self.num.coeffs)!r}, {list(self.den.coeffs)!r})"

    def __str__(self) -> str:
        num, den = self.display_pair()
        if den == Poly([1]):
            return str(num)

        def wrap(p: Poly) -> str:
            single = sum(1 for c in p.coeffs if c != 0) == 1 and p.leading > 0
            return str(p) if single else f"({p})"

        return f"{wrap(num)} / {wrap(den)}"

    def display_pair(self) -> tuple[Poly, Poly]:
        """Numerator and denominator rescaled so the denominator's lowest term is positive."""
        lowest = self.den[self.den.valuation()]
        if lowest < 0:
            return -self.num, -self.den
        return self.num, self.den

    def is_one(self) -> bool:
        return self.num == self.den

    @property
    def degree(self) -> int:
        """Numerator degree minus denominator degree."""
        return self.num.degree - self.den.degree

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole")
        return div(self.num(x), d) if isinstance(x, (int, Fraction)) else self.num(x) / d

    def __mul__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return _as_rf(other) / self

    def __add__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_as_rf(other))

    def __pow__(self, e: int) -> "RationalFunction":
        if e < 0:
            return RationalFunction(self.den ** (-e), self.num ** (-e))
        return RationalFunction(self.num**e, self.den**e)

    def substitute_power(self, s: int) -> "RationalFunction":
        """F(t^s)."""
        return RationalFunction(self.num.substitute_power(s), self.den.substitute_power(s))

    def series(self, order: int) -> PowerSeries:
        if self.den[0] == 0:
            raise ZeroDivisionError("denominator vanishes at t = 0")
        return self.num.series(order) * self.den.series(order).inverse()

    def nth_root(self, s: int) -> "RationalFunction":
        return ratfunc_nth_root(self, s)


def _as_rf(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


def ratfunc_normalize(num, den) -> RationalFunction:
    return RationalFunction(num, den)


def _poly_nth_root(p: Poly, s: int) -> Poly:
    """Integer polynomial q with q**s == p and q(0) > 0 (p(0) must be nonzero)."""
    c0 = p[0]
    if c0 == 0:
        raise NotAPerfectPower("polynomial vanishes at t = 0")
    r0 = integer_nth_root(c0, s) if isinstance(c0, int) else None
    if r0 is None:
        raise NotAPerfectPower(f"constant term {c0} is not a perfect {s}-th power")
    d, rem = divmod(p.degree, s)
    if rem:
        raise NotAPerfectPower(f"degree {p.degree} is not a multiple of {s}")
    normalized = PowerSeries([div(c, c0) for c in p.coeffs], d)
    q = Poly(r0 * c for c in normalized.nth_root(s).coeffs)
    if q**s != p:
        raise NotAPerfectPower(f"{p} is not a perfect {s}-th power")
    return q


def ratfunc_nth_root(F: RationalFunction, s: int) -> RationalFunction:
    """The s-th root G of F with G(0) = 1.

    In canonical form, F = G**s forces the numerator and denominator of F to be
    s-th powers themselves (up to a common sign), so each is rooted on its own
    through the truncated power series and the result is verified exactly.
    """
    if s < 1:
        raise ValueError("root index must be positive")
    if F.den[0] == 0 or F.num[0] != F.den[0]:
        raise ValueError("s-th root requires F(0) = 1")
    num, den = F.num, F.den
    if num[0] < 0:
        num, den = -num, -den
    G = RationalFunction(_poly_nth_root(num, s), _poly_nth_root(den, s))
    if G**s != F:
        raise NotAPerfectPower(f"{F} is not a perfect {s}-th power")
    return G


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Poly:
    """The d-th cyclotomic polynomial, from t^d - 1 = prod over e | d of Phi_e."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    p = Poly.monomial(d) - 1
    for e in divisors(d)[:-1]:
        p = p.exact_div(cyclotomic(e))
    return p


def cyclotomic_factorization(p: Poly) -> tuple[dict[int, int], int, Poly]:
    """Divide out t^e and cyclotomic factors from ``p``.

    Returns ``(multiplicities, e, residual)`` with p = t^e * residual *
    prod Phi_d^mult.  Candidates d are tried by increasing Euler totient;
    phi(d) >= sqrt(d / 2) bounds the search by d <= 2 * deg^2.
    """
    from .arith import totient

    if p.is_zero():
        raise ValueError("the zero polynomial has no factorization")
    e = p.valuation()
    rest = Poly(p.coeffs[e:])
    found: dict[int, int] = {}
    bound = 2 * rest.degree**2
    for d in sorted(range(1, bound + 1), key=lambda d: (totient(d), d)):
        phi = totient(d)
        if phi > rest.degree:
            break
        while phi <= rest.degree:
            q, r = divmod(rest, cyclotomic(d))
            if not r.is_zero():
                break
            rest = q
            found[d] = found.get(d, 0) + 1
    return found, e, rest
