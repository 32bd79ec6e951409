"""Truncated formal power series over the rationals.

A ``PowerSeries`` of truncation order N carries the coefficients of
t^0 .. t^N.  Binary operations on series of different orders truncate to the
smaller order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalar import Scalar, div, exact


class PowerSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [exact(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = cs[: order + 1] + [0] * (order + 1 - len(cs))
        self.coeffs: tuple[Scalar, ...] = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([], order)

    def __getitem__(self, n: int) -> Scalar:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PowerSeries({list(self.coeffs)!r}, order={self.order})"

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries(self.coeffs[: order + 1], order)

    def _pair(self, other: "PowerSeries") -> tuple[Sequence, Sequence, int]:
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        a, b, n = self._pair(other)
        return PowerSeries([x + y for x, y in zip(a, b)], n)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        a, b, n = self._pair(other)
        return PowerSeries([x - y for x, y in zip(a, b)], n)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-x for x in self.coeffs], self.order)

    def scale(self, c) -> "PowerSeries":
        c = exact(c)
        return PowerSeries([c * x for x in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return self.scale(other)
        a, b, n = self._pair(other)
        out = [0] * (n + 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += x * b[j]
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PowerSeries":
        if e < 0:
            return self.inverse() ** (-e)
        result = PowerSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [div(1, a[0])]
        for n in range(1, self.order + 1):
            acc = sum(a[k] * out[n - k] for k in range(1, n + 1))
            out.append(div(-acc, a[0]))
        return PowerSeries(out, self.order)

    def exp(self) -> "PowerSeries":
        """exp(S) for S with zero constant term, via g' = S' g."""
        a = self.coeffs
        if a[0] != 0:
            raise ValueError("exp requires a zero constant term")
        g = [1]
        for n in range(1, self.order + 1):
            acc = sum(k * a[k] * g[n - k] for k in range(1, n + 1))
            g.append(div(acc, n))
        return PowerSeries(g, self.order)

    def log(self) -> "PowerSeries":
        """log(S) for S with constant term 1, via n f_n = n g_n - sum k f_k g_(n-k)."""
        g = self.coeffs
        if g[0] != 1:
            raise ValueError("log requires constant term 1")
        f = [0]
        for n in range(1, self.order + 1):
            acc = n * g[n] - sum(k * f[k] * g[n - k] for k in range(1, n))
            f.append(div(acc, n))
        return PowerSeries(f, self.order)

    def nth_root(self, s: int) -> "PowerSeries":
        """The unique R with R(0) = 1 and R**s == self, by the J.C.P. Miller recurrence."""
        if s < 1:
            raise ValueError("root index must be positive")
        a = self.coeffs
        if a[0] != 1:
            raise ValueError("n-th root requires constant term 1")
        alpha = Fraction(1, s)
        r = [1]
        for n in range(1, self.order + 1):
            acc = sum(((alpha + 1) * k - n) * a[k] * r[n - k] for k in range(1, n + 1))
            r.append(exact(acc / n))
        return PowerSeries(r, self.order)

    def substitute_power(self, s: int) -> "PowerSeries":
        """S(t^s), keeping the same truncation order."""
        out = [0] * (self.order + 1)
        for i, c in enumerate(self.coeffs):
            if i * s > self.order:
                break
            out[i * s] = c
        return PowerSeries(out, self.order)


def series_exp_log(S: PowerSeries, mode: str) -> PowerSeries:
    if mode == "exp":
        return S.exp()
    if mode == "log":
        return S.log()
    raise ValueError(f"mode must be 'exp' or 'log', not {mode!r}")


def series_nth_root(S: PowerSeries, s: int) -> PowerSeries:
    return S.nth_root(s)
