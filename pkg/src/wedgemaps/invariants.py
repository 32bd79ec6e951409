"""Lefschetz numbers, zeta functions, Dold coefficients and algebraic periods.

Every invariant is computed along two routes:

* directly from the assembled matrices of f^m (traces, determinants,
  Möbius inversion), valid for any wedge map;
* through the coordinate reduction formulas for permutative maps that are
  squared by blocks, where only the return maps around each cycle of the
  permutation enter.

``cross_check`` runs both and raises :class:`CrossCheckError` on any
disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .kernel import (
    Matrix,
    Poly,
    PowerSeries,
    RationalFunction,
    char_poly,
    cyclotomic_factorization,
    divisors,
    mobius_transform,
    ratfunc_nth_root,
)
from .wedge import StructureReport, WedgeMapHomology, classify


class NotApplicable(ValueError):
    """The map is not permutative and squared by blocks."""


class CrossCheckError(AssertionError):
    """Two computation routes for the same invariant disagree."""


@dataclass(frozen=True)
class LefschetzSequence:
    values: tuple[int, ...]

    def __getitem__(self, m: int) -> int:
        """L(f^m), 1-based."""
        if m < 1:
            raise IndexError("iterates start at m = 1")
        return self.values[m - 1]

    @property
    def m_max(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class DoldSequence:
    values: tuple[int, ...]

    def __getitem__(self, m: int) -> int:
        if m < 1:
            raise IndexError("iterates start at m = 1")
        return self.values[m - 1]

    @property
    def m_max(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class AperSet:
    members: tuple[int, ...]
    m_max: int
    # per-coordinate containment of the reduction formulas; None when they do not apply
    containment_holds: bool | None = None
    # period of m -> L(f^m) when every eigenvalue is zero or a root of unity
    trace_period: int | None = None

    def __contains__(self, m: int) -> bool:
        return m in self.members


@dataclass(frozen=True)
class EulerProductCheck:
    ok: bool
    order: int
    # exponent of (1 - t^m) in the product, i.e. -l(f^m)/m, for nonzero l only
    exponents: dict[int, Fraction] = field(default_factory=dict)
    first_mismatch: int | None = None


def _as_int(x) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"non-integral Lefschetz number {x}")
        return x.numerator
    return x


def graded_lefschetz(blocks) -> int:
    """1 + sum_k (-1)^k trace(block_k), blocks listed from degree 1."""
    return _as_int(1 + sum((-1) ** k * b.trace() for k, b in enumerate(blocks, start=1)))


def det_one_minus_t(A: Matrix) -> Poly:
    """det(I - tA) as the reversal of the characteristic polynomial."""
    return char_poly(A).reversed(A.rows)


def graded_zeta(blocks) -> RationalFunction:
    """prod_k det(I - t A_k)^((-1)^(k+1)), the degree-0 identity included."""
    num, den = Poly([1]), Poly([1, -1])
    for k, A in enumerate(blocks, start=1):
        if A.rows == 0:
            continue
        if k % 2:
            num = num * det_one_minus_t(A)
        else:
            den = den * det_one_minus_t(A)
    return RationalFunction(num, den)


# ---------------------------------------------------------------- direct route


def lefschetz_direct(W: WedgeMapHomology, m: int) -> int:
    if m < 1:
        raise ValueError("iterates start at m = 1")
    return graded_lefschetz(W.power(k, m) for k in range(1, W.top + 1))


def lefschetz_sequence(W: WedgeMapHomology, m_max: int) -> LefschetzSequence:
    return LefschetzSequence(tuple(lefschetz_direct(W, m) for m in range(1, m_max + 1)))


def dold(W: WedgeMapHomology, m: int) -> int:
    return mobius_transform(lambda r: lefschetz_direct(W, r), m)


def dold_sequence(W: WedgeMapHomology, m_max: int) -> DoldSequence:
    L = lefschetz_sequence(W, m_max).values
    return DoldSequence(tuple(mobius_transform(L, m) for m in range(1, m_max + 1)))


def zeta_det(W: WedgeMapHomology) -> RationalFunction:
    return graded_zeta(W.matrix(k) for k in range(1, W.top + 1))


def zeta_series(W: WedgeMapHomology, order: int) -> PowerSeries:
    """exp(sum_{m<=order} L(f^m) t^m / m), truncated at ``order``."""
    if order < 1:
        raise ValueError("order must be positive")
    L = lefschetz_sequence(W, order).values
    exponent = PowerSeries([0] + [Fraction(L[m - 1], m) for m in range(1, order + 1)], order)
    return exponent.exp()


# ------------------------------------------------------------ reduction route


class _Reduction:
    """Return maps around the cycles of a permutative squared-by-blocks map.

    For summand i on a cycle of length s, ``ret[i][k]`` is the degree-k block
    of (f^s)_{ii}, the composite of the coordinate blocks i -> sigma(i) -> ...
    -> i.  The diagonal block of f^r at i is zero unless s | r, in which case
    it is ret[i][k]^(r/s).
    """

    def __init__(self, W: WedgeMapHomology, st: StructureReport):
        self.W, self.st = W, st
        sigma = st.permutation
        self.cycle_of: dict[int, tuple[int, ...]] = {}
        self.ret: dict[int, list[Matrix]] = {}
        for cyc in st.cycles:
            for i in cyc:
                self.cycle_of[i] = cyc
                blocks = []
                for k in range(1, W.spaces[i].dim + 1):
                    acc, a = Matrix.identity(W.spaces[i].b(k)), i
                    for _ in range(len(cyc)):
                        acc = W.block(k, a, sigma[a]) @ acc
                        a = sigma[a]
                    blocks.append(acc)
                self.ret[i] = blocks
        self._powers: dict[tuple[int, int], list[Matrix]] = {}
        self._L: dict[tuple[int, int], int] = {}

    def _ret_power(self, i: int, k: int, e: int) -> Matrix:
        cache = self._powers.setdefault((i, k), [Matrix.identity(self.ret[i][k - 1].rows)])
        while len(cache) <= e:
            cache.append(cache[-1] @ self.ret[i][k - 1])
        return cache[e]

    def coord_lefschetz(self, i: int, r: int) -> int:
        """L((f^r)_{ii}); 1 when that block vanishes in every positive degree."""
        key = (i, r)
        if key not in self._L:
            s = len(self.cycle_of[i])
            if r % s:
                self._L[key] = 1
            else:
                self._L[key] = graded_lefschetz(
                    self._ret_power(i, k, r // s) for k in range(1, len(self.ret[i]) + 1))
        return self._L[key]

    def coord_dold(self, i: int, m: int) -> int:
        return mobius_transform(lambda r: self.coord_lefschetz(i, r), m)

    def coord_zeta(self, i: int) -> RationalFunction:
        """Zeta function of the return map (f^s)_{ii} as a self-map of X_i."""
        return graded_zeta(self.ret[i])


def _reduction(W: WedgeMapHomology) -> _Reduction:
    red = W._cache.get("reduction")
    if red is None:
        st = classify(W)
        if not st.applies:
            raise NotApplicable("map is not permutative and squared by blocks")
        red = _Reduction(W, st)
        W._cache["reduction"] = red
    return red


def lefschetz_by_reduction(W: WedgeMapHomology, m: int) -> int:
    """1 + sum over cycles with s_l | m of sum_{i in cycle} (L((f^m)_{ii}) - 1)."""
    if m < 1:
        raise ValueError("iterates start at m = 1")
    red = _reduction(W)
    total = 1
    for cyc in red.st.cycles:
        if m % len(cyc) == 0:
            total += sum(red.coord_lefschetz(i, m) - 1 for i in cyc)
    return total


def dold_by_reduction(W: WedgeMapHomology, m: int) -> int:
    if m < 1:
        raise ValueError("iterates start at m = 1")
    red = _reduction(W)
    if m == 1:
        return lefschetz_by_reduction(W, 1)
    return sum(red.coord_dold(i, m)
               for cyc in red.st.cycles if m % len(cyc) == 0 for i in cyc)


def zeta_by_reduction(W: WedgeMapHomology) -> RationalFunction:
    """(1/(1-t)) prod_j ( prod_{i in cycle j} (1 - t^s) zeta_i(t^s) )^(1/s), s = |cycle j|."""
    red = _reduction(W)
    result = RationalFunction(1, Poly([1, -1]))
    for cyc in red.st.cycles:
        s = len(cyc)
        inner = RationalFunction(1)
        for i in cyc:
            inner = inner * (Poly.monomial(0) - Poly.monomial(s)) * red.coord_zeta(i).substitute_power(s)
        result = result * ratfunc_nth_root(inner, s)
    return result


# ------------------------------------------------------------ periods


def trace_period(W: WedgeMapHomology) -> int | None:
    """Period of m -> L(f^m) (m >= 1) if every eigenvalue in every degree is 0 or a root of unity."""
    period = 1
    for k in range(1, W.top + 1):
        A = W.matrix(k)
        if A.rows == 0:
            continue
        found, _, rest = cyclotomic_factorization(char_poly(A))
        if rest.degree > 0:
            return None
        period = lcm(period, *found) if found else period
    return period


def aper_upto(W: WedgeMapHomology, m_max: int) -> AperSet:
    if m_max < 1:
        raise ValueError("m_max must be positive")
    ell = dold_sequence(W, m_max)
    members = tuple(m for m in range(1, m_max + 1) if ell[m] != 0)
    containment = None
    if classify(W).applies:
        red = _reduction(W)
        # m = 1 is exempt: l(f) = L(f) can be nonzero while every L(f_ii) vanishes
        union = {m for i in range(W.s) for m in range(2, m_max + 1)
                 if m % len(red.cycle_of[i]) == 0 and red.coord_dold(i, m) != 0}
        uncovered = set(members) - union - {1}
        containment = not uncovered
        if uncovered:
            raise CrossCheckError(f"algebraic periods {sorted(uncovered)} not covered by coordinates")
    return AperSet(members, m_max, containment, trace_period(W))


def euler_product_check(W: WedgeMapHomology, order: int) -> EulerProductCheck:
    """Compare prod_m (1 - t^m)^(-l(f^m)/m), built in the exp/log domain, with zeta_det."""
    if order < 1:
        raise ValueError("order must be positive")
    ell = dold_sequence(W, order)
    exponent = PowerSeries.zero(order)
    exps = {}
    for m in range(1, order + 1):
        if ell[m] == 0:
            continue
        e = Fraction(-ell[m], m)
        exps[m] = e
        factor = (Poly.monomial(0) - Poly.monomial(m)).series(order).log()
        exponent = exponent + factor.scale(e)
    product = exponent.exp()
    target = zeta_det(W).series(order)
    mismatch = next((n for n in range(order + 1) if product[n] != target[n]), None)
    return EulerProductCheck(mismatch is None, order, exps, mismatch)


# ------------------------------------------------------------ agreement


@dataclass(frozen=True)
class CrossCheckReport:
    m_max: int
    reduction_applied: bool
    checks: tuple[str, ...]


def cross_check(W: WedgeMapHomology, m_max: int = 24) -> CrossCheckReport:
    """Run every applicable pair of routes up to m_max; raise on the first divergence."""
    done = []
    L = lefschetz_sequence(W, m_max)
    ell = dold_sequence(W, m_max)
    for m in range(1, m_max + 1):
        if sum(ell[r] for r in divisors(m)) != L[m]:
            raise CrossCheckError(f"Möbius round trip fails at m = {m}")
    done.append("mobius-round-trip")

    Z = zeta_det(W)
    order = min(m_max, 16)
    if zeta_series(W, order) != Z.series(order):
        raise CrossCheckError("exponential generating series differs from determinant zeta")
    done.append("zeta-series")
    eul = euler_product_check(W, order)
    if not eul.ok:
        raise CrossCheckError(f"Euler product differs from zeta at t^{eul.first_mismatch}")
    done.append("euler-product")

    applies = classify(W).applies
    if applies:
        for m in range(1, m_max + 1):
            a = lefschetz_by_reduction(W, m)
            if a != L[m]:
                raise CrossCheckError(f"L(f^{m}): direct {L[m]} vs reduction {a}")
            d = dold_by_reduction(W, m)
            if d != ell[m]:
                raise CrossCheckError(f"l(f^{m}): direct {ell[m]} vs reduction {d}")
        done += ["lefschetz-reduction", "dold-reduction"]
        Zr = zeta_by_reduction(W)
        if Zr != Z:
            raise CrossCheckError(f"zeta: determinant {Z} vs reduction {Zr}")
        done.append("zeta-reduction")
        aper_upto(W, m_max)
        done.append("aper-containment")
    return CrossCheckReport(m_max, applies, tuple(done))


__all__ = [
    "AperSet", "CrossCheckError", "CrossCheckReport", "DoldSequence", "EulerProductCheck",
    "LefschetzSequence", "NotApplicable", "aper_upto", "cross_check", "det_one_minus_t",
    "dold", "dold_sequence", "dold_by_reduction", "euler_product_check", "graded_lefschetz",
    "graded_zeta", "lefschetz_direct", "lefschetz_sequence", "lefschetz_by_reduction",
    "trace_period", "zeta_det", "zeta_series", "zeta_by_reduction",
]
