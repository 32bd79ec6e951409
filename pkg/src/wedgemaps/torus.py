"""Wedges of tori: graded actions from H_1, realizability, LPPF and period scans.

Cohomology of a wedge of tori is the product of exterior algebras, so classes
from different summands multiply to zero.  A candidate degree-1 homology
matrix M acts contravariantly on degree-1 cohomology through its transpose P,
and a genuine map must send every mixed product u v (u, v from different
summands) to zero.  Splitting P(u) and P(v) into summand components, this
amounts to every component pair being linearly dependent.  Mixed products of
three or more classes contain a mixed pair, so the degree-1 test covers all
degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .invariants import (
    CrossCheckError,
    dold_sequence,
    lefschetz_sequence,
    zeta_det,
)
from .kernel import (
    Matrix,
    Poly,
    RationalFunction,
    char_poly,
    cyclotomic_factorization,
    determinant,
    exterior_power,
    mobius_transform,
)
from .wedge import (
    DimensionMismatch,
    GradedLinearMap,
    SpaceSignature,
    WedgeMapHomology,
    assemble,
    classify,
)


def torus_graded_from_h1(A: Matrix) -> GradedLinearMap:
    """Full graded action of a torus map (or map between tori) from its H_1 matrix."""
    source, target = SpaceSignature.torus(A.cols), SpaceSignature.torus(A.rows)
    top = max(A.rows, A.cols)
    return GradedLinearMap(source, target, tuple(exterior_power(A, k) for k in range(1, top + 1)))


@dataclass(frozen=True)
class ToralWedgeSpec:
    """H_1 data of a map on T^{n_1} v ... v T^{n_s}; ``coords[(i, j)]`` has shape n_j x n_i."""

    dims: tuple[int, ...]
    coords: Mapping[tuple[int, int], Matrix] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        if any(n < 1 for n in self.dims):
            raise ValueError("torus dimensions must be positive")
        s = len(self.dims)
        for (i, j), A in self.coords.items():
            if not (0 <= i < s and 0 <= j < s):
                raise DimensionMismatch(f"coordinate {i + 1}->{j + 1} outside 1..{s}")
            if A.shape != (self.dims[j], self.dims[i]):
                raise DimensionMismatch(
                    f"coordinate {i + 1}->{j + 1}: H_1 block is {A.rows}x{A.cols}, "
                    f"expected {self.dims[j]}x{self.dims[i]}")

    @property
    def offsets(self) -> list[int]:
        out = [0]
        for n in self.dims:
            out.append(out[-1] + n)
        return out

    def h1_matrix(self) -> Matrix:
        s = len(self.dims)
        grid = [[self.coords.get((i, j), Matrix.zeros(self.dims[j], self.dims[i]))
                 for i in range(s)] for j in range(s)]
        return Matrix.from_blocks(grid) if s else Matrix.zeros(0)

    @classmethod
    def from_h1(cls, M: Matrix, dims: Sequence[int]) -> "ToralWedgeSpec":
        """Split an assembled degree-1 matrix into its nonzero coordinate blocks."""
        dims = tuple(dims)
        R = sum(dims)
        if M.shape != (R, R):
            raise DimensionMismatch(f"H_1 matrix is {M.rows}x{M.cols}, expected {R}x{R}")
        off = [0]
        for n in dims:
            off.append(off[-1] + n)
        coords = {}
        for i in range(len(dims)):
            for j in range(len(dims)):
                B = M.block(off[j], off[j + 1], off[i], off[i + 1])
                if not B.is_zero():
                    coords[(i, j)] = B
        return cls(dims, coords)


def build_toral_wedge(spec: ToralWedgeSpec) -> WedgeMapHomology:
    spaces = [SpaceSignature.torus(n) for n in spec.dims]
    coords = {ij: torus_graded_from_h1(A) for ij, A in spec.coords.items()}
    return assemble(spaces, coords)


# ------------------------------------------------------------ realizability


@dataclass(frozen=True)
class Witness:
    """Two degree-1 cohomology basis classes from different summands whose
    pulled-back product is nonzero in ``summand``.  Indices are 0-based."""

    first: tuple[int, int]
    second: tuple[int, int]
    summand: int
    # coefficients of the nonzero product on basis pairs (p, q), p < q, of that summand
    product: dict[tuple[int, int], int]

    def describe(self) -> str:
        (i, a), (j, b) = self.first, self.second
        terms = ", ".join(f"e{p + 1}^e{q + 1}: {c}" for (p, q), c in sorted(self.product.items()))
        return (f"pullbacks of d{i + 1}.{a + 1} and d{j + 1}.{b + 1} have nonzero product "
                f"in summand {self.summand + 1} ({terms})")


@dataclass(frozen=True)
class ObstructionReport:
    passed: bool
    witness: Witness | None = None
    failures: int = 0
    # homology matrices in degrees 1..max(dims) when the check passes
    induced: tuple[Matrix, ...] | None = None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def _wedge_of_covectors(vectors: Sequence[Sequence[int]], n: int) -> dict[tuple[int, ...], int]:
    """Coefficients of v_1 ^ ... ^ v_k on the basis e_J, J increasing."""
    k = len(vectors)
    out = {}
    for J in combinations(range(n), k):
        c = determinant(Matrix([[v[j] for j in J] for v in vectors]))
        if c != 0:
            out[J] = c
    return out


def check_h1_realizability(M: Matrix, dims: Sequence[int]) -> ObstructionReport:
    dims = tuple(dims)
    R = sum(dims)
    if M.shape != (R, R):
        raise DimensionMismatch(f"H_1 matrix is {M.rows}x{M.cols}, expected {R}x{R}")
    off = [0]
    for n in dims:
        off.append(off[-1] + n)
    summand_of = [i for i, n in enumerate(dims) for _ in range(n)]
    P = M.transpose()
    # pullback of the cohomology basis class r is column r of P, i.e. row r of M
    pull = [P.column(r) for r in range(R)]

    def component(vec, l):
        return vec[off[l]:off[l + 1]]

    witness, failures = None, 0
    for u in range(R):
        for v in range(u + 1, R):
            if summand_of[u] == summand_of[v]:
                continue
            for l, n in enumerate(dims):
                prod = _wedge_of_covectors([component(pull[u], l), component(pull[v], l)], n)
                if prod:
                    failures += 1
                    if witness is None:
                        witness = Witness((summand_of[u], u - off[summand_of[u]]),
                                          (summand_of[v], v - off[summand_of[v]]), l, prod)
    if witness is not None:
        return ObstructionReport(False, witness, failures)
    return ObstructionReport(True, None, 0, _induced_from_cohomology(pull, dims, off))


def _induced_from_cohomology(pull, dims, off) -> tuple[Matrix, ...]:
    # degree-k cohomology: the class e_I of summand i pulls back to the wedge of
    # the pullbacks of its factors; only same-summand components survive
    s = len(dims)
    top = max(dims, default=0)
    mats = []
    for k in range(1, top + 1):
        basis = [(i, I) for i in range(s) for I in combinations(range(dims[i]), k)]
        index = {b: c for c, b in enumerate(basis)}
        rows = [[0] * len(basis) for _ in basis]   # cohomology matrix, columns = images
        for col, (i, I) in enumerate(basis):
            factors = [pull[off[i] + a] for a in I]
            for l in range(s):
                comps = [f[off[l]:off[l + 1]] for f in factors]
                for J, c in _wedge_of_covectors(comps, dims[l]).items():
                    rows[index[(l, J)]][col] = c
        mats.append(Matrix(rows, rows=len(basis), cols=len(basis)).transpose())
    return tuple(mats)


# ------------------------------------------------------------ periodic-point tests


@dataclass(frozen=True)
class QuasiUnipotentReport:
    is_quasi_unipotent: bool
    # cyclotomic index d -> multiplicity of Phi_d in the characteristic polynomial
    cyclotomic: dict[int, int]
    t_power: int
    residual: Poly


def is_quasi_unipotent(target) -> QuasiUnipotentReport:
    """Whether the degree-1 characteristic polynomial is t^e times cyclotomic factors.

    ``target`` is a matrix, a ToralWedgeSpec or a WedgeMapHomology.
    """
    M = _h1(target)
    found, e, rest = cyclotomic_factorization(char_poly(M))
    return QuasiUnipotentReport(rest.degree == 0, found, e, rest)


def _h1(target) -> Matrix:
    if isinstance(target, Matrix):
        return target
    if isinstance(target, ToralWedgeSpec):
        return target.h1_matrix()
    if isinstance(target, WedgeMapHomology):
        return target.matrix(1)
    raise TypeError(f"cannot read an H_1 matrix from {type(target).__name__}")


@dataclass(frozen=True)
class LppfReport:
    is_lppf: bool
    zeta: RationalFunction
    zeta_degree: int
    eigen_nonzero: bool
    is_permutative: bool
    # whether the non-LPPF conclusion for permutative maps with nonzero eigenvalues was asserted
    nonvanishing_expected: bool
    notes: tuple[str, ...] = ()


def lppf_report(target) -> LppfReport:
    W = build_toral_wedge(target) if isinstance(target, ToralWedgeSpec) else target
    Z = zeta_det(W)
    eigen_nonzero = determinant(W.matrix(1)) != 0
    st = classify(W)
    notes = []
    applies = st.is_permutative and eigen_nonzero and W.s >= 2
    if st.is_permutative and eigen_nonzero and W.s < 2:
        notes.append("single summand: permutative maps with nonzero eigenvalues may be LPPF here")
    if applies and Z.is_one():
        raise CrossCheckError("permutative map with nonzero eigenvalues has zeta identically 1")
    return LppfReport(Z.is_one(), Z, Z.degree, eigen_nonzero, st.is_permutative, applies, tuple(notes))


def companion_gc(n: int, c: int) -> Matrix:
    """Companion matrix with characteristic polynomial t^n - c."""
    if n < 1:
        raise ValueError("n must be positive")
    rows = [[0] * n for _ in range(n)]
    rows[0][n - 1] = c
    for i in range(1, n):
        rows[i][i - 1] = 1
    return Matrix(rows)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class ScanReport:
    n: int
    cs: tuple[int, ...]
    s: int
    m_max: int
    violations: tuple[str, ...]
    # c -> (l(g_c^1), ..., l(g_c^m_max)) for a single torus
    single: dict[int, tuple[int, ...]]
    wedge: tuple[int, ...]
    # m whose l(f^m) is certified nonzero by same-sign coordinate Dold values
    certified: tuple[int, ...]
    single_all_negative: bool

    @property
    def preconditions_hold(self) -> bool:
        return not self.violations


def cyclic_toral_spec(n: int, cs: Sequence[int]) -> ToralWedgeSpec:
    """Cyclic permutative map on s copies of T^n: summand i -> i+1 via companion_gc(n, c_i)."""
    s = len(cs)
    return ToralWedgeSpec((n,) * s, {(i, (i + 1) % s): companion_gc(n, c) for i, c in enumerate(cs)})


def companion_scan(n: int, c_list: Sequence[int], s: int, m_max: int) -> ScanReport:
    """Dold coefficients of t^n - c torus maps and of their cyclic wedge.

    With n an odd prime and every c > 2, the single-torus coefficients are all
    negative; a violation of that under valid preconditions raises
    CrossCheckError.  Otherwise the scan still runs and only reports.
    """
    cs = tuple(c_list)
    if len(cs) == 1 and s > 1:
        cs = cs * s
    violations = []
    if not _is_prime(n) or n == 2:
        violations.append(f"n = {n} is not an odd prime")
    if any(c <= 2 for c in cs):
        violations.append("every c must exceed 2")
    if s < 1:
        raise ValueError("s must be positive")
    if len(cs) != s:
        raise ValueError(f"{len(cs)} values of c given for s = {s}")

    single = {}
    for c in dict.fromkeys(cs):
        W1 = build_toral_wedge(ToralWedgeSpec((n,), {(0, 0): companion_gc(n, c)}))
        single[c] = dold_sequence(W1, m_max).values
    all_negative = all(v < 0 for vals in single.values() for v in vals)
    if not violations and not all_negative:
        raise CrossCheckError("negative Dold coefficients expected for t^n - c maps")

    W = build_toral_wedge(cyclic_toral_spec(n, cs))
    wedge = dold_sequence(W, m_max).values
    certified = []
    if s == 1:
        certified = [m for m in range(1, m_max + 1) if wedge[m - 1] != 0]
    else:
        L = lefschetz_sequence(W, m_max)
        # coordinate Lefschetz numbers L((f^r)_{ii}): 1 off multiples of s
        coord_L = {}
        for i in range(s):
            for r in range(1, m_max + 1):
                if r % s:
                    coord_L[(i, r)] = 1
                else:
                    blocks = [W.block(k, i, i, W.power(k, r)) for k in range(1, n + 1)]
                    coord_L[(i, r)] = 1 + sum((-1) ** k * B.trace() for k, B in enumerate(blocks, 1))
        for m in range(1, m_max + 1):
            if m == 1:
                if L[1] != 0:
                    certified.append(1)
                continue
            if m % s:
                continue
            vals = [mobius_transform(lambda r, i=i: coord_L[(i, r)], m) for i in range(s)]
            nonzero = [v for v in vals if v != 0]
            if nonzero and (all(v > 0 for v in nonzero) or all(v < 0 for v in nonzero)):
                certified.append(m)
    return ScanReport(n, cs, s, m_max, tuple(violations), single, wedge, tuple(certified), all_negative)
