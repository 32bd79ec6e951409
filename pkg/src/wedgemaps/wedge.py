"""Self-maps of wedge sums, seen through their action on rational homology.

Summands are indexed 0..s-1.  ``coords[(i, j)]`` is the coordinate map
X_i -> X_j; in an assembled degree-k matrix it occupies block row j and block
column i (columns are inputs, rows are outputs).  Degree 0 is never stored:
a pointed map acts on H_0 as the 1 x 1 identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Mapping, Sequence

from .kernel import Matrix


class DimensionMismatch(ValueError):
    """A block does not fit the Betti numbers of its source and target."""


@dataclass(frozen=True)
class SpaceSignature:
    """Betti numbers b_0..b_n of a path-connected summand."""

    betti: tuple[int, ...]

    def __post_init__(self):
        betti = tuple(int(b) for b in self.betti)
        if not betti or betti[0] != 1:
            raise ValueError("summands must be path-connected (betti[0] == 1)")
        if any(b < 0 for b in betti):
            raise ValueError("Betti numbers must be nonnegative")
        object.__setattr__(self, "betti", betti)

    @classmethod
    def torus(cls, n: int) -> "SpaceSignature":
        return cls(tuple(comb(n, k) for k in range(n + 1)))

    @property
    def dim(self) -> int:
        return len(self.betti) - 1

    def b(self, k: int) -> int:
        return self.betti[k] if 0 <= k < len(self.betti) else 0


@dataclass(frozen=True)
class GradedLinearMap:
    """Induced maps H_k(source) -> H_k(target) for k = 1..top."""

    source: SpaceSignature
    target: SpaceSignature
    blocks: tuple[Matrix, ...]

    def __post_init__(self):
        top = self.top
        blocks = tuple(self.blocks)
        if len(blocks) > top:
            if any(b.rows or b.cols for b in blocks[top:]):
                raise DimensionMismatch(f"blocks given beyond top degree {top}")
            blocks = blocks[:top]
        blocks += tuple(Matrix.zeros(self.target.b(k), self.source.b(k))
                        for k in range(len(blocks) + 1, top + 1))
        for k, b in enumerate(blocks, start=1):
            want = (self.target.b(k), self.source.b(k))
            if b.shape != want:
                raise DimensionMismatch(f"degree {k}: block is {b.shape[0]}x{b.shape[1]}, "
                                        f"expected {want[0]}x{want[1]}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def top(self) -> int:
        return max(self.source.dim, self.target.dim)

    def block(self, k: int) -> Matrix:
        if 1 <= k <= self.top:
            return self.blocks[k - 1]
        return Matrix.zeros(self.target.b(k), self.source.b(k))

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)


@dataclass(frozen=True, eq=False)
class WedgeMapHomology:
    spaces: tuple[SpaceSignature, ...]
    coords: Mapping[tuple[int, int], GradedLinearMap]
    assembled: tuple[Matrix, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def s(self) -> int:
        return len(self.spaces)

    @property
    def top(self) -> int:
        return max((sp.dim for sp in self.spaces), default=0)

    def betti(self, k: int) -> int:
        if k == 0:
            return 1
        return sum(sp.b(k) for sp in self.spaces)

    def offsets(self, k: int) -> list[int]:
        out = [0]
        for sp in self.spaces:
            out.append(out[-1] + sp.b(k))
        return out

    def matrix(self, k: int) -> Matrix:
        """Assembled degree-k matrix (k >= 1)."""
        if 1 <= k <= self.top:
            return self.assembled[k - 1]
        return Matrix.zeros(0)

    def block(self, k: int, i: int, j: int, M: Matrix | None = None) -> Matrix:
        """Block of the map X_i -> X_j inside a degree-k assembled matrix."""
        M = self.matrix(k) if M is None else M
        off = self.offsets(k)
        return M.block(off[j], off[j + 1], off[i], off[i + 1])

    def power(self, k: int, m: int) -> Matrix:
        """Assembled degree-k matrix of f^m, built incrementally and cached."""
        if m < 0:
            raise ValueError("negative iterate")
        cache = self._cache.setdefault(("power", k), [Matrix.identity(self.betti(k))])
        while len(cache) <= m:
            cache.append(cache[-1] @ self.matrix(k))
        return cache[m]

    def support(self) -> set[tuple[int, int]]:
        """Pairs (i, j) whose coordinate is nonzero in some positive degree."""
        out = set()
        for k in range(1, self.top + 1):
            for i in range(self.s):
                for j in range(self.s):
                    if (i, j) not in out and not self.block(k, i, j).is_zero():
                        out.add((i, j))
        return out

    def coordinate(self, i: int, j: int) -> GradedLinearMap:
        return GradedLinearMap(self.spaces[i], self.spaces[j],
                               tuple(self.block(k, i, j) for k in range(1, self.top + 1)))

    @classmethod
    def from_assembled(cls, spaces: Sequence[SpaceSignature],
                       matrices: Sequence[Matrix]) -> "WedgeMapHomology":
        """Wrap per-degree assembled matrices (degree 1 first), splitting out coordinates."""
        spaces = tuple(spaces)
        top = max((sp.dim for sp in spaces), default=0)
        mats = list(matrices) + [None] * (top - len(matrices))
        if len(mats) > top:
            raise DimensionMismatch(f"{len(mats)} degrees given, wedge has top degree {top}")
        fixed = []
        for k, M in enumerate(mats, start=1):
            R = sum(sp.b(k) for sp in spaces)
            if M is None:
                M = Matrix.zeros(R)
            if M.shape != (R, R):
                raise DimensionMismatch(f"degree {k}: assembled matrix is {M.shape[0]}x{M.shape[1]}, "
                                        f"expected {R}x{R}")
            fixed.append(M)
        W = cls(spaces, {}, tuple(fixed))
        coords = {}
        for i in range(len(spaces)):
            for j in range(len(spaces)):
                g = W.coordinate(i, j)
                if not g.is_zero():
                    coords[(i, j)] = g
        return cls(spaces, coords, tuple(fixed))


def assemble(spaces: Sequence[SpaceSignature],
             coords: Mapping[tuple[int, int], GradedLinearMap]) -> WedgeMapHomology:
    spaces = tuple(spaces)
    s = len(spaces)
    for (i, j), g in coords.items():
        if not (0 <= i < s and 0 <= j < s):
            raise DimensionMismatch(f"coordinate {i + 1}->{j + 1} outside 1..{s}")
        if g.source != spaces[i] or g.target != spaces[j]:
            raise DimensionMismatch(f"coordinate {i + 1}->{j + 1}: signatures do not match "
                                    f"the declared summands")
    top = max((sp.dim for sp in spaces), default=0)
    mats = []
    for k in range(1, top + 1):
        grid = [[coords[(i, j)].block(k) if (i, j) in coords
                 else Matrix.zeros(spaces[j].b(k), spaces[i].b(k))
                 for i in range(s)] for j in range(s)]
        R = sum(sp.b(k) for sp in spaces)
        mats.append(Matrix.from_blocks(grid) if R else Matrix.zeros(0))
    return WedgeMapHomology(spaces, dict(coords), tuple(mats))


@dataclass(frozen=True)
class StructureReport:
    is_diagonal: bool
    is_permutative: bool
    permutation: tuple[int, ...] | None
    cycles: tuple[tuple[int, ...], ...] | None
    is_squared_by_blocks: bool
    is_cyclic: bool

    @property
    def cycle_lengths(self) -> tuple[int, ...] | None:
        return None if self.cycles is None else tuple(len(c) for c in self.cycles)

    @property
    def applies(self) -> bool:
        """Whether the permutative squared-by-blocks reduction formulas apply."""
        return self.is_permutative and self.is_squared_by_blocks


def _complete_permutation(s: int, partial: dict[int, int]) -> tuple[int, ...]:
    # close every maximal chain of the partial injection into a cycle
    preimage = {v: k for k, v in partial.items()}
    sigma = dict(partial)
    for start in range(s):
        if start in preimage:
            continue
        end = start
        while end in sigma:
            end = sigma[end]
        sigma[end] = start
    return tuple(sigma[i] for i in range(s))


def _cycles(sigma: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    seen, out = set(), []
    for i in range(len(sigma)):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = sigma[j]
        out.append(tuple(cyc))
    return tuple(out)


def classify(W: WedgeMapHomology) -> StructureReport:
    """Permutative / diagonal / cyclic / squared-by-blocks classification.

    Sources whose coordinates all vanish on homology get their image chosen to
    close chains into cycles; any completion gives the same invariants.
    """
    s = W.s
    partial: dict[int, int] = {}
    permutative = True
    for i, j in sorted(W.support()):
        if i in partial or j in partial.values():
            permutative = False
            break
        partial[i] = j
    if not permutative:
        return StructureReport(False, False, None, None, False, False)
    sigma = _complete_permutation(s, partial)
    cycles = _cycles(sigma)
    squared = all(len({W.spaces[i] for i in c}) == 1 for c in cycles)
    return StructureReport(
        is_diagonal=all(sigma[i] == i for i in range(s)),
        is_permutative=True,
        permutation=sigma,
        cycles=cycles,
        is_squared_by_blocks=squared,
        is_cyclic=len(cycles) == 1,
    )


def decompose(W: WedgeMapHomology) -> tuple[tuple[int, ...], ...]:
    """Connected components of the homology-level coordinate graph."""
    parent = list(range(W.s))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in W.support():
        parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(W.s):
        groups.setdefault(find(i), []).append(i)
    return tuple(sorted(tuple(g) for g in groups.values()))


def iterate(W: WedgeMapHomology, m: int) -> tuple[Matrix, ...]:
    """Assembled matrices of f^m in degrees 1..top."""
    if m < 1:
        raise ValueError("iterates start at m = 1")
    return tuple(W.power(k, m) for k in range(1, W.top + 1))
