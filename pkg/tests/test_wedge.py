import random

import pytest

from oracles import random_matrix, random_permutative
from wedgemaps.kernel import Matrix
from wedgemaps.torus import ToralWedgeSpec, build_toral_wedge, torus_graded_from_h1
from wedgemaps.wedge import (
    DimensionMismatch,
    GradedLinearMap,
    SpaceSignature,
    WedgeMapHomology,
    assemble,
    classify,
    decompose,
    iterate,
)

T2 = SpaceSignature.torus(2)
SWAP = Matrix([[0, 1], [1, 0]])
NEG_SWAP = Matrix([[0, -1], [-1, 0]])


def example_one():
    return assemble([T2, T2], {(0, 1): torus_graded_from_h1(NEG_SWAP), (1, 0): torus_graded_from_h1(SWAP)})


def test_signature_basics():
    assert SpaceSignature.torus(3).betti == (1, 3, 3, 1)
    assert T2.dim == 2 and T2.b(1) == 2 and T2.b(5) == 0
    with pytest.raises(ValueError):
        SpaceSignature((2, 1))
    with pytest.raises(ValueError):
        SpaceSignature((1, -1))


def test_graded_map_shapes_are_checked():
    with pytest.raises(DimensionMismatch):
        GradedLinearMap(T2, T2, (Matrix.zeros(3, 2),))
    g = GradedLinearMap(T2, SpaceSignature.torus(1), (Matrix([[1, 0]]),))
    assert g.block(2).shape == (0, 1)


def test_assemble_places_coordinate_i_to_j_at_row_j_column_i():
    W = example_one()
    assert W.matrix(1) == Matrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
    assert W.matrix(2) == Matrix([[0, -1], [-1, 0]])
    assert W.block(1, 0, 1) == NEG_SWAP


def test_assemble_rejects_mismatched_signatures():
    with pytest.raises(DimensionMismatch):
        assemble([T2, SpaceSignature.torus(1)], {(0, 1): torus_graded_from_h1(SWAP)})
    with pytest.raises(DimensionMismatch):
        assemble([T2], {(0, 1): torus_graded_from_h1(SWAP)})


def test_from_assembled_recovers_coordinates():
    W = example_one()
    V = WedgeMapHomology.from_assembled(W.spaces, W.assembled)
    assert set(V.coords) == {(0, 1), (1, 0)}
    assert V.coordinate(1, 0).block(1) == SWAP
    with pytest.raises(DimensionMismatch):
        WedgeMapHomology.from_assembled([T2, T2], [Matrix.zeros(3)])


def test_classify_example_one():
    st = classify(example_one())
    assert st.is_permutative and st.is_cyclic and st.is_squared_by_blocks and not st.is_diagonal
    assert st.permutation == (1, 0) and st.cycles == ((0, 1),)


def test_classify_non_permutative_and_constant():
    W = WedgeMapHomology.from_assembled([T2, T2], [Matrix([[0, 1, 1, 0], [-1, 0, -1, -1], [0, 0, 0, 0], [0, 0, 0, 0]])])
    assert not classify(W).is_permutative
    const = assemble([T2, T2], {})
    st = classify(const)
    assert st.is_permutative and st.is_diagonal and not st.is_cyclic


def test_classify_closes_chains_into_cycles():
    # 1 -> 2 only: the chain closes to the cycle (1 2)
    W = assemble([T2, T2], {(0, 1): torus_graded_from_h1(SWAP)})
    st = classify(W)
    assert st.permutation == (1, 0) and st.is_cyclic


def test_classify_squared_by_blocks_needs_equal_signatures():
    T1 = SpaceSignature.torus(1)
    W = assemble([T2, T1], {(0, 1): GradedLinearMap(T2, T1, (Matrix([[1, 0]]),)),
                            (1, 0): GradedLinearMap(T1, T2, (Matrix([[1], [0]]),))})
    st = classify(W)
    assert st.is_permutative and not st.is_squared_by_blocks


def test_decompose_matches_cycles():
    rng = random.Random(3)
    for _ in range(30):
        dims, coords, _ = random_permutative(rng, s_max=5, n_max=2)
        W = build_toral_wedge(ToralWedgeSpec(tuple(dims), {k: Matrix(v) for k, v in coords.items()}))
        st = classify(W)
        # every component of the support graph lies inside one cycle
        for comp in decompose(W):
            assert any(set(comp) <= set(c) for c in st.cycles)


def test_iterate_is_matrix_power():
    W = example_one()
    M1, M2 = iterate(W, 4)
    assert M1 == W.matrix(1) ** 4 == Matrix.identity(4)
    assert M2 == W.matrix(2) ** 4
    with pytest.raises(ValueError):
        iterate(W, 0)


def test_cyclic_iterates_have_zero_diagonal_blocks_off_multiples():
    rng = random.Random(5)
    for _ in range(20):
        dims, coords, _ = random_permutative(rng, s_min=2, s_max=4, n_max=3, cyclic=True)
        W = build_toral_wedge(ToralWedgeSpec(tuple(dims), {k: Matrix(v) for k, v in coords.items()}))
        s = W.s
        for m in range(1, 2 * s + 1):
            if m % s == 0:
                continue
            for k in range(1, W.top + 1):
                P = W.power(k, m)
                assert all(W.block(k, i, i, P).is_zero() for i in range(s))


def test_cyclic_trace_equal_across_cycle():
    rng = random.Random(6)
    for _ in range(20):
        dims, coords, _ = random_permutative(rng, s_min=2, s_max=4, n_max=3, cyclic=True)
        W = build_toral_wedge(ToralWedgeSpec(tuple(dims), {k: Matrix(v) for k, v in coords.items()}))
        s = W.s
        for k in range(1, W.top + 1):
            for m in (s, 2 * s):
                P = W.power(k, m)
                traces = {W.block(k, i, i, P).trace() for i in range(s)}
                assert len(traces) == 1


def test_random_generic_summand_assembly():
    rng = random.Random(8)
    X = SpaceSignature((1, 2, 3, 1))
    g = GradedLinearMap(X, X, tuple(Matrix(random_matrix(rng, b, b)) for b in (2, 3, 1)))
    W = assemble([X, T2], {(0, 0): g})
    assert W.matrix(3).shape == (1, 1)
    assert W.matrix(2).shape == (4, 4)
