import random
from fractions import Fraction

import pytest

from kch.errors import DomainError
from kch.feynman import (
    CubicForm,
    Pairing,
    QuadraticForm,
    RibbonGraph,
    canonical_graph_class,
    connected_exp,
    connected_isomorphism_classes,
    connected_log,
    connected_scalar_series,
    double_factorial,
    enumerate_pairings,
    evaluate_matrix_series,
    matrix_model_series,
    matrix_wick_oracle_series,
    ribbon_census,
    ribbon_faces,
    scalar_model_series,
    stein_oracle_series,
    trace_faces,
)
from kch.scalars import Scalar


def one_dim():
    return QuadraticForm([[1]]), CubicForm.from_array([[[1]]])


def random_model(rng, n):
    # random symmetric positive-ish quadratic form: A^T A + identity keeps it invertible
    a = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
    q = [
        [sum(a[k][i] * a[k][j] for k in range(n)) + (1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for _ in range(rng.randint(1, n * 2)):
        i, j, k = sorted(rng.randint(0, n - 1) for _ in range(3))
        val = Fraction(rng.randint(-3, 3))
        for perm in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
            c[perm[0]][perm[1]][perm[2]] = val
    return QuadraticForm(q), CubicForm.from_array(c)


def test_quadratic_form_validation():
    with pytest.raises(DomainError):
        QuadraticForm([[1, 2], [3, 4]])  # not symmetric
    with pytest.raises(DomainError):
        QuadraticForm([[1, 2]])  # not square
    with pytest.raises(DomainError):
        QuadraticForm([[1, 1], [1, 1]])  # singular


def test_propagator_is_matrix_inverse():
    q = QuadraticForm([[2, 1], [1, 1]])
    prop = q.propagator
    # (2 1; 1 1)^-1 = (1 -1; -1 2)
    assert prop[0][0] == Scalar(1)
    assert prop[0][1] == Scalar(-1)
    assert prop[1][1] == Scalar(2)


def test_cubic_form_symmetry_enforced():
    bad = [[[0, 1], [0, 0]], [[0, 0], [0, 0]]]
    with pytest.raises(DomainError):
        CubicForm.from_array(bad)
    good = CubicForm.from_array([[[1, 2], [2, 0]], [[2, 0], [0, 5]]])
    assert good.entry(0, 1, 0) == Scalar(2)
    assert good.entry(1, 0, 0) == Scalar(2)
    assert good.entry(1, 1, 1) == Scalar(5)


def test_enumerate_pairings_counts():
    assert len(enumerate_pairings(0)) == 1
    assert enumerate_pairings(1) == ()  # 3 half-edges cannot pair up
    assert len(enumerate_pairings(2)) == 15
    assert len(enumerate_pairings(4)) == 10395
    assert double_factorial(5) == 15
    assert double_factorial(11) == 10395


def test_pairing_validation():
    with pytest.raises(DomainError):
        Pairing(2, ((0, 1), (2, 3)))  # leaves 4 and 5 unmatched
    with pytest.raises(DomainError):
        Pairing(2, ((0, 0), (1, 2), (3, 4)))
    with pytest.raises(DomainError):
        Pairing(2, ((5, 0), (1, 4), (2, 3)))  # pairs must be ordered
    p = Pairing(2, ((2, 3), (0, 5), (1, 4)))
    partner = p.partner()
    assert partner[5] == 0 and partner[0] == 5
    assert p.matching == ((0, 5), (1, 4), (2, 3))


def test_connected_classes_at_order_two():
    classes = connected_isomorphism_classes(2)
    assert len(classes) == 2
    # the theta graph admits 6 pairings, the dumbbell 9
    assert sorted(classes.values()) == [6, 9]


def test_canonical_graph_class_is_relabeling_invariant():
    rng = random.Random(3)
    for pairing in enumerate_pairings(4)[:200]:
        edges = pairing.vertex_edges()
        perm = list(range(4))
        rng.shuffle(perm)
        relabeled = tuple(
            tuple(sorted((perm[u], perm[v]))) for u, v in edges
        )
        assert canonical_graph_class(4, edges) == canonical_graph_class(4, relabeled)


def test_one_dimensional_frozen_values():
    q, c = one_dim()
    series = scalar_model_series(q, c, 4)
    assert str(series.coefficient(2).constant_term()) == "15/2"
    assert str(series.coefficient(4).constant_term()) == "3465/8"
    assert series.coefficient(1).is_zero()
    assert series.coefficient(3).is_zero()
    assert str(series.coefficient(0).constant_term()) == "1"


def test_graph_sum_matches_moment_oracle_random():
    rng = random.Random(2024)
    for trial in range(8):
        n = rng.randint(1, 3)
        q, c = random_model(rng, n)
        graph = scalar_model_series(q, c, 3)
        oracle = stein_oracle_series(q, c, 3)
        assert graph == oracle, f"trial {trial}"


def test_connected_series_is_log_of_full_series():
    q, c = one_dim()
    full = scalar_model_series(q, c, 4)
    conn = connected_scalar_series(q, c, 4)
    assert conn == connected_log(full)
    assert connected_exp(conn) == full
    z2 = full.coefficient(2).constant_term()
    z4 = full.coefficient(4).constant_term()
    f4 = conn.coefficient(4).constant_term()
    assert f4 == z4 - z2 * z2 * Scalar(Fraction(1, 2))
    assert str(f4) == "405"


def test_trivalent_euler_identities():
    # every connected cubic graph with m vertices has e = 3m/2 and r = e - v + 1
    for m in (2, 4):
        for pairing in enumerate_pairings(m):
            edges = pairing.vertex_edges()
            parents = list(range(m))

            def find(x):
                while parents[x] != x:
                    parents[x] = parents[parents[x]]
                    x = parents[x]
                return x

            for u, v in edges:
                parents[find(u)] = find(v)
            if len({find(v) for v in range(m)}) != 1:
                continue
            v_count, e_count = m, 3 * m // 2
            r = e_count - v_count + 1
            assert v_count == 2 * (r - 1)
            assert v_count - e_count == 1 - r


def test_ribbon_graph_structure():
    pairing = Pairing(2, ((0, 3), (1, 4), (2, 5)))
    graph = RibbonGraph.standard(pairing)
    assert graph.vertex_count() == 2
    assert graph.edge_count() == 3
    assert trace_faces(graph) == 1
    h, g, r = ribbon_faces(graph)
    assert (h, g, r) == (1, 1, 2)
    flipped = RibbonGraph(pairing, ((0, 1, 2), (3, 5, 4)))
    assert ribbon_faces(flipped) == (3, 0, 2)


def test_ribbon_rotation_validation():
    pairing = Pairing(2, ((0, 3), (1, 4), (2, 5)))
    with pytest.raises(DomainError):
        RibbonGraph(pairing, ((0, 1, 3), (2, 4, 5)))  # not vertex triples
    with pytest.raises(DomainError):
        RibbonGraph(pairing, ((0, 1, 2),))


def test_ribbon_genus_boundary_identity_all_orders():
    for m in (2, 4):
        for pairing in enumerate_pairings(m):
            graph = RibbonGraph.standard(pairing)
            try:
                h, g, r = ribbon_faces(graph)
            except DomainError:
                continue  # disconnected
            assert 2 - 2 * g - h == 1 - r
            assert r == 3 * m // 2 - m + 1


def test_ribbon_census_frozen():
    census, disconnected = ribbon_census(2)
    assert census == {(0, 3): 12, (1, 1): 3}
    assert disconnected == 0
    census4, disconnected4 = ribbon_census(4)
    assert sum(census4.values()) == 9720
    assert disconnected4 == 675
    assert all(2 - 2 * g - h == 1 - 3 for (g, h) in census4)


def test_matrix_model_series_frozen():
    series = matrix_model_series(2)
    assert str(series.coefficient(2)) == "3/2*N + 6*N^3"
    assert str(series.coefficient(0)) == "1"
    assert series.coefficient(1).is_zero()


def test_matrix_model_matches_entrywise_oracle():
    series = matrix_model_series(4)
    for size in (1, 2, 3):
        oracle = matrix_wick_oracle_series(size, 4)
        evaluated = evaluate_matrix_series(series, size)
        assert evaluated == oracle, f"N={size}"


def test_matrix_oracle_frozen_values():
    # sum over pairings of N^{faces} at order 2, divided by 2!
    expected = {1: "15/2", 2: "51", 3: "333/2"}
    for size, text in expected.items():
        oracle = matrix_wick_oracle_series(size, 2)
        assert str(oracle.coefficient(2).constant_term()) == text


def test_scalar_model_argument_validation():
    q, c = one_dim()
    with pytest.raises(DomainError):
        scalar_model_series(q, CubicForm.from_array([[[1, 0], [0, 0]], [[0, 0], [0, 0]]]), 2)
    with pytest.raises(DomainError):
        scalar_model_series(q, c, -1)


def test_moment_oracle_gaussian_normalization():
    # with no cubic coupling every order beyond zero vanishes
    q = QuadraticForm([[3]])
    c = CubicForm.from_array([[[0]]])
    series = stein_oracle_series(q, c, 4)
    assert str(series.coefficient(0).constant_term()) == "1"
    for m in range(1, 5):
        assert series.coefficient(m).is_zero()
    assert scalar_model_series(q, c, 4) == series
