"""Core algebra: objectives, energies, tabu matrices, encodings."""

import itertools

import numpy as np
import pytest

from qals import (
    QalsParams,
    QuboProblem,
    TabuMatrix,
    WeightMatrix,
    as_spins,
    complete_graph,
    conjugate_tabu,
    decode,
    encode,
    energy,
    graph_from_edge_list,
    is_permutation,
    objective,
    tabu_init,
    tabu_update,
)


def all_spins(n):
    return [np.array(z, dtype=np.int8) for z in itertools.product((-1, 1), repeat=n)]


def weights(theta, graph):
    return WeightMatrix(np.asarray(theta, dtype=float), graph)


# ---------------------------------------------------------------- objective


def test_objective_offdiagonal_pair():
    p = QuboProblem(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert objective(p, np.array([1, -1])) == -2.0


def test_objective_identity_is_dimension():
    p = QuboProblem(np.eye(2))
    for z in all_spins(2):
        assert objective(p, z) == 2.0


def test_objective_matches_enumeration_oracle():
    # oracle: explicit double loop over ordered pairs
    p = QuboProblem(np.array([[0.5, -1.0], [-1.0, 0.5]]))
    for z in all_spins(2):
        expected = sum(p.q[i, j] * z[i] * z[j] for i in range(2) for j in range(2))
        assert objective(p, z) == expected
    assert objective(p, np.array([1, 1])) == -1.0


def test_objective_dimension_mismatch():
    p = QuboProblem(np.eye(3))
    with pytest.raises(ValueError):
        objective(p, np.array([1, -1]))


# ------------------------------------------------------------------- energy


def test_energy_biases_cancel():
    g = complete_graph(2)
    assert energy(weights(np.diag([1.0, -1.0]), g), np.array([1, 1])) == 0.0


def test_energy_two_qubit_toy_value():
    g = complete_graph(2)
    w = weights([[1.0, -1.0], [-1.0, -1.0]], g)
    # E(z) = z1 - z2 - z1 z2
    assert energy(w, np.array([1, -1])) == 3.0


def test_energy_two_qubit_toy_argmin_set():
    g = complete_graph(2)
    w = weights([[1.0, -1.0], [-1.0, -1.0]], g)
    values = {tuple(int(v) for v in z): energy(w, z) for z in all_spins(2)}
    argmin = {z for z, e in values.items() if e == min(values.values())}
    assert argmin == {(1, 1), (-1, 1), (-1, -1)}
    assert min(values.values()) == -1.0


def test_energy_counts_each_edge_once():
    g = complete_graph(3)
    theta = np.array([[0.0, 2.0, 0.0], [2.0, 0.0, -3.0], [0.0, -3.0, 0.0]])
    w = weights(theta, g)
    z = np.array([1, 1, -1])
    assert energy(w, z) == 2.0 * 1 * 1 + (-3.0) * 1 * (-1)


def test_energy_additivity():
    rng = np.random.default_rng(11)
    g = complete_graph(5)
    for _ in range(20):
        a = rng.normal(size=(5, 5))
        b = rng.normal(size=(5, 5))
        a = a + a.T
        b = b + b.T
        z = as_spins(rng.choice([-1, 1], size=5))
        total = energy(weights(a + b, g), z)
        assert total == pytest.approx(
            energy(weights(a, g), z) + energy(weights(b, g), z), rel=1e-12
        )


def test_weight_matrix_rejects_off_support_couplings():
    g = graph_from_edge_list(3, [(0, 1)])
    theta = np.zeros((3, 3))
    theta[0, 2] = theta[2, 0] = 1.0
    with pytest.raises(ValueError):
        WeightMatrix(theta, g)


# -------------------------------------------------------------------- tabu


def test_tabu_init_toy_candidate():
    s = tabu_init(np.array([1, -1]))
    assert s.m == 1
    np.testing.assert_array_equal(s.s, [[1, -1], [-1, -1]])


def test_tabu_init_all_ones():
    s = tabu_init(np.ones(4, dtype=int))
    np.testing.assert_array_equal(s.s, np.ones((4, 4), dtype=int))


def test_tabu_init_componentwise():
    s = tabu_init(np.array([-1, 1]))
    np.testing.assert_array_equal(s.s, [[-1, -1], [-1, 1]])


def test_tabu_update_toy_sequence():
    s = tabu_init(np.array([1, -1]))
    s = tabu_update(s, np.array([1, 1]))
    assert s.m == 2
    np.testing.assert_array_equal(s.s, [[2, 0], [0, 0]])


def test_tabu_update_on_zero_equals_init():
    z = np.array([1, -1, 1])
    a = tabu_update(TabuMatrix.zeros(3), z)
    b = tabu_init(z)
    assert a.m == b.m == 1
    np.testing.assert_array_equal(a.s, b.s)


def test_tabu_update_opposite_candidates():
    rng = np.random.default_rng(5)
    z = as_spins(rng.choice([-1, 1], size=6))
    s = tabu_update(tabu_init(z), -z)
    np.testing.assert_array_equal(np.diagonal(s.s), np.zeros(6, dtype=int))
    expected_off = 2 * np.outer(z, z)
    np.fill_diagonal(expected_off, 0)
    np.testing.assert_array_equal(s.s - np.diag(np.diagonal(s.s)), expected_off)


def test_tabu_recursion_equals_closed_form():
    rng = np.random.default_rng(42)
    for _ in range(25):
        n = int(rng.integers(1, 17))
        count = int(rng.integers(1, 51))
        zs = [as_spins(rng.choice([-1, 1], size=n)) for _ in range(count)]
        s = TabuMatrix.zeros(n)
        for z in zs:
            s = tabu_update(s, z)
        closed = sum(
            np.outer(z, z) - np.eye(n, dtype=np.int64) + np.diag(z.astype(np.int64))
            for z in zs
        )
        assert s.m == count
        np.testing.assert_array_equal(s.s, closed)


def test_tabu_parity_and_bound_invariants():
    rng = np.random.default_rng(9)
    s = TabuMatrix.zeros(5)
    for _ in range(40):
        s = tabu_update(s, as_spins(rng.choice([-1, 1], size=5)))
        assert np.all(np.abs(s.s) <= s.m)
        assert np.all(s.s % 2 == s.m % 2)
        np.testing.assert_array_equal(s.s, s.s.T)


# ------------------------------------------------------------- conjugation


def test_conjugate_identity_permutation():
    s = tabu_init(np.array([1, -1, 1]))
    out = conjugate_tabu(s, np.arange(3))
    np.testing.assert_array_equal(out.s, s.s)


def test_conjugate_swap_matches_swapped_candidate():
    s = tabu_init(np.array([1, -1]))
    out = conjugate_tabu(s, np.array([1, 0]))
    np.testing.assert_array_equal(out.s, tabu_init(np.array([-1, 1])).s)


def test_conjugate_roundtrip_via_inverse():
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = int(rng.integers(1, 9))
        s = tabu_init(as_spins(rng.choice([-1, 1], size=n)))
        sigma = rng.permutation(n)
        inverse = np.argsort(sigma)
        back = conjugate_tabu(conjugate_tabu(s, sigma), inverse)
        np.testing.assert_array_equal(back.s, s.s)


def test_conjugation_identity_on_candidate_lists():
    # tabu of relabeled candidates == relabeled tabu of candidates
    rng = np.random.default_rng(77)
    for _ in range(20):
        n = int(rng.integers(2, 17))
        sigma = rng.permutation(n)
        zs = [as_spins(rng.choice([-1, 1], size=n)) for _ in range(int(rng.integers(1, 20)))]
        direct = TabuMatrix.zeros(n)
        mapped = TabuMatrix.zeros(n)
        for z in zs:
            direct = tabu_update(direct, z)
            y = np.empty(n, dtype=np.int8)
            y[sigma] = z
            mapped = tabu_update(mapped, y)
        np.testing.assert_array_equal(conjugate_tabu(direct, sigma).s, mapped.s)


# ---------------------------------------------------------- encode / decode


def test_encode_complete_graph_identity():
    g = complete_graph(3)
    q = np.array([[1.0, 2.0, 3.0], [2.0, -1.0, 0.5], [3.0, 0.5, 0.0]])
    np.testing.assert_array_equal(encode(q, np.arange(3), g).theta, q)


def test_encode_edgeless_keeps_diagonal_only():
    g = graph_from_edge_list(3, [])
    q = np.array([[1.0, 2.0, 3.0], [2.0, -1.0, 0.5], [3.0, 0.5, 4.0]])
    np.testing.assert_array_equal(encode(q, np.arange(3), g).theta, np.diag([1.0, -1.0, 4.0]))


def test_encode_masked_pair_vanishes():
    g = graph_from_edge_list(2, [])
    q = np.array([[0.0, 5.0], [5.0, 0.0]])
    np.testing.assert_array_equal(encode(q, np.arange(2), g).theta, np.zeros((2, 2)))


def test_encode_places_variables_at_assigned_qubits():
    g = complete_graph(3)
    q = np.array([[1.0, 2.0, 3.0], [2.0, -1.0, 0.5], [3.0, 0.5, 0.0]])
    sigma = np.array([2, 0, 1])
    theta = encode(q, sigma, g).theta
    for i in range(3):
        for j in range(3):
            assert theta[sigma[i], sigma[j]] == q[i, j]


def test_decode_identity_and_swap():
    np.testing.assert_array_equal(decode(np.array([1, -1]), np.arange(2)), [1, -1])
    np.testing.assert_array_equal(decode(np.array([1, -1]), np.array([1, 0])), [-1, 1])


def test_encode_decode_roundtrip_random():
    rng = np.random.default_rng(21)
    for _ in range(30):
        n = int(rng.integers(1, 9))
        sigma = rng.permutation(n)
        z = as_spins(rng.choice([-1, 1], size=n))
        y = np.empty(n, dtype=np.int8)
        y[sigma] = z
        np.testing.assert_array_equal(decode(y, sigma), z)


def test_encoding_invariance_on_complete_graph():
    # with integer coefficients the energy is identical for every assignment
    rng = np.random.default_rng(13)
    g = complete_graph(6)
    q = rng.integers(-5, 6, size=(6, 6)).astype(float)
    q = q + q.T
    z = as_spins(rng.choice([-1, 1], size=6))
    reference = None
    for _ in range(20):
        sigma = rng.permutation(6)
        y = np.empty(6, dtype=np.int8)
        y[sigma] = z
        e = energy(encode(q, sigma, g), y)
        if reference is None:
            reference = e
        assert e == reference


def test_permutation_validation():
    assert is_permutation(np.array([2, 0, 1]))
    assert not is_permutation(np.array([0, 0, 1]))
    with pytest.raises(ValueError):
        decode(np.array([1, -1]), np.array([0, 0]))


# -------------------------------------------------------------- type checks


def test_qubo_problem_requires_symmetry():
    with pytest.raises(ValueError):
        QuboProblem(np.array([[0.0, 1.0], [2.0, 0.0]]))


def test_spin_validation():
    with pytest.raises(ValueError):
        as_spins(np.array([1, 0, -1]))
    with pytest.raises(ValueError):
        as_spins(np.array([[1], [-1]]))


def test_params_validation():
    QalsParams()  # defaults valid
    with pytest.raises(ValueError):
        QalsParams(p_delta=0.5)
    with pytest.raises(ValueError):
        QalsParams(eta=0.0)
    with pytest.raises(ValueError):
        QalsParams(q=0.0)
    with pytest.raises(ValueError):
        QalsParams(i_max=0)
    with pytest.raises(ValueError):
        QalsParams(lambda0=0.0)
