import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hshdouble import closedform
from hshdouble.bitmath import BitString
from hshdouble.statevector import (
    BasisPermutation,
    StateVector,
    controlled_subspace_hadamard,
    hadamard_all,
    init_basis,
    permute_basis,
    probabilities_marginal,
    s_phase_all,
)

from oracles import H1, S1, controlled_op, single_qubit_op


def random_state(q, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=2 ** q) + 1j * rng.normal(size=2 ** q)
    return StateVector(a / np.linalg.norm(a), q)


@pytest.mark.parametrize("q, x", [(2, 0), (1, 1), (3, 5)])
def test_init_basis(q, x):
    s = init_basis(q, BitString(x, q))
    expected = np.zeros(2 ** q)
    expected[x] = 1
    np.testing.assert_array_equal(s.amplitudes, expected)


def test_init_basis_width_mismatch():
    with pytest.raises(ValueError):
        init_basis(3, BitString(1, 2))


def test_state_length_checked():
    with pytest.raises(ValueError):
        StateVector(np.zeros(3), 2)


@pytest.mark.parametrize("n", [1, 4, 10])
def test_hadamard_uniform(n):
    s = hadamard_all(init_basis(n, 0))
    np.testing.assert_allclose(s.amplitudes, 2 ** (-n / 2), atol=1e-15)


def test_hadamard_on_one():
    s = hadamard_all(init_basis(1, 1))
    np.testing.assert_allclose(s.amplitudes, np.array([1, -1]) / np.sqrt(2), atol=1e-15)


@pytest.mark.parametrize("q", [1, 5, 9])
def test_hadamard_involution(q):
    s = random_state(q, q)
    before = s.amplitudes.copy()
    hadamard_all(hadamard_all(s))
    np.testing.assert_allclose(s.amplitudes, before, atol=1e-12)


@pytest.mark.parametrize("targets", [[0], [1, 3], [0, 1, 2, 3, 4]])
def test_hadamard_subset_dense(targets):
    s = random_state(5, 1)
    expected = single_qubit_op(H1, set(targets), 5) @ s.amplitudes
    hadamard_all(s, targets)
    np.testing.assert_allclose(s.amplitudes, expected, atol=1e-12)


def test_hadamard_rejects_bad_target():
    with pytest.raises(ValueError):
        hadamard_all(init_basis(2, 0), [2])


def test_s_phase_examples():
    s = s_phase_all(init_basis(3, 0))
    np.testing.assert_array_equal(s.amplitudes, init_basis(3, 0).amplitudes)
    s = s_phase_all(init_basis(1, 1))
    np.testing.assert_allclose(s.amplitudes, [0, 1j])
    s = s_phase_all(hadamard_all(init_basis(2, 0)), [0, 1])
    np.testing.assert_allclose(s.amplitudes, np.array([1, 1j, 1j, -1]) / 2, atol=1e-15)


@pytest.mark.parametrize("targets", [[0], [2, 3], [0, 1, 2, 3]])
def test_s_phase_dense(targets):
    s = random_state(4, 2)
    expected = single_qubit_op(S1, set(targets), 4) @ s.amplitudes
    s_phase_all(s, targets)
    np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)


def test_controlled_hadamard_empty_and_full_subspace():
    # control qubit 2 is |0> everywhere: nothing happens
    s = hadamard_all(init_basis(3, 0), [0, 1])
    before = s.amplitudes.copy()
    controlled_subspace_hadamard(s, [0, 1], control=2, control_value=1)
    np.testing.assert_array_equal(s.amplitudes, before)
    # control is |1> everywhere: same as an unconditional H
    s = random_state(2, 3)
    full = StateVector(np.kron([0, 1], s.amplitudes), 3)
    ref = full.copy()
    controlled_subspace_hadamard(full, [0, 1], control=2, control_value=1)
    hadamard_all(ref, [0, 1])
    np.testing.assert_allclose(full.amplitudes, ref.amplitudes, atol=1e-15)


def test_controlled_hadamard_bell_example():
    s = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2), 2)
    controlled_subspace_hadamard(s, [0], control=1, control_value=1)
    # |00>/sqrt2 + |1>(|0> - |1>)/2
    np.testing.assert_allclose(s.amplitudes, [1 / np.sqrt(2), 0, 0.5, -0.5], atol=1e-15)


@pytest.mark.parametrize("q, targets, control, value", [
    (2, [0], 1, 1), (3, [0, 1], 2, 1), (4, [1, 3], 0, 0),
    (5, [0, 2, 4], 3, 1), (6, [0, 1, 2, 3], 5, 1), (6, [4, 5], 2, 0),
])
def test_controlled_hadamard_dense(q, targets, control, value):
    s = random_state(q, q + control)
    op = controlled_op(single_qubit_op(H1, set(targets), q), control, value, q)
    expected = op @ s.amplitudes
    controlled_subspace_hadamard(s, targets, control, value)
    np.testing.assert_allclose(s.amplitudes, expected, atol=1e-12)
    assert abs(s.norm_squared() - 1) < 1e-12


def test_controlled_hadamard_rejects_control_in_targets():
    with pytest.raises(ValueError):
        controlled_subspace_hadamard(init_basis(2, 0), [0, 1], control=1)


def test_permute_examples():
    s = random_state(3, 0)
    before = s.amplitudes.copy()
    permute_basis(s, BasisPermutation.identity(8))
    np.testing.assert_array_equal(s.amplitudes, before)
    x = permute_basis(init_basis(1, 0), [1, 0])
    np.testing.assert_array_equal(x.amplitudes, [0, 1])


def test_permute_then_inverse():
    rng = np.random.default_rng(4)
    p = BasisPermutation(rng.permutation(32))
    s = random_state(5, 5)
    before = s.amplitudes.copy()
    permute_basis(permute_basis(s, p), p.inverse())
    np.testing.assert_array_equal(s.amplitudes, before)
    assert p.then(p.inverse()) == BasisPermutation.identity(32)


def test_permute_moves_amplitude_forward():
    s = init_basis(2, 1)
    permute_basis(s, [0, 3, 1, 2])
    np.testing.assert_array_equal(s.amplitudes, [0, 0, 0, 1])


def test_permute_rejects_non_bijection():
    with pytest.raises(ValueError):
        permute_basis(init_basis(1, 0), [0, 0], validate=True)
    with pytest.raises(ValueError):
        permute_basis(init_basis(1, 0), [0, 1, 2])


def test_marginal_examples():
    s = random_state(3, 6)
    np.testing.assert_allclose(probabilities_marginal(s, [0, 1, 2]), np.abs(s.amplitudes) ** 2)
    u = hadamard_all(init_basis(3, 0))
    np.testing.assert_allclose(probabilities_marginal(u, [1]), [0.5, 0.5])


def test_marginal_bit_order():
    s = init_basis(3, 0b110)
    assert probabilities_marginal(s, [1, 2]).tolist() == [0, 0, 0, 1]
    assert probabilities_marginal(s, [0, 2]).tolist() == [0, 0, 1, 0]
    assert probabilities_marginal(s, [2, 0]).tolist() == [0, 1, 0, 0]


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2 ** 32 - 1), st.data())
def test_unitarity(q, seed, data):
    s = random_state(q, seed)
    targets = data.draw(st.sets(st.integers(0, q - 1), min_size=1))
    hadamard_all(s, targets)
    s_phase_all(s, targets)
    rest = [t for t in range(q) if t not in targets]
    if rest:
        controlled_subspace_hadamard(s, targets, rest[0], data.draw(st.integers(0, 1)))
    permute_basis(s, np.random.default_rng(seed).permutation(2 ** q))
    assert abs(s.norm_squared() - 1) < 1e-12
    kept = sorted(data.draw(st.sets(st.integers(0, q - 1), min_size=1)))
    assert abs(probabilities_marginal(s, kept).sum() - 1) < 1e-12


@pytest.mark.parametrize("n", range(1, 13))
def test_hsh_matches_closed_form(n):
    s = init_basis(n, 0)
    hadamard_all(s)
    s_phase_all(s)
    hadamard_all(s)
    for z in range(2 ** n):
        expected = closedform.table_row(n, BitString(z, n)).normalized
        assert abs(s.amplitudes[z] - expected) <= 1e-10
