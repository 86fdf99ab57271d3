import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hshdouble.bitmath import BitString, twos_complement_encode
from hshdouble.partition import (
    PartitionInstance,
    RegisterLayout,
    RejectedInstanceError,
    conditional_add_permutation,
    enumerate_solutions,
    half_sum,
    initial_sigma_field,
    is_solution,
    sigma_of,
    subset_sigmas,
    zero_flip_permutation,
)

P = PartitionInstance
even_instances = st.lists(st.integers(1, 20), min_size=1, max_size=8).filter(
    lambda w: sum(w) % 2 == 0).map(lambda w: P(tuple(w)))


@pytest.mark.parametrize("weights, expected", [((1, 2, 3), 3), ((2, 2), 2)])
def test_half_sum(weights, expected):
    assert half_sum(P(weights)) == expected


def test_odd_total_rejected():
    with pytest.raises(RejectedInstanceError, match="half-sum not integer"):
        half_sum(P((1, 2)))


@pytest.mark.parametrize("weights", [(), (0, 2), (-1, 3), (1.5, 2), (True, 1)])
def test_invalid_weights(weights):
    with pytest.raises(ValueError):
        P(weights)


def test_from_json(tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps({"weights": [1, 2, 3]}))
    assert P.from_json(path) == P((1, 2, 3))
    path.write_text(json.dumps({"w": [1]}))
    with pytest.raises(ValueError):
        P.from_json(path)


@pytest.mark.parametrize("x, expected", [(0b011, 0), (0, -3), (0b111, 3)])
def test_sigma_of(x, expected):
    assert sigma_of(P((1, 2, 3)), BitString(x, 3)) == expected


@pytest.mark.parametrize("x, expected", [(0b011, True), (0b100, True), (0b001, False)])
def test_is_solution(x, expected):
    assert is_solution(P((1, 2, 3)), BitString(x, 3)) is expected


@pytest.mark.parametrize("weights, expected", [
    ((1, 2, 3), [0b011, 0b100]), ((1, 1), [0b01, 0b10]), ((1, 2, 5), [])])
def test_enumerate_solutions(weights, expected):
    assert [y.value for y in enumerate_solutions(P(weights))] == expected


@pytest.mark.parametrize("S, m", [(1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (8, 4), (9, 5)])
def test_layout_width(S, m):
    layout = RegisterLayout.for_instance(P((S, S)))
    assert layout.m == m
    assert 2 ** layout.m > S
    assert layout.total == 2 + m + 1


@settings(max_examples=60, deadline=None)
@given(even_instances)
def test_subset_sigmas_and_complement_closure(inst):
    sig = subset_sigmas(inst)
    full = (1 << inst.n) - 1
    for x in range(1 << inst.n):
        assert sig[x] == sigma_of(inst, x)
    sols = {y.value for y in enumerate_solutions(inst)}
    assert sols == {y ^ full for y in sols}
    m = RegisterLayout.for_instance(inst).m
    for x in range(1 << inst.n):
        s = sigma_of(inst, x)
        assert (s == 0) == (twos_complement_encode(s, m).value == 0)


def test_conditional_add_example():
    inst = P((1, 2, 3))
    layout = RegisterLayout.for_instance(inst)
    perm = conditional_add_permutation(inst, 2, layout)
    start = layout.index(0b100, twos_complement_encode(-3, 3).value, 1)
    assert layout.fields(perm(start)) == (0b100, 0, 1)
    # x_2 = 0: fixed point
    other = layout.index(0b011, 5, 0)
    assert perm(other) == other


@settings(max_examples=40, deadline=None)
@given(even_instances.filter(lambda i: i.n <= 6))
def test_permutations_reversible(inst):
    layout = RegisterLayout.for_instance(inst)
    ident = np.arange(1 << layout.total)
    for e in range(inst.n):
        p = conditional_add_permutation(inst, e, layout)
        assert p.is_bijection()
        assert np.array_equal(p.then(p.inverse()).mapping, ident)
    z = zero_flip_permutation(layout)
    assert z.is_bijection()
    assert np.array_equal(z.then(z).mapping, ident)


def test_zero_flip_examples():
    layout = RegisterLayout(2, 3)
    z = zero_flip_permutation(layout)
    assert z(layout.index(1, 0, 1)) == layout.index(1, 0, 0)
    assert z(layout.index(1, 0, 0)) == layout.index(1, 0, 1)
    assert z(layout.index(1, 4, 1)) == layout.index(1, 4, 1)


@pytest.mark.parametrize("weights", [(1, 2, 3), (3, 1, 1, 2, 5), (7, 7), (4, 4, 8),
                                     (1, 1, 1, 1, 2, 2), (2, 3, 5, 7, 11, 13, 17, 2)])
def test_adders_compute_sigma(weights):
    inst = P(weights)
    layout = RegisterLayout.for_instance(inst)
    sigma0 = initial_sigma_field(inst, layout)
    perms = [conditional_add_permutation(inst, e, layout) for e in range(inst.n)]
    for x in range(1 << inst.n):
        idx = layout.index(x, sigma0, 1)
        for p in perms:
            idx = p(idx)
        assert layout.fields(idx) == (
            x, twos_complement_encode(sigma_of(inst, x), layout.m).value, 1)


def test_sigma_can_reach_plus_s_at_power_of_two():
    # S = 4 = 2**2: sigma = +4 wraps to the pattern of -4 but is never zero
    inst = P((4, 4))
    layout = RegisterLayout.for_instance(inst)
    assert layout.m == 3
    assert sigma_of(inst, 0b11) == 4
    assert twos_complement_encode(4, layout.m).value != 0
