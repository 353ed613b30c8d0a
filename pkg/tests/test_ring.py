import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cokasch.errors import RingAxiomError
from cokasch.fixtures import cyclic_ring, random_ring, truncated_polynomial_ring, upper_triangular_ring
from cokasch.module import regular_module
from cokasch.oracle import enumerate_submodules
from cokasch.ring import (
    enumerate_idempotents,
    jacobson_radical,
    primitive_decomposition,
    product_ring,
    validate_ring,
)

E11, E12, E22 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def test_validate_examples():
    assert validate_ring([2], [[[1]]], [1]).size == 2
    assert validate_ring([4], [[[1]]], [1]).size == 4
    with pytest.raises(RingAxiomError, match="unity"):
        validate_ring([2], [[[1]]], [0])


@pytest.mark.parametrize("orders,mul,one,axiom", [
    ([], [], [], "nontrivial"),
    ([1], [[[0]]], [0], "order"),
    ([2, 4], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [1, 0], "bilinearity"),
    # (b1 b1) b1 = b2 b1 = b1 but b1 (b1 b1) = b1 b2 = 0
    ([2, 2, 2], [[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [0, 0, 0]], [[0, 0, 1], [0, 1, 0], [0, 0, 0]]],
     [1, 0, 0], "associativity"),
    ([64, 128], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [1, 0], "size"),
])
def test_validate_reports_axiom(orders, mul, one, axiom):
    with pytest.raises(RingAxiomError) as info:
        validate_ring(orders, mul, one)
    assert info.value.axiom == axiom


def test_radical_examples(rings):
    assert jacobson_radical(rings["F2"]).size == 1
    assert set(jacobson_radical(rings["Z4"]).elements()) == {(0,), (2,)}
    assert set(jacobson_radical(rings["F2x"]).elements()) == {(0, 0), (0, 1)}
    assert set(jacobson_radical(rings["T2F2"]).elements()) == {(0, 0, 0), E12}


def test_idempotent_examples(rings):
    assert enumerate_idempotents(rings["F2"]) == [(0,), (1,)]
    assert set(enumerate_idempotents(rings["F2xF2"])) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert len(enumerate_idempotents(rings["T2F2"])) == 6
    assert primitive_decomposition(rings["F2"]) == ((1,),)
    assert primitive_decomposition(rings["F2xF2"]) == ((1, 0), (0, 1))
    assert primitive_decomposition(rings["T2F2"]) == (E11, E22)


def _check_radical(R):
    J = jacobson_radical(R)
    elems = list(J.elements())
    # nilpotent: iterated set products reach {0}
    power = set(elems)
    for _ in range(R.size.bit_length() + 1):
        if power == {R.zero}:
            break
        power = {R.mult(a, b) for a in power for b in elems}
    assert power == {R.zero}
    if R.size <= 64:
        subs = enumerate_submodules(regular_module(R), 256)
        top = subs[-1]
        maximal = [S for S in subs if S != top and not any(S != T != top and S.issubset(T) for T in subs)]
        inter = set(R.elements())
        for S in maximal:
            inter &= set(S.subgroup.elements())
        assert inter == set(elems)


def _check_decomposition(R):
    es = primitive_decomposition(R)
    total = R.zero
    for i, e in enumerate(es):
        assert R.mult(e, e) == e
        for j, f in enumerate(es):
            if i != j:
                assert R.mult(e, f) == R.zero
        corner = {R.mult(R.mult(e, x), e) for x in R.elements()}
        assert {c for c in corner if R.mult(c, c) == c} == {R.zero, e}
        total = R.add(total, e)
    assert total == R.one


def test_fixture_radical_and_decomposition(rings):
    for R in rings.values():
        _check_radical(R)
        _check_decomposition(R)


@given(st.integers(0, 10**6))
def test_random_ring_radical_and_decomposition(seed):
    R = random_ring(random.Random(seed), 32)
    _check_radical(R)
    _check_decomposition(R)


def test_builders():
    assert upper_triangular_ring(3).size == 27
    assert truncated_polynomial_ring(3, 3).size == 27
    assert product_ring(cyclic_ring(2), cyclic_ring(3)).size == 6
    assert len(enumerate_idempotents(product_ring(cyclic_ring(2), cyclic_ring(3)))) == 4
