import itertools
import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cokasch.kernel import (
    AbelianPresentation,
    CongruenceSolver,
    Subgroup,
    group_elements,
    lattice_hnf,
    mat_mul,
    quotient_presentation,
    smith_decompose,
    solve_congruence_system,
    vec_mat,
)


def det(m):
    return int(sympy.Matrix(m).det()) if m else 1


def check_smith(m):
    U, D, V = smith_decompose(m)
    rows, cols = len(m), len(m[0])
    assert [list(r) for r in mat_mul(mat_mul(U, m), V)] == [list(r) for r in D]
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(rows, cols))]
    assert all(D[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0 if a else b == 0
    return diag


def test_smith_examples():
    assert check_smith([[2, 4], [6, 8]]) == [2, 4]
    assert check_smith([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]
    assert check_smith([[0, 0], [0, 0]]) == [0, 0]


def test_smith_matches_sympy_invariants():
    from sympy.matrices.normalforms import smith_normal_form

    m = [[6, 4, 2], [8, 14, 10], [0, 0, 12]]
    ours = check_smith(m)
    theirs = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    assert ours == [abs(int(theirs[i, i])) for i in range(3)]


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_smith_property(m):
    check_smith(m)


def test_congruence_examples():
    sol = solve_congruence_system([[2]], [4], [0], var_orders=[4])
    assert sorted(sol.solutions()) == [(0,), (2,)]
    assert sol.subgroup.generators == ((2,),)
    assert solve_congruence_system([[2]], [4], [1], var_orders=[4]) is None
    empty = solve_congruence_system([], [], [], var_orders=[2, 3])
    assert empty.count == 6


@st.composite
def systems(draw):
    var_orders = draw(st.lists(st.sampled_from([2, 3, 4, 6, 8]), min_size=1, max_size=3))
    if math.prod(var_orders) > 256:
        var_orders = var_orders[:2]
    rows, moduli, rhs = [], [], []
    for _ in range(draw(st.integers(0, 3))):
        m = draw(st.sampled_from([2, 3, 4, 6, 8, 12]))
        raw = draw(st.lists(st.integers(0, 11), min_size=len(var_orders), max_size=len(var_orders)))
        # scale coefficients so each congruence is well defined on Z/var_orders
        rows.append([c * (m // math.gcd(m, e)) for c, e in zip(raw, var_orders)])
        moduli.append(m)
        rhs.append(draw(st.integers(0, m - 1)))
    return var_orders, rows, moduli, rhs


@given(systems())
def test_congruence_matches_enumeration(case):
    var_orders, rows, moduli, rhs = case
    brute = {x for x in group_elements(var_orders)
             if all(sum(a * b for a, b in zip(r, x)) % m == t for r, m, t in zip(rows, moduli, rhs))}
    sol = solve_congruence_system(rows, moduli, rhs, var_orders=var_orders)
    if sol is None:
        assert not brute
    else:
        assert set(sol.solutions()) == brute
        assert sol.count == len(brute)


def test_free_integer_variables():
    # 3x + 6y = 3 (mod 9) over Z^2
    sol = solve_congruence_system([[3, 6]], [9], [3])
    for x, y in itertools.product(range(-9, 10), repeat=2):
        assert ((x, y) in sol) == ((3 * x + 6 * y - 3) % 9 == 0)


def test_quotient_examples():
    pres, proj = quotient_presentation([4], [[2]])
    assert pres.orders == (2,)
    pres, proj = quotient_presentation([2, 2], [[1, 1]])
    assert pres.orders == (2,)
    pres, proj = quotient_presentation([5], [])
    assert pres.orders == (5,) and proj == ((1,),)
    assert AbelianPresentation((2, 4)).relation_matrix == ((2, 0), (0, 4))


@st.composite
def subgroup_cases(draw):
    orders = draw(st.lists(st.sampled_from([2, 3, 4, 6, 8, 9]), min_size=1, max_size=3))
    if math.prod(orders) > 256:
        orders = orders[:2]
    gens = draw(st.lists(st.tuples(*[st.integers(0, e - 1) for e in orders]), max_size=3))
    return tuple(orders), gens


def span(orders, gens):
    seen = {tuple(0 for _ in orders)}
    frontier = list(seen)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple((a + b) % e for a, b, e in zip(x, g, orders))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


@given(subgroup_cases())
def test_subgroup_and_quotient_match_enumeration(case):
    orders, gens = case
    H = Subgroup.generated(orders, gens)
    elems = span(orders, gens)
    assert H.size == len(elems)
    assert set(H.elements()) == elems
    assert all((x in H) == (x in elems) for x in group_elements(orders))
    pres, proj = quotient_presentation(orders, gens)
    assert math.prod(orders) == pres.size * len(elems)
    # the projection kills H and separates cosets
    images = {}
    for x in group_elements(orders):
        img = vec_mat(x, proj, pres.orders) if pres.orders else ()
        images.setdefault(img, set()).add(x)
    assert len(images) == pres.size
    for g in gens:
        assert not any(vec_mat(g, proj, pres.orders)) if pres.orders else True
    for coset in images.values():
        base = next(iter(coset))
        assert all(tuple((a - b) % e for a, b, e in zip(y, base, orders)) in H for y in coset)


@given(subgroup_cases(), subgroup_cases())
def test_hnf_is_canonical_and_join(c1, c2):
    orders, g1 = c1
    g2 = [tuple(x % e for x, e in zip(v, orders)) for v in c2[1] if len(v) == len(orders)]
    A, B = Subgroup.generated(orders, g1), Subgroup.generated(orders, g2)
    J = A.join(B)
    assert J == Subgroup.generated(orders, list(g1) + g2)
    assert set(J.elements()) == span(orders, list(g1) + g2)
    assert lattice_hnf(list(g1) + g2, orders) == lattice_hnf(reversed(list(g1) + g2), orders)
    assert A.issubset(J) and B.issubset(J)


def test_incremental_solver_rejects_ill_defined():
    s = CongruenceSolver(1, var_orders=[3])
    with pytest.raises(ValueError):
        s.add([1], 2, 0)
