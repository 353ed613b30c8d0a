"""Finite unital rings given by structure constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import RingAxiomError
from .kernel import Matrix, Subgroup, Vector, element_index, group_elements, identity, reduce_vec, vec_mat

MAX_RING_SIZE = 4096

RingElement = Vector


@dataclass(frozen=True)
class FiniteRing:
    """A ring whose additive group is ``Z/orders[0] + ... + Z/orders[n-1]``.

    ``mul[i][j]`` is the coordinate vector of ``b_i * b_j`` for the additive
    generators ``b_0..b_{n-1}``; ``one`` is the unity.  Build instances with
    :func:`validate_ring`; the constructor itself does not check axioms.
    """

    orders: Vector
    mul: tuple[tuple[Vector, ...], ...]
    one: Vector

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def zero(self) -> RingElement:
        return (0,) * self.rank

    @cached_property
    def right_mult(self) -> tuple[Matrix, ...]:
        """Matrix of ``x -> x * b_k`` for each generator ``b_k``."""
        n = self.rank
        return tuple(tuple(self.mul[i][k] for i in range(n)) for k in range(n))

    def reduce(self, x: Sequence[int]) -> RingElement:
        return reduce_vec(x, self.orders)

    def add(self, x, y) -> RingElement:
        return tuple((a + b) % e for a, b, e in zip(x, y, self.orders))

    def sub(self, x, y) -> RingElement:
        return tuple((a - b) % e for a, b, e in zip(x, y, self.orders))

    def neg(self, x) -> RingElement:
        return tuple(-a % e for a, e in zip(x, self.orders))

    def scale(self, c: int, x) -> RingElement:
        return tuple(c * a % e for a, e in zip(x, self.orders))

    def right_matrix(self, y: Sequence[int]) -> Matrix:
        """Matrix of right multiplication by ``y``."""
        n = self.rank
        acc = [[0] * n for _ in range(n)]
        for k, c in enumerate(y):
            if c:
                for i, row in enumerate(self.right_mult[k]):
                    for j in range(n):
                        acc[i][j] += c * row[j]
        return tuple(tuple(x % e for x, e in zip(r, self.orders)) for r in acc)

    def mult(self, x, y) -> RingElement:
        n = self.rank
        acc = [0] * n
        for i, a in enumerate(x):
            if not a:
                continue
            mi = self.mul[i]
            for j, b in enumerate(y):
                if b:
                    ab = a * b
                    for k, c in enumerate(mi[j]):
                        if c:
                            acc[k] += ab * c
        return tuple(v % e for v, e in zip(acc, self.orders))

    def elements(self) -> Iterator[RingElement]:
        """Elements in the canonical order (first coordinate varies fastest)."""
        return group_elements(self.orders)

    def index(self, x) -> int:
        return element_index(x, self.orders)

    def right_ideal(self, gens) -> Subgroup:
        """Additive subgroup ``sum x_i R``; a right ideal."""
        rows = [vec_mat(g, self.right_mult[k], self.orders) for g in gens for k in range(self.rank)]
        return Subgroup.generated(self.orders, rows)

    @cached_property
    def units(self) -> frozenset:
        # in a finite ring x is a unit iff 1 is in xR
        return frozenset(x for x in self.elements() if self.one in self.right_ideal([x]))

    def is_unit(self, x) -> bool:
        return self.reduce(x) in self.units


def validate_ring(orders: Sequence[int], mul, one: Sequence[int]) -> FiniteRing:
    """Check every ring axiom on the additive generators and seal the ring.

    Raises :class:`RingAxiomError` naming the first violated axiom together with
    the witnessing index tuple.
    """
    orders = tuple(int(e) for e in orders)
    n = len(orders)
    if n == 0:
        raise RingAxiomError("nontrivial", detail="the zero ring is not allowed")
    for i, e in enumerate(orders):
        if e < 2:
            raise RingAxiomError("order", (i,), f"generator order {e} must be >= 2")
    size = math.prod(orders)
    if size > MAX_RING_SIZE:
        raise RingAxiomError("size", detail=f"|R| = {size} exceeds the cap {MAX_RING_SIZE}")
    if len(mul) != n or any(len(row) != n for row in mul):
        raise RingAxiomError("shape", detail=f"structure constants must be {n} x {n} x {n}")
    table = []
    for i in range(n):
        trow = []
        for j in range(n):
            c = mul[i][j]
            if len(c) != n:
                raise RingAxiomError("shape", (i, j), f"product vector has length {len(c)}")
            c = tuple(int(x) for x in c)
            for k in range(n):
                if (orders[i] * c[k]) % orders[k] or (orders[j] * c[k]) % orders[k]:
                    raise RingAxiomError("bilinearity", (i, j, k),
                                         f"coefficient {c[k]} of b_{k} (order {orders[k]}) in b_{i}*b_{j}")
            trow.append(reduce_vec(c, orders))
        table.append(tuple(trow))
    if len(one) != n:
        raise RingAxiomError("shape", detail="unity has the wrong length")
    ring = FiniteRing(orders, tuple(table), reduce_vec([int(x) for x in one], orders))
    basis = identity(n)
    for i in range(n):
        for j in range(n):
            bij = ring.mul[i][j]
            for k in range(n):
                left = ring.mult(bij, basis[k])
                right = ring.mult(basis[i], ring.mul[j][k])
                if left != right:
                    raise RingAxiomError("associativity", (i, j, k), f"{left} != {right}")
    for i in range(n):
        if ring.mult(ring.one, basis[i]) != basis[i] or ring.mult(basis[i], ring.one) != basis[i]:
            raise RingAxiomError("unity", (i,), f"{ring.one} does not act as identity on b_{i}")
    return ring


def product_ring(r: FiniteRing, s: FiniteRing) -> FiniteRing:
    """The direct product ``r x s`` with block structure constants."""
    n, m = r.rank, s.rank
    z = (0,) * (n + m)
    table = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                row.append(r.mul[i][j] + (0,) * m)
            elif i >= n and j >= n:
                row.append((0,) * n + s.mul[i - n][j - n])
            else:
                row.append(z)
        table.append(row)
    return validate_ring(r.orders + s.orders, table, r.one + s.one)


# ---------------------------------------------------------------------------
# Radical and idempotents


def jacobson_radical(R: FiniteRing) -> Subgroup:
    """``J(R) = {x : 1 - x*y is a unit for every y}``, as a subgroup of ``R``.

    The result is checked to be a two-sided ideal.
    """
    units = R.units
    members = []
    for x in R.elements():
        if x in units or R.sub(R.one, x) not in units:
            continue
        if all(R.sub(R.one, z) in units for z in R.right_ideal([x]).elements()):
            members.append(x)
    J = Subgroup.generated(R.orders, members)
    if J.size != len(members):
        raise AssertionError("quasi-regular elements do not form a subgroup")
    basis = identity(R.rank)
    for g in J.generators:
        for b in basis:
            if R.mult(g, b) not in J or R.mult(b, g) not in J:
                raise AssertionError("Jacobson radical is not a two-sided ideal")
    return J


def enumerate_idempotents(R: FiniteRing) -> list[RingElement]:
    return [e for e in R.elements() if R.mult(e, e) == e]


def is_primitive(R: FiniteRing, e, idempotents=None) -> bool:
    """``e != 0`` and the corner ``eRe`` holds no idempotent besides ``0`` and ``e``."""
    if not any(e):
        return False
    if idempotents is None:
        idempotents = enumerate_idempotents(R)
    for f in idempotents:
        if any(f) and f != e and R.mult(e, f) == f and R.mult(f, e) == f:
            return False
    return True


def primitive_idempotents(R: FiniteRing) -> list[RingElement]:
    idem = enumerate_idempotents(R)
    return [e for e in idem if is_primitive(R, e, idem)]


def primitive_decomposition(R: FiniteRing) -> tuple[RingElement, ...]:
    """Orthogonal primitive idempotents summing to one.

    Depth-first search over the primitive idempotents in element order; the
    first complete system is returned.  An idempotent ``f`` is primitive iff it
    is the only nonzero idempotent of ``fRf`` (``g`` lies in ``fRf`` iff
    ``fg = gf = g``), which avoids enumerating corners explicitly.
    """
    prims = primitive_idempotents(R)

    def search(chosen, rest):
        if not any(rest):
            return chosen
        for e in prims:
            if chosen and R.index(e) <= R.index(chosen[-1]):
                continue
            if R.mult(rest, e) == e and R.mult(e, rest) == e:
                found = search(chosen + [e], R.sub(rest, e))
                if found is not None:
                    return found
        return None

    found = search([], R.one)
    if found is None:
        raise AssertionError("no primitive decomposition found")
    return tuple(found)
