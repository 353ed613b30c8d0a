"""Exact integer linear algebra for finite abelian groups.

Everything above this layer (quotients, kernels, Hom spaces) is phrased in
terms of subgroups of ``Z/e_1 + ... + Z/e_n``.  Elements are integer row
vectors; matrices act on the right.  Two normal forms are used:

* the Smith form over ``Z`` (``smith_decompose``) to put a quotient or a
  subgroup into cyclic coordinates ``Z/d_1 + ... + Z/d_r`` with ``d_i | d_{i+1}``;
* a Hermite form of the lattice ``span(gens) + diag(e) Z^n``
  (``lattice_hnf``) as the canonical basis of a subgroup, used for
  membership, equality and enumeration.

All routines use Python integers, so there is no overflow; entries are
reduced modulo the ambient orders whenever that is sound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator, Optional, Sequence

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) >= 0`` and ``s*a + t*b = g``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def lcm_all(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], cols: Optional[int] = None) -> Matrix:
    if cols is None:
        cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    acc[j] += x * bk[j]
        out.append(tuple(acc))
    return tuple(out)


def vec_mat(v: Sequence[int], m: Sequence[Sequence[int]], orders: Sequence[int]) -> Vector:
    """Row vector times matrix, reduced modulo ``orders``."""
    acc = [0] * len(orders)
    for k, x in enumerate(v):
        if x:
            mk = m[k]
            for j in range(len(acc)):
                acc[j] += x * mk[j]
    return tuple(a % e for a, e in zip(acc, orders))


def reduce_vec(v: Sequence[int], orders: Sequence[int]) -> Vector:
    return tuple(x % e for x, e in zip(v, orders))


def group_elements(orders: Sequence[int]) -> Iterator[Vector]:
    """All elements of ``Z/e_1 + ... + Z/e_n`` with the first coordinate varying fastest."""
    for rev in itertools.product(*(range(e) for e in reversed(orders))):
        yield tuple(reversed(rev))


def element_index(v: Sequence[int], orders: Sequence[int]) -> int:
    idx, radix = 0, 1
    for x, e in zip(v, orders):
        idx += (x % e) * radix
        radix *= e
    return idx


# ---------------------------------------------------------------------------
# Smith normal form


def _smith(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]], list[list[int]]]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]
    vi = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vi[i], vi[j] = vi[j], vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]
        vi[src] = [x - q * y for x, y in zip(vi[src], vi[dst])]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            ai = a[i]
            for j in range(t, cols):
                x = ai[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        p = a[t][t]
        clean = True
        for i in range(t + 1, rows):
            if a[i][t]:
                add_row(i, t, -(a[i][t] // p))
                if a[i][t]:
                    clean = False
        for j in range(t + 1, cols):
            if a[t][j]:
                add_col(j, t, -(a[t][j] // p))
                if a[t][j]:
                    clean = False
        if not clean:
            continue
        bad = None
        for i in range(t + 1, rows):
            if any(a[i][j] % p for j in range(t + 1, cols)):
                bad = i
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if p < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v, vi


def smith_decompose(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form over the integers.

    Returns unimodular ``U`` and ``V`` and diagonal ``D`` with ``U*m*V == D`` and
    ``D[0][0] | D[1][1] | ...``.  Pivots are chosen as the smallest nonzero
    absolute value, ties broken by lowest row and then lowest column, so the
    transforms are reproducible.
    """
    u, d, v, _ = _smith(m)
    return _freeze(u), _freeze(d), _freeze(v)


def _freeze(m) -> Matrix:
    return tuple(tuple(r) for r in m)


# ---------------------------------------------------------------------------
# Subgroups of finite abelian groups


def lattice_hnf(rows: Iterable[Sequence[int]], orders: Sequence[int], start: Optional[Matrix] = None) -> Matrix:
    """Hermite basis of ``span(rows) + diag(orders) Z^n``.

    The result is an upper triangular ``n x n`` matrix with positive pivots
    ``g_j | orders[j]`` and entries above each pivot reduced into ``[0, g_j)``.
    It depends only on the lattice, hence only on the subgroup of
    ``Z/orders`` generated by ``rows``.  ``start``, a basis previously returned
    by this function, is absorbed without being re-reduced.
    """
    n = len(orders)
    work = []
    for r in rows:
        rr = [x % e for x, e in zip(r, orders)]
        if any(rr):
            work.append(rr)
    basis = []
    for j in range(n):
        if start is None:
            piv = [0] * n
            piv[j] = orders[j]
        else:
            piv = list(start[j])
        rest = []
        for r in work:
            b = r[j]
            if b == 0:
                rest.append(r)
                continue
            a = piv[j]
            if b % a == 0:
                q = b // a
                new_r = [(y - q * x) for x, y in zip(piv, r)]
                for k in range(j + 1, n):
                    new_r[k] %= orders[k]
                new_r[j] = 0
                if any(new_r):
                    rest.append(new_r)
                continue
            g, s, t = xgcd(a, b)
            qa, qb = a // g, b // g
            new_piv = [s * x + t * y for x, y in zip(piv, r)]
            new_r = [qb * x - qa * y for x, y in zip(piv, r)]
            for k in range(j + 1, n):
                new_piv[k] %= orders[k]
                new_r[k] %= orders[k]
            piv = new_piv
            new_r[j] = 0
            if any(new_r):
                rest.append(new_r)
        basis.append(piv)
        work = rest
    for j in range(n):
        g = basis[j][j]
        for i in range(j):
            q = basis[i][j] // g
            if q:
                basis[i] = [x - q * y for x, y in zip(basis[i], basis[j])]
            for k in range(j + 1, n):
                basis[i][k] %= orders[k]
        for k in range(j + 1, n):
            basis[j][k] %= orders[k]
    return _freeze(basis)


@dataclass(frozen=True)
class CyclicDecomposition:
    """A finite abelian group written as ``Z/d_1 + ... + Z/d_r``, ``d_i > 1``.

    ``generators`` are the new cyclic generators written in some ambient
    coordinates; ``to_new`` converts ambient coordinates to the new ones.
    """

    orders: Vector
    generators: Matrix
    to_new_matrix: Matrix
    ambient_orders: Vector
    _back: Optional[Matrix] = None  # triangular basis for exact back-substitution

    def to_new(self, x: Sequence[int]) -> Vector:
        if self._back is not None:
            x = _solve_exact(self._back, reduce_vec(x, self.ambient_orders))
        return vec_mat(x, self.to_new_matrix, self.orders)

    def from_new(self, c: Sequence[int]) -> Vector:
        return vec_mat(c, self.generators, self.ambient_orders)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``Z/orders`` held by its canonical Hermite basis."""

    orders: Vector
    basis: Matrix

    @classmethod
    def generated(cls, orders: Sequence[int], gens: Iterable[Sequence[int]] = ()) -> "Subgroup":
        orders = tuple(orders)
        return cls(orders, lattice_hnf(gens, orders))

    @classmethod
    def whole(cls, orders: Sequence[int]) -> "Subgroup":
        return cls.generated(orders, identity(len(orders)))

    @cached_property
    def pivots(self) -> Vector:
        return tuple(self.basis[j][j] for j in range(len(self.orders)))

    @cached_property
    def size(self) -> int:
        return math.prod(e // g for e, g in zip(self.orders, self.pivots))

    @property
    def index(self) -> int:
        return math.prod(self.pivots)

    @cached_property
    def generators(self) -> Matrix:
        """Basis rows that are nonzero in the group."""
        return tuple(r for r in self.basis if any(x % e for x, e in zip(r, self.orders)))

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of the coset ``v + H``."""
        orders = self.orders
        w = [x % e for x, e in zip(v, orders)]
        n = len(w)
        for j, g in enumerate(self.pivots):
            q = w[j] // g
            if q:
                row = self.basis[j]
                for k in range(j, n):
                    if row[k]:
                        w[k] = (w[k] - q * row[k]) % orders[k]
        return tuple(w)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def issubset(self, other: "Subgroup") -> bool:
        if self.size > other.size or other.size % self.size:
            return False
        return all(r in other for r in self.generators)

    def join(self, other: "Subgroup") -> "Subgroup":
        missing = [r for r in other.generators if r not in self]
        if not missing:
            return self
        return Subgroup(self.orders, lattice_hnf(missing, self.orders, self.basis))

    def elements(self) -> Iterator[Vector]:
        ranges = [e // g for e, g in zip(self.orders, self.pivots)]
        for c in group_elements(ranges):
            acc = [0] * len(self.orders)
            for cj, row in zip(c, self.basis):
                if cj:
                    for k in range(len(acc)):
                        acc[k] += cj * row[k]
            yield tuple(a % e for a, e in zip(acc, self.orders))

    @cached_property
    def decomposition(self) -> CyclicDecomposition:
        """This subgroup as an abstract group in cyclic coordinates."""
        n = len(self.orders)
        # E = diag(orders) rewritten in the Hermite basis
        rel = [_solve_exact(self.basis, tuple(e if k == j else 0 for k in range(n)))
               for j, e in enumerate(self.orders)]
        _, d, v, vi = _smith(rel) if n else ([], [], [], [])
        keep = [k for k in range(n) if d[k][k] != 1]
        new_orders = tuple(d[k][k] for k in keep)
        gens = tuple(vec_mat(vi[k], self.basis, self.orders) for k in keep)
        to_new = tuple(tuple(v[i][k] % d[k][k] for k in keep) for i in range(n))
        return CyclicDecomposition(new_orders, gens, to_new, self.orders, self.basis)


def _solve_exact(p: Matrix, h: Sequence[int]) -> Vector:
    n = len(p)
    t = [0] * n
    rem = list(h)
    for j in range(n):
        q, r = divmod(rem[j], p[j][j])
        if r:
            raise ValueError("not in lattice")
        t[j] = q
        for k in range(j, n):
            rem[k] -= q * p[j][k]
    return tuple(t)


# ---------------------------------------------------------------------------
# Quotients


@dataclass(frozen=True)
class AbelianPresentation:
    """Cyclic presentation ``Z/d_1 + ... + Z/d_r`` with ``d_1 | ... | d_r`` and ``d_i > 1``.

    ``lift`` writes each new generator in the coordinates of the group it was
    derived from (empty when constructed directly).
    """

    orders: Vector
    lift: Matrix = ()

    @property
    def generator_count(self) -> int:
        return len(self.orders)

    @property
    def relation_matrix(self) -> Matrix:
        r = len(self.orders)
        return tuple(tuple(self.orders[i] if i == j else 0 for j in range(r)) for i in range(r))

    @property
    def size(self) -> int:
        return math.prod(self.orders)


def quotient_presentation(ambient_orders: Sequence[int], sub_generators: Iterable[Sequence[int]]) -> tuple[AbelianPresentation, Matrix]:
    """Cyclic decomposition of ``(Z/ambient_orders) / <sub_generators>``.

    Returns the presentation and the ``n x r`` projection matrix: an ambient
    element ``x`` maps to ``x * proj`` reduced modulo the new orders.  The
    presentation's ``lift`` holds one ambient representative per new generator.
    """
    ambient_orders = tuple(ambient_orders)
    sub = Subgroup.generated(ambient_orders, sub_generators)
    return quotient_by_subgroup(sub)


def quotient_by_subgroup(sub: Subgroup) -> tuple[AbelianPresentation, Matrix]:
    n = len(sub.orders)
    if n == 0:
        return AbelianPresentation(()), ()
    _, d, v, vi = _smith(sub.basis)
    keep = [k for k in range(n) if d[k][k] != 1]
    orders = tuple(d[k][k] for k in keep)
    proj = tuple(tuple(v[i][k] % d[k][k] for k in keep) for i in range(n))
    lift = tuple(reduce_vec(vi[k], sub.orders) for k in keep)
    return AbelianPresentation(orders, lift), proj


# ---------------------------------------------------------------------------
# Congruence systems


@dataclass(frozen=True)
class CongruenceSolution:
    """Solutions ``particular + span(generators)``.

    With ``var_orders`` the variables live in ``Z/var_orders`` and
    ``subgroup`` is the homogeneous solution group; otherwise the variables
    are integers and ``generators`` is a basis of the (full rank) homogeneous
    solution lattice.
    """

    particular: Vector
    generators: Matrix
    var_orders: Optional[Vector] = None
    subgroup: Optional[Subgroup] = None

    @property
    def count(self) -> Optional[int]:
        return None if self.subgroup is None else self.subgroup.size

    def __contains__(self, x) -> bool:
        if self.subgroup is not None:
            return tuple(a - b for a, b in zip(x, self.particular)) in self.subgroup
        diff = [a - b for a, b in zip(x, self.particular)]
        try:
            _solve_exact(self.generators, diff)
        except ValueError:
            return False
        return True

    def solutions(self) -> Iterator[Vector]:
        if self.subgroup is None:
            raise ValueError("infinitely many solutions over the integers")
        for h in self.subgroup.elements():
            yield tuple((a + b) % e for a, b, e in zip(h, self.particular, self.var_orders))


class CongruenceSolver:
    """Incremental solver: feed congruences one at a time.

    State is a particular solution ``x0`` and rows ``P_i`` such that the
    homogeneous solutions form ``span(P) + diag(periods) Z^n``.  The periods
    are the variable orders, or a common multiple of every modulus when the
    variables are integers; each congruence must vanish on them, so vectors
    may be reduced coordinatewise modulo the periods.  A congruence
    ``a.x = b (mod m)`` is absorbed by a unimodular column reduction of the
    row ``(a.P_1, ..., a.P_n, m)``: the Smith reduction of that one relation
    row with its modulus appended.
    """

    def __init__(self, nvars: int, var_orders: Optional[Sequence[int]] = None, modulus: int = 1):
        self.n = nvars
        self.var_orders = None if var_orders is None else tuple(var_orders)
        if self.var_orders is not None and len(self.var_orders) != nvars:
            raise ValueError("one order per variable required")
        self.periods = self.var_orders if self.var_orders is not None else (modulus,) * nvars
        self.rows = [[int(i == j) for j in range(nvars)] for i in range(nvars)]
        self.x0 = [0] * nvars
        self.consistent = True

    def add(self, coeffs: dict[int, int] | Sequence[int], modulus: int, rhs: int = 0) -> bool:
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        m = modulus
        if not isinstance(coeffs, dict):
            coeffs = {j: c for j, c in enumerate(coeffs) if c}
        items = [(j, c % m) for j, c in coeffs.items() if c % m]
        for j, c in items:
            if (self.periods[j] * c) % m:
                raise ValueError(
                    f"congruence {c}*x[{j}] (mod {m}) is not well defined for x[{j}] mod {self.periods[j]}")
        if not self.consistent:
            return False
        r = (rhs - sum(c * self.x0[j] for j, c in items)) % m
        vals = []
        for i, row in enumerate(self.rows):
            c = sum(a * row[j] for j, a in items) % m
            if c:
                vals.append((i, c))
        if not vals:
            if r:
                self.consistent = False
            return self.consistent
        per = self.periods
        pv, pvec = m, [0] * self.n
        for i, c in vals:
            row = self.rows[i]
            g, s, t = xgcd(pv, c)
            qa, qc = pv // g, c // g
            new_p = [s * x + t * y for x, y in zip(pvec, row)]
            self.rows[i] = [(qc * x - qa * y) % e for x, y, e in zip(pvec, row, per)]
            pv, pvec = g, new_p
        if r % pv:
            self.consistent = False
            return False
        q = r // pv
        self.x0 = [(x + q * y) % e for x, y, e in zip(self.x0, pvec, per)]
        return True

    def result(self) -> Optional[CongruenceSolution]:
        if not self.consistent:
            return None
        if self.var_orders is not None:
            sub = Subgroup.generated(self.var_orders, self.rows)
            return CongruenceSolution(sub.reduce(self.x0), sub.generators, self.var_orders, sub)
        basis = lattice_hnf(self.rows, self.periods)
        w = list(self.x0)
        for j in range(self.n):
            q = w[j] // basis[j][j]
            if q:
                w = [a - q * b for a, b in zip(w, basis[j])]
        return CongruenceSolution(tuple(w), basis)


def solve_congruence_system(
    A: Sequence[Sequence[int]],
    moduli: Sequence[int],
    b: Optional[Sequence[int]] = None,
    var_orders: Optional[Sequence[int]] = None,
) -> Optional[CongruenceSolution]:
    """All ``x`` with ``A x = b`` componentwise modulo ``moduli``.

    Returns ``None`` when the system is inconsistent.  ``var_orders`` makes the
    variables range over ``Z/var_orders``; each congruence must then be well
    defined on those classes.
    """
    if len(moduli) != len(A):
        raise ValueError("one modulus per congruence required")
    if b is None:
        b = [0] * len(A)
    if var_orders is not None:
        nvars = len(var_orders)
    else:
        nvars = len(A[0]) if A else 0
    solver = CongruenceSolver(nvars, var_orders, lcm_all(moduli))
    for row, m, rhs in zip(A, moduli, b):
        if len(row) != nvars:
            raise ValueError("ragged constraint matrix")
        solver.add(row, m, rhs)
    return solver.result()
