"""Finite right modules over finite rings.

A module is an additive group ``Z/e_1 + ... + Z/e_m`` together with, for each
additive generator ``b_k`` of the ring, the matrix ``A_k`` of ``x -> x*b_k``.
Homomorphisms are matrices acting on row vectors.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InvariantBreach, ModuleAxiomError
from .kernel import (
    CongruenceSolver,
    Matrix,
    Subgroup,
    Vector,
    group_elements,
    identity,
    mat_mul,
    quotient_by_subgroup,
    reduce_vec,
    vec_mat,
)
from .ring import FiniteRing, jacobson_radical, primitive_decomposition

MAX_MODULE_SIZE = 4096
ENUMERATIVE_CAP = 256
HOM_ENUMERATION_CAP = 4096


def _reduce_matrix(m, orders) -> Matrix:
    return tuple(tuple(int(x) % e for x, e in zip(row, orders)) for row in m)


@dataclass(frozen=True)
class FiniteModule:
    ring: FiniteRing
    orders: Vector
    actions: tuple[Matrix, ...]

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def zero(self) -> Vector:
        return (0,) * self.rank

    def is_zero(self) -> bool:
        return self.size == 1

    def elements(self) -> Iterator[Vector]:
        return group_elements(self.orders)

    def reduce(self, x) -> Vector:
        return reduce_vec(x, self.orders)

    def action_matrix(self, r: Sequence[int]) -> Matrix:
        m = self.rank
        acc = [[0] * m for _ in range(m)]
        for k, c in enumerate(r):
            if c:
                for i, row in enumerate(self.actions[k]):
                    for j in range(m):
                        acc[i][j] += c * row[j]
        return _reduce_matrix(acc, self.orders)

    def act(self, x, r) -> Vector:
        """``x * r`` for a module element ``x`` and ring element ``r``."""
        return vec_mat(x, self.action_matrix(r), self.orders)

    @cached_property
    def additive(self) -> Subgroup:
        return Subgroup.whole(self.orders)


def validate_module(ring: FiniteRing, orders: Sequence[int], actions: Sequence) -> FiniteModule:
    """Check the module axioms on generators and return the module.

    ``actions[k]`` is the matrix of right multiplication by the ring generator
    ``b_k``.  Violations raise :class:`ModuleAxiomError` with a witness.
    """
    orders = tuple(int(e) for e in orders)
    m = len(orders)
    n = ring.rank
    for i, e in enumerate(orders):
        if e < 1:
            raise ModuleAxiomError("order", (i,), f"generator order {e} must be >= 1")
    if math.prod(orders) > MAX_MODULE_SIZE:
        raise ModuleAxiomError("size", detail=f"|M| = {math.prod(orders)} exceeds the cap {MAX_MODULE_SIZE}")
    if len(actions) != n:
        raise ModuleAxiomError("shape", detail=f"need one action matrix per ring generator ({n})")
    acts = []
    for k, a in enumerate(actions):
        if len(a) != m or any(len(row) != m for row in a):
            raise ModuleAxiomError("shape", (k,), f"action matrix must be {m} x {m}")
        for i in range(m):
            for j in range(m):
                x = int(a[i][j])
                if (orders[i] * x) % orders[j]:
                    raise ModuleAxiomError("well-definedness", (k, i, j),
                                           f"entry {x} is not killed by the order {orders[i]} of g_{i} modulo {orders[j]}")
                if (ring.orders[k] * x) % orders[j]:
                    raise ModuleAxiomError("additivity", (k, i, j),
                                           f"entry {x} is not killed by the order {ring.orders[k]} of b_{k} modulo {orders[j]}")
        acts.append(_reduce_matrix(a, orders))
    M = FiniteModule(ring, orders, tuple(acts))
    if M.action_matrix(ring.one) != _reduce_matrix(identity(m), orders):
        raise ModuleAxiomError("unital", detail="unity does not act as the identity")
    for i in range(n):
        for j in range(n):
            lhs = _reduce_matrix(mat_mul(M.actions[i], M.actions[j], m), orders)
            rhs = M.action_matrix(ring.mul[i][j])
            if lhs != rhs:
                raise ModuleAxiomError("compatibility", (i, j), "(x b_i) b_j != x (b_i b_j)")
    return M


def regular_module(R: FiniteRing) -> FiniteModule:
    """``R`` as a right module over itself."""
    return FiniteModule(R, R.orders, R.right_mult)


def zero_module(R: FiniteRing) -> FiniteModule:
    return FiniteModule(R, (), tuple(() for _ in range(R.rank)))


def direct_sum(M: FiniteModule, N: FiniteModule) -> FiniteModule:
    if M.ring != N.ring:
        raise ValueError("direct sum of modules over different rings")
    a, b = M.rank, N.rank
    acts = []
    for AM, AN in zip(M.actions, N.actions):
        rows = [tuple(r) + (0,) * b for r in AM] + [(0,) * a + tuple(r) for r in AN]
        acts.append(tuple(rows))
    return FiniteModule(M.ring, M.orders + N.orders, tuple(acts))


# ---------------------------------------------------------------------------
# Maps


@dataclass(frozen=True)
class ModuleMap:
    """``f(g_i) = sum_j matrix[i][j] g'_j``; elements map by ``x -> x * matrix``."""

    source: FiniteModule
    target: FiniteModule
    matrix: Matrix

    def __call__(self, x) -> Vector:
        return vec_mat(x, self.matrix, self.target.orders)

    @cached_property
    def image(self) -> Subgroup:
        return Subgroup.generated(self.target.orders, self.matrix)

    @property
    def rank(self) -> int:
        """Cardinality of the image."""
        return self.image.size

    def is_zero(self) -> bool:
        return self.image.size == 1

    def is_surjective(self) -> bool:
        return self.image.size == self.target.size

    def is_injective(self) -> bool:
        return self.image.size == self.source.size

    def kernel(self) -> "Submodule":
        solver = CongruenceSolver(self.source.rank, self.source.orders)
        for j, e in enumerate(self.target.orders):
            solver.add({i: row[j] for i, row in enumerate(self.matrix) if row[j]}, e)
        sol = solver.result()
        return Submodule(self.source, sol.subgroup)

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """``other`` after ``self``."""
        m = mat_mul(self.matrix, other.matrix, other.target.rank)
        return ModuleMap(self.source, other.target, _reduce_matrix(m, other.target.orders))

    def check(self) -> None:
        """Raise unless the matrix is a well-defined module homomorphism."""
        src, tgt = self.source, self.target
        for i, row in enumerate(self.matrix):
            for j, x in enumerate(row):
                if (src.orders[i] * x) % tgt.orders[j]:
                    raise ModuleAxiomError("well-definedness", (i, j))
        for k in range(src.ring.rank):
            for i in range(src.rank):
                g = tuple(int(t == i) for t in range(src.rank))
                if self(src.act(g, _unit(k, src.ring.rank))) != tgt.act(self(g), _unit(k, src.ring.rank)):
                    raise ModuleAxiomError("equivariance", (k, i))


def _unit(k, n) -> Vector:
    return tuple(int(t == k) for t in range(n))


# ---------------------------------------------------------------------------
# Submodules


@dataclass(frozen=True)
class Submodule:
    parent: FiniteModule
    subgroup: Subgroup

    @classmethod
    def from_subgroup(cls, parent: FiniteModule, subgroup: Subgroup) -> "Submodule":
        """Wrap ``subgroup`` after certifying it is closed under the ring action."""
        for g in subgroup.generators:
            for A in parent.actions:
                if vec_mat(g, A, parent.orders) not in subgroup:
                    raise ValueError("subgroup is not closed under the ring action")
        return cls(parent, subgroup)

    @property
    def generators(self) -> Matrix:
        return self.subgroup.generators

    @property
    def canonical_basis(self) -> Matrix:
        return self.subgroup.basis

    @property
    def key(self) -> Matrix:
        return self.subgroup.basis

    @property
    def size(self) -> int:
        return self.subgroup.size

    def is_zero(self) -> bool:
        return self.size == 1

    def __contains__(self, x) -> bool:
        return x in self.subgroup

    def issubset(self, other: "Submodule") -> bool:
        return self.subgroup.issubset(other.subgroup)

    def __add__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.parent, self.subgroup.join(other.subgroup))

    def elements(self) -> Iterator[Vector]:
        return self.subgroup.elements()

    @cached_property
    def _embedding(self) -> tuple[FiniteModule, ModuleMap]:
        dec = self.subgroup.decomposition
        P = self.parent
        acts = tuple(tuple(dec.to_new(vec_mat(g, A, P.orders)) for g in dec.generators) for A in P.actions)
        sub = FiniteModule(P.ring, dec.orders, acts)
        return sub, ModuleMap(sub, P, dec.generators)

    def as_module(self) -> tuple[FiniteModule, ModuleMap]:
        """This submodule as a module in its own cyclic coordinates, with the inclusion."""
        return self._embedding

    def coordinates(self, x) -> Vector:
        """Coordinates of ``x`` (an element of this submodule) in :meth:`as_module`."""
        return self.subgroup.decomposition.to_new(x)


def submodule_generated(M: FiniteModule, elements: Iterable[Sequence[int]] = ()) -> Submodule:
    """Smallest submodule of ``M`` containing ``elements``."""
    H = Subgroup.generated(M.orders, elements)
    while True:
        new = [vec_mat(g, A, M.orders) for g in H.generators for A in M.actions]
        missing = [v for v in new if v not in H]
        if not missing:
            return Submodule(M, H)
        H = Subgroup.generated(M.orders, H.basis + tuple(missing))


def whole(M: FiniteModule) -> Submodule:
    return Submodule(M, M.additive)


def zero_submodule(M: FiniteModule) -> Submodule:
    return Submodule(M, Subgroup.generated(M.orders))


def quotient_module(M: FiniteModule, K: Submodule) -> tuple[FiniteModule, ModuleMap]:
    """``M/K`` in cyclic coordinates together with the projection ``M -> M/K``."""
    pres, proj = quotient_by_subgroup(K.subgroup)
    acts = tuple(
        tuple(vec_mat(vec_mat(lift, A, M.orders), proj, pres.orders) for lift in pres.lift)
        for A in M.actions
    )
    Q = FiniteModule(M.ring, pres.orders, acts)
    return Q, ModuleMap(M, Q, proj)


def subfactor(M: FiniteModule, N: Submodule, K: Submodule) -> FiniteModule:
    """The module ``N/K`` for submodules ``K <= N`` of ``M``."""
    Nm, _ = N.as_module()
    Kn = Submodule(Nm, Subgroup.generated(Nm.orders, [N.coordinates(k) for k in K.generators]))
    return quotient_module(Nm, Kn)[0]


# ---------------------------------------------------------------------------
# Hom spaces


@dataclass(frozen=True)
class HomSpace:
    """``Hom_R(source, target)`` as a subgroup of the matrix group.

    A matrix ``H`` is flattened row-major; entry ``(i, j)`` lives in
    ``Z/target.orders[j]``.
    """

    source: FiniteModule
    target: FiniteModule
    solutions: Subgroup

    @property
    def size(self) -> int:
        return self.solutions.size

    def is_zero(self) -> bool:
        return self.size == 1

    def _as_map(self, flat) -> ModuleMap:
        n = self.target.rank
        mat = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(self.source.rank))
        return ModuleMap(self.source, self.target, mat)

    @property
    def generators(self) -> list[ModuleMap]:
        return [self._as_map(g) for g in self.solutions.generators]

    def flatten(self, f: ModuleMap) -> Vector:
        return tuple(x for row in f.matrix for x in row)

    def __contains__(self, f: ModuleMap) -> bool:
        return self.flatten(f) in self.solutions

    def __iter__(self) -> Iterator[ModuleMap]:
        for flat in self.solutions.elements():
            yield self._as_map(flat)

    def maps(self, cap: int = HOM_ENUMERATION_CAP) -> list[ModuleMap]:
        """Every homomorphism; refuses when there are more than ``cap``."""
        if self.size > cap:
            raise ValueError(f"|Hom| = {self.size} exceeds the enumeration cap {cap}")
        return list(self)


def hom_space(M: FiniteModule, N: FiniteModule) -> HomSpace:
    """All module maps ``M -> N``, solved as one congruence system.

    Unknowns are the matrix entries ``H[i][j]`` (mod ``N.orders[j]``);
    constraints are additive well-definedness ``e_i H[i][j] = 0`` and
    equivariance ``A_k H = H A'_k`` for every ring generator ``b_k``.
    """
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    m, n = M.rank, N.rank
    var_orders = tuple(N.orders[j] for i in range(m) for j in range(n))
    solver = CongruenceSolver(m * n, var_orders)
    for i in range(m):
        for j in range(n):
            solver.add({i * n + j: M.orders[i]}, N.orders[j])
    for A, B in zip(M.actions, N.actions):
        for i in range(m):
            Ai = A[i]
            for j in range(n):
                coeffs: dict[int, int] = {}
                for l in range(m):
                    if Ai[l]:
                        coeffs[l * n + j] = coeffs.get(l * n + j, 0) + Ai[l]
                for l in range(n):
                    if B[l][j]:
                        coeffs[i * n + l] = coeffs.get(i * n + l, 0) - B[l][j]
                if coeffs:
                    solver.add(coeffs, N.orders[j])
    sol = solver.result()
    return HomSpace(M, N, sol.subgroup)


def find_isomorphism(M: FiniteModule, N: FiniteModule, trials: int = 512) -> Optional[ModuleMap]:
    """A bijective module map ``M -> N`` or ``None``.

    Scans the full Hom space when it has at most 4096 elements; otherwise tries
    random combinations of the generators before falling back to a full scan.
    """
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    if M.size != N.size:
        return None
    if M.additive.decomposition.orders != N.additive.decomposition.orders:
        return None
    H = hom_space(M, N)
    if H.size > HOM_ENUMERATION_CAP:
        rng = random.Random(0)
        gens = H.solutions.generators
        orders = H.solutions.orders
        for _ in range(trials):
            flat = [0] * len(orders)
            for g in gens:
                c = rng.randrange(max(orders))
                if c:
                    flat = [a + c * b for a, b in zip(flat, g)]
            f = H._as_map(reduce_vec(flat, orders))
            if f.is_surjective():
                return f
    for f in H:
        if f.is_surjective():
            return f
    return None


def is_isomorphic(M: FiniteModule, N: FiniteModule) -> bool:
    return find_isomorphism(M, N) is not None


# ---------------------------------------------------------------------------
# Radical, socle, top


def _ring_radical(R: FiniteRing) -> Subgroup:
    return _radical_cache(R)


@lru_cache(maxsize=512)
def _radical_cache(R: FiniteRing) -> Subgroup:
    return jacobson_radical(R)


@lru_cache(maxsize=512)
def _decomposition_cache(R: FiniteRing):
    return primitive_decomposition(R)


def radical(M: FiniteModule) -> Submodule:
    """``Rad(M) = M J(R)``."""
    J = _ring_radical(M.ring)
    mats = [M.action_matrix(j) for j in J.generators]
    gens = [vec_mat(g, A, M.orders) for A in mats for g in identity(M.rank)]
    return submodule_generated(M, gens)


def socle(M: FiniteModule) -> Submodule:
    """Elements killed by ``J(R)``; equals ``Soc(M)`` over a finite ring."""
    J = _ring_radical(M.ring)
    solver = CongruenceSolver(M.rank, M.orders)
    for j in J.generators:
        A = M.action_matrix(j)
        for col, e in enumerate(M.orders):
            solver.add({i: A[i][col] for i in range(M.rank) if A[i][col]}, e)
    sol = solver.result()
    return Submodule.from_subgroup(M, sol.subgroup)


def top(M: FiniteModule) -> FiniteModule:
    """``M / Rad(M)``."""
    return quotient_module(M, radical(M))[0]


def principal_module(R: FiniteRing, e) -> FiniteModule:
    """``eR`` as a module in its own coordinates."""
    return submodule_generated(regular_module(R), [e]).as_module()[0]


# ---------------------------------------------------------------------------
# Simple modules and composition factors


@dataclass(frozen=True)
class SimpleCatalog:
    """Representatives of the simple right modules, ordered by cover idempotent.

    ``cover_idempotent[i]`` indexes ``decomposition``; the top of
    ``decomposition[cover_idempotent[i]] * R`` is isomorphic to ``simples[i]``.
    """

    ring: FiniteRing
    simples: tuple[FiniteModule, ...]
    end_sizes: tuple[int, ...]
    cover_idempotent: tuple[int, ...]
    decomposition: tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.simples)

    def idempotent(self, i: int) -> Vector:
        return self.decomposition[self.cover_idempotent[i]]

    def index_of(self, S: FiniteModule) -> int:
        """Catalog index of a simple module ``S``."""
        for i, T in enumerate(self.simples):
            if T.size == S.size and is_isomorphic(S, T):
                return i
        raise ValueError("module is not isomorphic to any simple in the catalog")


@lru_cache(maxsize=256)
def simple_catalog(R: FiniteRing) -> SimpleCatalog:
    """Simple right ``R``-modules up to isomorphism.

    They are found as the minimal cyclic submodules of ``R/J``, deduplicated by
    isomorphism, and matched with the primitive idempotent whose principal
    module has that simple as its top.
    """
    J = Submodule(regular_module(R), _ring_radical(R))
    Rbar, _ = quotient_module(regular_module(R), J)
    cyclic: dict[Matrix, Submodule] = {}
    for x in Rbar.elements():
        if any(x):
            C = submodule_generated(Rbar, [x])
            cyclic.setdefault(C.key, C)
    subs = sorted(cyclic.values(), key=lambda C: C.size)
    minimal = [C for C in subs if not any(D.size < C.size and D.issubset(C) for D in subs)]
    simples: list[FiniteModule] = []
    for C in minimal:
        S = C.as_module()[0]
        if not any(T.size == S.size and is_isomorphic(S, T) for T in simples):
            simples.append(S)

    decomposition = _decomposition_cache(R)
    tops = [top(principal_module(R, e)) for e in decomposition]
    cover = []
    for S in simples:
        match = [i for i, T in enumerate(tops) if T.size == S.size and is_isomorphic(S, T)]
        if not match:
            raise InvariantBreach("a simple module is not the top of any principal indecomposable")
        cover.append(match[0])
    distinct_tops = []
    for T in tops:
        if not any(T.size == U.size and is_isomorphic(T, U) for U in distinct_tops):
            distinct_tops.append(T)
    if len(distinct_tops) != len(simples):
        raise InvariantBreach(f"{len(simples)} simples but {len(distinct_tops)} distinct tops")
    order = sorted(range(len(simples)), key=lambda i: cover[i])
    simples = [simples[i] for i in order]
    cover = [cover[i] for i in order]
    ends = tuple(hom_space(S, S).size for S in simples)
    return SimpleCatalog(R, tuple(simples), ends, tuple(cover), tuple(decomposition))


def _int_log(value: int, base: int) -> Optional[int]:
    k = 0
    while value > 1:
        if value % base:
            return None
        value //= base
        k += 1
    return k


@dataclass(frozen=True)
class CompositionProfile:
    multiplicities: tuple[int, ...]
    layers: tuple[tuple[int, ...], ...] = ()

    @property
    def length(self) -> int:
        return sum(self.multiplicities)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, m in enumerate(self.multiplicities) if m)

    def __getitem__(self, i: int) -> int:
        return self.multiplicities[i]


def semisimple_multiplicities(L: FiniteModule, catalog: SimpleCatalog) -> tuple[int, ...]:
    """Multiplicities of a semisimple module, via ``|Hom(L, S)| = |End S|^m``."""
    mults = []
    for S, end in zip(catalog.simples, catalog.end_sizes):
        h = hom_space(L, S).size
        k = _int_log(h, end)
        if k is None:
            raise InvariantBreach(f"|Hom(L, S)| = {h} is not a power of |End(S)| = {end}")
        mults.append(k)
    if math.prod(S.size ** k for S, k in zip(catalog.simples, mults)) != L.size:
        raise InvariantBreach("semisimple layer is not accounted for by the catalog")
    return tuple(mults)


def composition_profile(M: FiniteModule, catalog: SimpleCatalog) -> CompositionProfile:
    """Composition multiplicities of ``M`` from its radical series ``M > MJ > MJ^2 > ... > 0``."""
    layers = []
    N = M
    while not N.is_zero():
        rad = radical(N)
        if rad.size == N.size:
            raise InvariantBreach("radical of a nonzero finite module is not proper")
        layer = quotient_module(N, rad)[0]
        layers.append(semisimple_multiplicities(layer, catalog))
        N = rad.as_module()[0]
    total = tuple(sum(col) for col in zip(*layers)) if layers else (0,) * len(catalog)
    if math.prod(S.size ** k for S, k in zip(catalog.simples, total)) != M.size:
        raise InvariantBreach("|M| differs from the product over composition factors")
    return CompositionProfile(total, tuple(layers))
