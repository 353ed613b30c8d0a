"""Deciders for co-Kasch, Kasch, H-ring and Cartan diagonality over finite rings.

For a finite module the simple subfactors are, up to isomorphism, exactly
its composition factors (Jordan-Hoelder), and every simple module of the
category it subgenerates is one of them.  So:

* ``M`` is co-Kasch iff every composition factor occurs in ``M/Rad(M)``;
* ``M`` is Kasch iff every composition factor occurs in ``Soc(M)``.

The brute-force versions in :mod:`cokasch.oracle` check these identifications.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .kernel import Subgroup
from .module import (
    FiniteModule,
    HomSpace,
    ModuleMap,
    SimpleCatalog,
    composition_profile,
    direct_sum,
    hom_space,
    principal_module,
    quotient_module,
    radical,
    simple_catalog,
    socle,
    submodule_generated,
    top,
)
from .ring import FiniteRing


@dataclass(frozen=True)
class PropertyReport:
    """Verdict for one property; negative verdicts carry a checkable witness."""

    name: str
    verdict: bool
    witness: Optional[dict[str, Any]] = None
    notes: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.verdict


def _simple_witness(catalog: SimpleCatalog, j: int, **extra) -> dict[str, Any]:
    S = catalog.simples[j]
    return {"simple_index": j, "simple_orders": list(S.orders),
            "simple_action": [[list(r) for r in A] for A in S.actions], **extra}


def is_co_kasch(M: FiniteModule, catalog: Optional[SimpleCatalog] = None) -> PropertyReport:
    catalog = catalog or simple_catalog(M.ring)
    prof = composition_profile(M, catalog)
    head = composition_profile(top(M), catalog)
    for j in sorted(prof.support):
        if not head[j]:
            return PropertyReport("co-Kasch", False, _simple_witness(
                catalog, j, reason="composition factor that is not a homomorphic image"))
    return PropertyReport("co-Kasch", True)


def is_kasch(M: FiniteModule, catalog: Optional[SimpleCatalog] = None) -> PropertyReport:
    catalog = catalog or simple_catalog(M.ring)
    prof = composition_profile(M, catalog)
    soc = composition_profile(socle(M).as_module()[0], catalog)
    for j in sorted(prof.support):
        if not soc[j]:
            return PropertyReport("Kasch", False, _simple_witness(
                catalog, j, reason="composition factor that does not embed"))
    return PropertyReport("Kasch", True)


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_diagonal(self) -> bool:
        return all(c == 0 for i, row in enumerate(self.entries) for j, c in enumerate(row) if i != j)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def cartan_matrix(R: FiniteRing, catalog: Optional[SimpleCatalog] = None) -> CartanMatrix:
    """Row ``i`` is the composition profile of ``e_i R`` for the cover idempotent of simple ``i``."""
    catalog = catalog or simple_catalog(R)
    rows = []
    for i in range(len(catalog)):
        P = principal_module(R, catalog.idempotent(i))
        rows.append(composition_profile(P, catalog).multiplicities)
    return CartanMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# Ext^1 between simples


@dataclass(frozen=True)
class Ext1:
    """``Ext^1(S_s, S_t)`` as the cokernel of ``Hom(P, T) -> Hom(Omega, T)``.

    ``P = e R`` is the projective cover of ``S_s`` and ``Omega = eJ`` its
    radical with inclusion ``inclusion: Omega -> P``.
    """

    s: int
    t: int
    projective: FiniteModule
    omega: FiniteModule
    inclusion: ModuleMap
    hom_omega: HomSpace
    split_image: Subgroup
    cocycle: Optional[ModuleMap]

    @property
    def size(self) -> int:
        return self.hom_omega.size // self.split_image.size

    def is_zero(self) -> bool:
        return self.size == 1

    def is_split(self, phi: ModuleMap) -> bool:
        return self.hom_omega.flatten(phi) in self.split_image


def ext1(s: int, t: int, catalog: SimpleCatalog) -> Ext1:
    R = catalog.ring
    T = catalog.simples[t]
    P = principal_module(R, catalog.idempotent(s))
    omega_sub = radical(P)
    omega, inc = omega_sub.as_module()
    h_omega = hom_space(omega, T)
    h_p = hom_space(P, T)
    restricted = [h_omega.flatten(inc.then(f)) for f in h_p.generators]
    image = Subgroup.generated(h_omega.solutions.orders, restricted)
    cocycle = None
    for g in h_omega.generators:
        if h_omega.flatten(g) not in image:
            cocycle = g
            break
    return Ext1(s, t, P, omega, inc, h_omega, image, cocycle)


def is_h_ring(R: FiniteRing, catalog: Optional[SimpleCatalog] = None) -> PropertyReport:
    """Finite rings are artinian, so ``R`` is an H-ring iff ``Ext^1(S_i, S_j) = 0`` for ``i != j``."""
    catalog = catalog or simple_catalog(R)
    notes = ("finite rings are artinian, hence max-rings",)
    r = len(catalog)
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            e = ext1(i, j, catalog)
            if not e.is_zero():
                return PropertyReport("H-ring", False, {
                    "pair": [i, j],
                    "ext_size": e.size,
                    "cocycle": [list(row) for row in e.cocycle.matrix],
                    "omega_orders": list(e.omega.orders),
                }, notes)
    return PropertyReport("H-ring", True, None, notes)


def construct_extension(catalog: SimpleCatalog, s: int, t: int, cocycle: ModuleMap) -> FiniteModule:
    """Pushout ``(T + P) / {(phi(w), -w) : w in Omega}`` for ``phi: Omega -> T``.

    The result sits in ``0 -> T -> X -> S -> 0`` and is non-split exactly when
    ``phi`` is not the restriction of a map ``P -> T``; split classes are
    rejected.
    """
    e = ext1(s, t, catalog)
    if cocycle.source != e.omega or cocycle.target != catalog.simples[t]:
        raise ValueError("cocycle must be a map Omega -> T for this pair")
    if e.is_split(cocycle):
        raise ValueError("cocycle lies in the split image; the extension would split")
    T, P = catalog.simples[t], e.projective
    X0 = direct_sum(T, P)
    gens = []
    for w_idx in range(e.omega.rank):
        phi_w = cocycle.matrix[w_idx]
        iw = e.inclusion.matrix[w_idx]
        gens.append(tuple(phi_w) + tuple(-x for x in iw))
    K = submodule_generated(X0, gens)
    return quotient_module(X0, K)[0]


@dataclass(frozen=True)
class ProjectiveReport:
    reports: tuple[PropertyReport, ...]
    cartan: CartanMatrix

    @property
    def all_co_kasch(self) -> bool:
        return all(r.verdict for r in self.reports)

    @property
    def consistent(self) -> bool:
        """Every principal indecomposable is co-Kasch iff the Cartan matrix is diagonal."""
        return self.all_co_kasch == self.cartan.is_diagonal()


def check_projective_cokasch(R: FiniteRing, catalog: Optional[SimpleCatalog] = None) -> ProjectiveReport:
    catalog = catalog or simple_catalog(R)
    reports = tuple(is_co_kasch(principal_module(R, e), catalog) for e in catalog.decomposition)
    return ProjectiveReport(reports, cartan_matrix(R, catalog))
