"""Brute-force definitional checks and the proposition harness.

Nothing here relies on composition profiles: subfactors come from the full
submodule lattice, and surjections/embeddings from scanning Hom spaces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .errors import CapExceeded
from .kasch import (
    PropertyReport,
    check_projective_cokasch,
    construct_extension,
    ext1,
    is_co_kasch,
    is_h_ring,
    is_kasch,
)
from .fixtures import fixture_rings, random_rings
from .kernel import Matrix
from .module import (
    ENUMERATIVE_CAP,
    FiniteModule,
    SimpleCatalog,
    Submodule,
    composition_profile,
    direct_sum,
    hom_space,
    principal_module,
    quotient_module,
    radical,
    regular_module,
    simple_catalog,
    subfactor,
    submodule_generated,
    whole,
    zero_submodule,
)
from .ring import FiniteRing


def enumerate_submodules(M: FiniteModule, cap: int = ENUMERATIVE_CAP) -> list[Submodule]:
    """Every submodule of ``M`` exactly once, smallest first.

    Closes the set of cyclic submodules under sums, deduplicating on the
    canonical basis.
    """
    if M.size > cap:
        raise CapExceeded(f"|M| = {M.size} exceeds the enumerative cap {cap}")
    cyclic: dict[Matrix, Submodule] = {}
    for x in M.elements():
        if any(x):
            C = submodule_generated(M, [x])
            cyclic.setdefault(C.key, C)
    zero = zero_submodule(M)
    found = {zero.key: zero}
    frontier = [zero]
    cyc = list(cyclic.values())
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyc:
                if C.issubset(S):
                    continue
                T = S + C
                if T.key not in found:
                    found[T.key] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.size, S.key))


@dataclass
class SubfactorEnumeration:
    """All pairs ``K < N`` of submodules of ``parent`` with ``N/K`` simple.

    ``N/K`` is simple exactly when no submodule lies strictly between ``K``
    and ``N`` (its submodules are the ``L`` with ``K <= L <= N``).
    """

    parent: FiniteModule
    submodules: list[Submodule]
    pairs: list[tuple[int, int]]  # (index of K, index of N)

    def module(self, pair: tuple[int, int]) -> FiniteModule:
        k, n = pair
        return subfactor(self.parent, self.submodules[n], self.submodules[k])


def enumerate_simple_subfactors(M: FiniteModule, subs: Optional[list[Submodule]] = None) -> SubfactorEnumeration:
    subs = subs if subs is not None else enumerate_submodules(M)
    s = len(subs)
    below = [0] * s  # bit j set when subs[j] is strictly inside subs[i]
    above = [0] * s
    for i, A in enumerate(subs):
        for j in range(i):
            B = subs[j]
            if B.size < A.size and B.issubset(A):
                below[i] |= 1 << j
                above[j] |= 1 << i
    pairs = []
    for n in range(s):
        b = below[n]
        k = 0
        while b:
            if b & 1 and not (above[k] & below[n]):
                pairs.append((k, n))
            b >>= 1
            k += 1
    return SubfactorEnumeration(M, subs, pairs)


def _module_key(M: FiniteModule):
    return (M.orders, M.actions)


def _pair_witness(en: SubfactorEnumeration, pair, Q: FiniteModule) -> dict[str, Any]:
    k, n = pair
    return {
        "K": [list(g) for g in en.submodules[k].generators],
        "N": [list(g) for g in en.submodules[n].generators],
        "subfactor_orders": list(Q.orders),
        "subfactor_action": [[list(r) for r in A] for A in Q.actions],
    }


def _has_map(H, want: Callable) -> bool:
    for f in H.generators:
        if want(f):
            return True
    if H.size > 4096:
        raise CapExceeded(f"|Hom| = {H.size} too large to scan")
    return any(want(f) for f in H)


def brute_co_kasch(M: FiniteModule, catalog: Optional[SimpleCatalog] = None,
                   subfactors: Optional[SubfactorEnumeration] = None) -> PropertyReport:
    """Every simple subfactor ``N/K`` must be the image of a surjection ``M -> N/K``."""
    en = subfactors or enumerate_simple_subfactors(M)
    seen: dict = {}
    for pair in en.pairs:
        Q = en.module(pair)
        key = _module_key(Q)
        if key not in seen:
            seen[key] = _has_map(hom_space(M, Q), lambda f: f.is_surjective())
        if not seen[key]:
            return PropertyReport("co-Kasch (brute force)", False, _pair_witness(en, pair, Q))
    return PropertyReport("co-Kasch (brute force)", True)


def brute_kasch(M: FiniteModule, catalog: Optional[SimpleCatalog] = None,
                subfactors: Optional[SubfactorEnumeration] = None) -> PropertyReport:
    """Every simple subfactor must admit an injective map into ``M``."""
    en = subfactors or enumerate_simple_subfactors(M)
    seen: dict = {}
    for pair in en.pairs:
        Q = en.module(pair)
        key = _module_key(Q)
        if key not in seen:
            seen[key] = _has_map(hom_space(Q, M), lambda f: f.is_injective())
        if not seen[key]:
            return PropertyReport("Kasch (brute force)", False, _pair_witness(en, pair, Q))
    return PropertyReport("Kasch (brute force)", True)


def simple_subfactor_classes(M: FiniteModule, catalog: SimpleCatalog,
                             subfactors: Optional[SubfactorEnumeration] = None) -> frozenset:
    """Catalog indices of the simple subfactors of ``M``, by brute force."""
    en = subfactors or enumerate_simple_subfactors(M)
    seen = {}
    for pair in en.pairs:
        Q = en.module(pair)
        key = _module_key(Q)
        if key not in seen:
            seen[key] = catalog.index_of(Q)
    return frozenset(seen.values())


def oracle_composition_factors(M: FiniteModule, catalog: SimpleCatalog, rng: Optional[random.Random] = None) -> tuple[int, ...]:
    """Multiplicities read off one maximal chain of submodules (chosen at random)."""
    rng = rng or random.Random(0)
    subs = enumerate_submodules(M)
    counts = [0] * len(catalog)
    cur = whole(M)
    while not cur.is_zero():
        inside = [S for S in subs if S.size < cur.size and S.issubset(cur)]
        maximal = [S for S in inside if not any(S.size < T.size and S.issubset(T) for T in inside)]
        nxt = rng.choice(maximal)
        counts[catalog.index_of(subfactor(M, cur, nxt))] += 1
        cur = nxt
    return tuple(counts)


# ---------------------------------------------------------------------------
# Harness


@dataclass
class HarnessResult:
    proposition: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {"proposition": self.proposition, "instances": self.instances,
                "verdict": "pass" if self.passed else "fail", "failures": list(self.failures)}


@dataclass(frozen=True)
class Budget:
    """Size limits for harness instances."""

    random_rings: int = 12
    max_ring_size: int = 16
    max_module_size: int = 64
    pool_cap: int = 128
    sampled_quotients: int = 24
    pairs: int = 200


def _describe(M: FiniteModule) -> str:
    return f"module orders={list(M.orders)} actions={[[list(r) for r in A] for A in M.actions]}"


def quotient_pool(R: FiniteRing, budget: Budget, rng: random.Random, max_size: Optional[int] = None) -> list[FiniteModule]:
    """Quotients of ``R + R`` up to ``max_size`` elements, deduplicated by presentation.

    All submodules are enumerated when ``|R + R|`` is within the enumerative
    cap; otherwise submodules generated by random elements are sampled.
    """
    max_size = max_size or budget.max_module_size
    F = direct_sum(regular_module(R), regular_module(R))
    if F.size <= budget.pool_cap:
        kernels = enumerate_submodules(F, budget.pool_cap)
    else:
        elems = list(F.elements())
        kernels = []
        for _ in range(budget.sampled_quotients * 4):
            K = submodule_generated(F, rng.sample(elems, rng.randint(1, 3)))
            kernels.append(K)
    out: dict = {}
    for K in kernels:
        if F.size // K.size <= max_size:
            Q = quotient_module(F, K)[0]
            out.setdefault(_module_key(Q), Q)
        if F.size > budget.pool_cap and len(out) >= budget.sampled_quotients:
            break
    return list(out.values())


class Harness:
    """Runs one proposition check over a set of rings.

    Instances are derived deterministically from ``seed``; expensive derived
    data (catalogs, subfactor enumerations, pools) is cached per run.
    """

    def __init__(self, rings: dict[str, FiniteRing], budget: Budget = Budget(), seed: int = 0):
        self.rings = rings
        self.budget = budget
        self.seed = seed
        self._pools: dict = {}
        self._subfactors: dict = {}
        self._verdicts: dict = {}

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")

    def pool(self, name: str) -> list[FiniteModule]:
        if name not in self._pools:
            self._pools[name] = quotient_pool(self.rings[name], self.budget, self.rng(f"pool:{name}"))
        return self._pools[name]

    def subfactors(self, M: FiniteModule) -> SubfactorEnumeration:
        key = (M.ring, _module_key(M))
        if key not in self._subfactors:
            self._subfactors[key] = enumerate_simple_subfactors(M)
        return self._subfactors[key]

    def maps_to_simple(self, M: FiniteModule, j: int) -> bool:
        """``Hom(M, S_j) != 0``, cached by presentation."""
        key = ("hom", M.ring, _module_key(M), j)
        if key not in self._verdicts:
            S = simple_catalog(M.ring).simples[j]
            self._verdicts[key] = not hom_space(M, S).is_zero()
        return self._verdicts[key]

    def co_kasch(self, M: FiniteModule) -> bool:
        key = ("ck", M.ring, _module_key(M))
        if key not in self._verdicts:
            self._verdicts[key] = is_co_kasch(M, simple_catalog(M.ring)).verdict
        return self._verdicts[key]

    def brute(self, M: FiniteModule) -> bool:
        key = ("bck", M.ring, _module_key(M))
        if key not in self._verdicts:
            self._verdicts[key] = brute_co_kasch(M, subfactors=self.subfactors(M)).verdict
        return self._verdicts[key]

    def co_kasch_checked(self, M: FiniteModule) -> bool:
        """Fast verdict, cross-checked by brute force when ``M`` is small enough."""
        v = self.co_kasch(M)
        if M.size <= self.budget.max_module_size and self.brute(M) != v:
            raise AssertionError(f"fast and brute-force co-Kasch verdicts differ on {_describe(M)}")
        return v

    def run(self, prop: str) -> HarnessResult:
        try:
            check = PROPOSITIONS[prop]
        except KeyError:
            raise ValueError(f"unknown proposition id {prop!r}; known: {', '.join(PROPOSITIONS)}") from None
        result = HarnessResult(prop)
        for name in self.rings:
            check(self, name, result)
        return result


def _fail(result: HarnessResult, ring: str, msg: str) -> None:
    result.failures.append(f"[{ring}] {msg}")


def _check_2_2(h: Harness, name: str, res: HarnessResult) -> None:
    R = h.rings[name]
    cat = simple_catalog(R)
    for M in h.pool(name):
        res.instances += 1
        fast = h.co_kasch(M)
        brute = h.brute(M)
        # criterion (3): Hom(mR, S) != 0 for some m implies Hom(M, S) != 0
        crit = True
        cyclic = {}
        for x in M.elements():
            if any(x):
                C = submodule_generated(M, [x])
                cyclic.setdefault(C.key, C)
        targets = [j for j in range(len(cat)) if not h.maps_to_simple(M, j)]
        for C in cyclic.values():
            Cm = C.as_module()[0]
            if any(h.maps_to_simple(Cm, j) for j in targets):
                crit = False
                break
        if not (fast == brute == crit):
            _fail(res, name, f"fast={fast} brute={brute} cyclic-criterion={crit} for {_describe(M)}")


def _check_kasch(h: Harness, name: str, res: HarnessResult) -> None:
    cat = simple_catalog(h.rings[name])
    for M in h.pool(name):
        res.instances += 1
        fast = is_kasch(M, cat).verdict
        brute = brute_kasch(M, subfactors=h.subfactors(M)).verdict
        if fast != brute:
            _fail(res, name, f"Kasch fast={fast} brute={brute} for {_describe(M)}")


def _check_2_3(h: Harness, name: str, res: HarnessResult) -> None:
    R = h.rings[name]
    reg = regular_module(R)
    for M in h.pool(name):
        res.instances += 1
        X = direct_sum(M, reg)
        if not h.co_kasch_checked(X):
            _fail(res, name, f"M + R is not co-Kasch for {_describe(M)}")


def _check_2_4(h: Harness, name: str, res: HarnessResult) -> None:
    cat = simple_catalog(h.rings[name])
    for M in h.pool(name):
        res.instances += 1
        factors = composition_profile(M, cat).support
        own = simple_subfactor_classes(M, cat, h.subfactors(M))
        if own != factors:
            _fail(res, name, f"simple subfactors {sorted(own)} != composition factors {sorted(factors)} for {_describe(M)}")
            continue
        MM = direct_sum(M, M)
        if MM.size <= h.budget.max_module_size:
            doubled = simple_subfactor_classes(MM, cat, h.subfactors(MM))
            if doubled != own:
                _fail(res, name, f"simple subfactors of M+M {sorted(doubled)} differ from those of M {sorted(own)}")


def _check_2_5(h: Harness, name: str, res: HarnessResult) -> None:
    cat = simple_catalog(h.rings[name])
    for M in h.pool(name):
        MM = direct_sum(M, M)
        if MM.size > h.budget.max_module_size:
            continue
        res.instances += 1
        sigma_simples = simple_subfactor_classes(MM, cat, h.subfactors(MM))
        all_images = all(not hom_space(M, cat.simples[j]).is_zero() for j in sigma_simples)
        if all_images != h.brute(M):
            _fail(res, name, f"sigma[M] criterion {all_images} != co-Kasch {h.brute(M)} for {_describe(M)}")


def _projectives(R: FiniteRing) -> list[FiniteModule]:
    cat = simple_catalog(R)
    pis = [principal_module(R, e) for e in cat.decomposition]
    out = list(pis)
    for i in range(len(pis)):
        for j in range(i, len(pis)):
            out.append(direct_sum(pis[i], pis[j]))
    return out


def _check_2_6(h: Harness, name: str, res: HarnessResult) -> None:
    R = h.rings[name]
    cat = simple_catalog(R)
    for P in _projectives(R):
        if P.size > h.budget.max_module_size:
            continue
        res.instances += 1
        generator = all(not hom_space(P, cat.simples[j]).is_zero() for j in composition_profile(P, cat).support)
        if generator != h.brute(P):
            _fail(res, name, f"generator criterion {generator} != co-Kasch {h.brute(P)} for {_describe(P)}")


def _check_2_7(h: Harness, name: str, res: HarnessResult) -> None:
    pool = [M for M in h.pool(name) if h.co_kasch(M)]
    if not pool:
        return
    rng = h.rng(f"2.7:{name}")
    share = max(1, -(-h.budget.pairs // len(h.rings)))
    for _ in range(share):
        M, N = rng.choice(pool), rng.choice(pool)
        res.instances += 1
        if not h.co_kasch_checked(direct_sum(M, N)):
            _fail(res, name, f"direct sum of co-Kasch modules is not co-Kasch: {_describe(M)} + {_describe(N)}")


def _check_2_9(h: Harness, name: str, res: HarnessResult) -> None:
    for M in h.pool(name):
        if not h.co_kasch(M):
            continue
        rad = radical(M)
        for K in enumerate_submodules(M):
            if not K.issubset(rad):
                continue
            res.instances += 1
            Q = quotient_module(M, K)[0]
            if not h.co_kasch_checked(Q):
                _fail(res, name, f"M/K not co-Kasch for K inside Rad(M), {_describe(M)}, K={[list(g) for g in K.generators]}")


def _check_3_1(h: Harness, name: str, res: HarnessResult) -> None:
    for M in h.pool(name):
        if M.is_zero() or not h.co_kasch(M):
            continue
        res.instances += 1
        if radical(M).size == M.size:
            _fail(res, name, f"Rad(M) = M for nonzero co-Kasch {_describe(M)}")


def _is_cyclic(M: FiniteModule) -> bool:
    return any(submodule_generated(M, [x]).size == M.size for x in M.elements())


def _check_3_9(h: Harness, name: str, res: HarnessResult) -> None:
    R = h.rings[name]
    cat = simple_catalog(R)
    hr = is_h_ring(R, cat)
    modules = quotient_pool(R, h.budget, h.rng(f"3.9:{name}"), h.budget.pool_cap)
    res.instances += len(modules)
    all_ck = all(h.co_kasch(M) for M in modules)
    if not hr.verdict:
        i, j = hr.witness["pair"]
        e = ext1(i, j, cat)
        X = construct_extension(cat, i, j, e.cocycle)
        res.instances += 1
        prof = composition_profile(X, cat).multiplicities
        local = composition_profile(quotient_module(X, radical(X))[0], cat).length == 1
        expected = tuple(int(k == i) + int(k == j) for k in range(len(cat)))
        if h.co_kasch(X) or not _is_cyclic(X) or not local or prof != expected:
            _fail(res, name, f"extension witness for pair {(i, j)} is not a cyclic local non-co-Kasch module: {_describe(X)}")
        all_ck = all_ck and h.co_kasch(X)
    if hr.verdict != all_ck:
        _fail(res, name, f"H-ring={hr.verdict} but all tested quotients co-Kasch={all_ck}")


def _check_3_10(h: Harness, name: str, res: HarnessResult) -> None:
    R = h.rings[name]
    cat = simple_catalog(R)
    rep = check_projective_cokasch(R, cat)
    res.instances += 1
    if not rep.consistent:
        _fail(res, name, f"principal indecomposables co-Kasch={rep.all_co_kasch} but Cartan diagonal={rep.cartan.is_diagonal()}")
    for i, row in enumerate(rep.cartan.entries):
        if row[i] < 1:
            _fail(res, name, f"Cartan diagonal entry c[{i}][{i}] = {row[i]}")
        P = principal_module(R, cat.idempotent(i))
        if P.size <= h.budget.pool_cap:
            oracle = oracle_composition_factors(P, cat, h.rng(f"3.10:{name}:{i}"))
            if oracle != row:
                _fail(res, name, f"Cartan row {i} = {list(row)} but a composition series gives {list(oracle)}")
    for e, r in zip(cat.decomposition, rep.reports):
        P = principal_module(R, e)
        if P.size <= h.budget.max_module_size and h.brute(P) != r.verdict:
            _fail(res, name, f"co-Kasch verdict for eR with e={list(e)} disagrees with brute force")


def _check_3_17(h: Harness, name: str, res: HarnessResult) -> None:
    for M in h.pool(name):
        if not h.co_kasch(M):
            continue
        subs = h.subfactors(M).submodules
        seen: dict = {}
        for ni, N in enumerate(subs):
            for K in subs[:ni]:
                if K.size >= N.size or not K.issubset(N):
                    continue
                res.instances += 1
                Q = subfactor(M, N, K)
                key = _module_key(Q)
                if key not in seen:
                    seen[key] = not hom_space(M, Q).is_zero()
                if not seen[key]:
                    _fail(res, name, f"falsification candidate: Hom(M, N/K) = 0 for co-Kasch {_describe(M)}, "
                                     f"N={[list(g) for g in N.generators]}, K={[list(g) for g in K.generators]}")


PROPOSITIONS: dict[str, Callable[[Harness, str, HarnessResult], None]] = {
    "2.2": _check_2_2,
    "kasch": _check_kasch,
    "2.3": _check_2_3,
    "2.4": _check_2_4,
    "2.5": _check_2_5,
    "2.6": _check_2_6,
    "2.7": _check_2_7,
    "2.9": _check_2_9,
    "3.1": _check_3_1,
    "3.9": _check_3_9,
    "3.10": _check_3_10,
    "3.17": _check_3_17,
}


def harness_rings(seed: int, budget: Budget = Budget()) -> dict[str, FiniteRing]:
    """The fixture rings followed by ``budget.random_rings`` seeded random rings."""
    rings = dict(fixture_rings())
    for i, R in enumerate(random_rings(seed, budget.random_rings, budget.max_ring_size)):
        rings[f"random{i}"] = R
    return rings


def run_harness(prop: str, rings: dict[str, FiniteRing], budget: Budget = Budget(), seed: int = 0) -> HarnessResult:
    return Harness(rings, budget, seed).run(prop)
