"""Hand-built fixture rings and a seeded random ring sampler."""

from __future__ import annotations

import math
import random
from functools import lru_cache

from .errors import RingAxiomError
from .kernel import Subgroup
from .ring import FiniteRing, product_ring, validate_ring


def cyclic_ring(n: int) -> FiniteRing:
    """``Z/n``."""
    return validate_ring((n,), [[[1]]], (1,))


def truncated_polynomial_ring(p: int, k: int) -> FiniteRing:
    """``F_p[x]/(x^k)`` on the basis ``1, x, ..., x^{k-1}``."""
    table = [[[int(i + j == t) for t in range(k)] for j in range(k)] for i in range(k)]
    return validate_ring((p,) * k, table, (1,) + (0,) * (k - 1))


def upper_triangular_ring(p: int) -> FiniteRing:
    """``T_2(F_p)`` on the basis ``e11, e12, e22``."""
    e11, e12, e22, z = (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)
    table = [
        [e11, e12, z],
        [z, z, e12],
        [z, z, e22],
    ]
    return validate_ring((p, p, p), table, (1, 0, 1))


@lru_cache(maxsize=None)
def fixture_rings() -> dict[str, FiniteRing]:
    F2 = cyclic_ring(2)
    return {
        "F2": F2,
        "Z4": cyclic_ring(4),
        "F2x": truncated_polynomial_ring(2, 2),
        "T2F2": upper_triangular_ring(2),
        "F2xF2": product_ring(F2, F2),
    }


# ---------------------------------------------------------------------------
# Random rings


def ring_from_matrices(q: int, n: int, generators) -> FiniteRing | None:
    """Subring of ``M_n(Z/q)`` generated by the identity and ``generators``.

    Returns ``None`` if the closure exceeds 4096 elements.  Structure constants
    are read off in the cyclic coordinates of the subring's additive group.
    """
    N = n * n
    amb = (q,) * N

    def mm(a, b):
        return tuple(sum(a[i * n + t] * b[t * n + j] for t in range(n)) % q for i in range(n) for j in range(n))

    one = tuple(int(i == j) for i in range(n) for j in range(n))
    H = Subgroup.generated(amb, [one, *generators])
    while True:
        gens = H.generators
        new = [mm(a, b) for a in gens for b in gens]
        missing = [v for v in new if v not in H]
        if not missing:
            break
        H = Subgroup.generated(amb, H.basis + tuple(missing))
        if H.size > 4096:
            return None
    dec = H.decomposition
    basis = dec.generators
    table = [[dec.to_new(mm(a, b)) for b in basis] for a in basis]
    return validate_ring(dec.orders, table, dec.to_new(one))


def _raw_ring(rng: random.Random, max_size: int) -> FiniteRing:
    """Random structure constants with unity ``b_0``; raises on any axiom violation."""
    shapes = [o for o in ((2, 2), (3, 3), (2, 4), (2, 2, 2), (2, 2, 4), (2, 2, 2, 2)) if math.prod(o) <= max_size]
    if not shapes:
        raise RingAxiomError("size", detail="no shape fits")
    orders = rng.choice(shapes)
    n = len(orders)
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == 0:
                table[i][j] = basis[j]
            elif j == 0:
                table[i][j] = basis[i]
            else:
                table[i][j] = tuple(rng.randrange(e) for e in orders)
    return validate_ring(orders, table, basis[0])


def random_ring(rng: random.Random, max_size: int = 64, retries: int = 200, depth: int = 2) -> FiniteRing:
    """Sample a ring with at most ``max_size`` elements.

    Candidates come from random structure constants and from randomly
    parametrised constructions (cyclic rings, subrings of small matrix rings,
    products); each is validated and oversize or invalid ones are rejected.
    """
    for _ in range(retries):
        kind = rng.random()
        try:
            if kind < 0.15:
                R = cyclic_ring(rng.randrange(2, max_size + 1))
            elif kind < 0.3:
                if depth == 0 or max_size < 4:
                    continue
                a = random_ring(rng, max_size // 2, retries, depth - 1)
                b = random_ring(rng, max_size // a.size, retries, depth - 1)
                R = product_ring(a, b)
            elif kind < 0.6:
                R = _raw_ring(rng, max_size)
            else:
                q = rng.choice([2, 2, 2, 3, 4])
                n = rng.choice([2, 2, 3])
                upper = rng.random() < 0.6
                gens = []
                for _ in range(rng.randint(1, 2)):
                    m = [rng.randrange(q) if (not upper or i <= j) else 0 for i in range(n) for j in range(n)]
                    gens.append(tuple(m))
                R = ring_from_matrices(q, n, gens)
                if R is None:
                    continue
        except RingAxiomError:
            continue
        if R.size <= max_size:
            return R
    raise RuntimeError("random ring sampler exhausted its retries")


def random_rings(seed, count: int, max_size: int = 64) -> list[FiniteRing]:
    rng = random.Random(f"rings:{seed}")
    return [random_ring(rng, max_size) for _ in range(count)]
