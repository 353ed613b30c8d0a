"""Co-Kasch classification of Z-modules built from Z, Z/n, Z(p^inf) and Q.

A Z-module here is a finite direct sum of atoms.  Divisibility by a prime is
decided atom by atom, which makes the infinite "for every prime" quantifier
decidable: without a free summand only the finitely many primes dividing a
cyclic order can fail to divide the module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from sympy import isprime, nextprime, primefactors

from .errors import AlgebraError
from .kasch import PropertyReport


@dataclass(frozen=True, order=True)
class FreeZ:
    def __str__(self) -> str:
        return "Z"


@dataclass(frozen=True, order=True)
class Cyclic:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise AlgebraError(f"Z/{self.n}: cyclic order must be at least 2")

    def __str__(self) -> str:
        return f"Z/{self.n}"


@dataclass(frozen=True, order=True)
class Prufer:
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise AlgebraError(f"Prufer({self.p}): {self.p} is not prime")

    def __str__(self) -> str:
        return f"Prufer({self.p})"


@dataclass(frozen=True, order=True)
class Rationals:
    def __str__(self) -> str:
        return "Q"


Atom = Union[FreeZ, Cyclic, Prufer, Rationals]

_KIND = {FreeZ: 0, Cyclic: 1, Prufer: 2, Rationals: 3}


def _atom_key(a: Atom):
    return (_KIND[type(a)], getattr(a, "n", 0) or getattr(a, "p", 0))


@dataclass(frozen=True)
class ZModuleExpr:
    """A multiset of atoms, stored sorted; the empty multiset is the zero module."""

    atoms: tuple[Atom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(sorted(self.atoms, key=_atom_key)))

    def __add__(self, other: "ZModuleExpr") -> "ZModuleExpr":
        return ZModuleExpr(self.atoms + other.atoms)

    def __str__(self) -> str:
        return " + ".join(str(a) for a in self.atoms) if self.atoms else "0"

    def is_zero(self) -> bool:
        return not self.atoms


_TOKEN = re.compile(
    r"^(?:(?P<z>Z)|Z/(?P<n>\d+)|Prufer\((?P<p>\d+)\)|Z\((?P<q>\d+)\^inf\)|(?P<Q>Q))$"
)


def parse_zmodule(text: str) -> ZModuleExpr:
    """Parse ``"Z + Z/12 + Prufer(3) + Q"``; ``"0"`` or ``""`` is the zero module.

    ``Z(p^inf)`` is accepted as a synonym for ``Prufer(p)``.
    """
    text = text.strip()
    if text in ("", "0"):
        return ZModuleExpr()
    atoms: list[Atom] = []
    for pos, raw in enumerate(text.split("+")):
        tok = raw.replace(" ", "")
        m = _TOKEN.match(tok)
        if not m:
            raise AlgebraError(f"summand {pos} ({raw.strip()!r}): expected Z, Z/n, Prufer(p) or Q")
        if m["z"]:
            atoms.append(FreeZ())
        elif m["n"]:
            atoms.append(Cyclic(int(m["n"])))
        elif m["p"] or m["q"]:
            atoms.append(Prufer(int(m["p"] or m["q"])))
        else:
            atoms.append(Rationals())
    return ZModuleExpr(tuple(atoms))


def is_torsion(M: ZModuleExpr) -> bool:
    return not any(isinstance(a, (FreeZ, Rationals)) for a in M.atoms)


def primary_support(M: ZModuleExpr) -> set[int]:
    """Primes ``p`` with nonzero ``p``-primary component."""
    out: set[int] = set()
    for a in M.atoms:
        if isinstance(a, Cyclic):
            out.update(primefactors(a.n))
        elif isinstance(a, Prufer):
            out.add(a.p)
    return out


def _atom_divisible(a: Atom, p: int) -> bool:
    if isinstance(a, FreeZ):
        return False
    if isinstance(a, Cyclic):
        return a.n % p != 0
    return True


def is_p_divisible(M: ZModuleExpr, p: int) -> bool:
    """Decide ``pM = M``."""
    if not isprime(p):
        raise AlgebraError(f"{p} is not prime")
    return all(_atom_divisible(a, p) for a in M.atoms)


def _first_free_prime(M: ZModuleExpr) -> int:
    """Smallest prime dividing no cyclic order of ``M``."""
    orders = [a.n for a in M.atoms if isinstance(a, Cyclic)]
    p = 2
    while any(n % p == 0 for n in orders):
        p = nextprime(p)
    return p


def is_co_kasch_z(M: ZModuleExpr) -> PropertyReport:
    """Torsion modules: ``pM != M`` for every ``p`` in the primary support.
    Otherwise ``pM != M`` for every prime, which within this grammar holds iff
    there is a free summand.
    """
    if M.is_zero():
        return PropertyReport("co-Kasch", True, None, ("zero module, vacuous",))
    if is_torsion(M):
        for p in sorted(primary_support(M)):
            if is_p_divisible(M, p):
                return PropertyReport("co-Kasch", False, {"prime": p, "reason": "pM = M with nonzero p-primary part"})
        return PropertyReport("co-Kasch", True)
    if any(isinstance(a, FreeZ) for a in M.atoms):
        return PropertyReport("co-Kasch", True, None, ("free summand surjects onto every Z/p",))
    p = _first_free_prime(M)
    return PropertyReport("co-Kasch", False, {"prime": p, "reason": "pM = M for a non-torsion module"})


def cyclic_sum(orders: Iterable[int]) -> ZModuleExpr:
    return ZModuleExpr(tuple(Cyclic(n) for n in orders))


def finite_module_of(M: ZModuleExpr):
    """The finite ``Z/e``-module for a sum of cyclic atoms, ``e`` the exponent."""
    from math import lcm

    from .fixtures import cyclic_ring
    from .module import validate_module

    if not all(isinstance(a, Cyclic) for a in M.atoms) or M.is_zero():
        raise AlgebraError("only nonzero sums of cyclic atoms are finite modules")
    orders = tuple(a.n for a in M.atoms)
    e = lcm(*orders)
    R = cyclic_ring(e)
    ident = tuple(tuple(int(i == j) for j in range(len(orders))) for i in range(len(orders)))
    return validate_module(R, orders, [ident])
