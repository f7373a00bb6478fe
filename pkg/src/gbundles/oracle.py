"""Brute-force cross-checks for small finite coefficient groups.

Nothing here goes through Smith normal form: cochains are enumerated
outright, coboundaries are evaluated term by term on Fox derivatives, and
orbits are found with union-find.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .abgroup import AbHom, FgAbGroup
from .cohomology import LocalSystem
from .groupdata import GroupDescriptor, psi

MAX_COCHAINS = 10**6
MAX_ORBIT_ELEMENTS = 10**5

Elem = tuple[int, ...]


class TooLarge(ValueError):
    pass


class UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def _elements(moduli: Sequence[int]) -> list[Elem]:
    return list(itertools.product(*(range(f) for f in moduli)))


def _add(x: Elem, y: Elem, moduli: Sequence[int]) -> Elem:
    return tuple((a + b) % f for a, b, f in zip(x, y, moduli))


def _scale(k: int, x: Elem, moduli: Sequence[int]) -> Elem:
    return tuple((k * a) % f for a, f in zip(x, moduli))


def _apply(matrix: Sequence[Sequence[int]], x: Elem, moduli: Sequence[int]) -> Elem:
    return tuple(sum(row[q] * x[q] for q in range(len(x))) % f for row, f in zip(matrix, moduli))


@dataclass(frozen=True)
class BruteH2:
    cardinality: int
    orders: Counter
    image: frozenset
    cosets: dict  # element of A^n -> canonical coset representative


def _word_apply(sys: LocalSystem, word: Sequence[int], x: Elem, moduli: Sequence[int]) -> Elem:
    # rho(w1 ... wk) x = rho(w1)(...(rho(wk) x))
    for letter in reversed(word):
        h = sys.rho[letter - 1] if letter > 0 else sys.rho_inv[-letter - 1]
        x = _apply(h.matrix, x, moduli)
    return x


def brute_h2(sys: LocalSystem) -> BruteH2:
    """Enumerate ``A^m``, collect coboundaries in ``A^n`` and count cosets."""
    a = sys.coeff
    if not a.is_finite:
        raise ValueError("brute force needs finite coefficients")
    m, n = sys.complex.num_gens, sys.complex.num_relators
    moduli = a.torsion
    elems = _elements(moduli)
    if len(elems) ** m > MAX_COCHAINS:
        raise TooLarge(f"|A|^m = {len(elems) ** m} exceeds {MAX_COCHAINS}")
    zero = tuple(0 for _ in moduli)
    fox = sys.complex.fox_matrix()
    image = set()
    for cochain in itertools.product(elems, repeat=m):
        value = []
        for j in range(n):
            acc = zero
            for i in range(m):
                for word, coeff in fox[j][i].terms.items():
                    acc = _add(acc, _scale(coeff, _word_apply(sys, word, cochain[i], moduli), moduli), moduli)
            value.append(acc)
        image.add(tuple(value))
    space = list(itertools.product(elems, repeat=n))

    def add_n(u, v):
        return tuple(_add(p, q, moduli) for p, q in zip(u, v))

    cosets = {}
    for v in space:
        if v not in cosets:
            members = [add_n(v, im) for im in image]
            rep = min(members)
            for w in members:
                cosets[w] = rep
    zero_n = tuple(zero for _ in range(n))
    orders: Counter = Counter()
    for rep in set(cosets.values()):
        k, acc = 1, rep
        while acc not in image:
            acc = add_n(acc, rep)
            k += 1
        orders[k] += 1
    assert zero_n in image
    return BruteH2(len(set(cosets.values())), orders, frozenset(image), cosets)


def element_orders(g: FgAbGroup) -> Counter:
    """Multiset of element orders of a finite group, from its invariant factors."""
    out: Counter = Counter()
    for coords in itertools.product(*(range(f) for f in g.torsion)):
        k = 1
        for t, f in zip(coords, g.torsion):
            k = math.lcm(k, f // math.gcd(t, f))
        out[k] += 1
    return out


@dataclass(frozen=True)
class BruteOrbits:
    count: int
    sizes: tuple[int, ...]


def _orbits(elements: Sequence, maps: Sequence[Callable]) -> BruteOrbits:
    if len(elements) > MAX_ORBIT_ELEMENTS:
        raise TooLarge(f"{len(elements)} elements exceeds {MAX_ORBIT_ELEMENTS}")
    uf = UnionFind(elements)
    for f in maps:
        for x in elements:
            uf.union(x, f(x))
    sizes = sorted(len(c) for c in uf.classes().values())
    return BruteOrbits(len(sizes), tuple(sizes))


def brute_orbits(h: FgAbGroup, actions: Sequence[AbHom]) -> BruteOrbits:
    """Orbits of a finite group under explicit automorphisms."""
    if not h.is_finite:
        raise ValueError("brute force needs a finite group")
    moduli = h.torsion
    maps = [lambda x, act=act: _apply(act.matrix, x, moduli) for act in actions]
    return _orbits(_elements(moduli), maps)


def brute_cochain_orbits(sys: LocalSystem, d: GroupDescriptor, brute: BruteH2 | None = None) -> BruteOrbits:
    """Orbits of pi_0 G on cosets of the coboundaries, acting directly on 2-cochains."""
    if brute is None:
        brute = brute_h2(sys)
    moduli = sys.coeff.torsion
    reps = sorted(set(brute.cosets.values()))
    maps = []
    for coords in itertools.product(*(range(f) for f in d.pi0.torsion)):
        mat = psi(d, d.pi0.element(*coords)).matrix
        maps.append(lambda v, mat=mat: brute.cosets[tuple(_apply(mat, x, moduli) for x in v)])
    return _orbits(reps, maps)
