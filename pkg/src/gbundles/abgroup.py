"""Finitely generated abelian groups in invariant-factor form.

A group ``Z/f_1 + ... + Z/f_s + Z^r`` has coordinates ``(t_1..t_s, z_1..z_r)``:
torsion first, reduced into ``[0, f_i)``, then free.  Everything else in the
package (coefficients, H_1, twisted cohomology) lives in these coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import zlinalg
from .zlinalg import Matrix


@dataclass(frozen=True)
class FgAbGroup:
    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(f) for f in self.torsion))
        for f in self.torsion:
            if f < 2:
                raise ValueError(f"invariant factor {f} must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    def order(self) -> int | None:
        """Cardinality, or ``None`` when infinite."""
        if not self.is_finite:
            return None
        n = 1
        for f in self.torsion:
            n *= f
        return n

    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus, 0 for free coordinates."""
        return self.torsion + (0,) * self.free_rank

    def relations(self) -> Matrix:
        """``ngens x s`` matrix whose columns are ``f_i e_i``."""
        s = len(self.torsion)
        rel = zlinalg.zeros(self.ngens, s)
        for i, f in enumerate(self.torsion):
            rel[i][i] = f
        return rel

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        return tuple(x % m if m else int(x) for x, m in zip(coords, self.moduli()))

    def element(self, *coords: int) -> "AbElement":
        return AbElement(self, self.reduce(coords))

    def zero(self) -> "AbElement":
        return AbElement(self, (0,) * self.ngens)

    def __str__(self) -> str:
        parts = [f"Z/{f}" for f in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def cyclic(n: int) -> FgAbGroup:
    """``Z/n``; ``cyclic(0)`` is ``Z`` and ``cyclic(1)`` is trivial."""
    if n == 0:
        return FgAbGroup((), 1)
    if n == 1:
        return FgAbGroup()
    return FgAbGroup((abs(n),))


def free_key(n: int) -> int:
    """Rank of ``n`` in the order 0 < 1 < -1 < 2 < -2 < ..."""
    return 2 * n - 1 if n > 0 else -2 * n


def free_from_key(k: int) -> int:
    return (k + 1) // 2 if k % 2 else -(k // 2)


@dataclass(frozen=True)
class AbElement:
    group: FgAbGroup
    coords: tuple[int, ...]

    @property
    def torsion_coords(self) -> tuple[int, ...]:
        return self.coords[: len(self.group.torsion)]

    @property
    def free_coords(self) -> tuple[int, ...]:
        return self.coords[len(self.group.torsion):]

    def _check(self, other: "AbElement") -> None:
        if self.group != other.group:
            raise ValueError(f"elements of different groups: {self.group} vs {other.group}")

    def __add__(self, other: "AbElement") -> "AbElement":
        self._check(other)
        return AbElement(self.group, self.group.reduce([a + b for a, b in zip(self.coords, other.coords)]))

    def __neg__(self) -> "AbElement":
        return AbElement(self.group, self.group.reduce([-a for a in self.coords]))

    def __sub__(self, other: "AbElement") -> "AbElement":
        return self + (-other)

    def __rmul__(self, n: int) -> "AbElement":
        return AbElement(self.group, self.group.reduce([n * a for a in self.coords]))

    def equals(self, other: "AbElement") -> bool:
        self._check(other)
        return self.coords == other.coords

    def is_zero(self) -> bool:
        return not any(self.coords)

    def sort_key(self) -> tuple[int, ...]:
        """Lexicographic key: torsion by value, free coordinates by :func:`free_key`."""
        s = len(self.group.torsion)
        return self.coords[:s] + tuple(free_key(z) for z in self.coords[s:])

    def order(self) -> int | None:
        """Order of the element; ``None`` if it has infinite order."""
        if any(self.free_coords):
            return None
        n = 1
        for t, f in zip(self.torsion_coords, self.group.torsion):
            if t:
                n = math.lcm(n, f // math.gcd(t, f))
        return n

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


def from_presentation(num_gens: int, relations: Matrix) -> tuple[FgAbGroup, zlinalg.Cokernel]:
    """Canonical form of ``Z^num_gens / <columns of relations>``."""
    if len(relations) != num_gens:
        raise ValueError(f"relations have {len(relations)} rows, expected {num_gens}")
    ck = zlinalg.cokernel(relations, rows=num_gens)
    return FgAbGroup(ck.torsion, ck.free_rank), ck


@dataclass(frozen=True)
class AbHom:
    """Homomorphism given by its matrix on canonical generators.

    Column ``j`` holds the target coordinates of the image of source generator
    ``j``; entries are kept reduced in the target.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_matrix(cls, source: FgAbGroup, target: FgAbGroup, matrix: Matrix) -> "AbHom":
        if len(matrix) != target.ngens:
            raise ValueError(f"matrix has {len(matrix)} rows, target has {target.ngens} generators")
        cols = [target.reduce([row[j] for row in matrix]) for j in range(source.ngens)]
        rows = tuple(tuple(col[i] for col in cols) for i in range(target.ngens))
        return cls(source, target, rows)

    @classmethod
    def from_images(cls, source: FgAbGroup, target: FgAbGroup, images: Sequence[Sequence[int]]) -> "AbHom":
        """Build from the images of the source generators (one coordinate list each)."""
        if len(images) != source.ngens:
            raise ValueError(f"need {source.ngens} generator images, got {len(images)}")
        mat = [[images[j][i] for j in range(source.ngens)] for i in range(target.ngens)]
        return cls.from_matrix(source, target, mat)

    @classmethod
    def identity(cls, group: FgAbGroup) -> "AbHom":
        return cls.from_matrix(group, group, zlinalg.identity(group.ngens))

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> "AbHom":
        return cls.from_matrix(source, target, zlinalg.zeros(target.ngens, source.ngens))

    def as_matrix(self) -> Matrix:
        return [list(row) for row in self.matrix]

    def image_of_generator(self, j: int) -> AbElement:
        return AbElement(self.target, tuple(row[j] for row in self.matrix))

    def images(self) -> list[AbElement]:
        return [self.image_of_generator(j) for j in range(self.source.ngens)]

    def apply_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(zlinalg.matvec(self.as_matrix(), list(coords)))

    def __call__(self, x: AbElement) -> AbElement:
        if x.group != self.source:
            raise ValueError(f"element of {x.group} passed to hom from {self.source}")
        return AbElement(self.target, self.apply_coords(x.coords))

    def compose(self, other: "AbHom") -> "AbHom":
        """``self o other``."""
        if other.target != self.source:
            raise ValueError("composition of incompatible homomorphisms")
        mat = zlinalg.matmul(self.as_matrix(), other.as_matrix(),
                             inner=self.source.ngens, cols=other.source.ngens)
        return AbHom.from_matrix(other.source, self.target, mat)

    def is_well_defined(self) -> bool:
        for j, f in enumerate(self.source.torsion):
            if not (f * self.image_of_generator(j)).is_zero():
                return False
        return True

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)


def is_automorphism(h: AbHom) -> bool:
    """Well-defined and bijective.

    Surjectivity is decided by the cokernel of ``[M | relations]``; for finitely
    generated abelian groups a surjective endomorphism is injective.
    """
    if h.source != h.target:
        return False
    if not h.is_well_defined():
        return False
    g = h.source
    stacked = zlinalg.hstack(h.as_matrix(), g.relations(), rows=g.ngens)
    ck = zlinalg.cokernel(stacked, rows=g.ngens, cols=g.ngens + len(g.torsion))
    return not ck.torsion and ck.free_rank == 0


def inverse(h: AbHom) -> AbHom:
    """Inverse of an automorphism, solving ``M x + R y = e_j`` for each generator."""
    if not is_automorphism(h):
        raise ValueError("homomorphism is not an automorphism")
    g = h.source
    n = g.ngens
    stacked = zlinalg.hstack(h.as_matrix(), g.relations(), rows=n)
    ncols = n + len(g.torsion)
    images = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        sol = zlinalg.solve(stacked, e, cols=ncols)
        if sol is None:
            raise ArithmeticError("automorphism failed to invert")
        images.append(sol[:n])
    return AbHom.from_images(g, g, images)


def hom_power(h: AbHom, k: int) -> AbHom:
    if k < 0:
        return hom_power(inverse(h), -k)
    out = AbHom.identity(h.source)
    for _ in range(k):
        out = h.compose(out)
    return out


def enumerate_elements(g: FgAbGroup) -> Iterator[AbElement]:
    """Every element of a finite group once, in lexicographic order."""
    if not g.is_finite:
        raise ValueError(f"cannot enumerate infinite group {g}")
    for coords in itertools.product(*(range(f) for f in g.torsion)):
        yield AbElement(g, tuple(coords))


def enumerate_canonical(g: FgAbGroup) -> Iterator[AbElement]:
    """Elements in canonical order; infinite groups are walked shell by shell.

    Shell ``h`` holds the elements whose largest free-coordinate key is ``h``,
    listed lexicographically by :meth:`AbElement.sort_key`.  For finite groups
    this is the lexicographic order; for ``Z`` it is 0, 1, -1, 2, -2, ...
    """
    if g.is_finite:
        yield from enumerate_elements(g)
        return
    tors = [range(f) for f in g.torsion]
    h = 0
    while True:
        for t in itertools.product(*tors):
            for keys in itertools.product(range(h + 1), repeat=g.free_rank):
                if max(keys, default=0) != h:
                    continue
                yield AbElement(g, tuple(t) + tuple(free_from_key(k) for k in keys))
        h += 1


def annihilated_by(g: FgAbGroup, f: int) -> list[AbElement]:
    """Elements ``b`` with ``f b = 0``; ``f = 0`` means no constraint."""
    return [b for b in enumerate_elements(g) if f == 0 or (f * b).is_zero()]


def enumerate_homs(a: FgAbGroup, b: FgAbGroup) -> list[AbHom]:
    """All homomorphisms ``a -> b`` for finite ``b``, zero homomorphism first.

    Generator ``j`` of ``a`` (invariant factor ``f_j``, or free) may go to any
    ``x`` with ``f_j x = 0``; the list is the product of those choices in
    lexicographic order.
    """
    if not b.is_finite:
        raise ValueError(f"target {b} is infinite")
    choices = [annihilated_by(b, f) for f in a.moduli()]
    return [AbHom.from_images(a, b, [x.coords for x in combo]) for combo in itertools.product(*choices)]


def count_homs(a: FgAbGroup, b: FgAbGroup) -> int:
    """``|Hom(a, b)|`` by the gcd formula, for finite ``b``."""
    if not b.is_finite:
        raise ValueError(f"target {b} is infinite")
    n = 1
    for f in a.moduli():
        for e in b.torsion:
            n *= math.gcd(f, e) if f else e
    return n
