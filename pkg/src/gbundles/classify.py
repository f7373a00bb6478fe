"""Bundle classification: for each mu1, the orbit set of pi_0 G on H^2."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import abgroup, cohomology, reference
from .abgroup import AbElement, AbHom
from .cohomology import CohomologyGroup, LocalSystem
from .complex import TwoComplex, h1, hom_from_generator_images, hom_on_generators
from .groupdata import GroupDescriptor, check, psi

INFINITE = "INFINITE"
DEFAULT_MAX_REPS = 10


@dataclass(frozen=True)
class Mu1Class:
    hom: AbHom
    index: int
    generator_images: tuple[tuple[int, ...], ...]

    @property
    def is_zero(self) -> bool:
        return self.hom.is_zero()


@dataclass
class ClassificationResult:
    mu1: Mu1Class
    h2: CohomologyGroup
    orbit_count: int | str
    orbit_reps: list[AbElement]
    orbit_sizes: list[int] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def is_infinite(self) -> bool:
        return self.orbit_count == INFINITE


def enumerate_mu1(x: TwoComplex, d: GroupDescriptor) -> list[Mu1Class]:
    """All of ``Hom(H_1 X, pi0)``, zero first."""
    check(d)
    h, _ = h1(x)
    out = []
    for idx, hom in enumerate(abgroup.enumerate_homs(h, d.pi0)):
        out.append(Mu1Class(hom, idx, tuple(hom_on_generators(x, hom))))
    return out


def mu1_from_images(x: TwoComplex, d: GroupDescriptor, images: Sequence[Sequence[int]]) -> Mu1Class:
    """The enumerated class whose generator images are ``images``."""
    hom = hom_from_generator_images(x, d.pi0, images)
    for c in enumerate_mu1(x, d):
        if c.hom == hom:
            return c
    raise AssertionError("well-defined mu1 missing from enumeration")


def induced_action(sys: LocalSystem, d: GroupDescriptor, a: AbElement, h: CohomologyGroup) -> AbHom:
    """Action of ``a`` in pi0 on H^2 by post-composition on cochain values."""
    g = h.group
    act = psi(d, a).as_matrix()
    k = sys.coeff.ngens
    copies = h.ambient_dim // k if k else 0

    def apply(v: Sequence[int]) -> list[int]:
        out = []
        for c in range(copies):
            block = v[c * k:(c + 1) * k]
            out += [sum(act[p][q] * block[q] for q in range(k)) for p in range(k)]
        return out

    ncols = len(h.lattice[0]) if h.lattice else 0
    for j in range(ncols):
        col = [row[j] for row in h.lattice]
        if any(h.project(apply(col))):
            raise ArithmeticError(f"action of {a} does not preserve coboundaries; descriptor is inconsistent")
    images = [h.project(apply([row[j] for row in h.lift])) for j in range(g.ngens)]
    return AbHom.from_images(g, g, images)


def all_actions(sys: LocalSystem, d: GroupDescriptor, h: CohomologyGroup) -> list[AbHom]:
    return [induced_action(sys, d, a, h) for a in abgroup.enumerate_elements(d.pi0)]


def orbit(actions: Sequence[AbHom], x: AbElement) -> set[tuple[int, ...]]:
    return {act(x).coords for act in actions}


def orbit_rep(actions: Sequence[AbHom], x: AbElement) -> AbElement:
    """Least element of the orbit of ``x`` in the canonical order."""
    return min((act(x) for act in actions), key=AbElement.sort_key)


def classify(x: TwoComplex, d: GroupDescriptor, mu1: Mu1Class,
             max_reps: int = DEFAULT_MAX_REPS) -> ClassificationResult:
    sys = cohomology.local_system(x, d, mu1.hom)
    h = cohomology.h2(sys)
    actions = all_actions(sys, d, h)
    g = h.group
    if g.is_finite:
        sizes: dict[tuple[int, ...], int] = {}
        for e in abgroup.enumerate_elements(g):
            rep = orbit_rep(actions, e)
            sizes[rep.coords] = sizes.get(rep.coords, 0) + 1
        reps = sorted((AbElement(g, c) for c in sizes), key=AbElement.sort_key)
        result = ClassificationResult(mu1, h, len(reps), reps, [sizes[r.coords] for r in reps])
    else:
        reps = []
        osizes = []
        for e in abgroup.enumerate_canonical(g):
            if len(reps) >= max_reps:
                break
            if orbit_rep(actions, e) == e:
                reps.append(e)
                osizes.append(len(orbit(actions, e)))
        result = ClassificationResult(mu1, h, INFINITE, reps, osizes)
    result.warnings.extend(reference.compare(x, d, mu1, result))
    return result


@dataclass
class Classification:
    complex: TwoComplex
    group: GroupDescriptor
    entries: list[ClassificationResult]

    @property
    def total(self) -> int | str:
        if any(e.is_infinite for e in self.entries):
            return INFINITE
        return sum(e.orbit_count for e in self.entries)

    @property
    def warnings(self) -> list[str]:
        return list(itertools.chain.from_iterable(e.warnings for e in self.entries))


def classify_all(x: TwoComplex, d: GroupDescriptor, max_reps: int = DEFAULT_MAX_REPS) -> Classification:
    return Classification(x, d, [classify(x, d, m, max_reps) for m in enumerate_mu1(x, d)])
