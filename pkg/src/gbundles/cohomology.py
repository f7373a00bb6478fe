"""Cellular cohomology of a presentation complex with twisted coefficients.

Cochains on the universal cover are determined by their values on the cells
of X, so ``C^k = A^{#k-cells}``.  Every copy of ``A`` is lifted to
``Z^{ngens(A)}`` and its torsion relations are carried as extra columns, so
each group below is a single Smith normal form computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import abgroup, zlinalg
from .abgroup import AbHom, FgAbGroup
from .complex import GroupRingElement, TwoComplex, hom_on_generators
from .groupdata import GroupDescriptor, check, psi
from .zlinalg import Matrix


@dataclass(frozen=True)
class LocalSystem:
    complex: TwoComplex
    coeff: FgAbGroup
    rho: tuple[AbHom, ...]
    rho_inv: tuple[AbHom, ...] = ()

    def __post_init__(self):
        if len(self.rho) != self.complex.num_gens:
            raise ValueError("need one automorphism per generator")
        for h in self.rho:
            if h.source != self.coeff or h.target != self.coeff:
                raise ValueError("monodromy must act on the coefficient group")
        if not self.rho_inv:
            object.__setattr__(self, "rho_inv", tuple(abgroup.inverse(h) for h in self.rho))
        ident = AbHom.identity(self.coeff)
        for r in self.complex.relators:
            if self.word_action(r) != ident:
                raise ValueError(f"monodromy is nontrivial around relator {self.complex.format_word(r)!r}")

    def word_action(self, word: Sequence[int]) -> AbHom:
        """Monodromy along a word, multiplying left to right."""
        out = AbHom.identity(self.coeff)
        for x in word:
            out = out.compose(self.rho[x - 1] if x > 0 else self.rho_inv[-x - 1])
        return out

    def ring_action(self, elem: GroupRingElement) -> Matrix:
        """Integer matrix of the Z-linear extension of the monodromy to ``elem``."""
        n = self.coeff.ngens
        acc = zlinalg.zeros(n, n)
        for w, c in elem.terms.items():
            m = self.word_action(w).matrix
            for i in range(n):
                for j in range(n):
                    acc[i][j] += c * m[i][j]
        return acc

    @property
    def is_trivial(self) -> bool:
        ident = AbHom.identity(self.coeff)
        return all(h == ident for h in self.rho)


def trivial_system(x: TwoComplex, coeff: FgAbGroup) -> LocalSystem:
    return LocalSystem(x, coeff, tuple(AbHom.identity(coeff) for _ in range(x.num_gens)))


def local_system(x: TwoComplex, d: GroupDescriptor, mu1: AbHom) -> LocalSystem:
    """Coefficients pi_1 G twisted by ``psi o mu1`` on the generators of pi_1 X."""
    check(d)
    if mu1.target != d.pi0:
        raise ValueError(f"mu1 lands in {mu1.target}, expected pi0 = {d.pi0}")
    if not mu1.is_well_defined():
        raise ValueError("mu1 is not well defined on H_1")
    images = hom_on_generators(x, mu1)
    rho = tuple(psi(d, d.pi0.element(*v)) for v in images)
    rho_inv = tuple(psi(d, -d.pi0.element(*v)) for v in images)
    return LocalSystem(x, d.pi1, rho, rho_inv)


def _block_diag_relations(a: FgAbGroup, copies: int) -> Matrix:
    s, n = len(a.torsion), a.ngens
    out = zlinalg.zeros(n * copies, s * copies)
    for c in range(copies):
        for i, f in enumerate(a.torsion):
            out[c * n + i][c * s + i] = f
    return out


def coboundaries(sys: LocalSystem) -> tuple[Matrix, Matrix]:
    """``(delta0, delta1)`` as integer block matrices.

    ``delta0``: block ``i`` is ``rho(x_i) - 1``.  ``delta1``: block ``(j, i)`` is
    the monodromy applied to the Fox derivative ``d r_j / d x_i``.
    """
    x, a = sys.complex, sys.coeff
    d = a.ngens
    m, n = x.num_gens, x.num_relators
    delta0 = zlinalg.zeros(d * m, d)
    for i, h in enumerate(sys.rho):
        for p in range(d):
            for q in range(d):
                delta0[i * d + p][q] = h.matrix[p][q] - (1 if p == q else 0)
    delta1 = zlinalg.zeros(d * n, d * m)
    for j, row in enumerate(x.fox_matrix()):
        for i, elem in enumerate(row):
            block = sys.ring_action(elem)
            for p in range(d):
                for q in range(d):
                    delta1[j * d + p][i * d + q] = block[p][q]
    return delta0, delta1


@dataclass(frozen=True)
class CohomologyGroup:
    """A quotient ``Z^ambient_dim / lattice`` in canonical form.

    ``projection`` takes ambient cochain coordinates to canonical coordinates;
    ``lift`` columns are cochains representing the canonical generators.
    """

    group: FgAbGroup
    ambient_dim: int
    projection: Matrix
    lift: Matrix
    lattice: Matrix

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.group.reduce(zlinalg.matvec(self.projection, list(v)))

    def lift_coords(self, coords: Sequence[int]) -> list[int]:
        return zlinalg.matvec(self.lift, list(coords))


def _quotient(lattice: Matrix, rows: int, cols: int) -> CohomologyGroup:
    ck = zlinalg.cokernel(lattice, rows=rows, cols=cols)
    return CohomologyGroup(FgAbGroup(ck.torsion, ck.free_rank), rows, ck.projection, ck.lift, lattice)


def h2(sys: LocalSystem) -> CohomologyGroup:
    """``A^n / (im delta1 + relations)``; every 2-cochain is a cocycle."""
    a = sys.coeff
    n = sys.complex.num_relators
    _, delta1 = coboundaries(sys)
    rel = _block_diag_relations(a, n)
    rows = a.ngens * n
    lattice = zlinalg.hstack(delta1, rel, rows=rows)
    return _quotient(lattice, rows, a.ngens * sys.complex.num_gens + len(a.torsion) * n)


def generated_subgroup(gens: Matrix, ngens: int, modulo: Matrix, nmod: int) -> FgAbGroup:
    """Subgroup of ``Z^r / im(modulo)`` generated by the ``ngens`` columns of ``gens``.

    Presented as ``Z^ngens`` modulo the coefficient vectors ``c`` with
    ``gens @ c`` in ``im(modulo)``.
    """
    rows = len(gens) if gens else len(modulo)
    stacked = zlinalg.hstack(gens, modulo, rows=rows) if rows else []
    ker = zlinalg.kernel_basis(stacked, cols=ngens + nmod)
    k = len(ker[0]) if ker else 0
    rel = [ker[i][:k] for i in range(ngens)]
    g, _ = abgroup.from_presentation(ngens, rel)
    return g


def h0(sys: LocalSystem) -> FgAbGroup:
    """Invariants ``{a : rho(x_i) a = a for all i}``."""
    a = sys.coeff
    m = sys.complex.num_gens
    delta0, _ = coboundaries(sys)
    d, s = a.ngens, len(a.torsion)
    relm = _block_diag_relations(a, m)
    cols = d + s * m
    stacked = zlinalg.hstack(delta0, relm, rows=d * m) if m else zlinalg.zeros(0, cols)
    ker = zlinalg.kernel_basis(stacked, cols=cols)
    k = len(ker[0]) if ker else 0
    cocycles = [ker[i][:k] for i in range(d)]
    return generated_subgroup(cocycles, k, a.relations(), s)


def h1(sys: LocalSystem) -> FgAbGroup:
    """``ker delta1 / im delta0``, with coefficient relations in every copy."""
    a = sys.coeff
    m, n = sys.complex.num_gens, sys.complex.num_relators
    d, s = a.ngens, len(a.torsion)
    delta0, delta1 = coboundaries(sys)
    reln = _block_diag_relations(a, n)
    cols = d * m + s * n
    stacked = zlinalg.hstack(delta1, reln, rows=d * n) if n else zlinalg.zeros(0, cols)
    ker = zlinalg.kernel_basis(stacked, cols=cols)
    k = len(ker[0]) if ker else 0
    cocycles = [ker[i][:k] for i in range(d * m)]
    boundaries = zlinalg.hstack(delta0, _block_diag_relations(a, m), rows=d * m)
    return generated_subgroup(cocycles, k, boundaries, d + s * m)


def coinvariants(a: FgAbGroup, autos: Sequence[AbHom]) -> FgAbGroup:
    """``A / <x - g x>`` over the given automorphisms."""
    for h in autos:
        if h.source != a or h.target != a or not abgroup.is_automorphism(h):
            raise ValueError(f"coinvariants need automorphisms of {a}")
    d = a.ngens
    blocks = []
    for h in autos:
        blocks.append([[h.matrix[p][q] - (1 if p == q else 0) for q in range(d)] for p in range(d)])
    blocks.append(a.relations())
    g, _ = abgroup.from_presentation(d, zlinalg.hstack(*blocks, rows=d))
    return g


@dataclass(frozen=True)
class DualityCheck:
    lhs: FgAbGroup
    rhs: FgAbGroup

    @property
    def agree(self) -> bool:
        return self.lhs == self.rhs


def duality_check(x: TwoComplex, sys: LocalSystem) -> DualityCheck:
    """Compare H^2 with the coinvariants of the orientation-twisted module.

    The twisted module has monodromy ``w_X(g) * rho(g)``; on an orientable
    surface this is just ``rho``.
    """
    if x.orientation is None:
        raise ValueError(f"{x.name} is not a closed surface with known orientation character")
    if sys.complex != x:
        raise ValueError("local system lives on a different complex")
    a = sys.coeff
    autos = []
    for w, h in zip(x.orientation, sys.rho):
        autos.append(AbHom.from_matrix(a, a, [[-v for v in row] for row in h.matrix]) if w % 2 else h)
    return DualityCheck(h2(sys).group, coinvariants(a, autos))
