"""One-vertex presentation 2-complexes and free differential calculus.

A complex has ``m`` 1-cells (generators) and one 2-cell per relator word.
Letters of a word are signed 1-based generator indices.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import abgroup, zlinalg
from .abgroup import AbHom, FgAbGroup

Word = tuple[int, ...]


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


class GroupRingElement:
    """Finite Z-linear combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, int] | Iterable[tuple[Word, int]] = ()):
        acc: dict[Word, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, dict) else terms
        for w, c in items:
            acc[free_reduce(w)] += c
        self.terms = {w: c for w, c in sorted(acc.items()) if c}

    @classmethod
    def word(cls, w: Sequence[int], coeff: int = 1) -> "GroupRingElement":
        return cls([(tuple(w), coeff)])

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(
            (u + v, a * b) for u, a in self.terms.items() for v, b in other.terms.items()
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{list(w)}" for w, c in self.terms.items())


def fox_derivative(word: Sequence[int], i: int) -> GroupRingElement:
    """``d word / d x_i`` via the product rule, left to right.

    Uses ``d(x_i)/dx_i = 1`` and ``d(x_i^-1)/dx_i = -x_i^-1``; the coefficient
    of each prefix is collected before free reduction.
    """
    if i < 1:
        raise IndexError(f"generator index {i} out of range")
    terms: list[tuple[Word, int]] = []
    prefix: list[int] = []
    for x in word:
        if x == i:
            terms.append((tuple(prefix), 1))
        elif x == -i:
            terms.append((tuple(prefix) + (-i,), -1))
        prefix.append(x)
    return GroupRingElement(terms)


@dataclass(frozen=True)
class TwoComplex:
    num_gens: int
    relators: tuple[Word, ...]
    name: str = "X"
    gen_names: tuple[str, ...] = ()
    # Images of the generators in Z/2 under the orientation character, for
    # closed surfaces; None when the complex is not known to be a surface.
    orientation: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        if not self.gen_names:
            object.__setattr__(self, "gen_names", tuple(f"x{i + 1}" for i in range(self.num_gens)))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        if len(self.gen_names) != self.num_gens:
            raise ValueError("one name per generator required")
        if len(set(self.gen_names)) != self.num_gens:
            raise ValueError(f"duplicate generator names in {self.gen_names}")
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.num_gens:
                    raise ValueError(f"letter {x} out of range for {self.num_gens} generators")
        if self.orientation is not None and len(self.orientation) != self.num_gens:
            raise ValueError("orientation character needs one value per generator")

    @property
    def num_relators(self) -> int:
        return len(self.relators)

    def euler_characteristic(self) -> int:
        return 1 - self.num_gens + self.num_relators

    def fox_matrix(self) -> list[list[GroupRingElement]]:
        """Entry ``[j][i]`` is ``d r_j / d x_i``."""
        return [[fox_derivative(r, i + 1) for i in range(self.num_gens)] for r in self.relators]

    def exponent_sums(self) -> zlinalg.Matrix:
        """``m x n``: entry ``(i, j)`` is the exponent sum of ``x_i`` in ``r_j``."""
        mat = zlinalg.zeros(self.num_gens, self.num_relators)
        for j, r in enumerate(self.relators):
            for x in r:
                mat[abs(x) - 1][j] += 1 if x > 0 else -1
        return mat

    def format_word(self, word: Sequence[int]) -> str:
        return format_word(word, self.gen_names)

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self.gen_names)


def format_word(word: Sequence[int], names: Sequence[str]) -> str:
    return " ".join(names[x - 1] if x > 0 else f"{names[-x - 1]}^-1" for x in word)


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse whitespace-separated tokens ``name`` or ``name^-1``."""
    index = {n: i + 1 for i, n in enumerate(names)}
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            base, sign = tok[:-3], -1
        elif tok.endswith("^1"):
            base, sign = tok[:-2], 1
        else:
            base, sign = tok, 1
        if base not in index:
            raise ValueError(f"unknown generator {base!r} in word {text!r}")
        out.append(sign * index[base])
    return tuple(out)


def h1(x: TwoComplex) -> tuple[FgAbGroup, zlinalg.Cokernel]:
    """First homology: cokernel of the exponent-sum matrix."""
    return abgroup.from_presentation(x.num_gens, x.exponent_sums())


def sphere() -> TwoComplex:
    return TwoComplex(0, ((),), name="sphere", orientation=())


def orientable_surface(g: int) -> TwoComplex:
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if g == 0:
        return sphere()
    names = []
    rel: list[int] = []
    for k in range(g):
        a, b = 2 * k + 1, 2 * k + 2
        names += [f"a{k + 1}", f"b{k + 1}"]
        rel += [a, b, -a, -b]
    return TwoComplex(2 * g, (tuple(rel),), name=f"orientable:{g}",
                      gen_names=tuple(names), orientation=(0,) * (2 * g))


def nonorientable_surface(k: int) -> TwoComplex:
    if k < 1:
        raise ValueError("nonorientable surfaces need k >= 1 crosscaps")
    rel = tuple(x for i in range(1, k + 1) for x in (i, i))
    return TwoComplex(k, (rel,), name=f"nonorientable:{k}",
                      gen_names=tuple(f"a{i}" for i in range(1, k + 1)), orientation=(1,) * k)


def torus() -> TwoComplex:
    return orientable_surface(1)


def projective_plane() -> TwoComplex:
    return nonorientable_surface(1)


def klein_bottle() -> TwoComplex:
    return nonorientable_surface(2)


def from_builtin(text: str) -> TwoComplex:
    """``sphere``, ``orientable:g``, ``nonorientable:k`` (plus a few aliases)."""
    t = text.strip().lower()
    aliases = {"torus": "orientable:1", "rp2": "nonorientable:1", "klein": "nonorientable:2"}
    t = aliases.get(t, t)
    if t in ("sphere", "s2"):
        return sphere()
    kind, _, param = t.partition(":")
    try:
        n = int(param)
    except ValueError:
        raise ValueError(f"unknown complex {text!r}") from None
    if kind == "orientable":
        return orientable_surface(n)
    if kind == "nonorientable":
        return nonorientable_surface(n)
    raise ValueError(f"unknown complex {text!r}")


def orientation_character(x: TwoComplex) -> AbHom | None:
    """``w_X`` as a homomorphism ``H_1 X -> Z/2``; ``None`` for non-surfaces."""
    if x.orientation is None:
        return None
    h, ck = h1(x)
    z2 = abgroup.cyclic(2)
    images = [[sum(x.orientation[a] * ck.lift[a][j] for a in range(x.num_gens))] for j in range(h.ngens)]
    hom = AbHom.from_images(h, z2, images)
    if not hom.is_well_defined():
        raise ValueError(f"orientation data of {x.name} does not vanish on relators")
    return hom


def hom_on_generators(x: TwoComplex, hom: AbHom) -> list[tuple[int, ...]]:
    """Images of the generators ``x_i`` under a homomorphism out of ``H_1 X``."""
    _, ck = h1(x)
    return [hom.apply_coords([row[i] for row in ck.projection]) for i in range(x.num_gens)]


def hom_from_generator_images(x: TwoComplex, target: FgAbGroup,
                              images: Sequence[Sequence[int]]) -> AbHom:
    """Homomorphism ``H_1 X -> target`` from images of the generators.

    Raises ``ValueError`` unless every relator maps to zero.
    """
    if len(images) != x.num_gens:
        raise ValueError(f"{x.name} has {x.num_gens} generators, got {len(images)} images")
    imgs = [target.reduce(v) for v in images]
    es = x.exponent_sums()
    for j, r in enumerate(x.relators):
        total = target.reduce([sum(es[i][j] * imgs[i][c] for i in range(x.num_gens))
                               for c in range(target.ngens)])
        if any(total):
            raise ValueError(f"relator {x.format_word(r)!r} does not map to zero")
    h, ck = h1(x)
    hom_images = [[sum(imgs[a][c] * ck.lift[a][j] for a in range(x.num_gens)) for c in range(target.ngens)]
                  for j in range(h.ngens)]
    return AbHom.from_images(h, target, hom_images)
