"""Homotopy descriptors (pi_0 G, pi_1 G, conjugation action) of Lie groups."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Mapping, Sequence, Union

from . import abgroup
from .abgroup import AbElement, AbHom, FgAbGroup

# An action entry is either an integer matrix on the canonical generators of
# pi_1, or (finite pi_1 only) a table listing the image of every element in
# enumeration order, which validation converts to a matrix.
ActionEntry = Union[tuple[tuple[int, ...], ...], "ElementTable"]


@dataclass(frozen=True)
class ElementTable:
    images: tuple[tuple[int, ...], ...]


class DescriptorError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class GroupDescriptor:
    name: str
    pi0: FgAbGroup
    pi1: FgAbGroup
    action: tuple[ActionEntry, ...]
    notes: str = ""

    def action_homs(self) -> list[AbHom]:
        """Action of each pi_0 generator as an automorphism; assumes a valid descriptor."""
        return [_entry_to_hom(self.pi1, e) for e in self.action]

    def normalized(self) -> "GroupDescriptor":
        """Same descriptor with every action entry as a matrix."""
        return replace(self, action=tuple(h.matrix for h in self.action_homs()))

    @property
    def is_trivial_action(self) -> bool:
        ident = AbHom.identity(self.pi1)
        return all(h == ident for h in self.action_homs())


def _entry_to_hom(pi1: FgAbGroup, entry: ActionEntry) -> AbHom:
    if isinstance(entry, ElementTable):
        elems = list(abgroup.enumerate_elements(pi1))
        table = dict(zip((e.coords for e in elems), entry.images))
        images = []
        for j in range(pi1.ngens):
            gen = [0] * pi1.ngens
            gen[j] = 1
            images.append(table[pi1.reduce(gen)])
        return AbHom.from_images(pi1, pi1, images)
    return AbHom.from_matrix(pi1, pi1, [list(r) for r in entry])


def _table_violations(pi1: FgAbGroup, entry: ElementTable, label: str) -> list[str]:
    if not pi1.is_finite:
        return [f"{label}: element tables need a finite pi1"]
    elems = list(abgroup.enumerate_elements(pi1))
    if len(entry.images) != len(elems):
        return [f"{label}: table has {len(entry.images)} entries, pi1 has {len(elems)} elements"]
    table = {}
    for e, img in zip(elems, entry.images):
        if len(img) != pi1.ngens:
            return [f"{label}: table entry {img} has the wrong length"]
        table[e.coords] = pi1.reduce(img)
    for x in elems:
        for y in elems:
            if table[(x + y).coords] != pi1.reduce([a + b for a, b in zip(table[x.coords], table[y.coords])]):
                return [f"{label}: not a homomorphism of {pi1} (image of {x}+{y})"]
    return []


def validate(d: GroupDescriptor) -> list[str]:
    """List of violated invariants; empty means the descriptor is usable."""
    out: list[str] = []
    if not d.pi0.is_finite:
        out.append(f"pi0 = {d.pi0} must be finite")
    if len(d.action) != d.pi0.ngens:
        out.append(f"expected {d.pi0.ngens} action entries (one per pi0 generator), got {len(d.action)}")
        return out
    homs: list[AbHom] = []
    for i, entry in enumerate(d.action):
        label = f"action of pi0 generator {i}"
        if isinstance(entry, ElementTable):
            bad = _table_violations(d.pi1, entry, label)
            if bad:
                out += bad
                continue
        else:
            if len(entry) != d.pi1.ngens or any(len(r) != d.pi1.ngens for r in entry):
                out.append(f"{label}: matrix must be {d.pi1.ngens}x{d.pi1.ngens}")
                continue
        h = _entry_to_hom(d.pi1, entry)
        if not h.is_well_defined():
            out.append(f"{label}: does not respect the relations of {d.pi1}")
            continue
        if not abgroup.is_automorphism(h):
            out.append(f"{label}: not an automorphism of {d.pi1}")
            continue
        homs.append(h)
    if len(homs) != len(d.action) or out:
        return out
    ident = AbHom.identity(d.pi1)
    for i, (h, f) in enumerate(zip(homs, d.pi0.torsion)):
        if abgroup.hom_power(h, f) != ident:
            out.append(f"action of pi0 generator {i} does not have order dividing {f}")
    for i in range(len(homs)):
        for j in range(i + 1, len(homs)):
            if homs[i].compose(homs[j]) != homs[j].compose(homs[i]):
                out.append(f"actions of pi0 generators {i} and {j} do not commute")
    return out


def check(d: GroupDescriptor) -> GroupDescriptor:
    """Return ``d`` unchanged or raise :class:`DescriptorError`."""
    bad = validate(d)
    if bad:
        raise DescriptorError(bad)
    return d


def psi(d: GroupDescriptor, a: AbElement) -> AbHom:
    """Automorphism of pi_1 by which ``a`` in pi_0 acts."""
    if a.group != d.pi0:
        raise ValueError(f"element of {a.group} is not in pi0 = {d.pi0}")
    out = AbHom.identity(d.pi1)
    for h, k in zip(d.action_homs(), a.coords):
        out = abgroup.hom_power(h, k).compose(out)
    return out


def _matrix(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in rows)


Z2 = abgroup.cyclic(2)
Z = abgroup.cyclic(0)
TRIVIAL = FgAbGroup()


def o2() -> GroupDescriptor:
    return GroupDescriptor("O(2)", Z2, Z, (_matrix([[-1]]),),
                           notes="reflections reverse the generating loop of SO(2)")


def o_n(n: int) -> GroupDescriptor:
    if n < 3:
        raise ValueError("O(n) with trivial action needs n >= 3; use O(2)")
    return GroupDescriptor(f"O({n})", Z2, Z2, (_matrix([[1]]),))


def so_n(n: int) -> GroupDescriptor:
    if n < 3:
        raise ValueError("SO(n) with pi1 = Z/2 needs n >= 3")
    return GroupDescriptor(f"SO({n})", TRIVIAL, Z2, ())


def u_n(n: int) -> GroupDescriptor:
    if n < 1:
        raise ValueError("U(n) needs n >= 1")
    return GroupDescriptor(f"U({n})", TRIVIAL, Z, ())


def po_n(n: int) -> GroupDescriptor:
    """Projective orthogonal group, ``n`` even and at least 4.

    ``n = 2 mod 4``: pi1 = Z/4 generated by the volume element w, acted on by
    negation.  ``n = 0 mod 4``: pi1 = Z/2 + Z/2 with basis (e, w), e the class
    of -1, and the action fixes e and sends w to w + e = -w.
    """
    if n < 4 or n % 2:
        raise ValueError(f"PO({n}) is disconnected only for even n >= 4")
    if n % 4 == 2:
        if n < 6:
            raise ValueError(f"PO({n}) is not available")
        return GroupDescriptor(f"PO({n})", Z2, abgroup.cyclic(4), (_matrix([[-1]]),),
                               notes="Z/4 = {0, w, 1=2w, -w}; pi0 swaps +-w")
    return GroupDescriptor(f"PO({n})", Z2, FgAbGroup((2, 2)), (_matrix([[1, 1], [0, 1]]),),
                           notes="basis (e, w); pi0 fixes e and sends w to w + e")


BUILTIN_FAMILIES = {
    "O(2)": "pi0 = Z/2, pi1 = Z, sign change",
    "O(n)": "n >= 3: pi0 = Z/2, pi1 = Z/2, trivial action",
    "SO(n)": "n >= 3: connected, pi1 = Z/2",
    "U(n)": "n >= 1: connected, pi1 = Z",
    "PO(n)": "n even >= 4 (PO(4) allowed, n = 2 mod 4 needs n >= 6): pi0 = Z/2; "
             "pi1 = Z/4 (n = 2 mod 4, negation) or Z/2 + Z/2 (n = 0 mod 4, w -> w + e)",
}

_NAME = re.compile(r"^\s*(O|SO|U|PO)\s*\(\s*(\d+)\s*\)\s*$", re.IGNORECASE)


def builtin(name: str) -> GroupDescriptor:
    m = _NAME.match(name)
    if not m:
        raise ValueError(f"unknown group {name!r}")
    family, n = m.group(1).upper(), int(m.group(2))
    if family == "O":
        d = o2() if n == 2 else o_n(n)
    elif family == "SO":
        d = so_n(n)
    elif family == "U":
        d = u_n(n)
    else:
        d = po_n(n)
    return check(d)


def from_mapping(data: Mapping) -> GroupDescriptor:
    """Inline descriptor: ``{pi0: {torsion, rank}, pi1: {...}, action: {"g0": matrix}}``.

    An action value may also be ``{"table": [[...], ...]}`` listing images of
    all elements of a finite pi1 in enumeration order.
    """
    def group(g: Mapping) -> FgAbGroup:
        return FgAbGroup(tuple(g.get("torsion", ())), int(g.get("rank", 0)))

    pi0 = group(data.get("pi0", {}))
    pi1 = group(data.get("pi1", {}))
    raw = data.get("action", {}) or {}
    entries: list[ActionEntry] = []
    for i in range(pi0.ngens):
        key = f"g{i}"
        if key not in raw:
            raise ValueError(f"action missing entry {key!r}")
        v = raw[key]
        if isinstance(v, Mapping):
            entries.append(ElementTable(tuple(tuple(x) for x in v["table"])))
        else:
            entries.append(_matrix(v))
    extra = set(raw) - {f"g{i}" for i in range(pi0.ngens)}
    if extra:
        raise ValueError(f"action has entries for unknown pi0 generators {sorted(extra)}")
    return GroupDescriptor(str(data.get("name", "custom")), pi0, pi1, tuple(entries))


def to_mapping(d: GroupDescriptor) -> dict:
    """Inverse of :func:`from_mapping`; element tables are emitted as matrices."""
    def group(g: FgAbGroup) -> dict:
        return {"torsion": list(g.torsion), "rank": g.free_rank}

    return {
        "name": d.name,
        "pi0": group(d.pi0),
        "pi1": group(d.pi1),
        "action": {f"g{i}": [list(r) for r in h.matrix] for i, h in enumerate(d.action_homs())},
    }
