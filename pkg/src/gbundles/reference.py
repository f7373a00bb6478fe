"""Published closed-form answers for built-in (surface, group) pairs.

The table is consulted after each computation; disagreements are reported as
WARN diagnostics and never override the computed values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abgroup import FgAbGroup
from .complex import TwoComplex, from_builtin
from .groupdata import GroupDescriptor, builtin

INFINITE = "INFINITE"


@dataclass(frozen=True)
class Expected:
    count: int | str
    h2: FgAbGroup
    formula: str


def _surface(x: TwoComplex) -> tuple[str, int] | None:
    if x.name == "sphere":
        found = ("orientable", 0)
    else:
        kind, _, n = x.name.partition(":")
        if kind not in ("orientable", "nonorientable") or not n.isdigit():
            return None
        found = (kind, int(n))
    try:
        same = from_builtin(x.name) == x
    except ValueError:
        return None
    return found if same else None


def _builtin_group(d: GroupDescriptor) -> GroupDescriptor | None:
    try:
        ref = builtin(d.name)
    except ValueError:
        return None
    same = (ref.pi0, ref.pi1, ref.action_homs()) == (d.pi0, d.pi1, d.action_homs())
    return ref if same else None


def _mod2(g: FgAbGroup) -> FgAbGroup:
    """``g / 2g``."""
    n = sum(1 for f in g.torsion if f % 2 == 0) + g.free_rank
    return FgAbGroup((2,) * n)


def _size(g: FgAbGroup) -> int | str:
    n = g.order()
    return INFINITE if n is None else n


def expected(x: TwoComplex, d: GroupDescriptor, mu1_is_zero: bool) -> Expected | None:
    """Closed-form answer for one mu1 slot, or ``None`` when no formula applies."""
    surf = _surface(x)
    if surf is None or _builtin_group(d) is None:
        return None
    kind, _ = surf
    orientable = kind == "orientable"
    family = d.name.split("(")[0]
    z2 = FgAbGroup((2,))
    if family in ("SO", "U") or family == "O" and d.name != "O(2)":
        # connected or trivially acting pi0
        h2 = d.pi1 if orientable else _mod2(d.pi1)
        formula = "pi0^2g x pi1" if orientable else "(pi0)_2 x pi0^(k-1) x pi1/2pi1"
        if family != "O":
            formula = "H^2(X, pi1)"
        return Expected(_size(h2), h2, formula)
    if d.name == "O(2)":
        if orientable:
            if mu1_is_zero:
                return Expected(INFINITE, d.pi1, "{0} x Z_>=0")
            return Expected(2, z2, "(Z_2^2g minus 0) x Z_2")
        return Expected(2, z2, "Z_2^k x Z_2")
    if family == "PO":
        n = int(d.name[3:-1])
        if mu1_is_zero:
            if orientable or n % 4 == 0:
                return Expected(3, d.pi1 if orientable else _mod2(d.pi1), "{0} x {0,1,[w_n]}")
            return Expected(2, z2, "Z_2^k x Z_2")
        if orientable:
            return Expected(2, z2, "(Z_2^2g minus 0) x Z_2")
        return Expected(2, z2, "(Z_2^k minus 0) x Z_2" if n % 4 == 0 else "Z_2^k x Z_2")
    return None


def _describe(count: int | str, h2: FgAbGroup) -> str:
    return f"{count} classes, H^2 = {h2}"


def compare(x: TwoComplex, d: GroupDescriptor, mu1, result) -> list[str]:
    exp = expected(x, d, mu1.is_zero)
    if exp is None:
        return []
    got_h2 = result.h2.group
    if exp.count == result.orbit_count and exp.h2 == got_h2:
        return []
    images = ",".join("".join(map(str, v)) for v in mu1.generator_images)
    return [
        f"WARN {x.name} {d.name} mu1=({images}): closed form {exp.formula} gives "
        f"{_describe(exp.count, exp.h2)}; computed {_describe(result.orbit_count, got_h2)}"
    ]


def compare_h2(x: TwoComplex, d: GroupDescriptor, mu1, h2: FgAbGroup) -> list[str]:
    exp = expected(x, d, mu1.is_zero)
    if exp is None or exp.h2 == h2:
        return []
    images = ",".join("".join(map(str, v)) for v in mu1.generator_images)
    return [f"WARN {x.name} {d.name} mu1=({images}): closed form {exp.formula} gives "
            f"H^2 = {exp.h2}; computed H^2 = {h2}"]


def mu2_labels(x: TwoComplex, d: GroupDescriptor, mu1, reps) -> list[str] | None:
    """Characteristic-class names for orbit representatives, where a formula exists.

    Only built-in pairs whose computed slot matches the closed form get labels.
    """
    exp = expected(x, d, mu1.is_zero)
    if exp is None or not reps:
        return None
    group = reps[0].group
    if exp.h2 != group:
        return None
    family = d.name.split("(")[0]
    if d.name == "O(2)" and mu1.is_zero and group.free_rank:
        return [f"degree {e.coords[0]}" for e in reps]
    if family == "PO" and mu1.is_zero and exp.count == 3:
        # on the single 2-cell, H^2 is pi1 itself
        names = {(0,): "0", (2,): "1", (1,): "[w_n]", (3,): "[w_n]",
                 (0, 0): "0", (1, 0): "1", (0, 1): "[w_n]", (1, 1): "[w_n]"}
        return [names.get(e.coords, str(e)) for e in reps]
    if group == FgAbGroup((2,)):
        cls = "w2" if family in ("O", "SO") else "mu2"
        return [f"{cls}={e.coords[0]}" for e in reps]
    return None
