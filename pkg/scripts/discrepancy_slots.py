"""Inspect the mu1 = w_X slots on nonorientable surfaces.

For O(2) the twisted H^2 is infinite, so it is checked against the diagonal
coinvariants; for PO(n), n = 2 mod 4, against brute-force enumeration.

    python3 scripts/discrepancy_slots.py --crosscaps 4
"""

import argparse
from dataclasses import dataclass, field

from gbundles import classify as cl, cohomology as co, complex as cx, groupdata as gd, oracle, reference


@dataclass
class SlotConfig:
    max_crosscaps: int = 3
    groups: list[str] = field(default_factory=lambda: ["O(2)", "PO(4)", "PO(6)", "PO(10)"])
    max_reps: int = 5


def inspect(x, d, cfg: SlotConfig) -> str:
    w = tuple((1,) * d.pi0.ngens for _ in range(x.num_gens))
    mu = cl.mu1_from_images(x, d, w)
    s = co.local_system(x, d, mu.hom)
    r = cl.classify(x, d, mu, cfg.max_reps)
    dc = co.duality_check(x, s)
    parts = [f"{x.name:16s} {d.name:7s} H^2 = {str(r.h2.group):6s} orbits {r.orbit_count}",
             f"reps {[e.coords for e in r.orbit_reps]}",
             f"coinvariants {dc.rhs}"]
    if d.pi1.is_finite:
        b = oracle.brute_h2(s)
        parts.append(f"brute |H^2| {b.cardinality}, orbits {oracle.brute_cochain_orbits(s, d, b).count}")
    exp = reference.expected(x, d, mu.is_zero)
    if exp is not None:
        parts.append(f"closed form {exp.formula}: {exp.count}, H^2 = {exp.h2}")
    return "  ".join(parts)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--crosscaps", type=int, default=SlotConfig.max_crosscaps)
    p.add_argument("--groups", nargs="*")
    a = p.parse_args(argv)
    cfg = SlotConfig(a.crosscaps, a.groups or SlotConfig().groups)
    for k in range(1, cfg.max_crosscaps + 1):
        for name in cfg.groups:
            print(inspect(cx.nonorientable_surface(k), gd.builtin(name), cfg))


if __name__ == "__main__":
    main()
