"""Command-line front end.

    gbundles classify --complex orientable:1 --group "PO(4)"
    gbundles h2 --complex nonorientable:2 --group "O(2)" --mu1 1,1
    gbundles check --scope full
    gbundles list-builtins

Exit codes: 0 ok, 2 malformed input, 3 invalid descriptor or mu1,
4 report emitted but it disagrees with a closed-form reference value.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import yaml

from . import abgroup, classify as cls, cohomology, oracle, reference
from .complex import TwoComplex, format_word, from_builtin, parse_word
from .groupdata import (BUILTIN_FAMILIES, DescriptorError, GroupDescriptor, builtin, from_mapping,
                        to_mapping, validate)

EXIT_OK, EXIT_SCHEMA, EXIT_INVALID, EXIT_WARN = 0, 2, 3, 4


class SchemaError(ValueError):
    pass


class ValidationError(ValueError):
    pass


@dataclass
class JobSpec:
    complex: TwoComplex
    group: GroupDescriptor
    mu1: list[list[int]] | None = None
    max_reps: int = cls.DEFAULT_MAX_REPS
    format: str = "table"
    options: dict = field(default_factory=dict)


# -- parsing -----------------------------------------------------------------

def _load_structured(text: str) -> Any:
    """Inline YAML/JSON, or a path to a file holding it."""
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaError(f"cannot parse {text!r}: {exc}") from None


def complex_from_mapping(data: Any) -> TwoComplex:
    if not isinstance(data, dict):
        raise SchemaError("inline complex must be a mapping with generators and relators")
    try:
        names = [str(n) for n in data.get("generators", [])]
        relators = tuple(parse_word(str(r), names) for r in data.get("relators", []))
        orient = data.get("orientation")
        return TwoComplex(len(names), relators, name=str(data.get("name", "custom")),
                          gen_names=tuple(names),
                          orientation=None if orient is None else tuple(int(v) % 2 for v in orient))
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"bad complex: {exc}") from None


def complex_to_mapping(x: TwoComplex) -> dict:
    out = {
        "name": x.name,
        "generators": list(x.gen_names),
        "relators": [format_word(r, x.gen_names) for r in x.relators],
    }
    if x.orientation is not None:
        out["orientation"] = list(x.orientation)
    return out


def parse_complex(value: Any) -> TwoComplex:
    if isinstance(value, str):
        try:
            return from_builtin(value)
        except ValueError:
            pass
        value = _load_structured(value)
        if isinstance(value, str):
            raise SchemaError(f"unknown complex {value!r}")
    return complex_from_mapping(value)


def parse_group(value: Any) -> GroupDescriptor:
    """Built-in name or inline descriptor; validation is left to the caller."""
    if isinstance(value, str):
        try:
            return builtin(value)
        except DescriptorError:
            raise
        except ValueError as exc:
            if "(" in value and not value.lstrip().startswith("{"):
                raise SchemaError(str(exc)) from None
        value = _load_structured(value)
        if isinstance(value, str):
            raise SchemaError(f"unknown group {value!r}")
    if not isinstance(value, dict):
        raise SchemaError("inline group must be a mapping with pi0, pi1, action")
    try:
        return from_mapping(value)
    except (ValueError, TypeError, KeyError) as exc:
        raise SchemaError(f"bad group descriptor: {exc}") from None


def parse_mu1(value: Any, x: TwoComplex, d: GroupDescriptor) -> list[list[int]]:
    """``"1,0"`` (one coordinate per generator) or a list of coordinate lists."""
    if isinstance(value, str):
        text = value.strip()
        if text.startswith("["):
            value = _load_structured(text)
        else:
            parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
            try:
                value = [[int(p)] for p in parts]
            except ValueError:
                raise SchemaError(f"bad mu1 {text!r}") from None
    if not isinstance(value, list):
        raise SchemaError("mu1 must be a list of generator images")
    out = []
    for v in value:
        v = v if isinstance(v, list) else [v]
        if len(v) != d.pi0.ngens or not all(isinstance(c, int) for c in v):
            raise SchemaError(f"mu1 image {v} needs {d.pi0.ngens} integer coordinates")
        out.append(list(v))
    if len(out) != x.num_gens:
        raise SchemaError(f"mu1 needs {x.num_gens} generator images, got {len(out)}")
    return out


def load_job(args: argparse.Namespace) -> JobSpec:
    data: dict = {}
    if getattr(args, "spec", None):
        loaded = _load_structured(args.spec)
        if not isinstance(loaded, dict):
            raise SchemaError("job spec must be a mapping")
        data = loaded
    complex_arg = args.complex if args.complex is not None else data.get("complex")
    group_arg = args.group if args.group is not None else data.get("group")
    if complex_arg is None or group_arg is None:
        raise SchemaError("both a complex and a group are required")
    x = parse_complex(complex_arg)
    d = parse_group(group_arg)
    bad = _violations(d)
    if bad:
        raise ValidationError("invalid group descriptor: " + "; ".join(bad))
    d = d.normalized()
    options = dict(data.get("options", {}) or {})
    mu1_arg = args.mu1 if getattr(args, "mu1", None) is not None else data.get("mu1")
    mu1 = parse_mu1(mu1_arg, x, d) if mu1_arg is not None else None
    max_reps = args.max_reps if getattr(args, "max_reps", None) is not None else int(options.get("max_reps", cls.DEFAULT_MAX_REPS))
    fmt = args.format if getattr(args, "format", None) is not None else options.get("format", "table")
    if fmt not in ("table", "machine"):
        raise SchemaError(f"unknown format {fmt!r}")
    return JobSpec(x, d, mu1, max_reps, fmt, options)


def _violations(d: GroupDescriptor) -> list[str]:
    try:
        return validate(d)
    except (ValueError, TypeError, KeyError) as exc:
        return [str(exc)]


def job_to_mapping(job: JobSpec) -> dict:
    out: dict = {"complex": complex_to_mapping(job.complex), "group": to_mapping(job.group)}
    if job.mu1 is not None:
        out["mu1"] = job.mu1
    out["options"] = {"max_reps": job.max_reps, "format": job.format}
    return out


def _mu1_classes(job: JobSpec) -> list[cls.Mu1Class]:
    if job.mu1 is None:
        return cls.enumerate_mu1(job.complex, job.group)
    try:
        return [cls.mu1_from_images(job.complex, job.group, job.mu1)]
    except ValueError as exc:
        raise ValidationError(f"mu1 rejected: {exc}") from None


# -- reporting ---------------------------------------------------------------

def _invariant_factors(g: abgroup.FgAbGroup) -> list[int]:
    return list(g.torsion) + [0] * g.free_rank


def _fmt_images(images: Sequence[Sequence[int]], x: TwoComplex) -> str:
    if not images:
        return "0"
    return " ".join(f"{n}->{','.join(map(str, v))}" for n, v in zip(x.gen_names, images))


def _fmt_rep(e: abgroup.AbElement) -> str:
    return ",".join(map(str, e.coords)) if e.coords else "0"


def classification_report(job: JobSpec, result: cls.Classification) -> dict:
    entries = []
    for r in result.entries:
        labels = reference.mu2_labels(job.complex, job.group, r.mu1, r.orbit_reps)
        entry = {
            "index": r.mu1.index,
            "mu1": [list(v) for v in r.mu1.generator_images],
            "h2": str(r.h2.group),
            "h2_invariant_factors": _invariant_factors(r.h2.group),
            "orbit_count": r.orbit_count,
            "reps": [list(e.coords) for e in r.orbit_reps],
            "orbit_sizes": list(r.orbit_sizes),
            "warnings": list(r.warnings),
        }
        if labels is not None:
            entry["mu2_labels"] = labels
        entries.append(entry)
    return {
        "complex": job.complex.name,
        "group": job.group.name,
        "entries": entries,
        "total": result.total,
    }


def render_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def classification_table(job: JobSpec, result: cls.Classification) -> str:
    rows = []
    for r in result.entries:
        reps = " ".join(_fmt_rep(e) for e in r.orbit_reps)
        if r.is_infinite:
            reps += " ..."
        rows.append([str(r.mu1.index), _fmt_images(r.mu1.generator_images, job.complex),
                     str(r.h2.group), str(r.orbit_count), reps])
    out = [f"complex: {job.complex.name}   group: {job.group.name}   "
           f"pi0 = {job.group.pi0}   pi1 = {job.group.pi1}",
           render_table(["#", "mu1", "H^2", "classes", "reps"], rows),
           f"total: {result.total}"]
    out += result.warnings
    return "\n".join(out)


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def to_json(payload: Any) -> str:
    """Indented JSON with innermost arrays kept on one line."""
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    while True:
        new = _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
        if new == text:
            return text
        text = new


def _emit(payload: dict, text: str, fmt: str) -> None:
    print(to_json(payload) if fmt == "machine" else text)


# -- commands ----------------------------------------------------------------

def cmd_classify(job: JobSpec) -> int:
    entries = [cls.classify(job.complex, job.group, m, job.max_reps) for m in _mu1_classes(job)]
    result = cls.Classification(job.complex, job.group, entries)
    _emit(classification_report(job, result), classification_table(job, result), job.format)
    return EXIT_WARN if result.warnings else EXIT_OK


def cmd_h2(job: JobSpec) -> int:
    entries, rows, warnings = [], [], []
    for m in _mu1_classes(job):
        sys_ = cohomology.local_system(job.complex, job.group, m.hom)
        g0, g1, g2 = cohomology.h0(sys_), cohomology.h1(sys_), cohomology.h2(sys_).group
        w = reference.compare_h2(job.complex, job.group, m, g2)
        warnings += w
        entries.append({
            "index": m.index,
            "mu1": [list(v) for v in m.generator_images],
            "h0_invariant_factors": _invariant_factors(g0),
            "h1_invariant_factors": _invariant_factors(g1),
            "h2_invariant_factors": _invariant_factors(g2),
            "warnings": w,
        })
        rows.append([str(m.index), _fmt_images(m.generator_images, job.complex), str(g0), str(g1), str(g2)])
    payload = {"complex": job.complex.name, "group": job.group.name, "entries": entries}
    text = "\n".join([f"complex: {job.complex.name}   group: {job.group.name}",
                      render_table(["#", "mu1", "H^0", "H^1", "H^2"], rows)] + warnings)
    _emit(payload, text, job.format)
    return EXIT_WARN if warnings else EXIT_OK


def _check_complexes(scope: str) -> list[TwoComplex]:
    names = ["sphere", "orientable:1", "nonorientable:1", "nonorientable:2", "nonorientable:3"]
    if scope == "full":
        names += ["orientable:2", "orientable:3", "nonorientable:4"]
    return [from_builtin(n) for n in names]


def _check_groups(scope: str) -> list[GroupDescriptor]:
    names = ["O(2)", "O(3)", "SO(3)", "U(1)", "PO(4)", "PO(6)"]
    if scope == "full":
        names += ["PO(8)", "PO(10)", "O(5)", "U(3)"]
    return [builtin(n) for n in names]


def run_checks(complexes: Sequence[TwoComplex], groups: Sequence[GroupDescriptor],
               out=None) -> tuple[int, int, int]:
    """Oracle and duality sweep; returns ``(passed, failed, skipped)``."""
    out = out or sys.stdout
    passed = failed = skipped = 0
    for x in complexes:
        for d in groups:
            for m in cls.enumerate_mu1(x, d):
                sys_ = cohomology.local_system(x, d, m.hom)
                tag = f"{x.name} {d.name} mu1={_fmt_images(m.generator_images, x)}"
                h = cohomology.h2(sys_)
                if x.orientation is not None:
                    dc = cohomology.duality_check(x, sys_)
                    if dc.agree:
                        passed += 1
                    else:
                        failed += 1
                        print(f"FAIL duality {tag}: H^2 = {dc.lhs}, coinvariants = {dc.rhs}", file=out)
                if not d.pi1.is_finite:
                    continue
                try:
                    brute = oracle.brute_h2(sys_)
                    orbits = oracle.brute_cochain_orbits(sys_, d, brute)
                except oracle.TooLarge as exc:
                    skipped += 1
                    print(f"SKIP oracle {tag}: {exc}", file=out)
                    continue
                res = cls.classify(x, d, m)
                ok = (brute.cardinality == h.group.order()
                      and brute.orders == oracle.element_orders(h.group)
                      and orbits.count == res.orbit_count)
                if ok:
                    passed += 1
                else:
                    failed += 1
                    print(f"FAIL oracle {tag}: brute |H^2| = {brute.cardinality}, {orbits.count} orbits; "
                          f"computed {h.group}, {res.orbit_count} orbits", file=out)
    return passed, failed, skipped


def cmd_check(args: argparse.Namespace) -> int:
    complexes = [parse_complex(args.complex)] if args.complex else _check_complexes(args.scope)
    if args.group:
        d = parse_group(args.group)
        bad = _violations(d)
        if bad:
            raise ValidationError("invalid group descriptor: " + "; ".join(bad))
        groups = [d]
    else:
        groups = _check_groups(args.scope)
    passed, failed, skipped = run_checks(complexes, groups)
    print(f"check: {passed} passed, {failed} failed, {skipped} skipped")
    return EXIT_OK if failed == 0 else 1


def cmd_list_builtins() -> int:
    print("groups:")
    for name, note in BUILTIN_FAMILIES.items():
        print(f"  {name:8s} {note}")
    print("complexes:")
    print("  sphere           S^2 (no 1-cells, one 2-cell)")
    print("  orientable:g     closed oriented surface of genus g (torus = orientable:1)")
    print("  nonorientable:k  connected sum of k projective planes (rp2, klein)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gbundles", description="Classify principal G-bundles over 2-complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    def job_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--complex", help="sphere | orientable:g | nonorientable:k | inline YAML/JSON | file")
        sp.add_argument("--group", help='built-in name such as "PO(4)", inline descriptor, or file')
        sp.add_argument("--mu1", help='generator images, e.g. "1,0" or "[[1],[0]]"')
        sp.add_argument("--spec", help="job spec file (complex, group, mu1, options)")
        sp.add_argument("--format", choices=["table", "machine"])
        sp.add_argument("--emit-spec", action="store_true", help="print the normalized job spec and exit")

    c = sub.add_parser("classify", help="orbit sets H^2/pi0 for every (or one) mu1")
    job_args(c)
    c.add_argument("--max-reps", type=int, help=f"reps listed for infinite orbit sets (default {cls.DEFAULT_MAX_REPS})")
    h = sub.add_parser("h2", help="H^0, H^1, H^2 with twisted coefficients")
    job_args(h)
    k = sub.add_parser("check", help="brute-force and duality cross-checks")
    k.add_argument("--scope", choices=["quick", "full"], default="quick")
    k.add_argument("--complex")
    k.add_argument("--group")
    sub.add_parser("list-builtins", help="list built-in groups and complexes")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list-builtins":
            return cmd_list_builtins()
        if args.command == "check":
            return cmd_check(args)
        job = load_job(args)
        if args.emit_spec:
            print(to_json(job_to_mapping(job)))
            return EXIT_OK
        if args.command == "classify":
            return cmd_classify(job)
        return cmd_h2(job)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (ValidationError, DescriptorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
