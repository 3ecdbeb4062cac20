"""Canonical JSON file formats for categories, colorings, functors,
quotient maps, and check reports.

Canonical form: UTF-8 JSON with sorted object keys, arrays in index
order, two-space indentation, and a trailing newline; two semantically
equal values serialize byte-identically, and load -> save -> load is the
identity.  Every document carries the version key "format": "chromoid/1".
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path
from typing import Iterable

from .coloring import Coloring, make_coloring
from .core import FinCategory, FinGroupoid, ValidationReport, as_category
from .errors import SerializationError
from .functors import ColoredFunctor
from .quotient import QuotientResult

__all__ = [
    "FORMAT",
    "canonical_dumps",
    "category_to_doc",
    "coloring_to_doc",
    "functor_to_doc",
    "report_to_doc",
    "quotient_maps_to_doc",
    "load_category",
    "save_category",
    "load_coloring",
    "save_coloring",
    "load_functor",
    "save_functor",
    "save_report",
    "load_report",
    "save_quotient_maps",
]

FORMAT = "chromoid/1"


def canonical_dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _write(path, doc) -> None:
    Path(path).write_text(canonical_dumps(doc), encoding="utf-8")


def _read(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SerializationError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SerializationError(f"{path}: top-level value must be an object")
    fmt = doc.get("format")
    if fmt != FORMAT:
        raise SerializationError(f"{path}: unsupported format {fmt!r} (expected {FORMAT!r})")
    return doc


def _require(doc: dict, key: str, path) -> object:
    if key not in doc:
        raise SerializationError(f"{path}: missing required key {key!r}")
    return doc[key]


# -- categories -------------------------------------------------------------


def category_to_doc(cat: FinCategory | FinGroupoid) -> dict:
    base = as_category(cat)
    doc = {
        "format": FORMAT,
        "objects": list(base.objects),
        "morphisms": [
            {"name": base.morphisms[f], "src": base.objects[base.src[f]], "tgt": base.objects[base.tgt[f]]}
            for f in range(base.n_morphisms)
        ],
        "identities": {
            base.objects[x]: base.morphisms[base.identity[x]] for x in range(base.n_objects)
        },
        "compose": [
            [base.morphisms[f], base.morphisms[g], base.morphisms[h]]
            for (f, g), h in sorted(base.compose.items())
        ],
    }
    if isinstance(cat, FinGroupoid):
        doc["inverse"] = {
            base.morphisms[f]: base.morphisms[cat.inverse[f]] for f in range(base.n_morphisms)
        }
    return doc


def save_category(cat: FinCategory | FinGroupoid, path) -> None:
    _write(path, category_to_doc(cat))


def load_category(path) -> FinCategory | FinGroupoid:
    """Load a category file; the result is a FinGroupoid when the file
    carries an "inverse" table."""
    doc = _read(path)
    objects = _require(doc, "objects", path)
    morphism_entries = _require(doc, "morphisms", path)
    identities = _require(doc, "identities", path)
    compose_entries = _require(doc, "compose", path)

    obj_index = {name: i for i, name in enumerate(objects)}
    if len(obj_index) != len(objects):
        raise SerializationError(f"{path}: duplicate object names")

    names, src, tgt = [], [], []
    for entry in morphism_entries:
        for key in ("name", "src", "tgt"):
            if key not in entry:
                raise SerializationError(f"{path}: morphism entry missing key {key!r}")
        names.append(entry["name"])
        for field, into in (("src", src), ("tgt", tgt)):
            if entry[field] not in obj_index:
                raise SerializationError(
                    f"{path}: morphism {entry['name']!r} references unknown object {entry[field]!r}"
                )
            into.append(obj_index[entry[field]])
    mor_index = {name: i for i, name in enumerate(names)}
    if len(mor_index) != len(names):
        raise SerializationError(f"{path}: duplicate morphism names")

    identity = [None] * len(objects)
    for obj, mor in identities.items():
        if obj not in obj_index:
            raise SerializationError(f"{path}: identity for unknown object {obj!r}")
        if mor not in mor_index:
            raise SerializationError(f"{path}: identity references unknown morphism {mor!r}")
        identity[obj_index[obj]] = mor_index[mor]
    for x, f in enumerate(identity):
        if f is None:
            raise SerializationError(f"{path}: no identity for object {objects[x]!r}")

    compose = {}
    for entry in compose_entries:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise SerializationError(f"{path}: compose entries must be [f, g, h] triples")
        try:
            f, g, h = (mor_index[n] for n in entry)
        except KeyError as exc:
            raise SerializationError(f"{path}: compose references unknown morphism {exc.args[0]!r}") from None
        if src[f] != tgt[g]:
            raise SerializationError(
                f"{path}: compose entry {entry} pairs non-composable morphisms"
            )
        if (f, g) in compose:
            raise SerializationError(f"{path}: duplicate compose entry for ({entry[0]!r}, {entry[1]!r})")
        compose[(f, g)] = h

    cat = FinCategory(tuple(objects), tuple(names), tuple(src), tuple(tgt), tuple(identity), compose)
    if "inverse" not in doc:
        return cat
    inverse = [None] * len(names)
    for f, g in doc["inverse"].items():
        if f not in mor_index or g not in mor_index:
            raise SerializationError(f"{path}: inverse entry {f!r} -> {g!r} references unknown morphism")
        inverse[mor_index[f]] = mor_index[g]
    for f, g in enumerate(inverse):
        if g is None:
            raise SerializationError(f"{path}: no inverse for morphism {names[f]!r}")
    return FinGroupoid(cat, tuple(inverse))


# -- colorings --------------------------------------------------------------


def coloring_to_doc(cat: FinCategory | FinGroupoid, col: Coloring) -> dict:
    base = as_category(cat)
    return {
        "format": FORMAT,
        "colors": list(col.labels),
        "assignment": {base.morphisms[f]: col.labels[col.assign[f]] for f in range(base.n_morphisms)},
    }


def save_coloring(cat: FinCategory | FinGroupoid, col: Coloring, path) -> None:
    _write(path, coloring_to_doc(cat, col))


def load_coloring(path, cat: FinCategory | FinGroupoid) -> Coloring:
    """Load a coloring for cat.  Declared colors that never occur in the
    assignment are dropped with a warning (the color set is the image)."""
    doc = _read(path)
    declared = _require(doc, "colors", path)
    assignment = _require(doc, "assignment", path)
    base = as_category(cat)

    declared_set = set(declared)
    if len(declared_set) != len(declared):
        raise SerializationError(f"{path}: duplicate color labels")
    labels = []
    for name in base.morphisms:
        if name not in assignment:
            raise SerializationError(f"{path}: no color assigned to morphism {name!r}")
        label = assignment[name]
        if label not in declared_set:
            raise SerializationError(f"{path}: assignment uses undeclared color {label!r}")
        labels.append(label)
    extra = set(assignment) - set(base.morphisms)
    if extra:
        raise SerializationError(f"{path}: assignment for unknown morphism {sorted(extra)[0]!r}")
    unused = declared_set - set(labels)
    if unused:
        warnings.warn(
            f"{path}: dropping {len(unused)} declared but unused color(s): {sorted(unused)}",
            stacklevel=2,
        )
    return make_coloring(base, labels)


# -- functors ---------------------------------------------------------------


def functor_to_doc(F: ColoredFunctor, source_refs: dict, target_refs: dict) -> dict:
    s, t = as_category(F.source_cat), as_category(F.target_cat)
    return {
        "format": FORMAT,
        "source": dict(source_refs),
        "target": dict(target_refs),
        "object_map": {s.objects[x]: t.objects[F.f_obj[x]] for x in range(s.n_objects)},
        "morphism_map": {s.morphisms[f]: t.morphisms[F.f_mor[f]] for f in range(s.n_morphisms)},
        "color_map": {
            F.source_col.labels[c]: F.target_col.labels[F.gamma[c]]
            for c in range(F.source_col.n_colors)
        },
    }


def save_functor(F: ColoredFunctor, path, source_refs: dict, target_refs: dict) -> None:
    """source_refs/target_refs are {"category": relpath, "coloring": relpath},
    resolved relative to the functor file on load."""
    _write(path, functor_to_doc(F, source_refs, target_refs))


def _load_pair(refs: dict, base_dir: Path, path, which: str):
    for key in ("category", "coloring"):
        if key not in refs:
            raise SerializationError(f"{path}: {which} reference missing key {key!r}")
    cat = load_category(base_dir / refs["category"])
    col = load_coloring(base_dir / refs["coloring"], cat)
    return cat, col


def load_functor(path) -> ColoredFunctor:
    doc = _read(path)
    base_dir = Path(path).parent
    source_cat, source_col = _load_pair(_require(doc, "source", path), base_dir, path, "source")
    target_cat, target_col = _load_pair(_require(doc, "target", path), base_dir, path, "target")
    s, t = as_category(source_cat), as_category(target_cat)

    def total_map(key, domain, codomain_index, kind):
        mapping = _require(doc, key, path)
        out = []
        for name in domain:
            if name not in mapping:
                raise SerializationError(f"{path}: {key} missing {kind} {name!r}")
            value = mapping[name]
            if value not in codomain_index:
                raise SerializationError(f"{path}: {key} sends {name!r} to unknown {kind} {value!r}")
            out.append(codomain_index[value])
        return tuple(out)

    f_obj = total_map("object_map", s.objects, {n: i for i, n in enumerate(t.objects)}, "object")
    f_mor = total_map("morphism_map", s.morphisms, {n: i for i, n in enumerate(t.morphisms)}, "morphism")
    gamma = total_map(
        "color_map", source_col.labels, {n: i for i, n in enumerate(target_col.labels)}, "color"
    )
    return ColoredFunctor(source_cat, source_col, target_cat, target_col, f_obj, f_mor, gamma)


# -- reports ----------------------------------------------------------------


def report_to_doc(reports: Iterable[ValidationReport]) -> dict:
    return {
        "format": FORMAT,
        "checks": [
            {
                "name": r.name,
                "status": "pass" if r.ok else "fail",
                "witnesses": [
                    {"rule": v.rule, "witness": list(v.witness)} for v in r.violations
                ],
            }
            for r in reports
        ],
    }


def save_report(reports: Iterable[ValidationReport], path) -> None:
    _write(path, report_to_doc(reports))


def load_report(path) -> dict:
    doc = _read(path)
    _require(doc, "checks", path)
    return doc


# -- quotient maps ----------------------------------------------------------


def quotient_maps_to_doc(gpd: FinGroupoid, col: Coloring, qr: QuotientResult) -> dict:
    u = qr.u
    return {
        "format": FORMAT,
        "s0": {col.labels[c]: u.objects[q] for c, q in sorted(qr.s0.items())},
        "s1": {col.labels[c]: u.morphisms[qr.s1[c]] for c in range(col.n_colors)},
        "pi_objects": {
            gpd.objects[x]: u.objects[qr.pi_objects[x]] for x in range(gpd.n_objects)
        },
        "pi_morphisms": {
            gpd.morphisms[f]: u.morphisms[qr.pi_morphisms[f]] for f in range(gpd.n_morphisms)
        },
    }


def save_quotient_maps(gpd: FinGroupoid, col: Coloring, qr: QuotientResult, path) -> None:
    _write(path, quotient_maps_to_doc(gpd, col, qr))
