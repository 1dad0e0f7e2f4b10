"""
Finite based categories with involution, given by multiplicity tables.

A :class:`MultiCat` records the split data of such a category: a finite
set of objects, a finite set of indecomposable 1-morphisms with sources
and targets (one identity per object), the multiset of indecomposable
summands of every composite, and an involution ``star`` that reverses
composition.  Multiplicities are plain Python integers (arbitrary
precision); nothing in this module ever touches floating point.

The composite of two morphisms is a *multiset* of morphisms, stored as a
``dict`` from morph index to positive multiplicity.  An absent key means
multiplicity zero, and the empty dict is the zero composite (legal: cell
quotients produce it).

Tables are interchanged as JSON documents::

    {
      "objects": ["i", ...],
      "morphisms": [{"label": "F", "src": "i", "tgt": "i", "identity": false}, ...],
      "star": {"F": "F", ...},
      "compose": [{"g": "F", "f": "F", "out": [{"m": "F", "mult": 2}]}, ...]
    }

Unit-law entries may be omitted; ``compose`` resolves identities by the
unit law without a table lookup.  The serializer emits keys in
declaration order with two-space indentation, UTF-8 and LF line endings,
so canonical documents round-trip bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ObjectId",
    "MorphId",
    "MultiCat",
    "NotComposableError",
    "TableFormatError",
    "Violation",
    "ValidationReport",
    "load_multicat",
    "multicat_from_document",
    "multicat_to_document",
    "serialize_multicat",
    "compose",
    "validate",
]

# morph sets beyond this size skip the dense numpy associativity check
_DENSE_VALIDATE_LIMIT = 48


class TableFormatError(ValueError):
    """Raised when an interchange document cannot be resolved to a table."""


class NotComposableError(ValueError):
    """Raised when a composite of morphisms with mismatched ends is requested."""


@dataclass(frozen=True)
class ObjectId:
    index: int
    label: str


@dataclass(frozen=True)
class MorphId:
    index: int
    label: str
    src: ObjectId
    tgt: ObjectId
    is_identity: bool = False

    def __repr__(self) -> str:
        return f"MorphId({self.label!r}: {self.src.label}->{self.tgt.label})"


@dataclass(frozen=True)
class Violation:
    """One broken law, with the witnessing morphisms."""

    law: str
    witness: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        w = ", ".join(self.witness)
        return f"{self.law} [{w}]: {self.detail}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def laws(self) -> list[str]:
        return sorted({v.law for v in self.violations})

    def __str__(self) -> str:
        if self.ok:
            return "valid (0 violations)"
        lines = [f"{len(self.violations)} violation(s):"]
        lines += [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


class MultiCat:
    """Immutable multiplicity table; all operations on it are pure.

    ``table`` holds the stored compose entries keyed by morph index
    pairs ``(g, f)`` meaning the composite g∘f (g applied after f);
    identities are resolved by the unit law and never consulted in the
    table.
    """

    def __init__(
        self,
        objects: list[ObjectId],
        morphs: list[MorphId],
        star: list[int],
        table: dict[tuple[int, int], dict[int, int]],
    ):
        self.objects = objects
        self.morphs = morphs
        self.star_map = star
        self.table = table
        self._by_label = {m.label: m for m in morphs}
        self._identity_of = {}
        for m in morphs:
            if m.is_identity:
                self._identity_of[m.src.index] = m

    # -- lookups ---------------------------------------------------------

    def morph(self, label: str) -> MorphId:
        try:
            return self._by_label[label]
        except KeyError:
            raise KeyError(f"no morphism labelled {label!r}") from None

    def identity(self, obj: ObjectId | int) -> MorphId:
        idx = obj.index if isinstance(obj, ObjectId) else obj
        return self._identity_of[idx]

    def star(self, m: MorphId) -> MorphId:
        return self.morphs[self.star_map[m.index]]

    def composable(self, g: int, f: int) -> bool:
        return self.morphs[g].src.index == self.morphs[f].tgt.index

    # -- composition -----------------------------------------------------

    def compose_idx(self, g: int, f: int) -> dict[int, int]:
        """Summands of g∘f by morph index; unit law applied without lookup."""
        if not self.composable(g, f):
            raise NotComposableError(
                f"cannot compose {self.morphs[g].label} after {self.morphs[f].label}: "
                f"src({self.morphs[g].label})={self.morphs[g].src.label} != "
                f"tgt({self.morphs[f].label})={self.morphs[f].tgt.label}"
            )
        if self.morphs[g].is_identity:
            return {f: 1}
        if self.morphs[f].is_identity:
            return {g: 1}
        return self.table.get((g, f), {})

    def compose(self, g: MorphId, f: MorphId) -> dict[MorphId, int]:
        return {self.morphs[k]: c for k, c in self.compose_idx(g.index, f.index).items()}

    # -- equality (structural, label-sensitive) ---------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiCat):
            return NotImplemented
        return multicat_to_document(self) == multicat_to_document(other)

    def __repr__(self) -> str:
        return (
            f"MultiCat({len(self.objects)} objects, {len(self.morphs)} morphs, "
            f"{len(self.table)} stored composites)"
        )


def compose(cat: MultiCat, g: MorphId, f: MorphId) -> dict[MorphId, int]:
    """Multiset of indecomposable summands of ``g∘f``."""
    return cat.compose(g, f)


# ---------------------------------------------------------------------------
# construction helpers


def build_multicat(
    object_labels: list[str],
    morph_specs: list[tuple[str, str, str, bool]],
    star_labels: dict[str, str],
    compose_entries: dict[tuple[str, str], dict[str, int]],
) -> MultiCat:
    """Assemble a MultiCat from label-level data (used by the constructors).

    ``morph_specs`` rows are ``(label, src_label, tgt_label, is_identity)``.
    Unit-law compose entries must not be passed.
    """
    doc = {
        "objects": list(object_labels),
        "morphisms": [
            {"label": lab, "src": s, "tgt": t, **({"identity": True} if ident else {})}
            for (lab, s, t, ident) in morph_specs
        ],
        "star": dict(star_labels),
        "compose": [
            {"g": g, "f": f, "out": [{"m": m, "mult": c} for m, c in out.items()]}
            for (g, f), out in compose_entries.items()
        ],
    }
    return multicat_from_document(doc)


def multicat_from_document(doc: dict) -> MultiCat:
    """Resolve an interchange document into a MultiCat.

    Axioms are NOT checked here (see :func:`validate`); only referential
    integrity: every label must resolve, each object carries exactly one
    identity, and multiplicities must be positive integers.
    """
    if not isinstance(doc, dict):
        raise TableFormatError("document root must be a JSON object")
    for key in ("objects", "morphisms", "star", "compose"):
        if key not in doc:
            raise TableFormatError(f"missing field {key!r}")
    if not doc["objects"]:
        raise TableFormatError("no objects")
    if len(set(doc["objects"])) != len(doc["objects"]):
        raise TableFormatError("duplicate object label")
    objects = [ObjectId(i, lab) for i, lab in enumerate(doc["objects"])]
    obj_by_label = {o.label: o for o in objects}

    morphs: list[MorphId] = []
    seen_labels: set[str] = set()
    for i, spec in enumerate(doc["morphisms"]):
        for key in ("label", "src", "tgt"):
            if key not in spec:
                raise TableFormatError(f"morphisms[{i}]: missing field {key!r}")
        lab = spec["label"]
        if lab in seen_labels:
            raise TableFormatError(f"morphisms[{i}]: duplicate morphism label {lab!r}")
        seen_labels.add(lab)
        try:
            src = obj_by_label[spec["src"]]
            tgt = obj_by_label[spec["tgt"]]
        except KeyError as e:
            raise TableFormatError(
                f"morphisms[{i}] ({lab!r}): dangling object reference {e.args[0]!r}"
            ) from None
        morphs.append(MorphId(i, lab, src, tgt, bool(spec.get("identity", False))))

    identities_per_object: dict[int, list[str]] = {}
    for m in morphs:
        if m.is_identity:
            identities_per_object.setdefault(m.src.index, []).append(m.label)
            if m.src.index != m.tgt.index:
                raise TableFormatError(
                    f"identity morphism {m.label!r} has src != tgt"
                )
    for o in objects:
        got = identities_per_object.get(o.index, [])
        if len(got) == 0:
            raise TableFormatError(f"object {o.label!r} has no identity morphism")
        if len(got) > 1:
            raise TableFormatError(
                f"duplicate identity for object {o.label!r}: {got}"
            )

    morph_by_label = {m.label: m for m in morphs}

    def resolve(label: str, where: str) -> MorphId:
        try:
            return morph_by_label[label]
        except KeyError:
            raise TableFormatError(
                f"{where}: dangling morphism reference {label!r}"
            ) from None

    star = [0] * len(morphs)
    star_doc = doc["star"]
    for m in morphs:
        image = star_doc.get(m.label, m.label)
        star[m.index] = resolve(image, f"star[{m.label!r}]").index
    for lab in star_doc:
        resolve(lab, "star (key)")

    table: dict[tuple[int, int], dict[int, int]] = {}
    for i, entry in enumerate(doc["compose"]):
        for key in ("g", "f", "out"):
            if key not in entry:
                raise TableFormatError(f"compose[{i}]: missing field {key!r}")
        g = resolve(entry["g"], f"compose[{i}].g")
        f = resolve(entry["f"], f"compose[{i}].f")
        if (g.index, f.index) in table:
            raise TableFormatError(
                f"compose[{i}]: duplicate entry for ({g.label!r}, {f.label!r})"
            )
        out: dict[int, int] = {}
        for j, term in enumerate(entry["out"]):
            m = resolve(term.get("m", ""), f"compose[{i}].out[{j}]")
            mult = term.get("mult", 1)
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
                raise TableFormatError(
                    f"compose[{i}].out[{j}]: multiplicity must be a positive "
                    f"integer, got {mult!r}"
                )
            if m.index in out:
                raise TableFormatError(
                    f"compose[{i}].out[{j}]: repeated summand {m.label!r}"
                )
            out[m.index] = mult
        table[(g.index, f.index)] = out
    return MultiCat(objects, morphs, star, table)


def load_multicat(source) -> MultiCat:
    """Load a table from a JSON string, file object, path, or parsed dict."""
    if isinstance(source, dict):
        return multicat_from_document(source)
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise TableFormatError(f"parse error at line {e.lineno} col {e.colno}: {e.msg}") from None
    return multicat_from_document(doc)


def multicat_to_document(cat: MultiCat) -> dict:
    """Canonical interchange document: declaration order, unit entries omitted."""
    morphisms = []
    for m in cat.morphs:
        spec = {"label": m.label, "src": m.src.label, "tgt": m.tgt.label}
        if m.is_identity:
            spec["identity"] = True
        morphisms.append(spec)
    entries = []
    for (g, f) in sorted(cat.table):
        gm, fm = cat.morphs[g], cat.morphs[f]
        out = cat.table[(g, f)]
        if gm.is_identity and out == {f: 1}:
            continue
        if fm.is_identity and out == {g: 1}:
            continue
        entries.append(
            {
                "g": gm.label,
                "f": fm.label,
                "out": [{"m": cat.morphs[k].label, "mult": out[k]} for k in sorted(out)],
            }
        )
    return {
        "objects": [o.label for o in cat.objects],
        "morphisms": morphisms,
        "star": {m.label: cat.morphs[cat.star_map[m.index]].label for m in cat.morphs},
        "compose": entries,
    }


def serialize_multicat(cat: MultiCat) -> str:
    """Serialize to the canonical byte-stable JSON text (trailing newline)."""
    return json.dumps(multicat_to_document(cat), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# validation


def validate(cat: MultiCat) -> ValidationReport:
    """Exhaustively check every table axiom; violations are data, not errors.

    Laws checked, with these names in the report:

    * ``structure``: stored entries composable, summand ends match
      (src(K)=src(F), tgt(K)=tgt(G)).
    * ``unit-law``: stored entries involving an identity equal the unit law.
    * ``associativity``: the multiset identity over all composable triples.
    * ``star-involution``: star∘star = id, star fixes identities.
    * ``star-ends``: star swaps src and tgt.
    * ``star-anti-automorphism``: star(G∘F) = star(F)∘star(G) elementwise.
    """
    report = ValidationReport()
    morphs = cat.morphs

    for (g, f), out in sorted(cat.table.items()):
        gm, fm = morphs[g], morphs[f]
        if gm.src.index != fm.tgt.index:
            report.violations.append(
                Violation(
                    "structure",
                    (gm.label, fm.label),
                    "stored composite of a non-composable pair",
                )
            )
            continue
        for k in sorted(out):
            km = morphs[k]
            if km.src.index != fm.src.index or km.tgt.index != gm.tgt.index:
                report.violations.append(
                    Violation(
                        "structure",
                        (gm.label, fm.label, km.label),
                        f"summand {km.label} has ends "
                        f"{km.src.label}->{km.tgt.label}, expected "
                        f"{fm.src.label}->{gm.tgt.label}",
                    )
                )
        if gm.is_identity and out != {f: 1}:
            report.violations.append(
                Violation(
                    "unit-law",
                    (gm.label, fm.label),
                    "left unit composite differs from the unit law",
                )
            )
        if fm.is_identity and not gm.is_identity and out != {g: 1}:
            report.violations.append(
                Violation(
                    "unit-law",
                    (gm.label, fm.label),
                    "right unit composite differs from the unit law",
                )
            )

    _check_star(cat, report)
    if not any(v.law == "structure" for v in report.violations):
        _check_associativity(cat, report)
    return report


def _check_star(cat: MultiCat, report: ValidationReport) -> None:
    morphs = cat.morphs
    for m in morphs:
        sm = morphs[cat.star_map[m.index]]
        if cat.star_map[sm.index] != m.index:
            report.violations.append(
                Violation("star-involution", (m.label,), f"star(star({m.label})) = "
                          f"{morphs[cat.star_map[sm.index]].label}")
            )
        if m.is_identity and sm.index != m.index:
            report.violations.append(
                Violation("star-involution", (m.label,), "star moves an identity")
            )
        if sm.src.index != m.tgt.index or sm.tgt.index != m.src.index:
            report.violations.append(
                Violation(
                    "star-ends",
                    (m.label,),
                    f"star({m.label}) = {sm.label} does not swap source and target",
                )
            )
    if any(v.law in ("star-involution", "star-ends") for v in report.violations):
        return
    star = cat.star_map
    for g in range(len(morphs)):
        for f in range(len(morphs)):
            if not cat.composable(g, f):
                continue
            lhs = {star[k]: c for k, c in cat.compose_idx(g, f).items()}
            rhs = cat.compose_idx(star[f], star[g])
            if lhs != rhs:
                report.violations.append(
                    Violation(
                        "star-anti-automorphism",
                        (morphs[g].label, morphs[f].label),
                        f"star({morphs[g].label}∘{morphs[f].label}) != "
                        f"star({morphs[f].label})∘star({morphs[g].label})",
                    )
                )


def _triple_sides(cat: MultiCat, h: int, g: int, f: int) -> tuple[dict, dict]:
    lhs: dict[int, int] = {}
    for k, c in cat.compose_idx(h, g).items():
        for m, d in cat.compose_idx(k, f).items():
            lhs[m] = lhs.get(m, 0) + c * d
    rhs: dict[int, int] = {}
    for k, c in cat.compose_idx(g, f).items():
        for m, d in cat.compose_idx(h, k).items():
            rhs[m] = rhs.get(m, 0) + c * d
    return lhs, rhs


def _check_associativity(cat: MultiCat, report: ValidationReport) -> None:
    n = len(cat.morphs)
    if n <= _DENSE_VALIDATE_LIMIT:
        bad = _associativity_dense(cat)
    else:
        bad = _associativity_sparse(cat)
    for (h, g, f) in bad:
        lhs, rhs = _triple_sides(cat, h, g, f)
        report.violations.append(
            Violation(
                "associativity",
                (cat.morphs[h].label, cat.morphs[g].label, cat.morphs[f].label),
                f"(H∘G)∘F = {_fmt_multiset(cat, lhs)} but "
                f"H∘(G∘F) = {_fmt_multiset(cat, rhs)}",
            )
        )


def _associativity_dense(cat: MultiCat) -> list[tuple[int, int, int]]:
    # Non-composable pairs hold the zero multiset, which makes both sides
    # of the associativity tensor identity vanish; no masking needed.
    n = len(cat.morphs)
    N = np.zeros((n, n, n), dtype=np.int64)
    for g in range(n):
        for f in range(n):
            if cat.composable(g, f):
                for k, c in cat.compose_idx(g, f).items():
                    N[g, f, k] = c
    lhs = np.einsum("hgk,kfm->hgfm", N, N)
    rhs = np.einsum("gfk,hkm->hgfm", N, N)
    diff = np.argwhere((lhs != rhs).any(axis=3))
    return [tuple(map(int, t)) for t in diff]


def _associativity_sparse(cat: MultiCat) -> list[tuple[int, int, int]]:
    n = len(cat.morphs)
    non_id = [i for i in range(n) if not cat.morphs[i].is_identity]
    by_src: dict[int, list[int]] = {}
    for h in non_id:
        by_src.setdefault(cat.morphs[h].src.index, []).append(h)
    bad = []
    for g in non_id:
        gm = cat.morphs[g]
        lefts = by_src.get(gm.tgt.index, [])
        for f in non_id:
            if not cat.composable(g, f):
                continue
            for h in lefts:
                lhs, rhs = _triple_sides(cat, h, g, f)
                if lhs != rhs:
                    bad.append((h, g, f))
    return bad


def _fmt_multiset(cat: MultiCat, ms: dict[int, int]) -> str:
    if not ms:
        return "0"
    return " + ".join(f"{c}·{cat.morphs[k].label}" for k, c in sorted(ms.items()))
