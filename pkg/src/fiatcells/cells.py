"""
Preorders, cells and annihilator predicates on a multiplicity table.

The three preorders are reachability relations in directed graphs on the
morphisms: for the right preorder there is an edge F -> K whenever K is
a summand of some H∘F (left composition), for the left preorder
whenever K is a summand of F∘H, and the two-sided preorder uses both
edge sets.  All three are reflexive (take H to be an identity).  By
construction the right preorder only relates morphisms with equal
source and the left preorder only morphisms with equal target.

Cells are the strongly connected components of these graphs; the order
between cells is the induced partial order on the condensation, stored
as its transitive reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .model import MorphId, MultiCat, NotComposableError

__all__ = [
    "CellPartition",
    "RegularityVerdict",
    "KINDS",
    "preorder_closure",
    "leq",
    "leq_R",
    "leq_L",
    "leq_LR",
    "cells",
    "verify_order_factorization",
    "classify_two_sided",
    "acts_nonzero",
    "annihilator_of_simple",
    "comp_mult_principal",
]

KINDS = ("left", "right", "two-sided")


@dataclass(frozen=True)
class CellPartition:
    """Cells of one kind, plus the partial order between them.

    ``classes`` is sorted by smallest member index, so output is
    deterministic.  ``order_edges`` is the transitive reduction of the
    cell order; ``(a, b)`` means class a lies strictly below class b
    (members of b are reachable from members of a).  ``closure`` is the
    full reflexive-transitive relation as a set of pairs.
    """

    kind: str
    classes: tuple[frozenset[int], ...]
    class_of: dict[int, int]
    order_edges: tuple[tuple[int, int], ...]
    closure: frozenset[tuple[int, int]] = field(repr=False)

    def leq_class(self, a: int, b: int) -> bool:
        return (a, b) in self.closure

    def class_members(self, idx: int, cat: MultiCat) -> list[MorphId]:
        return [cat.morphs[i] for i in sorted(self.classes[idx])]


@dataclass
class RegularityVerdict:
    two_sided_class: int
    regular: bool
    strongly_regular: bool
    # pairs of comparable right classes (regularity), oversized or empty
    # left/right intersections (strong regularity / input-integrity diagnostics)
    witnesses: list[tuple] = field(default_factory=list)
    empty_intersections: list[tuple[int, int]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# preorder graphs and closures


def _cache(cat: MultiCat) -> dict:
    # per-table memo for closures/partitions; the table is immutable
    if not hasattr(cat, "_cell_cache"):
        cat._cell_cache = {}
    return cat._cell_cache


def _edges(cat: MultiCat, kind: str) -> dict[int, set[int]]:
    n = len(cat.morphs)
    adj: dict[int, set[int]] = {i: {i} for i in range(n)}
    for (g, f), out in cat.table.items():
        for k in out:
            if kind in ("right", "two-sided"):
                adj[f].add(k)
            if kind in ("left", "two-sided"):
                adj[g].add(k)
    # unit-law composites are not stored but do generate order:
    # h∘1_t = h puts 1_t below every h with source t in the right order,
    # and 1_t∘f = f puts 1_t below every f with target t in the left order
    for m in cat.morphs:
        if not m.is_identity:
            continue
        t = m.src.index
        for other in cat.morphs:
            if kind in ("right", "two-sided") and other.src.index == t:
                adj[m.index].add(other.index)
            if kind in ("left", "two-sided") and other.tgt.index == t:
                adj[m.index].add(other.index)
    return adj


def preorder_closure(cat: MultiCat, kind: str) -> dict[int, frozenset[int]]:
    """Reachability sets of the preorder graph, memoized on the table."""
    cache = _cache(cat)
    key = ("closure", kind)
    if key not in cache:
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
        adj = _edges(cat, kind)
        reach: dict[int, frozenset[int]] = {}
        for start in adj:
            seen = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            reach[start] = frozenset(seen)
        cache[key] = reach
    return cache[key]


def leq(cat: MultiCat, kind: str, f: MorphId, g: MorphId) -> bool:
    """True iff f <= g in the chosen preorder (g reachable from f)."""
    return g.index in preorder_closure(cat, kind)[f.index]


def leq_R(cat: MultiCat, f: MorphId, g: MorphId) -> bool:
    return leq(cat, "right", f, g)


def leq_L(cat: MultiCat, f: MorphId, g: MorphId) -> bool:
    return leq(cat, "left", f, g)


def leq_LR(cat: MultiCat, f: MorphId, g: MorphId) -> bool:
    return leq(cat, "two-sided", f, g)


def cells(cat: MultiCat, kind: str) -> CellPartition:
    """Cells of the given kind with the induced order between them."""
    cache = _cache(cat)
    key = ("cells", kind)
    if key in cache:
        return cache[key]
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(cat.morphs)))
    for u, vs in _edges(cat, kind).items():
        graph.add_edges_from((u, v) for v in vs if v != u)
    sccs = [frozenset(c) for c in nx.strongly_connected_components(graph)]
    sccs.sort(key=min)
    class_of = {m: i for i, c in enumerate(sccs) for m in c}
    cond = nx.DiGraph()
    cond.add_nodes_from(range(len(sccs)))
    for u, vs in _edges(cat, kind).items():
        for v in vs:
            a, b = class_of[u], class_of[v]
            if a != b:
                cond.add_edge(a, b)
    closure = set()
    for a in cond.nodes:
        closure.add((a, a))
        for b in nx.descendants(cond, a):
            closure.add((a, b))
    reduction = nx.transitive_reduction(cond)
    part = CellPartition(
        kind=kind,
        classes=tuple(sccs),
        class_of=class_of,
        order_edges=tuple(sorted(reduction.edges)),
        closure=frozenset(closure),
    )
    cache[key] = part
    return part


def verify_order_factorization(cat: MultiCat):
    """Check that the two-sided preorder factors through right then left.

    Returns ``(True, None)`` or ``(False, (F, G))`` with the first pair
    (by index) violating either factorization.  Both factorizations
    hold on every associative table, so a counterexample indicates a
    broken table rather than exotic input.
    """
    reach_r = preorder_closure(cat, "right")
    reach_l = preorder_closure(cat, "left")
    reach_lr = preorder_closure(cat, "two-sided")
    n = len(cat.morphs)
    # pred_l[g] = {l : l <=_L g}, pred_r likewise
    pred_l: dict[int, set[int]] = {g: set() for g in range(n)}
    pred_r: dict[int, set[int]] = {g: set() for g in range(n)}
    for l in range(n):
        for g in reach_l[l]:
            pred_l[g].add(l)
        for g in reach_r[l]:
            pred_r[g].add(l)
    for f in range(n):
        for g in range(n):
            lr = g in reach_lr[f]
            via_rl = bool(reach_r[f] & pred_l[g])
            via_lr = bool(reach_l[f] & pred_r[g])
            if not (lr == via_rl == via_lr):
                return False, (cat.morphs[f], cat.morphs[g])
    return True, None


def classify_two_sided(cat: MultiCat, q: int) -> RegularityVerdict:
    """Regularity and strong regularity of the two-sided class ``q``.

    Regular: no two distinct right cells inside the class are
    comparable in the right order.  Strongly regular: additionally
    every left/right cell intersection inside the class is a singleton.
    Empty intersections on a regular class are recorded as an
    input-integrity diagnostic (they cannot happen for tables coming
    from the intended categories).
    """
    two_sided = cells(cat, "two-sided")
    if not 0 <= q < len(two_sided.classes):
        raise IndexError(f"two-sided class index {q} out of range")
    members = two_sided.classes[q]
    right = cells(cat, "right")
    left = cells(cat, "left")
    right_classes = sorted({right.class_of[m] for m in members})
    left_classes = sorted({left.class_of[m] for m in members})

    verdict = RegularityVerdict(q, True, True)
    for i, a in enumerate(right_classes):
        for b in right_classes[i + 1 :]:
            if right.leq_class(a, b) or right.leq_class(b, a):
                verdict.regular = False
                verdict.witnesses.append(("comparable-right-cells", a, b))
    if verdict.regular:
        for a in right_classes:
            for b in left_classes:
                inter = right.classes[a] & left.classes[b]
                if len(inter) == 0:
                    verdict.empty_intersections.append((b, a))
                elif len(inter) > 1:
                    verdict.strongly_regular = False
                    verdict.witnesses.append(
                        ("intersection-not-singleton", b, a, tuple(sorted(inter)))
                    )
    else:
        verdict.strongly_regular = False
    if verdict.empty_intersections:
        # falsifies the structure theorem for regular cells: bad input
        verdict.witnesses.extend(
            ("empty-intersection", b, a) for (b, a) in verdict.empty_intersections
        )
    return verdict


# ---------------------------------------------------------------------------
# action predicates on simples of principal 2-representations


def acts_nonzero(cat: MultiCat, f: MorphId, g: MorphId) -> bool:
    """Whether f sends the simple indexed by g to something nonzero.

    Requires src(f) = tgt(g), the composability of the action.  The
    criterion is star(f) <=_L g.
    """
    if f.src.index != g.tgt.index:
        raise NotComposableError(
            f"{f.label} cannot act on the simple of {g.label}: "
            f"src({f.label}) != tgt({g.label})"
        )
    return leq_L(cat, cat.star(f), g)


def annihilator_of_simple(cat: MultiCat, g: MorphId) -> list[MorphId]:
    """Morphisms (composable with the action) killing the simple of g.

    The result is a coideal for the right preorder restricted to the
    composable morphisms; this is asserted, since it is a theorem for
    every table.
    """
    ann = [
        m
        for m in cat.morphs
        if m.src.index == g.tgt.index and not acts_nonzero(cat, m, g)
    ]
    ann_idx = {m.index for m in ann}
    reach_r = preorder_closure(cat, "right")
    for m in ann:
        for k in reach_r[m.index]:
            km = cat.morphs[k]
            if km.src.index == g.tgt.index and k not in ann_idx:
                raise AssertionError(
                    f"annihilator of {g.label} is not a right coideal: "
                    f"{m.label} <=_R {km.label}"
                )
    return ann


def comp_mult_principal(cat: MultiCat, f: MorphId, g: MorphId, h: MorphId) -> int:
    """Composition multiplicity of the simple of h in f applied to the simple of g.

    Equals the multiplicity of g in star(f)∘h.  A nonzero value forces
    h <=_R g; asserted (it holds by construction of the right order).
    """
    if f.src.index != g.tgt.index or f.tgt.index != h.tgt.index or h.src.index != g.src.index:
        raise NotComposableError(
            f"({f.label}, {g.label}, {h.label}) are not composable as an "
            "action triple: need src(f)=tgt(g), tgt(f)=tgt(h), src(h)=src(g)"
        )
    mult = cat.compose_idx(cat.star(f).index, h.index).get(g.index, 0)
    if mult:
        assert leq_R(cat, h, g), "nonzero multiplicity must force h <=_R g"
    return mult
