import pytest

from fiatcells import (
    NotComposableError,
    acts_nonzero,
    annihilator_of_simple,
    cells,
    classify_two_sided,
    comp_mult_principal,
    leq_L,
    leq_LR,
    leq_R,
    verify_order_factorization,
)


def labels(cat, part):
    return [sorted(cat.morphs[i].label for i in c) for c in part.classes]


def test_s2_cells(s2):
    part = cells(s2, "right")
    assert labels(s2, part) == [["1_i"], ["F"]]
    assert part.order_edges == ((0, 1),)
    assert labels(s2, cells(s2, "left")) == [["1_i"], ["F"]]
    assert labels(s2, cells(s2, "two-sided")) == [["1_i"], ["F"]]


def test_s2_preorder(s2):
    one, f = s2.morph("1_i"), s2.morph("F")
    assert leq_R(s2, one, f)
    assert not leq_R(s2, f, one)
    assert leq_R(s2, f, f)  # reflexive


def test_sl2_cells(sl2):
    assert labels(sl2, cells(sl2, "right")) == [
        ["1_i"],
        ["1_j", "theta_out"],
        ["theta", "theta_on"],
    ]
    assert labels(sl2, cells(sl2, "left")) == [
        ["1_i"],
        ["1_j", "theta_on"],
        ["theta", "theta_out"],
    ]
    assert labels(sl2, cells(sl2, "two-sided")) == [
        ["1_i"],
        ["1_j", "theta", "theta_on", "theta_out"],
    ]


def test_star_swaps_left_and_right_cells(sl2):
    right = cells(sl2, "right")
    left = cells(sl2, "left")
    for m in sl2.morphs:
        image = frozenset(sl2.star_map[i] for i in right.classes[right.class_of[m.index]])
        assert image == left.classes[left.class_of[sl2.star_map[m.index]]]


def test_star_fixes_two_sided_cells(sl2, hecke3):
    for cat in (sl2, hecke3):
        part = cells(cat, "two-sided")
        for m in cat.morphs:
            assert part.class_of[m.index] == part.class_of[cat.star_map[m.index]]


def test_leq_LR_star(sl2):
    for m in sl2.morphs:
        assert leq_LR(sl2, m, sl2.star(m))
        assert leq_LR(sl2, sl2.star(m), m)


def test_order_factorization(s2, sl2, hecke3):
    for cat in (s2, sl2, hecke3):
        ok, witness = verify_order_factorization(cat)
        assert ok, witness


def test_cross_object_comparability(sl2):
    # the right order only relates morphisms with equal source
    for f in sl2.morphs:
        for g in sl2.morphs:
            if leq_R(sl2, f, g) and f.index != g.index:
                assert f.src.index == g.src.index
            if leq_L(sl2, f, g) and f.index != g.index:
                assert f.tgt.index == g.tgt.index


def test_classify_two_sided(sl2, hecke3):
    ts = cells(sl2, "two-sided")
    big = ts.class_of[sl2.morph("theta").index]
    verdict = classify_two_sided(sl2, big)
    assert verdict.regular and verdict.strongly_regular
    assert not verdict.empty_intersections
    for q in range(len(cells(hecke3, "two-sided").classes)):
        v = classify_two_sided(hecke3, q)
        assert v.regular and v.strongly_regular
    with pytest.raises(IndexError):
        classify_two_sided(sl2, 99)


def test_classify_not_strongly_regular():
    # the Fibonacci table: one two-sided cell {1, F} with a single left and
    # right cell, so the intersection has two elements
    from fiatcells import load_multicat, serialize_multicat, make_s2
    import json

    doc = json.loads(serialize_multicat(make_s2()))
    doc["compose"] = [
        {"g": "F", "f": "F", "out": [{"m": "F", "mult": 1}, {"m": "1_i", "mult": 1}]}
    ]
    fib = load_multicat(doc)
    part = cells(fib, "two-sided")
    assert len(part.classes) == 1
    verdict = classify_two_sided(fib, 0)
    assert verdict.regular and not verdict.strongly_regular
    assert any(w[0] == "intersection-not-singleton" for w in verdict.witnesses)


def test_acts_nonzero(s2, sl2):
    one, f = s2.morph("1_i"), s2.morph("F")
    assert acts_nonzero(s2, f, f)
    assert not acts_nonzero(s2, f, one)
    assert acts_nonzero(sl2, sl2.morph("theta_on"), sl2.morph("theta"))
    with pytest.raises(NotComposableError):
        acts_nonzero(sl2, sl2.morph("theta_on"), sl2.morph("1_j"))


def test_annihilators(s2, sl2):
    assert [m.label for m in annihilator_of_simple(s2, s2.morph("1_i"))] == ["F"]
    assert annihilator_of_simple(s2, s2.morph("F")) == []
    # every composable morphism acts on the simple of 1_j
    assert annihilator_of_simple(sl2, sl2.morph("1_j")) == []
    # theta kills the simples below it
    ann = annihilator_of_simple(sl2, sl2.morph("1_i"))
    assert sorted(m.label for m in ann) == ["theta", "theta_on"]


def test_annihilator_coideal_on_corpus():
    from conftest import corpus

    for name, cat in corpus():
        from fiatcells.cells import preorder_closure

        reach = preorder_closure(cat, "right")
        for g in cat.morphs:
            ann = {m.index for m in annihilator_of_simple(cat, g)}
            for i in ann:
                for k in reach[i]:
                    if cat.morphs[k].src.index == g.tgt.index:
                        assert k in ann, (name, g.label)


def test_comp_mult_principal(s2, sl2):
    f = s2.morph("F")
    assert comp_mult_principal(s2, f, f, f) == 2
    one = s2.morph("1_i")
    assert comp_mult_principal(s2, one, f, f) == 1
    th_on, th = sl2.morph("theta_on"), sl2.morph("theta")
    assert comp_mult_principal(sl2, th_on, th, th_on) == 1
    with pytest.raises(NotComposableError):
        comp_mult_principal(sl2, th_on, th_on, th)


def test_bad_kind_rejected(s2):
    with pytest.raises(ValueError, match="kind"):
        cells(s2, "sideways")


def test_hecke3_cell_counts(hecke3):
    assert len(cells(hecke3, "right").classes) == 4
    assert len(cells(hecke3, "two-sided").classes) == 3
    sizes = sorted(len(c) for c in cells(hecke3, "right").classes)
    assert sizes == [1, 1, 2, 2]
