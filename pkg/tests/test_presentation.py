"""Canonical tables, arrangements, the rank classifier, and serialization."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grade3 import (
    CLASS_B,
    CLASS_C3,
    CLASS_T,
    DimensionMismatch,
    DocumentError,
    UnknownArrangement,
    arranged_presentation,
    arrangement_ids,
    canonical_presentation,
    class_G,
    class_H,
    classify,
    compute_pqrs,
    make_format,
    make_presentation,
    presentation_from_document,
    presentation_to_document,
    validate_presentation,
)


def _unit(length, index, sign=1):
    vec = [0] * length
    vec[index - 1] = sign
    return tuple(vec)


# ---------------------------------------------------------------- products


def test_graded_commutativity_of_accessors():
    pres = canonical_presentation(CLASS_T, make_format(4, 3))
    assert pres.ee_product(1, 2) == _unit(6, 3)
    assert pres.ee_product(2, 1) == _unit(6, 3, -1)
    assert pres.ee_product(2, 2) == (0,) * 6
    assert pres.ee_product(3, 4) == (0,) * 6


def test_make_presentation_drops_zero_vectors():
    pres = make_presentation(4, 2, {(1, 2): (0, 0, 0, 0, 0)}, {(1, 1): (0, 0)})
    assert pres.ee == {}
    assert pres.ef == {}


# ---------------------------------------------------------- canonical tables


def test_canonical_c3_table():
    pres = canonical_presentation(CLASS_C3, make_format(3, 1))
    assert pres.ee == {(1, 2): _unit(3, 3), (2, 3): _unit(3, 1), (1, 3): _unit(3, 2, -1)}
    assert pres.ef == {(1, 1): (1,), (2, 2): (1,), (3, 3): (1,)}


def test_canonical_c3_requires_format_31():
    with pytest.raises(DimensionMismatch):
        canonical_presentation(CLASS_C3, make_format(4, 2))


def test_canonical_b_table():
    pres = canonical_presentation(CLASS_B, make_format(5, 2))
    assert pres.ee == {(1, 2): _unit(6, 3)}
    assert pres.ef == {(1, 1): _unit(2, 1), (2, 2): _unit(2, 1)}


def test_canonical_g_table():
    pres = canonical_presentation(class_G(4), make_format(6, 3))
    assert pres.ee == {}
    assert pres.ef == {(i, i): _unit(3, 1) for i in range(1, 5)}
    with pytest.raises(DimensionMismatch):
        canonical_presentation(class_G(7), make_format(6, 3))


def test_canonical_h_table():
    pres = canonical_presentation(class_H(2, 1), make_format(6, 3))
    assert pres.ee == {(1, 3): _unit(8, 1), (2, 3): _unit(8, 2)}
    assert pres.ef == {(3, 3): _unit(3, 1)}
    with pytest.raises(DimensionMismatch):
        canonical_presentation(class_H(6, 0), make_format(6, 3))


# -------------------------------------------------------------- arrangements


def test_arrangement_ids_are_stable():
    assert arrangement_ids() == ("T-A", "T-B", "G-std", "H-i", "H-ii", "H-iii", "H-iv", "H-v")


def test_arrangements_preserve_class():
    cases = [
        (CLASS_T, make_format(4, 3), "T-A"),
        (CLASS_T, make_format(4, 3), "T-B"),
        (CLASS_T, make_format(7, 5), "T-A"),
        (class_G(5), make_format(5, 1), "G-std"),
        (class_H(2, 1), make_format(6, 3), "H-i"),
        (class_H(2, 1), make_format(6, 3), "H-ii"),
        (class_H(1, 2), make_format(6, 3), "H-iii"),
        (class_H(2, 0), make_format(6, 3), "H-iv"),
        (class_H(2, 2), make_format(7, 4), "H-v"),
        (class_H(0, 1), make_format(5, 3), "H-ii"),
    ]
    for label, fmt, arrangement in cases:
        pres = arranged_presentation(label, fmt, arrangement)
        report = classify(pres)
        assert report.label == label, (str(label), str(fmt), arrangement, report)


def test_h_i_stores_the_sign_on_the_swapped_pair():
    pres = arranged_presentation(class_H(2, 1), make_format(6, 3), "H-i")
    # e_2 e_1 = f_1 means the stored (1,2) vector is -f_1.
    assert pres.ee[(1, 2)] == _unit(8, 1, -1)
    assert pres.ee_product(2, 1) == _unit(8, 1)


def test_arrangement_rejects_wrong_class_or_unknown_id():
    with pytest.raises(UnknownArrangement):
        arranged_presentation(CLASS_T, make_format(4, 3), "G-std")
    with pytest.raises(UnknownArrangement):
        arranged_presentation(CLASS_T, make_format(4, 3), "T-C")


def test_arrangement_dimension_guards():
    with pytest.raises(DimensionMismatch):
        arranged_presentation(CLASS_T, make_format(3, 3), "T-A")  # needs m >= 4
    with pytest.raises(DimensionMismatch):
        arranged_presentation(class_H(3, 0), make_format(4, 4), "H-v")  # needs m >= p+3


# ---------------------------------------------------------------- classifier


def test_invariant_examples():
    rep = compute_pqrs(canonical_presentation(CLASS_T, make_format(4, 3)))
    assert (rep.p, rep.q, rep.r, rep.s1) == (3, 0, 0, 3)
    rep = compute_pqrs(canonical_presentation(CLASS_B, make_format(5, 2)))
    assert (rep.p, rep.q, rep.r, rep.s1) == (1, 1, 2, 2)
    rep = compute_pqrs(make_presentation(4, 2))
    assert (rep.p, rep.q, rep.r, rep.s1) == (0, 0, 0, 0)


def test_s1_separates_t_from_h30():
    t = compute_pqrs(canonical_presentation(CLASS_T, make_format(5, 3)))
    h30 = compute_pqrs(canonical_presentation(class_H(3, 0), make_format(5, 3)))
    assert (t.p, t.q, t.r) == (h30.p, h30.q, h30.r) == (3, 0, 0)
    assert t.s1 == 3
    assert h30.s1 == 4


def test_classify_round_trip_spot_checks():
    cases = [
        (CLASS_C3, make_format(3, 1)),
        (CLASS_T, make_format(4, 3)),
        (CLASS_B, make_format(6, 2)),
        (class_G(2), make_format(4, 2)),
        (class_G(6), make_format(8, 4)),
        (class_H(0, 0), make_format(4, 2)),
        (class_H(0, 1), make_format(4, 2)),
        (class_H(4, 3), make_format(8, 5)),
    ]
    for label, fmt in cases:
        report = classify(canonical_presentation(label, fmt))
        assert report.label == label
        assert not report.unclassifiable


def test_classify_flags_unclassifiable_tables():
    # Two ef products on distinct e's hit the same g, so q = 1 while the
    # Hom-rank r is 2; with p = 2 no row of the invariant table matches.
    pres = make_presentation(
        4,
        3,
        {(1, 2): _unit(6, 1), (1, 3): _unit(6, 2)},
        {(1, 3): _unit(3, 1), (2, 4): _unit(3, 1)},
    )
    report = classify(pres)
    assert report.unclassifiable
    assert report.label is None


def test_classify_needs_c3_format():
    # The C(3) multiplication pattern in a larger format is not C(3).
    fmt = make_format(4, 2)
    ee = {(1, 2): _unit(5, 3), (2, 3): _unit(5, 1), (1, 3): _unit(5, 2, -1)}
    ef = {(i, i): _unit(2, 1) for i in (1, 2, 3)}
    report = classify(make_presentation(4, 2, ee, ef))
    assert report.label != CLASS_C3
    del fmt


# ------------------------------------------------- basis-invariance property


@settings(max_examples=60)
@given(
    label_fmt=st.sampled_from(
        [
            (CLASS_T, (5, 3)),
            (CLASS_B, (5, 2)),
            (class_G(3), (5, 2)),
            (class_H(2, 1), (5, 3)),
            (class_H(1, 2), (5, 3)),
        ]
    ),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_classify_is_invariant_under_basis_permutation(label_fmt, seed):
    """Permuting the e, f, g bases (with signs) never changes the label."""
    import random

    label, (m, n) = label_fmt
    rng = random.Random(seed)
    base = canonical_presentation(label, make_format(m, n))
    d2 = m + n - 1

    e_perm = list(range(1, m + 1))
    rng.shuffle(e_perm)
    e_sign = [rng.choice((-1, 1)) for _ in range(m + 1)]
    f_perm = list(range(1, d2 + 1))
    rng.shuffle(f_perm)
    f_sign = [rng.choice((-1, 1)) for _ in range(d2 + 1)]
    g_perm = list(range(1, n + 1))
    rng.shuffle(g_perm)
    g_sign = [rng.choice((-1, 1)) for _ in range(n + 1)]

    ee = {}
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            vec = base.ee_product(e_perm[a - 1], e_perm[b - 1])
            sign = e_sign[a] * e_sign[b]
            out = [0] * d2
            for l in range(1, d2 + 1):
                out[l - 1] = sign * f_sign[f_perm[l - 1]] * vec[f_perm[l - 1] - 1]
            ee[(a, b)] = tuple(out)
    ef = {}
    for a in range(1, m + 1):
        for l in range(1, d2 + 1):
            vec = base.ef_product(e_perm[a - 1], f_perm[l - 1])
            sign = e_sign[a] * f_sign[f_perm[l - 1]]
            out = [0] * n
            for t in range(1, n + 1):
                out[t - 1] = sign * g_sign[g_perm[t - 1]] * vec[g_perm[t - 1] - 1]
            ef[(a, l)] = tuple(out)

    permuted = make_presentation(m, n, ee, ef)
    assert validate_presentation(permuted) == ()
    assert classify(permuted).label == label


# ------------------------------------------------------------------ validate


def test_validate_accepts_canonical_tables():
    for label, fmt in [(CLASS_T, (4, 3)), (CLASS_B, (5, 2)), (class_H(2, 2), (6, 4))]:
        pres = canonical_presentation(label, make_format(*fmt))
        assert validate_presentation(pres) == ()


def test_validate_reports_range_and_length_problems():
    pres = make_presentation(3, 2, {(2, 1): (1, 0, 0, 0)}, {(4, 1): (1, 1)})
    diags = validate_presentation(pres)
    assert any("ee key (2,1)" in d for d in diags)
    assert any("ef key (4,1)" in d for d in diags)
    pres = make_presentation(3, 2, {(1, 2): (1, 0)}, {(1, 9): (1, 0)})
    diags = validate_presentation(pres)
    assert any("entries" in d for d in diags)
    assert any("out of range" in d for d in diags)


# ------------------------------------------------------------- serialization


def test_document_form_is_sorted_and_exact():
    pres = canonical_presentation(CLASS_C3, make_format(3, 1))
    doc = presentation_to_document(pres)
    assert doc["version"] == 1
    assert (doc["m"], doc["n"]) == (3, 1)
    assert doc["ee"] == [[1, 2, 3, 1], [1, 3, 2, -1], [2, 3, 1, 1]]
    assert doc["ef"] == [[1, 1, 1, 1], [2, 2, 1, 1], [3, 3, 1, 1]]
    assert presentation_from_document(doc) == pres


_small_tables = st.builds(
    lambda m, n, ee_entries, ef_entries: (m, n, ee_entries, ef_entries),
    st.integers(min_value=2, max_value=5),
    st.integers(min_value=1, max_value=4),
    st.lists(st.tuples(st.integers(0, 100), st.integers(0, 100), st.integers(-3, 3)), max_size=8),
    st.lists(st.tuples(st.integers(0, 100), st.integers(0, 100), st.integers(-3, 3)), max_size=8),
)


@settings(max_examples=120)
@given(_small_tables)
def test_document_round_trip(data):
    m, n, ee_entries, ef_entries = data
    d2 = m + n - 1
    ee: dict[tuple[int, int], list[int]] = {}
    for a, b, coeff in ee_entries:
        i, j = sorted((a % m + 1, b % m + 1))
        if i == j:
            continue
        vec = ee.setdefault((i, j), [0] * d2)
        vec[(a + b) % d2] = coeff
    ef: dict[tuple[int, int], list[int]] = {}
    for a, b, coeff in ef_entries:
        vec = ef.setdefault((a % m + 1, b % d2 + 1), [0] * n)
        vec[(a + b) % n] = coeff
    pres = make_presentation(m, n, ee, ef)
    doc = presentation_to_document(pres)
    back = presentation_from_document(doc)
    assert back == pres
    assert presentation_to_document(back) == doc


def test_document_parser_is_strict():
    good = presentation_to_document(canonical_presentation(CLASS_B, make_format(5, 2)))
    with pytest.raises(DocumentError):
        presentation_from_document([])
    with pytest.raises(DocumentError):
        presentation_from_document({**good, "extra": 1})
    with pytest.raises(DocumentError):
        presentation_from_document({k: v for k, v in good.items() if k != "m"})
    with pytest.raises(DocumentError):
        presentation_from_document({**good, "version": 2})
    with pytest.raises(DocumentError):
        presentation_from_document({**good, "m": "5"})
    with pytest.raises(DocumentError):
        presentation_from_document({**good, "ee": [[1, 2, 3]]})
    with pytest.raises(DocumentError):
        presentation_from_document({**good, "ee": [[0, 2, 3, 1]]})
    with pytest.raises(DocumentError):
        presentation_from_document({**good, "ee": [[1, 2, 99, 1]]})
    with pytest.raises(DocumentError):
        presentation_from_document({**good, "ef": [[1, 2, 3, True]]})


def test_document_parser_accumulates_repeats():
    doc = {
        "version": 1,
        "m": 3,
        "n": 2,
        "ee": [[1, 2, 1, 1], [1, 2, 1, 2]],
        "ef": [[1, 1, 1, 1], [1, 1, 1, -1]],
    }
    pres = presentation_from_document(doc)
    assert pres.ee == {(1, 2): (3, 0, 0, 0)}
    assert pres.ef == {}
