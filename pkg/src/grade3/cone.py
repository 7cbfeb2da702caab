"""Mapping-cone simulation of linkage on multiplication tables.

Linking a perfect ideal through a regular sequence resolves the linked ideal
by the dual mapping cone.  On the level of multiplication tables this is
completely combinatorial: starting from a table in format ``(m, n)`` the
cone has raw bases

* ``E_1 .. E_{n+3}`` in degree 1 (the last three are the designated
  generators ``u_1, u_2, u_3`` coming from the regular sequence),
* ``F_1 .. F_{m+n+2}`` in degree 2 (the last three are the Koszul duals
  ``v_{2,3} = F_{m+n}``, ``v_{1,3} = F_{m+n+1}``, ``v_{1,2} = F_{m+n+2}``),
* ``G_1 .. G_m`` in degree 3,

and the products of the linked algebra are read off from the structure
constants of the input.  A :class:`LinkSpec` fixes how many designated
generators act with full rank (``t1``) and whether the unit-product case
(``phi2_unit``, which additionally splits ``F_1`` and ``E_{n+3}``) applies.
The supported specs and the basis vectors they split are

===========  =====================================================
spec         split (removed) basis vectors
===========  =====================================================
t1 = 0       none
t1 = 1       G1, F_{m+n}
t1 = 2       G1, G2, F_{m+n}, F_{m+n+1}
t1 = 2 unit  G1, G2, F_{m+n}, F_{m+n+1}, F_1, E_{n+3}
t1 = 3       G1, G2, G3, F_{m+n}, F_{m+n+1}, F_{m+n+2}
===========  =====================================================

For ``t1 = 3`` the products ``E_i E_j`` and ``E_i F_l`` among the surviving
low-index vectors are not determined by the input table; they are returned
as *symbolic* slots and excluded from the determinate products.

:func:`verify_linkage_theorems` replays every row of the linkage rulebook
on canonical and rearranged inputs across a sweep of formats and checks the
simulated class and format against the rule's claim.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DimensionMismatch, OutOfDomain, Phi2Mismatch, UnsupportedSpec
from .labels import CLASS_B, CLASS_T, ClassLabel, Format, class_G, class_H, make_format
from .linkrules import RankProfile
from .presentation import (
    TorPresentation,
    arranged_presentation,
    canonical_presentation,
    classify,
    make_presentation,
    presentation_to_document,
    validate_presentation,
)

__all__ = [
    "LinkSpec",
    "SUPPORTED_SPECS",
    "link_profile",
    "LinkedPresentation",
    "mapping_cone_presentation",
    "linked_to_document",
    "ScenarioResult",
    "TheoremReport",
    "verify_linkage_theorems",
    "THEOREM_SCENARIOS",
]

LINKED_VERSION = 1


@dataclass(frozen=True)
class LinkSpec:
    """Rank behaviour of the designated generators in one link."""

    t1: int
    phi2_unit: bool = False


SUPPORTED_SPECS = (
    LinkSpec(0),
    LinkSpec(1),
    LinkSpec(2),
    LinkSpec(2, phi2_unit=True),
    LinkSpec(3),
)


def link_profile(spec: LinkSpec) -> RankProfile:
    """The rank profile a spec realizes: (t1, phi2 as t2, 0)."""
    return RankProfile(spec.t1, 1 if spec.phi2_unit else 0, 0)


@dataclass(frozen=True)
class LinkedPresentation:
    """Result of one mapping-cone simulation.

    ``presentation`` holds the determinate products re-indexed to dense
    bases; ``splits`` lists the removed raw basis vectors; ``index_map``
    sends surviving raw indices to dense ones per degree; and
    ``symbolic_products`` lists the (raw-indexed) product slots that the
    input does not determine (nonempty only for ``t1 = 3``).
    """

    presentation: TorPresentation
    splits: tuple[str, ...]
    index_map: Mapping[str, Mapping[int, int]]
    symbolic_products: tuple[tuple[str, int, int], ...]


def _nonzero(vec: Iterable[int]):
    for idx, coeff in enumerate(vec, start=1):
        if coeff:
            yield idx, coeff


def mapping_cone_presentation(a: TorPresentation, spec: LinkSpec) -> LinkedPresentation:
    """Simulate one link of a (valid) multiplication table.

    Raises :class:`UnsupportedSpec` for specs outside the supported table or
    when the input has fewer than ``t1`` degree-1 generators, and
    :class:`Phi2Mismatch` when the unit-product case is requested but
    ``e_1 e_2`` is not exactly ``f_1``.
    """
    if spec not in SUPPORTED_SPECS:
        raise UnsupportedSpec(f"link spec (t1={spec.t1}, phi2_unit={spec.phi2_unit}) is not supported")
    t1, phi2 = spec.t1, spec.phi2_unit
    m, n, d2 = a.m, a.n, a.dim2
    if t1 > m:
        raise UnsupportedSpec(f"spec designates {t1} generators but the table has only m = {m}")
    if phi2:
        unit_f1 = tuple(1 if i == 0 else 0 for i in range(d2))
        if a.ee.get((1, 2)) != unit_f1:
            raise Phi2Mismatch("unit-product case needs e_1 e_2 = f_1 exactly")

    ne, nf, ng = n + 3, m + n + 2, m

    acc_ee: dict[tuple[int, int], dict[int, int]] = defaultdict(lambda: defaultdict(int))
    acc_ef: dict[tuple[int, int], dict[int, int]] = defaultdict(lambda: defaultdict(int))

    e_split: set[int] = {ne} if phi2 else set()
    if t1 == 0:
        f_split: set[int] = set()
    elif t1 == 1:
        f_split = {m + n}
    elif t1 == 2:
        f_split = {m + n, m + n + 1} | ({1} if phi2 else set())
    else:
        f_split = {m + n, m + n + 1, m + n + 2}
    g_split = set(range(1, t1 + 1))

    # Koszul products among the designated generators, minus split targets.
    for (x, y), target in (
        ((n + 1, n + 2), m + n + 2),
        ((n + 1, n + 3), m + n + 1),
        ((n + 2, n + 3), m + n),
    ):
        if x not in e_split and y not in e_split and target not in f_split:
            acc_ee[(x, y)][target] += 1

    # Products of a designated generator with a degree-1 vector:
    # E_{n+a} E_i = sum_k <e_a f_k, g_i*> F_k, stored at (i, n+a) with the
    # graded-commutativity sign.
    b_lo = 2 if phi2 else 1
    for (ei, fl), vec in a.ef.items():
        if ei <= t1 and fl >= b_lo:
            for gi, coeff in _nonzero(vec):
                acc_ee[(gi, n + ei)][fl] -= coeff

    # Products of a designated generator with a degree-2 vector:
    # E_{n+a} F_l = sum_{k > t1} <e_a e_k, f_l*> G_k.
    f_lo = 2 if phi2 else 1
    for (x, y), vec in a.ee.items():
        if x <= t1 < y:
            for fl, coeff in _nonzero(vec):
                if fl >= f_lo:
                    acc_ef[(n + x, fl)][y] += coeff

    # Unit-product case only: E_i F_{m+n+2} = sum_{k > 2} <f_1 e_k, g_i*> G_k.
    if phi2:
        for (ek, fl), vec in a.ef.items():
            if fl == 1 and ek >= 3:
                for gi, coeff in _nonzero(vec):
                    acc_ef[(gi, m + n + 2)][ek] += coeff

    symbolic: list[tuple[str, int, int]] = []
    if t1 == 3:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                symbolic.append(("EE", i, j))
        for i in range(1, n + 1):
            for l in range(1, m + n):
                symbolic.append(("EF", i, l))

    e_keep = [i for i in range(1, ne + 1) if i not in e_split]
    f_keep = [i for i in range(1, nf + 1) if i not in f_split]
    g_keep = [i for i in range(1, ng + 1) if i not in g_split]
    e_map = {raw: new for new, raw in enumerate(e_keep, start=1)}
    f_map = {raw: new for new, raw in enumerate(f_keep, start=1)}
    g_map = {raw: new for new, raw in enumerate(g_keep, start=1)}

    m_out, n_out = len(e_keep), len(g_keep)
    if len(f_keep) != m_out + n_out - 1:
        raise AssertionError("split bookkeeping lost the middle-rank identity")

    out_ee: dict[tuple[int, int], tuple[int, ...]] = {}
    for (i, j), coeffs in acc_ee.items():
        if i in e_split or j in e_split:
            raise AssertionError("determinate product touches a split degree-1 vector")
        vec = [0] * len(f_keep)
        for k, coeff in coeffs.items():
            if coeff:
                if k in f_split:
                    raise AssertionError("determinate product targets a split degree-2 vector")
                vec[f_map[k] - 1] = coeff
        if any(vec):
            out_ee[(e_map[i], e_map[j])] = tuple(vec)

    out_ef: dict[tuple[int, int], tuple[int, ...]] = {}
    for (i, l), coeffs in acc_ef.items():
        if i in e_split or l in f_split:
            raise AssertionError("determinate product touches a split vector")
        vec = [0] * len(g_keep)
        for k, coeff in coeffs.items():
            if coeff:
                if k in g_split:
                    raise AssertionError("determinate product targets a split degree-3 vector")
                vec[g_map[k] - 1] = coeff
        if any(vec):
            out_ef[(e_map[i], f_map[l])] = tuple(vec)

    splits = tuple(
        [f"G{i}" for i in sorted(g_split)]
        + [f"F{i}" for i in sorted(f_split)]
        + [f"E{i}" for i in sorted(e_split)]
    )
    return LinkedPresentation(
        presentation=make_presentation(m_out, n_out, out_ee, out_ef),
        splits=splits,
        index_map={"E": e_map, "F": f_map, "G": g_map},
        symbolic_products=tuple(symbolic),
    )


def linked_to_document(lp: LinkedPresentation) -> dict:
    """Serialize as a presentation document plus split/index/symbolic data."""
    return {
        "version": LINKED_VERSION,
        "presentation": presentation_to_document(lp.presentation),
        "splits": list(lp.splits),
        "index_map": {
            kind: {str(raw): new for raw, new in sorted(mapping.items())}
            for kind, mapping in lp.index_map.items()
        },
        "symbolic": [
            [f"E{i}", ("E" if kind == "EE" else "F") + str(j)]
            for kind, i, j in lp.symbolic_products
        ],
    }


@dataclass(frozen=True)
class ScenarioResult:
    """Outcome of replaying one rulebook row across its input sweep."""

    scenario: str
    checked: int
    failures: tuple[str, ...]
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures and self.checked > 0


@dataclass(frozen=True)
class TheoremReport:
    results: tuple[ScenarioResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(res.passed for res in self.results)


# Rulebook rows replayed by verify_linkage_theorems: rule id, arrangement id
# (None = canonical of every class), link spec, and the expected class map.
THEOREM_SCENARIOS: tuple[tuple[str, str | None, LinkSpec], ...] = (
    ("linktoT", None, LinkSpec(0)),
    ("linkT-i", "T-B", LinkSpec(1)),
    ("linkT-ii", "T-A", LinkSpec(1)),
    ("linkT-iii", "T-B", LinkSpec(2)),
    ("linkT-iv", "T-A", LinkSpec(2, phi2_unit=True)),
    ("linkG-i", "G-std", LinkSpec(1)),
    ("linkG-ii", "G-std", LinkSpec(2)),
    ("linkH-i", "H-i", LinkSpec(1)),
    ("linkH-ii", "H-ii", LinkSpec(1)),
    ("linkH-iii", "H-iii", LinkSpec(2)),
    ("linkH-iv", "H-iv", LinkSpec(2)),
    ("linkH-v", "H-v", LinkSpec(3)),
)


def _canonical_labels(fmt: Format) -> list[ClassLabel]:
    """Every class label whose canonical table fits the format, except C(3)."""
    labels: list[ClassLabel] = []
    if fmt.m >= 3 and fmt.dim2 >= 3:
        labels.append(CLASS_T)
    if fmt.m >= 2 and fmt.dim2 >= 3:
        labels.append(CLASS_B)
    for r in range(2, min(fmt.m, fmt.dim2) + 1):
        labels.append(class_G(r))
    for p in range(0, fmt.m):
        for q in range(0, fmt.n + 1):
            if fmt.dim2 >= p + q:
                labels.append(class_H(p, q))
    return labels


def _expected_class(rule_id: str, label: ClassLabel) -> ClassLabel:
    if rule_id == "linktoT":
        return CLASS_T
    if rule_id == "linkT-i":
        return class_H(2, 0)
    if rule_id == "linkT-ii":
        return class_H(2, 2)
    if rule_id == "linkT-iii":
        return class_H(1, 2)
    if rule_id == "linkT-iv":
        return CLASS_B
    if rule_id == "linkG-i":
        return class_H(3, 0)
    if rule_id == "linkG-ii":
        return CLASS_T
    if rule_id == "linkH-i":
        return class_H(2, 1)
    if rule_id == "linkH-ii":
        return class_H(label.q + 2, label.p)
    if rule_id == "linkH-iii":
        return class_H(1, 1)
    if rule_id == "linkH-iv":
        return class_H(label.q + 1, label.p)
    raise ValueError(rule_id)


def _expected_format(spec: LinkSpec, fmt: Format) -> Format:
    m, n = fmt.m, fmt.n
    if spec.phi2_unit:
        return make_format(n + 2, m - 2)
    return make_format(n + 3, m - spec.t1)


def _scenario_inputs(rule_id: str, arrangement: str | None, fmt: Format) -> list[ClassLabel]:
    m, n, d2 = fmt.m, fmt.n, fmt.dim2
    if arrangement is None:
        return _canonical_labels(fmt)
    if arrangement in ("T-A", "T-B"):
        return [CLASS_T] if m >= 4 and d2 >= 3 else []
    if arrangement == "G-std":
        return [class_G(r) for r in range(2, min(m, d2) + 1)]
    # H arrangements: sweep all H(p,q) the arrangement and the rule allow.
    shift = {"H-i": 1, "H-ii": 1, "H-iii": 2, "H-iv": 2, "H-v": 3}[arrangement]
    p_lo = {"linkH-i": 1, "linkH-ii": 0, "linkH-iii": 1, "linkH-iv": 0, "linkH-v": 2}[rule_id]
    labels = []
    for p in range(p_lo, max(m - shift, 0) + 1):
        if p == 0:
            q_range = range(0, min(n, d2) + 1)
        else:
            q_range = range(0, min(n, d2 - p) + 1)
        for q in q_range:
            if rule_id == "linkH-v" and q != 0:
                continue
            labels.append(class_H(p, q))
    return labels


def _check_linkH_v(lp: LinkedPresentation, label: ClassLabel, fmt: Format) -> list[str]:
    """Special checks for the three-generator row: determinate products are
    exactly E_{n+1} F_i = G_{i+3} for i <= p, everything else is symbolic."""
    problems: list[str] = []
    m, n, p = fmt.m, fmt.n, label.p
    out = lp.presentation
    if out.ee:
        problems.append("determinate ee products should be empty")
    expected_ef = {}
    for i in range(1, p + 1):
        vec = [0] * out.n
        vec[(i + 3) - 3 - 1] = 1  # raw G_{i+3} lands at dense index i
        expected_ef[(n + 1, i)] = tuple(vec)
    if dict(out.ef) != expected_ef:
        problems.append(f"determinate ef products differ: {dict(out.ef)} != {expected_ef}")
    want_symbolic = {("EE", i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    want_symbolic |= {("EF", i, l) for i in range(1, n + 1) for l in range(1, m + n)}
    if set(lp.symbolic_products) != want_symbolic:
        problems.append("symbolic product slots differ from the expected X/Y families")
    rep = classify(out)
    if rep.label != class_H(0, p):
        problems.append(f"determinate part classifies as {rep.label}, expected H(0,{p})")
    return problems


def verify_linkage_theorems(m_max: int = 10, n_max: int = 8) -> TheoremReport:
    """Replay every rulebook row on all fitting inputs with m <= m_max, n <= n_max.

    Inputs range over ``4 <= m <= m_max`` and ``1 <= n <= n_max`` subject to
    each row's hypotheses.  Every simulated output is structurally validated
    and its classified label and format compared with the row's claim; the
    three-generator row additionally checks its determinate products and
    symbolic slots.
    """
    if m_max < 5 or n_max < 1:
        raise OutOfDomain(f"need m_max >= 5 and n_max >= 1, got ({m_max}, {n_max})")
    results: list[ScenarioResult] = []
    for rule_id, arrangement, spec in THEOREM_SCENARIOS:
        checked = 0
        failures: list[str] = []
        note = ""
        for m in range(4, m_max + 1):
            for n in range(1, n_max + 1):
                fmt = make_format(m, n)
                for label in _scenario_inputs(rule_id, arrangement, fmt):
                    try:
                        if arrangement is None:
                            table = canonical_presentation(label, fmt)
                        else:
                            table = arranged_presentation(label, fmt, arrangement)
                    except DimensionMismatch:  # format too small for this arrangement
                        continue
                    lp = mapping_cone_presentation(table, spec)
                    checked += 1
                    where = f"{label} at {fmt}"
                    diags = validate_presentation(lp.presentation)
                    if diags:
                        failures.append(f"{where}: invalid output table: {diags[0]}")
                        continue
                    expected_fmt = _expected_format(spec, fmt)
                    if lp.presentation.fmt != expected_fmt:
                        failures.append(
                            f"{where}: output format {lp.presentation.fmt} != {expected_fmt}"
                        )
                        continue
                    if rule_id == "linkH-v":
                        failures.extend(f"{where}: {p}" for p in _check_linkH_v(lp, label, fmt))
                        note = "determinate products, X/Y slots, and H(0,p) class checked"
                        continue
                    rep = classify(lp.presentation)
                    expected = _expected_class(rule_id, label)
                    if rep.label != expected:
                        failures.append(f"{where}: classified {rep.label}, expected {expected}")
        results.append(
            ScenarioResult(scenario=rule_id, checked=checked, failures=tuple(failures), note=note)
        )
    return TheoremReport(results=tuple(results))
