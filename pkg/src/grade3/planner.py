"""Derivation planning: axiom families, certificate search, verification.

A *base family* is a published collection of perfect ideals with known class
and format — the axioms of the system.  A *derivation certificate* chains an
axiom instance through linkage-rule transitions to a target ``(class,
format)`` state; because every rule's class claim is verifiable from
structure constants, a certificate is a complete, replayable existence proof
for the target.

:func:`realize` searches for a shortest certificate breadth-first inside a
bounded state space: formats are capped at ``max(target) + 6`` (further
capped by the ``GRADE3_MAX_SEARCH`` environment variable, default 64), every
intermediate state must not be NOT_PERMISSIBLE, and both the axiom seeding
order and the rule expansion order are fixed, so the certificate returned
for a target is identical across runs and call orders.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

from .errors import DocumentError, Grade3Error, OutOfDomain
from .labels import (
    CLASS_B,
    CLASS_T,
    ClassLabel,
    Format,
    OPAQUE,
    OpaqueLabel,
    class_G,
    class_H,
    make_format,
    parse_format,
    parse_label,
)
from .linkrules import (
    RULES,
    RULE_ORDER,
    State,
    StateLabel,
    Transition,
    apply_rule,
    transition_from_document,
    transition_to_document,
)
from .permissible import PermissibilityVerdict, Status, boundary_classes, is_permissible

__all__ = [
    "BaseFamily",
    "BASE_FAMILIES",
    "Axiom",
    "DerivationCertificate",
    "RealizeStatus",
    "RealizationResult",
    "realize",
    "verify_certificate",
    "certificate_to_document",
    "certificate_from_document",
    "CoverageEntry",
    "CoverageReport",
    "realize_all",
    "family_assignment",
    "FAMILY_ASSIGNMENT_IDS",
    "DEFAULT_MAX_SEARCH",
    "SEARCH_ENV_VAR",
    "CERTIFICATE_VERSION",
]

DEFAULT_MAX_SEARCH = 64
SEARCH_ENV_VAR = "GRADE3_MAX_SEARCH"
CERTIFICATE_VERSION = 1

_CITE_GOR = "Buchsbaum-Eisenbud 1977; Avramov 2012"
_CITE_HS = "Avramov 2012"
_CITE_ACI = "Avramov 1981; Avramov 2012"
_CITE_T2 = "Brown 1984"
_CITE_EXT = "Christensen-Veliche 2014; Vandebogert 2020"


@dataclass(frozen=True)
class BaseFamily:
    """A published family of realized (class, format) instances."""

    family_id: str
    description: str
    cite: str
    instances: Callable[[int], Iterator[State]]
    contains: Callable[[StateLabel, Format], bool]


def _gor_instances(bound: int) -> Iterator[State]:
    for r in range(5, bound + 1, 2):
        yield (class_G(r), make_format(r, 1))


def _gor_contains(label: StateLabel, fmt: Format) -> bool:
    return (
        isinstance(label, ClassLabel)
        and label.tag == "G"
        and label.r >= 5
        and label.r % 2 == 1
        and (fmt.m, fmt.n) == (label.r, 1)
    )


def _hs_instances(bound: int) -> Iterator[State]:
    for p in range(3, bound):
        yield (class_H(p, p - 1), make_format(p + 1, p - 1))


def _hs_contains(label: StateLabel, fmt: Format) -> bool:
    return (
        isinstance(label, ClassLabel)
        and label.tag == "H"
        and label.p >= 3
        and label.q == label.p - 1
        and (fmt.m, fmt.n) == (label.p + 1, label.p - 1)
    )


def _aci_a_instances(bound: int) -> Iterator[State]:
    if bound >= 4:
        yield (class_H(3, 2), make_format(4, 2))


def _aci_b_instances(bound: int) -> Iterator[State]:
    if bound >= 4:
        for n in range(4, bound + 1, 2):
            yield (class_H(3, 0), make_format(4, n))


def _aci_c_instances(bound: int) -> Iterator[State]:
    if bound >= 4:
        for n in range(3, bound + 1, 2):
            yield (CLASS_T, make_format(4, n))


def _t2_d_instances(bound: int) -> Iterator[State]:
    for m in range(6, bound + 1, 2):
        yield (class_H(1, 2), make_format(m, 2))


def _t2_e_instances(bound: int) -> Iterator[State]:
    for m in range(5, bound + 1, 2):
        yield (CLASS_B, make_format(m, 2))


def _ext_m3_instances(bound: int) -> Iterator[State]:
    for m in range(6, bound + 1):
        yield (OPAQUE, make_format(m, 3))


BASE_FAMILIES: tuple[BaseFamily, ...] = (
    BaseFamily(
        "GOR",
        "Gorenstein ideals: class G(m) in format (m,1) for odd m >= 5",
        _CITE_GOR,
        _gor_instances,
        _gor_contains,
    ),
    BaseFamily(
        "HS",
        "hypersurface sections: class H(p,p-1) in format (p+1,p-1) for p >= 3",
        _CITE_HS,
        _hs_instances,
        _hs_contains,
    ),
    BaseFamily(
        "ACI-a",
        "almost complete intersection H(3,2) in format (4,2)",
        _CITE_ACI,
        _aci_a_instances,
        lambda label, fmt: label == class_H(3, 2) and (fmt.m, fmt.n) == (4, 2),
    ),
    BaseFamily(
        "ACI-b",
        "almost complete intersections H(3,0) in formats (4,n) for even n >= 4",
        _CITE_ACI,
        _aci_b_instances,
        lambda label, fmt: label == class_H(3, 0)
        and fmt.m == 4
        and fmt.n >= 4
        and fmt.n % 2 == 0,
    ),
    BaseFamily(
        "ACI-c",
        "almost complete intersections of class T in formats (4,n) for odd n >= 3",
        _CITE_ACI,
        _aci_c_instances,
        lambda label, fmt: label == CLASS_T and fmt.m == 4 and fmt.n >= 3 and fmt.n % 2 == 1,
    ),
    BaseFamily(
        "T2-d",
        "two-type ideals H(1,2) in formats (m,2) for even m >= 6",
        _CITE_T2,
        _t2_d_instances,
        lambda label, fmt: label == class_H(1, 2)
        and fmt.n == 2
        and fmt.m >= 6
        and fmt.m % 2 == 0,
    ),
    BaseFamily(
        "T2-e",
        "two-type ideals of class B in formats (m,2) for odd m >= 5",
        _CITE_T2,
        _t2_e_instances,
        lambda label, fmt: label == CLASS_B and fmt.n == 2 and fmt.m >= 5 and fmt.m % 2 == 1,
    ),
    BaseFamily(
        "EXT-m3",
        "perfect ideals with n = 3 and m >= 6 of unrecorded class",
        _CITE_EXT,
        _ext_m3_instances,
        lambda label, fmt: isinstance(label, OpaqueLabel) and fmt.n == 3 and fmt.m >= 6,
    ),
)

_FAMILY_BY_ID = {fam.family_id: fam for fam in BASE_FAMILIES}

# Seeding order: fixed-instance families take precedence over the parametric
# family that contains one of their points (ACI-a before HS at (4,2)), so
# certificates cite the sharpest family.  The order is fixed — it is part of
# the determinism contract.
_SEED_ORDER = tuple(
    _FAMILY_BY_ID[fid] for fid in ("GOR", "ACI-a", "ACI-b", "ACI-c", "T2-d", "T2-e", "HS", "EXT-m3")
)


class _Search:
    """Resumable breadth-first search over (class, format) states.

    The expansion sequence for a given bound is a pure function of the bound,
    so resuming a search later (for a different target) assigns the same
    parents as a fresh exhaustive run would.
    """

    def __init__(self, bound: int) -> None:
        self.bound = bound
        self.parent: dict[State, tuple[State, str] | None] = {}
        self.axiom_family: dict[State, str] = {}
        self.queue: deque[State] = deque()
        for family in _SEED_ORDER:
            for state in family.instances(bound):
                if state not in self.parent:
                    self.parent[state] = None
                    self.axiom_family[state] = family.family_id
                    self.queue.append(state)

    def _expand(self, state: State) -> None:
        label, fmt = state
        for rule_id in RULE_ORDER:
            rule = RULES[rule_id]
            if rule.check(label, fmt) is not None:
                continue
            try:
                out_fmt = rule.out_format(fmt)
            except Grade3Error:
                continue
            if out_fmt.m > self.bound or out_fmt.n > self.bound:
                continue
            out_state: State = (rule.out_class(label), out_fmt)
            if out_state in self.parent:
                continue
            if is_permissible(out_state[0], out_state[1]).status is Status.NOT_PERMISSIBLE:
                continue
            self.parent[out_state] = (state, rule_id)
            self.queue.append(out_state)

    def find(self, state: State) -> bool:
        if state in self.parent:
            return True
        while self.queue:
            self._expand(self.queue.popleft())
            if state in self.parent:
                return True
        return False


_SEARCHES: dict[int, _Search] = {}


def _search_for(bound: int) -> _Search:
    search = _SEARCHES.get(bound)
    if search is None:
        search = _Search(bound)
        _SEARCHES[bound] = search
    return search


def _max_search() -> int:
    raw = os.environ.get(SEARCH_ENV_VAR)
    if raw is None:
        return DEFAULT_MAX_SEARCH
    try:
        value = int(raw)
    except ValueError as exc:
        raise OutOfDomain(f"{SEARCH_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise OutOfDomain(f"{SEARCH_ENV_VAR} must be >= 1, got {value}")
    return value


@dataclass(frozen=True)
class Axiom:
    """The starting instance of a certificate."""

    family: str
    label: StateLabel
    fmt: Format
    cite: str


@dataclass(frozen=True)
class DerivationCertificate:
    """A replayable existence proof: axiom instance, rule steps, target."""

    axiom: Axiom
    steps: tuple[Transition, ...]
    target: State


class RealizeStatus(str, Enum):
    REALIZED = "realized"
    NOT_PERMISSIBLE = "not-permissible"
    NOT_FOUND = "not-found"


@dataclass(frozen=True)
class RealizationResult:
    """Outcome of :func:`realize` — a sum of certificate / verdict / reason."""

    status: RealizeStatus
    certificate: DerivationCertificate | None = None
    verdict: PermissibilityVerdict | None = None
    detail: str = ""


def _not_found_detail(label: ClassLabel) -> str:
    if label.tag == "C3":
        return (
            "class C(3) is the complete intersection; it forms its own linkage class "
            "and no rulebook row produces it (Weyman 1989; Avramov-Kustin-Miller 1988)"
        )
    if label.tag == "G":
        return (
            "class G(r) outside Gorenstein formats (r,1) has no known construction "
            "(Christensen-Veliche-Weyman 2020)"
        )
    return "no derivation reaches this target from the axiom registry within the search bound"


def _certificate_from(search: _Search, state: State) -> DerivationCertificate:
    steps_reversed: list[Transition] = []
    cursor = state
    while True:
        parent = search.parent[cursor]
        if parent is None:
            break
        prev_state, rule_id = parent
        steps_reversed.append(apply_rule(rule_id, prev_state[0], prev_state[1]))
        cursor = prev_state
    family = _FAMILY_BY_ID[search.axiom_family[cursor]]
    axiom = Axiom(family.family_id, cursor[0], cursor[1], family.cite)
    return DerivationCertificate(axiom=axiom, steps=tuple(reversed(steps_reversed)), target=state)


def realize(
    label: ClassLabel, fmt: Format, *, max_coordinate: int | None = None
) -> RealizationResult:
    """Find a shortest derivation certificate for ``(label, fmt)``.

    Returns a NOT_PERMISSIBLE result (with the verdict) when the target is
    excluded, a certificate when one exists within the bounded search space,
    and NOT_FOUND (with an explanatory citation) otherwise — e.g. for C(3),
    for class G outside Gorenstein formats, or for interior H cells whose
    existence is open.
    """
    verdict = is_permissible(label, fmt)
    if verdict.status is Status.NOT_PERMISSIBLE:
        return RealizationResult(
            RealizeStatus.NOT_PERMISSIBLE,
            verdict=verdict,
            detail="; ".join(v.detail for v in verdict.violations),
        )
    cap = max_coordinate if max_coordinate is not None else _max_search()
    bound = min(max(fmt.m, fmt.n) + 6, cap)
    if fmt.m > bound or fmt.n > bound:
        return RealizationResult(
            RealizeStatus.NOT_FOUND,
            detail=f"target format {fmt} exceeds the search cap {cap} ({SEARCH_ENV_VAR})",
        )
    search = _search_for(bound)
    state: State = (label, fmt)
    if not search.find(state):
        return RealizationResult(RealizeStatus.NOT_FOUND, detail=_not_found_detail(label))
    return RealizationResult(RealizeStatus.REALIZED, certificate=_certificate_from(search, state))


def verify_certificate(cert: DerivationCertificate) -> bool:
    """Strictly replay a certificate; True only if every step checks out.

    Checks that the axiom instance belongs to its claimed family, that each
    step's input matches the previous state, that each rule application
    reproduces the recorded output, that no intermediate state is
    NOT_PERMISSIBLE, and that the final state equals the target.
    """
    family = _FAMILY_BY_ID.get(cert.axiom.family)
    if family is None or not family.contains(cert.axiom.label, cert.axiom.fmt):
        return False
    state: State = (cert.axiom.label, cert.axiom.fmt)
    if isinstance(state[0], ClassLabel):
        if is_permissible(state[0], state[1]).status is Status.NOT_PERMISSIBLE:
            return False
    for step in cert.steps:
        if step.input_state != state:
            return False
        try:
            replay = apply_rule(step.rule, state[0], state[1])
        except Grade3Error:
            return False
        if replay.output_state != step.output_state:
            return False
        state = replay.output_state
        if isinstance(state[0], ClassLabel):
            if is_permissible(state[0], state[1]).status is Status.NOT_PERMISSIBLE:
                return False
    return state == cert.target


def certificate_to_document(cert: DerivationCertificate) -> dict:
    """Versioned JSON document form of a certificate."""
    return {
        "version": CERTIFICATE_VERSION,
        "axiom": {
            "family": cert.axiom.family,
            "class": str(cert.axiom.label),
            "format": str(cert.axiom.fmt),
            "cite": cert.axiom.cite,
        },
        "steps": [transition_to_document(step) for step in cert.steps],
        "target": {"class": str(cert.target[0]), "format": str(cert.target[1])},
    }


def _parse_state_label(text: object, what: str) -> StateLabel:
    if not isinstance(text, str):
        raise DocumentError(f"{what} must be a string, got {text!r}")
    if text == "*":
        return OPAQUE
    return parse_label(text)


def certificate_from_document(doc: object) -> DerivationCertificate:
    """Parse the document form; rejects anything outside the schema."""
    if not isinstance(doc, dict):
        raise DocumentError(f"certificate must be an object, got {type(doc).__name__}")
    expected = {"version", "axiom", "steps", "target"}
    if set(doc) != expected:
        raise DocumentError(f"certificate fields must be exactly {sorted(expected)}, got {sorted(doc)}")
    if doc["version"] != CERTIFICATE_VERSION:
        raise DocumentError(f"unsupported certificate version {doc['version']!r}")
    axiom_doc = doc["axiom"]
    if not isinstance(axiom_doc, dict) or set(axiom_doc) != {"family", "class", "format", "cite"}:
        raise DocumentError("certificate axiom must have fields family, class, format, cite")
    if not isinstance(axiom_doc["family"], str) or not isinstance(axiom_doc["cite"], str):
        raise DocumentError("axiom family and cite must be strings")
    if not isinstance(axiom_doc["format"], str):
        raise DocumentError("axiom format must be a string")
    axiom = Axiom(
        family=axiom_doc["family"],
        label=_parse_state_label(axiom_doc["class"], "axiom class"),
        fmt=parse_format(axiom_doc["format"]),
        cite=axiom_doc["cite"],
    )
    if not isinstance(doc["steps"], list):
        raise DocumentError("certificate steps must be a list")
    steps = tuple(transition_from_document(step) for step in doc["steps"])
    target_doc = doc["target"]
    if not isinstance(target_doc, dict) or set(target_doc) != {"class", "format"}:
        raise DocumentError("certificate target must have fields class, format")
    if not isinstance(target_doc["format"], str):
        raise DocumentError("target format must be a string")
    target: State = (
        _parse_state_label(target_doc["class"], "target class"),
        parse_format(target_doc["format"]),
    )
    return DerivationCertificate(axiom=axiom, steps=steps, target=target)


@dataclass(frozen=True)
class CoverageEntry:
    """One realization attempt in a coverage sweep."""

    kind: str
    label: ClassLabel
    fmt: Format
    status: RealizeStatus
    verified: bool

    @property
    def covered(self) -> bool:
        return self.status is RealizeStatus.REALIZED and self.verified


@dataclass(frozen=True)
class CoverageReport:
    """Result of sweeping realize over every provably-permissible target."""

    m_max: int
    n_max: int
    entries: tuple[CoverageEntry, ...]

    @property
    def gaps(self) -> tuple[CoverageEntry, ...]:
        return tuple(e for e in self.entries if not e.covered)

    def entries_of_kind(self, kind: str) -> tuple[CoverageEntry, ...]:
        return tuple(e for e in self.entries if e.kind == kind)


def realize_all(m_max: int, n_max: int) -> CoverageReport:
    """Realize every permissible T and B format and every boundary H label.

    Sweeps ``m <= m_max``, ``n <= n_max``, calls :func:`realize` on each
    target, replays each certificate with :func:`verify_certificate`, and
    reports per-target outcomes; ``gaps`` lists targets without a verified
    certificate.
    """
    if m_max < 4 or n_max < 2:
        raise OutOfDomain(f"coverage sweep needs m_max >= 4 and n_max >= 2, got ({m_max}, {n_max})")
    entries: list[CoverageEntry] = []

    def attempt(kind: str, label: ClassLabel, fmt: Format) -> None:
        result = realize(label, fmt)
        verified = result.status is RealizeStatus.REALIZED and verify_certificate(
            result.certificate
        )
        entries.append(CoverageEntry(kind, label, fmt, result.status, verified))

    for m in range(4, m_max + 1):
        for n in range(3, n_max + 1):
            fmt = make_format(m, n)
            if is_permissible(CLASS_T, fmt).status is Status.PERMISSIBLE:
                attempt("T", CLASS_T, fmt)
    for m in range(5, m_max + 1):
        for n in range(2, n_max + 1):
            fmt = make_format(m, n)
            if is_permissible(CLASS_B, fmt).status is Status.PERMISSIBLE:
                attempt("B", CLASS_B, fmt)
    for m in range(4, m_max + 1):
        for n in range(2, n_max + 1):
            fmt = make_format(m, n)
            for label in sorted(boundary_classes(fmt)):
                attempt("H-boundary", label, fmt)
    return CoverageReport(m_max=m_max, n_max=n_max, entries=tuple(entries))


FAMILY_ASSIGNMENT_IDS = (
    "column-m2",
    "column-m0",
    "column-m1",
    "row-n2",
    "row-n0",
    "row-n1",
    "hs-diagonal",
)


def family_assignment(fmt: Format) -> str:
    """Which construction family covers a T-permissible format.

    The chart of class-T formats with ``m >= 5``, ``n >= 4`` is covered by
    three vertical strips (fixed m mod 3, wide n), three horizontal strips
    (fixed n mod 3, wide m), and a diagonal band settled by hypersurface
    sections; the strips are tried in a fixed precedence order.
    """
    if fmt.m < 5 or fmt.n < 4 or is_permissible(CLASS_T, fmt).status is not Status.PERMISSIBLE:
        raise OutOfDomain(
            f"family assignment covers T-permissible formats with m >= 5 and n >= 4; got {fmt}"
        )
    m, n = fmt.m, fmt.n
    if m % 3 == 2 and n >= m:
        return "column-m2"
    if m % 3 == 0 and n >= m:
        return "column-m0"
    if m % 3 == 1 and n >= m - 1:
        return "column-m1"
    if n % 3 == 2 and m >= n + 3:
        return "row-n2"
    if n % 3 == 0 and m >= n + 3:
        return "row-n0"
    if n % 3 == 1 and m >= n + 2:
        return "row-n1"
    return "hs-diagonal"
