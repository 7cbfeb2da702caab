"""The linkage rulebook: format maps, rank profiles, and class transitions.

Linking a perfect ideal replaces its resolution format ``(m, n)`` by a new
format determined by how many of the three designated degree-1 generators
act nontrivially.  A :class:`RankProfile` ``(t1, t2, t3)`` records those
rank contributions; the supported profiles and their format maps are

=========  ==================
profile    new format
=========  ==================
(0, 0, 0)  (n + 3, m)
(1, 0, 0)  (n + 3, m - 1)
(2, 0, 0)  (n + 3, m - 2)
(2, 1, 0)  (n + 2, m - 2)
(3, 0, 0)  (n + 3, m - 3)
=========  ==================

and the total Betti number changes by ``6 - 2*t1 - 2*t2 - t3``.

Each named rule pairs a class precondition with an output class and format.
The rule ids are stable wire vocabulary: they appear in derivation
certificates and on the command line.  Every rule's class claim can be
re-derived from structure constants with ``verify-theorems`` (the
:mod:`grade3.cone` simulator); the two ``ext-`` rules import published
constructions instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import InvalidFormat, PreconditionViolated, UnsupportedProfile, DocumentError
from .labels import (
    CLASS_B,
    CLASS_T,
    ClassLabel,
    Format,
    OpaqueLabel,
    OPAQUE,
    betti_total,
    class_G,
    class_H,
    make_format,
    parse_format,
    parse_label,
)

__all__ = [
    "RankProfile",
    "SUPPORTED_PROFILES",
    "link_option_format",
    "betti_after_link",
    "LinkageRule",
    "RULES",
    "RULE_ORDER",
    "apply_rule",
    "consistency_check",
    "Transition",
    "transition_to_document",
    "transition_from_document",
]

StateLabel = ClassLabel | OpaqueLabel
State = tuple[StateLabel, Format]

_VERIFIED = "verified from structure constants (grade3 verify-theorems)"
_CITE_CVW20 = "Christensen-Veliche-Weyman 2020"


@dataclass(frozen=True)
class RankProfile:
    """Rank contributions (t1, t2, t3) of the three designated generators."""

    t1: int
    t2: int
    t3: int

    def __post_init__(self) -> None:
        for name, value in (("t1", self.t1), ("t2", self.t2), ("t3", self.t3)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise UnsupportedProfile(f"profile component {name} must be a non-negative integer")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.t1, self.t2, self.t3)


SUPPORTED_PROFILES = (
    RankProfile(0, 0, 0),
    RankProfile(1, 0, 0),
    RankProfile(2, 0, 0),
    RankProfile(2, 1, 0),
    RankProfile(3, 0, 0),
)

_FORMAT_MAPS: dict[tuple[int, int, int], Callable[[Format], Format]] = {
    (0, 0, 0): lambda f: make_format(f.n + 3, f.m),
    (1, 0, 0): lambda f: make_format(f.n + 3, f.m - 1),
    (2, 0, 0): lambda f: make_format(f.n + 3, f.m - 2),
    (2, 1, 0): lambda f: make_format(f.n + 2, f.m - 2),
    (3, 0, 0): lambda f: make_format(f.n + 3, f.m - 3),
}


def link_option_format(fmt: Format, profile: RankProfile) -> Format:
    """Format of the linked resolution for a supported rank profile.

    Raises :class:`UnsupportedProfile` outside the five-row table, and
    :class:`InvalidFormat` when the input is too small for the profile
    (for example (3,0,0) needs ``m >= 4``).
    """
    mapper = _FORMAT_MAPS.get(profile.as_tuple())
    if mapper is None:
        raise UnsupportedProfile(f"rank profile {profile.as_tuple()} is outside the supported table")
    return mapper(fmt)


def betti_after_link(b: int, profile: RankProfile) -> int:
    """Total Betti number after linking: ``b + 6 - 2*t1 - 2*t2 - t3``."""
    if not isinstance(b, int) or isinstance(b, bool) or b < 0:
        raise InvalidFormat(f"betti number must be a non-negative integer, got {b!r}")
    return b + 6 - 2 * profile.t1 - 2 * profile.t2 - profile.t3


@dataclass(frozen=True)
class Transition:
    """One applied rule: input state, output state, and citation."""

    rule: str
    input_state: State
    output_state: State
    cite: str


def _is_h(label: StateLabel) -> bool:
    return isinstance(label, ClassLabel) and label.tag == "H"


@dataclass(frozen=True)
class LinkageRule:
    """A named linkage rule.

    ``check`` returns a human-readable reason when the input violates the
    rule's hypotheses (None when applicable); ``out_class`` and
    ``out_format`` compute the two halves of the output state; ``profile``
    is the rank-profile row the rule realizes (None for the one rule whose
    format map falls outside the supported table).
    """

    rule_id: str
    cite: str
    profile: RankProfile | None
    check: Callable[[StateLabel, Format], str | None]
    out_class: Callable[[StateLabel], ClassLabel]
    out_format: Callable[[Format], Format]
    format_domain: Callable[[Format], bool] = lambda fmt: True


def _tag_check(tag: str, extra: Callable[[ClassLabel, Format], str | None] | None = None):
    def check(label: StateLabel, fmt: Format) -> str | None:
        if not isinstance(label, ClassLabel) or label.tag != tag:
            return f"rule applies to class {tag} inputs, not {label}"
        if extra is not None:
            return extra(label, fmt)
        return None

    return check


def _check_linktoT(label: StateLabel, fmt: Format) -> str | None:
    if isinstance(label, ClassLabel) and label.tag == "C3":
        return "rule applies to any class except the complete intersection C(3)"
    return None


def _check_h_i(label: ClassLabel, fmt: Format) -> str | None:
    if label.p < 1:
        return f"rule needs p >= 1; input is {label}"
    return None


def _check_h_iii(label: ClassLabel, fmt: Format) -> str | None:
    if not (1 <= label.p <= fmt.m - 2):
        return f"rule needs 1 <= p <= m - 2; input is {label} at {fmt}"
    return None


def _check_h_iv(label: ClassLabel, fmt: Format) -> str | None:
    if label.p > fmt.m - 2:
        return f"rule needs p <= m - 2; input is {label} at {fmt}"
    return None


def _check_h_v(label: ClassLabel, fmt: Format) -> str | None:
    if label.q != 0:
        return f"rule needs q = 0; input is {label}"
    if not (2 <= label.p <= fmt.m - 3):
        return f"rule needs 2 <= p <= m - 3; input is {label} at {fmt}"
    return None


def _check_cvw31(label: StateLabel, fmt: Format) -> str | None:
    if label != class_G(5) or (fmt.m, fmt.n) != (5, 1):
        return f"rule applies only to G(5) at (5,1); input is {label} at {fmt}"
    return None


def _check_cvw33(label: StateLabel, fmt: Format) -> str | None:
    if label != class_H(2, 0):
        return f"rule applies only to H(2,0); input is {label}"
    if fmt.n != 3 or fmt.m < 6 or fmt.m % 2 != 0:
        return f"rule applies only at formats (m,3) with even m >= 6; input is at {fmt}"
    return None


def _rules() -> dict[str, LinkageRule]:
    rp = {t: RankProfile(*t) for t in ((0, 0, 0), (1, 0, 0), (2, 0, 0), (2, 1, 0), (3, 0, 0))}
    rules = [
        LinkageRule(
            "linktoT",
            _VERIFIED,
            rp[(0, 0, 0)],
            _check_linktoT,
            lambda c: CLASS_T,
            lambda f: make_format(f.n + 3, f.m),
        ),
        LinkageRule(
            "linkT-i",
            _VERIFIED,
            rp[(1, 0, 0)],
            _tag_check("T"),
            lambda c: class_H(2, 0),
            lambda f: make_format(f.n + 3, f.m - 1),
        ),
        LinkageRule(
            "linkT-ii",
            _VERIFIED,
            rp[(1, 0, 0)],
            _tag_check("T"),
            lambda c: class_H(2, 2),
            lambda f: make_format(f.n + 3, f.m - 1),
        ),
        LinkageRule(
            "linkT-iii",
            _VERIFIED,
            rp[(2, 0, 0)],
            _tag_check("T"),
            lambda c: class_H(1, 2),
            lambda f: make_format(f.n + 3, f.m - 2),
        ),
        LinkageRule(
            "linkT-iv",
            _VERIFIED,
            rp[(2, 1, 0)],
            _tag_check("T"),
            lambda c: CLASS_B,
            lambda f: make_format(f.n + 2, f.m - 2),
        ),
        LinkageRule(
            "linkG-i",
            _VERIFIED,
            rp[(1, 0, 0)],
            _tag_check("G"),
            lambda c: class_H(3, 0),
            lambda f: make_format(f.n + 3, f.m - 1),
        ),
        LinkageRule(
            "linkG-ii",
            _VERIFIED,
            rp[(2, 0, 0)],
            _tag_check("G"),
            lambda c: CLASS_T,
            lambda f: make_format(f.n + 3, f.m - 2),
        ),
        LinkageRule(
            "linkH-i",
            _VERIFIED,
            rp[(1, 0, 0)],
            _tag_check("H", _check_h_i),
            lambda c: class_H(2, 1),
            lambda f: make_format(f.n + 3, f.m - 1),
        ),
        LinkageRule(
            "linkH-ii",
            _VERIFIED,
            rp[(1, 0, 0)],
            _tag_check("H"),
            lambda c: class_H(c.q + 2, c.p),
            lambda f: make_format(f.n + 3, f.m - 1),
        ),
        LinkageRule(
            "linkH-iii",
            _VERIFIED,
            rp[(2, 0, 0)],
            _tag_check("H", _check_h_iii),
            lambda c: class_H(1, 1),
            lambda f: make_format(f.n + 3, f.m - 2),
        ),
        LinkageRule(
            "linkH-iv",
            _VERIFIED,
            rp[(2, 0, 0)],
            _tag_check("H", _check_h_iv),
            lambda c: class_H(c.q + 1, c.p),
            lambda f: make_format(f.n + 3, f.m - 2),
        ),
        LinkageRule(
            "linkH-v",
            _VERIFIED,
            rp[(3, 0, 0)],
            _tag_check("H", _check_h_v),
            lambda c: class_H(0, c.p),
            lambda f: make_format(f.n + 3, f.m - 3),
        ),
        LinkageRule(
            "ext-CVW31",
            f"{_CITE_CVW20}, Prop. 3.1",
            rp[(3, 0, 0)],
            _check_cvw31,
            lambda c: class_H(3, 2),
            lambda f: make_format(4, 2),
            format_domain=lambda f: (f.m, f.n) == (5, 1),
        ),
        LinkageRule(
            "ext-CVW33",
            f"{_CITE_CVW20}, Prop. 3.3",
            None,
            _check_cvw33,
            lambda c: class_H(0, 1),
            lambda f: make_format(5, f.m - 3),
            format_domain=lambda f: f.n == 3 and f.m >= 6 and f.m % 2 == 0,
        ),
    ]
    return {rule.rule_id: rule for rule in rules}


RULES: dict[str, LinkageRule] = _rules()
RULE_ORDER: tuple[str, ...] = tuple(RULES)


def apply_rule(rule_id: str, label: StateLabel, fmt: Format) -> Transition:
    """Apply a named rule to a state, or raise :class:`PreconditionViolated`.

    The output records the rule id and its citation, ready for inclusion in
    a derivation certificate.
    """
    rule = RULES.get(rule_id)
    if rule is None:
        raise PreconditionViolated(f"unknown linkage rule {rule_id!r}")
    reason = rule.check(label, fmt)
    if reason is not None:
        raise PreconditionViolated(f"{rule_id}: {reason}")
    try:
        out_fmt = rule.out_format(fmt)
    except InvalidFormat as exc:
        raise PreconditionViolated(f"{rule_id}: output format degenerate for input {fmt}: {exc}") from exc
    return Transition(
        rule=rule_id,
        input_state=(label, fmt),
        output_state=(rule.out_class(label), out_fmt),
        cite=rule.cite,
    )


def consistency_check(rule_id: str) -> bool:
    """Does the rule's format map agree with its rank-profile row?

    Compares ``out_format`` against :func:`link_option_format` at the rule's
    profile over a sweep of formats.  Returns False for a rule whose profile
    falls outside the supported table (``ext-CVW33``: its map
    ``(m,3) -> (5, m-3)`` would need the unsupported row (3,1,0)).
    """
    rule = RULES.get(rule_id)
    if rule is None:
        raise PreconditionViolated(f"unknown linkage rule {rule_id!r}")
    if rule.profile is None:
        return False
    checked = 0
    for m in range(1, 25):
        for n in range(1, 21):
            fmt = make_format(m, n)
            if not rule.format_domain(fmt):
                continue
            try:
                expected = link_option_format(fmt, rule.profile)
            except InvalidFormat:
                expected = None
            try:
                actual = rule.out_format(fmt)
            except InvalidFormat:
                actual = None
            if expected != actual:
                return False
            if expected is not None:
                if betti_total(expected) != betti_after_link(betti_total(fmt), rule.profile):
                    return False
                checked += 1
    return checked > 0


def _render_state(state: State) -> list[str]:
    label, fmt = state
    return [str(label), str(fmt)]


def _parse_state(value: object, what: str) -> State:
    if not isinstance(value, list) or len(value) != 2:
        raise DocumentError(f"{what} must be a [class, format] pair, got {value!r}")
    text_label, text_fmt = value
    if not isinstance(text_label, str) or not isinstance(text_fmt, str):
        raise DocumentError(f"{what} entries must be strings, got {value!r}")
    label: StateLabel
    if text_label == "*":
        label = OPAQUE
    else:
        label = parse_label(text_label)
    return (label, parse_format(text_fmt))


def transition_to_document(t: Transition) -> dict:
    """Wire form: ``{"rule": ..., "in": [...], "out": [...], "cite": ...}``."""
    return {
        "rule": t.rule,
        "in": _render_state(t.input_state),
        "out": _render_state(t.output_state),
        "cite": t.cite,
    }


def transition_from_document(doc: object) -> Transition:
    """Parse the wire form; rejects unknown or missing fields."""
    if not isinstance(doc, dict):
        raise DocumentError(f"transition must be an object, got {type(doc).__name__}")
    expected = {"rule", "in", "out", "cite"}
    if set(doc) != expected:
        raise DocumentError(
            f"transition fields must be exactly {sorted(expected)}, got {sorted(doc)}"
        )
    rule = doc["rule"]
    cite = doc["cite"]
    if not isinstance(rule, str) or not isinstance(cite, str):
        raise DocumentError("transition rule and cite must be strings")
    return Transition(
        rule=rule,
        input_state=_parse_state(doc["in"], "transition input"),
        output_state=_parse_state(doc["out"], "transition output"),
        cite=cite,
    )
