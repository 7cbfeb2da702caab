"""Which (class, format) pairs can occur: verdicts, boundaries, atlases.

For a class label ``c`` and format ``(m, n)``, :func:`is_permissible` returns
one of three verdicts:

* ``PERMISSIBLE`` — a perfect ideal with this class and format exists,
* ``NOT_PERMISSIBLE`` — at least one published obstruction rules it out
  (every violated rule is reported with a citation),
* ``UNKNOWN_NECESSARY_ONLY`` — all known necessary conditions hold but no
  construction is known.

Classes B, C(3), T, and G-in-Gorenstein-formats are fully decided.  For
class H the obstruction list combines format bounds, corner identities, and
parity windows; the cells that remain clean are provably realizable exactly
on the two boundary strips ``p = n - 1`` and ``q = m - 4`` (plus corners and
the ``m = 4`` / ``n = 2`` families), which is what :func:`boundary_classes`
enumerates and the atlas renders.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Mapping

from .labels import ClassLabel, Format, class_H

__all__ = [
    "Status",
    "RuleViolation",
    "PermissibilityVerdict",
    "is_permissible",
    "boundary_classes",
    "CellStatus",
    "AtlasGrid",
    "atlas_grid",
    "render_atlas_text",
    "render_atlas_csv",
]

CITE_AV12 = "Avramov 2012"
CITE_B84 = "Brown 1984"
CITE_BE77 = "Buchsbaum-Eisenbud 1977"
CITE_CVW17 = "Christensen-Veliche-Weyman 2017"
CITE_CVW20 = "Christensen-Veliche-Weyman 2020"
CITE_W89 = "Weyman 1989; Avramov-Kustin-Miller 1988"


class Status(str, Enum):
    PERMISSIBLE = "permissible"
    NOT_PERMISSIBLE = "not-permissible"
    UNKNOWN_NECESSARY_ONLY = "unknown-necessary-only"


@dataclass(frozen=True)
class RuleViolation:
    """One violated obstruction: stable rule id, human detail, citation."""

    rule: str
    detail: str
    cite: str


@dataclass(frozen=True)
class PermissibilityVerdict:
    status: Status
    violations: tuple[RuleViolation, ...] = ()


_PERMISSIBLE = PermissibilityVerdict(Status.PERMISSIBLE)
_UNKNOWN = PermissibilityVerdict(Status.UNKNOWN_NECESSARY_ONLY)


def _not_permissible(*violations: RuleViolation) -> PermissibilityVerdict:
    return PermissibilityVerdict(Status.NOT_PERMISSIBLE, violations)


# --- class H obstruction list -------------------------------------------------

_HCheck = Callable[[int, int, int, int], str | None]


def _h_rules() -> tuple[tuple[str, _HCheck, str], ...]:
    """(rule id, check(p, q, m, n) -> detail | None, citation) in fixed order."""

    def format_min(p: int, q: int, m: int, n: int) -> str | None:
        if m < 4 or n < 2:
            return f"class H needs m >= 4 and n >= 2; format is ({m},{n})"
        return None

    def n_equals_p(p: int, q: int, m: int, n: int) -> str | None:
        return f"n = p = {p} is excluded" if n == p else None

    def m_equals_q3(p: int, q: int, m: int, n: int) -> str | None:
        return f"m = q + 3 = {m} is excluded" if m == q + 3 else None

    def p_bound(p: int, q: int, m: int, n: int) -> str | None:
        bound = max(m - 1, n + 1)
        return f"p = {p} exceeds max(m-1, n+1) = {bound}" if p > bound else None

    def q_bound(p: int, q: int, m: int, n: int) -> str | None:
        bound = max(m - 2, n)
        return f"q = {q} exceeds max(m-2, n) = {bound}" if q > bound else None

    def m_lower(p: int, q: int, m: int, n: int) -> str | None:
        if m < p + 1 or m < q + 2:
            return f"m = {m} is below max(p+1, q+2) = {max(p + 1, q + 2)}"
        return None

    def n_lower(p: int, q: int, m: int, n: int) -> str | None:
        if n < p - 1 or n < q:
            return f"n = {n} is below max(p-1, q) = {max(p - 1, q)}"
        return None

    def row_p_minus_1(p: int, q: int, m: int, n: int) -> str | None:
        if n == p - 1 and not (m == p + 1 and m == q + 2):
            return f"n = p - 1 requires the corner m = p + 1 = q + 2; format is ({m},{n})"
        return None

    def col_q_plus_2(p: int, q: int, m: int, n: int) -> str | None:
        if m == q + 2 and not (n == q and p == n + 1):
            return f"m = q + 2 requires the corner n = q, p = n + 1; label is H({p},{q})"
        return None

    def q_m_minus_2(p: int, q: int, m: int, n: int) -> str | None:
        if q == m - 2 and p != n + 1:
            return f"q = m - 2 requires p = n + 1 = {n + 1}; p = {p}"
        return None

    def row_p_plus_1_parity(p: int, q: int, m: int, n: int) -> str | None:
        if n == p + 1 and (q - (m - 4)) % 2 != 0:
            return f"n = p + 1 requires q == m - 4 (mod 2); q = {q}, m - 4 = {m - 4}"
        return None

    def col_q_plus_4_parity(p: int, q: int, m: int, n: int) -> str | None:
        if m == q + 4 and (p - (n - 1)) % 2 != 0:
            return f"m = q + 4 requires p == n - 1 (mod 2); p = {p}, n - 1 = {n - 1}"
        return None

    def boundary_p_window(p: int, q: int, m: int, n: int) -> str | None:
        if p == n - 1 and (q > m - 4 or (q - (m - 4)) % 2 != 0):
            return f"p = n - 1 requires q <= m - 4 with q == m - 4 (mod 2); q = {q}"
        return None

    def boundary_q_window(p: int, q: int, m: int, n: int) -> str | None:
        if q == m - 4 and (p > n - 1 or (p - (n - 1)) % 2 != 0):
            return f"q = m - 4 requires p <= n - 1 with p == n - 1 (mod 2); p = {p}"
        return None

    def aci_formats(p: int, q: int, m: int, n: int) -> str | None:
        if m != 4:
            return None
        if (p, q) == (3, 2) and n == 2:
            return None
        if (p, q) == (3, 0) and n >= 4 and n % 2 == 0:
            return None
        return f"formats (4,n) only carry H(3,2) at (4,2) and H(3,0) at even n >= 4; label is H({p},{q})"

    def type_two_formats(p: int, q: int, m: int, n: int) -> str | None:
        if n != 2:
            return None
        if (p, q) == (3, 2) and m == 4:
            return None
        if (p, q) == (1, 2) and m >= 6 and m % 2 == 0:
            return None
        return f"formats (m,2) only carry H(3,2) at (4,2) and H(1,2) at even m >= 6; label is H({p},{q})"

    return (
        ("H-format-min", format_min, f"{CITE_AV12}; {CITE_CVW17}"),
        ("H-n-equals-p", n_equals_p, f"{CITE_AV12}; {CITE_CVW20}"),
        ("H-m-equals-q-plus-3", m_equals_q3, f"{CITE_AV12}; {CITE_CVW20}"),
        ("H-p-exceeds-bound", p_bound, CITE_AV12),
        ("H-q-exceeds-bound", q_bound, CITE_AV12),
        ("H-m-below-p-or-q", m_lower, CITE_AV12),
        ("H-n-below-p-or-q", n_lower, CITE_AV12),
        ("H-row-p-minus-1-corner", row_p_minus_1, CITE_AV12),
        ("H-col-q-plus-2-corner", col_q_plus_2, CITE_AV12),
        ("H-q-equals-m-minus-2", q_m_minus_2, CITE_AV12),
        ("H-row-p-plus-1-parity", row_p_plus_1_parity, CITE_CVW20),
        ("H-col-q-plus-4-parity", col_q_plus_4_parity, CITE_CVW20),
        ("H-boundary-p-window", boundary_p_window, f"{CITE_CVW20}; {CITE_AV12}"),
        ("H-boundary-q-window", boundary_q_window, f"{CITE_CVW20}; {CITE_AV12}"),
        ("H-aci-format-classes", aci_formats, CITE_AV12),
        ("H-type-two-format-classes", type_two_formats, CITE_B84),
    )


_H_RULES = _h_rules()


def _h_verdict(p: int, q: int, m: int, n: int) -> PermissibilityVerdict:
    violations = []
    for rule_id, check, cite in _H_RULES:
        detail = check(p, q, m, n)
        if detail is not None:
            violations.append(RuleViolation(rule_id, detail, cite))
    if violations:
        return _not_permissible(*violations)
    # Clean cells are realized on the two boundary strips, at the corner
    # rows they force, and in the decided m = 4 / n = 2 families; everything
    # else only satisfies necessary conditions.
    if p == n - 1 or q == m - 4 or n == p - 1 or q == m - 2 or m == 4 or n == 2:
        return _PERMISSIBLE
    return _UNKNOWN


def _t_verdict(m: int, n: int) -> PermissibilityVerdict:
    violations = []
    if m < 4:
        violations.append(RuleViolation("T-m-min", f"class T needs m >= 4; m = {m}", CITE_AV12))
    if n < 3:
        violations.append(RuleViolation("T-n-min", f"class T needs n >= 3; n = {n}", CITE_B84))
    if m == 4 and n >= 3 and n % 2 == 0:
        violations.append(
            RuleViolation(
                "T-aci-parity", f"formats (4,n) carry class T only for odd n; n = {n}", CITE_AV12
            )
        )
    if m >= 5 and n == 3:
        violations.append(
            RuleViolation(
                "T-n3-needs-m4", f"class T at n = 3 occurs only for m = 4; m = {m}", CITE_CVW20
            )
        )
    if violations:
        return _not_permissible(*violations)
    return _PERMISSIBLE


def _b_verdict(m: int, n: int) -> PermissibilityVerdict:
    violations = []
    if m < 5:
        violations.append(
            RuleViolation("B-m-min", f"class B needs m >= 5; m = {m}", f"{CITE_AV12}; {CITE_B84}")
        )
    if n < 2:
        violations.append(
            RuleViolation(
                "B-gorenstein-excluded",
                "Gorenstein formats (n = 1) carry only classes C(3) and G(r)",
                f"{CITE_BE77}; {CITE_AV12}",
            )
        )
    if n == 2 and m % 2 == 0:
        violations.append(
            RuleViolation(
                "B-type-two-parity", f"formats (m,2) carry class B only for odd m; m = {m}", CITE_B84
            )
        )
    if m == 5 and n >= 3:
        violations.append(
            RuleViolation(
                "B-m5-needs-n2", f"class B at m = 5 occurs only for n = 2; n = {n}", CITE_CVW20
            )
        )
    if violations:
        return _not_permissible(*violations)
    return _PERMISSIBLE


def _c3_verdict(m: int, n: int) -> PermissibilityVerdict:
    if (m, n) == (3, 1):
        return _PERMISSIBLE
    return _not_permissible(
        RuleViolation(
            "C3-format",
            f"class C(3) is the complete intersection and occurs only in format (3,1); format is ({m},{n})",
            CITE_W89,
        )
    )


def _g_verdict(r: int, m: int, n: int) -> PermissibilityVerdict:
    if n == 1:
        violations = []
        if m != r:
            violations.append(
                RuleViolation(
                    "G-gorenstein-duality",
                    f"Gorenstein formats force r = m by Poincare duality; r = {r}, m = {m}",
                    f"{CITE_BE77}; {CITE_AV12}",
                )
            )
        if r % 2 == 0:
            violations.append(
                RuleViolation(
                    "G-gorenstein-parity",
                    f"Gorenstein ideals of grade 3 have odd minimal generation; r = {r}",
                    CITE_BE77,
                )
            )
        if r < 5:
            violations.append(
                RuleViolation(
                    "G-gorenstein-min",
                    f"format ({m},1) with m < 5 carries only class C(3); r = {r}",
                    CITE_AV12,
                )
            )
        if violations:
            return _not_permissible(*violations)
        return _PERMISSIBLE
    # Outside Gorenstein formats no construction and no obstruction is known.
    return _UNKNOWN


@lru_cache(maxsize=None)
def _verdict_cached(label: ClassLabel, fmt: Format) -> PermissibilityVerdict:
    m, n = fmt.m, fmt.n
    if label.tag == "H":
        return _h_verdict(label.p, label.q, m, n)
    if label.tag == "T":
        return _t_verdict(m, n)
    if label.tag == "B":
        return _b_verdict(m, n)
    if label.tag == "C3":
        return _c3_verdict(m, n)
    if label.tag == "G":
        return _g_verdict(label.r, m, n)
    raise ValueError(f"unknown class tag {label.tag!r}")


def is_permissible(label: ClassLabel, fmt: Format) -> PermissibilityVerdict:
    """Verdict for ``label`` in ``fmt`` with all violated rules cited."""
    return _verdict_cached(label, fmt)


def boundary_classes(fmt: Format) -> frozenset[ClassLabel]:
    """All permissible H labels on the boundary strips of ``fmt``.

    These are the labels with ``p = n - 1`` (and ``q <= m - 4`` of matching
    parity) or ``q = m - 4`` (and ``p <= n - 1`` of matching parity) whose
    verdict is PERMISSIBLE.
    """
    m, n = fmt.m, fmt.n
    candidates: set[ClassLabel] = set()
    if n >= 1 and m >= 4:
        start = (m - 4) % 2
        for q in range(start, m - 3, 2):
            candidates.add(class_H(n - 1, q))
        start = (n - 1) % 2
        for p in range(start, n, 2):
            candidates.add(class_H(p, m - 4))
    return frozenset(
        c for c in candidates if is_permissible(c, fmt).status is Status.PERMISSIBLE
    )


class CellStatus(str, Enum):
    WHITE = "white"
    DOTTED = "dotted"
    BLACK = "black"


_GLYPHS = {CellStatus.WHITE: "o", CellStatus.DOTTED: ".", CellStatus.BLACK: "#"}


@dataclass(frozen=True)
class AtlasGrid:
    """Status of every H(p,q) cell for one format.

    Cells range over ``0 <= p <= n + 1`` and ``0 <= q <= m - 2``; ``violations``
    holds the violated rule ids for the dotted cells (empty tuples otherwise).
    """

    fmt: Format
    cells: Mapping[tuple[int, int], CellStatus]
    violations: Mapping[tuple[int, int], tuple[str, ...]]


def atlas_grid(fmt: Format) -> AtlasGrid:
    """Classify every H cell of ``fmt`` as white, dotted, or black.

    Dotted cells are NOT_PERMISSIBLE, black cells are the realizable boundary
    labels from :func:`boundary_classes`, white cells are everything else
    (including the unknown interior and the permissible corners).
    """
    boundary = boundary_classes(fmt)
    cells: dict[tuple[int, int], CellStatus] = {}
    violations: dict[tuple[int, int], tuple[str, ...]] = {}
    for p in range(0, fmt.n + 2):
        for q in range(0, fmt.m - 1):
            label = class_H(p, q)
            verdict = is_permissible(label, fmt)
            if verdict.status is Status.NOT_PERMISSIBLE:
                cells[(p, q)] = CellStatus.DOTTED
                violations[(p, q)] = tuple(v.rule for v in verdict.violations)
            else:
                cells[(p, q)] = CellStatus.BLACK if label in boundary else CellStatus.WHITE
                violations[(p, q)] = ()
    return AtlasGrid(fmt=fmt, cells=cells, violations=violations)


def render_atlas_text(grid: AtlasGrid) -> str:
    """Plain-text chart: rows are q from high to low, columns are p ascending."""
    m, n = grid.fmt.m, grid.fmt.n
    width = max(len(str(n + 1)), 1)
    out = io.StringIO()
    out.write(f"H(p,q) atlas for format {grid.fmt}\n")
    qw = max(len(str(m - 2)), 1)
    for q in range(m - 2, -1, -1):
        row = " ".join(f"{_GLYPHS[grid.cells[(p, q)]]:>{width}}" for p in range(0, n + 2))
        out.write(f"q={q:<{qw}} | {row}\n")
    out.write(f"{' ' * (qw + 2)} +-{'-' * ((width + 1) * (n + 2) - 1)}\n")
    labels = " ".join(f"{p:>{width}}" for p in range(0, n + 2))
    out.write(f"{' ' * (qw + 2)}  p={labels}\n")
    return out.getvalue()


def render_atlas_csv(grid: AtlasGrid) -> str:
    """CSV form: one row per cell with columns p, q, status, rules."""
    lines = ["p,q,status,rules"]
    for p in range(0, grid.fmt.n + 2):
        for q in range(0, grid.fmt.m - 1):
            rules = ";".join(grid.violations[(p, q)])
            lines.append(f"{p},{q},{grid.cells[(p, q)].value},{rules}")
    return "\n".join(lines) + "\n"
