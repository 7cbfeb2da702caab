"""Touring the H(p,q) permissibility atlas.

For a fixed format (m, n), every candidate label H(p,q) with p <= n+1 and
q <= m-2 is checked against the obstruction rulebook:

* dotted (.) — excluded: at least one rule is violated
* black  (#) — realized: a boundary label with a known construction
* white  (o) — open: all necessary conditions hold, no construction known

Run:  python3 demos/atlas_tour.py
"""

from grade3 import (
    atlas_grid,
    boundary_classes,
    class_H,
    is_permissible,
    make_format,
    render_atlas_text,
)


def main():
    fmt = make_format(8, 6)
    print(render_atlas_text(atlas_grid(fmt)))

    print("Realized boundary labels at (8,6):")
    for label in sorted(boundary_classes(fmt)):
        print(f"  {label}")
    print()

    print("Why is H(6,3) excluded at (8,6)?")
    verdict = is_permissible(class_H(6, 3), fmt)
    print(f"  status: {verdict.status.value}")
    for violation in verdict.violations:
        print(f"  rule {violation.rule}: {violation.detail}")
        print(f"    [{violation.cite}]")
    print()

    print("The same boundary strips move with the format:")
    for m, n in [(6, 3), (9, 4), (12, 7)]:
        labels = ", ".join(str(c) for c in sorted(boundary_classes(make_format(m, n))))
        print(f"  ({m},{n}): {labels or '(none)'}")


if __name__ == "__main__":
    main()
