"""Deriving and checking existence certificates.

A certificate proves that a (class, format) pair is realized by an actual
perfect ideal: it names an instance from a published base family and a
chain of linkage-rule applications leading to the target.  Certificates
are ordinary JSON documents, and verification replays every step.

Run:  python3 demos/certificate_workflow.py
"""

import json

from grade3 import (
    CLASS_T,
    RealizeStatus,
    certificate_from_document,
    certificate_to_document,
    class_G,
    class_H,
    family_assignment,
    make_format,
    realize,
    realize_all,
    verify_certificate,
)


def main():
    print("Searching for a shortest derivation of class T in format (8,6):")
    result = realize(CLASS_T, make_format(8, 6))
    doc = certificate_to_document(result.certificate)
    print(json.dumps(doc, indent=2, sort_keys=True))
    print(f"verify_certificate: {verify_certificate(result.certificate)}")
    print()

    print("Tampering with any step is caught on replay:")
    doc["target"]["class"] = "H(2,2)"
    print(f"  after editing the target: {verify_certificate(certificate_from_document(doc))}")
    print()

    print("Some targets have no derivation, and the reason is reported:")
    for label, fmt in [(class_G(4), make_format(6, 3)), (CLASS_T, make_format(4, 2))]:
        result = realize(label, fmt)
        if result.status is RealizeStatus.NOT_PERMISSIBLE:
            rules = ", ".join(v.rule for v in result.verdict.violations)
            print(f"  {label} {fmt}: {result.status.value} ({rules})")
        else:
            print(f"  {label} {fmt}: {result.status.value} — {result.detail}")
    print()

    print("Coverage sweep (m <= 10, n <= 8): every permissible class-T and")
    print("class-B format and every boundary H label gets a verified certificate.")
    report = realize_all(10, 8)
    for kind in ("T", "B", "H-boundary"):
        entries = report.entries_of_kind(kind)
        covered = sum(e.covered for e in entries)
        print(f"  {kind:<12} {covered}/{len(entries)} covered")
    print(f"  gaps: {len(report.gaps)}")
    print()

    print("Which construction family covers each class-T cell (m 5..12, n 4..10):")
    for m in range(5, 13):
        row = " ".join(f"{family_assignment(make_format(m, n)):<11}" for n in range(4, 11))
        print(f"  m={m:<3} {row}")


if __name__ == "__main__":
    main()
