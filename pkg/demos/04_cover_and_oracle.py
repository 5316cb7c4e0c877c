"""Inspect the machinery behind a verdict: the cyclic-cover certificate
and the bounded immersion oracle.

The cover window materializes a finite slice of the infinite cyclic cover
and checks that the concatenability certificate really produces a
slim-style edge order: every lifted 2-cell has its witness lift as the
unique minimal boundary edge, traversed with nonzero signed count.

The oracle enumerates small immersions outright.  For <a | a^2> it finds
the presentation complex itself as a chi = 1 non-collapsible candidate
(proper powers break the hypotheses); for the certified presentation the
scan comes back empty.
"""

from npicheck import (
    build_cover_window,
    build_slim_certificate,
    check_presentation,
    npi_scan,
    parse_presentation,
    verify_weak_slim_certificate,
)
from npicheck.cover import lifted_boundary
from npicheck.orders import IntTarget, TargetAssignment

pres = parse_presentation(
    "gens: a b c\nrel: a^-1 b\nrel: c^-1 b^-1 c a b a^-1 c^-1 b^-1 c^2\n"
)
weights = (1, 1, 1)
verdict = check_presentation(pres, IntTarget(), TargetAssignment.all_ones(pres))
slim = build_slim_certificate(pres, verdict.multisets, verdict.certificate)
window = build_cover_window(pres, weights, -4, 4)
print(f"window [-4, 4] holds {len(window.cells)} two-cells")
cell = window.cells[0]
print(f"lifted boundary of {cell}:")
for edge, direction in lifted_boundary(window, cell):
    arrow = "->" if direction == 1 else "<-"
    print(f"  {arrow} {pres.generators[edge.gen]} at level {edge.level}")
report = verify_weak_slim_certificate(pres, weights, verdict.multisets, slim, window)
for check in report.checks:
    print(f"  [{'ok' if check.ok else 'FAIL'}] {check.check}")

print()
torsion = parse_presentation("gens: a\nrel: a^2\n")
for name, target, bounds in (("<a | a^2>", torsion, (1, 1)), ("certified", pres, (6, 2))):
    reports = npi_scan(target, *bounds)
    print(f"scan of {name} at bounds {bounds}: {len(reports)} candidate(s)")
    for r in reports:
        print(f"  chi={r.chi}: {r.complex.to_dict(target)}")
