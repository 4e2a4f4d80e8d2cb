"""
How corner patching removes two-point segments
===============================================

A streaming encoder sometimes emits a segment that stands in for nothing
but its own two endpoints. Such a segment buys no compression; it only
happens where the trajectory turns faster than one segment can follow.
The patched mode (operb-a) holds the last two closed segments back and,
when the middle one covers just its endpoints, tries to replace it with
the intersection point of its neighbours.
"""

import math

from trajsimp import FitConfig, Mode, figure_fixture, simplify

# A nine-point L-shape whose corner is cut by a diagonal sample. At
# zeta=0.5 the diagonal cannot be absorbed by either straight run.
corner = figure_fixture("corner")
for p in corner:
    print(f"  t={p.t:g}  ({p.x:g}, {p.y:g})")

plain = simplify(corner, FitConfig(zeta=0.5), Mode.OPERB)
print(f"\nplain streaming output ({len(plain.segments)} segments):")
for seg in plain.segments:
    note = "  <- covers only its endpoints" if seg.covered == 2 else ""
    print(f"  {seg.start} -> {seg.end}  covered={seg.covered}{note}")

patched = simplify(corner, FitConfig(zeta=0.5), Mode.OPERB_A)
print(f"\npatched streaming output ({len(patched.segments)} segments):")
for seg in patched.segments:
    note = "  <- starts at an interpolated corner" if seg.patched_start else ""
    print(f"  {seg.start} -> {seg.end}  covered={seg.covered}{note}")
print(
    f"\ncandidates seen: {patched.anomalous_candidates}, "
    f"patched away: {patched.patches}"
)

# The patch must keep the corner geometry honest: gamma_m is the smallest
# corner angle the patch may cut. Raising it towards pi forbids patching
# sharper and sharper corners until nothing qualifies.
print("\ngamma_m sweep on the same input:")
for frac, label in ((1 / 6, "pi/6"), (1 / 3, "pi/3"), (1 / 2, "pi/2"), (1.0, "pi")):
    cfg = FitConfig(zeta=0.5, gamma_m=frac * math.pi)
    rep = simplify(corner, cfg, Mode.OPERB_A)
    print(f"  gamma_m={label:<5} -> {len(rep.segments)} segments, {rep.patches} patch(es)")
