"""
Streaming quickstart
====================

Compress a trajectory while it arrives, one point at a time, with a hard
cap on how far any dropped point may sit from the output line.
"""

from trajsimp import FitConfig, Mode, OperbEncoder, Point, simplify

# A delivery round: east along a street, a slanted shortcut, then north.
route = [
    Point(0.0, 0.0, 0.0),
    Point(30.0, 0.5, 10.0),
    Point(60.0, -0.5, 20.0),
    Point(90.0, 0.0, 30.0),
    Point(110.0, 15.0, 40.0),
    Point(130.0, 30.0, 50.0),
    Point(130.5, 60.0, 60.0),
    Point(129.5, 90.0, 70.0),
    Point(130.0, 120.0, 80.0),
]

# zeta is the error bound in the same unit as the coordinates (say metres):
# every input point ends up within zeta of the segment that replaced it.
cfg = FitConfig(zeta=5.0)

# The encoder is fed point by point, exactly how a GPS receiver would
# deliver them. Segments come out as soon as they are final.
encoder = OperbEncoder(cfg, Mode.OPERB, route[0])
for p in route[1:]:
    for seg in encoder.push(p):
        print(f"closed while streaming: {seg.start} -> {seg.end}")
for seg in encoder.finish():
    print(f"closed at finish:         {seg.start} -> {seg.end}")

# For data that is already in memory there is a one-call wrapper. It runs
# the same encoder, so the output is identical.
rep = simplify(route, cfg)
print()
print(f"{len(route)} points became {len(rep.segments)} segments:")
for seg in rep.segments:
    print(f"  {seg.start} -> {seg.end}  (stands in for {seg.covered} points)")
