"""
Comparing the five algorithms
=============================

Same corpus, same error bounds, five compressors: batch Douglas-Peucker,
the open-window scanner, the hull-window scanner, and the two streaming
encoders (plain and with corner patching). Lower ratio is better; every
row respects its bound by construction.
"""

import time

from trajsimp import (
    ALGORITHMS,
    FitConfig,
    compress_corpus,
    compute_stats,
    gen_grid_route,
)

# Forty synthetic street-grid routes, 400 samples each. The step is the
# lattice spacing, so zeta values below it force faithful corners.
corpus = {f"route-{seed:02d}": gen_grid_route(400, seed, step=20.0) for seed in range(40)}
trajs = list(corpus.values())

print(f"{'algo':<8} {'zeta':>6} {'segments':>9} {'ratio':>8} {'max_err':>9} {'wall_s':>7}")
for zeta in (5.0, 20.0, 40.0, 100.0):
    cfg = FitConfig(zeta=zeta)
    for algo in ("dp", "opw", "fbqs", "operb", "operb-a"):
        start = time.perf_counter()
        reps = compress_corpus(corpus, algo, cfg)
        wall = time.perf_counter() - start
        stats = compute_stats(list(reps.values()), trajs, wall)
        print(
            f"{algo:<8} {zeta:>6g} {stats.output_segments:>9d} "
            f"{stats.ratio:>8.4f} {stats.max_error:>9.3f} {wall:>7.3f}"
        )
    print()

print("algorithms available programmatically:", ", ".join(sorted(ALGORITHMS)))
print("the same table comes from the command line:")
print("  trajsimp gen --kind grid-route --n 400 --step 20 --output corpus.csv")
print("  trajsimp compare --input corpus.csv --epsilon-list 5,20,40,100")
