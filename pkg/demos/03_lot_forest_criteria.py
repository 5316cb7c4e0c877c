"""Labelled oriented trees and the letter-graph forest criteria.

Each LOG edge (i, lambda, t) contributes the relator t^-1 lambda^-1 i
lambda, i.e. the relation i lambda = lambda t.  The graph on first
letters (T) being a forest forces min-mode weak concatenability with
all-ones weights; the graph on last letters (I) being a forest forces the
max-mode version.  Either one certifies non-positive immersions.
"""

import random

from npicheck import (
    adian_npi_check,
    graph_I,
    graph_T,
    is_forest,
    lof_random,
    log_to_presentation,
    parse_log,
)

single = parse_log("vertices: a b c\nedge: a b c\n")
pres = log_to_presentation(single)
print("single-edge tree:", pres)
print("T edges:", graph_T(single).edges, "forest:", is_forest(graph_T(single)).ok)
print("I edges:", graph_I(single).edges, "forest:", is_forest(graph_I(single)).ok)
print("verdict:", adian_npi_check(pres).status)
print()

# Two edges sharing initial vertex and label: T acquires parallel edges
# (its criterion fails) while I stays a path, and the max-mode branch
# still certifies.
skew = parse_log("vertices: a b c d\nedge: a b c\nedge: a b d\n")
verdict = adian_npi_check(log_to_presentation(skew))
print("parallel-T example: T forest:", verdict.t_forest.ok, "| I forest:", verdict.i_forest.ok)
print("verdict:", verdict.status)
print()

rng = random.Random(2024)
counts = {"npi": 0, "not-decided": 0}
for _ in range(200):
    n = rng.randrange(3, 9)
    k = rng.randrange(1, n)
    log = lof_random(n, k, rng)
    counts[adian_npi_check(log_to_presentation(log)).status] += 1
print("200 random reduced forests:", counts)
