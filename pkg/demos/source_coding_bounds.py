#!/usr/bin/env python3
"""Redundancy-driven L1 bounds for uniquely decodable codes.

Starts from a small source, builds its Shannon code, verifies the two
divergence identities, then compares the three L1 bounds across redundancy
values, ending with the sqrt(2) small-redundancy improvement.
"""

import math

import numpy as np

from divbound import (
    csiszar_bound,
    dual_kl_identity_check,
    jeffreys_bound,
    kl_identity_check,
    l1_bounds,
    make_dist,
    shannon_code,
    tightened_bound,
)

p = make_dist(["a", "b", "c"], [0.6, 0.3, 0.1])
code = shannon_code(p, 2)

print("Source P = (0.6, 0.3, 0.1), binary Shannon code")
print("=" * 66)
print(f"lengths        : {code.lengths}")
print(f"Kraft sum c    : {code.kraft_sum:.6f}  (= 13/16)")

rep = l1_bounds(p, code)
print(f"avg length     : {rep.avg_length:.6f}")
print(f"entropy (bits) : {rep.entropy_d:.6f}")
print(f"redundancy     : {rep.redundancy:.6f} bits = {rep.redundancy * math.log(2):.6f} nats")

lhs, rhs = kl_identity_check(p, code)
print(f"D(P||Q) identity      : direct {lhs:.12f}  vs  closed {rhs:.12f}")
lhs, rhs = dual_kl_identity_check(p, code)
print(f"D(Q||P) identity      : direct {lhs:.12f}  vs  closed {rhs:.12f}")
print(f"Jeffreys divergence   : {rep.jeffreys_val:.12f}")
print(f"delta(u) >= 0 for all : {rep.delta_nonneg}")

print()
print(f"actual L1 distance    : {rep.actual_l1:.6f}")
print(f"csiszar bound         : {rep.bound_csiszar:.6f}")
print(f"tightened bound       : {rep.bound_tightened:.6f}")
print(f"jeffreys bound        : {rep.bound_jeffreys:.6f}")

print()
print("Bound comparison across the redundancy x = Delta log d (nats)")
print("-" * 66)
print(f"{'x':>12} {'csiszar':>12} {'tightened':>12} {'jeffreys':>12} {'jeff/csiszar':>13}")
for x in np.geomspace(1e-6, 1.0, 13):
    x = float(x)
    cs, ti, je = csiszar_bound(x), tightened_bound(x), jeffreys_bound(x)
    print(f"{x:>12.3e} {cs:>12.6f} {ti:>12.6f} {je:>12.6f} {je / cs:>13.6f}")

print()
print("As x -> 0 the jeffreys/csiszar ratio tends to 1/sqrt(2) =", f"{1 / math.sqrt(2):.6f}:")
x = 1e-6
print(f"  at x = 1e-6 the ratio is {jeffreys_bound(x) / csiszar_bound(x):.6f}")
print("so the refined bound improves the quadratic one by a factor sqrt(2)")
print("even at vanishing redundancy.")
