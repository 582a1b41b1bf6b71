#!/usr/bin/env python3
"""Degrees of points on X_1(n) above a fixed j-invariant, from the orbits of
the mod-n Galois image on exact-order-n torsion vectors."""

from x1points import (
    borel_group,
    closed_point_degrees,
    degree_spectrum,
    exact_order_vectors,
    fiber_count,
    gl2_group,
    map_degree,
    max_growth_check,
    psl2_index,
    vec2,
)

print("exact-order-5 vectors in (Z/5)^2:", len(exact_order_vectors(5)))

# A curve with surjective mod-5 image: one orbit, and the half factor applies
# because some Galois element negates the point.
spec = degree_spectrum(gl2_group(5))
rec = spec.records[0]
print(
    f"GL2(Z/5): orbit size {rec.size}, minus_closed={rec.minus_closed}, "
    f"degree {rec.degree} = [PSL2(Z):Gamma_1(5)] = {psl2_index(5)}"
)

# A Borel image mod 7 (a curve with a rational 7-isogeny): two orbits.
print("\nBorel mod 7:")
for rec in degree_spectrum(borel_group(7)).records:
    print(f"  orbit of {rec.representative}: size {rec.size}, degree {rec.degree}")
print("closed points have degrees", closed_point_degrees(degree_spectrum(borel_group(7))))

# Fibers of X_1(35) -> X_1(5): 48 points of order 35 above each point of
# order 5, matching the degree of the covering.
P = vec2(35, 1, 0)
print("\nfiber count above X_1(5):", fiber_count(P, 7))
print("deg(X_1(35) -> X_1(5)) =", map_degree(5, 7).degree)

# Maximal degree growth: with full GL2 mod 35, the field degree [k(P):k(7P)]
# equals the fiber count on every orbit, so deg(x) = deg(f) * deg(f(x)).
for r in max_growth_check(gl2_group(35), 7):
    print(
        f"\norbit of {r.representative}: [k(P):k(bP)] = {r.field_ratio}, "
        f"fiber = {r.fiber}, max growth: {r.max_growth}, "
        f"deg {r.upstairs_degree} = {r.map_degree} * {r.downstairs_degree}: {r.product_equal}"
    )
