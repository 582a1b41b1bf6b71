#!/usr/bin/env python3
"""Sporadic-point certificates: the index criterion with exact rationals, the
gonality route for the degree-6 point on X_1(37), the CM construction, and
the classification of rational-j profiles."""

from x1points import (
    GaloisProfile,
    NonsurjectivePrime,
    classify_profile,
    cm_order,
    cm_point_degree,
    cm_threshold,
    curve_invariants,
    frey_gonality_cert,
    lifting_certificate,
    sporadic_screen,
)

# A point of degree 114 on X_1(229) sits strictly below (7/1600) * index,
# so it is sporadic and so is every lift to every X_1(229 m).
cert = lifting_certificate(229, 114)
print(f"X_1(229), degree 114: {cert.verdict}")
print(f"  threshold {cert.threshold} = {float(cert.threshold)}, margin {cert.margin}")

# The famous degree-6 point on X_1(37) misses that criterion but is sporadic
# because twice its degree is below the known gonality 18.
cert37 = lifting_certificate(37, 6)
inv = curve_invariants(37)
frey = frey_gonality_cert(37, 6, inv.known_gonality)
print(f"\nX_1(37), degree 6: {cert37.verdict} (threshold {float(cert37.threshold):.4f})")
print(" ", frey.statement)

# CM pipeline for Z[i] (discriminant -4): the smallest split prime above the
# threshold gives a sporadic point all of whose lifts are sporadic.
O = cm_order(-4)
threshold, ell = cm_threshold(O)
print(f"\nCM order disc -4: threshold {threshold} ~ {float(threshold):.2f}, prime {ell}")
degree, cm_cert = cm_point_degree(O, ell)
print(f"  point of order {ell} has degree {degree}: {cm_cert.verdict}")
for line in cm_cert.chain:
    print("   ", line)

# Classification of declared Galois-image profiles at their point levels.
profiles = {
    "Borel at 37": (GaloisProfile(nonsurjective=(NonsurjectivePrime(37, "borel", 37),),
                                  assume_sz=True), 37),
    "nonsplit Cartan at 17": (GaloisProfile(
        nonsurjective=(NonsurjectivePrime(17, "normalizer_nonsplit"),), assume_sz=True), 17),
    "nonsurjective at 5 and 7": (GaloisProfile(
        nonsurjective=(NonsurjectivePrime(5, "borel"), NonsurjectivePrime(7, "borel")),
        assume_sz=True), 35),
}
print()
for name, (prof, n) in profiles.items():
    verdict = classify_profile(prof, n)
    print(f"{name}, n={n}: case {verdict.case}", end="")
    if verdict.candidates:
        print(f", candidate target levels {verdict.candidates}", end="")
    print()

# Under the prime-power conjectures, only the 37-Borel profile leaves a
# sporadic candidate when every prime of n is at least 17 (the third profile
# is screened at level 37, where its bad primes 5 and 7 play no role).
screen_levels = {"Borel at 37": 37, "nonsplit Cartan at 17": 17,
                 "nonsurjective at 5 and 7": 37}
print("\nscreen with min(Supp(n)) >= 17 under the conjectures:")
for name, (prof, _) in profiles.items():
    screen_n = screen_levels[name]
    verdict = sporadic_screen(prof, screen_n)
    tag = "no sporadic points" if verdict.no_sporadic else (
        f"sporadic candidate at level {verdict.candidate_level}, j = {verdict.candidate_j}")
    print(f"  {name} on X_1({screen_n}): {tag}")
