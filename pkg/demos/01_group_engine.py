#!/usr/bin/env python3
"""Walk through the finite group engine: exact matrices mod n, closure from
generators, projections and their kernels, and Goursat data for subgroups of
direct products."""

from x1points import (
    closure,
    contains_sl2,
    crt_join,
    crt_split,
    gl2_group,
    gl2_order,
    goursat_product,
    identity,
    kernel_of_projection,
    mat2,
    mat_inv,
    mat_mul,
    project,
    sl2_order,
)

# Matrices live over a fixed modulus and are always reduced.
A = mat2(5, 1, 1, 0, 1)
B = mat2(5, 1, 0, 1, 1)
print("A =", A)
print("A*B =", mat_mul(A, B))
print("A * A^-1 =", mat_mul(A, mat_inv(A)))

# CRT splits a matrix mod 35 into its mod-5 and mod-7 parts and back.
J = crt_join((identity(5), mat2(7, 2, 0, 0, 1)))
print("\njoined mod 35:", J)
print("split back:", crt_split(J))

# Closure materializes the subgroup generated by a few matrices.
sl2_5 = closure([mat2(5, 1, 1, 0, 1), mat2(5, 1, 0, 1, 1)])
print("\n|<unipotents mod 5>| =", sl2_5.order, "= #SL2(Z/5) =", sl2_order(5))

G = gl2_group(35)
print("#GL2(Z/35) =", G.order, "=", gl2_order(35))
print("projection to 7 has order", project(G, 7).order)
K = kernel_of_projection(closure(gl2_group(15).generators), 3)
print("kernel of GL2(Z/15) -> GL2(Z/3) has order", K.order, "= #GL2(Z/5)")

print("\ncontains_sl2(GL2 mod 7):", contains_sl2(gl2_group(7)))

# Goursat: the diagonal subgroup of GL2(Z/5) x GL2(Z/5) is the graph of the
# identity isomorphism, so both kernels are trivial and the common quotient
# is the whole group.
data = goursat_product([(g, g) for g in gl2_group(5).generators])
print("\ndiagonal subgroup of GL2(5) x GL2(5):")
print("  common quotient order:", data.common_quotient_order)
print("  kernels:", data.left_kernel.order, data.right_kernel.order)
