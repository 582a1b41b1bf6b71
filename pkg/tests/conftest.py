"""Shared constructions: fiber products, split Cartans, brute-force oracles."""

from __future__ import annotations

from math import gcd

import pytest

from x1points.matgroup import MatGroup, crt_product, gl2_group, sl2_group
from x1points.modarith import apply_raw, crt_scalar, modulus, unit_group_generators


def join2(n1, n2, g1, g2):
    """CRT-join two raw 4-tuples into one mod n1*n2."""
    return tuple(crt_scalar((a, b), (n1, n2)) for a, b in zip(g1, g2))


def sl2_gens(n):
    return [(1, 1, 0, 1), (1, 0, 1, 1)]


# Square/non-square data for the determinant characters used below.
SQUARE_UNIT_GEN = {5: 4, 7: 2}
NONSQUARE_UNIT = {5: 2, 7: 3}

# GL2(F2) ~ S3 acting on the three nonzero vectors: even part is generated by
# the 3-cycle, and the swap is a transposition.
GL2_F2_THREE_CYCLE = (0, 1, 1, 1)
GL2_F2_SWAP = (0, 1, 1, 0)

# Kernel generators of the order-2 determinant character of the second factor
# (trivial-character kernel), plus one element of character -1.  The mod-6
# character is the mod-3 determinant sign, so its kernel contains the whole
# mod-2 factor.
CHAR_KERNEL = {
    2: ([GL2_F2_THREE_CYCLE], GL2_F2_SWAP),
    3: (sl2_gens(3), (2, 0, 0, 1)),
    4: (sl2_gens(4), (3, 0, 0, 1)),
    6: (
        [join2(2, 3, g, (1, 0, 0, 1)) for g in [(1, 1, 0, 1), (1, 0, 1, 1)]]
        + [join2(2, 3, (1, 0, 0, 1), g) for g in sl2_gens(3)],
        join2(2, 3, (1, 0, 0, 1), (2, 0, 0, 1)),
    ),
}


def fiber_product_group(ell: int, m: int) -> MatGroup:
    """Index-2 fiber product of GL2(Z/ell) (ell in {5,7}) with GL2(Z/m) over C2.

    The first factor maps by the Legendre symbol of the determinant, the
    second by its own order-2 character; the mod-ell projection is all of
    GL2(Z/ell) and the kernel of projection to m is the index-2 subgroup
    of square determinant.  Every generator pairs a nontrivial element of
    each factor (characters matched), so neither factor's SL2 generators
    appear lifted in the generating set.
    """
    assert gcd(ell, m) == 1
    k2, odd2 = CHAR_KERNEL[m]
    s, t = sl2_gens(ell)
    n = ell * m
    gens = [join2(ell, m, s, k2[0]), join2(ell, m, t, k2[-1])]
    gens += [join2(ell, m, s if i % 2 else t, k) for i, k in enumerate(k2)]
    gens.append(join2(ell, m, (SQUARE_UNIT_GEN[ell], 0, 0, 1), k2[0]))
    gens.append(join2(ell, m, (NONSQUARE_UNIT[ell], 0, 0, 1), odd2))
    return MatGroup(modulus(n), gens)


@pytest.fixture(scope="session")
def large_image_samples():
    """The five sample groups of the desk-scale kernel criterion, keyed by
    (modulus, ell, coprime part)."""
    return {
        (10, 5, 2): fiber_product_group(5, 2),
        (15, 5, 3): fiber_product_group(5, 3),
        (20, 5, 4): fiber_product_group(5, 4),
        (14, 7, 2): crt_product(sl2_group(7), gl2_group(2)),
        (21, 7, 3): fiber_product_group(7, 3),
    }


@pytest.fixture(scope="session")
def large_image_sample_mod30():
    """The coprime-part-6 sample: full GL2 mod 5 fibered against GL2(Z/6)."""
    return fiber_product_group(5, 6)


def split_cartan_group(n: int) -> MatGroup:
    gens = []
    for u in unit_group_generators(n):
        gens.append((u, 0, 0, 1))
        gens.append((1, 0, 0, u))
    return MatGroup(modulus(n), gens)


def unipotent_group(n: int) -> MatGroup:
    return MatGroup(modulus(n), [(1, 1, 0, 1)])


# -- independent oracles -------------------------------------------------------


def matmul_oracle(x, y, n):
    """Generic row-by-column product on 2x2 nested lists."""
    A = [[x[0], x[1]], [x[2], x[3]]]
    B = [[y[0], y[1]], [y[2], y[3]]]
    C = [[0, 0], [0, 0]]
    for i in range(2):
        for j in range(2):
            C[i][j] = sum(A[i][k] * B[k][j] for k in range(2)) % n
    return (C[0][0], C[0][1], C[1][0], C[1][1])


def gl2_count_oracle(n):
    """#GL2(Z/nZ) by exhaustive determinant test."""
    count = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if gcd((a * d - b * c) % n, n) == 1:
                        count += 1
    return count


def orbit_partition_oracle(G: MatGroup, vectors):
    """Orbits computed by applying every group element, not generator closure."""
    n = G.modulus.n
    els = G.elements()
    remaining = {v.entries for v in vectors}
    parts = []
    while remaining:
        v = min(remaining)
        orbit = frozenset(apply_raw(g, v, n) for g in els)
        assert orbit <= remaining
        remaining -= orbit
        parts.append(orbit)
    return sorted(parts, key=min)


def reduced_form_class_number(D: int) -> int:
    """Class number of the order of discriminant D by counting reduced
    primitive positive definite binary quadratic forms."""
    assert D < 0 and D % 4 in (0, 1)
    count = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                count += 1
        a += 1
    return count
