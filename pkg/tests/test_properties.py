"""Cross-module consistency sweep over random subgroups (seeded)."""

import random
from math import gcd

from x1points.levels import minimize_level
from x1points.matgroup import (
    closure,
    goursat,
    is_full_preimage,
    kernel_of_projection,
    project,
)
from x1points.modarith import divisors, gl2_order
from x1points.orbits import degree_spectrum, exact_order_vector_count
from x1points.sporadic import pushforward_degree_check


def random_subgroup(rng, n):
    gens = []
    while len(gens) < rng.randint(1, 3):
        cand = tuple(rng.randrange(n) for _ in range(4))
        det = (cand[0] * cand[3] - cand[1] * cand[2]) % n
        if gcd(det, n) == 1:
            gens.append(cand)
    return closure(gens, n=n)


def test_random_subgroup_consistency_sweep():
    rng = random.Random(424242)
    for _ in range(12):
        n = rng.choice([4, 6, 8, 9, 10, 12, 14, 15, 16, 18, 20])
        G = random_subgroup(rng, n)
        assert gl2_order(n) % G.order == 0

        for m in divisors(n):
            assert G.order == kernel_of_projection(G, m).order * project(G, m).order

        level = minimize_level(G)
        assert is_full_preimage(G, level)
        for m in divisors(n):
            if m < level:
                assert not is_full_preimage(G, m)

        spec = degree_spectrum(G)
        assert sum(r.size for r in spec.records) == exact_order_vector_count(n, n)
        for r in spec.records:
            assert G.order % r.size == 0
            if r.minus_closed and n > 2:
                assert 2 * r.degree == r.size
            else:
                assert r.degree == r.size

        for m in divisors(n):
            if m in (1, n):
                continue
            down = degree_spectrum(project(G, m))
            for rep in pushforward_degree_check(spec, down):
                assert rep.upstairs_degree <= rep.map_degree * rep.downstairs_degree

        for a in divisors(n):
            b = n // a
            if a > 1 and b > 1 and gcd(a, b) == 1:
                data = goursat(G, a, b)
                assert G.order == (
                    data.common_quotient_order
                    * data.left_kernel.order
                    * data.right_kernel.order
                )
                assert (
                    data.left_image.order * data.right_kernel.order
                    == data.right_image.order * data.left_kernel.order
                )
