"""Finite subgroups of GL2(Z/nZ) given by generators.

Closure is breadth-first multiplication into a hash set of raw 4-tuples;
membership beyond the element cap is a hard error rather than an attempt at
Schreier-Sims machinery.  Full preimages of a group at a smaller modulus and
CRT direct products carry structure hints so that their orders and
projections are computed by bookkeeping instead of materialization.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from math import gcd

from .errors import CapExceeded, ModulusMismatch, NonCoprimeModuli, NotInvertible
from .modarith import (
    MatTuple,
    Mat2ModN,
    Modulus,
    crt_join,
    gl2_order,
    identity,
    inv_raw,
    mat2,
    modulus,
    mul_raw,
    unit_group_generators,
)

DEFAULT_CAP = 2**24


def _bfs_closure(n: int, gens: list[MatTuple], cap: int) -> frozenset[MatTuple]:
    ident = (1 % n, 0, 0, 1 % n)
    start = []
    for g in gens:
        start.append(g)
        start.append(inv_raw(g, n))  # raises NotInvertible on bad input
    start = list(dict.fromkeys(start))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in start:
            y = mul_raw(x, g, n)
            if y not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(cap, len(seen))
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _small_generating_set(n: int, elements: frozenset[MatTuple], cap: int) -> list[MatTuple]:
    """Greedy generating subset; also validates that `elements` is a subgroup."""
    gens: list[MatTuple] = []
    span: frozenset[MatTuple] = frozenset({(1 % n, 0, 0, 1 % n)})
    for x in sorted(elements):
        if x in span:
            continue
        gens.append(x)
        span = _bfs_closure(n, gens, cap)
    if len(span) != len(elements):
        raise ValueError("element set is not closed under the group operation")
    return gens


class MatGroup:
    """Subgroup of GL2(Z/nZ) with lazily materialized element set and order."""

    def __init__(self, mod: Modulus, gens: list[MatTuple], cap: int = DEFAULT_CAP):
        self.modulus = mod
        n = mod.n
        raw = []
        for g in gens:
            g = tuple(e % n for e in g)
            inv_raw(g, n)  # invertibility check on every generator
            raw.append(g)
        self._gens: tuple[MatTuple, ...] = tuple(dict.fromkeys(raw))
        self.cap = cap
        self._elements: frozenset[MatTuple] | None = None
        self._order: int | None = None
        # structure: None | ("preimage", base MatGroup) | ("product", left, right)
        self._structure = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_elements(cls, n: int, elements, cap: int = DEFAULT_CAP) -> "MatGroup":
        els = frozenset(tuple(e % n for e in x) for x in elements)
        gens = _small_generating_set(n, els, cap)
        grp = cls(modulus(n), gens, cap)
        grp._elements = els
        grp._order = len(els)
        return grp

    # -- basic accessors ----------------------------------------------------

    @property
    def generators(self) -> tuple[Mat2ModN, ...]:
        return tuple(Mat2ModN(self.modulus, *g) for g in self._gens)

    @property
    def raw_generators(self) -> tuple[MatTuple, ...]:
        return self._gens

    @property
    def is_materialized(self) -> bool:
        return self._elements is not None

    @property
    def order(self) -> int:
        if self._order is None:
            if self._structure is not None:
                kind = self._structure[0]
                if kind == "preimage":
                    base = self._structure[1]
                    ratio = self.modulus.n // base.modulus.n
                    self._order = base.order * ratio**4
                else:
                    left, right = self._structure[1], self._structure[2]
                    self._order = left.order * right.order
            else:
                self._order = len(self.elements())
        return self._order

    def elements(self) -> frozenset[MatTuple]:
        if self._elements is None:
            n = self.modulus.n
            if self._structure is not None and self._structure[0] == "preimage":
                base = self._structure[1]
                m = base.modulus.n
                ratio = n // m
                if base.order * ratio**4 > self.cap:
                    raise CapExceeded(self.cap, 0)
                offs = range(ratio)
                els = set()
                for b in base.elements():
                    a0, b0, c0, d0 = b
                    for i in offs:
                        for j in offs:
                            for k in offs:
                                for l in offs:
                                    els.add(
                                        (
                                            (a0 + m * i) % n,
                                            (b0 + m * j) % n,
                                            (c0 + m * k) % n,
                                            (d0 + m * l) % n,
                                        )
                                    )
                self._elements = frozenset(els)
            elif self._structure is not None and self._structure[0] == "product":
                left, right = self._structure[1], self._structure[2]
                if left.order * right.order > self.cap:
                    raise CapExceeded(self.cap, 0)
                n1, n2 = left.modulus.n, right.modulus.n
                els = set()
                for x in left.elements():
                    gx = mat2(n1, *x)
                    for y in right.elements():
                        els.add(crt_join((gx, mat2(n2, *y))).entries)
                self._elements = frozenset(els)
            else:
                self._elements = _bfs_closure(n, list(self._gens), self.cap)
            self._order = len(self._elements)
        return self._elements

    def contains(self, A) -> bool:
        raw = A.entries if isinstance(A, Mat2ModN) else tuple(e % self.modulus.n for e in A)
        return raw in self.elements()

    def __repr__(self):
        order = self._order if self._order is not None else "?"
        return f"MatGroup(mod {self.modulus.n}, {len(self._gens)} gens, order {order})"


# -- public operations --------------------------------------------------------


def closure(generators, n: int | None = None, cap: int = DEFAULT_CAP) -> MatGroup:
    """Materialize the subgroup generated by `generators` (Mat2ModN or tuples)."""
    gens = list(generators)
    if n is None:
        if not gens or not isinstance(gens[0], Mat2ModN):
            raise ValueError("modulus required when generators are not Mat2ModN")
        n = gens[0].modulus.n
    raw = []
    for g in gens:
        if isinstance(g, Mat2ModN):
            if g.modulus.n != n:
                raise ModulusMismatch(f"generator modulus {g.modulus.n} != {n}")
            raw.append(g.entries)
        else:
            raw.append(tuple(g))
    grp = MatGroup(modulus(n), raw, cap)
    grp.elements()
    return grp


def project(G: MatGroup, m: int) -> MatGroup:
    """Image of G under reduction mod m (m | n)."""
    n = G.modulus.n
    if n % m != 0:
        raise ModulusMismatch(f"{m} does not divide {n}")
    if m == n:
        return G
    if G._structure is not None and G._structure[0] == "preimage":
        base = G._structure[1]
        g = gcd(m, base.modulus.n)
        inner = project(base, g)
        if m == g:
            return inner
        return full_preimage(inner, m, cap=G.cap)
    if G._structure is not None and G._structure[0] == "product":
        left, right = G._structure[1], G._structure[2]
        d1 = gcd(m, left.modulus.n)
        d2 = gcd(m, right.modulus.n)
        if d1 == 1:
            return project(right, d2)
        if d2 == 1:
            return project(left, d1)
        return crt_product(project(left, d1), project(right, d2), cap=G.cap)
    reduced = [tuple(e % m for e in g) for g in G._gens]
    out = MatGroup(modulus(m), reduced, G.cap)
    if G.is_materialized:
        out._elements = frozenset(tuple(e % m for e in x) for x in G.elements())
        out._order = len(out._elements)
    return out


def kernel_of_projection(G: MatGroup, m: int, cap: int | None = None) -> MatGroup:
    """Subgroup {g in G : g = I mod m}, materialized."""
    n = G.modulus.n
    if n % m != 0:
        raise ModulusMismatch(f"{m} does not divide {n}")
    cap = cap if cap is not None else G.cap
    ident_m = (1 % m, 0, 0, 1 % m)
    kernel = frozenset(x for x in G.elements() if tuple(e % m for e in x) == ident_m)
    return MatGroup.from_elements(n, kernel, cap)


def sl2_generator_tuples(n: int) -> tuple[MatTuple, MatTuple]:
    """The standard pair generating SL2(Z/nZ)."""
    return ((1, 1 % n, 0, 1), (1, 0, 1 % n, 1))


def contains_sl2(G: MatGroup) -> bool:
    """True iff both standard SL2 generators lie in G."""
    if G.modulus.n == 1:
        return True
    s, t = sl2_generator_tuples(G.modulus.n)
    return G.contains(s) and G.contains(t)


def is_full_preimage(G: MatGroup, m: int) -> bool:
    """True iff G mod n is the full preimage of its own reduction mod m.

    Checked by order bookkeeping: |G| = |G mod m| * #ker(GL2(n) -> GL2(m)).
    """
    n = G.modulus.n
    if n % m != 0:
        raise ModulusMismatch(f"{m} does not divide {n}")
    full_kernel = gl2_order(n) // gl2_order(m)
    return G.order == project(G, m).order * full_kernel


# -- structured constructions ------------------------------------------------


def full_preimage(base: MatGroup, n: int, cap: int = DEFAULT_CAP) -> MatGroup:
    """Full preimage of `base` (mod m) under GL2(Z/nZ) -> GL2(Z/mZ).

    Requires Supp(n) = Supp(m) so that every entrywise lift of an invertible
    matrix stays invertible; order and projections are then exact bookkeeping.
    """
    m = base.modulus.n
    if n % m != 0:
        raise ModulusMismatch(f"{m} does not divide {n}")
    if modulus(n).primes != base.modulus.primes:
        raise ValueError(f"prime support of {n} differs from base modulus {m}")
    if n == m:
        return base
    ratio = n // m
    gens: list[MatTuple] = [tuple(int(e) for e in g) for g in base.raw_generators]
    # the four elementary I + m*e_ij do not generate the congruence kernel in
    # general (their determinants miss units when m is even), so use all of it
    for i in range(ratio):
        for j in range(ratio):
            for k in range(ratio):
                for l in range(ratio):
                    if (i, j, k, l) == (0, 0, 0, 0):
                        continue
                    gens.append(((1 + m * i) % n, (m * j) % n, (m * k) % n, (1 + m * l) % n))
    grp = MatGroup(modulus(n), gens, cap)
    grp._structure = ("preimage", base)
    return grp


def crt_product(left: MatGroup, right: MatGroup, cap: int = DEFAULT_CAP) -> MatGroup:
    """Direct product of groups with coprime moduli, as one group mod n1*n2."""
    n1, n2 = left.modulus.n, right.modulus.n
    if gcd(n1, n2) != 1:
        raise NonCoprimeModuli(f"moduli {n1} and {n2} share a prime")
    n = n1 * n2
    i1, i2 = identity(n1), identity(n2)
    gens = [crt_join((Mat2ModN(left.modulus, *g), i2)).entries for g in left.raw_generators]
    gens += [crt_join((i1, Mat2ModN(right.modulus, *g))).entries for g in right.raw_generators]
    grp = MatGroup(modulus(n), gens, cap)
    grp._structure = ("product", left, right)
    return grp


def gl2_group(n: int, cap: int = DEFAULT_CAP) -> MatGroup:
    """GL2(Z/nZ) from the standard SL2 pair plus diagonal unit generators."""
    if n == 1:
        return closure([identity(1)], cap=cap)
    s, t = sl2_generator_tuples(n)
    gens = [s, t] + [(u, 0, 0, 1) for u in unit_group_generators(n)]
    grp = MatGroup(modulus(n), gens, cap)
    grp._order = gl2_order(n)
    return grp


def sl2_group(n: int, cap: int = DEFAULT_CAP) -> MatGroup:
    from .modarith import sl2_order

    if n == 1:
        return closure([identity(1)], cap=cap)
    s, t = sl2_generator_tuples(n)
    grp = MatGroup(modulus(n), [s, t], cap)
    grp._order = sl2_order(n)
    return grp


def borel_group(n: int, cap: int = DEFAULT_CAP) -> MatGroup:
    """Upper-triangular invertible matrices mod n."""
    if n == 1:
        return closure([identity(1)], cap=cap)
    gens = [(1, 1, 0, 1)]
    for u in unit_group_generators(n):
        gens.append((u, 0, 0, 1))
        gens.append((1, 0, 0, u))
    return MatGroup(modulus(n), gens, cap)


# -- Goursat data -------------------------------------------------------------

PairTuple = tuple[MatTuple, MatTuple]


@dataclass(frozen=True)
class GoursatData:
    """Kernel pair and coset graph of a subgroup of a direct product.

    For H <= G x G' with surjective projections: `left_kernel` is
    N' = ker(H -> G') viewed inside G, `right_kernel` is N = ker(H -> G)
    viewed inside G', and `graph_pairs` is the induced bijection between
    cosets of N' in G and cosets of N in G' (canonical minimal
    representatives, sorted on the left entry).
    """

    left_image: MatGroup
    right_image: MatGroup
    left_kernel: MatGroup
    right_kernel: MatGroup
    common_quotient_order: int
    graph_pairs: tuple[tuple[Mat2ModN, Mat2ModN], ...]


def _pair_closure(n1: int, n2: int, gens: list[PairTuple], cap: int) -> frozenset[PairTuple]:
    ident = ((1 % n1, 0, 0, 1 % n1), (1 % n2, 0, 0, 1 % n2))
    start = []
    for x, y in gens:
        start.append((x, y))
        start.append((inv_raw(x, n1), inv_raw(y, n2)))
    start = list(dict.fromkeys(start))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x1, x2 = queue.popleft()
        for g1, g2 in start:
            y = (mul_raw(x1, g1, n1), mul_raw(x2, g2, n2))
            if y not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(cap, len(seen))
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _goursat_from_pairs(
    n1: int,
    n2: int,
    pair_elements: frozenset[PairTuple],
    gen_pairs: list[PairTuple],
    cap: int,
) -> GoursatData:
    i1 = (1 % n1, 0, 0, 1 % n1)
    i2 = (1 % n2, 0, 0, 1 % n2)
    g_els = frozenset(x for x, _ in pair_elements)
    gp_els = frozenset(y for _, y in pair_elements)
    nprime_els = frozenset(x for x, y in pair_elements if y == i2)  # N' <| G
    n_els = frozenset(y for x, y in pair_elements if x == i1)  # N <| G'
    q_left = len(g_els) // len(nprime_els)
    q_right = len(gp_els) // len(n_els)
    if q_left != q_right:
        raise ValueError("projections are not surjective onto compatible quotients")

    def coset_label(x: MatTuple, kernel: frozenset[MatTuple], n: int) -> MatTuple:
        return min(mul_raw(x, k, n) for k in kernel)

    label_cache_l: dict[MatTuple, MatTuple] = {}
    label_cache_r: dict[MatTuple, MatTuple] = {}
    graph: dict[MatTuple, MatTuple] = {}
    for x, y in pair_elements:
        lx = label_cache_l.get(x)
        if lx is None:
            lx = label_cache_l[x] = coset_label(x, nprime_els, n1)
        ly = label_cache_r.get(y)
        if ly is None:
            ly = label_cache_r[y] = coset_label(y, n_els, n2)
        prev = graph.get(lx)
        if prev is None:
            graph[lx] = ly
        elif prev != ly:
            raise ValueError("coset pairing is not well defined")
    if len(graph) != q_left or len(set(graph.values())) != q_left:
        raise ValueError("coset pairing is not a bijection")
    # homomorphism property spot-checked on generator pairs
    for x1, y1 in gen_pairs:
        for x2, y2 in gen_pairs:
            lx = coset_label(mul_raw(x1, x2, n1), nprime_els, n1)
            ly = coset_label(mul_raw(y1, y2, n2), n_els, n2)
            if graph[lx] != ly:
                raise ValueError("coset pairing does not respect the group operation")

    m1, m2 = modulus(n1), modulus(n2)
    pairs = tuple(
        (Mat2ModN(m1, *lx), Mat2ModN(m2, *ly)) for lx, ly in sorted(graph.items())
    )
    return GoursatData(
        left_image=MatGroup.from_elements(n1, g_els, cap),
        right_image=MatGroup.from_elements(n2, gp_els, cap),
        left_kernel=MatGroup.from_elements(n1, nprime_els, cap),
        right_kernel=MatGroup.from_elements(n2, n_els, cap),
        common_quotient_order=q_left,
        graph_pairs=pairs,
    )


def goursat(H: MatGroup, a: int, b: int | None = None, cap: int | None = None) -> GoursatData:
    """Goursat data of H <= GL2(Z/abZ) split along coprime a, b (ab = n)."""
    n = H.modulus.n
    if b is None:
        if n % a != 0:
            raise NonCoprimeModuli(f"{a} does not divide {n}")
        b = n // a
    if a * b != n:
        raise NonCoprimeModuli(f"{a}*{b} != {n}")
    if gcd(a, b) != 1:
        raise NonCoprimeModuli(f"{a} and {b} are not coprime")
    cap = cap if cap is not None else H.cap
    pair_elements = frozenset(
        (tuple(e % a for e in x), tuple(e % b for e in x)) for x in H.elements()
    )
    gen_pairs = [
        (tuple(e % a for e in g), tuple(e % b for e in g)) for g in H.raw_generators
    ]
    return _goursat_from_pairs(a, b, pair_elements, gen_pairs, cap)


def goursat_product(gen_pairs, cap: int = DEFAULT_CAP) -> GoursatData:
    """Goursat data of the subgroup of GL2(Z/n1) x GL2(Z/n2) generated by pairs.

    Accepts the external direct-product form, so n1 = n2 is allowed
    (e.g. the diagonal subgroup of GL2(Z/5) x GL2(Z/5)).
    """
    pairs = list(gen_pairs)
    if not pairs:
        raise ValueError("at least one generator pair required")
    raw = []
    for x, y in pairs:
        rx = x.entries if isinstance(x, Mat2ModN) else tuple(x)
        ry = y.entries if isinstance(y, Mat2ModN) else tuple(y)
        raw.append((rx, ry))
    first = pairs[0]
    if not (isinstance(first[0], Mat2ModN) and isinstance(first[1], Mat2ModN)):
        raise ValueError("generator pairs must be Mat2ModN instances")
    n1 = first[0].modulus.n
    n2 = first[1].modulus.n
    elements = _pair_closure(n1, n2, raw, cap)
    return _goursat_from_pairs(n1, n2, elements, raw, cap)


# -- group files --------------------------------------------------------------


def group_to_dict(G: MatGroup) -> dict:
    return {
        "modulus": G.modulus.n,
        "generators": [list(g) for g in G.raw_generators],
    }


def group_from_dict(data: dict, cap: int = DEFAULT_CAP) -> MatGroup:
    try:
        n = int(data["modulus"])
        gens = [tuple(int(e) for e in g) for g in data["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed group file: {exc}") from exc
    if n < 1:
        raise ValueError(f"malformed group file: modulus {n} < 1")
    for g in gens:
        if len(g) != 4:
            raise ValueError(f"malformed group file: generator {g} needs 4 entries")
    return MatGroup(modulus(n), gens, cap)


def load_group(path: str, cap: int = DEFAULT_CAP) -> MatGroup:
    with open(path) as fh:
        return group_from_dict(json.load(fh), cap)


def save_group(G: MatGroup, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(group_to_dict(G), fh, sort_keys=True)
        fh.write("\n")
