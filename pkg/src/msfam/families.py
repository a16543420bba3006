"""The named extremal families and the support bridge between the two universes.

build_ekr gives the star construction (all k-multisets containing element 1),
the maximum trivial family.  build_hm keeps the star members that meet the
tail interval H = [n-k+1, n] and adds H itself, the candidate maximum
non-trivial family.  The support map sends a multiset to the set of elements
it uses; preimages of an l-set have exactly coeff(k, l, m) members, which
turns layer counts of subset families into exact multiset-family sizes.
"""

from __future__ import annotations

from math import comb

from .coeffs import coeff_table
from .multiset import (
    Multiset, MultisetFamily, enumerate_k_multisets, is_maximal_intersecting_mf, support,
)
from .params import Params, ParameterError
from .subsets import (
    SetFamily, elements_from_mask, hm_shadow_layer_size, is_maximal_intersecting_sf,
    layer_bitsets,
)

__all__ = [
    "build_ekr", "build_hm", "hm_size", "ekr_size", "family_support",
    "preimage", "preimage_family", "preimage_size", "difference_formula",
    "verify_hm_maximal", "star_bound_sets", "nontrivial_bound_sets",
    "nontrivial_bound_unbounded",
]


# Closed forms used as oracles in cross-checks.

def star_bound_sets(n: int, k: int) -> int:
    """Maximum intersecting size for k-sets, n >= 2k: C(n-1, k-1)."""
    return comb(n - 1, k - 1)


def nontrivial_bound_sets(n: int, k: int) -> int:
    """Maximum non-trivial intersecting size for k-sets, n >= 2k >= 6."""
    return comb(n - 1, k - 1) - comb(n - k - 1, k - 1) + 1


def nontrivial_bound_unbounded(n: int, k: int) -> int:
    """Maximum non-trivial intersecting size for k-multisets without cap, n >= k+1 >= 4."""
    return comb(n + k - 2, k - 1) - comb(n - 2, k - 1) + 1


def build_ekr(p: Params) -> MultisetFamily:
    """All k-multisets with positive multiplicity at element 1."""
    return MultisetFamily.from_iterable(
        p, (a for a in enumerate_k_multisets(p) if a[0] >= 1), validate=False
    )


def ekr_size(p: Params) -> int:
    """Size of the star construction: sum of coeff(k,l) * C(n-1, l-1) over support sizes."""
    table = coeff_table(p.k, p.m)
    return sum(table.values[l] * comb(p.n - 1, l - 1) for l in range(1, p.k + 1))


def build_hm(p: Params) -> MultisetFamily:
    """Star members meeting the tail interval, plus the tail interval itself."""
    p.require_tail()
    h_mask = p.h_mask
    members = [
        a for a in enumerate_k_multisets(p)
        if a[0] >= 1 and support(a) & h_mask
    ]
    members.append(tuple(1 if i >= p.n - p.k else 0 for i in range(p.n)))
    return MultisetFamily.from_iterable(p, members, validate=False)


def hm_size(p: Params) -> int:
    """Exact size of the non-trivial candidate via the shadow layer decomposition.

    Sums coeff(k, l, m) * |shadow layer l| over l = q..k; coefficients vanish
    outside that window, so the wider formal range adds nothing.
    """
    if p.n < p.k + p.q:
        raise ParameterError(f"layer decomposition requires n >= k + q = {p.k + p.q}, got n={p.n}")
    table = coeff_table(p.k, p.m)
    return sum(table.values[l] * hm_shadow_layer_size(p, l) for l in range(p.q, p.k + 1))


def family_support(fam: MultisetFamily) -> SetFamily:
    """The set of supports of the members (duplicates collapse)."""
    return SetFamily.from_masks(fam.params.n, set(fam.support_masks()), require_proper=False)


def _compositions_on(mask_elements: tuple[int, ...], k: int, cap: int):
    """Yield multiplicity assignments on the given elements, all in [1, cap], summing to k."""
    l = len(mask_elements)

    def rec(idx: int, remaining: int, acc: list[int]):
        if idx == l - 1:
            if 1 <= remaining <= cap:
                yield acc + [remaining]
            return
        slots = l - idx - 1
        low = max(1, remaining - cap * slots)
        for mu in range(low, min(cap, remaining - slots) + 1):
            yield from rec(idx + 1, remaining - mu, acc + [mu])

    if l == 0:
        return
    yield from rec(0, k, [])


def preimage(mask: int, p: Params) -> MultisetFamily:
    """All k-multisets whose support is exactly the given subset."""
    elements = elements_from_mask(mask)
    members: list[Multiset] = []
    for mus in _compositions_on(elements, p.k, p.m_eff):
        vec = [0] * p.n
        for e, mu in zip(elements, mus):
            vec[e - 1] = mu
        members.append(tuple(vec))
    return MultisetFamily.from_iterable(p, members, validate=False)


def preimage_family(fam: SetFamily, p: Params) -> MultisetFamily:
    """Union of the member preimages (disjoint: distinct supports)."""
    if fam.n != p.n:
        raise ParameterError("family and parameters disagree on n")
    members: list[Multiset] = []
    for mask in fam.members():
        members.extend(preimage(mask, p).members)
    return MultisetFamily.from_iterable(p, members, validate=False)


def preimage_size(fam: SetFamily, p: Params) -> int:
    """|preimage_family| without enumeration: sum of coeff(k, l) * |layer l|."""
    table = coeff_table(p.k, p.m)
    layers = layer_bitsets(fam.n)
    return sum(
        table.values[l] * (fam.bits & layers[l]).bit_count()
        for l in range(1, min(p.k, fam.n) + 1)
    )


def difference_formula(y: SetFamily, b: SetFamily, p: Params) -> int:
    """Preimage-size difference |pre(y)| - |pre(b)| from layers q..w only.

    Valid for maximal intersecting subset families: the pair rule folds the
    high layers onto the low ones, leaving sum over l of
    (coeff(k,l) - coeff(k,n-l)) * (|y(l)| - |b(l)|).
    """
    if y.n != p.n or b.n != p.n:
        raise ParameterError("families and parameters disagree on n")
    if not is_maximal_intersecting_sf(y) or not is_maximal_intersecting_sf(b):
        raise ParameterError("difference formula requires maximal intersecting families")
    table = coeff_table(p.k, p.m)
    layers = layer_bitsets(p.n)
    total = 0
    for l in range(p.q, p.w + 1):
        cl = table[l] - table[p.n - l]
        if cl:
            total += cl * ((y.bits & layers[l]).bit_count() - (b.bits & layers[l]).bit_count())
    return total


def verify_hm_maximal(p: Params) -> bool:
    """Exhaustively confirm the non-trivial candidate is maximal intersecting."""
    if p.n < p.k + p.q:
        raise ParameterError(f"maximality check requires n >= k + q = {p.k + p.q}, got n={p.n}")
    return is_maximal_intersecting_mf(build_hm(p))
