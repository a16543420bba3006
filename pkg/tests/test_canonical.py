"""Canonical forms: equality exactly on isomorphism classes, witnesses valid."""

from itertools import permutations

from hypothesis import given, settings, strategies as st

from msfam import SetFamily, canonical_set_family, set_families_isomorphic
from msfam.canonical import canonical_vectors, find_isomorphism


def _permute_mask(x, perm, n):
    y = 0
    for i in range(n):
        if (x >> i) & 1:
            y |= 1 << perm[i]
    return y


def _brute_iso_masks(masks_a, masks_b, n):
    a, b = sorted(masks_a), sorted(masks_b)
    return any(sorted(_permute_mask(x, perm, n) for x in a) == b
               for perm in permutations(range(n)))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_canonical_separates_classes(data):
    n = data.draw(st.integers(2, 5))
    full = (1 << n) - 1
    pool = st.integers(1, full - 1)
    masks_a = data.draw(st.sets(pool, min_size=1, max_size=5))
    perm = data.draw(st.permutations(list(range(n))))
    option = data.draw(st.booleans())
    if option:
        masks_b = {_permute_mask(x, perm, n) for x in masks_a}
    else:
        masks_b = data.draw(st.sets(pool, min_size=1, max_size=5))
    fam_a = SetFamily.from_masks(n, masks_a)
    fam_b = SetFamily.from_masks(n, masks_b)
    expected = _brute_iso_masks(masks_a, masks_b, n)
    assert (canonical_set_family(fam_a) == canonical_set_family(fam_b)) == expected
    ok, witness = set_families_isomorphic(fam_a, fam_b)
    assert ok == expected
    if ok:
        image = {_permute_mask(x, [w - 1 for w in witness], n) for x in masks_a}
        assert image == masks_b


def test_canonical_vectors_fixed_point():
    items = [(2, 0, 1), (0, 1, 1)]
    canon = canonical_vectors(items, 3)
    # canonical of the canonical is itself
    assert canonical_vectors(list(canon), 3) == canon


def test_find_isomorphism_none_on_different_shapes():
    assert find_isomorphism([(1, 0)], [(1, 1)], 2) is None
    assert find_isomorphism([(1, 0)], [(1, 0), (0, 1)], 2) is None
