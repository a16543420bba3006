"""Shared brute-force oracles for the test suite.

Every oracle here is deliberately independent of the implementation path it
checks: plain filtering over itertools.product, direct definition expansion,
and full permutation search.
"""

from __future__ import annotations

from itertools import permutations, product

import pytest

from msfam import Params, UNBOUNDED, is_unbounded


def brute_multisets(n: int, k: int, m) -> list[tuple[int, ...]]:
    """All k-uniform multiplicity vectors by raw product filtering."""
    cap = k if is_unbounded(m) else min(m, k)
    return [v for v in product(range(cap + 1), repeat=n) if sum(v) == k]


def brute_compositions(k: int, parts: int, m) -> int:
    """Number of ordered part vectors in [1, m]^parts summing to k, by recursion."""
    cap = k if is_unbounded(m) else m

    def rec(remaining: int, left: int) -> int:
        if left == 0:
            return 1 if remaining == 0 else 0
        if remaining < left or remaining > left * cap:
            return 0
        return sum(rec(remaining - first, left - 1) for first in range(1, min(cap, remaining) + 1))

    return rec(k, parts)


def brute_isomorphic(members_a, members_b, n: int) -> bool:
    """Exhaustive permutation search over multiplicity-vector families."""
    a = sorted(members_a)
    b = sorted(members_b)
    if len(a) != len(b):
        return False
    for perm in permutations(range(n)):
        image = sorted(tuple(v[perm.index(i)] for i in range(n)) for v in a)
        if image == b:
            return True
    return False


def brute_shadow_members(n: int, k: int) -> set[int]:
    """The shadow family by its definition: 1-containing sets leaving [n-k],
    together with the 1-avoiding supersets of the tail interval."""
    full = (1 << n) - 1
    low = (1 << (n - k)) - 1
    h_mask = full ^ low
    out = set()
    for x in range(1, full):
        in_star = bool(x & 1)
        if in_star and (x & ~low):
            out.add(x)
        if not in_star and (x & h_mask) == h_mask:
            out.add(x)
    return out


def grid_params(n_max: int, ks, ms, require=None) -> list[Params]:
    out = []
    for k in ks:
        for m in ms:
            for n in range(2, n_max + 1):
                p = Params(n, k, m)
                if require == "tail" and n <= k:
                    continue
                if require == "theorem" and n < k + p.q:
                    continue
                out.append(p)
    return out


@pytest.fixture(scope="session")
def unbounded():
    return UNBOUNDED
