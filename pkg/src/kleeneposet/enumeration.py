"""Isomorph-free enumeration of small posets and their antitone involutions."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator

from .involution import InvolutivePoset
from .morphisms import IsoClasses, antichains
from .poset import FinitePoset, bits


def _labels(n: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(n))


def down_sets(P: FinitePoset) -> Iterator[int]:
    """Every order ideal of P (including the empty one), as bitmasks."""
    for m in antichains(P, nonempty=False):
        d = 0
        for i in bits(m):
            d |= P.down[i]
        yield d


@lru_cache(maxsize=None)
def all_posets(n: int) -> tuple[FinitePoset, ...]:
    """One poset per isomorphism class on n elements.

    Each class of size n is reached by adding a new maximal element on top of
    some down-set of a smaller representative; isomorphs are rejected with
    invariant buckets plus an explicit isomorphism test. The index order of
    every returned poset is a linear extension.
    """
    if n == 0:
        return (FinitePoset((), ()),)
    seen = IsoClasses()
    out = []
    for Q in all_posets(n - 1):
        for D in down_sets(Q):
            P = FinitePoset(_labels(n), Q.down + (D | 1 << (n - 1),))
            if seen.add(P):
                out.append(P)
    return tuple(out)


def antitone_involutions(P: FinitePoset) -> list[tuple[int, ...]]:
    """All antitone involutions of P as index permutations."""
    n = len(P)
    inv = [-1] * n
    out = []

    def consistent(i: int, j: int) -> bool:
        # with i <-> j tentatively assigned, check x <= k  =>  k' <= x'
        for x in {i, j}:
            for k in range(n):
                kk = inv[k]
                if kk == -1:
                    continue
                if P.leq(x, k) and not P.leq(kk, inv[x]):
                    return False
                if P.leq(k, x) and not P.leq(inv[x], kk):
                    return False
        return True

    def go(i: int):
        while i < n and inv[i] != -1:
            i += 1
        if i == n:
            out.append(tuple(inv))
            return
        for j in range(i, n):
            if inv[j] != -1:
                continue
            inv[i], inv[j] = j, i
            if consistent(i, j):
                go(i + 1)
            inv[i] = inv[j] = -1

    go(0)
    return out


@lru_cache(maxsize=None)
def all_involutive_posets(n: int) -> tuple[InvolutivePoset, ...]:
    """One involutive poset per isomorphism class (isomorphisms commuting with ')."""
    out = []
    for P in all_posets(n):
        seen = IsoClasses(respect_involution=True)
        for inv in antitone_involutions(P):
            K = InvolutivePoset(P, inv)
            if seen.add(K):
                out.append(K)
    return tuple(out)


def random_poset(n: int, density: float, rng: random.Random) -> FinitePoset:
    """Transitive closure of a random DAG oriented along 0 < 1 < ... < n-1."""
    down = [1 << j for j in range(n)]
    for j in range(n):
        for i in range(j):
            if rng.random() < density:
                down[j] |= down[i]
    return FinitePoset(_labels(n), tuple(down))


def random_involutive_poset(n: int, density: float, rng: random.Random, tries: int = 50):
    """A random poset with a uniformly chosen antitone involution, or None if none found."""
    for _ in range(tries):
        P = random_poset(n, density, rng)
        invs = antitone_involutions(P)
        if invs:
            return InvolutivePoset(P, rng.choice(invs))
    return None
