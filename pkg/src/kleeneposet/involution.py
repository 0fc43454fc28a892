"""Antitone involutions, normality, and the Kleene classification."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import NotAntitone, NotBounded, NotInvolutive, UnknownElement
from .poset import (
    ElementSubset,
    FinitePoset,
    bits,
    is_complemented,
    is_distributive,
)

EAGER_CLASSIFY_LIMIT = 64


@dataclass(frozen=True)
class Classification:
    distributive: bool
    pseudo_kleene: bool
    kleene: bool
    boolean: bool
    ortho: bool
    fixed_points: ElementSubset

    def flags(self) -> dict[str, bool]:
        return {
            "distributive": self.distributive,
            "pseudo_kleene": self.pseudo_kleene,
            "kleene": self.kleene,
            "boolean": self.boolean,
            "ortho": self.ortho,
        }


@dataclass(frozen=True)
class InvolutivePoset:
    """A poset with an antitone involution stored as a permutation of indices.

    Build through :func:`attach_involution` unless the involution is known to
    be valid by construction.
    """

    poset: FinitePoset
    inv: tuple[int, ...]

    def __len__(self):
        return len(self.poset)

    @property
    def labels(self):
        return self.poset.labels

    def prime(self, label: str) -> str:
        return self.poset.labels[self.inv[self.poset.idx(label)]]

    def image(self, mask: int) -> int:
        return sum(1 << self.inv[i] for i in bits(mask))

    def mapping(self) -> dict[str, str]:
        lab = self.poset.labels
        return {lab[i]: lab[j] for i, j in enumerate(self.inv)}

    @cached_property
    def classification(self) -> Classification:
        return classify(self)

    def relabel(self, mapping) -> InvolutivePoset:
        return InvolutivePoset(self.poset.relabel(mapping), self.inv)


def _first_violation_order(P: FinitePoset):
    return sorted((i, j) for j in range(len(P)) for i in bits(P.down[j]))


def attach_involution(P: FinitePoset, pairs: Mapping[str, str]) -> InvolutivePoset:
    """Validate ``pairs`` (label -> label, total) as an antitone involution on P."""
    inv = []
    for lab in P.labels:
        if lab not in pairs:
            raise NotInvolutive(f"involution undefined on {lab!r}")
        target = pairs[lab]
        if target not in P.index:
            raise UnknownElement(f"unknown element {target!r}")
        inv.append(P.index[target])
    inv = tuple(inv)
    for i, j in enumerate(inv):
        if inv[j] != i:
            raise NotInvolutive(
                f"{P.labels[i]}'' = {P.labels[inv[j]]}, expected {P.labels[i]}")
    # report the lexicographically first violating pair
    for i, j in _first_violation_order(P):
        if not P.leq(inv[j], inv[i]):
            raise NotAntitone(
                f"{P.labels[i]} <= {P.labels[j]} but "
                f"{P.labels[inv[j]]} is not below {P.labels[inv[i]]}",
                pair=(P.labels[i], P.labels[j]))
    K = InvolutivePoset(P, inv)
    if len(P) <= EAGER_CLASSIFY_LIMIT:
        K.classification
    return K


def is_antitone_involution(P: FinitePoset, inv: tuple[int, ...]) -> bool:
    if any(inv[j] != i for i, j in enumerate(inv)):
        return False
    return all(P.leq(inv[j], inv[i]) for j in range(len(P)) for i in bits(P.down[j]))


def _pair_lower(K: InvolutivePoset, i: int) -> int:
    return K.poset.down[i] & K.poset.down[K.inv[i]]


def _pair_upper(K: InvolutivePoset, i: int) -> int:
    return K.poset.up[i] & K.poset.up[K.inv[i]]


def normality_holds(K: InvolutivePoset) -> bool:
    """L(x,x') <= U(y,y') for all x, y."""
    P = K.poset
    lows = 0
    highs = 0
    for i in range(len(P)):
        lows |= _pair_lower(K, i)
        highs |= _pair_upper(K, i)
    return P.is_below(lows, highs)


def zhu_holds(K: InvolutivePoset) -> bool:
    """x <= x' and y' <= y imply x <= y."""
    P = K.poset
    n = len(P)
    neg = [i for i in range(n) if P.leq(i, K.inv[i])]
    pos = [j for j in range(n) if P.leq(K.inv[j], j)]
    return all(P.leq(i, j) for i in neg for j in pos)


def fixed_points(K: InvolutivePoset) -> ElementSubset:
    return ElementSubset(K.poset, sum(1 << i for i, j in enumerate(K.inv) if i == j))


def is_orthocomplementation(K: InvolutivePoset) -> bool:
    P = K.poset
    if not P.bounded:
        raise NotBounded("orthocomplementation needs a bottom and a top")
    zero, one = 1 << P.bottom, 1 << P.top
    return all(_pair_lower(K, i) == zero and _pair_upper(K, i) == one for i in range(len(P)))


def classify(K: InvolutivePoset) -> Classification:
    P = K.poset
    dist = is_distributive(P)
    pk = normality_holds(K)
    return Classification(
        distributive=dist,
        pseudo_kleene=pk,
        kleene=dist and pk,
        boolean=dist and is_complemented(P),
        ortho=P.bounded and is_orthocomplementation(K),
        fixed_points=fixed_points(K),
    )
