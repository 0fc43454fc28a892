"""Dedekind-MacNeille and G completions, the induced involution, and double density."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .config import check_size
from .constructions import ps_construct
from .errors import EmptySubset, NotInvolutive, NotKleene, VerificationFailed
from .involution import InvolutivePoset, attach_involution, classify
from .morphisms import PosetMap, antichains, establish, find_isomorphism
from .poset import FinitePoset, SubsetLike, bits, popcount


@dataclass(frozen=True)
class SubsetLattice:
    """A family of subsets of ``base`` ordered by inclusion.

    ``closed_sets`` are bitmasks sorted by (size, mask); ``principal[x]`` is the
    position of L(x); ``bot_involution`` (when present) maps positions to
    positions.
    """

    base: FinitePoset
    closed_sets: tuple[int, ...]
    principal: tuple[int, ...]
    bot_involution: tuple[int, ...] | None = None

    def __len__(self):
        return len(self.closed_sets)

    def position(self, mask: int) -> int:
        return self._pos[mask]

    @property
    def _pos(self) -> dict[int, int]:
        d = self.__dict__.get("_pos_cache")
        if d is None:
            d = {m: k for k, m in enumerate(self.closed_sets)}
            object.__setattr__(self, "_pos_cache", d)
        return d

    def label(self, mask: int) -> str:
        """``L(m1,...,mk)`` with m_i the minimal upper bounds; ``{}`` for the empty set."""
        if mask == 0:
            return "{}"
        B = self.base
        return "L(" + ",".join(B.names(B.minimal(B.upper(mask)))) + ")"

    def members(self) -> list[frozenset[str]]:
        return [frozenset(self.base.names(m)) for m in self.closed_sets]

    def meet(self, x: int, y: int) -> int:
        return x & y

    def join(self, x: int, y: int) -> int:
        B = self.base
        return B.lower(B.upper(x | y))

    def as_poset(self) -> FinitePoset:
        sets = self.closed_sets
        down = []
        for c in sets:
            down.append(sum(1 << k for k, d in enumerate(sets) if d & ~c == 0))
        return FinitePoset(tuple(self.label(m) for m in sets), tuple(down))

    def as_involutive(self) -> InvolutivePoset:
        if self.bot_involution is None:
            raise ValueError("lattice carries no involution")
        return InvolutivePoset(self.as_poset(), self.bot_involution)


def _sorted_family(family: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(family), key=lambda m: (popcount(m), m)))


def _close_under_intersection(gens: Iterable[int], start: Iterable[int], what: str,
                              cap: int | None) -> set[int]:
    family = set(start)
    for g in gens:
        new = {c & g for c in family} | {g}
        family |= new
        check_size(len(family), what, cap)
    return family


def dm_completion(A: FinitePoset, cap: int | None = None) -> SubsetLattice:
    """All LU-closed subsets: the full set plus every intersection of principal ideals."""
    family = _close_under_intersection(A.down, [A.full], "DM completion", cap)
    sets = _sorted_family(family)
    pos = {m: k for k, m in enumerate(sets)}
    return SubsetLattice(A, sets, tuple(pos[d] for d in A.down))


def g_completion(A: FinitePoset, cap: int | None = None) -> SubsetLattice:
    """Finite intersections of the sets L(U(F)), F finite and non-empty.

    U(F) only depends on the maximal elements of F, so F ranges over antichains.
    """
    gens = {A.lower(A.upper(F)) for F in antichains(A)}
    family = _close_under_intersection(sorted(gens), [], "G completion", cap)
    sets = _sorted_family(family)
    pos = {m: k for k, m in enumerate(sets)}
    return SubsetLattice(A, sets, tuple(pos[d] for d in A.down))


def bot_involution(lat: SubsetLattice, K: InvolutivePoset) -> SubsetLattice:
    """Attach X -> L(X') to the completion and check it is an antitone involution."""
    if K.poset.labels != lat.base.labels:
        raise ValueError("involution lives on a different base")
    B = lat.base
    inv = []
    for m in lat.closed_sets:
        img = B.lower(K.image(m))
        if img not in lat._pos:
            raise VerificationFailed(f"L(X') of {lat.label(m)} is not a member")
        inv.append(lat._pos[img])
    inv = tuple(inv)
    if any(inv[j] != i for i, j in enumerate(inv)):
        raise NotInvolutive("X -> L(X') is not an involution on the completion")
    sets = lat.closed_sets
    for i, x in enumerate(sets):
        for j, y in enumerate(sets):
            if x & ~y == 0 and sets[inv[j]] & ~sets[inv[i]]:
                raise VerificationFailed("X -> L(X') is not antitone")
    return replace(lat, bot_involution=inv)


def is_lattice(P: FinitePoset) -> bool:
    n = len(P)
    return all(P.sup((1 << i) | (1 << j)) is not None and P.inf((1 << i) | (1 << j)) is not None
               for i in range(n) for j in range(i + 1, n))


def is_doubly_dense(X: Iterable[int], lat: SubsetLattice) -> bool:
    """Every member is the join of the X-members below it and the meet of those above it.

    ``X`` holds member bitmasks.
    """
    X = list(X)
    B = lat.base
    for c in lat.closed_sets:
        below = 0
        above = B.full
        for x in X:
            if x & ~c == 0:
                below |= x
            if c & ~x == 0:
                above &= x
        if B.lower(B.upper(below)) != c or above != c:
            return False
    return True


@dataclass(frozen=True)
class KleeneCompletionReport:
    lattice: SubsetLattice
    completion: InvolutivePoset
    kleene_lattice: bool
    involution_closed: bool
    doubly_dense: bool
    principal_map: PosetMap

    @property
    def ok(self) -> bool:
        return (self.kleene_lattice and self.involution_closed and self.doubly_dense
                and {"isomorphism", "involution_preserving"} <= self.principal_map.verified)


def verify_kleene_completion(K: InvolutivePoset) -> KleeneCompletionReport:
    """G(K) with X -> L(X') is a Kleene lattice containing {L(a)} as a copy of K."""
    if not classify(K).kleene:
        raise NotKleene("input is not a Kleene poset")
    lat = bot_involution(g_completion(K.poset), K)
    C = lat.as_involutive()
    cls = classify(C)
    kleene_lattice = cls.kleene and is_lattice(C.poset)
    principal = set(lat.principal)
    closed = all(lat.bot_involution[p] in principal for p in principal)
    dense = is_doubly_dense([lat.closed_sets[p] for p in principal], lat)
    # the principal ideals with the induced order and involution
    sub = C.poset.induced(sum(1 << p for p in principal))
    view = attach_involution(sub, {x: C.prime(x) for x in sub.labels})
    f = PosetMap(K, view, tuple(sub.idx(C.poset.labels[p]) for p in lat.principal))
    f = establish(f, "order_preserving", "order_reflecting", "isomorphism", "involution_preserving")
    return KleeneCompletionReport(lat, C, kleene_lattice, closed, dense, f)


@dataclass(frozen=True)
class DMComparison:
    left: InvolutivePoset
    right: InvolutivePoset
    witness: PosetMap | None

    @property
    def isomorphic(self) -> bool:
        return self.witness is not None

    @property
    def verdict(self) -> str:
        return "isomorphic" if self.isomorphic else "not isomorphic"


def dm_ps_compare(A: FinitePoset, S: SubsetLike) -> DMComparison:
    """DM(P_S(A)) with X -> L(X') against P_{L(s) | s in S}(DM(A)) with the swap."""
    sm = A.mask(S)
    if not sm:
        raise EmptySubset("comparison needs a non-empty S")
    P = ps_construct(A, S)
    left = bot_involution(dm_completion(P.poset), P).as_involutive()
    D = dm_completion(A)
    DA = D.as_poset()
    right = ps_construct(DA, [DA.labels[D.principal[s]] for s in bits(sm)])
    return DMComparison(left, right, find_isomorphism(left, right, respect_involution=True))
