"""Finite posets stored as full order relations over bitsets.

Element ``i`` of a poset is a position in ``labels``; every subset is an int
whose bit ``i`` marks membership.  ``down[i]`` holds the principal ideal
``L(i)`` and ``up[i]`` the principal filter ``U(i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, combinations_with_replacement, product
from typing import Callable, Iterable, Iterator, Mapping, Union

from .errors import (
    AntisymmetryViolation,
    DuplicateLabel,
    EmptySubset,
    NotComparable,
    SizeLimit,
    UnknownElement,
)

FRINK_ENUMERATION_LIMIT = 20


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class FinitePoset:
    labels: tuple[str, ...]
    down: tuple[int, ...]

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self.index

    def __repr__(self):
        pairs = " ".join(f"{self.labels[i]}<{self.labels[j]}" for i, j in self.covers)
        return f"FinitePoset([{', '.join(self.labels)}]; {pairs})"

    # -- derived tables -------------------------------------------------

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def up(self) -> tuple[int, ...]:
        n = len(self.labels)
        up = [0] * n
        for j in range(n):
            for i in bits(self.down[j]):
                up[i] |= 1 << j
        return tuple(up)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs ``(i, j)`` with ``i < j`` and nothing strictly between."""
        out = []
        for j in range(len(self)):
            below = self.down[j] & ~(1 << j)
            for i in bits(below):
                between = self.up[i] & below & ~(1 << i)
                if not between:
                    out.append((i, j))
        return tuple(sorted(out))

    # -- element / subset conversion --------------------------------------

    def idx(self, label) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise UnknownElement(f"unknown element {label!r}") from None

    def mask(self, items) -> int:
        """Bitmask of a subset given as ElementSubset, label iterable, or single label."""
        if isinstance(items, ElementSubset):
            if items.base is not self and items.base != self:
                raise UnknownElement("subset belongs to a different poset")
            return items.mask
        if isinstance(items, str):
            return 1 << self.idx(items)
        m = 0
        for lab in items:
            m |= 1 << self.idx(lab)
        return m

    def subset(self, items=()) -> ElementSubset:
        if isinstance(items, int):
            return ElementSubset(self, items)
        return ElementSubset(self, self.mask(items))

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def le(self, x, y) -> bool:
        return bool(self.down[self.idx(y)] >> self.idx(x) & 1)

    # -- mask-level kernel ----------------------------------------------

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def lower(self, mask: int) -> int:
        """L(mask); the full carrier for the empty set."""
        r = self.full
        for i in bits(mask):
            r &= self.down[i]
        return r

    def upper(self, mask: int) -> int:
        r = self.full
        for i in bits(mask):
            r &= self.up[i]
        return r

    def maximal(self, mask: int) -> int:
        return sum(1 << i for i in bits(mask) if self.up[i] & mask == 1 << i)

    def minimal(self, mask: int) -> int:
        return sum(1 << i for i in bits(mask) if self.down[i] & mask == 1 << i)

    def least(self, mask: int) -> int | None:
        """Index of the least element of ``mask`` if it has one."""
        for i in bits(mask):
            if self.up[i] & mask == mask:
                return i
        return None

    def greatest(self, mask: int) -> int | None:
        for i in bits(mask):
            if self.down[i] & mask == mask:
                return i
        return None

    def sup(self, mask: int) -> int | None:
        return self.least(self.upper(mask))

    def inf(self, mask: int) -> int | None:
        return self.greatest(self.lower(mask))

    def convex(self, mask: int) -> bool:
        for i in bits(mask):
            for k in bits(mask & self.up[i]):
                if self.up[i] & self.down[k] & ~mask:
                    return False
        return True

    def is_below(self, lo: int, hi: int) -> bool:
        """``lo <= hi`` elementwise for subsets (vacuous when either is empty)."""
        return all(self.up[i] & hi == hi for i in bits(lo))

    # -- simple queries --------------------------------------------------

    @cached_property
    def top(self) -> int | None:
        return self.greatest(self.full)

    @cached_property
    def bottom(self) -> int | None:
        return self.least(self.full)

    @property
    def bounded(self) -> bool:
        return self.top is not None and self.bottom is not None

    def is_chain(self) -> bool:
        return all((self.down[i] | self.up[i]) == self.full for i in range(len(self)))

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    def has_antichain(self, size: int) -> bool:
        n = len(self)
        incomparable = [self.full & ~(self.down[i] | self.up[i]) for i in range(n)]

        def extend(cands: int, need: int) -> bool:
            if need == 0:
                return True
            for i in bits(cands):
                if extend(cands & incomparable[i] & ~((1 << (i + 1)) - 1), need - 1):
                    return True
            return False

        return extend(self.full, size)

    # -- derived posets ---------------------------------------------------

    def induced(self, mask: int) -> FinitePoset:
        keep = list(bits(mask))
        pos = {old: new for new, old in enumerate(keep)}
        down = tuple(sum(1 << pos[i] for i in bits(self.down[j] & mask)) for j in keep)
        return FinitePoset(tuple(self.labels[i] for i in keep), down)

    def relabel(self, mapping: Mapping[str, str] | Callable[[str], str]) -> FinitePoset:
        fn = mapping if callable(mapping) else (lambda s: mapping.get(s, s))
        labels = tuple(fn(s) for s in self.labels)
        if len(set(labels)) != len(labels):
            raise DuplicateLabel("relabelling is not injective")
        return FinitePoset(labels, self.down)

    def permuted(self, order: list[int]) -> FinitePoset:
        """Same poset with elements listed in ``order`` (a permutation of indices)."""
        pos = {old: new for new, old in enumerate(order)}
        down = tuple(sum(1 << pos[i] for i in bits(self.down[j])) for j in order)
        return FinitePoset(tuple(self.labels[i] for i in order), down)


@dataclass(frozen=True, eq=False)
class ElementSubset:
    base: FinitePoset
    mask: int

    def __iter__(self):
        return iter(self.base.names(self.mask))

    def __len__(self):
        return popcount(self.mask)

    def __contains__(self, label):
        return label in self.base.index and bool(self.mask >> self.base.index[label] & 1)

    def __eq__(self, other):
        if isinstance(other, ElementSubset):
            return self.mask == other.mask and (self.base is other.base or self.base == other.base)
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.base.labels, self.mask))

    def __repr__(self):
        return "{" + ", ".join(self) + "}"

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self)

    def __and__(self, other):
        return ElementSubset(self.base, self.mask & self.base.mask(other))

    def __or__(self, other):
        return ElementSubset(self.base, self.mask | self.base.mask(other))

    def __sub__(self, other):
        return ElementSubset(self.base, self.mask & ~self.base.mask(other))

    def issubset(self, other) -> bool:
        return self.mask & ~self.base.mask(other) == 0


SubsetLike = Union[ElementSubset, Iterable[str], str]


def build_poset(elements: Iterable[str], generators: Iterable[tuple[str, str]] = ()) -> FinitePoset:
    """Reflexive-transitive closure of ``generators`` over ``elements``."""
    labels = tuple(elements)
    index: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise DuplicateLabel(f"duplicate label {lab!r}")
        index[lab] = i
    n = len(labels)
    down = [1 << i for i in range(n)]
    for x, y in generators:
        for lab in (x, y):
            if lab not in index:
                raise UnknownElement(f"unknown element {lab!r}")
        down[index[y]] |= 1 << index[x]
    # Warshall on bitsets: k in down[j] pulls down[k] into down[j]
    for k in range(n):
        bit = 1 << k
        dk = down[k]
        for j in range(n):
            if down[j] & bit:
                down[j] |= dk
    for j in range(n):
        for i in bits(down[j] & ~(1 << j)):
            if down[i] >> j & 1:
                raise AntisymmetryViolation(
                    f"cycle through {labels[i]!r} and {labels[j]!r}")
    return FinitePoset(labels, tuple(down))


def chain(n: int, prefix: str = "") -> FinitePoset:
    labels = [f"{prefix}{i}" for i in range(n)]
    return build_poset(labels, zip(labels, labels[1:]))


def antichain(n: int, prefix: str = "") -> FinitePoset:
    return build_poset([f"{prefix}{i}" for i in range(n)])


# -- L/U calculus on labels --------------------------------------------------


def l_set(P: FinitePoset, B: SubsetLike = ()) -> ElementSubset:
    return ElementSubset(P, P.lower(P.mask(B)))


def u_set(P: FinitePoset, B: SubsetLike = ()) -> ElementSubset:
    return ElementSubset(P, P.upper(P.mask(B)))


def max_of(P: FinitePoset, B: SubsetLike = ()) -> ElementSubset:
    return ElementSubset(P, P.maximal(P.mask(B)))


def min_of(P: FinitePoset, B: SubsetLike = ()) -> ElementSubset:
    return ElementSubset(P, P.minimal(P.mask(B)))


def convex_hull_mask(P: FinitePoset, m: int) -> int:
    return P.lower(P.upper(m)) & P.upper(P.lower(m))


def convex_hull(P: FinitePoset, S: SubsetLike) -> ElementSubset:
    m = P.mask(S)
    if not m:
        raise EmptySubset("convex hull of the empty set")
    return ElementSubset(P, convex_hull_mask(P, m))


def is_convex(P: FinitePoset, B: SubsetLike) -> bool:
    return P.convex(P.mask(B))


def _frink(P: FinitePoset, m: int, close: Callable[[int], int], method: str) -> bool:
    if method == "closure":
        # LU is monotone, so LU(M) <= LU(I) for every M <= I
        return close(m) & ~m == 0
    if popcount(m) > FRINK_ENUMERATION_LIMIT:
        raise SizeLimit(f"Frink check enumerates 2^{popcount(m)} subsets")
    members = list(bits(m))
    for r in range(len(members) + 1):
        for M in combinations(members, r):
            if close(sum(1 << i for i in M)) & ~m:
                return False
    return True


def is_frink_ideal(P: FinitePoset, I: SubsetLike, method: str = "enumerate") -> bool:
    return _frink(P, P.mask(I), lambda s: P.lower(P.upper(s)), method)


def is_frink_filter(P: FinitePoset, F: SubsetLike, method: str = "enumerate") -> bool:
    return _frink(P, P.mask(F), lambda s: P.upper(P.lower(s)), method)


# -- distributivity ------------------------------------------------------------


def _pair(i, j):
    return (1 << i) | (1 << j)


def is_distributive(P: FinitePoset) -> bool:
    """L(U(x,y),z) = LU(L(x,z),L(y,z)) for all x, y, z."""
    n = len(P)
    L, U = P.lower, P.upper
    for x, y in combinations_with_replacement(range(n), 2):
        uxy = U(_pair(x, y))
        for z in range(n):
            lhs = L(uxy | 1 << z)
            rhs = L(U(L(_pair(x, z)) | L(_pair(y, z))))
            if lhs != rhs:
                return False
    return True


def nary_distributive_check(P: FinitePoset, n: int) -> bool:
    """Both n-ary LU-identities for every tuple x_1..x_n, z."""
    if n < 2:
        raise ValueError("arity must be at least 2")
    L, U = P.lower, P.upper
    for xs in combinations_with_replacement(range(len(P)), n):
        xm = 0
        for x in xs:
            xm |= 1 << x
        uxs, lxs = U(xm), L(xm)
        for z in range(len(P)):
            zb = 1 << z
            lz = 0
            uz = 0
            for x in xs:
                lz |= L(1 << x | zb)
                uz |= U(1 << x | zb)
            if L(uxs | zb) != L(U(lz)):
                return False
            if U(lxs | zb) != U(L(uz)):
                return False
    return True


def lu_identities(P: FinitePoset, arity: int = 3) -> dict[str, bool]:
    """Truth value of each of the six distributive LU-identities separately."""
    L, U = P.lower, P.upper
    n = len(P)
    res = {k: True for k in ("LU_join", "UL_join", "UL_meet", "LU_meet", "nary_L", "nary_U")}
    for x, y, z in product(range(n), repeat=3):
        xz, yz, xy, zb = _pair(x, z), _pair(y, z), _pair(x, y), 1 << z
        if L(U(xy) | zb) != L(U(L(xz) | L(yz))):
            res["LU_join"] = False
        if U(L(xz) | L(yz)) != U(L(U(xy) | zb)):
            res["UL_join"] = False
        if U(L(xy) | zb) != U(L(U(xz) | U(yz))):
            res["UL_meet"] = False
        if L(U(xz) | U(yz)) != L(U(L(xy) | zb)):
            res["LU_meet"] = False
    for xs in product(range(n), repeat=arity):
        xm = 0
        for x in xs:
            xm |= 1 << x
        for z in range(n):
            zb = 1 << z
            lz = uz = 0
            for x in xs:
                lz |= L(1 << x | zb)
                uz |= U(1 << x | zb)
            if L(U(xm) | zb) != L(U(lz)):
                res["nary_L"] = False
            if U(L(xm) | zb) != U(L(uz)):
                res["nary_U"] = False
    return res


# -- irreducibility, complements ---------------------------------------------


def is_join_irreducible(P: FinitePoset, a: str) -> bool:
    """No c, d other than ``a`` have ``a`` as their supremum."""
    i = P.idx(a)
    others = [k for k in bits(P.down[i]) if k != i]
    for c, d in combinations_with_replacement(others, 2):
        if P.sup(_pair(c, d)) == i:
            return False
    return True


def is_meet_irreducible(P: FinitePoset, a: str) -> bool:
    i = P.idx(a)
    others = [k for k in bits(P.up[i]) if k != i]
    for c, d in combinations_with_replacement(others, 2):
        if P.inf(_pair(c, d)) == i:
            return False
    return True


def _complement_mask(P: FinitePoset, i: int) -> int:
    la, ua = P.lower(P.full), P.upper(P.full)
    return sum(1 << j for j in range(len(P))
               if P.lower(_pair(i, j)) == la and P.upper(_pair(i, j)) == ua)


def complements_of(P: FinitePoset, x: str) -> ElementSubset:
    return ElementSubset(P, _complement_mask(P, P.idx(x)))


def is_complemented(P: FinitePoset) -> bool:
    return all(_complement_mask(P, i) for i in range(len(P)))


def is_boolean_poset(P: FinitePoset) -> bool:
    return is_distributive(P) and is_complemented(P)


# -- derived posets ------------------------------------------------------------


def interval(P: FinitePoset, a: str, b: str) -> FinitePoset:
    i, j = P.idx(a), P.idx(b)
    if not P.leq(i, j):
        raise NotComparable(f"{a!r} is not below {b!r}")
    return P.induced(P.up[i] & P.down[j])


def dual(P: FinitePoset) -> FinitePoset:
    return FinitePoset(P.labels, P.up)
