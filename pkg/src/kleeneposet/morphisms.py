"""Maps between finite posets: LULU checks and isomorphism search."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Mapping, Union

from .errors import NotOrderPreserving, SizeLimit
from .involution import InvolutivePoset
from .poset import FinitePoset, bits, popcount

PosetLike = Union[FinitePoset, InvolutivePoset]

PROPERTIES = (
    "order_preserving",
    "order_reflecting",
    "lulu_morphism",
    "lulu_embedding",
    "involution_preserving",
    "isomorphism",
)

FULL_SUBSET_LIMIT = 20


def as_poset(X: PosetLike) -> FinitePoset:
    return X.poset if isinstance(X, InvolutivePoset) else X


def involution_of(X: PosetLike) -> tuple[int, ...] | None:
    return X.inv if isinstance(X, InvolutivePoset) else None


@dataclass(frozen=True)
class PosetMap:
    source: PosetLike
    target: PosetLike
    assignment: tuple[int, ...]
    verified: frozenset[str] = field(default_factory=frozenset)

    def __getitem__(self, label: str) -> str:
        S, T = as_poset(self.source), as_poset(self.target)
        return T.labels[self.assignment[S.idx(label)]]

    def as_dict(self) -> dict[str, str]:
        S, T = as_poset(self.source), as_poset(self.target)
        return {S.labels[i]: T.labels[j] for i, j in enumerate(self.assignment)}

    def image(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self.assignment[i]
        return out

    def __repr__(self):
        body = ", ".join(f"{k}->{v}" for k, v in self.as_dict().items())
        return f"PosetMap({body}; verified={sorted(self.verified)})"


def make_map(source: PosetLike, target: PosetLike, mapping: Mapping[str, str]) -> PosetMap:
    S, T = as_poset(source), as_poset(target)
    return PosetMap(source, target, tuple(T.idx(mapping[lab]) for lab in S.labels))


def is_order_preserving(f: PosetMap) -> bool:
    S, T = as_poset(f.source), as_poset(f.target)
    a = f.assignment
    return all(T.leq(a[i], a[j]) for j in range(len(S)) for i in bits(S.down[j]))


def is_order_reflecting(f: PosetMap) -> bool:
    S, T = as_poset(f.source), as_poset(f.target)
    a = f.assignment
    n = len(S)
    return all(S.leq(i, j) for i in range(n) for j in range(n) if T.leq(a[i], a[j]))


def is_bijective(f: PosetMap) -> bool:
    return len(set(f.assignment)) == len(as_poset(f.target)) == len(f.assignment)


def is_involution_preserving(f: PosetMap) -> bool:
    si, ti = involution_of(f.source), involution_of(f.target)
    if si is None or ti is None:
        return False
    a = f.assignment
    return all(a[si[i]] == ti[a[i]] for i in range(len(a)))


def antichains(P: FinitePoset, nonempty: bool = True):
    """Yield every antichain of P as a bitmask."""
    n = len(P)
    incomparable = [P.full & ~(P.down[i] | P.up[i]) for i in range(n)]

    def grow(current: int, cands: int):
        yield current
        for i in bits(cands):
            yield from grow(current | 1 << i, cands & incomparable[i] & ~((2 << i) - 1))

    for m in grow(0, P.full):
        if m or not nonempty:
            yield m


def _lulu_on(f: PosetMap, subsets) -> bool:
    S, T = as_poset(f.source), as_poset(f.target)
    for X in subsets:
        fx = f.image(X)
        if T.lower(fx) != T.lower(f.image(S.upper(S.lower(X)))):
            return False
        if T.upper(fx) != T.upper(f.image(S.lower(S.upper(X)))):
            return False
    return True


def is_lulu_morphism(f: PosetMap, full: bool = False) -> bool:
    """L(f(X)) = L(f(UL(X))) and U(f(Y)) = U(f(LU(Y))) for non-empty X, Y.

    Both sides depend on X only through its minimal (resp. maximal)
    elements, so antichains suffice; ``full=True`` checks every subset.
    """
    if not is_order_preserving(f):
        raise NotOrderPreserving("LULU check needs an order-preserving map")
    S = as_poset(f.source)
    if full:
        if len(S) > FULL_SUBSET_LIMIT:
            raise SizeLimit(f"full LULU check over 2^{len(S)} subsets")
        return _lulu_on(f, range(1, 1 << len(S)))
    return _lulu_on(f, antichains(S))


def is_lulu_embedding(f: PosetMap, full: bool = False) -> bool:
    if not is_order_preserving(f):
        return False
    return is_order_reflecting(f) and is_lulu_morphism(f, full=full)


def inverse(f: PosetMap) -> PosetMap:
    if not is_bijective(f):
        raise ValueError("map is not a bijection")
    inv = [0] * len(f.assignment)
    for i, j in enumerate(f.assignment):
        inv[j] = i
    return PosetMap(f.target, f.source, tuple(inv))


def is_lulu_isomorphism(f: PosetMap) -> bool:
    if not (is_bijective(f) and is_order_preserving(f)):
        return False
    g = inverse(f)
    return is_lulu_morphism(f) and is_order_preserving(g) and is_lulu_morphism(g)


def establish(f: PosetMap, *props: str) -> PosetMap:
    """Return ``f`` with every requested property that actually holds flagged."""
    props = props or PROPERTIES
    found = set(f.verified)
    preserving = is_order_preserving(f)
    for p in props:
        if p == "order_preserving":
            ok = preserving
        elif p == "order_reflecting":
            ok = is_order_reflecting(f)
        elif p == "lulu_morphism":
            ok = preserving and is_lulu_morphism(f)
        elif p == "lulu_embedding":
            ok = preserving and is_lulu_embedding(f)
        elif p == "involution_preserving":
            ok = is_involution_preserving(f)
        elif p == "isomorphism":
            ok = preserving and is_bijective(f) and is_order_reflecting(f)
        else:
            raise ValueError(f"unknown property {p!r}")
        if ok:
            found.add(p)
    return replace(f, verified=frozenset(found))


# -- isomorphism search ------------------------------------------------------


def _initial_colors(P: FinitePoset, inv):
    cols = []
    for i in range(len(P)):
        orbit = 0 if inv is None else (1 if inv[i] == i else 2)
        cols.append(hash((popcount(P.down[i]), popcount(P.up[i]), orbit)))
    return cols


def _refine_step(P: FinitePoset, inv, cols):
    out = []
    for i in range(len(P)):
        sd = P.down[i] & ~(1 << i)
        su = P.up[i] & ~(1 << i)
        out.append(hash((
            cols[i],
            tuple(sorted(cols[j] for j in bits(sd))),
            tuple(sorted(cols[j] for j in bits(su))),
            cols[inv[i]] if inv is not None else 0,
        )))
    return out


def refined_colors(P: FinitePoset, inv=None) -> list[int]:
    """Isomorphism-invariant element colours by iterated neighbourhood refinement."""
    cols = _initial_colors(P, inv)
    classes = len(set(cols))
    while True:
        new = _refine_step(P, inv, cols)
        k = len(set(new))
        if k == classes:
            return new
        cols, classes = new, k


def poset_invariant(X: PosetLike, use_involution: bool = True) -> tuple:
    P = as_poset(X)
    inv = involution_of(X) if use_involution else None
    cols = refined_colors(P, inv)
    return (len(P), sum(popcount(d) for d in P.down), tuple(sorted(cols)))


def _joint_colors(A, ia, B, ib):
    ca, cb = _initial_colors(A, ia), _initial_colors(B, ib)
    ka, kb = len(set(ca)), len(set(cb))
    while True:
        na, nb = _refine_step(A, ia, ca), _refine_step(B, ib, cb)
        ja, jb = len(set(na)), len(set(nb))
        if ja == ka and jb == kb:
            return na, nb
        ca, cb, ka, kb = na, nb, ja, jb


def find_isomorphism(A: PosetLike, B: PosetLike, respect_involution: bool = False) -> PosetMap | None:
    """Order isomorphism A -> B (commuting with the involutions if asked), or None.

    Elements of A are assigned in index order and candidates tried in B's
    index order, so the witness is the lexicographically least one.
    """
    PA, PB = as_poset(A), as_poset(B)
    ia = ib = None
    if respect_involution:
        ia, ib = involution_of(A), involution_of(B)
        if ia is None or ib is None:
            raise TypeError("respect_involution needs two InvolutivePosets")
    n = len(PA)
    if n != len(PB):
        return None
    if sum(map(popcount, PA.down)) != sum(map(popcount, PB.down)):
        return None
    ca, cb = _joint_colors(PA, ia, PB, ib)
    if sorted(ca) != sorted(cb):
        return None
    cands = [[j for j in range(n) if cb[j] == ca[i]] for i in range(n)]
    f = [-1] * n
    g = [-1] * n
    assigned: list[int] = []

    def fits(x: int, y: int) -> bool:
        if f[x] != -1:
            return f[x] == y
        if g[y] != -1:
            return False
        for z in assigned:
            w = f[z]
            if PA.leq(z, x) != PB.leq(w, y) or PA.leq(x, z) != PB.leq(y, w):
                return False
        return True

    def assign(x: int, y: int) -> int:
        f[x], g[y] = y, x
        assigned.append(x)
        return 1

    def undo(k: int):
        for _ in range(k):
            x = assigned.pop()
            g[f[x]] = -1
            f[x] = -1

    def solve(pos: int) -> bool:
        while pos < n and f[pos] != -1:
            pos += 1
        if pos == n:
            return True
        x = pos
        for y in cands[x]:
            if not fits(x, y):
                continue
            k = assign(x, y)
            ok = True
            if ia is not None and ia[x] != x:
                xp, yp = ia[x], ib[y]
                if fits(xp, yp):
                    if f[xp] == -1:
                        k += assign(xp, yp)
                else:
                    ok = False
            elif ia is not None and ib[y] != y:
                ok = False
            if ok and solve(pos + 1):
                return True
            undo(k)
        return False

    if not solve(0):
        return None
    props = ["order_preserving", "order_reflecting", "isomorphism"]
    if respect_involution:
        props.append("involution_preserving")
    m = establish(PosetMap(A, B, tuple(f)), *props)
    missing = set(props) - m.verified
    assert not missing, f"isomorphism search produced an invalid map: {missing}"
    return m


def is_isomorphic(A: PosetLike, B: PosetLike, respect_involution: bool = False) -> bool:
    return find_isomorphism(A, B, respect_involution) is not None


class IsoClasses:
    """Isomorph rejection: remembers one representative per isomorphism class."""

    def __init__(self, respect_involution: bool = False):
        self.respect_involution = respect_involution
        self.buckets: dict[tuple, list] = {}

    def add(self, X: PosetLike) -> bool:
        """Record X; return False if an isomorphic object was already seen."""
        key = poset_invariant(X, self.respect_involution)
        reps = self.buckets.setdefault(key, [])
        for R in reps:
            if find_isomorphism(R, X, self.respect_involution) is not None:
                return False
        reps.append(X)
        return True

    def __len__(self):
        return sum(len(v) for v in self.buckets.values())

    def representatives(self):
        for reps in self.buckets.values():
            yield from reps


def all_nonempty_subsets(n: int):
    for r in range(1, n + 1):
        for c in combinations(range(n), r):
            yield sum(1 << i for i in c)
