"""Twist products, P_S(A), ordinal sums, direct products and the embeddings into P_S(A)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .config import check_size
from .errors import (
    DuplicateLabel,
    EmptySubset,
    GapConditionFailed,
    HypothesisFailed,
    NoUniqueBottom,
    NoUniqueTop,
    NotChain,
    NotDistributive,
    NotOrtho,
    PreconditionFailed,
    VerificationFailed,
)
from .involution import (
    InvolutivePoset,
    attach_involution,
    classify,
    is_orthocomplementation,
    normality_holds,
)
from .morphisms import PosetMap, establish, find_isomorphism, make_map
from .poset import (
    ElementSubset,
    FinitePoset,
    SubsetLike,
    bits,
    convex_hull_mask,
    dual,
    interval,
    is_boolean_poset,
    is_distributive,
    is_frink_filter,
    is_frink_ideal,
    is_join_irreducible,
    is_meet_irreducible,
    popcount,
)


def pair_label(*parts: str) -> str:
    return "(" + ",".join(parts) + ")"


def _twist_subposet(A: FinitePoset, pairs: Sequence[tuple[int, int]]) -> FinitePoset:
    """Induced subposet of the twist product on the given index pairs."""
    pos = {p: k for k, p in enumerate(pairs)}
    down = []
    for z, u in pairs:
        m = 0
        for x in bits(A.down[z]):
            for y in bits(A.up[u]):
                k = pos.get((x, y))
                if k is not None:
                    m |= 1 << k
        down.append(m)
    labels = tuple(pair_label(A.labels[x], A.labels[y]) for x, y in pairs)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("pair labels collide; relabel the base poset")
    return FinitePoset(labels, tuple(down))


def twist_product(A: FinitePoset, cap: int | None = None) -> FinitePoset:
    """A x A with (x,y) <= (z,u) iff x <= z and u <= y."""
    n = len(A)
    check_size(n * n, "twist product", cap)
    return _twist_subposet(A, [(x, y) for x in range(n) for y in range(n)])


def ps_pairs(A: FinitePoset, s_mask: int) -> list[tuple[int, int]]:
    """Index pairs (x, y) with L(x,y) <= S <= U(x,y)."""
    ls, us = A.lower(s_mask), A.upper(s_mask)
    n = len(A)
    out = []
    for x in range(n):
        dx, ux = A.down[x], A.up[x]
        for y in range(n):
            if (dx & A.down[y]) & ~ls == 0 and (ux & A.up[y]) & ~us == 0:
                out.append((x, y))
    return out


def ps_from_pairs(A: FinitePoset, pairs: Sequence[tuple[int, int]]) -> InvolutivePoset:
    P = _twist_subposet(A, pairs)
    pos = {p: k for k, p in enumerate(pairs)}
    return InvolutivePoset(P, tuple(pos[(y, x)] for x, y in pairs))


def ps_construct(A: FinitePoset, S: SubsetLike, check: bool = True,
                 cap: int | None = None) -> InvolutivePoset:
    """P_S(A) with the swap involution (x,y)' = (y,x)."""
    sm = A.mask(S)
    if not sm:
        raise EmptySubset("P_S(A) needs a non-empty S")
    pairs = ps_pairs(A, sm)
    check_size(len(pairs), "P_S(A)", cap)
    K = ps_from_pairs(A, pairs)
    if check and not normality_holds(K):
        raise VerificationFailed("P_S(A) violates the normality condition")
    return K


@dataclass(frozen=True)
class PSReductions:
    original: ElementSubset
    max_min: ElementSubset
    convex: ElementSubset
    bounds: ElementSubset | None
    carrier: frozenset[tuple[str, str]]


def ps_reductions(A: FinitePoset, S: SubsetLike) -> PSReductions:
    """Equivalent smaller/canonical choices of S, each checked to give the same P_S(A)."""
    sm = A.mask(S)
    if not sm:
        raise EmptySubset("reductions need a non-empty S")
    mm = A.maximal(sm) | A.minimal(sm)
    co = convex_hull_mask(A, sm)
    meet, join = A.inf(sm), A.sup(sm)
    bnd = None if meet is None or join is None else (1 << meet) | (1 << join)
    ref = ps_pairs(A, sm)
    for name, m in (("max/min", mm), ("convex hull", co), ("bounds", bnd)):
        if m is not None and ps_pairs(A, m) != ref:
            raise VerificationFailed(f"{name} reduction changes P_S(A)")
    lab = A.labels
    return PSReductions(
        original=ElementSubset(A, sm),
        max_min=ElementSubset(A, mm),
        convex=ElementSubset(A, co),
        bounds=None if bnd is None else ElementSubset(A, bnd),
        carrier=frozenset((lab[x], lab[y]) for x, y in ref),
    )


def embed_at_point(A: FinitePoset, a: str) -> PosetMap:
    """x -> (x, a) into P_a(A); checked convex, order-isomorphic onto its image, LULU."""
    i = A.idx(a)
    K = ps_construct(A, [a])
    f = PosetMap(A, K, tuple(K.poset.idx(pair_label(x, a)) for x in A.labels))
    if not K.poset.convex(f.image(A.full)):
        raise VerificationFailed("image of x -> (x,a) is not convex")
    f = establish(f, "order_preserving", "order_reflecting", "lulu_morphism", "lulu_embedding")
    if "lulu_embedding" not in f.verified:
        raise VerificationFailed(f"x -> (x,{A.labels[i]}) is not a LULU-embedding")
    return f


# -- ordinal sums and products ---------------------------------------------------


def ordinal_sum2(A1: FinitePoset, a: str, A2: FinitePoset) -> FinitePoset:
    """Glue the top ``a`` of A1 to the bottom of A2 (the glued point keeps label ``a``)."""
    if A1.top is None or A1.labels[A1.top] != a:
        raise NoUniqueTop(f"{a!r} is not the greatest element of the lower summand")
    if A2.bottom is None:
        raise NoUniqueBottom("upper summand has no least element")
    n1 = len(A1)
    rest = [j for j in range(len(A2)) if j != A2.bottom]
    labels = A1.labels + tuple(A2.labels[j] for j in rest)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("summands share labels besides the glued point")
    pos = {A2.bottom: A1.top}
    pos.update({j: n1 + k for k, j in enumerate(rest)})
    down = list(A1.down)
    for j in rest:
        m = A1.full
        for i in bits(A2.down[j]):
            m |= 1 << pos[i]
        down.append(m)
    return FinitePoset(labels, tuple(down))


def ordinal_sum3(A1: FinitePoset, a: str, A2: FinitePoset, b: str, A3: FinitePoset) -> FinitePoset:
    if A2.top is None or A2.labels[A2.top] != b:
        raise NoUniqueTop(f"{b!r} is not the greatest element of the middle summand")
    return ordinal_sum2(ordinal_sum2(A1, a, A2), b, A3)


def direct_product(posets: Sequence[FinitePoset], cap: int | None = None) -> FinitePoset:
    """Componentwise order; labels are ``(x,y,...)``."""
    if not posets:
        raise ValueError("direct product of an empty list")
    sizes = [len(P) for P in posets]
    total = 1
    for s in sizes:
        total *= s
    check_size(total, "direct product", cap)
    if len(posets) == 1:
        return posets[0]
    radix = []
    r = 1
    for s in reversed(sizes):
        radix.append(r)
        r *= s
    radix.reverse()
    tuples = list(product(*(range(s) for s in sizes)))
    down = []
    for t in tuples:
        m = 0
        for s in product(*(list(bits(P.down[c])) for P, c in zip(posets, t))):
            m |= 1 << sum(c * w for c, w in zip(s, radix))
        down.append(m)
    labels = tuple(pair_label(*(P.labels[c] for P, c in zip(posets, t))) for t in tuples)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("product labels collide")
    return FinitePoset(labels, tuple(down))


def product_involution(Ks: Sequence[InvolutivePoset]) -> InvolutivePoset:
    """Direct product of involutive posets with the componentwise involution."""
    P = direct_product([K.poset for K in Ks])
    tuples = list(product(*(range(len(K)) for K in Ks)))
    pos = {t: k for k, t in enumerate(tuples)}
    inv = tuple(pos[tuple(K.inv[c] for K, c in zip(Ks, t))] for t in tuples)
    return InvolutivePoset(P, inv)


# -- embeddings -----------------------------------------------------------------


@dataclass(frozen=True)
class Th3Certificate:
    ideal_I: ElementSubset
    filter_F: ElementSubset
    embedding: PosetMap
    interval_boolean: bool


def th3_embedding(A: FinitePoset, a: str, b: str, ortho: Mapping[str, str]) -> Th3Certificate:
    """LULU-embed a distributive A into P_{a,b}(A) using an orthocomplementation on [a,b]."""
    if not is_distributive(A):
        raise NotDistributive("base poset is not distributive")
    ia, ib = A.idx(a), A.idx(b)
    iv = interval(A, a, b)
    K = attach_involution(iv, {x: ortho[x] for x in iv.labels})
    if not is_orthocomplementation(K):
        raise NotOrtho("given involution is not an orthocomplementation of [a,b]")
    la, lb = A.down[ia], A.down[ib]
    for x in range(len(A)):
        m = A.lower(A.upper((1 << x) | (1 << ia)) | (1 << ib))
        strictly_between = (la & ~m == 0 and m != la) and (m & ~lb == 0 and m != lb)
        if strictly_between and m != A.down[x]:
            raise HypothesisFailed(
                f"L(U({A.labels[x]},{a}),{b}) lies strictly between L({a}) and L({b}) "
                f"but differs from L({A.labels[x]})", element=A.labels[x])
    ua, ub = A.up[ia], A.up[ib]
    I = sum(1 << x for x in range(len(A)) if (A.down[x] & lb) & ~la == 0)
    F = sum(1 << x for x in range(len(A)) if (A.up[x] & ua) & ~ub == 0)
    if not is_frink_ideal(A, ElementSubset(A, I), method="closure"):
        raise VerificationFailed("I is not a Frink ideal")
    if not is_frink_filter(A, ElementSubset(A, F), method="closure"):
        raise VerificationFailed("F is not a Frink filter")
    target = ps_construct(A, [a, b])
    T = target.poset
    assign = []
    for x, lab in enumerate(A.labels):
        if I >> x & 1:
            other = b
        elif F >> x & 1:
            other = a
        elif lab in iv.index:
            other = ortho[lab]
        else:
            raise VerificationFailed(f"{lab!r} lies outside I, F and [a,b]")
        key = pair_label(lab, other)
        if key not in T.index:
            raise VerificationFailed(f"f({lab}) = {key} is not in P_(a,b)(A)")
        assign.append(T.index[key])
    f = establish(PosetMap(A, target, tuple(assign)),
                  "order_preserving", "order_reflecting", "lulu_morphism", "lulu_embedding")
    if "lulu_embedding" not in f.verified:
        raise VerificationFailed("piecewise map is not a LULU-embedding")
    return Th3Certificate(ElementSubset(A, I), ElementSubset(A, F), f, is_boolean_poset(iv))


@dataclass(frozen=True)
class Prop2Result:
    base: FinitePoset
    lhs: InvolutivePoset
    rhs: InvolutivePoset
    isomorphism: PosetMap
    independent_witness: bool
    facts: dict
    kleene: bool


def _require(cond: bool, clause: str):
    if not cond:
        raise PreconditionFailed(f"precondition failed: {clause}", clause=clause)


def prop2_decompose(A1: FinitePoset, B: InvolutivePoset, A2: FinitePoset, a: str, b: str) -> Prop2Result:
    """P_{a,b}(A1 +_a B +_b A2) against (A1 x A2^d) +_(a,b) B +_(b,a) (A2 x A1^d)."""
    _require(is_distributive(A1), "A1 distributive")
    _require(A1.top is not None and A1.labels[A1.top] == a, "A1 has top a")
    _require(is_distributive(A2), "A2 distributive")
    _require(A2.bottom is not None and A2.labels[A2.bottom] == b, "A2 has bottom b")
    PB = B.poset
    _require(is_boolean_poset(PB), "B Boolean")
    _require(PB.bottom is not None and PB.labels[PB.bottom] == a, "B has bottom a")
    _require(PB.top is not None and PB.labels[PB.top] == b, "B has top b")
    _require(is_orthocomplementation(B), "B involution is its complementation")
    _require(a != b or (is_join_irreducible(A1, a) and is_meet_irreducible(A2, a)),
             "a != b or a join-irreducible in A1 and meet-irreducible in A2")

    A = ordinal_sum3(A1, a, PB, b, A2)
    lhs = ps_construct(A, {a, b})
    in_pairs = {(A.labels[x], A.labels[y]) for x, y in ps_pairs(A, A.mask({a, b}))}
    set1, set2, setB = set(A1.labels), set(A2.labels), set(PB.labels)
    prime = B.mapping()
    ia, ib = A.idx(a), A.idx(b)

    inner = setB - {a, b}
    fact1 = True
    for x in inner:
        ok = [y for y in A.labels
              if A.lower(A.mask({x, y})) & ~A.down[ia] == 0
              and A.upper(A.mask({x, y})) & ~A.up[ib] == 0]
        fact1 &= ok == [prime[x]]
    # at the glue point a = b the two summands share an element, so these
    # two facts are only meaningful away from B
    fact2 = all(y in set2 for x, y in in_pairs if x in set1 - setB)
    fact3 = all(y in set1 for x, y in in_pairs if x in set2 - setB)
    expected = ({(x, y) for x in A1.labels for y in A2.labels}
                | {(x, prime[x]) for x in PB.labels}
                | {(x, y) for x in A2.labels for y in A1.labels})
    fact4 = expected <= in_pairs
    facts = {"inner_pairs": fact1, "A1_pairs_with_A2": fact2,
             "A2_pairs_with_A1": fact3, "listed_pairs_present": fact4,
             "carrier_equal": expected == in_pairs}
    if not all(facts.values()):
        raise VerificationFailed(f"membership facts failed: {facts}")

    Q1 = direct_product([A1, dual(A2)])
    Q2 = direct_product([A2, dual(A1)])
    QB = PB.relabel(lambda x: pair_label(x, prime[x]))
    R = ordinal_sum3(Q1, pair_label(a, b), QB, pair_label(b, a), Q2)
    swap = {}
    for x in A1.labels:
        for y in A2.labels:
            swap[pair_label(x, y)] = pair_label(y, x)
            swap[pair_label(y, x)] = pair_label(x, y)
    for x in PB.labels:
        swap[pair_label(x, prime[x])] = pair_label(prime[x], x)
    rhs = attach_involution(R, swap)

    iso = establish(make_map(lhs, rhs, {lab: lab for lab in lhs.labels}),
                    "order_preserving", "order_reflecting", "isomorphism", "involution_preserving")
    if not {"isomorphism", "involution_preserving"} <= iso.verified:
        raise VerificationFailed("coordinate identification is not an involution isomorphism")
    independent = find_isomorphism(lhs, rhs, respect_involution=True) is not None
    return Prop2Result(A, lhs, rhs, iso, independent, facts, classify(lhs).kleene)


@dataclass(frozen=True)
class ChainRepresentation:
    base: FinitePoset
    S: ElementSubset
    isomorphism: PosetMap


def chain_center(C: InvolutivePoset) -> str:
    """The element a with a <= a' and nothing strictly between a and a'."""
    P = C.poset
    if not P.is_chain():
        raise NotChain("poset is not a chain")
    for i in range(len(P)):
        j = C.inv[i]
        if P.leq(i, j) and (P.up[i] & P.down[j]) & ~((1 << i) | (1 << j)) == 0:
            return P.labels[i]
    raise GapConditionFailed("no element a with [a, a'] = {a, a'}")


def chain_representation(C: InvolutivePoset, a: str) -> ChainRepresentation:
    """C ~= P_{a,a'}([a,1]) for a chain with involution."""
    P = C.poset
    if not P.is_chain():
        raise NotChain("poset is not a chain")
    i = P.idx(a)
    j = C.inv[i]
    if not P.leq(i, j):
        raise GapConditionFailed(f"{a} is not below {a}'")
    if (P.up[i] & P.down[j]) & ~((1 << i) | (1 << j)):
        raise GapConditionFailed(f"[{a}, {a}'] contains other elements")
    base = interval(P, a, P.labels[P.top])
    S = base.subset({a, P.labels[j]})
    target = ps_construct(base, S)
    mapping = {}
    for x in P.labels:
        if P.le(x, a):
            mapping[x] = pair_label(a, C.prime(x))
        else:
            mapping[x] = pair_label(x, a)
    g = establish(make_map(C, target, mapping),
                  "order_preserving", "order_reflecting", "isomorphism", "involution_preserving")
    if not {"isomorphism", "involution_preserving"} <= g.verified:
        raise VerificationFailed("chain map is not an involution isomorphism")
    return ChainRepresentation(base, S, g)


def point_conditions(A: FinitePoset, a: str) -> dict[str, bool]:
    i = A.idx(a)
    return {
        "comparable_with_all": (A.down[i] | A.up[i]) == A.full,
        "join_irreducible": is_join_irreducible(A, a),
        "meet_irreducible": is_meet_irreducible(A, a),
    }


__all__ = [
    "ChainRepresentation", "PSReductions", "Prop2Result", "Th3Certificate",
    "chain_center", "chain_representation", "direct_product", "embed_at_point",
    "point_conditions", "ordinal_sum2", "ordinal_sum3", "pair_label", "product_involution",
    "prop2_decompose", "ps_construct", "ps_from_pairs", "ps_pairs", "ps_reductions",
    "th3_embedding", "twist_product", "popcount",
]
