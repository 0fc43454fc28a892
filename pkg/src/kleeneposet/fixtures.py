"""Small named posets used throughout the tests, scripts and data files."""

from __future__ import annotations

from .constructions import direct_product, ordinal_sum2, ordinal_sum3, pair_label, product_involution
from .errors import BadLength
from .involution import InvolutivePoset, attach_involution
from .poset import FinitePoset, build_poset, chain


def involutive(elements, le, pairs) -> InvolutivePoset:
    P = build_poset(elements, le)
    inv = {}
    for x, y in pairs:
        inv[x], inv[y] = y, x
    return attach_involution(P, inv)


def chain_poset(labels) -> FinitePoset:
    labels = list(labels)
    return build_poset(labels, list(zip(labels, labels[1:])))


def diamond(bottom="0", left="a", right="b", top="1") -> FinitePoset:
    return build_poset([bottom, left, right, top],
                       [(bottom, left), (bottom, right), (left, top), (right, top)])


def bowtie() -> InvolutivePoset:
    """0 < a,b < c,d < 1 with a' = d, b' = c."""
    le = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
          ("c", "1"), ("d", "1")]
    return involutive(["0", "a", "b", "c", "d", "1"], le, [("0", "1"), ("a", "d"), ("b", "c")])


def vee_tail() -> FinitePoset:
    return build_poset(["c", "d", "b", "1"], [("c", "b"), ("d", "b"), ("b", "1")])


def k1() -> InvolutivePoset:
    le = [("0", "y"), ("y", "x"), ("y", "x'"), ("x", "y'"), ("x'", "y'"), ("y'", "1")]
    return involutive(["0", "y", "x", "x'", "y'", "1"], le,
                      [("0", "1"), ("y", "y'"), ("x", "x'")])


def l1() -> FinitePoset:
    return build_poset(["b", "a", "a'", "b'", "1"],
                       [("b", "a"), ("b", "a'"), ("a", "b'"), ("a'", "b'"), ("b'", "1")])


S1 = ("a", "a'", "b", "b'")

K1_TO_PS_MAP = {"1": "(1,b)", "y'": "(b',b)", "x": "(a,a')", "x'": "(a',a)",
                "0": "(b,1)", "y": "(b,b')"}


def k2() -> InvolutivePoset:
    return involutive(["0", "1"], [("0", "1")], [("0", "1")])


def l2() -> FinitePoset:
    return chain(2)


S2 = ("0", "1")

K2_MAP = {"1": "(1,0)", "0": "(0,1)"}


def k_product() -> InvolutivePoset:
    return product_involution([k1(), k2()])


def l_product() -> FinitePoset:
    return direct_product([l1(), l2()])


def s_product() -> tuple[str, ...]:
    return tuple(pair_label(s, t) for s in S1 for t in S2)


def k_s() -> InvolutivePoset:
    """K1 x K2 without (1,0) and (0,1)."""
    K = k_product()
    P = K.poset
    keep = P.full & ~P.mask(["(1,0)", "(0,1)"])
    return _restrict(K, keep)


def l_s() -> FinitePoset:
    L = l_product()
    return L.induced(L.full & ~L.mask(["(1,0)"]))


def k_0() -> InvolutivePoset:
    K = k_product()
    keep = K.poset.mask(["(0,0)", "(y,0)", "(x,0)", "(x',1)", "(y',1)", "(1,1)"])
    return _restrict(K, keep)


def l_0() -> FinitePoset:
    L = l_product()
    return L.induced(L.mask(["(b,0)", "(a,0)", "(a',1)", "(b',1)", "(1,1)"]))


S0 = ("(b,0)", "(a,0)", "(a',1)", "(b',1)")


def _restrict(K: InvolutivePoset, keep: int) -> InvolutivePoset:
    P = K.poset
    sub = P.induced(keep)
    return attach_involution(sub, {x: K.prime(x) for x in sub.labels})


def glued_diamonds(n: int) -> InvolutivePoset:
    """C +_b B +_c B +_d C with n-chains C and four-element Boolean B; c is the fixed point."""
    if n < 2:
        raise BadLength("the chain needs at least 2 elements")
    low = chain_poset([f"l{i}" for i in range(n - 1)] + ["b"])
    high = chain_poset(["d"] + [f"h{i}" for i in reversed(range(n - 1))])
    B1 = diamond("b", "u", "v", "c")
    B2 = diamond("c", "u'", "v'", "d")
    P = ordinal_sum2(ordinal_sum3(low, "b", B1, "c", B2), "d", high)
    pairs = [(f"l{i}", f"h{i}") for i in range(n - 1)]
    pairs += [("b", "d"), ("u", "u'"), ("v", "v'"), ("c", "c")]
    inv = {}
    for x, y in pairs:
        inv[x], inv[y] = y, x
    return attach_involution(P, inv)
