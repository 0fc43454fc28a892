import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import involutive_posets, posets
from kleeneposet import fixtures as fx
from kleeneposet.constructions import embed_at_point, ps_construct, th3_embedding
from kleeneposet.enumeration import all_posets
from kleeneposet.errors import NotOrderPreserving
from kleeneposet.involution import InvolutivePoset
from kleeneposet.morphisms import (
    PosetMap,
    antichains,
    establish,
    find_isomorphism,
    is_isomorphic,
    is_lulu_embedding,
    is_lulu_isomorphism,
    is_lulu_morphism,
    is_order_preserving,
    make_map,
)
from kleeneposet.poset import antichain, build_poset, chain, dual
from oracles import Rel, isomorphic, lulu


def fence(n):
    labels = [f"f{i}" for i in range(n)]
    gens = [(labels[i], labels[i + 1]) if i % 2 == 0 else (labels[i + 1], labels[i]) for i in range(n - 1)]
    return build_poset(labels, gens)


def check_against_oracle(f: PosetMap):
    src, tgt = Rel.of(f.source), Rel.of(f.target)
    expected = lulu(src, tgt, f.as_dict())
    assert is_lulu_morphism(f) == expected
    assert is_lulu_morphism(f, full=True) == expected


@st.composite
def monotone_maps(draw, max_size=6):
    """Order-preserving maps: inclusions of subposets, maps onto chains, or filtered random maps."""
    P = draw(posets(max_size=max_size))
    kind = draw(st.sampled_from(["inclusion", "chain", "random"]))
    if kind == "inclusion":
        keep = draw(st.lists(st.sampled_from(P.labels), min_size=1, unique=True))
        S = P.induced(P.mask(keep))
        return make_map(S, P, {x: x for x in S.labels})
    if kind == "chain":
        # rank by the size of the down-set: strictly monotone into a chain
        size = {x: sum(P.le(y, x) for y in P.labels) for x in P.labels}
        C = chain(len(P) + 1)
        return make_map(P, C, {x: str(size[x]) for x in P.labels})
    T = draw(posets(max_size=4)).relabel(lambda x: "t" + x)
    f = make_map(P, T, {x: draw(st.sampled_from(T.labels)) for x in P.labels})
    assume(is_order_preserving(f))
    return f


class TestLulu:
    def test_embed_at_point(self, bowtie):
        f = embed_at_point(bowtie.poset, "b")
        assert is_lulu_morphism(f) and is_lulu_embedding(f)

    def test_identity_and_isomorphisms(self, bowtie):
        P = bowtie.poset
        assert is_lulu_morphism(make_map(P, P, {x: x for x in P.labels}))
        f = find_isomorphism(P, dual(P))
        assert f is not None and is_lulu_morphism(f) and is_lulu_isomorphism(f)

    def test_antichain_into_diamond(self):
        # UL{x,y} is the whole 2-antichain, and in the diamond L{x,y} is the new bottom only
        X = antichain(2)
        D = fx.diamond("b", "0", "1", "t")
        f = make_map(X, D, {"0": "0", "1": "1"})
        check_against_oracle(f)
        assert is_lulu_morphism(f)

    def test_constant_map_is_not_embedding(self):
        f = make_map(chain(2), chain(2), {"0": "0", "1": "0"})
        assert not is_lulu_embedding(f)

    def test_th3_map_is_embedding(self):
        B = fx.involutive(["a", "u", "v", "b"], [("a", "u"), ("a", "v"), ("u", "b"), ("v", "b")],
                          [("a", "b"), ("u", "v")])
        from kleeneposet.constructions import ordinal_sum3
        A = ordinal_sum3(fx.chain_poset(["x", "a"]), "a", B.poset, "b", fx.chain_poset(["b", "z"]))
        cert = th3_embedding(A, "a", "b", B.mapping())
        assert is_lulu_embedding(cert.embedding, full=True)

    def test_requires_order_preserving(self):
        f = make_map(chain(2), chain(2), {"0": "1", "1": "0"})
        with pytest.raises(NotOrderPreserving):
            is_lulu_morphism(f)
        assert not is_lulu_embedding(f)

    def test_non_lulu_example(self):
        # folding two points of a 3-antichain together: L(f{0,1}) = {0}, but UL{0,1} is everything
        f = make_map(antichain(3), antichain(2), {"0": "0", "1": "0", "2": "1"})
        check_against_oracle(f)
        assert not is_lulu_morphism(f)

    @given(monotone_maps())
    def test_antichain_reduction_matches_oracle(self, f):
        check_against_oracle(f)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_inclusions_exhaustive(self, n):
        """Every induced-subposet inclusion for posets up to size 5."""
        for P in all_posets(n):
            src = Rel.of(P)
            for mask in range(1, 1 << n):
                S = P.induced(mask)
                f = make_map(S, P, {x: x for x in S.labels})
                assert is_lulu_morphism(f) == lulu(Rel.of(S), src, f.as_dict())

    def test_antichain_enumeration(self, bowtie):
        P = bowtie.poset
        found = {frozenset(P.names(m)) for m in antichains(P)}
        assert found == {frozenset(s) for s in [{"0"}, {"1"}, {"a"}, {"b"}, {"c"}, {"d"},
                                                 {"a", "b"}, {"c", "d"}]}
        assert 0 in set(antichains(P, nonempty=False))


class TestEstablish:
    def test_flags_only_what_holds(self):
        f = establish(make_map(chain(2), chain(2), {"0": "0", "1": "0"}))
        assert f.verified == {"order_preserving", "lulu_morphism"}

    def test_unknown_property(self):
        with pytest.raises(ValueError):
            establish(make_map(chain(1), chain(1), {"0": "0"}), "monotone")

    def test_k1_mapping(self):
        f = establish(make_map(fx.k1(), ps_construct(fx.l1(), fx.S1), fx.K1_TO_PS_MAP))
        assert f.verified == {"order_preserving", "order_reflecting", "lulu_morphism",
                              "lulu_embedding", "involution_preserving", "isomorphism"}


class TestIsomorphism:
    def test_k1_against_construction(self):
        K = ps_construct(fx.l1(), fx.S1)
        f = find_isomorphism(fx.k1(), K, respect_involution=True)
        assert f is not None and "involution_preserving" in f.verified
        assert f.as_dict() == fx.K1_TO_PS_MAP

    def test_diamond_self_dual(self):
        D = fx.diamond()
        assert is_isomorphic(D, dual(D))

    def test_chain_vs_fence(self):
        assert find_isomorphism(chain(5), fence(5)) is None

    def test_identity_witness(self, bowtie):
        f = find_isomorphism(bowtie, bowtie, respect_involution=True)
        assert f.assignment == tuple(range(len(bowtie)))

    def test_involution_matters(self):
        P = antichain(2)
        swap = InvolutivePoset(P, (1, 0))
        fixed = InvolutivePoset(P, (0, 1))
        assert is_isomorphic(swap, fixed)
        assert not is_isomorphic(swap, fixed, respect_involution=True)
        with pytest.raises(TypeError):
            find_isomorphism(P, swap, respect_involution=True)

    @given(posets(max_size=6), st.permutations(range(6)))
    def test_finds_relabelled_copy(self, P, perm):
        order = [i for i in perm if i < len(P)]
        Q = P.permuted(order).relabel(lambda x: "q" + x)
        f = find_isomorphism(P, Q)
        assert f is not None and "isomorphism" in f.verified

    @given(posets(max_size=5), posets(max_size=5))
    def test_symmetric_and_matches_oracle(self, P, Q):
        Q = Q.relabel(lambda x: "q" + x)
        forward = is_isomorphic(P, Q)
        assert forward == is_isomorphic(Q, P) == isomorphic(Rel.of(P), Rel.of(Q))

    @given(involutive_posets(max_size=5), involutive_posets(max_size=5))
    def test_involutive_matches_oracle(self, K, M):
        expected = isomorphic(Rel.of(K), Rel.of(M), K.mapping(), M.mapping())
        assert is_isomorphic(K, M, respect_involution=True) == expected
