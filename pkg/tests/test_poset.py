from itertools import combinations

import pytest
from hypothesis import given

from conftest import poset_and_subset, posets
from kleeneposet import fixtures as fx
from kleeneposet.enumeration import all_posets
from kleeneposet.errors import (
    AntisymmetryViolation,
    DuplicateLabel,
    EmptySubset,
    NotComparable,
    SizeLimit,
    UnknownElement,
)
from kleeneposet.poset import (
    build_poset,
    chain,
    complements_of,
    convex_hull,
    dual,
    interval,
    is_boolean_poset,
    is_complemented,
    is_convex,
    is_distributive,
    is_frink_filter,
    is_frink_ideal,
    is_join_irreducible,
    is_meet_irreducible,
    l_set,
    lu_identities,
    max_of,
    min_of,
    nary_distributive_check,
    u_set,
)
from oracles import Rel, convex, distributive, frink_ideal


def four_chain():
    return fx.chain_poset(["0", "p", "q", "1"])


class TestBuild:
    def test_singleton(self):
        P = build_poset(["x"])
        assert P.le("x", "x") and len(P) == 1

    def test_bowtie_closure(self, bowtie):
        P = bowtie.poset
        assert P.le("0", "1") and P.le("a", "d") and not P.le("a", "b")
        assert sum(P.le(x, y) for x in P.labels for y in P.labels) == 6 + 5 + 3 + 3 + 1 + 1

    def test_two_cycle(self):
        with pytest.raises(AntisymmetryViolation):
            build_poset(["p", "q"], [("p", "q"), ("q", "p")])

    def test_duplicate_and_unknown(self):
        with pytest.raises(DuplicateLabel):
            build_poset(["p", "p"])
        with pytest.raises(UnknownElement):
            build_poset(["p"], [("p", "z")])

    @given(posets())
    def test_relation_is_partial_order(self, P):
        r = Rel.of(P)
        assert all((x, x) in r.le for x in r.labels)
        assert all(x == y for x, y in r.le if (y, x) in r.le)
        assert all((x, z) in r.le for x, y in r.le for y2, z in r.le if y == y2)


class TestBounds:
    def test_lower_examples(self, bowtie, vee):
        P = bowtie.poset
        assert l_set(P, {"c", "d"}) == {"0", "a", "b"}
        assert l_set(P, set()) == set(P.labels)
        assert l_set(vee, {"c", "d"}) == set()

    def test_upper_examples(self, bowtie, vee):
        P = bowtie.poset
        assert u_set(P, {"a", "b"}) == {"c", "d", "1"}
        assert u_set(P, set()) == set(P.labels)
        assert u_set(vee, {"c", "d"}) == {"b", "1"}

    def test_max_min(self, bowtie):
        P = bowtie.poset
        assert max_of(P, {"0", "a", "b"}) == {"a", "b"}
        assert min_of(P, set()) == set()
        C = four_chain()
        assert max_of(C, C.labels) == {"1"}

    @given(poset_and_subset())
    def test_bounds_match_oracle(self, PS):
        P, B = PS
        r = Rel.of(P)
        assert l_set(P, B).labels == r.L(B)
        assert u_set(P, B).labels == r.U(B)

    @given(poset_and_subset())
    def test_bounds_depend_on_extremal_elements(self, PS):
        # lower bounds are decided by the minimal elements, upper bounds by the maximal ones
        P, B = PS
        assert l_set(P, B) == l_set(P, min_of(P, B))
        assert u_set(P, B) == u_set(P, max_of(P, B))

    def test_lower_bounds_not_decided_by_maximal_elements(self):
        # counterexample to the variant L(B) = L(Max B)
        P = fx.chain_poset(["0", "1"])
        assert l_set(P, {"0", "1"}) == {"0"}
        assert l_set(P, max_of(P, {"0", "1"})) == {"0", "1"}

    @given(poset_and_subset())
    def test_galois_laws(self, PS):
        P, B = PS
        L, U = (lambda X: l_set(P, X)), (lambda X: u_set(P, X))
        assert L(U(L(B))) == L(B)
        assert U(L(U(B))) == U(B)


class TestConvex:
    def test_hull_examples(self, bowtie):
        P = bowtie.poset
        # L{a,b} = {0}, so UL{a,b} is everything and the hull picks up 0
        r = Rel.of(P)
        assert r.L(r.U({"a", "b"})) & r.U(r.L({"a", "b"})) == {"0", "a", "b"}
        assert convex_hull(P, {"a", "b"}) == {"0", "a", "b"}
        assert convex_hull(P, {"0", "1"}) == set(P.labels)
        assert convex_hull(four_chain(), {"0", "q"}) == {"0", "p", "q"}
        with pytest.raises(EmptySubset):
            convex_hull(P, set())

    def test_is_convex_examples(self, bowtie):
        assert is_convex(bowtie.poset, {"a", "c"})
        assert not is_convex(four_chain(), {"0", "q"})
        assert is_convex(bowtie.poset, set())

    @given(poset_and_subset())
    def test_hull_properties(self, PS):
        P, S = PS
        co = convex_hull(P, S)
        assert S <= co.labels
        assert convex_hull(P, co) == co
        assert is_convex(P, co) and convex(Rel.of(P), co.labels)
        assert l_set(P, co) == l_set(P, S) and u_set(P, co) == u_set(P, S)

    @given(poset_and_subset())
    def test_is_convex_matches_oracle(self, PS):
        P, B = PS
        assert is_convex(P, B) == convex(Rel.of(P), B)


class TestFrink:
    def test_bowtie_lower_half_is_an_ideal(self, bowtie):
        P = bowtie.poset
        assert frink_ideal(Rel.of(P), {"0", "a", "b"})
        assert is_frink_ideal(P, {"0", "a", "b"})

    def test_empty_set_without_bottom(self, vee):
        assert is_frink_ideal(vee, set())

    def test_principal_ideals(self, bowtie):
        P = bowtie.poset
        for x in P.labels:
            assert is_frink_ideal(P, l_set(P, {x}))
            assert is_frink_filter(P, u_set(P, {x}))

    def test_enumeration_limit(self):
        P = build_poset([f"x{i}" for i in range(21)])
        with pytest.raises(SizeLimit):
            is_frink_ideal(P, P.labels)
        assert is_frink_ideal(P, P.labels, method="closure")

    @given(poset_and_subset(max_size=6))
    def test_methods_agree_with_oracle(self, PS):
        P, I = PS
        expected = frink_ideal(Rel.of(P), I)
        assert is_frink_ideal(P, I) == expected
        assert is_frink_ideal(P, I, method="closure") == expected
        assert is_frink_filter(P, I) == is_frink_ideal(dual(P), I)


class TestDistributive:
    def test_examples(self, bowtie, vee, m3, n5):
        assert is_distributive(bowtie.poset)
        assert is_distributive(vee)
        assert not is_distributive(m3)
        assert not is_distributive(n5)

    def test_nary(self, bowtie, m3):
        assert nary_distributive_check(bowtie.poset, 3)
        assert nary_distributive_check(build_poset(["x"]), 4)
        assert not nary_distributive_check(m3, 2)
        with pytest.raises(ValueError):
            nary_distributive_check(m3, 1)

    @given(posets(max_size=6))
    def test_matches_oracle(self, P):
        assert is_distributive(P) == distributive(Rel.of(P))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_identities_equivalent_exhaustive(self, n):
        for P in all_posets(n):
            d = is_distributive(P)
            ids = lu_identities(P, arity=3)
            assert all(v == d for v in ids.values()), (P, ids)

    def test_distributive_lattices_pass(self):
        two = chain(2)
        from kleeneposet.constructions import direct_product
        cube = direct_product([two, two, two])
        assert is_distributive(cube)
        assert is_distributive(direct_product([chain(3), two]))


class TestIrreducibleAndComplements:
    def test_irreducible(self, bowtie):
        P = bowtie.poset
        assert is_join_irreducible(P, "a")
        assert not is_join_irreducible(P, "1")
        assert not is_meet_irreducible(P, "0")
        C = four_chain()
        assert all(is_join_irreducible(C, x) and is_meet_irreducible(C, x) for x in C.labels)
        with pytest.raises(UnknownElement):
            is_join_irreducible(P, "zz")

    def test_complements(self, bowtie):
        D = fx.diamond("b", "u", "v", "c")
        assert complements_of(D, "u") == {"v"}
        assert is_boolean_poset(D)
        assert not is_boolean_poset(bowtie.poset)
        assert complements_of(bowtie.poset, "a") == set()
        assert is_boolean_poset(chain(2))
        assert not is_complemented(chain(3))


class TestDerived:
    def test_interval(self, bowtie):
        P = bowtie.poset
        assert set(interval(P, "a", "1").labels) == {"a", "c", "d", "1"}
        assert len(interval(P, "c", "c")) == 1
        with pytest.raises(NotComparable):
            interval(P, "a", "b")

    @given(posets())
    def test_dual_is_involutive(self, P):
        assert dual(dual(P)) == P
        assert all(dual(P).le(y, x) == P.le(x, y) for x in P.labels for y in P.labels)

    def test_covers_are_transitive_reduction(self, bowtie):
        P = bowtie.poset
        got = {(P.labels[i], P.labels[j]) for i, j in P.covers}
        r = Rel.of(P)
        expected = {(x, y) for x, y in r.le if x != y and not any(
            (x, z) in r.le and (z, y) in r.le and z not in (x, y) for z in r.labels)}
        assert got == expected


def test_subset_views(bowtie):
    P = bowtie.poset
    S = P.subset({"a", "b"})
    assert len(S) == 2 and "a" in S and S == {"a", "b"}
    assert (S | P.subset({"c"})) == {"a", "b", "c"}
    assert (S & P.subset({"b", "c"})) == {"b"}
    assert S.issubset(P.subset(P.labels))
    assert sorted(S) == ["a", "b"]
    assert len(list(combinations(S, 2))) == 1
