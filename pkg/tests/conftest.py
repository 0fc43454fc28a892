import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from kleeneposet import fixtures as fx  # noqa: E402
from kleeneposet.enumeration import antitone_involutions  # noqa: E402
from kleeneposet.involution import InvolutivePoset  # noqa: E402
from kleeneposet.poset import build_poset  # noqa: E402

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.register_profile("acceptance", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"


@st.composite
def posets(draw, min_size=1, max_size=7):
    """Random posets with shuffled labels, so index order need not be a linear extension."""
    n = draw(st.integers(min_size, max_size))
    order = draw(st.permutations(range(n)))
    labels = [f"x{i}" for i in range(n)]
    gens = []
    for j in range(n):
        for i in range(j):
            if draw(st.booleans()):
                gens.append((labels[order[i]], labels[order[j]]))
    return build_poset(labels, gens)


@st.composite
def involutive_posets(draw, min_size=1, max_size=7):
    P = draw(posets(min_size, max_size))
    invs = antitone_involutions(P)
    assume(invs)
    return InvolutivePoset(P, draw(st.sampled_from(invs)))


@st.composite
def poset_and_subset(draw, min_size=1, max_size=7):
    P = draw(posets(min_size, max_size))
    picks = draw(st.lists(st.sampled_from(P.labels), min_size=1, unique=True))
    return P, frozenset(picks)


@pytest.fixture
def bowtie():
    return fx.bowtie()


@pytest.fixture
def vee():
    return fx.vee_tail()


@pytest.fixture
def m3():
    return build_poset(["0", "a", "b", "c", "1"],
                       [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])


@pytest.fixture
def n5():
    return build_poset(["0", "a", "b", "c", "1"],
                       [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


@st.composite
def bounded_posets(draw, max_inner=3, prefix="x"):
    """A random poset with a fresh bottom and top adjoined."""
    P = draw(posets(1, max_inner)) if max_inner else None
    inner = [prefix + s[1:] for s in P.labels] if P else []
    gens = [(prefix + P.labels[i][1:], prefix + P.labels[j][1:]) for i, j in P.covers] if P else []
    bot, top = prefix + "bot", prefix + "top"
    gens += [(bot, x) for x in inner] + [(x, top) for x in inner] + [(bot, top)]
    return build_poset([bot, *inner, top], gens)
