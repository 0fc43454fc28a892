"""Finite posets with antitone involutions, the P_S(A) construction and its completions."""

from .completion import (
    SubsetLattice,
    bot_involution,
    dm_completion,
    dm_ps_compare,
    g_completion,
    is_doubly_dense,
    verify_kleene_completion,
)
from .constructions import (
    Th3Certificate,
    chain_representation,
    direct_product,
    embed_at_point,
    ordinal_sum2,
    ordinal_sum3,
    prop2_decompose,
    ps_construct,
    ps_reductions,
    th3_embedding,
    twist_product,
)
from .errors import KleeneError
from .involution import Classification, InvolutivePoset, attach_involution, classify
from .morphisms import PosetMap, find_isomorphism, is_lulu_embedding, is_lulu_morphism
from .poset import ElementSubset, FinitePoset, build_poset, chain, antichain, dual, interval
from .representability import (
    RepresentationResult,
    SearchConfig,
    make_th1_poset,
    search_general,
    search_odd,
    verify_representation,
)

__version__ = "0.1.0"
