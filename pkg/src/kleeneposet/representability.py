"""Deciding whether a finite involutive poset is isomorphic to some P_S(A)."""

from __future__ import annotations

import multiprocessing as mp
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .constructions import ps_from_pairs, ps_pairs
from .enumeration import all_posets
from .errors import BadLength, EmptySubset, EvenCardinality, NoFixedPoint, NotKleene
from .fixtures import glued_diamonds
from .involution import InvolutivePoset, classify
from .morphisms import PosetLike, PosetMap, as_poset, find_isomorphism
from .poset import ElementSubset, FinitePoset, SubsetLike, is_join_irreducible, is_meet_irreducible, popcount

MODES = ("odd_complete", "subposet", "exhaustive")


@dataclass(frozen=True)
class SearchConfig:
    """``universe`` (subposet mode) defaults to the order of K itself."""

    mode: str = "subposet"
    max_carrier_size: int | None = None
    parallel_partitions: int = 1
    prune: bool = True
    universe: FinitePoset | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.parallel_partitions < 1:
            raise ValueError("parallel_partitions must be positive")
        if self.max_carrier_size is not None and self.max_carrier_size < 1:
            raise ValueError("max_carrier_size must be positive")


@dataclass(frozen=True)
class RepresentationResult:
    status: str
    A: FinitePoset | None = None
    S: ElementSubset | None = None
    iso: PosetMap | None = None
    bounds: dict = field(default_factory=dict)
    candidates_examined: int = 0
    pairs_tested: int = 0
    elapsed: float = 0.0
    notes: tuple[str, ...] = ()

    @property
    def representable(self) -> bool:
        return self.status == "Representable"

    def witness(self) -> dict | None:
        if not self.representable:
            return None
        return {
            "A": {"elements": list(self.A.labels),
                  "covers": [[self.A.labels[i], self.A.labels[j]] for i, j in self.A.covers]},
            "S": sorted(self.S.labels, key=self.A.idx),
            "iso": self.iso.as_dict(),
        }


def verify_representation(K: InvolutivePoset, A: FinitePoset, S: SubsetLike) -> PosetMap | None:
    """An involution-respecting isomorphism K -> P_S(A), or None."""
    sm = A.mask(S)
    if not sm:
        raise EmptySubset("S must be non-empty")
    pairs = ps_pairs(A, sm)
    if len(pairs) != len(K):
        return None
    return find_isomorphism(K, ps_from_pairs(A, pairs), respect_involution=True)


def has_three_antichain(X: PosetLike) -> bool:
    return as_poset(X).has_antichain(3)


def prune_lemma3(A: FinitePoset, a: str, target: PosetLike) -> bool:
    """False when the target has no 3-antichain but a cannot then serve as the point of P_a(A)."""
    if has_three_antichain(target):
        return True
    i = A.idx(a)
    return ((A.down[i] | A.up[i]) == A.full
            and is_join_irreducible(A, a) and is_meet_irreducible(A, a))


def make_th1_poset(n: int) -> InvolutivePoset:
    if n < 2:
        raise BadLength("chain length must be at least 2")
    K = glued_diamonds(n)
    assert classify(K).kleene
    return K


# -- candidate streams ---------------------------------------------------------


@dataclass(frozen=True)
class _Job:
    """Everything a worker needs to examine candidate number ``idx``."""

    K: InvolutivePoset
    candidates: Sequence[FinitePoset | int]
    universe: FinitePoset | None
    singleton_only: bool
    fixed_label: str | None
    prune: bool
    no_3_antichain: bool


def _s_candidates(A: FinitePoset, singleton_only: bool, fixed: str | None) -> Iterator[int]:
    """One S per (L(S), U(S)) class, represented by co(S) = LU(S) & UL(S)."""
    n = len(A)
    if singleton_only:
        if fixed is not None:
            if fixed in A.index:
                yield 1 << A.idx(fixed)
            return
        for i in range(n):
            yield 1 << i
        return
    seen = set()
    for r in range(2, n + 1):
        for c in combinations(range(n), r):
            m = sum(1 << i for i in c)
            ls, us = A.lower(m), A.upper(m)
            if (ls, us) in seen:
                continue
            seen.add((ls, us))
            co = A.lower(us) & A.upper(ls)
            if popcount(co) >= 2:
                yield co


def _examine(job: _Job, idx: int) -> tuple[int | None, int]:
    """First S (canonical mask) making candidate ``idx`` work, and the number of S tried."""
    cand = job.candidates[idx]
    A = job.universe.induced(cand) if isinstance(cand, int) else cand
    target = len(job.K)
    tried = 0
    for sm in _s_candidates(A, job.singleton_only, job.fixed_label):
        if job.singleton_only and job.prune and job.no_3_antichain:
            (i,) = [k for k in range(len(A)) if sm >> k & 1]
            if not prune_lemma3(A, A.labels[i], job.K):
                continue
        pairs = ps_pairs(A, sm)
        if len(pairs) != target:
            continue
        tried += 1
        if find_isomorphism(job.K, ps_from_pairs(A, pairs), respect_involution=True) is not None:
            return sm, tried
    return None, tried


_WORKER_JOB: _Job | None = None
_WORKER_BEST = None


def _init_worker(job, best):
    global _WORKER_JOB, _WORKER_BEST
    _WORKER_JOB, _WORKER_BEST = job, best


def _run_slice(args):
    start, step = args
    job, best = _WORKER_JOB, _WORKER_BEST
    examined = tried = 0
    for idx in range(start, len(job.candidates), step):
        if idx >= best.value:
            break
        examined += 1
        sm, t = _examine(job, idx)
        tried += t
        if sm is not None:
            with best.get_lock():
                if idx < best.value:
                    best.value = idx
            return idx, sm, examined, tried
    return None, None, examined, tried


def _search(job: _Job, partitions: int) -> tuple[int | None, int | None, int, int]:
    n = len(job.candidates)
    if partitions == 1 or n < 2:
        examined = tried = 0
        for idx in range(n):
            examined += 1
            sm, t = _examine(job, idx)
            tried += t
            if sm is not None:
                return idx, sm, examined, tried
        return None, None, examined, tried
    ctx = mp.get_context("fork")
    best = ctx.Value("q", n)
    with ctx.Pool(partitions, initializer=_init_worker, initargs=(job, best)) as pool:
        results = pool.map(_run_slice, [(w, partitions) for w in range(partitions)])
    examined = sum(r[2] for r in results)
    tried = sum(r[3] for r in results)
    hits = [(r[0], r[1]) for r in results if r[0] is not None]
    if not hits:
        return None, None, examined, tried
    idx, sm = min(hits)
    return idx, sm, examined, tried


def _finish(job: _Job, found, status_if_none: str, bounds: dict, t0: float,
            notes: Sequence[str]) -> RepresentationResult:
    idx, sm, examined, tried = found
    elapsed = time.perf_counter() - t0
    if idx is None:
        return RepresentationResult(status_if_none, bounds=bounds, candidates_examined=examined,
                                    pairs_tested=tried, elapsed=elapsed, notes=tuple(notes))
    cand = job.candidates[idx]
    A = job.universe.induced(cand) if isinstance(cand, int) else cand
    iso = verify_representation(job.K, A, ElementSubset(A, sm))
    assert iso is not None, "witness failed re-verification"
    return RepresentationResult("Representable", A, ElementSubset(A, sm), iso, bounds,
                                examined, tried, elapsed, tuple(notes))


def _subsets_containing(n: int, must: int, max_size: int, descending: bool) -> list[int]:
    others = [i for i in range(n) if i != must]
    sizes = range(0, max_size)
    if descending:
        sizes = reversed(sizes)
    out = []
    for r in sizes:
        for c in combinations(others, r):
            out.append((1 << must) | sum(1 << i for i in c))
    return out


def odd_candidate_count(size: int) -> int:
    """Number of subposets searched for an odd |K| of this size."""
    bound = (size + 1) // 2
    return sum(comb(size - 1, k) for k in range(bound))


def search_odd(K: InvolutivePoset, cfg: SearchConfig | None = None) -> RepresentationResult:
    """Complete decision for odd |K| over subposets of K through the fixed point."""
    cfg = cfg or SearchConfig(mode="odd_complete")
    t0 = time.perf_counter()
    n = len(K)
    if n % 2 == 0:
        raise EvenCardinality(f"|K| = {n} is even")
    fixed = [i for i, j in enumerate(K.inv) if i == j]
    if not fixed:
        raise NoFixedPoint("odd involutive poset without a fixed point is not pseudo-Kleene")
    cls = classify(K)
    if not cls.pseudo_kleene:
        raise NotKleene("input is not pseudo-Kleene")
    notes = []
    if not cls.kleene:
        notes.append("input is pseudo-Kleene but not distributive; completeness of the "
                     "subposet bound is extrapolated")
    a = fixed[0]
    bound = (n + 1) // 2
    P = K.poset
    cands = _subsets_containing(n, a, bound, descending=False)
    job = _Job(K, cands, P, True, P.labels[a], cfg.prune, not has_three_antichain(K))
    bounds = {"mode": "odd_complete", "max_carrier_size": bound, "candidates": len(cands)}
    found = _search(job, cfg.parallel_partitions)
    return _finish(job, found, "NotRepresentable", bounds, t0, notes)


def search_general(K: InvolutivePoset, cfg: SearchConfig | None = None) -> RepresentationResult:
    cfg = cfg or SearchConfig()
    if cfg.mode == "odd_complete":
        return search_odd(K, cfg)
    t0 = time.perf_counter()
    n = len(K)
    odd = n % 2 == 1
    fixed = [i for i, j in enumerate(K.inv) if i == j]
    notes = []
    bounds = {"mode": cfg.mode}
    # |P_S(A)| is odd iff |S| = 1, and then the fixed point is (a, a)
    if odd != bool(fixed):
        bounds["reason"] = "parity and fixed points disagree"
        return RepresentationResult("NotRepresentableWithinBounds", bounds=bounds,
                                    elapsed=time.perf_counter() - t0)
    max_size = cfg.max_carrier_size or n
    if odd:
        max_size = min(max_size, (n + 1) // 2)
    bounds["max_carrier_size"] = max_size
    if cfg.mode == "subposet":
        U = cfg.universe if cfg.universe is not None else K.poset
        bounds["universe_size"] = len(U)
        cands = []
        for r in reversed(range(1, min(max_size, len(U)) + 1)):
            for c in combinations(range(len(U)), r):
                if r * r >= n:
                    cands.append(sum(1 << i for i in c))
        job = _Job(K, cands, U, odd, None, cfg.prune, not has_three_antichain(K))
    else:
        cands = [A for m in range(1, max_size + 1) if m * m >= n for A in all_posets(m)]
        job = _Job(K, cands, None, odd, None, cfg.prune, not has_three_antichain(K))
        if not odd:
            notes.append("no carrier bound is known when |S| >= 2; verdict limited to "
                         f"|A| <= {max_size}")
    bounds["candidates"] = len(cands)
    found = _search(job, cfg.parallel_partitions)
    return _finish(job, found, "NotRepresentableWithinBounds", bounds, t0, notes)
