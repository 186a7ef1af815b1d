"""Acceptance gate: one test per criterion, each printing a PASS line.

Shared structure pools are built once; expected values and tolerances are
pinned here, not configurable.  Criteria with a stated wall-clock target
assert it.
"""

import random
import time
from functools import lru_cache
from itertools import combinations

import pytest

from ordsem.brouwer import interval_algebra, quotient, upset_algebra, verify_brouwer
from ordsem.corpus import (
    BOUNDED_REFUTED,
    BOUNDED_VALID,
    IPC_THEOREMS,
    MIXED_CORPUS,
    parsed,
)
from ordsem.formulas import free_vars, parse
from ordsem.morphism import search_pmorphism, transfer_check, verify_pmorphism
from ordsem.muchnik import iso_check
from ordsem.order import generate_posets, is_join_semilattice, random_posets, upward_closure
from ordsem.semantics import (
    Countermodel,
    ValidUpToBound,
    binary_tree_frame,
    forces,
    holds_in,
    ipc_check_bounded,
    theory_contains,
)
from ordsem.splitting import (
    SyntheticAntichainModel,
    build_pmorphism,
    check_split_conditions,
    pmorphism_of,
    split_from_cond_ii,
    verify_splitting_class,
)

RANDOM_POSET_SEED = 2024


@lru_cache(maxsize=1)
def small_posets():
    """All labeled posets with at most 4 elements, exhaustively."""
    out = []
    for n in (1, 2, 3, 4):
        out.extend(generate_posets(n))
    return tuple(out)


@lru_cache(maxsize=1)
def criterion_one_posets():
    return small_posets() + tuple(random_posets(5, 200, seed=RANDOM_POSET_SEED))


@lru_cache(maxsize=1)
def criterion_one_algebras():
    return tuple(upset_algebra(p) for p in criterion_one_posets())


def _finish(num, name, start, budget=None):
    elapsed = time.perf_counter() - start
    if budget is not None:
        assert elapsed < budget, f"criterion {num} took {elapsed:.1f}s (> {budget}s)"
    print(f"ACCEPTANCE {num:2d} {name}: PASS ({elapsed:.1f}s)")


def test_criterion_01_brouwer_validity():
    start = time.perf_counter()
    algebras = criterion_one_algebras()
    assert len(algebras) == 1 + 3 + 19 + 219 + 200
    for algebra in algebras:
        report = verify_brouwer(algebra)
        assert report.ok, report.violations
    _finish(1, "brouwer-validity", start, budget=60)


def test_criterion_02_ipc_soundness():
    start = time.perf_counter()
    theorems = parsed(IPC_THEOREMS)
    assert len(theorems) >= 20
    small = [f for f in theorems if len(free_vars(f)) <= 2]
    wide = [f for f in theorems if len(free_vars(f)) == 3]
    assert small and wide
    rng = random.Random(RANDOM_POSET_SEED)
    for algebra in criterion_one_algebras():
        for formula in small:
            assert theory_contains(algebra, formula)
        for formula in wide:
            names = sorted(free_vars(formula))
            for _ in range(200):
                valuation = {
                    name: algebra.carrier[rng.randrange(algebra.n)] for name in names
                }
                assert holds_in(algebra, formula, valuation)
    _finish(2, "ipc-soundness", start, budget=120)


def test_criterion_03_weak_lem_separation():
    start = time.perf_counter()
    wlem = parse("~p | ~~p")
    semilattices = [p for p in small_posets() if is_join_semilattice(p)]
    assert semilattices
    for poset in semilattices:
        assert theory_contains(upset_algebra(poset), wlem)
    fork = binary_tree_frame(2)
    witness = {"p": upward_closure(fork, ["0"])}
    assert not forces(fork, "", witness, wlem)
    assert not theory_contains(fork, wlem)
    _finish(3, "weak-lem-separation", start)


def test_criterion_04_muchnik_upset_isomorphism():
    start = time.perf_counter()
    checked = 0
    for poset in small_posets():
        if not is_join_semilattice(poset):
            continue
        checked += 1
        report = iso_check(poset)
        assert report.ok, report.violations
    assert checked > 0
    _finish(4, f"muchnik-iso ({checked} semilattices)", start, budget=60)


def test_criterion_05_quotient_interval():
    start = time.perf_counter()
    for algebra in criterion_one_algebras():
        for x in algebra.carrier:
            quot = quotient(algebra, x)
            assert verify_brouwer(quot).ok
            interval, hom = interval_algebra(algebra, x)
            assert hom.target == quot
            assert hom.verify().ok
            assert interval.join == quot.join
            assert interval.meet == quot.meet
            assert interval.impl == quot.impl
            assert (interval.bottom, interval.top) == (quot.bottom, quot.top)
    _finish(5, "quotient-interval", start, budget=120)


def test_criterion_06_frame_algebra_agreement():
    start = time.perf_counter()
    corpus = parsed(MIXED_CORPUS)
    assert len(corpus) == 50
    assert all(len(free_vars(f)) <= 2 for f in corpus)
    for poset in small_posets():
        algebra = upset_algebra(poset)
        for formula in corpus:
            assert theory_contains(poset, formula) == theory_contains(algebra, formula)
    _finish(6, "frame-algebra-agreement", start)


def test_criterion_07_theory_transfer():
    start = time.perf_counter()
    corpus = parsed(MIXED_CORPUS)
    posets = small_posets()
    rng = random.Random(RANDOM_POSET_SEED)
    pairs_checked = 0
    attempts = 0
    while pairs_checked < 100:
        attempts += 1
        assert attempts < 10_000
        source = posets[rng.randrange(len(posets))]
        target = posets[rng.randrange(len(posets))]
        if search_pmorphism(source, target) is None:
            continue
        report = transfer_check(source, target, corpus)
        assert report.ok, report.violations
        pairs_checked += 1
    _finish(7, "theory-transfer (100 pairs)", start)


def test_criterion_08_splitting_end_to_end():
    start = time.perf_counter()
    for height in (1, 2, 3, 4):
        for seed in range(1, 51):
            model = SyntheticAntichainModel(seed=seed)
            alpha = build_pmorphism(model, height, 56)
            assert alpha.check_invariants().ok
            packaged = pmorphism_of(alpha)
            report = verify_pmorphism(packaged)
            assert report.ok, (height, seed, report.violations)
            assert packaged.target.n == 2**height - 1
    _finish(8, "splitting-construction (4 heights x 50 seeds)", start, budget=30)


def test_criterion_09_splitting_oracle_checks():
    start = time.perf_counter()
    model = SyntheticAntichainModel()
    report = verify_splitting_class(model, 16)
    assert report.ok, report.violations[:3]

    fresh = SyntheticAntichainModel()
    oracle = split_from_cond_ii(fresh, fresh.cond_ii)
    window = [fresh.enumerate(i) for i in range(10)]
    queries = 0
    for f in window[:5]:
        others = [g for g in window if not fresh.leq(g, f)]
        for size in (0, 1, 2, 3):
            for combo in combinations(others[:7], size):
                avoid = frozenset(combo)
                h0, h1 = oracle(f, avoid)
                assert check_split_conditions(fresh, f, avoid, h0, h1).ok
                queries += 1
                if queries >= 100:
                    break
            if queries >= 100:
                break
        if queries >= 100:
            break
    assert queries >= 100

    class IgnoresAvoid(SyntheticAntichainModel):
        def split(self, f, avoid):
            (s,) = f
            return frozenset({s + (0,)}), frozenset({s + (1,)})

    assert not verify_splitting_class(IgnoresAvoid(), 8).ok
    _finish(9, "splitting-oracle-checks", start)


def test_criterion_10_bounded_ipc_classification():
    start = time.perf_counter()
    for text in BOUNDED_VALID:
        result = ipc_check_bounded(parse(text), 4)
        assert isinstance(result, ValidUpToBound), text
        assert result.bound == 4
    for text in BOUNDED_REFUTED:
        result = ipc_check_bounded(parse(text), 4)
        assert isinstance(result, Countermodel), text
        assert result.height <= 3
        assert not forces(result.frame, result.point, result.valuation, result.formula)
    _finish(10, "bounded-ipc-classification", start, budget=30)
