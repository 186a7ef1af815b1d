"""Mass problems, reducibility and the isomorphism with the upset algebra."""

import pytest

from ordsem.errors import CapacityError, InputError, StructureError
from ordsem.muchnik import (
    canonical_degree,
    iso_check,
    mass_problem,
    mass_problem_from_json,
    mass_problem_to_json,
    muchnik_leq,
    muchnik_ops,
)
from ordsem.order import from_relation, generate_posets, is_join_semilattice


class TestReducibility:
    def test_reflexive(self, chain2):
        for members in ((), ("a",), ("b",), ("a", "b")):
            problem = mass_problem(chain2, members)
            assert muchnik_leq(problem, problem)

    def test_empty_is_top(self, chain2):
        empty = mass_problem(chain2, ())
        for members in ((), ("a",), ("a", "b")):
            assert muchnik_leq(mass_problem(chain2, members), empty)

    def test_antichain_incomparable_singletons(self, antichain2):
        assert not muchnik_leq(
            mass_problem(antichain2, ("a",)), mass_problem(antichain2, ("b",))
        )

    def test_preorder_transitive(self, diamond):
        problems = [
            mass_problem(diamond, diamond.labels_of(m))
            for m in range(diamond.full_mask + 1)
        ]
        for a in problems:
            for b in problems:
                for c in problems:
                    if muchnik_leq(a, b) and muchnik_leq(b, c):
                        assert muchnik_leq(a, c)

    def test_mismatched_posets(self, chain2, antichain2):
        with pytest.raises(InputError):
            muchnik_leq(mass_problem(chain2, ("a",)), mass_problem(antichain2, ("a",)))


class TestCanonicalDegree:
    def test_closure_is_equivalent(self):
        # A and C(A) are mutually reducible, exhaustively per poset
        from ordsem.order import random_posets

        pool = list(generate_posets(3)) + random_posets(4, 15, seed=7) + random_posets(
            5, 15, seed=8
        )
        for poset in pool:
            for mask in range(poset.full_mask + 1):
                problem = mass_problem(poset, poset.labels_of(mask))
                closed = canonical_degree(problem)
                assert muchnik_leq(problem, closed)
                assert muchnik_leq(closed, problem)


class TestOps:
    def test_chain_join(self, chain2):
        ops = muchnik_ops(mass_problem(chain2, ("a",)), mass_problem(chain2, ("b",)))
        assert ops.join.members == ("b",)

    def test_meet_with_empty(self, chain2):
        a = mass_problem(chain2, ("a",))
        assert muchnik_ops(a, mass_problem(chain2, ())).meet.members == a.members

    def test_chain_impl(self, chain2):
        ops = muchnik_ops(mass_problem(chain2, ("b",)), mass_problem(chain2, ("a",)))
        assert ops.impl.members == ("a", "b")

    def test_missing_join_named(self, fork):
        with pytest.raises(StructureError, match="'l'.*'k'"):
            muchnik_ops(mass_problem(fork, ("l",)), mass_problem(fork, ("k",)))


class TestIsoCheck:
    def test_single_point(self):
        report = iso_check(from_relation(["x"], []))
        assert report.ok

    def test_chain(self, chain2):
        assert iso_check(chain2).ok

    def test_exhaustive_small_semilattices(self):
        count = 0
        for poset in generate_posets(3):
            if is_join_semilattice(poset):
                count += 1
                assert iso_check(poset).ok
        assert count == 9

    def test_requires_joins(self, fork):
        with pytest.raises(StructureError):
            iso_check(fork)

    def test_capacity_guard(self):
        big = from_relation([f"x{i}" for i in range(6)], [])
        with pytest.raises(CapacityError):
            iso_check(big)


class TestJson:
    def test_round_trip(self, diamond):
        problem = mass_problem(diamond, ("m1", "top"))
        again = mass_problem_from_json(mass_problem_to_json(problem))
        assert again.poset == problem.poset
        assert again.mask == problem.mask
