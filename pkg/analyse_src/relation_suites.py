from typing import Iterable

import numpy as np

from analyse_src.verification_template import CheckOutcome, VerificationTemplate
from src.clebsch_inv import clebsch_from_gamma, power_sum_monomial_ranks, weighted_equal
from src.coble_gamma import (
    check_cubic_relation,
    evaluate_all,
    gamma_relations,
    sample_gamma_vectors,
    sampled_relation_space,
)
from src.plane_config import check_quadric_relation, general_position, random_configurations, random_invertible_matrix
from src.relation_solver import BareissKernelStrategy, RelationSolver


class Rank10Suite(VerificationTemplate):
    """The 40 invariants of 200 random configurations span a space of dimension ten."""

    name = "rank10"
    sample_count = 200

    def run_checks(self, seed: int, samples: int) -> Iterable[CheckOutcome]:
        vectors = sample_gamma_vectors(self.sample_count, seed)
        space = sampled_relation_space(1, vectors, solver=RelationSolver(BareissKernelStrategy()))
        yield CheckOutcome("rank of the 200 x 40 evaluation matrix", 10, space.rank)
        yield CheckOutcome("dimension of the linear relations", 30, len(space.nullspace))


class SpansSuite(VerificationTemplate):
    """Quadratic and cubic monomials in the ten basis coordinates."""

    name = "spans"

    def run_checks(self, seed: int, samples: int) -> Iterable[CheckOutcome]:
        relations = gamma_relations(seed, samples)
        yield CheckOutcome("basis coordinates", 10, len(relations.basis_indices))
        yield CheckOutcome("rank of the 55 quadratic monomials", 55, relations.quadratic_rank)
        yield CheckOutcome("rank of the 220 cubic monomials", 190, relations.cubic_rank)
        yield CheckOutcome("dimension of the cubic relations", 30, len(relations.cubic_relations))


class CubicSuite(VerificationTemplate):
    """The displayed three-term relation and the 30 sampled cubics on fresh configurations."""

    name = "cubic"
    sample_count = 50

    def run_checks(self, seed: int, samples: int) -> Iterable[CheckOutcome]:
        relations = gamma_relations(seed, samples)
        vectors = sample_gamma_vectors(self.sample_count, seed + 1)
        yield CheckOutcome("displayed relation holds", self.sample_count, sum(check_cubic_relation(g) for g in vectors))
        vanishing = sum(not any(relations.evaluate_cubics(relations.project(g))) for g in vectors)
        yield CheckOutcome("all 30 cubics vanish", self.sample_count, vanishing)


class BeautifulSuite(VerificationTemplate):
    """The conic determinant equals the quadratic expression in eight minors."""

    name = "beautiful"
    sample_count = 50

    def run_checks(self, seed: int, samples: int) -> Iterable[CheckOutcome]:
        configs = list(random_configurations(self.sample_count, seed + 2))
        yield CheckOutcome("d2 equals the minor expression", self.sample_count, sum(check_quadric_relation(c) for c in configs))


class InvariantsSuite(VerificationTemplate):
    """
    Clebsch's invariants are unchanged by relabelling the points and by
    projective transformations, and P2..P10 carry no weighted relation.
    """

    name = "invariants"
    sample_count = 20

    def run_checks(self, seed: int, samples: int) -> Iterable[CheckOutcome]:
        rng = np.random.default_rng(seed + 3)
        configs = list(random_configurations(self.sample_count, seed + 3))
        relabelled, transformed = 0, 0
        for c in configs:
            reference = clebsch_from_gamma(evaluate_all(c))
            sigma = [int(v) + 1 for v in rng.permutation(6)]
            relabelled += weighted_equal(reference, clebsch_from_gamma(evaluate_all(c.permuted(sigma))))
            moved = c.transformed(random_invertible_matrix(rng))
            transformed += general_position(moved) and weighted_equal(reference, clebsch_from_gamma(evaluate_all(moved)))
        yield CheckOutcome("invariant under relabelling", self.sample_count, relabelled)
        yield CheckOutcome("invariant under projective maps", self.sample_count, transformed)
        ranks = power_sum_monomial_ranks([evaluate_all(c) for c in configs])
        yield CheckOutcome("power sum monomial ranks by weight", [1, 2, 3, 5, 7], ranks)
