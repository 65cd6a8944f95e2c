from math import gcd

import pytest

from src.point_search import (
    CUBIC_MONOMIALS,
    BoxPointSearch,
    PointSearcher,
    PointSearchStrategy,
    evaluate_cubics_exact,
)


def monomial_form(terms: dict) -> tuple:
    """A cubic in q0..q9 from {sorted index triple: coefficient}."""
    return tuple(terms.get(m, 0) for m in CUBIC_MONOMIALS)


# q2 = ... = q9 = 0 and q0^3 = q1^3: the single point (1:1:0:...:0)
PLANTED = [monomial_form({(i, i, i): 1}) for i in range(2, 10)] + [monomial_form({(0, 0, 0): 1, (1, 1, 1): -1})]
LINE = (1, 1, 0, 0, 0, 0, 0, 0, 0, 0)


class FixedSearch(PointSearchStrategy):
    def search(self, cubics, bound):
        return [LINE]


def test_exact_evaluation():
    form = monomial_form({(0, 1, 2): 2, (3, 3, 3): -1})
    assert evaluate_cubics_exact([form], (1, 2, 3, 4, 0, 0, 0, 0, 0, 0)) == [2 * 6 - 64]


def test_zero_bound_finds_nothing():
    assert BoxPointSearch().search(PLANTED, 0) == []
    assert BoxPointSearch().search([], 3) == []
    with pytest.raises(ValueError):
        BoxPointSearch().search(PLANTED, -1)


def test_planted_point_is_found_once():
    assert BoxPointSearch().search(PLANTED, 1) == [LINE]


def test_results_are_primitive_and_normalised():
    form = monomial_form({(0, 0, 0): 1, (1, 1, 1): -1})
    points = BoxPointSearch().search([form] + [monomial_form({(i, i, i): 1}) for i in range(4, 10)], 1)
    assert points == sorted(points)
    assert len(points) == (3**3 - 1) // 2
    for point in points:
        assert gcd(*point) == 1
        assert next(v for v in point if v) > 0
        assert point[0] == point[1]


def test_result_does_not_depend_on_workers():
    form = monomial_form({(0, 1, 2): 1, (3, 3, 3): -1})
    cubics = [form] + [monomial_form({(i, i, i): 1}) for i in range(5, 10)]
    serial = BoxPointSearch(workers=1).search(cubics, 1)
    assert BoxPointSearch(workers=2, max_chunk=500).search(cubics, 1) == serial
    assert serial


def test_searcher_switches_strategy():
    searcher = PointSearcher(BoxPointSearch())
    assert searcher.search(PLANTED, 1) == [LINE]
    searcher.set_strategy(FixedSearch())
    assert searcher.search([], 5) == [LINE]


def test_huge_coefficients_are_screened_after_scaling():
    big = 10**400
    cubics = [monomial_form({(0, 0, 0): big, (1, 1, 1): -big})] + PLANTED[:8]
    assert BoxPointSearch().search(cubics, 1) == [LINE]
