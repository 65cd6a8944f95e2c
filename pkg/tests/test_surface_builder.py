from fractions import Fraction

import pytest
import sympy

from src.clebsch_inv import ClebschVector, PentahedralCoeffs, clebsch_from_sigma, weighted_equal
from src.errors import DegenerateConfig, InputError, MultipleZeroes, NoProperPentahedron
from src.exact_arith import QMatrix, UniPoly, kernel_basis
from src.plane_config import NaiveCoords, naive_configuration
from src.surface_builder import (
    X,
    CubicForm4,
    descent_linear_forms,
    galois_descent,
    glex_monomials,
    hessian,
    pentahedral_expand,
    pentahedron_vertices,
    solve_equation_problem,
    split_substitution,
    surface_from_points,
)

T = UniPoly.variable()
SPLIT_ROOTS = [1, -1, 2, -2, 3]
STANDARD = naive_configuration(NaiveCoords(2, 3, 5, 7))


def cubic(expr) -> CubicForm4:
    return CubicForm4.from_polynomial(sympy.Poly(expr, *X, domain="QQ"))


def test_monomial_order():
    monomials = CubicForm4.monomials()
    assert len(monomials) == 20
    assert monomials[0] == (3, 0, 0, 0)
    assert monomials[-1] == (0, 0, 0, 3)


def test_pentahedral_expand_examples():
    assert pentahedral_expand(PentahedralCoeffs((1, 0, 0, 0, 0))) == cubic(X[0] ** 3)
    everything = pentahedral_expand(PentahedralCoeffs((0, 0, 0, 0, 1)))
    assert everything == cubic(-((X[0] + X[1] + X[2] + X[3]) ** 3))
    assert everything.coefficient((1, 1, 1, 0)) == -6


def test_hessian_examples():
    assert hessian(cubic(X[0] ** 3)).is_zero()
    h = hessian(cubic(X[0] * X[1] * X[2] + X[3] ** 3))
    assert h.coefficient((1, 1, 1, 1)) == 12
    assert sum(1 for c in h.coeffs if c) == 1


def test_pentahedron_vertices_are_singular_on_the_hessian():
    h = hessian(pentahedral_expand(PentahedralCoeffs((1, 2, 3, 5, 7))))
    vertices = pentahedron_vertices()
    assert len(set(vertices)) == 10
    for vertex in vertices:
        assert h.evaluate(vertex) == 0
        assert all(p == 0 for p in h.partials(vertex))
    assert h.evaluate((1, 1, 1, 1)) != 0


def test_descent_linear_forms_of_roots_of_unity():
    form = descent_linear_forms(T**5 - 1)
    assert [c.residue for c in form.coefficients] == [T, T**2, T**3, T**4]
    assert form.specialize(1) == (1, 1, 1, 1)


def test_descent_rejects_multiple_zeroes():
    with pytest.raises(MultipleZeroes):
        galois_descent(T**5 - 2 * T**4 + T**3)
    with pytest.raises(InputError):
        galois_descent(T**4 - 1)


def test_descent_of_split_quintic_is_the_explicit_substitution():
    g = UniPoly.from_roots(SPLIT_ROOTS)
    assert galois_descent(g) == split_substitution(g, SPLIT_ROOTS)
    with pytest.raises(InputError):
        split_substitution(g, [1, -1, 2, -2, 4])


def test_equation_problem_on_split_invariants():
    v = ClebschVector(736, 5184, 82944, -14929920, 429981696)
    solution = solve_equation_problem(v)
    assert weighted_equal(clebsch_from_sigma(solution.sigma), v)
    assert solution.quintic.degree == 5
    assert all(c.denominator == 1 for c in solution.surface.coeffs)
    assert not hessian(solution.surface).is_zero()
    document = solution.to_json()
    assert CubicForm4.from_json(document["surface"]) == solution.surface


def test_equation_problem_failures():
    with pytest.raises(MultipleZeroes):
        solve_equation_problem(ClebschVector(-15, 5, 5, 10, 1))
    with pytest.raises(NoProperPentahedron):
        solve_equation_problem(ClebschVector(1, 2, 3, 4, 0))


def test_form_json_checks_order_tag():
    document = pentahedral_expand(PentahedralCoeffs((1, 2, 3, 5, 7))).to_json()
    document["order"] = "lex"
    with pytest.raises(InputError):
        CubicForm4.from_json(document)


def _plane_cubics(config) -> list:
    ternary = glex_monomials(3, 3)
    rows = [[Fraction(p.coords[0]) ** m[0] * Fraction(p.coords[1]) ** m[1] * Fraction(p.coords[2]) ** m[2] for m in ternary] for p in config.points]
    return [dict(zip(ternary, v)) for v in kernel_basis(QMatrix.from_rows(rows, cols=len(ternary)))]


def test_surface_contains_the_image_of_the_plane():
    surface = surface_from_points(STANDARD)
    cubics = _plane_cubics(STANDARD)
    for point in ((1, 2, 3), (-4, 1, 7), (2, 0, 5)):
        image = [sum((c * Fraction(point[0]) ** m[0] * Fraction(point[1]) ** m[1] * Fraction(point[2]) ** m[2] for m, c in f.items()), Fraction(0)) for f in cubics]
        assert surface.evaluate(image) == 0


def test_surface_follows_a_basis_change():
    change = QMatrix.from_rows([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    inverse = QMatrix.from_rows([[1, -1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    changed = surface_from_points(STANDARD, basis_change=change)
    assert changed.projectively_equal(surface_from_points(STANDARD).substitute(inverse))


def test_surface_needs_general_position():
    with pytest.raises(DegenerateConfig):
        surface_from_points(naive_configuration(NaiveCoords(2, 2, 5, 7)))
