import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import factorial
from typing import ClassVar, Optional, Sequence

import sympy

from src.clebsch_inv import (
    ClebschVector,
    PentahedralCoeffs,
    SigmaVector,
    quintic_from_sigma,
    sigma_from_clebsch,
    sigma_from_quintic,
)
from src.errors import InputError, InternalInconsistency, MultipleZeroes, UnexpectedKernel, ZeroVector
from src.exact_arith import (
    EtaleElement,
    QMatrix,
    UniPoly,
    etale_trace,
    format_rational,
    kernel_basis,
    parse_rational,
    poly_gcd,
    primitive_integer_vector,
)
from src.plane_config import SixPointConfig, require_general_position

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

ORDER_TAG = "glex-x0x1x2x3-v1"
X = sympy.symbols("x0:4")
Y = sympy.symbols("y0:3")


@lru_cache(maxsize=None)
def glex_monomials(nvars: int, degree: int) -> tuple:
    """Exponent tuples of the given total degree, in descending lexicographic order."""
    return tuple(sorted((e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree), reverse=True))


def multinomial(alpha: Sequence[int]) -> int:
    result = factorial(sum(alpha))
    for a in alpha:
        result //= factorial(a)
    return result


def _to_sympy(value: Fraction) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _monomial_value(alpha: Sequence[int], point: Sequence[Fraction]) -> Fraction:
    result = Fraction(1)
    for x, a in zip(point, alpha):
        if a:
            result *= Fraction(x) ** a
    return result


@dataclass(frozen=True)
class HomogeneousForm4:
    """A homogeneous form in X0..X3 stored as coefficients in glex order."""

    coeffs: tuple
    degree: ClassVar[int] = 0

    def __post_init__(self) -> None:
        expected = len(self.monomials())
        if len(self.coeffs) != expected:
            raise InputError(f"A degree-{self.degree} form in four variables has {expected} coefficients, got {len(self.coeffs)}.")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def monomials(cls) -> tuple:
        return glex_monomials(4, cls.degree)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self.coeffs[self.monomials().index(tuple(alpha))]

    @classmethod
    def from_polynomial(cls, poly: sympy.Poly):
        terms = poly.as_dict()
        monomials = set(cls.monomials())
        for alpha, value in terms.items():
            if value != 0 and tuple(alpha) not in monomials:
                raise InputError(f"The polynomial is not homogeneous of degree {cls.degree}.")
        return cls(tuple(_from_sympy(terms.get(alpha, 0)) for alpha in cls.monomials()))

    def as_polynomial(self) -> sympy.Poly:
        expr = sympy.Add(*(_to_sympy(c) * sympy.Mul(*(x**a for x, a in zip(X, alpha))) for c, alpha in zip(self.coeffs, self.monomials()) if c))
        return sympy.Poly(expr, *X, domain="QQ")

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * _monomial_value(alpha, point) for c, alpha in zip(self.coeffs, self.monomials()) if c), Fraction(0))

    def partials(self, point: Sequence[Fraction]) -> tuple:
        """The four partial derivatives evaluated at ``point``."""
        values = []
        for i in range(4):
            total = Fraction(0)
            for c, alpha in zip(self.coeffs, self.monomials()):
                if c and alpha[i]:
                    lowered = tuple(a - 1 if k == i else a for k, a in enumerate(alpha))
                    total += c * alpha[i] * _monomial_value(lowered, point)
            values.append(total)
        return tuple(values)

    def normalized(self):
        """Integer coefficients without common factor, first nonzero coefficient positive."""
        if self.is_zero():
            logging.error("Normalising the zero form.")
            raise ZeroVector("The zero form has no normalised representative.")
        return type(self)(primitive_integer_vector(self.coeffs))

    def projectively_equal(self, other: "HomogeneousForm4") -> bool:
        return self.normalized() == other.normalized()

    def to_json(self) -> dict:
        return {"order": ORDER_TAG, "degree": self.degree, "coefficients": [format_rational(c) for c in self.coeffs]}


@dataclass(frozen=True)
class CubicForm4(HomogeneousForm4):
    degree: ClassVar[int] = 3

    def substitute(self, matrix: QMatrix) -> "CubicForm4":
        """The form F(M X) for a 4 x 4 matrix M."""
        replacement = {X[i]: sympy.Add(*(_to_sympy(matrix[i, j]) * X[j] for j in range(4))) for i in range(4)}
        expr = sympy.expand(self.as_polynomial().as_expr().xreplace(replacement))
        return CubicForm4.from_polynomial(sympy.Poly(expr, *X, domain="QQ"))

    @classmethod
    def from_json(cls, data: dict) -> "CubicForm4":
        if data.get("order") != ORDER_TAG:
            raise InputError(f"Unsupported monomial order tag {data.get('order')!r}.")
        return cls(tuple(parse_rational(c) for c in data["coefficients"]))


@dataclass(frozen=True)
class QuarticForm4(HomogeneousForm4):
    degree: ClassVar[int] = 4


@dataclass(frozen=True)
class EtaleLinearForm:
    """The linear form C_0 X_0 + ... + C_3 X_3 with coefficients in A = Q[T]/(g)."""

    coefficients: tuple

    def __post_init__(self) -> None:
        if len(self.coefficients) != 4 or len({c.modulus for c in self.coefficients}) != 1:
            raise InputError("A linear form needs four coefficients over one etale algebra.")

    @property
    def modulus(self) -> UniPoly:
        return self.coefficients[0].modulus

    def specialize(self, root: Fraction) -> tuple:
        """The rational linear form obtained from the embedding T -> root."""
        return tuple(c.residue.evaluate(Fraction(root)) for c in self.coefficients)


def surface_from_points(c: SixPointConfig, basis_change: Optional[QMatrix] = None) -> CubicForm4:
    """
    The cubic surface of the blow-up of the plane in six points.

    The cubics through the six points span a 4-dimensional space with basis
    F1..F4; the surface is the unique cubic relation among them, found as the
    kernel of the 55 x 20 system of degree-9 ternary coefficients.

    Parameters:
    ----------
    c : SixPointConfig
        Six points in general position.
    basis_change : QMatrix, optional
        An invertible 4 x 4 matrix applied to F1..F4 first.

    Returns:
    -------
    CubicForm4
        The normalised equation.
    """
    require_general_position(c)
    ternary = glex_monomials(3, 3)
    conditions = QMatrix.from_rows([[_monomial_value(m, p.coords) for m in ternary] for p in c.points], cols=len(ternary))
    cubics = kernel_basis(conditions)
    if len(cubics) != 4:
        logging.error(f"Cubics through the points span dimension {len(cubics)}.")
        raise UnexpectedKernel(f"The cubics through the six points span dimension {len(cubics)}, expected 4.", witness=len(cubics))
    if basis_change is not None:
        cubics = [tuple(sum((basis_change[i, k] * cubics[k][m] for k in range(4)), Fraction(0)) for m in range(len(ternary))) for i in range(4)]

    forms = [
        sympy.Poly(sympy.Add(*(_to_sympy(v) * sympy.Mul(*(y**a for y, a in zip(Y, m))) for v, m in zip(vector, ternary))), *Y, domain="QQ")
        for vector in cubics
    ]
    nonic = glex_monomials(3, 9)
    columns = []
    for alpha in CubicForm4.monomials():
        expansion = sympy.Poly(1, *Y, domain="QQ")
        for form, a in zip(forms, alpha):
            if a:
                expansion = expansion * form**a
        terms = expansion.as_dict()
        columns.append([_from_sympy(terms.get(m, 0)) for m in nonic])
    system = QMatrix.from_rows([[columns[j][i] for j in range(len(columns))] for i in range(len(nonic))], cols=len(columns))
    relations = kernel_basis(system)
    if len(relations) != 1:
        logging.error(f"Cubic relation space has dimension {len(relations)}.")
        raise UnexpectedKernel(f"The cubic relations among F1..F4 span dimension {len(relations)}, expected 1.", witness=len(relations))
    logging.info("Cubic surface recovered from six points.")
    return CubicForm4(relations[0]).normalized()


def pentahedral_expand(a: PentahedralCoeffs) -> CubicForm4:
    """a0 X0^3 + a1 X1^3 + a2 X2^3 + a3 X3^3 - a4 (X0 + X1 + X2 + X3)^3."""
    coeffs = []
    for alpha in CubicForm4.monomials():
        value = -Fraction(a.values[4]) * multinomial(alpha)
        if 3 in alpha:
            value += Fraction(a.values[alpha.index(3)])
        coeffs.append(value)
    return CubicForm4(tuple(coeffs))


def hessian(f: CubicForm4) -> QuarticForm4:
    """The determinant of the matrix of second partial derivatives."""
    matrix = sympy.hessian(f.as_polynomial().as_expr(), X)
    determinant = sympy.expand(matrix.det(method="berkowitz"))
    return QuarticForm4.from_polynomial(sympy.Poly(determinant, *X, domain="QQ"))


def pentahedron_vertices() -> list:
    """
    The ten points where three of the five planes X0, X1, X2, X3, X4 = -(X0+X1+X2+X3) meet.
    """
    vertices = []
    for triple in combinations(range(5), 3):
        free = [k for k in range(5) if k not in triple]
        point = [Fraction(0)] * 5
        point[free[0]], point[free[1]] = Fraction(1), Fraction(-1)
        vertices.append(tuple(point[:4]))
    return vertices


def descent_linear_forms(g: UniPoly) -> EtaleLinearForm:
    """
    The linear form whose coefficients span the trace-zero part of A = Q[T]/(g),
    taken from the reduced echelon kernel of the trace vector (1, T, ..., T^4).
    """
    one = EtaleElement.of(g, 1)
    t = EtaleElement.generator(g)
    traces = []
    power = one
    for _ in range(5):
        traces.append(etale_trace(power))
        power = power * t
    kernel = kernel_basis(QMatrix.from_rows([traces], cols=5))
    if len(kernel) != 4:
        logging.error(f"Trace kernel has dimension {len(kernel)}.")
        raise InternalInconsistency(f"The trace-zero subspace has dimension {len(kernel)}, expected 4.")
    return EtaleLinearForm(tuple(EtaleElement(g, UniPoly(tuple(v))) for v in kernel))


def galois_descent(g: UniPoly) -> CubicForm4:
    """
    Descends the pentahedral surface whose coefficients are the roots of g to Q.

    With l = C0 X0 + ... + C3 X3 over A = Q[T]/(g), the coefficient of each
    monomial is the trace of the corresponding coefficient of T * l^3.

    Parameters:
    ----------
    g : UniPoly
        A monic separable quintic.

    Returns:
    -------
    CubicForm4
        Twenty rational coefficients (not normalised).
    """
    if g.degree != 5 or g.leading != 1:
        raise InputError(f"Galois descent needs a monic quintic, got {g}.")
    if poly_gcd(g, g.derivative()).degree > 0:
        logging.error(f"{g} has a multiple zero.")
        raise MultipleZeroes(f"The quintic {g} has a multiple zero.", witness=g.to_json())
    form = descent_linear_forms(g)
    t = EtaleElement.generator(g)
    coeffs = []
    for alpha in CubicForm4.monomials():
        term = t * multinomial(alpha)
        for c, a in zip(form.coefficients, alpha):
            if a:
                term = term * c**a
        coeffs.append(etale_trace(term))
    return CubicForm4(tuple(coeffs))


def split_substitution(g: UniPoly, roots: Sequence[Fraction]) -> CubicForm4:
    """
    The explicit form sum of r * l_r^3 over the five rational roots r of a split g,
    where l_r is the descent linear form specialised at T = r.
    """
    if len(set(roots)) != 5 or any(g.evaluate(Fraction(r)) != 0 for r in roots):
        raise InputError("Expected the five distinct rational roots of g.")
    form = descent_linear_forms(g)
    total = sympy.Integer(0)
    for r in roots:
        linear = sympy.Add(*(_to_sympy(c) * x for c, x in zip(form.specialize(r), X)))
        total += _to_sympy(r) * linear**3
    return CubicForm4.from_polynomial(sympy.Poly(sympy.expand(total), *X, domain="QQ"))


@dataclass(frozen=True)
class EquationSolution:
    clebsch: ClebschVector
    sigma: SigmaVector
    quintic: UniPoly
    surface: CubicForm4

    def to_json(self) -> dict:
        return {
            "clebsch": self.clebsch.to_json(),
            "sigma": self.sigma.to_json(),
            "quintic": self.quintic.to_json(),
            "surface": self.surface.to_json(),
        }


def solve_equation_problem(v: ClebschVector) -> EquationSolution:
    """A rational cubic surface with Clebsch invariants v, together with the sigma read back from it."""
    g = quintic_from_sigma(sigma_from_clebsch(v))
    logging.info(f"Pentahedral quintic {g}.")
    surface = galois_descent(g).normalized()
    return EquationSolution(v, sigma_from_quintic(g), g, surface)


def equation_problem(v: ClebschVector) -> CubicForm4:
    return solve_equation_problem(v).surface
