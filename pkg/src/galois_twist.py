import logging
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence

import numpy as np
import sympy
from sympy import factorint, primitive_root

from src.clebsch_inv import clebsch_from_power_sums
from src.coble_gamma import GammaRelations, GammaVector, PowerSums, gamma_relations
from src.errors import (
    DescentDimensionMismatch,
    InputError,
    InternalInconsistency,
    InvalidFieldData,
    MathematicalFailure,
    NotFoundWithinBound,
    NotOnVariety,
    RelationTransportError,
)
from src.exact_arith import (
    EtaleElement,
    IntLattice,
    QMatrix,
    UniPoly,
    etale_trace,
    lll_reduce,
    poly_gcd,
    primitive_integer_vector,
)
from src.point_search import BoxPointSearch, PointSearcher, evaluate_cubics_exact
from src.relation_solver import default_solver
from src.settings import get_settings
from src.surface_builder import EquationSolution, solve_equation_problem
from src.weyl_e6 import WE6Element, gamma_action

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

DIMENSION = 10
CUBIC_MONOMIALS = tuple(combinations_with_replacement(range(DIMENSION), 3))
CUBIC_ORDER_TAG = "cwr-q0..q9-v1"


# ---------------------------------------------------------------------------
# Field data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaloisFieldData:
    """
    A Galois number field L = Q[T]/(f) given by its modulus and generators of
    its automorphism group, each as the image polynomial of T.

    ``order_basis`` optionally lists d polynomials spanning an order of L;
    without it the power basis 1, T, ..., T^(d-1) is used.
    """

    modulus: UniPoly
    automorphisms: tuple
    order_basis: Optional[tuple] = None

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def element(self, value) -> EtaleElement:
        return EtaleElement.of(self.modulus, value)

    def apply(self, automorphism: UniPoly, x: EtaleElement) -> EtaleElement:
        """The image of x under T -> automorphism(T)."""
        return self.element(x.residue.evaluate(self.element(automorphism)))

    def automorphism_matrix(self, automorphism: UniPoly) -> QMatrix:
        """Matrix of the automorphism on the power basis (column t is the image of T^t)."""
        d = self.degree
        image = self.element(automorphism)
        columns = []
        power = self.element(1)
        for _ in range(d):
            columns.append(power.coordinates())
            power = power * image
        return QMatrix.from_rows([[columns[j][i] for j in range(d)] for i in range(d)], cols=d)

    def basis_polynomials(self) -> tuple:
        if self.order_basis is not None:
            return self.order_basis
        return tuple(UniPoly.variable() ** k for k in range(self.degree))

    def basis_matrix(self) -> QMatrix:
        """Columns are the power basis coordinates of the order basis."""
        d = self.degree
        columns = [self.element(p).coordinates() for p in self.basis_polynomials()]
        return QMatrix.from_rows([[columns[j][i] for j in range(d)] for i in range(d)], cols=d)

    def from_basis_coordinates(self, coordinates: Sequence[Fraction]) -> EtaleElement:
        total = self.element(0)
        for c, p in zip(coordinates, self.basis_polynomials()):
            if c:
                total = total + self.element(p) * Fraction(c)
        return total

    def group_elements(self) -> list:
        """The automorphism polynomials of the generated group, identity first."""
        identity = self.element(UniPoly.variable()).residue
        seen = [identity]
        queue = deque([identity])
        while queue:
            current = queue.popleft()
            for generator in self.automorphisms:
                composed = generator.compose(current) % self.modulus
                if composed not in seen:
                    seen.append(composed)
                    queue.append(composed)
                    if len(seen) > self.degree:
                        return seen
        return seen

    def validate(self) -> "GaloisFieldData":
        d = self.degree
        if d < 1 or self.modulus.leading != 1:
            raise InvalidFieldData(f"The modulus {self.modulus} must be monic of positive degree.")
        if poly_gcd(self.modulus, self.modulus.derivative()).degree > 0:
            raise InvalidFieldData(f"The modulus {self.modulus} is not squarefree.")
        for a in self.automorphisms:
            if not (self.modulus.compose(a) % self.modulus).is_zero():
                logging.error(f"{a} does not map T to a root of the modulus.")
                raise InvalidFieldData(f"T -> {a} is not an automorphism of Q[T]/({self.modulus}).", witness=a.to_json())
        order = len(self.group_elements())
        if order != d:
            logging.error(f"The automorphisms generate {order} elements for degree {d}.")
            raise InvalidFieldData(f"The automorphisms generate a group of order {order}, the field has degree {d}.", witness=order)
        if self.order_basis is not None:
            if len(self.order_basis) != d or self.basis_matrix().rank() != d:
                raise InvalidFieldData("The order basis must consist of d independent elements.")
        return self

    def to_json(self) -> dict:
        document = {
            "modulus": self.modulus.to_json(),
            "automorphisms": [a.to_json() for a in self.automorphisms],
        }
        if self.order_basis is not None:
            document["order_basis"] = [p.to_json() for p in self.order_basis]
        return document

    @classmethod
    def from_json(cls, document: dict) -> "GaloisFieldData":
        order_basis = document.get("order_basis")
        return cls(
            UniPoly.from_json(document["modulus"]),
            tuple(UniPoly.from_json(a) for a in document.get("automorphisms", [])),
            None if order_basis is None else tuple(UniPoly.from_json(p) for p in order_basis),
        )


def trivial_field() -> GaloisFieldData:
    """L = Q, written as Q[T]/(T)."""
    return GaloisFieldData(UniPoly.variable(), ())


def quadratic_field(d: int) -> GaloisFieldData:
    """Q(sqrt d) = Q[T]/(T^2 - d) with the automorphism T -> -T."""
    if d == 0:
        raise InputError("Q(sqrt 0) is not a field.")
    return GaloisFieldData(UniPoly((Fraction(-d), Fraction(0), Fraction(1))), (UniPoly((Fraction(0), Fraction(-1))),))


def _dickson(k: int) -> UniPoly:
    """D_k with D_k(z + 1/z) = z^k + z^-k."""
    previous, current = UniPoly.constant(2), UniPoly.variable()
    if k == 0:
        return previous
    for _ in range(k - 1):
        previous, current = current, UniPoly.variable() * current - previous
    return current


def real_cyclotomic_field(p: int) -> GaloisFieldData:
    """
    The maximal real subfield of the p-th cyclotomic field, generated by 2 cos(2 pi / p).

    Parameters:
    ----------
    p : int
        An odd prime, at least 5.

    Returns:
    -------
    GaloisFieldData
        A cyclic field of degree (p - 1)/2 with the automorphism induced by a
        primitive root g modulo p, i.e. T -> D_g(T).
    """
    if p < 5 or not sympy.isprime(p):
        raise InputError(f"Expected an odd prime at least 5, got {p}.")
    n = (p - 1) // 2
    roots = 2 * np.cos(2 * np.pi * np.arange(1, n + 1) / p)
    coefficients = [int(round(c)) for c in np.real(np.poly(roots))][::-1]
    modulus = UniPoly(tuple(Fraction(c) for c in coefficients))
    # T^n psi(T + 1/T) must be the p-th cyclotomic polynomial
    t = UniPoly.variable()
    lifted = UniPoly()
    for k, c in enumerate(modulus.coeffs):
        lifted = lifted + (t * t + 1) ** k * t ** (n - k) * c
    if lifted != UniPoly(tuple(Fraction(1) for _ in range(p))):
        logging.error(f"Rounded minimal polynomial for p = {p} failed the exact check.")
        raise InternalInconsistency(f"Could not determine the real cyclotomic polynomial for p = {p}.")
    generator = _dickson(int(primitive_root(p))) % modulus
    return GaloisFieldData(modulus, (generator,))


def cyclic_embedding_pretest(d: int, target_degree: int) -> bool:
    """
    Necessary conditions for Q(sqrt d) to embed into a cyclic field of degree 4 or 8.

    Degree 4 needs D > 0 and no prime p = 3 mod 4 dividing the squarefree part D;
    degree 8 additionally excludes primes p = 5 mod 8.
    """
    if d == 0:
        raise InputError("d must be nonzero.")
    if target_degree not in (4, 8):
        raise InputError(f"The target degree must be 4 or 8, got {target_degree}.")
    if d < 0:
        return False
    primes = [p for p, e in factorint(d).items() if e % 2 == 1]
    if any(p % 4 == 3 for p in primes):
        return False
    if target_degree == 8 and any(p % 8 == 5 for p in primes):
        return False
    return True


# ---------------------------------------------------------------------------
# Homomorphisms to W(E6)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RhoAssignment:
    """The images in W(E6) of the automorphism generators, in the same order."""

    images: tuple

    def to_json(self) -> list:
        return [g.to_json() for g in self.images]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "RhoAssignment":
        return cls(tuple(WE6Element.from_json(images) for images in data))


def rho_is_homomorphism(field_data: GaloisFieldData, rho: RhoAssignment) -> bool:
    """Checks that the generator images extend consistently over the whole automorphism group."""
    if len(rho.images) != len(field_data.automorphisms):
        return False
    identity = field_data.element(UniPoly.variable()).residue
    assigned = {identity: WE6Element.identity()}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for generator, image in zip(field_data.automorphisms, rho.images):
            composed = generator.compose(current) % field_data.modulus
            value = assigned[current] * image
            if composed in assigned:
                if assigned[composed] != value:
                    logging.warning("The generator images do not define a homomorphism.")
                    return False
            else:
                assigned[composed] = value
                queue.append(composed)
    return True


# ---------------------------------------------------------------------------
# Twisted models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistedModel:
    """
    The rational structure V of the twisted invariant variety.

    ``basis`` holds ten integer vectors of length 10 d: entry k d + u is the
    u-th order basis coordinate of the k-th basis gamma coordinate. ``cubics``
    are integer cubic forms in the ten V-coordinates, empty until restricted.
    """

    field_data: GaloisFieldData
    rho: RhoAssignment
    relation_seed: int
    relation_samples: int
    basis: tuple
    cubics: tuple = ()
    provenance: dict = field(default_factory=dict, compare=False)

    @property
    def relations(self) -> GammaRelations:
        return gamma_relations(self.relation_seed, self.relation_samples)

    def basis_elements(self) -> list:
        """The basis vectors as ten-tuples of field elements."""
        d = self.field_data.degree
        return [
            [self.field_data.from_basis_coordinates(vector[k * d : (k + 1) * d]) for k in range(DIMENSION)]
            for vector in self.basis
        ]

    def coordinates_of(self, q: Sequence[Fraction]) -> list:
        """The ten basis gamma coordinates (in L) of the V-point q."""
        elements = self.basis_elements()
        result = []
        for k in range(DIMENSION):
            total = self.field_data.element(0)
            for m, value in enumerate(q):
                if value:
                    total = total + elements[m][k] * Fraction(value)
            result.append(total)
        return result

    def gammas(self, q: Sequence[Fraction]) -> list:
        """The 40 invariants (in L) of the V-point q."""
        return [self.field_data.element(v) for v in self.relations.expand(self.coordinates_of(q))]

    def evaluate_cubics(self, point: Sequence[int]) -> list:
        return evaluate_cubics_exact(self.cubics, point)

    def to_json(self) -> dict:
        return {
            "field": self.field_data.to_json(),
            "rho": self.rho.to_json(),
            "relation_seed": self.relation_seed,
            "relation_samples": self.relation_samples,
            "basis": [list(v) for v in self.basis],
            "cubic_order": CUBIC_ORDER_TAG,
            "cubics": [list(c) for c in self.cubics],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, document: dict) -> "TwistedModel":
        if document.get("cubic_order", CUBIC_ORDER_TAG) != CUBIC_ORDER_TAG:
            raise InputError(f"Unsupported cubic monomial order {document['cubic_order']!r}.")
        return cls(
            field_data=GaloisFieldData.from_json(document["field"]),
            rho=RhoAssignment.from_json(document["rho"]),
            relation_seed=int(document["relation_seed"]),
            relation_samples=int(document["relation_samples"]),
            basis=tuple(tuple(int(v) for v in vector) for vector in document["basis"]),
            cubics=tuple(tuple(int(c) for c in cubic) for cubic in document.get("cubics", [])),
            provenance=dict(document.get("provenance", {})),
        )


def build_descent_space(
    field_data: GaloisFieldData,
    rho: RhoAssignment,
    relations: Optional[GammaRelations] = None,
) -> TwistedModel:
    """
    Solves the descent condition P_sigma(sigma(x)) = x for every generator sigma.

    The 40 invariants are written as x = L beta in the ten basis coordinates
    beta in L^10, and beta is expanded in the order basis of L, giving 10 d
    rational unknowns and 40 d equations per generator.

    Parameters:
    ----------
    field_data : GaloisFieldData
        The validated field.
    rho : RhoAssignment
        Images of the generators in W(E6).
    relations : GammaRelations, optional
        Seeded relation data; taken from the settings when omitted.

    Returns:
    -------
    TwistedModel
        The model with a basis of the ten-dimensional rational solution space.
    """
    if relations is None:
        settings = get_settings()
        relations = gamma_relations(settings.seed, settings.relation_samples)
    field_data.validate()
    homomorphism = rho_is_homomorphism(field_data, rho)
    if not homomorphism:
        logging.error("rho is not a homomorphism on the automorphism group.")

    d = field_data.degree
    ncols = DIMENSION * d
    expressions = relations.expressions
    change = field_data.basis_matrix()
    rows = []
    for automorphism, image in zip(field_data.automorphisms, rho.images):
        action = gamma_action(image)
        source = [0] * 40
        for j, target in enumerate(action.perm40):
            source[target] = j
        # coefficients of beta coordinates in sigma(x) and x, in the power basis
        sigma_matrix = field_data.automorphism_matrix(automorphism) @ change
        for i in range(40):
            sign = action.signs[i]
            for t in range(d):
                row = [Fraction(0)] * ncols
                for k in range(DIMENSION):
                    moved = sign * expressions[source[i], k]
                    fixed = expressions[i, k]
                    for u in range(d):
                        value = moved * sigma_matrix[t, u] - fixed * change[t, u]
                        if value:
                            row[k * d + u] = value
                if any(row):
                    rows.append(row)
    logging.info(f"Descent system with {len(rows)} equations in {ncols} unknowns.")
    rank, kernel = default_solver(ncols, get_settings().modular_primes).solve(rows, ncols)
    if len(kernel) != DIMENSION or not homomorphism:
        logging.error(f"Descent space has dimension {len(kernel)}.")
        raise DescentDimensionMismatch(
            f"The descent space has dimension {len(kernel)}, expected {DIMENSION}.",
            witness={"dimension": len(kernel), "homomorphism": homomorphism},
        )
    return TwistedModel(
        field_data=field_data,
        rho=rho,
        relation_seed=relations.seed,
        relation_samples=relations.sample_count,
        basis=tuple(tuple(v) for v in kernel),
        provenance={"relation_digest": relations.digest, "descent_rank": rank},
    )


def check_descent_condition(model: TwistedModel) -> bool:
    """Every basis vector satisfies P_sigma(sigma(x)) = x for every generator, exactly."""
    relations = model.relations
    for automorphism, image in zip(model.field_data.automorphisms, model.rho.images):
        action = gamma_action(image)
        for vector in model.basis_elements():
            x = [model.field_data.element(v) for v in relations.expand(vector)]
            conjugated = [model.field_data.apply(automorphism, v) for v in x]
            if action.apply(conjugated) != x:
                return False
    return True


def _trace_gram(field_data: GaloisFieldData, precision_bits: int) -> QMatrix:
    """The quadratic form sum over embeddings |phi(y)|^2 on the order basis coordinates."""
    d = field_data.degree
    polynomial = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(field_data.modulus.coeffs)], sympy.Symbol("T"))
    if polynomial.count_roots() == d:
        t = field_data.element(UniPoly.variable())
        powers = [field_data.element(1)]
        for _ in range(2 * d - 2):
            powers.append(powers[-1] * t)
        power_gram = QMatrix.from_rows([[etale_trace(powers[s + u]) for u in range(d)] for s in range(d)], cols=d)
    else:
        roots = np.roots([float(c) for c in reversed(field_data.modulus.coeffs)])
        vandermonde = roots[:, None] ** np.arange(d)[None, :]
        approximate = np.real(vandermonde.T @ np.conj(vandermonde))
        scale = 2**precision_bits
        power_gram = QMatrix.from_rows([[Fraction(int(round(v * scale)), scale) for v in row] for row in approximate], cols=d)
    change = field_data.basis_matrix()
    return change.transpose() @ power_gram @ change


def _block_diagonal(block: QMatrix, copies: int) -> QMatrix:
    d = block.rows
    rows = []
    for k in range(copies):
        for i in range(d):
            row = [Fraction(0)] * (d * copies)
            row[k * d : (k + 1) * d] = block.row(i)
            rows.append(row)
    return QMatrix.from_rows(rows, cols=d * copies)


def reduce_basis(model: TwistedModel) -> TwistedModel:
    """
    LLL-reduces the basis of V under the Minkowski form of L.

    The form is exact for totally real fields and a fixed-precision rounding
    otherwise. The old basis is kept when the maximal norm does not decrease.
    """
    settings = get_settings()
    gram = _block_diagonal(_trace_gram(model.field_data, settings.minkowski_precision_bits), DIMENSION)
    lattice = IntLattice(model.basis, gram)
    reduced = lll_reduce(lattice, settings.delta)
    before, after = max(lattice.norms()), max(reduced.norms())
    if after >= before:
        logging.info("LLL did not shorten the basis; keeping it.")
        return model
    logging.info(f"LLL reduced the maximal norm from {float(before):.4g} to {float(after):.4g}.")
    updated = replace(model, basis=tuple(primitive_integer_vector(v) for v in reduced.basis))
    return restrict_cubics(updated) if model.cubics else updated


def _multiply_forms(left: dict, right: dict) -> dict:
    product = {}
    for key_a, value_a in left.items():
        for key_b, value_b in right.items():
            key = tuple(sorted(key_a + key_b))
            term = value_a * value_b
            product[key] = product[key] + term if key in product else term
    return product


def restrict_cubics(model: TwistedModel) -> TwistedModel:
    """
    The 30 cubic relations written in the V-coordinates with rational coefficients.

    Each relation R(beta) with beta = sum q_m B_m becomes a cubic in q with
    coefficients in L. Their L-span is defined over Q, so the rational
    components of all of them span exactly 30 dimensions; the reduced echelon
    basis of that span is returned.
    """
    relations = model.relations
    elements = model.basis_elements()
    linear = [{(m,): elements[m][k] for m in range(DIMENSION) if not elements[m][k].is_zero()} for k in range(DIMENSION)]
    quadratic = {}
    for i in range(DIMENSION):
        for j in range(i, DIMENSION):
            quadratic[(i, j)] = _multiply_forms(linear[i], linear[j])
    cubic = {(i, j, k): _multiply_forms(quadratic[(i, j)], linear[k]) for i, j, k in CUBIC_MONOMIALS}

    d = model.field_data.degree
    position = {mono: n for n, mono in enumerate(CUBIC_MONOMIALS)}
    rows = []
    for relation in relations.cubic_relations:
        transported = {}
        for coefficient, mono in zip(relation, CUBIC_MONOMIALS):
            if not coefficient:
                continue
            for key, value in cubic[mono].items():
                term = value * coefficient
                transported[key] = transported[key] + term if key in transported else term
        components = [[Fraction(0)] * len(CUBIC_MONOMIALS) for _ in range(d)]
        for key, value in transported.items():
            for t, c in enumerate(value.coordinates()):
                components[t][position[key]] = c
        rows.extend(row for row in components if any(row))

    reduced, pivots = QMatrix.from_rows(rows, cols=len(CUBIC_MONOMIALS)).rref()
    if len(pivots) != len(relations.cubic_relations):
        logging.error(f"Transported relations span {len(pivots)} rational dimensions.")
        raise RelationTransportError(
            f"The transported cubic relations span {len(pivots)} rational dimensions, expected {len(relations.cubic_relations)}.",
            witness=len(pivots),
        )
    cubics = tuple(primitive_integer_vector(reduced.row(i)) for i in range(len(pivots)))
    logging.info(f"Restricted {len(cubics)} cubic relations to V.")
    return replace(model, cubics=cubics)


def transport_gammas(model: TwistedModel, gamma: GammaVector) -> tuple:
    """
    The V-coordinates of a rational invariant vector, when it lies in V.

    Raises NotOnVariety when the projected basis coordinates are not a rational
    combination of the basis of V.
    """
    d = model.field_data.degree
    target = []
    for value in model.relations.project(gamma):
        target.extend([Fraction(value)] + [Fraction(0)] * (d - 1))
    change = model.field_data.basis_matrix()
    target_coordinates = []
    for k in range(DIMENSION):
        solution = change.solve(target[k * d : (k + 1) * d])
        target_coordinates.extend(solution)
    system = QMatrix.from_rows([[model.basis[m][r] for m in range(DIMENSION)] for r in range(DIMENSION * d)], cols=DIMENSION)
    q = system.solve(target_coordinates)
    if q is None:
        logging.error("The invariant vector is not a rational point of V.")
        raise NotOnVariety("The invariant vector does not lie in the rational structure V.")
    return q


def rebase_on_points(model: TwistedModel, points: Sequence[Sequence[Fraction]]) -> TwistedModel:
    """
    Changes the basis of V so that the given independent points become the first unit vectors.

    The remaining basis vectors are the old ones, taken in order whenever they
    keep the new basis independent.
    """
    chosen = [primitive_integer_vector(p) for p in points]
    if QMatrix.from_rows(chosen, cols=DIMENSION).rank() != len(chosen):
        raise InputError("The anchor points are linearly dependent.")
    for k in range(DIMENSION):
        if len(chosen) == DIMENSION:
            break
        unit = tuple(1 if j == k else 0 for j in range(DIMENSION))
        if QMatrix.from_rows(chosen + [unit], cols=DIMENSION).rank() == len(chosen) + 1:
            chosen.append(unit)
    new_basis = tuple(
        tuple(sum(c[m] * model.basis[m][r] for m in range(DIMENSION)) for r in range(len(model.basis[0])))
        for c in chosen
    )
    updated = replace(model, basis=new_basis)
    logging.info(f"Rebased V on {len(points)} anchor points.")
    return restrict_cubics(updated) if model.cubics else updated


def point_search(model: TwistedModel, height_bound: int, workers: Optional[int] = None) -> list:
    """All primitive integer zeros of the restricted cubics in the box of the given height."""
    if not model.cubics:
        raise InputError("Restrict the cubic relations before searching for points.")
    searcher = PointSearcher(BoxPointSearch(workers=workers or get_settings().workers))
    return searcher.search(model.cubics, height_bound)


def recover_surface(model: TwistedModel, point: Sequence[int]) -> EquationSolution:
    """
    The Clebsch invariants and a rational cubic surface from a point of V.

    Raises InternalInconsistency when the power sums of the transported
    invariants are not rational, and the equation problem failures
    (NoProperPentahedron, MultipleZeroes) when they occur.
    """
    gammas = model.gammas([Fraction(v) for v in point])
    squares = [g * g for g in gammas]
    powers = list(squares)
    sums = []
    for _ in range(5):
        total = model.field_data.element(0)
        for p in powers:
            total = total + p
        if not total.is_rational():
            logging.error("Power sum of transported invariants is irrational.")
            raise InternalInconsistency("A power sum of the transported invariants is not rational.", witness=list(point))
        sums.append(total.rational_value())
        powers = [p * s for p, s in zip(powers, squares)]
    clebsch = clebsch_from_power_sums(PowerSums(*sums))
    return solve_equation_problem(clebsch)


@dataclass
class TwistResult:
    model: TwistedModel
    points: list
    successes: list
    failures: list

    def require_success(self) -> None:
        if not self.successes:
            logging.error(f"No usable point among {len(self.points)} candidates.")
            raise NotFoundWithinBound(
                f"No candidate among {len(self.points)} points yields a surface.",
                witness={"candidates": len(self.points), "failures": self.failures},
            )

    def to_json(self) -> dict:
        return {
            "descent_dimension": len(self.model.basis),
            "cubic_count": len(self.model.cubics),
            "relation_digest": self.model.provenance.get("relation_digest"),
            "points": [list(p) for p in self.points],
            "successes": self.successes,
            "failures": self.failures,
        }

    @classmethod
    def from_json(cls, model: dict, document: dict) -> "TwistResult":
        return cls(
            TwistedModel.from_json(model),
            [tuple(int(v) for v in p) for p in document["points"]],
            list(document["successes"]),
            list(document["failures"]),
        )


def try_candidates(model: TwistedModel, points: Sequence[Sequence[int]], all_points: bool = False) -> TwistResult:
    """
    Tries surface recovery on the points in order, recording every failure.

    Stops at the first success unless ``all_points`` is set.
    """
    successes, failures = [], []
    for index, point in enumerate(points):
        logging.info(f"Testing candidate {index + 1}/{len(points)}: {list(point)}.")
        try:
            solution = recover_surface(model, point)
        except MathematicalFailure as failure:
            failures.append({"point": list(point), **failure.to_json()})
            continue
        successes.append({"point": list(point), **solution.to_json()})
        if not all_points:
            break
    return TwistResult(model, [tuple(p) for p in points], successes, failures)


def run_twist_job(
    field_data: GaloisFieldData,
    rho: RhoAssignment,
    bound: int,
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    anchors: Sequence[GammaVector] = (),
    workers: Optional[int] = None,
    all_points: bool = False,
) -> TwistResult:
    """
    Descent space, basis reduction, cubic restriction, point search and surface recovery.

    Candidates are tried in lexicographic order; every failure is recorded and
    the search stops at the first success unless ``all_points`` is set.
    """
    settings = get_settings()
    relations = gamma_relations(settings.seed if seed is None else seed, samples or settings.relation_samples)
    model = reduce_basis(build_descent_space(field_data, rho, relations))
    if anchors:
        model = rebase_on_points(model, [transport_gammas(model, g) for g in anchors])
    model = restrict_cubics(model)
    return try_candidates(model, point_search(model, bound, workers), all_points)
