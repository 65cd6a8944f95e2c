import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from src.errors import DegenerateAlgebra, InputError, NotABasis

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

RationalLike = Union[int, Fraction, str]


def parse_rational(value: RationalLike) -> Fraction:
    """
    Parses a rational number from its serialized form.

    Parameters:
    ----------
    value : int, Fraction or str
        Either a number or a string of the form "p/q" or "p".

    Returns:
    -------
    Fraction
        The value in lowest terms.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"Rationals must be given exactly, got {value!r}.")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"Cannot parse {value!r} as a rational number.") from exc


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """
    A univariate polynomial over Q, coefficients stored lowest degree first.

    Trailing zero coefficients are stripped on construction, so equality of two
    polynomials is equality of their coefficient tuples.
    """

    coeffs: tuple = ()

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def variable(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, value: RationalLike) -> "UniPoly":
        return cls((Fraction(value),))

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike]) -> "UniPoly":
        result = cls.constant(1)
        for root in roots:
            result = result * cls((-Fraction(root), 1))
        return result

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    @staticmethod
    def _lift(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.constant(other)
        return NotImplemented

    def __add__(self, other) -> "UniPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        size = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UniPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        return (-self) + other

    def __mul__(self, other) -> "UniPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return UniPoly()
        product = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return UniPoly(tuple(product))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        if exponent < 0:
            raise ValueError("Negative powers of polynomials are not polynomials.")
        result = UniPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, divisor: "UniPoly") -> tuple:
        if divisor.is_zero():
            raise ZeroDivisionError("Polynomial division by zero.")
        remainder = list(self.coeffs)
        quotient = [Fraction(0)] * max(len(remainder) - divisor.degree, 1)
        lead = divisor.leading
        while len(remainder) - 1 >= divisor.degree and remainder:
            shift = len(remainder) - 1 - divisor.degree
            factor = remainder[-1] / lead
            quotient[shift] = factor
            for k, c in enumerate(divisor.coeffs):
                remainder[shift + k] -= factor * c
            # the leading term cancels exactly
            remainder.pop()
            while remainder and remainder[-1] == 0:
                remainder.pop()
        return UniPoly(tuple(quotient)), UniPoly(tuple(remainder))

    def __mod__(self, divisor: "UniPoly") -> "UniPoly":
        return divmod(self, divisor)[1]

    def __floordiv__(self, divisor: "UniPoly") -> "UniPoly":
        return divmod(self, divisor)[0]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def evaluate(self, x):
        """Horner evaluation; ``x`` may be a rational, a polynomial or an etale element."""
        result = None
        for c in reversed(self.coeffs):
            result = c if result is None else result * x + c
        return Fraction(0) if result is None else result

    def compose(self, inner: "UniPoly") -> "UniPoly":
        return self._lift(self.evaluate(inner))

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[RationalLike]) -> "UniPoly":
        return cls(tuple(parse_rational(c) for c in data))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            monomial = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            if monomial and abs(c) == 1:
                text = monomial
            else:
                text = f"{abs(c)}" + (f"*{monomial}" if monomial else "")
            terms.append(("-" if c < 0 else "+", text))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, text in terms[1:]:
            out += f" {sign} {text}"
        return out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """
    Monic greatest common divisor of two polynomials (Euclidean algorithm).

    Parameters:
    ----------
    a, b : UniPoly
        Polynomials, not both zero.

    Returns:
    -------
    UniPoly
        The monic gcd.
    """
    if a.is_zero() and b.is_zero():
        logging.error("poly_gcd called with two zero polynomials.")
        raise InputError("The gcd of two zero polynomials is undefined.")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# ---------------------------------------------------------------------------
# Etale algebras K[T]/(g)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _ensure_squarefree(modulus: UniPoly) -> bool:
    if poly_gcd(modulus, modulus.derivative()).degree > 0:
        logging.error(f"Modulus {modulus} is not squarefree.")
        raise DegenerateAlgebra(f"The modulus {modulus} is not squarefree.")
    return True


@lru_cache(maxsize=256)
def _power_basis_traces(modulus: UniPoly) -> tuple:
    # trace of multiplication by T^k is the sum of the diagonal entries
    # coefficient_i(T^(k+i) mod g), for k < deg g
    d = modulus.degree
    powers = [UniPoly.constant(1)]
    variable = UniPoly.variable()
    for _ in range(2 * d - 1):
        powers.append((powers[-1] * variable) % modulus)
    return tuple(sum((powers[k + i].coefficient(i) for i in range(d)), Fraction(0)) for k in range(d))


@dataclass(frozen=True)
class EtaleElement:
    """
    An element of the etale algebra A = Q[T]/(modulus).

    The residue is reduced on construction; two elements combine only when
    their moduli are equal.
    """

    modulus: UniPoly
    residue: UniPoly

    def __post_init__(self) -> None:
        if self.modulus.degree < 1 or self.modulus.leading != 1:
            raise InputError(f"The modulus {self.modulus} must be monic of positive degree.")
        if self.residue.degree >= self.modulus.degree:
            object.__setattr__(self, "residue", self.residue % self.modulus)

    @classmethod
    def of(cls, modulus: UniPoly, value) -> "EtaleElement":
        if isinstance(value, EtaleElement):
            return value
        if isinstance(value, UniPoly):
            return cls(modulus, value)
        if isinstance(value, (list, tuple)):
            return cls(modulus, UniPoly(tuple(value)))
        return cls(modulus, UniPoly.constant(value))

    @classmethod
    def generator(cls, modulus: UniPoly) -> "EtaleElement":
        return cls(modulus, UniPoly.variable())

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def coordinates(self) -> tuple:
        return tuple(self.residue.coefficient(k) for k in range(self.degree))

    def _coerce(self, other) -> "EtaleElement":
        if isinstance(other, EtaleElement):
            if other.modulus != self.modulus:
                raise ValueError("Etale elements with different moduli cannot be combined.")
            return other
        if isinstance(other, (int, Fraction)):
            return EtaleElement(self.modulus, UniPoly.constant(other))
        return NotImplemented

    def __add__(self, other) -> "EtaleElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return EtaleElement(self.modulus, self.residue + other.residue)

    __radd__ = __add__

    def __neg__(self) -> "EtaleElement":
        return EtaleElement(self.modulus, -self.residue)

    def __sub__(self, other) -> "EtaleElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return EtaleElement(self.modulus, self.residue - other.residue)

    def __rsub__(self, other) -> "EtaleElement":
        return (-self) + other

    def __mul__(self, other) -> "EtaleElement":
        if isinstance(other, (int, Fraction)):
            return EtaleElement(self.modulus, self.residue * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return EtaleElement(self.modulus, (self.residue * other.residue) % self.modulus)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "EtaleElement":
        if exponent < 0:
            raise ValueError("Only non-negative powers are supported.")
        result = EtaleElement(self.modulus, UniPoly.constant(1))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return self.residue.is_zero()

    def is_rational(self) -> bool:
        return self.residue.degree <= 0

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self.residue} is not a rational element.")
        return self.residue.coefficient(0)

    def multiplication_matrix(self) -> "QMatrix":
        d = self.degree
        columns = []
        basis = EtaleElement(self.modulus, UniPoly.constant(1))
        for _ in range(d):
            columns.append((self * basis).coordinates())
            basis = basis * EtaleElement.generator(self.modulus)
        return QMatrix.from_rows([[columns[j][i] for j in range(d)] for i in range(d)])

    def trace(self) -> Fraction:
        return etale_trace(self)


def etale_trace(x: EtaleElement) -> Fraction:
    """
    Trace of multiplication by ``x`` on A = Q[T]/(g), in the power basis.

    Parameters:
    ----------
    x : EtaleElement
        An element of an etale algebra with squarefree modulus.

    Returns:
    -------
    Fraction
        The trace tr_{A/Q}(x).
    """
    _ensure_squarefree(x.modulus)
    traces = _power_basis_traces(x.modulus)
    return sum((c * t for c, t in zip(x.coordinates(), traces)), Fraction(0))


# ---------------------------------------------------------------------------
# Dense exact linear algebra
# ---------------------------------------------------------------------------


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list:
    # row scaling preserves the row space, so every row is cleared separately
    cleared = []
    for row in rows:
        denominator = 1
        for value in row:
            denominator = math.lcm(denominator, Fraction(value).denominator)
        cleared.append([int(Fraction(value) * denominator) for value in row])
    return cleared


def _bareiss_echelon(rows: list, ncols: int) -> tuple:
    """Fraction-free row echelon form. Returns (nonzero rows, pivot columns, swap count)."""
    m = [list(row) for row in rows]
    nrows = len(m)
    pivots = []
    previous = 1
    swaps = 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            m[r], m[pivot] = m[pivot], m[r]
            swaps += 1
        pivot_row = m[r]
        a = pivot_row[c]
        for i in range(r + 1, nrows):
            row = m[i]
            b = row[c]
            m[i] = [0] * (c + 1) + [(a * row[j] - b * pivot_row[j]) // previous for j in range(c + 1, ncols)]
        previous = a
        pivots.append(c)
        r += 1
    return m[:r], pivots, swaps


@dataclass(frozen=True)
class QMatrix:
    """A dense rational matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise InputError(f"Expected {self.rows * self.cols} entries, got {len(self.entries)}.")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]], cols: Optional[int] = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise InputError("All rows of a matrix must have the same length.")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    def __getitem__(self, index: tuple) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("Matrix shapes do not match.")
            other_columns = [other.column(j) for j in range(other.cols)]
            return QMatrix.from_rows(
                [[sum((a * b for a, b in zip(self.row(i), col)), Fraction(0)) for col in other_columns] for i in range(self.rows)],
                cols=other.cols,
            )
        vector = list(other)
        if len(vector) != self.cols:
            raise ValueError("Vector length does not match the matrix.")
        return tuple(sum((a * b for a, b in zip(self.row(i), vector)), Fraction(0)) for i in range(self.rows))

    def rref(self) -> tuple:
        """
        Reduced row echelon form by Bareiss elimination and rational back substitution.

        Returns:
        -------
        tuple[QMatrix, tuple[int, ...]]
            The nonzero rows of the reduced echelon form and the pivot columns.
            The pivot columns are the lexicographically first independent columns.
        """
        echelon, pivots, _ = _bareiss_echelon(_integer_rows(self.to_rows()), self.cols)
        reduced = []
        for row in echelon:
            content = 0
            for value in row:
                content = math.gcd(content, value)
            reduced.append([Fraction(value // content) for value in row])
        for i in reversed(range(len(reduced))):
            p = pivots[i]
            pivot = reduced[i][p]
            reduced[i] = [value / pivot for value in reduced[i]]
            for k in range(i):
                factor = reduced[k][p]
                if factor:
                    reduced[k] = [a - factor * b for a, b in zip(reduced[k], reduced[i])]
        return QMatrix.from_rows(reduced, cols=self.cols), tuple(pivots)

    def rank(self) -> int:
        return len(_bareiss_echelon(_integer_rows(self.to_rows()), self.cols)[1])

    def determinant(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("Determinants need a square matrix.")
        if self.rows == 0:
            return Fraction(1)
        rows = self.to_rows()
        scale = Fraction(1)
        for row in rows:
            denominator = 1
            for value in row:
                denominator = math.lcm(denominator, value.denominator)
            scale *= denominator
        echelon, pivots, swaps = _bareiss_echelon(_integer_rows(rows), self.cols)
        if len(pivots) < self.rows:
            return Fraction(0)
        sign = -1 if swaps % 2 else 1
        return Fraction(sign * echelon[-1][-1]) / scale

    def solve(self, rhs: Sequence[RationalLike]) -> Optional[tuple]:
        """One exact solution of ``self @ x = rhs`` (free variables set to zero), or None."""
        augmented = QMatrix.from_rows([list(self.row(i)) + [rhs[i]] for i in range(self.rows)], cols=self.cols + 1)
        reduced, pivots = augmented.rref()
        if pivots and pivots[-1] == self.cols:
            return None
        solution = [Fraction(0)] * self.cols
        for i, p in enumerate(pivots):
            solution[p] = reduced[i, self.cols]
        return tuple(solution)


def kernel_basis(m: QMatrix) -> list:
    """
    Basis of the right kernel of ``m`` obtained from its reduced echelon form.

    Each basis vector has a 1 in one free column and 0 in the other free columns.
    """
    reduced, pivots = m.rref()
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * m.cols
        vector[free] = Fraction(1)
        for i, p in enumerate(pivots):
            vector[p] = -reduced[i, free]
        basis.append(tuple(vector))
    return basis


def primitive_integer_vector(vector: Sequence[Fraction]) -> tuple:
    """Scales a nonzero rational vector to coprime integers, first nonzero entry positive."""
    denominator = 1
    for value in vector:
        denominator = math.lcm(denominator, Fraction(value).denominator)
    integers = [int(Fraction(value) * denominator) for value in vector]
    content = 0
    for value in integers:
        content = math.gcd(content, value)
    if content == 0:
        raise ValueError("The zero vector has no primitive representative.")
    lead = next(value for value in integers if value != 0)
    if lead < 0:
        content = -content
    return tuple(value // content for value in integers)


# ---------------------------------------------------------------------------
# Modular helpers for the multimodular kernel
# ---------------------------------------------------------------------------


def modular_rref(matrix: np.ndarray, prime: int) -> tuple:
    """
    Reduced row echelon form of an int64 matrix modulo a prime below 2**31.

    Returns:
    -------
    tuple[np.ndarray, list[int]]
        The nonzero reduced rows and the pivot columns.
    """
    a = np.array(matrix, dtype=np.int64) % prime
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        p = r + int(nonzero[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        inverse = pow(int(a[r, c]), -1, prime)
        a[r] = (a[r] * inverse) % prime
        column = a[:, c].copy()
        column[r] = 0
        a = (a - np.outer(column, a[r])) % prime
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rational_reconstruction(residue: int, modulus: int) -> Optional[Fraction]:
    """Finds n/d with |n|, d <= sqrt(modulus/2) and n = residue * d mod modulus."""
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, residue % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def crt_pair(a: int, m: int, b: int, p: int) -> int:
    """Combines x = a mod m and x = b mod p into x mod m*p."""
    t = ((b - a) * pow(m, -1, p)) % p
    return a + m * t


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntLattice:
    """
    A lattice given by integer basis vectors.

    ``gram`` is an optional symmetric positive definite rational matrix that
    defines the inner product; without it the standard dot product is used.
    A gram matrix that is a rounded approximation of a real quadratic form only
    affects the quality of the reduction, never its correctness.
    """

    basis: tuple
    gram: Optional[QMatrix] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", tuple(tuple(int(v) for v in b) for b in self.basis))
        dims = {len(b) for b in self.basis}
        if len(dims) > 1:
            raise InputError("Lattice basis vectors must share one dimension.")

    def inner(self, u: Sequence[int], v: Sequence[int]) -> Fraction:
        if self.gram is None:
            return Fraction(sum(a * b for a, b in zip(u, v)))
        return sum((u[i] * self.gram[i, j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j]), Fraction(0))

    def norms(self) -> list:
        return [self.inner(b, b) for b in self.basis]


def _gram_schmidt(gb: list) -> tuple:
    n = len(gb)
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = gb[i][j] - sum((mu[j][k] * mu[i][k] * norms[k] for k in range(j)), Fraction(0))
            mu[i][j] = s / norms[j]
        norms[i] = gb[i][i] - sum((mu[i][j] ** 2 * norms[j] for j in range(i)), Fraction(0))
        if norms[i] <= 0:
            logging.error(f"Gram-Schmidt norm {i} vanished; the basis is dependent.")
            raise NotABasis(f"Basis vector {i} depends on the previous ones.", witness=i)
    return mu, norms


def lll_reduce(lattice: IntLattice, delta: Fraction = Fraction(3, 4)) -> IntLattice:
    """
    LLL reduction with exact rational Gram-Schmidt data.

    Parameters:
    ----------
    lattice : IntLattice
        The lattice to reduce; its basis must be linearly independent.
    delta : Fraction, default=3/4
        The Lovasz parameter, 1/4 < delta < 1.

    Returns:
    -------
    IntLattice
        A basis of the same lattice satisfying the Lovasz condition.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise InputError(f"delta must lie in (1/4, 1), got {delta}.")
    basis = [list(b) for b in lattice.basis]
    n = len(basis)
    if n == 0:
        return lattice
    gb = [[lattice.inner(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    mu, norms = _gram_schmidt(gb)
    transform = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def size_reduce(k: int, j: int) -> None:
        q = math.floor(mu[k][j] + Fraction(1, 2))
        if q == 0:
            return
        transform[k] = [a - q * b for a, b in zip(transform[k], transform[j])]
        old_kj = gb[k][j]
        gb[k][k] = gb[k][k] - 2 * q * old_kj + q * q * gb[j][j]
        for l in range(n):
            if l != k:
                gb[k][l] = gb[k][l] - q * gb[j][l]
                gb[l][k] = gb[k][l]
        for l in range(j):
            mu[k][l] -= q * mu[j][l]
        mu[k][j] -= q

    k = 1
    swaps = 0
    while k < n:
        for j in reversed(range(k)):
            size_reduce(k, j)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
            continue
        transform[k], transform[k - 1] = transform[k - 1], transform[k]
        gb[k], gb[k - 1] = gb[k - 1], gb[k]
        for row in gb:
            row[k], row[k - 1] = row[k - 1], row[k]
        mu, norms = _gram_schmidt(gb)
        swaps += 1
        k = max(k - 1, 1)
    logging.info(f"LLL finished after {swaps} swaps.")
    reduced = tuple(
        tuple(sum(t * basis[i][c] for i, t in enumerate(row) if t) for c in range(len(basis[0])))
        for row in transform
    )
    return IntLattice(reduced, lattice.gram)
