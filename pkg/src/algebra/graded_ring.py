"""
Graded structure of Q = k[x, y, z].
Monomial bases, multiplication tensors, the contraction action and Macaulay growth.
"""

from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Mapping, Tuple, Union

import numpy as np

from algebra.linalg_gf import FieldPrime, matmul_mod
from errors import DegreeError, IdealInputError, ParameterRangeError

VARIABLES = ("x", "y", "z")

Exponent = Tuple[int, int, int]


def hq(e: int, i: int) -> int:
    """Dimension of the degree-i piece of a polynomial ring in e variables."""
    if e < 1:
        raise ParameterRangeError(f"Embedding dimension must be at least 1, got {e}")
    if i < 0:
        return 0
    return comb(e - 1 + i, e - 1)


@dataclass(frozen=True)
class MonomialBasis:
    """Monomials of one degree in graded lex order with x > y > z."""

    degree: int
    exponents: Tuple[Exponent, ...]
    _positions: Dict[Exponent, int] = dataclass_field(compare=False, hash=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.exponents)

    def index(self, exponent: Iterable[int]) -> int:
        """Position of a monomial in the graded-lex basis of its degree."""
        key = tuple(int(a) for a in exponent)
        try:
            return self._positions[key]
        except KeyError:
            raise DegreeError(f"{key} is not a monomial of degree {self.degree}") from None


@lru_cache(maxsize=None)
def monomial_basis(d: int) -> MonomialBasis:
    """The cached basis of Q_d."""
    if d < 0:
        return MonomialBasis(d, (), {})
    exponents = tuple(
        (a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)
    )
    return MonomialBasis(d, exponents, {m: i for i, m in enumerate(exponents)})


@lru_cache(maxsize=None)
def mult_tensor(d1: int, d2: int) -> np.ndarray:
    """Index of m1 * m2 in the degree d1 + d2 basis, as an (n1, n2) array."""
    if d1 < 0 or d2 < 0:
        raise DegreeError(f"Degrees must be nonnegative, got ({d1}, {d2})")
    left = np.array(monomial_basis(d1).exponents, dtype=np.int64).reshape(-1, 3)
    right = np.array(monomial_basis(d2).exponents, dtype=np.int64).reshape(-1, 3)
    target = monomial_basis(d1 + d2)
    table = np.empty((len(left), len(right)), dtype=np.int64)
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            table[i, j] = target.index(a + b)
    table.setflags(write=False)
    return table


def multiply_by_variables(rows: np.ndarray, d: int) -> np.ndarray:
    """Stack x*V, y*V, z*V for the rows V of a subspace of Q_d."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    n_rows = rows.shape[0]
    positions = mult_tensor(d, 1)
    out = np.zeros((3 * n_rows, hq(3, d + 1)), dtype=np.int64)
    for k in range(3):
        block = np.zeros((n_rows, hq(3, d + 1)), dtype=np.int64)
        block[:, positions[:, k]] = rows
        out[k * n_rows:(k + 1) * n_rows] = block
    return out


class Form:
    """A homogeneous polynomial in x, y, z over GF(p)."""

    __slots__ = ("degree", "coeffs", "field")

    def __init__(self, degree: int, coeffs, field: FieldPrime):
        if degree < 0:
            raise DegreeError(f"Degree must be nonnegative, got {degree}")
        vector = field.reduce(coeffs).reshape(-1)
        if vector.size != hq(3, degree):
            raise DegreeError(
                f"Degree {degree} needs {hq(3, degree)} coefficients, got {vector.size}"
            )
        vector.setflags(write=False)
        self.degree = degree
        self.coeffs = vector
        self.field = field

    @classmethod
    def zero(cls, degree: int, field: FieldPrime) -> "Form":
        """The zero form of the given degree."""
        return cls(degree, np.zeros(hq(3, degree), dtype=np.int64), field)

    @classmethod
    def monomial(cls, exponent: Iterable[int], field: FieldPrime, coeff: int = 1) -> "Form":
        """A single monomial times coeff."""
        exponent = tuple(exponent)
        degree = sum(exponent)
        coeffs = np.zeros(hq(3, degree), dtype=np.int64)
        coeffs[monomial_basis(degree).index(exponent)] = coeff
        return cls(degree, coeffs, field)

    @classmethod
    def from_terms(
        cls,
        terms: Union[Mapping[Exponent, int], Iterable[Tuple[int, Iterable[int]]]],
        field: FieldPrime,
    ) -> "Form":
        """Build a form from (coefficient, exponent) pairs or an exponent->coefficient map.

        Raises:
            IdealInputError: If the terms are empty, not trivariate, or of mixed degree
        """
        pairs = [(c, e) for e, c in terms.items()] if isinstance(terms, Mapping) else list(terms)
        if not pairs:
            raise IdealInputError("A polynomial needs at least one term")
        degrees = set()
        for _, exponent in pairs:
            exponent = tuple(exponent)
            if len(exponent) != 3 or any(int(a) < 0 for a in exponent):
                raise IdealInputError(f"Bad exponent {exponent}: need three nonnegative integers")
            degrees.add(sum(exponent))
        if len(degrees) > 1:
            raise IdealInputError(f"Polynomial is not homogeneous (degrees {sorted(degrees)})")
        degree = degrees.pop()
        basis = monomial_basis(degree)
        coeffs = np.zeros(basis.size, dtype=np.int64)
        for c, exponent in pairs:
            i = basis.index(exponent)
            coeffs[i] = (coeffs[i] + int(c)) % field.p
        return cls(degree, coeffs, field)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def terms(self) -> List[Tuple[int, Exponent]]:
        """Nonzero (coefficient, exponent) pairs in basis order."""
        exponents = monomial_basis(self.degree).exponents
        return [(int(c), exponents[i]) for i, c in enumerate(self.coeffs) if c]

    def _check(self, other: "Form") -> None:
        if self.field != other.field:
            raise IdealInputError(f"Forms over {self.field} and {other.field} cannot be combined")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        if self.degree != other.degree:
            raise DegreeError(f"Cannot add forms of degrees {self.degree} and {other.degree}")
        return Form(self.degree, self.coeffs + other.coeffs, self.field)

    def __neg__(self) -> "Form":
        return Form(self.degree, -self.coeffs, self.field)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, other: Union["Form", int]) -> "Form":
        if isinstance(other, Form):
            return multiply(self, other)
        return Form(self.degree, self.coeffs * (int(other) % self.field.p), self.field)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.field == other.field
            and self.degree == other.degree
            and np.array_equal(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        p = self.field.p
        pieces = []
        for c, exponent in self.terms():
            negative = c > p // 2
            size = p - c if negative else c
            names = [
                v if a == 1 else f"{v}^{a}" for v, a in zip(VARIABLES, exponent) if a
            ]
            body = "*".join(names)
            if not body:
                text = str(size)
            elif size == 1:
                text = body
            else:
                text = f"{size}*{body}"
            pieces.append(("-" if negative else "+", text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"Form({self}, {self.field})"


def multiply(g: Form, h: Form) -> Form:
    """Product of two forms."""
    g._check(h)
    p = g.field.p
    out = np.zeros(hq(3, g.degree + h.degree), dtype=np.int64)
    np.add.at(out, mult_tensor(g.degree, h.degree), np.outer(g.coeffs, h.coeffs) % p)
    return Form(g.degree + h.degree, out, g.field)


def contract(g: Form, F: Form) -> Form:
    """Contraction g o F, where x^a o x^b = x^(b-a) if a <= b and 0 otherwise.

    Args:
        g: Form of degree d acting on F
        F: Form of degree s >= d

    Returns:
        Form of degree s - d
    """
    g._check(F)
    if g.degree > F.degree:
        raise DegreeError(f"Cannot contract degree {g.degree} into degree {F.degree}")
    image = matmul_mod(g.coeffs.reshape(1, -1), catalecticant(F, g.degree), g.field.p)
    return Form(F.degree - g.degree, image[0], g.field)


def catalecticant(F: Form, d: int) -> np.ndarray:
    """Matrix of g -> g o F from Q_d to Q_(s-d), rows indexed by the basis of Q_d."""
    if d < 0 or d > F.degree:
        raise DegreeError(f"Catalecticant degree {d} outside 0..{F.degree}")
    return F.coeffs[mult_tensor(d, F.degree - d)]


def macaulay_growth(n: int, d: int) -> int:
    """Macaulay's bound n^<d> on a Hilbert function value in degree d + 1."""
    if d < 1:
        raise ParameterRangeError(f"Macaulay growth needs d >= 1, got {d}")
    if n < 0:
        raise ParameterRangeError(f"Macaulay growth needs n >= 0, got {n}")
    result = 0
    i = d
    while n > 0 and i >= 1:
        k = i
        while comb(k + 1, i) <= n:
            k += 1
        n -= comb(k, i)
        result += comb(k + 1, i + 1)
        i -= 1
    return result
