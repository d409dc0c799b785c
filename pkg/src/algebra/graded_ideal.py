"""
Homogeneous q-primary ideals of k[x, y, z] stored degree by degree.
Hilbert functions, socles, minimal generators, compressedness and the invariants a and b.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.graded_ring import Form, hq, mult_tensor, multiply_by_variables
from algebra.linalg_gf import (
    FieldPrime,
    MatrixGF,
    reduce_modulo,
    rref,
    subspace_intersect,
    subspace_sum,
)
from errors import IdealInputError

GORENSTEIN = "gorenstein"
TYPE2 = "type2"


@dataclass(frozen=True)
class SoclePolynomial:
    """Graded socle dimensions; coefficients[d] is the socle dimension in degree d."""

    coefficients: Tuple[int, ...]

    @property
    def type(self) -> int:
        """Dimension of the socle, the type of Q/I."""
        return sum(self.coefficients)

    @property
    def degrees(self) -> Tuple[int, ...]:
        """Degrees carrying socle elements."""
        return tuple(d for d, c in enumerate(self.coefficients) if c)

    def coefficient(self, d: int) -> int:
        return self.coefficients[d] if 0 <= d < len(self.coefficients) else 0

    def as_dict(self) -> Dict[int, int]:
        """Nonzero coefficients keyed by degree."""
        return {d: c for d, c in enumerate(self.coefficients) if c}

    def __str__(self) -> str:
        terms = []
        for d, c in self.as_dict().items():
            power = "" if d == 0 else ("χ" if d == 1 else f"χ^{d}")
            if not power:
                terms.append(str(c))
            else:
                terms.append(power if c == 1 else f"{c}{power}")
        return " + ".join(terms) if terms else "0"


class GradedIdeal:
    """
    A homogeneous ideal I of Q = k[x, y, z], one reduced matrix per degree.

    Pieces are stored in reduced row echelon form for 0 <= d <= D, where D
    is the truncation. The piece in degree D must be all of Q_D, so every
    degree above D is implicitly full.
    """

    def __init__(self, field: FieldPrime, pieces: Sequence[MatrixGF]):
        """Row-reduce the pieces I_0..I_D and check that I_D is all of Q_D."""
        if not pieces:
            raise IdealInputError("An ideal needs at least one graded piece")
        reduced_pieces: List[np.ndarray] = []
        pivots: List[List[int]] = []
        for d, piece in enumerate(pieces):
            if piece.cols != hq(3, d):
                raise IdealInputError(
                    f"Piece in degree {d} has {piece.cols} columns, expected {hq(3, d)}"
                )
            if piece.field != field:
                raise IdealInputError(f"Piece in degree {d} lives over {piece.field}, not {field}")
            reduced, piece_pivots = rref(piece.entries, field.p)
            reduced.setflags(write=False)
            reduced_pieces.append(reduced)
            pivots.append(piece_pivots)
        top = len(pieces) - 1
        if len(pivots[top]) != hq(3, top):
            raise IdealInputError(
                f"I_{top} is not all of Q_{top}: truncation too small or ideal not q-primary"
            )
        self.field = field
        self._pieces = tuple(reduced_pieces)
        self._pivots = tuple(tuple(pv) for pv in pivots)

    @classmethod
    def from_generators(
        cls,
        generators: Sequence[Form],
        field: FieldPrime,
        truncation: Optional[int] = None,
        truncation_cap: int = 40,
    ) -> "GradedIdeal":
        """Build the ideal generated by homogeneous forms.

        Args:
            generators: Homogeneous forms of degree >= 2 over field
            field: Coefficient field
            truncation: Degree bound D; when None it grows until a full piece
                appears and stops one degree later
            truncation_cap: Largest degree tried when growing

        Returns:
            The ideal with I_d = span(generators of degree d) + Q_1 * I_(d-1)
        """
        gens = [g for g in generators if not g.is_zero()]
        by_degree: Dict[int, List[np.ndarray]] = {}
        for g in gens:
            if g.field != field:
                raise IdealInputError(f"Generator {g} lives over {g.field}, not {field}")
            if g.degree < 2:
                raise IdealInputError(f"Generator {g} has degree {g.degree} < 2")
            by_degree.setdefault(g.degree, []).append(g.coeffs)
        top = max(by_degree, default=0)
        if truncation is not None and truncation < top:
            raise IdealInputError(f"Truncation {truncation} is below generator degree {top}")

        target = truncation
        pieces: List[MatrixGF] = []
        previous = np.zeros((0, 1), dtype=np.int64)
        d = 0
        while True:
            blocks = list(by_degree.get(d, []))
            if d > 0 and previous.shape[0]:
                blocks.extend(multiply_by_variables(previous, d - 1))
            stacked = np.array(blocks, dtype=np.int64).reshape(-1, hq(3, d))
            reduced, _ = rref(stacked, field.p)
            pieces.append(MatrixGF(reduced, field, cols=hq(3, d)))
            if target is None and reduced.shape[0] == hq(3, d):
                # First full degree is s + 1; keep one more for socle tests
                target = max(d + 1, top)
            if target is not None and d >= target:
                break
            if target is None and d >= truncation_cap:
                raise IdealInputError(
                    f"No full piece up to degree {truncation_cap}: ideal is not q-primary"
                )
            previous = reduced
            d += 1
        return cls(field, pieces)

    @classmethod
    def maximal_power(cls, u: int, field: FieldPrime) -> "GradedIdeal":
        """The truncation ideal q^u."""
        pieces = [
            MatrixGF.identity(hq(3, d), field) if d >= u else MatrixGF.zeros(0, hq(3, d), field)
            for d in range(max(u, 0) + 2)
        ]
        return cls(field, pieces)

    @property
    def truncation(self) -> int:
        return len(self._pieces) - 1

    def reduced_piece(self, d: int) -> Tuple[np.ndarray, Tuple[int, ...]]:
        """RREF array and pivot columns of I_d, with implicit pieces outside 0..D."""
        if d < 0:
            return np.zeros((0, 0), dtype=np.int64), ()
        if d > self.truncation:
            n = hq(3, d)
            return np.eye(n, dtype=np.int64), tuple(range(n))
        return self._pieces[d], self._pivots[d]

    def piece(self, d: int) -> MatrixGF:
        """Basis of I_d; all of Q_d past the truncation."""
        return MatrixGF(self.reduced_piece(d)[0], self.field, cols=hq(3, d) if d >= 0 else 0)

    def dim(self, d: int) -> int:
        """dim_k I_d."""
        return len(self.reduced_piece(d)[1])

    def intersect(self, other: "GradedIdeal") -> "GradedIdeal":
        """Degreewise intersection."""
        return self._combine(other, subspace_intersect)

    def sum(self, other: "GradedIdeal") -> "GradedIdeal":
        """Degreewise sum."""
        return self._combine(other, subspace_sum)

    def _combine(self, other: "GradedIdeal", operation) -> "GradedIdeal":
        if self.field != other.field:
            raise IdealInputError(f"Ideals over {self.field} and {other.field} cannot be combined")
        top = max(self.truncation, other.truncation)
        return GradedIdeal(
            self.field, [operation(self.piece(d), other.piece(d)) for d in range(top + 1)]
        )

    def add_power(self, i: int) -> "GradedIdeal":
        """The ideal I + q^i."""
        i = max(i, 0)
        top = max(self.truncation, i)
        pieces = [
            self.piece(d) if d < i else MatrixGF.identity(hq(3, d), self.field)
            for d in range(top + 1)
        ]
        return GradedIdeal(self.field, pieces)

    def equals(self, other: "GradedIdeal") -> bool:
        """Same field and same pieces in every degree."""
        if self.field != other.field:
            return False
        top = max(self.truncation, other.truncation)
        return all(
            np.array_equal(self.reduced_piece(d)[0], other.reduced_piece(d)[0])
            for d in range(top + 1)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedIdeal):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def contains_degree(self, rows: np.ndarray, d: int) -> bool:
        """Check whether the given rows of Q_d all lie in I_d."""
        rows = np.asarray(rows, dtype=np.int64)
        if rows.size == 0:
            return True
        basis, pivots = self.reduced_piece(d)
        return not reduce_modulo(rows, basis, pivots, self.field.p).any()

    def is_closed(self) -> bool:
        """Check Q_1 * I_d inside I_(d+1) for all d < D."""
        return all(
            self.contains_degree(multiply_by_variables(self._pieces[d], d), d + 1)
            for d in range(self.truncation)
            if self._pieces[d].shape[0]
        )

    def is_embedded(self) -> bool:
        """Check I inside q^2, i.e. no constants or linear forms."""
        return self.dim(0) == 0 and self.dim(1) == 0

    def hilbert(self) -> Tuple[int, ...]:
        """h-vector of Q/I, without trailing zeros."""
        values = [hq(3, d) - self.dim(d) for d in range(self.truncation + 1)]
        while values and values[-1] == 0:
            values.pop()
        return tuple(values)

    def socle_degree(self) -> int:
        """Top degree with h(i) != 0."""
        return len(self.hilbert()) - 1

    def initial_degree(self) -> int:
        """Smallest degree in which I is nonzero."""
        return next(d for d in range(self.truncation + 1) if self.dim(d))

    @cached_property
    def quotient(self) -> "QuotientRing":
        return QuotientRing(self)

    @cached_property
    def _socle(self) -> SoclePolynomial:
        ring = self.quotient
        coefficients = []
        for d in range(self.socle_degree() + 1):
            action = np.hstack([ring.variable_action(d, k) for k in range(3)])
            rank = len(rref(action, self.field.p)[1]) if action.size else 0
            coefficients.append(ring.dim(d) - rank)
        return SoclePolynomial(tuple(coefficients))

    def socle_polynomial(self) -> SoclePolynomial:
        """Dimensions of the socle of Q/I, degree by degree."""
        return self._socle

    def ring_type(self) -> int:
        """Type of Q/I, the total socle dimension."""
        return self._socle.type

    def is_level(self) -> bool:
        """Whether the socle sits in a single degree."""
        return len(self._socle.degrees) == 1

    @cached_property
    def _generators(self) -> Dict[int, np.ndarray]:
        p = self.field.p
        found: Dict[int, np.ndarray] = {}
        for d in range(self.truncation + 1):
            current, _ = self.reduced_piece(d)
            if not current.shape[0]:
                continue
            below, _ = self.reduced_piece(d - 1)
            if d > 0 and below.shape[0]:
                image, image_pivots = rref(multiply_by_variables(below, d - 1), p)
                current = reduce_modulo(current, image, image_pivots, p)
            fresh, _ = rref(current, p)
            if fresh.shape[0]:
                found[d] = fresh
        return found

    def minimal_generators(self) -> List[Form]:
        """A minimal homogeneous generating set, lowest degree first."""
        return [
            Form(d, row, self.field)
            for d, rows in sorted(self._generators.items())
            for row in rows
        ]

    def minimal_generator_degrees(self) -> Dict[int, int]:
        """Number of minimal generators per degree."""
        return {d: rows.shape[0] for d, rows in sorted(self._generators.items())}

    def generator_count(self) -> int:
        """Number of minimal generators."""
        return sum(self.minimal_generator_degrees().values())

    def is_compressed(self, kind: str) -> bool:
        """Check whether Q/I attains the maximal h-vector for its socle data.

        Args:
            kind: "gorenstein" (type 1) or "type2"

        Returns:
            True if h(i) = min{hq(i), hq(s-i)} for Gorenstein, or
            h(i) = min{hq(i), hq(b-i) + hq(s-i)} for type 2
        """
        if kind not in (GORENSTEIN, TYPE2):
            raise IdealInputError(f"Unknown compressedness kind {kind!r}")
        expected_type = 1 if kind == GORENSTEIN else 2
        if self.ring_type() != expected_type:
            raise IdealInputError(
                f"Ring has type {self.ring_type()}, but {kind} needs type {expected_type}"
            )
        s = self.socle_degree()
        if kind == GORENSTEIN:
            bound = [min(hq(3, i), hq(3, s - i)) for i in range(s + 1)]
        else:
            b = socle_b(self)
            bound = [min(hq(3, i), hq(3, b - i) + hq(3, s - i)) for i in range(s + 1)]
        return self.hilbert() == tuple(bound)

    def __repr__(self) -> str:
        return f"GradedIdeal(h={self.hilbert()}, D={self.truncation}, {self.field})"


class QuotientRing:
    """
    Standard-monomial model of R = Q/I.

    A basis of R_d is given by the monomials that are not pivot columns of
    the reduced piece I_d. Elements of R_d are coordinate vectors over it.
    """

    def __init__(self, ideal: GradedIdeal):
        self.ideal = ideal
        self.field = ideal.field
        self.top = ideal.socle_degree()
        self._bases: Dict[int, np.ndarray] = {}
        self._projections: Dict[int, np.ndarray] = {}
        self._tensors: Dict[Tuple[int, int], np.ndarray] = {}

    def basis(self, d: int) -> np.ndarray:
        """Indices of standard monomials in the basis of Q_d."""
        if d not in self._bases:
            if d < 0 or d > self.top:
                self._bases[d] = np.zeros(0, dtype=np.int64)
            else:
                pivots = set(self.ideal.reduced_piece(d)[1])
                self._bases[d] = np.array(
                    [c for c in range(hq(3, d)) if c not in pivots], dtype=np.int64
                )
        return self._bases[d]

    def dim(self, d: int) -> int:
        """dim_k (Q/I)_d."""
        return len(self.basis(d))

    def projection(self, d: int) -> np.ndarray:
        """Matrix of Q_d -> R_d taking monomial coordinates to normal-form coordinates."""
        if d not in self._projections:
            standard = self.basis(d)
            out = np.zeros((hq(3, d), len(standard)), dtype=np.int64)
            if len(standard):
                out[standard, np.arange(len(standard))] = 1
                reduced, pivots = self.ideal.reduced_piece(d)
                if pivots:
                    out[list(pivots), :] = (-reduced[:, standard]) % self.field.p
            out.setflags(write=False)
            self._projections[d] = out
        return self._projections[d]

    def variable_action(self, d: int, k: int) -> np.ndarray:
        """Matrix of multiplication by the k-th variable, R_d -> R_(d+1)."""
        standard = self.basis(d)
        if not len(standard):
            return np.zeros((0, self.dim(d + 1)), dtype=np.int64)
        return self.projection(d + 1)[mult_tensor(d, 1)[standard, k]]

    def structure_tensor(self, d1: int, d2: int) -> np.ndarray:
        """Multiplication R_d1 x R_d2 -> R_(d1+d2) as an (h1, h2, h3) array."""
        key = (d1, d2)
        if key not in self._tensors:
            left, right = self.basis(d1), self.basis(d2)
            if not len(left) or not len(right):
                tensor = np.zeros((len(left), len(right), self.dim(d1 + d2)), dtype=np.int64)
            else:
                positions = mult_tensor(d1, d2)[np.ix_(left, right)]
                tensor = self.projection(d1 + d2)[positions]
            tensor.setflags(write=False)
            self._tensors[key] = tensor
        return self._tensors[key]


def socle_b(ideal: GradedIdeal) -> int:
    """The lower socle degree b of a type 2 ring with socle polynomial χ^b + χ^s."""
    socle = ideal.socle_polynomial()
    if socle.type != 2:
        raise IdealInputError(f"Socle value b needs a ring of type 2, got type {socle.type}")
    return socle.degrees[0]


def compute_a(I1: GradedIdeal, I2: GradedIdeal) -> int:
    """Smallest i >= 0 with q^i * I2 inside I1, checked as Q_i (I2)_d in (I1)_(d+i)."""
    if I1.field != I2.field:
        raise IdealInputError(f"Ideals over {I1.field} and {I2.field} cannot be compared")
    p = I1.field.p
    top = I1.truncation
    spans = {d: I2.reduced_piece(d)[0] for d in range(top + 1)}
    i = 0
    while True:
        if all(I1.contains_degree(rows, d + i) for d, rows in spans.items()):
            return i
        grown = {}
        for d, rows in spans.items():
            # Above the truncation I1 is full, so these degrees are settled
            if rows.shape[0] and d + i + 1 <= top:
                grown[d] = rref(multiply_by_variables(rows, d + i), p)[0]
        spans = grown
        i += 1


def compute_b(I1: GradedIdeal, I2: GradedIdeal) -> int:
    """Smallest i >= 1 with q^(i+1) intersected with I2 inside I1."""
    if I1.field != I2.field:
        raise IdealInputError(f"Ideals over {I1.field} and {I2.field} cannot be compared")
    top = max(I1.truncation, I2.truncation)
    missing = [
        d for d in range(top + 1) if not I1.contains_degree(I2.reduced_piece(d)[0], d)
    ]
    return max([1] + missing)
