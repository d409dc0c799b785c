"""
Gorenstein ideals from Macaulay inverse systems.
Random compressed Gorenstein ideals and compressed type 2 intersections of pairs of them.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from algebra.graded_ideal import GORENSTEIN, TYPE2, GradedIdeal
from algebra.graded_ring import Form, catalecticant, hq
from algebra.linalg_gf import FieldPrime, MatrixGF, null_space
from errors import GenericityError, IdealInputError, ParameterRangeError
from theory.predictor import check_socle_pair

DEFAULT_RETRY_CAP = 100


class DualForm(Form):
    """A nonzero form of degree >= 2 in the dual space, the seed of Ann(F)."""

    def __init__(self, degree: int, coeffs, field: FieldPrime):
        """Wrap a form of degree >= 2, rejecting the zero form."""
        super().__init__(degree, coeffs, field)
        if degree < 2:
            raise IdealInputError(f"Dual forms need degree >= 2, got {degree}")
        if self.is_zero():
            raise IdealInputError("The zero form has no annihilator of finite colength")

    @classmethod
    def random(cls, s: int, field: FieldPrime, rng: np.random.Generator) -> "DualForm":
        """Draw a uniformly random nonzero form of degree s."""
        while True:
            coeffs = rng.integers(0, field.p, size=hq(3, s), dtype=np.int64)
            if coeffs.any():
                return cls(s, coeffs, field)


def annihilator(F: Form, truncation: Optional[int] = None) -> GradedIdeal:
    """The apolar ideal Ann(F) = {g : g o F = 0}.

    Args:
        F: Nonzero form of degree s
        truncation: Degree bound D >= s + 2 (default s + 2)

    Returns:
        Gorenstein ideal whose quotient has socle degree s
    """
    if F.is_zero():
        raise IdealInputError("The zero form has no annihilator of finite colength")
    s = F.degree
    top = s + 2 if truncation is None else truncation
    if top < s + 2:
        raise IdealInputError(f"Truncation {top} must be at least s + 2 = {s + 2}")
    p = F.field.p
    pieces = []
    for d in range(top + 1):
        if d > s:
            pieces.append(MatrixGF.identity(hq(3, d), F.field))
        else:
            # Left kernel of the catalecticant Q_d -> Q_(s-d)
            kernel = null_space(catalecticant(F, d).T, p)
            pieces.append(MatrixGF(kernel, F.field, cols=hq(3, d)))
    return GradedIdeal(F.field, pieces)


def random_compressed_gorenstein(
    s: int,
    field: FieldPrime,
    rng: np.random.Generator,
    retry_cap: int = DEFAULT_RETRY_CAP,
) -> Tuple[GradedIdeal, int]:
    """Draw dual forms until Ann(F) is compressed Gorenstein inside q^2.

    Returns:
        (ideal, number of draws used)
    """
    if s < 2:
        raise ParameterRangeError(f"Compressed Gorenstein ideals need s >= 2, got {s}")
    for attempt in range(1, retry_cap + 1):
        ideal = annihilator(DualForm.random(s, field, rng))
        if ideal.is_embedded() and ideal.is_compressed(GORENSTEIN):
            return ideal, attempt
    raise GenericityError(
        f"No compressed Gorenstein ideal of socle degree {s} over {field} "
        f"after {retry_cap} draws",
        attempts=retry_cap,
        reason="gorenstein",
    )


@dataclass(frozen=True)
class Type2Pair:
    """Two Gorenstein ideals with their intersection and sum."""

    i1: GradedIdeal
    i2: GradedIdeal
    intersection: GradedIdeal
    sum: GradedIdeal
    attempts: int
    compressed: bool


def random_type2_pair(
    s1: int,
    s: int,
    field: FieldPrime,
    rng: np.random.Generator,
    retry_cap: int = DEFAULT_RETRY_CAP,
    require_compressed: bool = True,
) -> Type2Pair:
    """Draw compressed Gorenstein ideals of socle degrees s1 and s and intersect them.

    Retries until the intersection has type 2 and, if required, is compressed.

    Raises:
        ParameterRangeError: If (s1, s) is outside 2 <= s1 <= s < 2*s1
        GenericityError: If the retry cap is exhausted
    """
    check_socle_pair(s1, s)
    for attempt in range(1, retry_cap + 1):
        i1, _ = random_compressed_gorenstein(s1, field, rng, retry_cap)
        i2, _ = random_compressed_gorenstein(s, field, rng, retry_cap)
        intersection = i1.intersect(i2)
        if intersection.ring_type() != 2:
            continue
        compressed = intersection.is_compressed(TYPE2)
        if require_compressed and not compressed:
            continue
        return Type2Pair(i1, i2, intersection, i1.sum(i2), attempt, compressed)
    raise GenericityError(
        f"No type 2 intersection for (s1, s) = ({s1}, {s}) over {field} after {retry_cap} draws",
        attempts=retry_cap,
        reason="type2",
    )
