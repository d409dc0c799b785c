"""
Closed-form numerics for compressed artinian rings of type 1 and 2.
Predicted h-vectors, f-vectors, Betti shapes, Golod thresholds and generic classes.
"""

from dataclasses import asdict, dataclass
from math import comb, isqrt
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

import numpy as np
import sympy

from algebra.graded_ring import hq
from algebra.koszul import TorClass
from errors import ParameterRangeError, ShapeNotApplicableError

# Coefficients of (1 - χ)^3
_KOSZUL_SIGNS = (1, -3, 3, -1)


def ceil_half(s: int) -> int:
    """The value ceil((s + 1) / 2)."""
    return (s + 2) // 2


def check_socle_pair(s1: int, s: int) -> None:
    """Reject socle degrees outside 2 <= s1 <= s < 2 * s1."""
    if not 2 <= s1 <= s:
        raise ParameterRangeError(f"Socle degrees need 2 <= s1 <= s, got s1={s1}, s={s}")
    if s >= 2 * s1:
        raise ParameterRangeError(f"Compressed type 2 requires s < 2*s1, got s1={s1}, s={s}")


def b_polynomial(h: Sequence[int]) -> Tuple[int, ...]:
    """Coefficients of (1 - χ)^3 H(χ) for an h-vector h."""
    return tuple(int(c) for c in np.convolve(np.asarray(h, dtype=np.int64), _KOSZUL_SIGNS))


def initial_degree(h: Sequence[int], e: int = 3) -> int:
    """Smallest i with h(i) != hq(e, i), reading h as zero past its end."""
    i = 0
    while i < len(h) and h[i] == hq(e, i):
        i += 1
    return i


def gorenstein_profile(e: int, s: int) -> Tuple[Tuple[int, ...], int]:
    """h-vector and initial degree of a compressed Gorenstein ring of socle degree s."""
    if s < 0:
        raise ParameterRangeError(f"Socle degree must be nonnegative, got {s}")
    h = tuple(min(hq(e, i), hq(e, s - i)) for i in range(s + 1))
    t = s + 1 if s <= 1 else initial_degree(h, e)
    return h, t


def type2_hilbert(s1: int, s: int) -> Tuple[int, ...]:
    """h(i) = min{hq(i), hq(s1 - i) + hq(s - i)}, the compressed type 2 h-vector."""
    return tuple(min(hq(3, i), hq(3, s1 - i) + hq(3, s - i)) for i in range(s + 1))


def f_vector(a: int) -> Tuple[int, int, int]:
    """(f0, f1, f2) = (C(a+1, 2), a(a+2), C(a+2, 2))."""
    return comb(a + 1, 2), a * (a + 2), comb(a + 2, 2)


def golod_by_degree(s: int, t: int) -> bool:
    """Golodness forced by the initial degree: ceil((s+1)/2) < t."""
    return ceil_half(s) < t


def generic_m(h: Sequence[int], t: int) -> int:
    """Fewest generators consistent with the B-polynomial: max(0,-b(t)) + max(0,-b(t+1))."""
    b = list(b_polynomial(h))
    b += [0] * max(0, t + 2 - len(b))
    return max(0, -b[t]) + max(0, -b[t + 1])


def _lt_sqrt(lhs: int, radicand: int) -> bool:
    """Exact test lhs < sqrt(radicand)."""
    return lhs < 0 or lhs * lhs < radicand


def below_odd_threshold(s1: int, s: int) -> bool:
    """s1 < N(s) = (s - 2 + sqrt(4s + 13)) / 2."""
    return _lt_sqrt(2 * s1 - s + 2, 4 * s + 13)


def below_n1(s1: int, s: int) -> bool:
    """s1 < N1(s) = (3s - 5 + sqrt(24s + 97)) / 6."""
    return _lt_sqrt(6 * s1 - 3 * s + 5, 24 * s + 97)


def below_n2(s1: int, s: int) -> bool:
    """s1 < N2(s) = (s - 1 + sqrt(8s + 25)) / 2."""
    return _lt_sqrt(2 * s1 - s + 1, 8 * s + 25)


def below_even_threshold(s1: int, s: int) -> bool:
    """s1 < s/2 - 1 + sqrt(s + 4), the even-s bound between G(r) and Golod."""
    return _lt_sqrt(s1 - s // 2 + 1, s + 4)


@dataclass(frozen=True)
class Thresholds:
    """Golod thresholds on s1 for a fixed socle degree s."""

    s: int
    n: float
    n1: Optional[float] = None
    n2: Optional[float] = None
    exact: Tuple[Tuple[str, str], ...] = ()

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {"N": self.n}
        if self.s % 2 == 0:
            out.update({"N1": self.n1, "N2": self.n2})
        out["exact"] = dict(self.exact)
        return out


def thresholds(s: int) -> Thresholds:
    """N(s) for odd s; N1(s), N2(s) and the generic-class bound N(s) for even s."""
    if s < 4:
        raise ParameterRangeError(f"Thresholds are defined for s >= 4, got {s}")
    if s % 2:
        n = (s - 2 + sympy.sqrt(4 * s + 13)) / 2
        return Thresholds(s, float(n), exact=(("N", str(n)),))
    n = sympy.Rational(s, 2) - 1 + sympy.sqrt(s + 4)
    n1 = (3 * s - 5 + sympy.sqrt(24 * s + 97)) / 6
    n2 = (s - 1 + sympy.sqrt(8 * s + 25)) / 2
    return Thresholds(
        s, float(n), float(n1), float(n2), exact=(("N", str(n)), ("N1", str(n1)), ("N2", str(n2)))
    )


def generic_class(s1: int, s: int) -> Tuple[TorClass, int]:
    """Class and generator count of a generic compressed type 2 ring with socle χ^s1 + χ^s."""
    check_socle_pair(s1, s)
    h = type2_hilbert(s1, s)
    m = generic_m(h, initial_degree(h))
    a = s1 - ceil_half(s) + 1
    if s == 2:
        return TorClass.h(3, 2), m
    if s == 3:
        return (TorClass.b() if s1 == 2 else TorClass.golod()), m
    if s % 2:
        if below_odd_threshold(s1, s):
            return TorClass.gorenstein_like((s + 3 - a * (a + 1)) // 2), m
        return TorClass.golod(), m
    if s1 == s // 2 + 1:
        return TorClass.gorenstein_like(s - 1), m
    if below_even_threshold(s1, s):
        return TorClass.gorenstein_like(s + 3 - a * (a + 2)), m
    return TorClass.golod(), m


def _level_even_classes(s: int, m: int) -> FrozenSet[TorClass]:
    allowed = set()
    if s == 2:
        if m == 4:
            allowed.add(TorClass.h(3, 2))
        if m == 5:
            allowed.add(TorClass.b())
    elif s == 4:
        if 5 <= m <= 8:
            allowed.add(TorClass.golod())
        if 6 <= m <= 7:
            allowed.update(TorClass.gorenstein_like(r) for r in range(1, m - 4))
        if m == 7:
            allowed.add(TorClass.h(0, 2))
    elif s == 6:
        if 9 <= m <= 11:
            allowed.add(TorClass.golod())
        if m == 10:
            allowed.add(TorClass.gorenstein_like(1))
    elif s == 8 and m == 14:
        allowed.add(TorClass.golod())
    return frozenset(allowed)


def allowed_classes(s1: int, s: int, m: int) -> FrozenSet[TorClass]:
    """Classes a compressed type 2 ring with socle χ^s1 + χ^s and m generators can have."""
    check_socle_pair(s1, s)
    if m < 3:
        raise ParameterRangeError(f"An m-primary ideal in three variables needs m >= 3, got {m}")
    t = initial_degree(type2_hilbert(s1, s))
    a = s1 - ceil_half(s) + 1
    f0, f1, _ = f_vector(a)
    golod = frozenset({TorClass.golod()})

    if s % 2:
        if t > (s + 1) // 2:
            return golod
        if s == 3:
            if m == 5:
                return frozenset({TorClass.b()})
            if m == 6:
                return frozenset({TorClass.gorenstein_like(3)})
            return frozenset()
        r = m - a * (a + 2)
        if r >= max(1, (s + 3 - a * (a + 1)) // 2):
            return frozenset({TorClass.gorenstein_like(r)})
        return frozenset()

    if t > s // 2 + 1:
        return golod
    if s1 == s:
        return _level_even_classes(s, m)
    if s1 == s // 2 + 1:
        return frozenset({TorClass.gorenstein_like(m - 3)}) if m > 3 else frozenset()
    low = m - f1
    allowed = {TorClass.gorenstein_like(r) for r in range(max(1, low), low + f0 + 1)}
    allowed.add(TorClass.golod())
    return frozenset(allowed)


@dataclass(frozen=True)
class BettiShape:
    """Graded Betti numbers as columns {degree: count} for i = 0..3."""

    columns: Tuple[Dict[int, int], ...]
    beta: int

    @property
    def generator_count(self) -> int:
        """Total of the first column, the number of minimal generators."""
        return sum(self.columns[1].values())

    def as_betti(self) -> Dict[Tuple[int, int], int]:
        """Flatten into the {(i, j): beta} layout used by the Koszul module."""
        return {(i, j): n for i, column in enumerate(self.columns) for j, n in column.items()}

    def rank_balance(self) -> int:
        """beta_0 - beta_1 + beta_2 - beta_3, zero for a valid shape."""
        return sum((-1) ** i * sum(column.values()) for i, column in enumerate(self.columns))

    def to_dict(self) -> Dict[str, object]:
        return {"beta": self.beta, "columns": [dict(column) for column in self.columns]}


def _shape(columns) -> Tuple[Dict[int, int], ...]:
    cleaned = []
    for column in columns:
        merged: Dict[int, int] = {}
        for degree, count in column:
            merged[degree] = merged.get(degree, 0) + count
        cleaned.append({d: n for d, n in sorted(merged.items()) if n})
    return tuple(cleaned)


def minimal_beta(s1: int, s: int) -> int:
    """Smallest free parameter allowed in the type 2 Betti shape."""
    t = ceil_half(s)
    _, f1, _ = f_vector(s1 - t + 1)
    return 0 if s % 2 else max(0, f1 - 2 * t - 1)


def betti_shape(s1: int, s: int, beta: Optional[int] = None) -> BettiShape:
    """Betti table of a compressed type 2 ring with ceil((s+1)/2) = t.

    Args:
        s1: Lower socle degree
        s: Top socle degree
        beta: Free parameter; None picks the smallest allowed value

    Returns:
        The shape with the f-vector of a = s1 - t + 1 filled in
    """
    check_socle_pair(s1, s)
    t = ceil_half(s)
    if initial_degree(type2_hilbert(s1, s)) != t:
        raise ShapeNotApplicableError(
            f"No closed-form Betti table for (s1, s) = ({s1}, {s}): the ring is Golod by degree"
        )
    lowest = minimal_beta(s1, s)
    if beta is None:
        beta = lowest
    if beta < lowest:
        raise ShapeNotApplicableError(f"beta must be at least {lowest}, got {beta}")
    f0, f1, f2 = f_vector(s1 - t + 1)
    top = [(s1 + 3, 1), (s + 3, 1)]
    if s % 2:
        columns = [
            [(0, 1)],
            [(t, t + 1 - f0), (t + 1, f1 + beta)],
            [(t + 1, beta), (t + 2, t + 1 + f2)],
            top,
        ]
    else:
        columns = [
            [(0, 1)],
            [(t, 2 * t + 1 - f0), (t + 1, beta)],
            [(t + 1, 2 * t + 1 - f1 + beta), (t + 2, f2)],
            top,
        ]
    return BettiShape(_shape(columns), beta)


def gorenstein_betti_shape(s: int, beta: int = 0) -> BettiShape:
    """Betti table of a compressed Gorenstein ring of socle degree s >= 2."""
    if s < 2:
        raise ParameterRangeError(f"Compressed Gorenstein shapes need s >= 2, got {s}")
    if beta < 0:
        raise ShapeNotApplicableError(f"beta must be nonnegative, got {beta}")
    t = ceil_half(s)
    if s % 2:
        columns = [
            [(0, 1)],
            [(t, t + 1), (t + 1, beta)],
            [(t + 1, beta), (t + 2, t + 1)],
            [(s + 3, 1)],
        ]
    else:
        if beta:
            raise ShapeNotApplicableError("Even socle degree leaves no free parameter")
        columns = [[(0, 1)], [(t, 2 * t + 1)], [(t + 1, 2 * t + 1)], [(s + 3, 1)]]
    return BettiShape(_shape(columns), beta)


@dataclass(frozen=True)
class SpecialCase:
    """A socle pair for which the generator count is forced."""

    m: int
    tor_class: TorClass
    family: str


_FORCED = {(3, 3): 8, (7, 9): 15, (6, 7): 12}


def special_m(s1: int, s: int) -> Optional[SpecialCase]:
    """The forced generator count for the known families of socle pairs, if any."""
    # Odd family: s = k(k+1) - 1, s1 = k(k+3)/2 - 1 with k >= 2
    k = (isqrt(4 * (s + 1) + 1) - 1) // 2
    if k >= 2 and k * (k + 1) - 1 == s and k * (k + 3) // 2 - 1 == s1:
        return SpecialCase(1 + k * (k + 2), TorClass.gorenstein_like(1), "odd-family")
    # Even family: s = k(k+1)/2 - 2, s1 = k(k+5)/4 - 1 with k >= 4 and 4 | k(k+5)
    k = (isqrt(8 * (s + 2) + 1) - 1) // 2
    if (
        k >= 4
        and k * (k + 1) // 2 - 2 == s
        and (k * (k + 5)) % 4 == 0
        and k * (k + 5) // 4 - 1 == s1
    ):
        return SpecialCase(k * (k + 3) // 2, TorClass.golod(), "even-family")
    if (s1, s) in _FORCED:
        return SpecialCase(_FORCED[(s1, s)], TorClass.golod(), "sporadic")
    return None


def ht_difference(e: int, s: int) -> int:
    """hq(e, t) - hq(e, s - t) with t = ceil((s+1)/2)."""
    t = ceil_half(s)
    return hq(e, t) - hq(e, s - t)


@dataclass(frozen=True)
class GeneralBounds:
    """Numerical checks valid in any embedding dimension e >= 3."""

    e: int
    s: int
    s1: int
    t2: int
    ht_difference: int
    t_equals_t2: bool
    level_golod_bound: float
    level_golod: bool
    gap_bound: Optional[float]
    golod_by_gap: Optional[bool]

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def general_e_bounds(e: int, s: int, s1: int) -> GeneralBounds:
    """Initial-degree and Golod bounds for socle degrees s1 <= s in embedding dimension e."""
    if e < 3:
        raise ParameterRangeError(f"These bounds need e >= 3, got {e}")
    t2 = ceil_half(s)
    even = s % 2 == 0
    # hq(e, n) = C(e-1+n, e-1); hq(e-1, n) = C(e-2+n, e-2)
    right = hq(e - 1, t2) + (hq(e - 1, t2 - 1) if even else 0)
    t_equals_t2 = hq(e, s1 - t2) < right

    radicand = 8 * (e - 1) ** 2 + 1
    if even:
        bound = 2 * e - 3 + float(sympy.sqrt(radicand))
        excess = s - (2 * e - 3)
        level_golod = excess >= 0 and excess * excess >= radicand
    else:
        bound = float(2 * e - 3)
        level_golod = s >= 2 * e - 3

    gap_bound: Optional[float] = None
    golod_by_gap: Optional[bool] = None
    if e == 3:
        if even:
            gap_bound = float((s + 1 - sympy.sqrt(8 * s + 25)) / 2)
            golod_by_gap = not below_n2(s1, s)
        else:
            gap_bound = float((s + 2 - sympy.sqrt(4 * s + 13)) / 2)
            golod_by_gap = not below_odd_threshold(s1, s)
    return GeneralBounds(
        e=e,
        s=s,
        s1=s1,
        t2=t2,
        ht_difference=ht_difference(e, s),
        t_equals_t2=t_equals_t2,
        level_golod_bound=bound,
        level_golod=level_golod,
        gap_bound=gap_bound,
        golod_by_gap=golod_by_gap,
    )


@dataclass(frozen=True)
class SumProfile:
    """Predicted Hilbert data of Q/(I1 + I2) for a compressed intersection."""

    h: Tuple[int, ...]
    socle_degree: int
    initial_degree: int


def sum_profile(s1: int, s: int) -> SumProfile:
    """h(i) = max{0, h1(i) + h2(i) - hq(i)} for compressed Gorenstein h1, h2."""
    check_socle_pair(s1, s)
    h1, _ = gorenstein_profile(3, s1)
    h2, _ = gorenstein_profile(3, s)
    values = [
        max(0, (h1[i] if i < len(h1) else 0) + h2[i] - hq(3, i)) for i in range(s + 1)
    ]
    while values and values[-1] == 0:
        values.pop()
    h = tuple(values)
    return SumProfile(h, len(h) - 1, initial_degree(h))


@dataclass(frozen=True)
class Type2Profile:
    """All closed-form predictions for the socle polynomial χ^s1 + χ^s."""

    s1: int
    s: int
    e: int
    h: Tuple[int, ...]
    t: int
    a: int
    f0: int
    f1: int
    f2: int
    generic_m: int
    generic_class: TorClass
    golod_by_degree: bool
    thresholds: Optional[Thresholds]
    betti_shape: Optional[BettiShape]
    special: Optional[SpecialCase]
    sum_h: Tuple[int, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "s1": self.s1,
            "s": self.s,
            "e": self.e,
            "h": list(self.h),
            "t": self.t,
            "a": self.a,
            "f": [self.f0, self.f1, self.f2],
            "generic_class": str(self.generic_class),
            "generic_m": self.generic_m,
            "golod_by_degree": self.golod_by_degree,
            "thresholds": self.thresholds.to_dict() if self.thresholds else None,
            "betti_shape": self.betti_shape.to_dict() if self.betti_shape else None,
            "special_m": (
                {"m": self.special.m, "class": str(self.special.tor_class), "family": self.special.family}
                if self.special
                else None
            ),
            "sum_h": list(self.sum_h),
        }


def type2_profile(s1: int, s: int) -> Type2Profile:
    """Bundle every prediction for a compressed type 2 ring of socle polynomial χ^s1 + χ^s."""
    check_socle_pair(s1, s)
    h = type2_hilbert(s1, s)
    t = initial_degree(h)
    a = s1 - ceil_half(s) + 1
    f0, f1, f2 = f_vector(a)
    tor_class, m = generic_class(s1, s)
    golod = golod_by_degree(s, t)
    return Type2Profile(
        s1=s1,
        s=s,
        e=3,
        h=h,
        t=t,
        a=a,
        f0=f0,
        f1=f1,
        f2=f2,
        generic_m=m,
        generic_class=tor_class,
        golod_by_degree=golod,
        thresholds=thresholds(s) if s >= 4 else None,
        betti_shape=None if golod else betti_shape(s1, s),
        special=special_m(s1, s),
        sum_h=sum_profile(s1, s).h,
    )
