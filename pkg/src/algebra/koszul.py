"""
Koszul homology of R = Q/I over k[x, y, z].
Graded Betti numbers, the Tor algebra parameters (p, q, r) and the multiplication class of R.
"""

import re
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, List, Mapping, Tuple

import numpy as np

from algebra.graded_ideal import GradedIdeal
from algebra.linalg_gf import MatrixGF, matmul_mod, null_space, reduce_modulo, rref
from errors import IdealInputError

SUBSETS: Dict[int, Tuple[Tuple[int, ...], ...]] = {
    i: tuple(combinations(range(3), i)) for i in range(4)
}
SUBSET_INDEX: Dict[Tuple[int, ...], int] = {
    subset: n for i in SUBSETS for n, subset in enumerate(SUBSETS[i])
}

C3 = "C"
G = "G"
B = "B"
H = "H"
UNCLASSIFIED = "UNCLASSIFIED"

_LABEL = re.compile(r"^\s*(C|G|B|H|UNCLASSIFIED)\s*(?:\(([\d,\s]*)\))?\s*$")


@dataclass(frozen=True, order=True)
class TorClass:
    """Multiplication class of a Tor algebra, e.g. G(3) or H(0,0)."""

    family: str
    parameters: Tuple[int, ...] = ()

    @classmethod
    def complete_intersection(cls) -> "TorClass":
        """The class C(3)."""
        return cls(C3, (3,))

    @classmethod
    def gorenstein_like(cls, r: int) -> "TorClass":
        """The class G(r)."""
        return cls(G, (r,))

    @classmethod
    def b(cls) -> "TorClass":
        return cls(B)

    @classmethod
    def h(cls, p: int, q: int) -> "TorClass":
        """The class H(p,q)."""
        return cls(H, (p, q))

    @classmethod
    def golod(cls) -> "TorClass":
        """The class H(0,0) of Golod rings."""
        return cls(H, (0, 0))

    @classmethod
    def unclassified(cls, p: int, q: int, r: int) -> "TorClass":
        """Parameters that fit no class in the table."""
        return cls(UNCLASSIFIED, (p, q, r))

    @classmethod
    def parse(cls, label: str) -> "TorClass":
        """Parse labels such as "G(3)", "B", "H(0,0)" or "C(3)"."""
        match = _LABEL.match(label)
        if not match:
            raise IdealInputError(f"Unrecognised class label {label!r}")
        family, inner = match.groups()
        numbers = tuple(int(n) for n in inner.split(",") if n.strip()) if inner else ()
        expected = {C3: 1, G: 1, B: 0, H: 2, UNCLASSIFIED: 3}[family]
        if len(numbers) != expected:
            raise IdealInputError(f"Class label {label!r} needs {expected} parameters")
        return cls(family, numbers)

    @property
    def is_golod(self) -> bool:
        return self == TorClass.golod()

    def __str__(self) -> str:
        if not self.parameters:
            return self.family
        return f"{self.family}({','.join(str(n) for n in self.parameters)})"


def classify_parameters(ring_type: int, m: int, p: int, q: int, r: int) -> TorClass:
    """Class of a Tor algebra from the ring type, generator count and (p, q, r)."""
    if ring_type == 1:
        return TorClass.complete_intersection() if m == 3 else TorClass.gorenstein_like(m)
    if ring_type == 2:
        if (p, q, r) == (1, 1, 2):
            return TorClass.b()
        if p == 0 and q == 1 and r >= 1:
            return TorClass.gorenstein_like(r)
        if q == r and q <= 2:
            return TorClass.h(p, q)
        return TorClass.unclassified(p, q, r)
    # Type >= 3: only trivial multiplication is recognised
    if (p, q, r) == (0, 0, 0):
        return TorClass.golod()
    return TorClass.unclassified(p, q, r)


def merge_sign(S: Tuple[int, ...], T: Tuple[int, ...]) -> int:
    """Sign of e_S * e_T = sign * e_(S u T) in the exterior algebra."""
    inversions = sum(1 for a in S for b in T if a > b)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class KoszulSlice:
    """K_(i,j): exterior degree i tensored with R_(j-i), with its differential into K_(i-1,j)."""

    i: int
    j: int
    dimension: int
    differential: MatrixGF


@dataclass(frozen=True)
class TorAlgebra:
    """Betti numbers, homology representatives and multiplication data of Tor^Q(R, k)."""

    betti: Dict[Tuple[int, int], int]
    p: int
    q: int
    r: int
    tor_class: TorClass
    ring_type: int
    homology: Dict[Tuple[int, int], MatrixGF] = field(default_factory=dict, repr=False, compare=False)

    @property
    def parameters(self) -> Tuple[int, int, int]:
        """The ranks (p, q, r)."""
        return (self.p, self.q, self.r)

    def total(self, i: int) -> int:
        """Total Betti number beta_i."""
        return sum(n for (k, _), n in self.betti.items() if k == i)

    def generator_count(self) -> int:
        """Number of minimal generators m = beta_1."""
        return self.total(1)

    def column(self, i: int) -> Dict[int, int]:
        """Nonzero graded Betti numbers of homological degree i, keyed by j."""
        return {j: n for (k, j), n in sorted(self.betti.items()) if k == i}

    def betti_table(self) -> str:
        """Betti table as text, see format_betti_table."""
        return format_betti_table(self.betti)


@dataclass
class _Homology:
    representatives: np.ndarray
    pivots: List[int]
    boundaries: np.ndarray
    boundary_pivots: List[int]


class KoszulComplex:
    """
    The Koszul complex on x, y, z tensored with R = Q/I, one internal degree at a time.

    Elements of K_(i,j) are row vectors indexed by (subset S of size i,
    standard monomial of degree j - i), subsets in lexicographic order.
    Differentials act on the right: d(v) = v @ D.
    """

    def __init__(self, ideal: GradedIdeal):
        self.ideal = ideal
        self.field = ideal.field
        self.p = ideal.field.p
        self.ring = ideal.quotient
        self.top_degree = ideal.socle_degree() + 3
        self._differentials: Dict[Tuple[int, int], np.ndarray] = {}
        self._homology: Dict[Tuple[int, int], _Homology] = {}

    def slice_dim(self, i: int, j: int) -> int:
        """Dimension of K_(i,j) = wedge^i k^3 tensor R_(j-i)."""
        if i < 0 or i > 3:
            return 0
        return comb(3, i) * self.ring.dim(j - i)

    def differential(self, i: int, j: int) -> np.ndarray:
        """Matrix of d: K_(i,j) -> K_(i-1,j), with d(e_S f) = sum (-1)^pos e_(S - k) x_k f."""
        key = (i, j)
        if key in self._differentials:
            return self._differentials[key]
        degree = j - i
        source = self.ring.dim(degree)
        target = self.ring.dim(degree + 1)
        out = np.zeros((self.slice_dim(i, j), self.slice_dim(i - 1, j)), dtype=np.int64)
        if 1 <= i <= 3 and source and target:
            for si, subset in enumerate(SUBSETS[i]):
                for pos, k in enumerate(subset):
                    ti = SUBSET_INDEX[subset[:pos] + subset[pos + 1:]]
                    block = self.ring.variable_action(degree, k)
                    if pos % 2:
                        block = -block
                    rows = slice(si * source, (si + 1) * source)
                    cols = slice(ti * target, (ti + 1) * target)
                    out[rows, cols] = (out[rows, cols] + block) % self.p
        out.setflags(write=False)
        self._differentials[key] = out
        return out

    def slice(self, i: int, j: int) -> KoszulSlice:
        """Basis size and outgoing differential of K_(i,j)."""
        return KoszulSlice(
            i,
            j,
            self.slice_dim(i, j),
            MatrixGF(self.differential(i, j), self.field, cols=self.slice_dim(i - 1, j)),
        )

    def _homology_at(self, i: int, j: int) -> _Homology:
        key = (i, j)
        if key not in self._homology:
            n = self.slice_dim(i, j)
            cycles = null_space(self.differential(i, j).T, self.p)
            if i < 3:
                boundaries, boundary_pivots = rref(self.differential(i + 1, j), self.p)
            else:
                boundaries, boundary_pivots = np.zeros((0, n), dtype=np.int64), []
            remainders = reduce_modulo(cycles, boundaries, boundary_pivots, self.p)
            representatives, pivots = rref(remainders, self.p)
            self._homology[key] = _Homology(representatives, pivots, boundaries, boundary_pivots)
        return self._homology[key]

    def betti(self, i: int, j: int) -> int:
        """Graded Betti number beta_(i,j) = dim H_(i,j)."""
        if self.slice_dim(i, j) == 0:
            return 0
        return len(self._homology_at(i, j).pivots)

    def betti_numbers(self) -> Dict[Tuple[int, int], int]:
        """All nonzero graded Betti numbers."""
        table = {}
        for i in range(4):
            for j in range(self.top_degree + 1):
                value = self.betti(i, j)
                if value:
                    table[(i, j)] = value
        return table

    def representatives(self, i: int, j: int) -> np.ndarray:
        """Cycles whose classes form a basis of H_(i,j)."""
        if self.slice_dim(i, j) == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return self._homology_at(i, j).representatives

    def coordinates(self, i: int, j: int, cycles: np.ndarray) -> np.ndarray:
        """Coordinates of the classes of cycles (rows) in the basis of H_(i,j)."""
        homology = self._homology_at(i, j)
        reduced = reduce_modulo(cycles, homology.boundaries, homology.boundary_pivots, self.p)
        return reduced[:, homology.pivots]

    def products(
        self, i1: int, j1: int, left: np.ndarray, i2: int, j2: int, right: np.ndarray
    ) -> np.ndarray:
        """All products left[x] * right[y] as an (n1, n2, dim K_(i1+i2, j1+j2)) array.

        (e_S f)(e_T g) = sign(S, T) e_(S u T) fg when S and T are disjoint, else 0.
        """
        p = self.p
        d1, d2 = j1 - i1, j2 - i2
        h1, h2, h3 = self.ring.dim(d1), self.ring.dim(d2), self.ring.dim(d1 + d2)
        n1, n2 = left.shape[0], right.shape[0]
        i3 = i1 + i2
        out = np.zeros((n1, n2, self.slice_dim(i3, j1 + j2)), dtype=np.int64)
        if not (n1 and n2 and h3) or i3 > 3:
            return out
        tensor = self.ring.structure_tensor(d1, d2).reshape(h1, h2 * h3)
        for si, S in enumerate(SUBSETS[i1]):
            u = left[:, si * h1:(si + 1) * h1]
            # partial[x] is the (h2, h3) matrix of g -> f_x g
            partial = matmul_mod(u, tensor, p).reshape(n1, h2, h3)
            stacked = partial.transpose(1, 0, 2).reshape(h2, n1 * h3)
            for ti, T in enumerate(SUBSETS[i2]):
                if set(S) & set(T):
                    continue
                v = right[:, ti * h2:(ti + 1) * h2]
                block = matmul_mod(v, stacked, p).reshape(n2, n1, h3).transpose(1, 0, 2)
                ui = SUBSET_INDEX[tuple(sorted(S + T))]
                target = slice(ui * h3, (ui + 1) * h3)
                out[:, :, target] = (out[:, :, target] + merge_sign(S, T) * block) % p
        return out

    def _product_tensor(self, i1: int, i2: int) -> np.ndarray:
        """Structure constants A_i1 x A_i2 -> A_(i1+i2) over all internal degrees."""
        i3 = i1 + i2
        offsets = {i: self._offsets(i) for i in (i1, i2, i3)}
        sizes = {i: sum(self.betti(i, j) for j in offsets[i]) for i in (i1, i2, i3)}
        tensor = np.zeros((sizes[i1], sizes[i2], sizes[i3]), dtype=np.int64)
        for j1, o1 in offsets[i1].items():
            for j2, o2 in offsets[i2].items():
                target = offsets[i3].get(j1 + j2)
                if target is None:
                    continue
                n1, n2 = self.betti(i1, j1), self.betti(i2, j2)
                prods = self.products(
                    i1, j1, self.representatives(i1, j1), i2, j2, self.representatives(i2, j2)
                )
                coords = self.coordinates(i3, j1 + j2, prods.reshape(n1 * n2, -1))
                tensor[o1:o1 + n1, o2:o2 + n2, target:target + coords.shape[1]] = coords.reshape(
                    n1, n2, -1
                )
        return tensor

    def _offsets(self, i: int) -> Dict[int, int]:
        offsets = {}
        position = 0
        for j in range(self.top_degree + 1):
            value = self.betti(i, j)
            if value:
                offsets[j] = position
                position += value
        return offsets

    def _rank(self, matrix: np.ndarray) -> int:
        if matrix.size == 0:
            return 0
        return len(rref(matrix, self.p)[1])

    def tor_parameters(self) -> Tuple[int, int, int]:
        """(p, q, r) = (rank A1*A1, rank A1*A2, rank of A2 -> Hom(A1, A3))."""
        ones = self._product_tensor(1, 1)
        mixed = self._product_tensor(1, 2)
        n1, n2, n3 = mixed.shape
        p = self._rank(ones.reshape(n1 * n1, n2))
        q = self._rank(mixed.reshape(n1 * n2, n3))
        r = self._rank(mixed.transpose(1, 0, 2).reshape(n2, n1 * n3))
        return p, q, r

    def tor_algebra(self) -> TorAlgebra:
        """Betti numbers, homology representatives, (p, q, r) and the class."""
        betti = self.betti_numbers()
        p, q, r = self.tor_parameters()
        ring_type = sum(n for (i, _), n in betti.items() if i == 3)
        m = sum(n for (i, _), n in betti.items() if i == 1)
        homology = {
            key: MatrixGF(self.representatives(*key), self.field, cols=self.slice_dim(*key))
            for key in betti
        }
        return TorAlgebra(
            betti=betti,
            p=p,
            q=q,
            r=r,
            tor_class=classify_parameters(ring_type, m, p, q, r),
            ring_type=ring_type,
            homology=homology,
        )


def koszul_slice(ideal: GradedIdeal, i: int, j: int) -> KoszulSlice:
    """The Koszul slice K_(i,j) of Q/I."""
    return KoszulComplex(ideal).slice(i, j)


def betti_numbers(ideal: GradedIdeal) -> Dict[Tuple[int, int], int]:
    """Graded Betti numbers beta_(i,j) = dim H_i(K tensor R)_j, nonzero entries only."""
    return KoszulComplex(ideal).betti_numbers()


def tor_parameters(ideal: GradedIdeal) -> Tuple[int, int, int]:
    """The ranks (p, q, r) of the Tor algebra products."""
    return KoszulComplex(ideal).tor_parameters()


def tor_algebra(ideal: GradedIdeal) -> TorAlgebra:
    """Full Tor-algebra data of Q/I."""
    return KoszulComplex(ideal).tor_algebra()


def classify(ideal: GradedIdeal) -> TorClass:
    """Class of the Tor algebra of Q/I."""
    return tor_algebra(ideal).tor_class


def format_betti_table(betti: Mapping[Tuple[int, int], int]) -> str:
    """Betti table as a text grid: rows j - i, columns i, dots for zeros."""
    if not betti:
        return "total:"
    columns = range(max(i for i, _ in betti) + 1)
    shifts = [j - i for i, j in betti]
    rows = range(min(shifts), max(shifts) + 1)
    totals = [sum(n for (k, _), n in betti.items() if k == i) for i in columns]
    width = max(len(str(n)) for n in totals) + 1
    lines = ["       " + "".join(f"{i:>{width}}" for i in columns)]
    lines.append("total: " + "".join(f"{n:>{width}}" for n in totals))
    for row in rows:
        cells = "".join(
            f"{(betti.get((i, i + row)) or '.'):>{width}}" for i in columns
        )
        lines.append(f"{row:>5}: {cells}")
    return "\n".join(lines)
